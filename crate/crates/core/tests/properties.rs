//! Randomised laws for the group, heights, logarithms, maps and LLL.

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use elpoints::curve::{canonical_height, CurveQ, MWBasis, PointQ};
use elpoints::elog::{ell_log_additivity_check, periods};
use elpoints::lattice::lll::mat_mul;
use elpoints::lattice::{is_lll_reduced, lll_reduce};
use elpoints::models::Family;
use elpoints::numerics::linalg::det_int;
use elpoints::PrecisionContext;

fn d1() -> (Family, MWBasis) {
    let f = Family::cubic(-2).unwrap();
    let g = [
        ("235", "395"),
        ("615", "14805"),
        ("3055", "168805"),
        ("1350", "49455"),
        ("1185/4", "-28935/8"),
    ];
    (
        f,
        MWBasis::free(
            g.iter()
                .map(|(x, y)| PointQ::parse(x, y).unwrap())
                .collect(),
        ),
    )
}

fn quartic() -> (Family, MWBasis) {
    let f = Family::quartic();
    let g = [
        ("-1799", "150724"),
        ("105", "-44100"),
        ("-315", "-88200"),
        ("8985", "776700"),
        ("3885", "88200"),
    ];
    (
        f,
        MWBasis::free(
            g.iter()
                .map(|(x, y)| PointQ::parse(x, y).unwrap())
                .collect(),
        ),
    )
}

fn point(curve: &CurveQ, b: &MWBasis, c: &[i64]) -> PointQ {
    curve.multi_scalar(b, c, &PointQ::Infinity).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, 5)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_law(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (f, basis) = d1();
        let e = f.curve();
        let (p, q, r) = (point(e, &basis, &a), point(e, &basis, &b), point(e, &basis, &c));
        prop_assert_eq!(e.add(&p, &q).unwrap(), e.add(&q, &p).unwrap());
        let l = e.add(&e.add(&p, &q).unwrap(), &r).unwrap();
        let rr = e.add(&p, &e.add(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(l, rr);
        prop_assert_eq!(e.add(&p, &PointQ::Infinity).unwrap(), p.clone());
        prop_assert!(e.add(&p, &e.neg(&p)).unwrap().is_infinity());
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(point(e, &basis, &sum), e.add(&p, &q).unwrap());
    }

    #[test]
    fn height_is_quadratic(a in coeffs(), n in 2i64..=3) {
        let (f, basis) = d1();
        let e = f.curve();
        let ctx = PrecisionContext::digits(40);
        let p = point(e, &basis, &a);
        let h = canonical_height(e, &p, &ctx).unwrap();
        let hn = canonical_height(e, &e.mul(n, &p), &ctx).unwrap();
        prop_assert!((hn - (n * n) as f64 * h).abs() <= 1e-7 * hn.max(1.0), "{} vs {}", hn, (n * n) as f64 * h);
    }

    #[test]
    fn parallelogram_law(a in coeffs(), b in coeffs()) {
        let (f, basis) = quartic();
        let e = f.curve();
        let ctx = PrecisionContext::digits(40);
        let (p, q) = (point(e, &basis, &a), point(e, &basis, &b));
        let h = |x: &PointQ| canonical_height(e, x, &ctx).unwrap();
        let lhs = h(&e.add(&p, &q).unwrap()) + h(&e.sub(&p, &q).unwrap());
        let rhs = 2.0 * h(&p) + 2.0 * h(&q);
        prop_assert!((lhs - rhs).abs() <= 1e-7 * lhs.max(1.0), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn elog_is_additive(a in coeffs(), b in coeffs(), quart in any::<bool>()) {
        let (f, basis) = if quart { quartic() } else { d1() };
        let e = f.curve();
        let ctx = PrecisionContext::digits(50);
        let per = periods(e, &ctx).unwrap();
        let (p, q) = (point(e, &basis, &a), point(e, &basis, &b));
        prop_assume!(!p.is_infinity() && !q.is_infinity() && !e.add(&p, &q).unwrap().is_infinity());
        prop_assert!(ell_log_additivity_check(e, &p, &q, &per, &ctx).unwrap());
    }

    #[test]
    fn maps_roundtrip(a in coeffs(), which in 0usize..6) {
        let (f, basis) = case(which);
        let c: Vec<i64> = a.iter().take(basis.rank()).copied().collect();
        let p = point(f.curve(), &basis, &c);
        prop_assume!(!p.is_infinity());
        if let Ok((u, v)) = f.map_e_to_c(&p) {
            prop_assert!(f.on_model(&u, &v));
            if let Ok(back) = f.map_c_to_e(&u, &v) {
                prop_assert_eq!(back, p);
            }
        }
    }

    #[test]
    fn lll_is_a_unimodular_reduction(rows in prop::collection::vec(prop::collection::vec(-50i64..50, 4), 4)) {
        let b: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        prop_assume!(det_int(&b) != BigInt::from(0));
        let r = lll_reduce(&b).unwrap();
        prop_assert!(is_lll_reduced(&r.basis));
        prop_assert_eq!(mat_mul(&r.transform, &b), r.basis.clone());
        prop_assert_eq!(det_int(&r.transform).abs(), BigInt::from(1));
    }
}

fn case(which: usize) -> (Family, MWBasis) {
    let gens: &[(&str, &str)] = match which {
        0 => return d1(),
        1 => return quartic(),
        2 => &[("26745/4", "-4373685/8"), ("2995", "163855")],
        3 => &[("37845", "7362270"), ("152325", "-59450670")],
        4 => &[
            ("2530", "122320"),
            ("3414", "196362"),
            ("108705/49", "33758640/343"),
        ],
        _ => &[
            ("1232475", "1368255420"),
            ("2181", "73854"),
            ("136825", "50611330"),
            ("2235", "79020"),
        ],
    };
    let f = Family::cubic(which as i64).unwrap();
    (
        f,
        MWBasis::free(
            gens.iter()
                .map(|(x, y)| PointQ::parse(x, y).unwrap())
                .collect(),
        ),
    )
}

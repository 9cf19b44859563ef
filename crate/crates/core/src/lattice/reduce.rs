//! The scaled lattice of a linear form and the bound-reduction loop.
//!
//! For unknowns `m_1..m_r` and `n0` with
//! `lambda = n0 + sum m_i xi_i (+- xi0)`, the generators are the rows
//! `e_i + [C xi_i] e_k` for `i <= r` and `C e_k`. The `+-xi0` term is handled
//! as an inhomogeneous shift `y = (0, .., 0, -+[C xi0])`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lll::{lll_reduce, LllResult};
use crate::bounds::LinearFormSpec;
use crate::error::{Error, Result};
use crate::numerics::linalg::inverse_rational;
use crate::numerics::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct IntLattice {
    /// Generators as rows; the displayed matrix is the transpose.
    pub rows: Vec<Vec<BigInt>>,
    pub c: BigInt,
    /// `[C xi0]`, when the form carries a shift.
    pub shift: Option<BigInt>,
}

impl IntLattice {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn last_row(&self) -> Vec<BigInt> {
        let k = self.dim();
        self.rows.iter().map(|r| r[k - 1].clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOptions {
    /// Decimal digits added on top of the minimal `C`.
    pub c_offset: u32,
    pub max_retries: u32,
    /// Reported bounds never go below this (the `N <= (alpha + beta/m_min) M` step needs `M >= m_min`).
    pub floor: f64,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            c_offset: 3,
            max_retries: 5,
            floor: 14.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionState {
    pub current_bound: f64,
    pub c_exponent: u32,
    pub c: BigInt,
    pub reduced_basis: Vec<Vec<BigInt>>,
    pub b0: Vec<BigInt>,
    /// Lower bound for the distance from the shifted lattice to the origin, as a natural log.
    pub ln_distance: f64,
    pub passed_b0_test: bool,
    pub next_bound: Option<f64>,
    pub retries: u32,
}

fn ten_pow(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    let s = bits.saturating_sub(60);
    (x.abs() >> s).to_f64().unwrap().ln() + s as f64 * std::f64::consts::LN_2
}

/// Least decimal exponent with `10^e >= 2^(k(k+1)/2) (k+1/2)^(k+1) B^(k+1)`.
pub fn minimal_c_exponent(k: usize, bound: f64) -> u32 {
    let kf = k as f64;
    let l =
        kf * (kf + 1.0) / 2.0 * 2f64.log10() + (kf + 1.0) * ((kf + 0.5).log10() + bound.log10());
    l.ceil().max(1.0) as u32
}

/// Decimal digits the `xi` must carry for a reduction starting at `bound`.
pub fn required_digits(k: usize, bound: f64, opts: &ReductionOptions) -> u32 {
    minimal_c_exponent(k, bound) + opts.c_offset + 2 * opts.max_retries + 30
}

fn scaled_round(c: &BigInt, x: &Real, need_bits: u32) -> Result<BigInt> {
    if x.prec() < need_bits {
        return Err(Error::Precision(format!(
            "xi carries {} bits, rounding at this C needs {need_bits}",
            x.prec()
        )));
    }
    Ok((&Real::from_int(c, x.prec()) * x).round())
}

pub fn build_lattice(spec: &LinearFormSpec, c: &BigInt) -> Result<IntLattice> {
    let k = spec.k();
    let digits = c.to_string().len() as f64;
    let need = ((digits + 30.0) * std::f64::consts::LOG2_10).ceil() as u32;
    let mut rows = Vec::with_capacity(k);
    for (i, xi) in spec.xi.iter().enumerate() {
        let mut row = vec![BigInt::zero(); k];
        row[i] = BigInt::one();
        row[k - 1] = scaled_round(c, xi, need)?;
        rows.push(row);
    }
    let mut last = vec![BigInt::zero(); k];
    last[k - 1] = c.clone();
    rows.push(last);
    let shift = spec
        .xi0
        .as_ref()
        .map(|x| scaled_round(c, x, need))
        .transpose()?;
    Ok(IntLattice {
        rows,
        c: c.clone(),
        shift,
    })
}

fn dist_to_int(q: &BigRational) -> BigRational {
    let f = q - q.floor();
    let g = BigRational::one() - &f;
    if f < g {
        f
    } else {
        g
    }
}

/// `ln` of a lower bound for `min |x - y|` over lattice points `x`, with
/// `y` the shift for either sign; `None` if `y` lies in the lattice.
fn ln_distance_bound(red: &LllResult, shift: Option<&BigInt>) -> Option<f64> {
    let k = red.basis.len();
    let b1 = &red.basis[0];
    let ln_b1 = 0.5 * ln_big(&b1.iter().map(|x| x * x).sum::<BigInt>());
    let lead = -0.5 * (k as f64 - 1.0) * std::f64::consts::LN_2;
    let Some(t) = shift else {
        return Some(lead + ln_b1);
    };
    let rat: Vec<Vec<BigRational>> = red
        .basis
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let inv = inverse_rational(&rat)?;
    let mut best: Option<f64> = None;
    for s in [1i64, -1] {
        let yk = BigRational::from_integer(-t * s);
        // sigma = y * R^-1, and y is zero except in the last slot
        let sigma: Vec<BigRational> = inv[k - 1].iter().map(|v| v * &yk).collect();
        let i0 = (0..k).rev().find(|&i| !sigma[i].is_integer())?;
        let frac = dist_to_int(&sigma[i0]).to_f64()?;
        let v = lead + frac.ln() + ln_b1;
        best = Some(best.map_or(v, |b: f64| b.min(v)));
    }
    best
}

/// One reduction pass from `bound`, escalating `C` by `10^2` while the distance test fails.
pub fn reduce_bound(
    bound: f64,
    spec: &LinearFormSpec,
    opts: &ReductionOptions,
) -> Result<ReductionState> {
    let k = spec.k();
    let kf = k as f64;
    let base = minimal_c_exponent(k, bound) + opts.c_offset;
    for retry in 0..=opts.max_retries {
        let e = base + 2 * retry;
        let c = ten_pow(e);
        let lat = build_lattice(spec, &c)?;
        let red = lll_reduce(&lat.rows)?;
        let Some(ln_d) = ln_distance_bound(&red, lat.shift.as_ref()) else {
            continue;
        };
        // sqrt(D^2 - k B^2) - k B = D (sqrt(1 - y1) - y2)
        let ln_b = bound.ln();
        let y1 = (kf.ln() + 2.0 * (ln_b - ln_d)).exp();
        let y2 = (kf.ln() + ln_b - ln_d).exp();
        let rel = if y1 < 1.0 {
            (1.0 - y1).sqrt() - y2
        } else {
            -1.0
        };
        let mut st = ReductionState {
            current_bound: bound,
            c_exponent: e,
            c: c.clone(),
            b0: red.basis[0].clone(),
            reduced_basis: red.basis,
            ln_distance: ln_d,
            passed_b0_test: rel > 0.0,
            next_bound: None,
            retries: retry,
        };
        if rel <= 0.0 {
            continue;
        }
        let ln_arg = ln_d + rel.ln();
        let rhs = spec.kappa2 + spec.kappa1.ln() + e as f64 * std::f64::consts::LN_10 - ln_arg;
        let n = if rhs <= 0.0 {
            0.0
        } else {
            (rhs / spec.kappa4).sqrt().floor()
        };
        st.next_bound = Some(n.max(opts.floor).min(bound));
        return Ok(st);
    }
    Err(Error::ReductionStall {
        retries: opts.max_retries,
        bound: format!("{bound:.6e}"),
    })
}

/// Repeats `reduce_bound` until a pass brings no improvement. The last
/// (non-improving) pass is kept in the trail.
pub fn reduction_chain(
    spec: &LinearFormSpec,
    initial: f64,
    opts: &ReductionOptions,
) -> Result<Vec<ReductionState>> {
    let mut out: Vec<ReductionState> = Vec::new();
    let mut b = initial;
    loop {
        let st = reduce_bound(b, spec, opts)?;
        let next = st.next_bound.unwrap_or(b);
        out.push(st);
        if next >= b {
            if out.len() == 1 {
                return Err(Error::ReductionStall {
                    retries: 0,
                    bound: format!("{b:.6e}"),
                });
            }
            return Ok(out);
        }
        b = next;
    }
}

/// Number of passes that lowered the bound, and the final bound.
pub fn chain_summary(chain: &[ReductionState]) -> (usize, f64) {
    let improving = chain
        .iter()
        .filter(|s| s.next_bound.is_some_and(|n| n < s.current_bound))
        .count();
    let fin = chain
        .last()
        .and_then(|s| s.next_bound)
        .unwrap_or(f64::INFINITY);
    (improving, fin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Envelope;
    use crate::numerics::PrecisionContext;

    fn zero_spec(k: usize) -> LinearFormSpec {
        let ctx = PrecisionContext::digits(60);
        let z = Real::zero(ctx.bits() * 4);
        crate::bounds::envelope(
            &Real::one(ctx.bits() * 4),
            &vec![z; k - 1],
            None,
            Envelope {
                k1: 1.0,
                k2: 1.0,
                k4: 1.0,
            },
            2.5,
            1.5,
            15.0,
            &ctx,
        )
    }

    #[test]
    fn zero_form_is_diagonal() {
        let lat = build_lattice(&zero_spec(3), &BigInt::from(1000)).unwrap();
        let d = |v: i64| BigInt::from(v);
        assert_eq!(
            lat.rows,
            vec![
                vec![d(1), d(0), d(0)],
                vec![d(0), d(1), d(0)],
                vec![d(0), d(0), d(1000)]
            ]
        );
    }

    #[test]
    fn c_exponent_rule() {
        assert_eq!(minimal_c_exponent(6, 6.29e147) + 3, 1050);
        assert_eq!(minimal_c_exponent(6, 133.0) + 3, 30);
    }

    #[test]
    fn huge_kappa2_stalls() {
        let mut s = zero_spec(3);
        s.kappa2 = 1e12;
        assert!(matches!(
            reduction_chain(&s, 1e6, &ReductionOptions::default()),
            Err(Error::ReductionStall { .. })
        ));
    }
}

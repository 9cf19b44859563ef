use std::path::PathBuf;

use elpoints::config::{Case, CaseConfig};
use elpoints::curve::{qi, PointQ};
use elpoints::Error;

fn case_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../cases")
        .join(name)
}

const CASES: [&str; 6] = [
    "d-1.toml",
    "n2.toml",
    "n3.toml",
    "n4.toml",
    "n5.toml",
    "quartic.toml",
];

#[test]
fn shipped_cases_validate() {
    for name in CASES {
        let case = Case::load(&case_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let curve = case.family.curve();
        for row in &case.reference().rows {
            let p = row.point_e().expect("row point parses");
            assert!(curve.contains(&p), "{name}: {:?} off the curve", row.point);
            let uv = (qi(row.uv[0]), qi(row.uv[1]));
            assert!(
                case.family.on_model(&uv.0, &uv.1),
                "{name}: {:?} off the model",
                row.uv
            );
            if !p.is_infinity() {
                assert_eq!(
                    case.family.map_e_to_c(&p).unwrap(),
                    uv,
                    "{name}: {:?}",
                    row.point
                );
            }
        }
    }
}

#[test]
fn cubic_row_coefficients_match_the_basis() {
    let case = Case::load(&case_path("d-1.toml")).unwrap();
    let curve = case.family.curve();
    for row in &case.reference().rows {
        let c = row.coeffs.as_ref().unwrap();
        assert_eq!(
            curve
                .multi_scalar(&case.basis, c, &PointQ::Infinity)
                .unwrap(),
            row.point_e().unwrap(),
            "{c:?}"
        );
    }
}

/// The quartic table is written against the fourth generator with `y`
/// negated, and one row has a slipped second coefficient.
#[test]
fn quartic_row_coefficients_use_the_mirrored_fourth_generator() {
    let case = Case::load(&case_path("quartic.toml")).unwrap();
    let curve = case.family.curve();
    let mut off = Vec::new();
    for row in &case.reference().rows {
        let mut c = row.coeffs.clone().unwrap();
        c[3] = -c[3];
        if curve
            .multi_scalar(&case.basis, &c, &PointQ::Infinity)
            .unwrap()
            != row.point_e().unwrap()
        {
            off.push(row.coeffs.clone().unwrap());
        }
    }
    assert_eq!(off, vec![vec![0, 0, 1, 0, 1]]);
    let fixed = curve
        .multi_scalar(&case.basis, &[0, 1, 1, 0, 1], &PointQ::Infinity)
        .unwrap();
    assert_eq!(fixed, PointQ::parse("12105", "1268100").unwrap());
}

#[test]
fn toml_roundtrip() {
    for name in CASES {
        let cfg = CaseConfig::load(&case_path(name)).unwrap();
        let again = CaseConfig::from_toml(&cfg.to_toml().unwrap()).unwrap();
        assert_eq!(cfg, again, "{name}");
    }
}

#[test]
fn every_violation_is_reported() {
    let text = std::fs::read_to_string(case_path("n2.toml")).unwrap();
    let text = text
        .replace("\"2995\", \"163855\"", "\"2995\", \"163856\"")
        .replace("c14 = \"2.098\"", "c14 = \"-1\"")
        .replace("torsion_order = 1", "torsion_order = 2");
    let err = CaseConfig::from_toml(&text)
        .unwrap()
        .validate()
        .unwrap_err();
    match err {
        Error::ConfigInvalid(list) => assert_eq!(list.len(), 3, "{list:?}"),
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn unknown_keys_are_rejected() {
    let text = std::fs::read_to_string(case_path("n3.toml")).unwrap();
    let text = text.replace("[search]\n", "[search]\nspeed = 3\n");
    assert!(matches!(
        CaseConfig::from_toml(&text),
        Err(Error::ConfigInvalid(_))
    ));
}

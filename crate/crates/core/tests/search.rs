use std::path::PathBuf;

use elpoints::config::Case;
use elpoints::pipeline::{linear_form, run, RunOptions, Stage};
use elpoints::report::{emit_table, render, Format};
use elpoints::search::{
    brute_oracle, full_resolution, small_u_scan, FilterForm, ResolutionInput, SearchOutcome,
};
use elpoints::PrecisionContext;

fn case(name: &str) -> Case {
    Case::load(
        &PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../../cases")
            .join(name),
    )
    .unwrap()
}

#[test]
fn scan_agrees_with_oracle() {
    for name in [
        "d-1.toml",
        "n2.toml",
        "n3.toml",
        "n4.toml",
        "n5.toml",
        "quartic.toml",
    ] {
        let c = case(name);
        assert_eq!(
            small_u_scan(&c.family, 500),
            brute_oracle(&c.family, 500),
            "{name}"
        );
    }
}

fn resolve(c: &Case, m_max: i64, ckpt: Option<&std::path::Path>) -> SearchOutcome {
    let ctx = PrecisionContext::digits(40);
    let (_, spec) = linear_form(c, 2.1464178968, &ctx).unwrap();
    full_resolution(&ResolutionInput {
        family: &c.family,
        basis: &c.basis,
        form: FilterForm::from_spec(&spec),
        m_max,
        u_threshold: c.config.search.u_threshold,
        identity_row: None,
        workers: 2,
        checkpoint: ckpt,
    })
    .unwrap()
}

#[test]
fn larger_ranges_give_supersets() {
    let c = case("n4.toml");
    let small = resolve(&c, 2, None).uv_set();
    let big = resolve(&c, 5, None).uv_set();
    assert!(small.is_subset(&big));
    let want = [(4, 0), (4, 1), (4, 3), (11, 28)].into_iter().collect();
    assert_eq!(big, want);
}

#[test]
fn checkpoint_resume_matches_a_clean_run() {
    let c = case("n4.toml");
    let dir = std::env::temp_dir().join(format!("elpoints-ckpt-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("n4.ckpt");
    let _ = std::fs::remove_file(&path);
    let clean = resolve(&c, 4, Some(&path));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("shell 4, ")));
    // cut the file back to the end of shell 2 and resume from there
    let kept: Vec<&str> = text
        .lines()
        .take_while(|l| !l.starts_with("shell 3"))
        .collect();
    std::fs::write(&path, kept.join("\n") + "\n").unwrap();
    let resumed = resolve(&c, 4, Some(&path));
    assert_eq!(resumed.uv_set(), clean.uv_set());
    assert_eq!(resumed.tuples, clean.tuples);
    assert_eq!(resumed.survivors, clean.survivors);
    assert!(resumed
        .notes
        .iter()
        .any(|n| n.starts_with("resumed at shell 2")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn pipeline_through_search_on_a_small_case() {
    let c = case("n3.toml");
    let rep = run(
        &c,
        Stage::Pipeline,
        &RunOptions {
            workers: 2,
            ..Default::default()
        },
    )
    .unwrap();
    let s = rep.search.as_ref().unwrap();
    let got = s.outcome.uv_set();
    assert_eq!(got, [(3, 0), (3, 1), (3, 3)].into_iter().collect());
    assert!(rep.reduction.as_ref().unwrap().final_bound <= 21.0);
    let text = render(&rep, Format::Text).unwrap();
    assert!(text.contains("(152325, -59450670)"));
}

#[test]
fn csv_quotes_cells_with_commas() {
    let c = case("n3.toml");
    let rep = run(
        &c,
        Stage::Search,
        &RunOptions {
            workers: 1,
            m_max: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let csv = emit_table(rep.rank, &rep.search.unwrap().outcome.rows, Format::Csv).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("m1,m2,P^E,P^C,\"(m,n)\""));
    assert!(csv.contains("\"(152325, -59450670)\",\"(3, 1)\""));
}

#[test]
fn too_little_precision_is_reported() {
    let c = case("n2.toml");
    let err = run(
        &c,
        Stage::Reduce,
        &RunOptions {
            precision: Some(80),
            ..Default::default()
        },
    )
    .unwrap_err();
    assert!(matches!(err, elpoints::Error::Precision(_)), "{err}");
}

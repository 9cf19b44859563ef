//! Plain-text and CSV rendering of a [`ResolutionReport`].

use std::fmt::Write as _;

use crate::curve::PointQ;
use crate::error::{Error, Result};
use crate::models::CollisionVerdict;
use crate::pipeline::ResolutionReport;
use crate::search::SolutionRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
}

fn point_cell(p: &Option<PointQ>) -> String {
    match p {
        None => "exceptional".into(),
        Some(p) => p.to_string(),
    }
}

fn pairs_cell(v: &[(i64, i64)]) -> String {
    v.iter()
        .map(|(m, n)| format!("({m}, {n})"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One record per solution: `m_1 .. m_r`, `P^E`, `P^C`, `(m, n)`.
pub fn table_records(rank: usize, rows: &[SolutionRow]) -> (Vec<String>, Vec<Vec<String>>) {
    let mut head: Vec<String> = (1..=rank).map(|i| format!("m{i}")).collect();
    head.extend(["P^E", "P^C", "(m,n)"].map(String::from));
    let recs = rows
        .iter()
        .map(|r| {
            let mut rec: Vec<String> = match &r.coeffs {
                Some(c) => c.iter().map(|x| x.to_string()).collect(),
                None => vec!["-".into(); rank],
            };
            rec.push(point_cell(&r.point_e));
            rec.push(format!("({}, {})", r.u, r.v));
            rec.push(pairs_cell(&r.collision_vars));
            rec
        })
        .collect();
    (head, recs)
}

/// The solution table alone.
pub fn emit_table(rank: usize, rows: &[SolutionRow], format: Format) -> Result<String> {
    let (head, recs) = table_records(rank, rows);
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let err = |e: csv::Error| Error::Contract(format!("csv: {e}"));
            w.write_record(&head).map_err(err)?;
            for r in &recs {
                w.write_record(r).map_err(err)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Contract(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Text => {
            let mut width: Vec<usize> = head.iter().map(|h| h.len()).collect();
            for r in &recs {
                for (w, c) in width.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let v: Vec<String> = cells
                    .iter()
                    .zip(&width)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                v.join(" | ").trim_end().to_string()
            };
            let mut out = line(&head);
            out.push('\n');
            out.push_str(&"-".repeat(out.len() - 1));
            out.push('\n');
            for r in &recs {
                out.push_str(&line(r));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Full report: summary lines for every stage that ran, then the table.
pub fn render(rep: &ResolutionReport, format: Format) -> Result<String> {
    if format == Format::Csv {
        return match &rep.search {
            Some(s) => emit_table(rep.rank, &s.outcome.rows, Format::Csv),
            None => Err(Error::Contract("csv output needs the search stage".into())),
        };
    }
    let mut o = String::new();
    let _ = writeln!(
        o,
        "case {} ({}), rank {}",
        rep.case_id, rep.family, rep.rank
    );
    if let Some(p) = &rep.periods {
        let _ = writeln!(o, "omega1     {}", p.omega1.to_sci(16));
        let _ = writeln!(o, "|omega2|   {}", p.omega2_abs.to_sci(16));
        let roots: Vec<String> = p.roots.iter().map(|r| format!("{r:.10}")).collect();
        let _ = writeln!(o, "real roots {}", roots.join(", "));
    }
    if let Some(h) = &rep.heights {
        let hs: Vec<String> = h.heights.iter().map(|x| format!("{x:.10}")).collect();
        let _ = writeln!(o, "heights    {}", hs.join(", "));
        let _ = writeln!(o, "rho        {:.10}", h.rho);
    }
    if !rep.ell.is_empty() {
        let ls: Vec<String> = rep.ell.iter().map(|x| format!("{x:.12}")).collect();
        let _ = writeln!(o, "ell        {}", ls.join(", "));
    }
    if let Some(l0) = rep.ell0 {
        let _ = writeln!(o, "ell0       {l0:.12}");
    }
    if let Some(b) = &rep.initial_bound {
        let _ = writeln!(o, "crossing   {:.4e}", b.crossing);
        let _ = writeln!(o, "bound      {:.4e}", b.bound);
    }
    if let Some(r) = &rep.reduction {
        let _ = writeln!(
            o,
            "kappa      {:.6}, {:.6}, {:.6}, {:.6} ({} digits)",
            r.kappa[0], r.kappa[1], r.kappa[2], r.kappa[3], r.digits
        );
        for s in &r.steps {
            let next = s.next_bound.map_or("-".to_string(), |n| format!("{n}"));
            let _ = writeln!(
                o,
                "reduce     B={:.4e} C=10^{} retries={} -> {next}",
                s.bound, s.c_exponent, s.retries
            );
        }
        let _ = writeln!(
            o,
            "reduced    {} ({} improving passes)",
            r.final_bound, r.improving_passes
        );
    }
    if let Some(s) = &rep.search {
        let _ = writeln!(
            o,
            "search     M<={} tuples={} survivors={} solutions={}",
            s.m_max,
            s.outcome.tuples,
            s.outcome.survivors,
            s.outcome.rows.len()
        );
        for n in &s.outcome.notes {
            let _ = writeln!(o, "note       {n}");
        }
        let verdict = match &s.verdict {
            CollisionVerdict::NoNearCollision => "no near collision".to_string(),
            CollisionVerdict::Found(v) => format!("near collisions {}", pairs_cell(v)),
        };
        let _ = writeln!(
            o,
            "(m,n)      {} -> {verdict}",
            pairs_cell(&s.collision_pairs)
        );
        o.push('\n');
        o.push_str(&emit_table(rep.rank, &s.outcome.rows, Format::Text)?);
    }
    for (name, secs) in &rep.timings {
        let _ = writeln!(o, "time {name:<8} {secs:.3}s");
    }
    Ok(o)
}

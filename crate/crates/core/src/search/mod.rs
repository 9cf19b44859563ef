//! Final enumeration: the inequality filter over coefficient shells, exact
//! verification, the direct small-`|u|` scans and an independent oracle.

mod scan;
mod shells;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::bounds::{Envelope, LinearFormSpec};
use crate::curve::{MWBasis, PointQ};
use crate::error::{Error, Result};
use crate::models::{is_integral, recover_collision_vars, Family};

pub use scan::{brute_oracle, small_u_scan};
pub use shells::{shell_size, shell_tuple, Checkpoint, ShellProgress};

/// Absolute slack added to the envelope before a tuple is dropped.
pub const FILTER_MARGIN: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    pub rank: usize,
    pub m_max: i64,
    /// Signs tried on the `l0` term; `[0]` when the form has none.
    pub signs: Vec<i32>,
}

impl SearchSpace {
    pub fn new(rank: usize, m_max: i64, has_shift: bool) -> Result<SearchSpace> {
        if m_max < 1 {
            return Err(Error::Contract(format!(
                "m_max must be at least 1, got {m_max}"
            )));
        }
        Ok(SearchSpace {
            rank,
            m_max,
            signs: if has_shift { vec![1, -1] } else { vec![0] },
        })
    }

    /// `(2 M + 1)^(r + 1)` times the sign choices; `m0` shares the range.
    pub fn tuple_count(&self) -> u128 {
        (2 * self.m_max as u128 + 1).pow(self.rank as u32 + 1) * self.signs.len() as u128
    }
}

/// Double-precision copy of a linear form, enough for the filter.
#[derive(Clone, Debug)]
pub struct FilterForm {
    pub omega1: f64,
    pub ell: Vec<f64>,
    pub ell0: Option<f64>,
    pub envelope: Envelope,
}

impl FilterForm {
    pub fn from_spec(spec: &LinearFormSpec) -> FilterForm {
        FilterForm {
            omega1: spec.omega1.to_f64(),
            ell: spec.ell.iter().map(|x| x.to_f64()).collect(),
            ell0: spec.ell0.as_ref().map(|x| x.to_f64()),
            envelope: spec.envelope,
        }
    }

    pub fn threshold(&self, m: i64) -> f64 {
        self.envelope.at(m as f64) + FILTER_MARGIN
    }

    /// `(m0, sign, L)` with the nearest `m0` for each sign, smallest `|L|` first.
    pub fn evaluate(&self, coeffs: &[i64]) -> Vec<(i64, i32, f64)> {
        let s: f64 = coeffs
            .iter()
            .zip(&self.ell)
            .map(|(m, l)| *m as f64 * l)
            .sum();
        let signs: &[i32] = if self.ell0.is_some() { &[1, -1] } else { &[0] };
        let mut out: Vec<(i64, i32, f64)> = signs
            .iter()
            .map(|&sg| {
                let t = s + sg as f64 * self.ell0.unwrap_or(0.0);
                let m0 = -(t / self.omega1).round();
                (m0 as i64, sg, t + m0 * self.omega1)
            })
            .collect();
        out.sort_by(|a, b| a.2.abs().total_cmp(&b.2.abs()));
        out
    }

    /// Does some `(m0, sign)` keep the tuple alive at shell `M`?
    pub fn survives(&self, coeffs: &[i64], thr: f64) -> bool {
        self.evaluate(coeffs)
            .first()
            .is_some_and(|e| e.2.abs() <= thr)
    }
}

/// A tuple that passed the filter.
#[derive(Clone, Debug, PartialEq)]
pub struct Survivor {
    pub coeffs: Vec<i64>,
    pub m0: i64,
    pub sign: i32,
    pub value: f64,
}

/// All tuples with `max |m_i| <= m_max` whose linear form meets the envelope.
pub fn inequality_filter(space: &SearchSpace, form: &FilterForm) -> Vec<Survivor> {
    let mut out = Vec::new();
    for m in 0..=space.m_max {
        let thr = form.threshold(m);
        for idx in 0..shell_size(m, space.rank) {
            let c = shell_tuple(m, space.rank, idx);
            for (m0, sign, value) in form.evaluate(&c) {
                if value.abs() <= thr {
                    out.push(Survivor {
                        coeffs: c.clone(),
                        m0,
                        sign,
                        value,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRow {
    /// `None` for points found only by the direct scan.
    pub coeffs: Option<Vec<i64>>,
    /// `None` when the point has no image on the Weierstrass model.
    pub point_e: Option<PointQ>,
    pub u: BigInt,
    pub v: BigInt,
    pub collision_vars: Vec<(i64, i64)>,
}

impl SolutionRow {
    pub fn uv_i64(&self) -> Option<(i64, i64)> {
        Some((self.u.to_i64()?, self.v.to_i64()?))
    }
}

fn collision_vars(family: &Family, u: &BigInt, v: &BigInt) -> Vec<(i64, i64)> {
    match (u.to_i64(), v.to_i64()) {
        (Some(u), Some(v)) => recover_collision_vars(family, u, v),
        _ => vec![],
    }
}

/// Outcome of checking one tuple exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verified {
    Integral(SolutionRow),
    NotIntegral,
    /// The point is `O` or hits a zero denominator of the inverse map.
    Exceptional(String),
}

/// `P = sum m_i P_i`, mapped back to the model and tested for integrality.
pub fn exact_verify(coeffs: &[i64], family: &Family, basis: &MWBasis) -> Result<Verified> {
    let p = family
        .curve()
        .multi_scalar(basis, coeffs, &PointQ::Infinity)?;
    let (u, v) = match family.map_e_to_c(&p) {
        Ok(uv) => uv,
        Err(Error::Exceptional(why)) => {
            return Ok(Verified::Exceptional(format!("{coeffs:?}: {why}")))
        }
        Err(e) => return Err(e),
    };
    if !family.on_model(&u, &v) {
        return Err(Error::Contract(format!("{coeffs:?} maps off the model")));
    }
    if !(is_integral(&u) && is_integral(&v)) {
        return Ok(Verified::NotIntegral);
    }
    let (u, v) = (u.to_integer(), v.to_integer());
    Ok(Verified::Integral(SolutionRow {
        coeffs: Some(coeffs.to_vec()),
        point_e: Some(p),
        collision_vars: collision_vars(family, &u, &v),
        u,
        v,
    }))
}

#[derive(Clone, Debug)]
pub struct ResolutionInput<'a> {
    pub family: &'a Family,
    pub basis: &'a MWBasis,
    pub form: FilterForm,
    pub m_max: i64,
    /// Points with `|u|` below this come from the direct scan.
    pub u_threshold: i64,
    /// Model point attached to `O`, shown as the zero-coefficient row.
    pub identity_row: Option<(i64, i64)>,
    pub workers: usize,
    pub checkpoint: Option<&'a Path>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    /// Sorted by `(u, v)`.
    pub rows: Vec<SolutionRow>,
    pub tuples: u128,
    pub survivors: u64,
    pub notes: Vec<String>,
}

impl SearchOutcome {
    pub fn uv_set(&self) -> BTreeSet<(i64, i64)> {
        self.rows.iter().filter_map(|r| r.uv_i64()).collect()
    }

    /// Rows reached through a finite Weierstrass point.
    pub fn enumerated(&self) -> impl Iterator<Item = &SolutionRow> {
        self.rows
            .iter()
            .filter(|r| matches!(r.point_e, Some(PointQ::Affine { .. })))
    }
}

/// Direct scan below the threshold plus the filtered enumeration up to `m_max`.
pub fn full_resolution(inp: &ResolutionInput) -> Result<SearchOutcome> {
    let rank = inp.basis.rank();
    let prog = shells::run_shells(
        inp.family,
        inp.basis,
        &inp.form,
        inp.m_max,
        inp.workers,
        inp.checkpoint,
    )?;
    let mut rows: BTreeMap<(BigInt, BigInt), SolutionRow> = BTreeMap::new();
    let mut notes = prog.notes;
    for c in &prog.found {
        match exact_verify(c, inp.family, inp.basis)? {
            Verified::Integral(r) => {
                rows.insert((r.u.clone(), r.v.clone()), r);
            }
            Verified::NotIntegral => {}
            Verified::Exceptional(w) => notes.push(w),
        }
    }
    if let Some((u, v)) = inp.identity_row {
        let (u, v) = (BigInt::from(u), BigInt::from(v));
        rows.insert(
            (u.clone(), v.clone()),
            SolutionRow {
                coeffs: Some(vec![0; rank]),
                point_e: Some(PointQ::Infinity),
                collision_vars: collision_vars(inp.family, &u, &v),
                u,
                v,
            },
        );
    }
    for (u, v) in small_u_scan(inp.family, inp.u_threshold - 1) {
        let key = (BigInt::from(u), BigInt::from(v));
        if rows.contains_key(&key) {
            continue;
        }
        let point_e = inp
            .family
            .map_c_to_e(&crate::curve::qi(u), &crate::curve::qi(v))
            .ok();
        if point_e.is_none() {
            notes.push(format!("({u}, {v}) is exceptional for the forward map"));
        }
        rows.insert(
            key.clone(),
            SolutionRow {
                coeffs: None,
                point_e,
                collision_vars: recover_collision_vars(inp.family, u, v),
                u: key.0,
                v: key.1,
            },
        );
    }
    Ok(SearchOutcome {
        rows: rows.into_values().collect(),
        tuples: prog.tuples,
        survivors: prog.survivors,
        notes,
    })
}

//! The staged resolution of one case: periods, heights, initial bound,
//! reduction chain, search.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use crate::bounds::{self, Envelope, InitialBound, LinearFormSpec};
use crate::config::Case;
use crate::curve::pairing_matrix;
use crate::elog::{ell_log, ell_log_rational, periods, PeriodPair};
use crate::error::{Error, Result};
use crate::lattice::{chain_summary, reduction_chain, required_digits, ReductionOptions};
use crate::models::{near_collision_verdict, CollisionVerdict, Family, SpecialPointP0};
use crate::numerics::{PrecisionContext, Real};
use crate::search::{full_resolution, FilterForm, ResolutionInput, SearchOutcome};

/// Working precision of the stages that do not feed the lattice.
pub const BASE_DIGITS: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Periods,
    Heights,
    Bound,
    Reduce,
    Search,
    Pipeline,
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Stage> {
        Ok(match s {
            "periods" => Stage::Periods,
            "heights" => Stage::Heights,
            "bound" => Stage::Bound,
            "reduce" => Stage::Reduce,
            "search" => Stage::Search,
            "pipeline" => Stage::Pipeline,
            _ => return Err(Error::Contract(format!("unknown stage {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Overrides the automatic precision of every stage.
    pub precision: Option<u32>,
    pub m_max: i64,
    pub workers: usize,
    /// Search up to the reduced bound instead of `m_max`.
    pub long_run: bool,
    pub checkpoint: Option<PathBuf>,
    pub reduction: ReductionOptions,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            precision: None,
            m_max: 3,
            workers: std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1),
            long_run: false,
            checkpoint: None,
            reduction: ReductionOptions::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PeriodsReport {
    pub omega1: Real,
    pub omega2_abs: Real,
    pub roots: Vec<f64>,
    pub three_real_roots: bool,
    pub digits: u32,
}

#[derive(Clone, Debug)]
pub struct HeightsReport {
    pub heights: Vec<f64>,
    pub matrix: Vec<Vec<f64>>,
    pub rho: f64,
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    pub bound: f64,
    pub c_exponent: u32,
    pub retries: u32,
    pub passed: bool,
    pub next_bound: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct ReductionReport {
    pub digits: u32,
    pub kappa: [f64; 4],
    pub steps: Vec<ChainStep>,
    pub improving_passes: usize,
    pub final_bound: f64,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub m_max: i64,
    pub outcome: SearchOutcome,
    pub collision_pairs: Vec<(i64, i64)>,
    pub verdict: CollisionVerdict,
}

/// Everything one run produced; stages that did not run are `None`.
#[derive(Clone, Debug)]
pub struct ResolutionReport {
    pub case_id: String,
    pub family: String,
    pub rank: usize,
    pub periods: Option<PeriodsReport>,
    pub heights: Option<HeightsReport>,
    /// Centred logarithms of the generators.
    pub ell: Vec<f64>,
    pub ell0: Option<f64>,
    pub initial_bound: Option<InitialBound>,
    pub reduction: Option<ReductionReport>,
    pub search: Option<SearchReport>,
    /// Wall-clock seconds per stage.
    pub timings: Vec<(&'static str, f64)>,
}

/// `(omega1, l_1..l_r, l0)` at the given precision.
pub fn linear_form_data(
    case: &Case,
    ctx: &PrecisionContext,
) -> Result<(PeriodPair, Vec<Real>, Real)> {
    let curve = case.family.curve();
    let per = periods(curve, ctx)?;
    let ell = case
        .basis
        .generators
        .iter()
        .map(|p| ell_log_rational(curve, p, &per, ctx).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    let p0 = match &case.family {
        Family::Cubic(c) => SpecialPointP0::cubic(c.n, ctx)?,
        Family::Quartic(_) => SpecialPointP0::quartic(ctx),
    };
    let l0 = ell_log(curve, &p0.real_point(&per, ctx), &per, ctx)?.value;
    Ok((per, ell, l0))
}

pub fn case_envelope(case: &Case, rho: f64) -> Result<Envelope> {
    Ok(match &case.family {
        Family::Cubic(c) => Envelope::cubic(&bounds::uniform_constants(c.n)?, case.gamma, rho),
        Family::Quartic(q) => Envelope::quartic(
            q.coefficients[0] as f64,
            bounds::quartic_domain_constants().c7_max(),
            case.gamma,
            rho,
        ),
    })
}

pub fn linear_form(
    case: &Case,
    rho: f64,
    ctx: &PrecisionContext,
) -> Result<(PeriodPair, LinearFormSpec)> {
    let (per, ell, l0) = linear_form_data(case, ctx)?;
    let env = case_envelope(case, rho)?;
    let m_min = case.config.search.m_min as f64;
    let spec = bounds::envelope(
        &per.omega1,
        &ell,
        Some(&l0),
        env,
        case.alpha,
        case.beta,
        m_min,
        ctx,
    );
    Ok((per, spec))
}

fn clock<T>(
    timings: &mut Vec<(&'static str, f64)>,
    name: &'static str,
    f: impl FnOnce() -> Result<T>,
) -> Result<T> {
    let t = Instant::now();
    let out = f()?;
    timings.push((name, t.elapsed().as_secs_f64()));
    Ok(out)
}

/// Runs every stage up to and including `stage`. `Search` skips the bound
/// and the reduction and goes straight to the enumeration.
pub fn run(case: &Case, stage: Stage, opts: &RunOptions) -> Result<ResolutionReport> {
    let mut t = Vec::new();
    let base = PrecisionContext::digits(opts.precision.unwrap_or(BASE_DIGITS));
    let curve = case.family.curve();
    let mut rep = ResolutionReport {
        case_id: case.id().to_string(),
        family: case.family.to_string(),
        rank: case.basis.rank(),
        periods: None,
        heights: None,
        ell: vec![],
        ell0: None,
        initial_bound: None,
        reduction: None,
        search: None,
        timings: vec![],
    };

    let per = clock(&mut t, "periods", || periods(curve, &base))?;
    rep.periods = Some(PeriodsReport {
        omega2_abs: per.omega2_abs(),
        omega1: per.omega1.clone(),
        roots: per.roots.iter().map(Real::to_f64).collect(),
        three_real_roots: per.three_real_roots(),
        digits: base.decimal_digits,
    });
    if stage == Stage::Periods {
        rep.timings = t;
        return Ok(rep);
    }

    let hp = clock(&mut t, "heights", || {
        pairing_matrix(curve, &case.basis, &base)
    })?;
    let rho = hp.rho_f64();
    rep.heights = Some(HeightsReport {
        heights: hp.heights.clone(),
        matrix: hp.rows_f64(),
        rho,
    });
    if stage == Stage::Heights {
        rep.timings = t;
        return Ok(rep);
    }

    let mut m_max = opts.m_max;
    let form = if stage == Stage::Search {
        let (_, spec) = clock(&mut t, "elog", || linear_form(case, rho, &base))?;
        rep.ell = spec.ell.iter().map(|x| x.to_f64()).collect();
        rep.ell0 = spec.ell0.as_ref().map(|x| x.to_f64());
        FilterForm::from_spec(&spec)
    } else {
        let ib = clock(&mut t, "bound", || {
            bounds::initial_bound(&case.bound_input(rho)?)
        })?;
        rep.initial_bound = Some(ib.clone());
        if stage == Stage::Bound {
            let (_, spec) = clock(&mut t, "elog", || linear_form(case, rho, &base))?;
            rep.ell = spec.ell.iter().map(|x| x.to_f64()).collect();
            rep.ell0 = spec.ell0.as_ref().map(|x| x.to_f64());
            rep.timings = t;
            return Ok(rep);
        }
        let k = case.basis.rank() + 1;
        let digits = opts
            .precision
            .unwrap_or_else(|| required_digits(k, ib.bound, &opts.reduction));
        let ctx = PrecisionContext::digits(digits);
        let (_, spec) = clock(&mut t, "elog", || linear_form(case, rho, &ctx))?;
        rep.ell = spec.ell.iter().map(|x| x.to_f64()).collect();
        rep.ell0 = spec.ell0.as_ref().map(|x| x.to_f64());
        let chain = clock(&mut t, "reduce", || {
            reduction_chain(&spec, ib.bound, &opts.reduction)
        })?;
        let (improving, fin) = chain_summary(&chain);
        rep.reduction = Some(ReductionReport {
            digits,
            kappa: [spec.kappa1, spec.kappa2, spec.kappa3, spec.kappa4],
            steps: chain
                .iter()
                .map(|s| ChainStep {
                    bound: s.current_bound,
                    c_exponent: s.c_exponent,
                    retries: s.retries,
                    passed: s.passed_b0_test,
                    next_bound: s.next_bound,
                })
                .collect(),
            improving_passes: improving,
            final_bound: fin,
        });
        if stage == Stage::Reduce {
            rep.timings = t;
            return Ok(rep);
        }
        if opts.long_run {
            m_max = fin as i64;
        }
        FilterForm::from_spec(&spec)
    };

    let outcome = clock(&mut t, "search", || {
        full_resolution(&ResolutionInput {
            family: &case.family,
            basis: &case.basis,
            form,
            m_max,
            u_threshold: case.config.search.u_threshold,
            identity_row: case.config.search.identity_row.map(|[u, v]| (u, v)),
            workers: opts.workers,
            checkpoint: opts.checkpoint.as_deref(),
        })
    })?;
    let mut pairs: Vec<(i64, i64)> = outcome
        .rows
        .iter()
        .flat_map(|r| r.collision_vars.iter().copied())
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let verdict = near_collision_verdict(&case.family, &pairs);
    rep.search = Some(SearchReport {
        m_max,
        outcome,
        collision_pairs: pairs,
        verdict,
    });
    rep.timings = t;
    Ok(rep)
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Periods => "periods",
            Stage::Heights => "heights",
            Stage::Bound => "bound",
            Stage::Reduce => "reduce",
            Stage::Search => "search",
            Stage::Pipeline => "pipeline",
        };
        f.write_str(s)
    }
}

//! Explicit constants and the inequalities that turn them into a bound on
//! `M = max |m_i|`: the uniform constants of the cubic family, the crossing
//! of the upper/lower bounds for `|L(P)|`, and the linear-form envelope used
//! by the reduction and the final search.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::curve::{qi, Q};
use crate::error::{Error, Result};
use crate::models::maps::pow;
use crate::numerics::{real_roots, PrecisionContext, QPoly, Real};

/// Constants valid for every `|N| >= 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformConstants {
    pub b0: f64,
    pub b2: f64,
    pub b3: f64,
    pub theta: f64,
    pub c9: f64,
    pub c10: f64,
    pub c11: f64,
}

pub fn uniform_constants(n: i64) -> Result<UniformConstants> {
    if n.abs() < 2 {
        return Err(Error::OutOfDomain(format!(
            "uniform constants need |N| >= 2, got {n}"
        )));
    }
    let a = n.abs() as f64;
    Ok(UniformConstants {
        b0: a + 1.0,
        b2: 3.0 * a,
        b3: a + 1.0,
        theta: 1.0,
        c9: 0.17,
        c10: (200.0 * a * a * a).ln(),
        c11: 2.0,
    })
}

/// `u^6 - 2u^4 + a1 u^3 + u^2 - a1 u + a0` whose roots bound the branch points.
pub fn resultant_polynomial(n: i64) -> QPoly {
    let n = qi(n);
    let r = |a: i64, b: i64| Q::new(a.into(), b.into());
    let a1 = qi(-2) * pow(&n, 3) + qi(2) * &n + r(8, 81);
    let a0 = pow(&n, 6) - qi(2) * pow(&n, 4) - r(8, 81) * pow(&n, 3) + pow(&n, 2) + r(8, 81) * &n
        - r(4, 675);
    QPoly::new(vec![a0, -a1.clone(), qi(1), a1, qi(-2), qi(0), qi(1)])
}

/// All complex roots by Aberth iteration, from the polynomial's `f64` image.
pub fn complex_roots(p: &QPoly) -> Vec<Complex64> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return vec![];
    }
    let lead = p.lead();
    let c: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|a| Complex64::new((a / &lead).to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::zero();
        let mut d = Complex64::zero();
        for a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let radius = 1.0 + c[..deg].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

pub fn resultant_root_moduli(n: i64) -> Vec<f64> {
    complex_roots(&resultant_polynomial(n))
        .iter()
        .map(|z| z.norm())
        .collect()
}

/// Every root of the resultant lies strictly inside `|u| < |N| + 1`.
pub fn resultant_root_bound_check(n: i64) -> Result<bool> {
    if n.abs() < 2 {
        return Err(Error::OutOfDomain(format!("|N| >= 2 required, got {n}")));
    }
    let bound = n.abs() as f64 + 1.0;
    Ok(resultant_root_moduli(n)
        .iter()
        .all(|m| m.is_finite() && *m < bound))
}

/// The sextic `q(u)` from the cubic-branch estimate.
pub fn q_sextic(n: i64, u: &Q) -> Q {
    let nn = qi(n);
    let p = |e| pow(&nn, e);
    let c3 = qi(-4050) * p(3) + qi(4050) * &nn + qi(200);
    qi(2025) * pow(u, 6) - qi(4050) * pow(u, 4) + &c3 * pow(u, 3) + qi(2025) * pow(u, 2)
        - &c3 * u
        - qi(12)
        + qi(2025) * p(2)
        + qi(200) * &nn
        - qi(200) * p(3)
        - qi(4050) * p(4)
        + qi(2025) * p(6)
}

/// `q(u) > 1800 u^6` at every sample, all of which must satisfy `|u| > 3|N|`.
pub fn verify_q_growth(n: i64, samples: &[Q]) -> Result<bool> {
    let lim = qi(3 * n.abs());
    for u in samples {
        let a = if u < &Q::zero() {
            -u.clone()
        } else {
            u.clone()
        };
        if a <= lim {
            return Err(Error::Contract(format!(
                "sample u = {u} violates |u| > 3|N|"
            )));
        }
    }
    Ok(samples
        .iter()
        .all(|u| q_sextic(n, u) > qi(1800) * pow(u, 6)))
}

/// Largest `|v|` over the real `v` with `g(u, v) = 0`, divided by `|u|`.
pub fn branch_ratio(n: i64, u: &Q, ctx: &PrecisionContext) -> Result<f64> {
    let d = qi((n * n * n - n) / 6);
    // -v^3 + 4v^2 - 3v + (15u^3 - 15u - 90d)
    let k = qi(15) * pow(u, 3) - qi(15) * u - qi(90) * d;
    let p = QPoly::new(vec![k, qi(-3), qi(4), qi(-1)]);
    let roots = real_roots(&p, ctx)?;
    let ua = u.to_f64().unwrap_or(f64::NAN).abs();
    Ok(roots
        .iter()
        .map(|r| r.to_f64().abs() / ua)
        .fold(0.0, f64::max))
}

/// `|v| <= 2 * 15^(1/3) * |u|` on the real curve for the sample (needs `|u| >= 3|N|`).
pub fn branch_bound_holds(n: i64, u: &Q, ctx: &PrecisionContext) -> Result<bool> {
    Ok(branch_ratio(n, u, ctx)? <= 2.0 * 15f64.cbrt())
}

/// David-type constants plus the data entering the upper bound for `|L(P)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct DavidConstants {
    pub c12: f64,
    pub c13: f64,
    pub c14: f64,
    pub c15: f64,
    pub c16: Option<f64>,
    pub c17: Option<f64>,
    pub c18: Option<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub rank: usize,
    /// Number of logarithms in the linear form (`r + 1`).
    pub k: usize,
}

/// Which shape of the bound inequality applies.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundShape {
    /// `rho M^2 <= c11 c13/(2 theta) (log(aM+b)+c14)(loglog(aM+b)+c15)^(r+3)
    ///  + gamma + c11/(2 theta) log(c9/(1+theta)) + c10/2`.
    Cubic(UniformConstants),
    /// `rho M^2 <= c18 c13 (log(aM+b)+c14)(loglog(aM+b)+c15)^(k+2)
    ///  + gamma + c18 log c16 + c17`.
    Quartic,
}

/// Inputs of the crossing computation.
#[derive(Clone, Debug)]
pub struct BoundInput {
    pub david: DavidConstants,
    pub rho: f64,
    pub shape: BoundShape,
    /// Factor inside the iterated logarithm; `1/ln 10` reproduces the published crossings.
    pub inner_log_scale: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitialBound {
    /// Least `M` beyond which the inequality fails.
    pub crossing: f64,
    /// `max(c12, crossing)`.
    pub bound: f64,
}

impl BoundInput {
    fn exponent(&self) -> f64 {
        match self.shape {
            BoundShape::Cubic(_) => self.david.rank as f64 + 3.0,
            BoundShape::Quartic => self.david.k as f64 + 2.0,
        }
    }

    fn lead_and_constant(&self) -> Result<(f64, f64)> {
        let d = &self.david;
        match &self.shape {
            BoundShape::Cubic(u) => {
                let f = u.c11 / (2.0 * u.theta);
                Ok((
                    f * d.c13,
                    d.gamma + f * (u.c9 / (1.0 + u.theta)).ln() + 0.5 * u.c10,
                ))
            }
            BoundShape::Quartic => {
                let (c16, c17, c18) = match (d.c16, d.c17, d.c18) {
                    (Some(a), Some(b), Some(c)) => (a, b, c),
                    _ => {
                        return Err(Error::ConfigInvalid(vec![
                            "quartic bound needs c16, c17, c18".into(),
                        ]))
                    }
                };
                Ok((c18 * d.c13, d.gamma + c18 * c16.ln() + c17))
            }
        }
    }

    /// `ln(rhs) - ln(rho M^2)` at `M = e^lm`; nonpositive means the inequality fails.
    pub fn log_gap(&self, lm: f64) -> Result<f64> {
        let (lead, cst) = self.lead_and_constant()?;
        let d = &self.david;
        let log_am = lm + (d.alpha + d.beta * (-lm).exp()).ln();
        let inner = (self.inner_log_scale * log_am).ln() + d.c15;
        if log_am + d.c14 <= 0.0 || inner <= 0.0 {
            return Ok(f64::INFINITY);
        }
        let main = lead.ln() + (log_am + d.c14).ln() + self.exponent() * inner.ln();
        // ln(e^main + cst), cst may be negative
        let rhs = main + (cst * (-main).exp()).ln_1p();
        Ok(rhs - (self.rho.ln() + 2.0 * lm))
    }
}

/// Least `M*` with the inequality failing for all `M >= M*`, by a logarithmic
/// grid scan followed by 80 bisection steps.
pub fn initial_bound(input: &BoundInput) -> Result<InitialBound> {
    let d = &input.david;
    if !(d.c12 > 0.0
        && d.c13 > 0.0
        && d.c14 > 0.0
        && d.c15 > 0.0
        && input.rho > 0.0
        && d.alpha > 0.0)
    {
        return Err(Error::ConfigInvalid(vec![
            "bound constants must be positive".into(),
        ]));
    }
    const CAP: f64 = 1.0e5;
    if input.log_gap(CAP)? > 0.0 {
        return Err(Error::Divergence(
            "bound inequality still holds at M = e^100000".into(),
        ));
    }
    // walk down to the last grid point where the inequality holds
    let step = 1.0;
    let mut hi = CAP;
    let mut lo = None;
    let mut x = CAP - step;
    while x >= 0.0 {
        if input.log_gap(x)? > 0.0 {
            lo = Some(x);
            break;
        }
        hi = x;
        x -= step;
    }
    let crossing = match lo {
        None => 1.0,
        Some(mut lo) => {
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if input.log_gap(mid)? > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi.exp()
        }
    };
    Ok(InitialBound {
        crossing,
        bound: crossing.max(d.c12),
    })
}

/// Upper-bound envelope `|L(P)| <= k1 exp(k2 - k4 M^2)` before normalisation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    pub k1: f64,
    pub k2: f64,
    pub k4: f64,
}

impl Envelope {
    /// From the cubic constants: `|L| <= c9/(1+theta) |u|^-(1+theta)` and
    /// `h(x) <= c10 + c11 log|u|`, `h(x) >= 2(rho M^2 - gamma)`.
    pub fn cubic(u: &UniformConstants, gamma: f64, rho: f64) -> Envelope {
        let f = 2.0 * u.theta / u.c11;
        Envelope {
            k1: u.c9 / (1.0 + u.theta),
            k2: f * (gamma + 0.5 * u.c10),
            k4: f * rho,
        }
    }

    /// `|L| <= 4 a^(-1/2) exp(log(3 c7)/2 + gamma - rho M^2)`.
    pub fn quartic(a: f64, c7: f64, gamma: f64, rho: f64) -> Envelope {
        Envelope {
            k1: 4.0 / a.sqrt(),
            k2: 0.5 * (3.0 * c7).ln() + gamma,
            k4: rho,
        }
    }

    pub fn at(&self, m: f64) -> f64 {
        self.k1 * (self.k2 - self.k4 * m * m).exp()
    }
}

/// Coefficients of `L(P) = (m0 + s/t) w1 + sum m_i l_i (+- l0)` and the
/// normalised envelope for `lambda = L / w1`.
#[derive(Clone, Debug)]
pub struct LinearFormSpec {
    pub omega1: Real,
    pub ell: Vec<Real>,
    pub ell0: Option<Real>,
    pub s_over_t: Q,
    pub xi: Vec<Real>,
    pub xi0: Option<Real>,
    pub envelope: Envelope,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub kappa4: f64,
    /// `M` from which `N <= (alpha + beta/m_min) M` is used.
    pub m_min: f64,
    pub decimal_digits: u32,
}

impl LinearFormSpec {
    /// Number of integer unknowns besides the `+-1` on `l0`: `n0` and `m_1..m_r`.
    pub fn k(&self) -> usize {
        self.ell.len() + 1
    }
}

/// Assembles the normalised linear form.
pub fn envelope(
    omega1: &Real,
    ell: &[Real],
    ell0: Option<&Real>,
    env: Envelope,
    alpha: f64,
    beta: f64,
    m_min: f64,
    ctx: &PrecisionContext,
) -> LinearFormSpec {
    let inv = omega1.recip();
    let xi = ell.iter().map(|l| l * &inv).collect();
    let xi0 = ell0.map(|l| l * &inv);
    let w = omega1.to_f64();
    let kappa3 = (alpha + beta / m_min).powi(-2);
    LinearFormSpec {
        omega1: omega1.clone(),
        ell: ell.to_vec(),
        ell0: ell0.cloned(),
        s_over_t: Q::zero(),
        xi,
        xi0,
        envelope: env,
        kappa1: env.k1 / w,
        kappa2: env.k2,
        kappa3,
        kappa4: kappa3 * env.k4,
        m_min,
        decimal_digits: ctx.decimal_digits,
    }
}

/// Data of the quartic's two half-equations `Q(u) = v^2`, `Q(-u) = v^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuarticDomain {
    pub sigma: i32,
    pub sigma_bar: i32,
    pub u_star: i64,
    pub u_bar_star: i64,
    pub c7: f64,
    pub c7_bar: f64,
}

impl QuarticDomain {
    /// `|u(P)|` from which the envelope applies.
    pub fn threshold(&self) -> i64 {
        self.u_star.max(self.u_bar_star)
    }

    pub fn c7_max(&self) -> f64 {
        self.c7.max(self.c7_bar)
    }

    /// `x(u) = 315(u^2 - 2u + 630 + 2 sqrt(Q(u)))/u^2`, `None` where `Q(u) < 0` or `u = 0`.
    pub fn x(&self, u: &Q, ctx: &PrecisionContext) -> Option<Real> {
        x_closed(u, -1, ctx)
    }

    /// `x_bar(u) = 315(u^2 + 2u + 630 + 2 sqrt(Q(-u)))/u^2`.
    pub fn x_bar(&self, u: &Q, ctx: &PrecisionContext) -> Option<Real> {
        x_closed(u, 1, ctx)
    }
}

fn x_closed(u: &Q, s: i64, ctx: &PrecisionContext) -> Option<Real> {
    if u.is_zero() {
        return None;
    }
    let m = crate::models::QuarticModel::default();
    let uu = if s > 0 { -u.clone() } else { u.clone() };
    let qv = m.quartic(&uu);
    if qv < Q::zero() {
        return None;
    }
    let b = ctx.bits();
    let root = Real::from_ratio(&qv, b).sqrt();
    let lin = pow(u, 2) + qi(2 * s) * u + qi(630);
    let num = &Real::from_ratio(&lin, b) + &root.mul_pow2(1);
    Some(&(&num * &Real::from_i64(315, b)) / &Real::from_ratio(&pow(u, 2), b))
}

pub fn quartic_domain_constants() -> QuarticDomain {
    QuarticDomain {
        sigma: 1,
        sigma_bar: -1,
        u_star: 3,
        u_bar_star: 80,
        c7: 13.0,
        c7_bar: 13.0,
    }
}

//! Periods and the real elliptic logarithm.
//!
//! Conventions: `omega1` is the least positive real period of the lattice of
//! the differential `dx / (2y)`, so `omega1 = int_{e1}^inf dx / sqrt(f(x))`.
//! The logarithm of a point on the unbounded component is
//! `-sign(y) int_x^inf dt / (2 sqrt(f(t)))`, which sends `(e1, 0)` to
//! `omega1 / 2` and is a homomorphism onto `R / omega1 Z`. Points on the
//! bounded component are first moved to the unbounded one by adding
//! `Q2 = (e2, 0)`. Stored values are centred in `(-omega1/2, omega1/2]`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::curve::{CurveQ, PointQ};
use crate::error::{Error, Result};
use crate::numerics::{NfElem, NumberField, PrecisionContext, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    /// The unbounded component.
    E0,
    /// The bounded component (the egg), present with three real roots.
    E1,
}

#[derive(Clone, Debug)]
pub struct PeriodPair {
    pub omega1: Real,
    pub omega2_re: Real,
    pub omega2_im: Real,
    /// `omega2 / omega1` moved into the standard fundamental domain.
    pub tau_normalized: Complex64,
    /// Real roots of the cubic, decreasing.
    pub roots: Vec<Real>,
}

impl PeriodPair {
    pub fn omega2_abs(&self) -> Real {
        (&self.omega2_re.square() + &self.omega2_im.square()).sqrt()
    }

    pub fn three_real_roots(&self) -> bool {
        self.roots.len() == 3
    }

    /// Representative of `v` modulo `omega1` in `(-omega1/2, omega1/2]`.
    pub fn centre(&self, v: &Real) -> Real {
        centre_mod(v, &self.omega1)
    }
}

pub fn centre_mod(v: &Real, w: &Real) -> Real {
    let p = v.prec().max(w.prec());
    let k = (v / w).round();
    let mut r = v - &(w * &Real::from_int(&k, p));
    let half = w.mul_pow2(-1);
    if r > half {
        r = &r - w;
    } else if r <= -&half {
        r = &r + w;
    }
    r
}

#[derive(Clone, Debug)]
pub struct RealPoint {
    pub x: Real,
    pub y: Real,
    pub component: Component,
}

impl RealPoint {
    /// Tags the component from the root structure.
    pub fn new(x: Real, y: Real, periods: &PeriodPair) -> RealPoint {
        let component = if periods.three_real_roots() && x <= periods.roots[1] {
            Component::E1
        } else {
            Component::E0
        };
        RealPoint { x, y, component }
    }

    pub fn from_rational(
        p: &PointQ,
        periods: &PeriodPair,
        ctx: &PrecisionContext,
    ) -> Option<RealPoint> {
        let b = ctx.bits();
        match p {
            PointQ::Infinity => None,
            PointQ::Affine { x, y } => Some(RealPoint::new(
                Real::from_ratio(x, b),
                Real::from_ratio(y, b),
                periods,
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ElogValue {
    pub value: Real,
    pub source_point: Option<RealPoint>,
}

fn agm_loop(mut a: Real, mut b: Real, mut c: Real, bits: u32) -> Result<(Real, Real)> {
    for _ in 0..200 {
        let diff = (&a - &b).abs();
        if diff.is_zero()
            || diff.magnitude_bits().unwrap() < a.magnitude_bits().unwrap() - bits as i64 + 2
        {
            return Ok((a, c));
        }
        let na = (&a + &b).mul_pow2(-1);
        let nb = (&a * &b).sqrt();
        let nc = (&c + &(&(&c.square() + &b.square()) - &a.square()).sqrt()).mul_pow2(-1);
        a = na;
        b = nb;
        c = nc;
    }
    Err(Error::Precision("AGM did not converge".into()))
}

fn agm(a: Real, b: Real, bits: u32) -> Result<Real> {
    let c = a.clone();
    agm_loop(a, b, c, bits).map(|(m, _)| m)
}

fn reduce_tau(mut t: Complex64) -> Complex64 {
    if t.im < 0.0 {
        t = -t;
    }
    for _ in 0..100 {
        t.re -= t.re.round();
        if t.norm_sqr() < 1.0 - 1e-15 {
            t = -t.inv();
        } else {
            break;
        }
    }
    if t.re <= -0.5 {
        t.re += 1.0;
    }
    t
}

/// Both periods by the arithmetic-geometric mean.
pub fn periods(curve: &CurveQ, ctx: &PrecisionContext) -> Result<PeriodPair> {
    let bits = ctx.bits() + 32;
    let wctx = PrecisionContext {
        decimal_digits: ctx.decimal_digits + 10,
        guard_digits: ctx.guard_digits,
    };
    let roots: Vec<Real> = curve
        .real_roots(&wctx)?
        .into_iter()
        .map(|r| r.with_prec(bits))
        .collect();
    let pi = Real::pi(bits);
    let (w1, w2r, w2i) = if roots.len() == 3 {
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let m1 = agm((e1 - e3).sqrt(), (e1 - e2).sqrt(), bits)?;
        let m2 = agm((e1 - e3).sqrt(), (e2 - e3).sqrt(), bits)?;
        (&pi / &m1, Real::zero(bits), &pi / &m2)
    } else {
        let e1 = &roots[0];
        let a = Real::from_ratio(&curve.a, bits);
        let beta = (&(&e1.square() * &Real::from_i64(3, bits)) + &a).sqrt();
        let three_e1 = e1 * &Real::from_i64(3, bits);
        let m1 = agm(
            beta.sqrt().mul_pow2(1),
            (&three_e1 + &beta.mul_pow2(1)).sqrt(),
            bits,
        )?;
        let m2 = agm(
            beta.sqrt().mul_pow2(1),
            (&beta.mul_pow2(1) - &three_e1).sqrt(),
            bits,
        )?;
        let w1 = (&pi / &m1).mul_pow2(1);
        (w1.clone(), -w1.mul_pow2(-1), &pi / &m2)
    };
    let tau = Complex64::new(w2r.to_f64(), w2i.to_f64()) / w1.to_f64();
    let out = ctx.bits();
    Ok(PeriodPair {
        omega1: w1.with_prec(out),
        omega2_re: w2r.with_prec(out),
        omega2_im: w2i.with_prec(out),
        tau_normalized: reduce_tau(tau),
        roots: roots.into_iter().map(|r| r.with_prec(out)).collect(),
    })
}

// logarithm of a point with x >= e1, not reduced
fn elog_e0(curve: &CurveQ, x: &Real, y: &Real, periods: &PeriodPair, bits: u32) -> Result<Real> {
    let pi = Real::pi(bits);
    let x = x.with_prec(bits);
    let y = y.with_prec(bits);
    let roots: Vec<Real> = periods.roots.iter().map(|r| r.with_prec(bits)).collect();
    if roots.len() == 3 {
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let a = (e1 - e3).sqrt();
        let b = (e1 - e2).sqrt();
        let c = (&x - e3).sqrt();
        let (a, c) = agm_loop(a, b, c, bits)?;
        let ratio = &a / &c;
        let ratio = if ratio > Real::one(bits) {
            Real::one(bits)
        } else {
            ratio
        };
        let s = &ratio.asin() / &a;
        Ok(if y.is_negative() { s } else { &(&pi / &a) - &s })
    } else {
        let e1 = &roots[0];
        let d = &x - e1;
        if d.signum() <= 0 {
            return Ok(periods.omega1.with_prec(bits).mul_pow2(-1));
        }
        let aa = Real::from_ratio(&curve.a, bits);
        let beta = (&(&e1.square() * &Real::from_i64(3, bits)) + &aa).sqrt();
        let a = beta.sqrt().mul_pow2(1);
        let b = (&(e1 * &Real::from_i64(3, bits)) + &beta.mul_pow2(1)).sqrt();
        let c = &(&d + &beta) / &d.sqrt();
        let (a, c) = agm_loop(a, b, c, bits)?;
        let ratio = &a / &c;
        let ratio = if ratio > Real::one(bits) {
            Real::one(bits)
        } else {
            ratio
        };
        let s = &ratio.asin() / &a;
        let test = &y * &(&d.square() - &beta.square());
        let mut z = if test.is_negative() {
            s
        } else {
            &(&pi / &a) - &s
        };
        if y.signum() > 0 {
            z = &z + &(&pi / &a);
        }
        Ok(z)
    }
}

/// Elliptic logarithm of a real point, centred modulo `omega1`.
///
/// Points on the egg are shifted by `Q2` with real arithmetic; use
/// [`ell_log_rational`] to do that shift exactly for rational points.
pub fn ell_log(
    curve: &CurveQ,
    p: &RealPoint,
    periods: &PeriodPair,
    ctx: &PrecisionContext,
) -> Result<ElogValue> {
    let bits = ctx.bits() + 32;
    let (x, y) = match p.component {
        Component::E0 => (p.x.with_prec(bits), p.y.with_prec(bits)),
        Component::E1 => {
            let e2 = periods.roots[1].with_prec(bits);
            let (x, y) = (p.x.with_prec(bits), p.y.with_prec(bits));
            let dx = &x - &e2;
            if dx.is_zero() {
                // Q2 + Q2 = O
                return Ok(ElogValue {
                    value: Real::zero(ctx.bits()),
                    source_point: Some(p.clone()),
                });
            }
            let l = &y / &dx;
            let x3 = &(&l.square() - &x) - &e2;
            let y3 = &(&l * &(&x - &x3)) - &y;
            (x3, y3)
        }
    };
    let z = elog_e0(curve, &x, &y, periods, bits)?;
    let v = centre_mod(&z, &periods.omega1.with_prec(bits)).with_prec(ctx.bits());
    Ok(ElogValue {
        value: v,
        source_point: Some(p.clone()),
    })
}

/// The field `Q(e2)` generated by the middle root, when there are three real roots.
pub fn middle_root_field(curve: &CurveQ, ctx: &PrecisionContext) -> Arc<NumberField> {
    NumberField::new(curve.rhs(), 1, "e2", ctx)
}

/// `P + Q2` computed exactly in `Q(e2)`.
pub fn add_q2(curve: &CurveQ, p: &PointQ, field: &Arc<NumberField>) -> Option<(NfElem, NfElem)> {
    let _ = curve;
    let (x, y) = match p {
        PointQ::Infinity => return None,
        PointQ::Affine { x, y } => (
            NfElem::from_rational(field, x.clone()),
            NfElem::from_rational(field, y.clone()),
        ),
    };
    let e2 = NfElem::gen(field);
    let l = y.div(&x.sub(&e2));
    let x3 = l.square().sub(&x).sub(&e2);
    let y3 = l.mul(&x.sub(&x3)).sub(&y);
    Some((x3, y3))
}

/// Elliptic logarithm of a rational point; egg points are shifted exactly.
pub fn ell_log_rational(
    curve: &CurveQ,
    p: &PointQ,
    periods: &PeriodPair,
    ctx: &PrecisionContext,
) -> Result<ElogValue> {
    let rp = match RealPoint::from_rational(p, periods, ctx) {
        None => {
            return Ok(ElogValue {
                value: Real::zero(ctx.bits()),
                source_point: None,
            })
        }
        Some(rp) => rp,
    };
    if rp.component == Component::E0 {
        return ell_log(curve, &rp, periods, ctx);
    }
    let bits = ctx.bits() + 32;
    if p.y().is_some_and(num_traits::Zero::is_zero) {
        // the 2-torsion point on the egg is Q2 itself only if x = e2, impossible over Q
        return ell_log(curve, &rp, periods, ctx);
    }
    let wctx = PrecisionContext {
        decimal_digits: ctx.decimal_digits + 10,
        guard_digits: ctx.guard_digits,
    };
    let field = middle_root_field(curve, &wctx);
    let (x3, y3) = add_q2(curve, p, &field).expect("affine point");
    let shifted = RealPoint {
        x: x3.to_real(&wctx).with_prec(bits),
        y: y3.to_real(&wctx).with_prec(bits),
        component: Component::E0,
    };
    let z = elog_e0(curve, &shifted.x, &shifted.y, periods, bits)?;
    let v = centre_mod(&z, &periods.omega1.with_prec(bits)).with_prec(ctx.bits());
    Ok(ElogValue {
        value: v,
        source_point: Some(rp),
    })
}

/// `l(P + Q) = l(P) + l(Q)` modulo `omega1`, within `10^(10 - digits)`.
pub fn ell_log_additivity_check(
    curve: &CurveQ,
    p: &PointQ,
    q: &PointQ,
    periods: &PeriodPair,
    ctx: &PrecisionContext,
) -> Result<bool> {
    let s = curve.add(p, q)?;
    let lp = ell_log_rational(curve, p, periods, ctx)?.value;
    let lq = ell_log_rational(curve, q, periods, ctx)?.value;
    let ls = ell_log_rational(curve, &s, periods, ctx)?.value;
    let d = periods.centre(&(&ls - &(&lp + &lq)));
    let tol = Real::from_f64(
        10f64.powi(10 - ctx.decimal_digits.min(300) as i32),
        ctx.bits(),
    );
    Ok(d.abs() < tol)
}

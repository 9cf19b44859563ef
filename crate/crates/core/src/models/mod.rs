//! The two equation families, their Weierstrass curves, the birational maps
//! between them, the special points `P0` and recovery of the binomial
//! variables.

pub mod collision;
pub mod maps;
pub mod puiseux;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::curve::{qi, CurveQ, PointQ, Q};
use crate::elog::{PeriodPair, RealPoint};
use crate::error::{Error, Result};
use crate::numerics::{NfElem, NumberField, PrecisionContext, QPoly};
use maps::*;

pub use collision::{near_collision_verdict, recover_collision_vars, CollisionVerdict};
pub use puiseux::{
    puiseux_expand, puiseux_expand_symbolic, x_series, y_series, zeta_field, PuiseuxBranch,
    ZetaPoly,
};

/// `a6(N)` of the cubic family's Weierstrass curve `y^2 = x^3 - 1575 x + a6(N)`.
pub fn a6(n: i64) -> Q {
    let n = qi(n);
    let p = |e| pow(&n, e);
    let q = |a: i64, b: i64| Q::new(a.into(), b.into());
    q(-1366875, 4) * p(6) + q(1366875, 2) * p(4) + qi(33750) * p(3)
        - q(1366875, 4) * p(2)
        - qi(33750) * &n
        + qi(52650)
}

/// `15 u^3 - v^3 + 4 v^2 - 15 u - 3 v - 90 d = 0` with `d = (N^3 - N)/6`.
#[derive(Clone, Debug)]
pub struct CubicFamily {
    pub n: i64,
    pub d: i64,
    pub curve: CurveQ,
}

impl CubicFamily {
    pub fn new(n: i64) -> Result<CubicFamily> {
        if n == 0 || n.abs() > 1000 {
            return Err(Error::OutOfDomain(format!("family parameter N = {n}")));
        }
        let curve = CurveQ::new(qi(-1575), a6(n))?;
        Ok(CubicFamily {
            n,
            d: (n * n * n - n) / 6,
            curve,
        })
    }

    pub fn g(&self, u: &Q, v: &Q) -> Q {
        qi(15) * pow(u, 3) - pow(v, 3) + qi(4) * pow(v, 2)
            - qi(15) * u
            - qi(3) * v
            - qi(90 * self.d)
    }
}

/// `v^2 = 35 u^4 - 350 u^3 + 945 u^2 - 630 u + 315^2`.
#[derive(Clone, Debug)]
pub struct QuarticModel {
    pub coefficients: [i64; 5],
    pub curve: CurveQ,
}

impl Default for QuarticModel {
    fn default() -> Self {
        QuarticModel {
            coefficients: [35, -350, 945, -630, 99225],
            curve: CurveQ::from_ints(-13968675, 3410363250),
        }
    }
}

impl QuarticModel {
    /// `Q(u)`.
    pub fn quartic(&self, u: &Q) -> Q {
        self.coefficients
            .iter()
            .fold(Q::zero(), |acc, c| acc * u + qi(*c))
    }

    /// Coefficients of `Q(-u)`, leading first.
    pub fn mirrored(&self) -> [i64; 5] {
        let c = self.coefficients;
        [c[0], -c[1], c[2], -c[3], c[4]]
    }

    /// `q(x) = x^2 - 630 x - 13792275`, the denominator of the inverse map.
    pub fn denominator_poly(&self) -> QPoly {
        QPoly::from_ints(&[-13792275, -630, 1])
    }
}

#[derive(Clone, Debug)]
pub enum Family {
    Cubic(CubicFamily),
    Quartic(QuarticModel),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cubic(c) => write!(f, "cubic N={} (d={})", c.n, c.d),
            Family::Quartic(_) => write!(f, "quartic"),
        }
    }
}

fn exceptional(what: &str) -> Error {
    Error::Exceptional(what.to_string())
}

impl Family {
    pub fn cubic(n: i64) -> Result<Family> {
        Ok(Family::Cubic(CubicFamily::new(n)?))
    }

    pub fn quartic() -> Family {
        Family::Quartic(QuarticModel::default())
    }

    pub fn curve(&self) -> &CurveQ {
        match self {
            Family::Cubic(c) => &c.curve,
            Family::Quartic(q) => &q.curve,
        }
    }

    pub fn is_quartic(&self) -> bool {
        matches!(self, Family::Quartic(_))
    }

    /// Does `(u, v)` satisfy the model equation?
    pub fn on_model(&self, u: &Q, v: &Q) -> bool {
        match self {
            Family::Cubic(c) => c.g(u, v).is_zero(),
            Family::Quartic(q) => q.quartic(u) == v * v,
        }
    }

    /// The `u` value the forward map cannot handle.
    pub fn exceptional_u(&self) -> i64 {
        match self {
            Family::Cubic(c) => c.n,
            Family::Quartic(_) => 0,
        }
    }

    pub fn map_c_to_e(&self, u: &Q, v: &Q) -> Result<PointQ> {
        match self {
            Family::Cubic(c) => {
                let n = qi(c.n);
                let den = &n - u;
                if den.is_zero() {
                    return Err(exceptional(&format!("u = {} is the pole of the map", c.n)));
                }
                let x = eval_terms(CUBIC_X_NUM, &n, u, v) / pow(&den, 2);
                let y =
                    Q::new(3.into(), 2.into()) * eval_terms(CUBIC_Y_NUM, &n, u, v) / pow(&den, 3);
                Ok(PointQ::new(x, y))
            }
            Family::Quartic(_) => {
                if u.is_zero() {
                    return Err(exceptional("u = 0 is the pole of the map"));
                }
                let z = Q::zero();
                let x = qi(315) * eval_terms(QUARTIC_X_NUM, &z, u, v) / pow(u, 2);
                let y = qi(630) * eval_terms(QUARTIC_Y_NUM, &z, u, v) / pow(u, 3);
                Ok(PointQ::new(x, y))
            }
        }
    }

    pub fn map_e_to_c(&self, p: &PointQ) -> Result<(Q, Q)> {
        let (x, y) = match p {
            PointQ::Infinity => {
                return Err(exceptional("the point at infinity has no affine image"))
            }
            PointQ::Affine { x, y } => (x, y),
        };
        match self {
            Family::Cubic(c) => {
                let n = qi(c.n);
                let den = eval_terms(CUBIC_UV_DEN, &n, x, y);
                if den.is_zero() {
                    return Err(exceptional("denominator of the inverse map vanishes"));
                }
                Ok((
                    eval_terms(CUBIC_U_NUM, &n, x, y) / &den,
                    eval_terms(CUBIC_V_NUM, &n, x, y) / &den,
                ))
            }
            Family::Quartic(_) => {
                let z = Q::zero();
                let q = eval_terms(QUARTIC_Q, &z, x, y);
                if q.is_zero() {
                    return Err(exceptional("q(x) vanishes"));
                }
                let u = qi(-630) * eval_terms(QUARTIC_U_NUM, &z, x, y) / &q;
                let v = qi(-315) * eval_terms(QUARTIC_V_NUM, &z, x, y) / pow(&q, 2);
                Ok((u, v))
            }
        }
    }
}

/// Forward map in the closed form printed for `N = -2`.
pub fn d1_map_c_to_e(u: &Q, v: &Q) -> Result<PointQ> {
    let den = u + qi(2);
    if den.is_zero() {
        return Err(exceptional("u = -2 is the pole of the map"));
    }
    let z = Q::zero();
    Ok(PointQ::new(
        eval_terms(D1_X_NUM, &z, u, v) / pow(&den, 2),
        eval_terms(D1_Y_NUM, &z, u, v) / pow(&den, 3),
    ))
}

/// Inverse map in the closed form printed for `N = -2`.
pub fn d1_map_e_to_c(x: &Q, y: &Q) -> Result<(Q, Q)> {
    let z = Q::zero();
    let den = eval_terms(D1_UV_DEN, &z, x, y);
    if den.is_zero() {
        return Err(exceptional("denominator of the inverse map vanishes"));
    }
    Ok((
        eval_terms(D1_U_NUM, &z, x, y) / &den,
        eval_terms(D1_V_NUM, &z, x, y) / &den,
    ))
}

/// The image of the point at infinity of the model, with algebraic coordinates.
#[derive(Clone, Debug)]
pub struct SpecialPointP0 {
    pub x: NfElem,
    pub y: NfElem,
    pub hhat_bound: Option<f64>,
}

impl SpecialPointP0 {
    /// Constant terms of the `x` and `y` expansions along the real branch.
    pub fn cubic(n: i64, ctx: &PrecisionContext) -> Result<SpecialPointP0> {
        let xs = x_series(1, ctx)?;
        let ys = y_series(1, ctx)?;
        Ok(SpecialPointP0 {
            x: xs[0].at(n),
            y: ys[0].at(n),
            hhat_bound: None,
        })
    }

    /// `(630 sqrt35 + 315, 110250 + 630 sqrt35)`.
    pub fn quartic(ctx: &PrecisionContext) -> SpecialPointP0 {
        let f = sqrt35_field(ctx);
        let x = NfElem::from_poly(&f, QPoly::from_ints(&[315, 630]));
        let y = NfElem::from_poly(&f, QPoly::from_ints(&[110250, 630]));
        SpecialPointP0 {
            x,
            y,
            hhat_bound: None,
        }
    }

    pub fn conjugate(&self) -> SpecialPointP0 {
        SpecialPointP0 {
            x: self.x.clone(),
            y: self.y.neg(),
            hhat_bound: self.hhat_bound,
        }
    }

    /// `y^2 - x^3 - A x - B` computed exactly in the number field.
    pub fn residual(&self, curve: &CurveQ) -> NfElem {
        let f = self.x.field();
        let a = NfElem::from_rational(f, curve.a.clone());
        let b = NfElem::from_rational(f, curve.b.clone());
        self.y
            .square()
            .sub(&self.x.pow(3))
            .sub(&a.mul(&self.x))
            .sub(&b)
    }

    pub fn real_point(&self, periods: &PeriodPair, ctx: &PrecisionContext) -> RealPoint {
        RealPoint::new(self.x.to_real(ctx), self.y.to_real(ctx), periods)
    }
}

pub fn sqrt35_field(ctx: &PrecisionContext) -> Arc<NumberField> {
    NumberField::new(QPoly::from_ints(&[-35, 0, 1]), 0, "s", ctx)
}

/// `x(P0)` for the cubic family written out: `45 N^2 z + 3 z^2 - 60 N - 15 z`.
pub fn p0_x_closed_form(n: i64, field: &Arc<NumberField>) -> NfElem {
    let n = qi(n);
    NfElem::from_poly(
        field,
        QPoly::new(vec![qi(-60) * &n, qi(45) * &n * &n - qi(15), qi(3)]),
    )
}

/// `y(P0)`: `90 - 60 z^2 - 135 z N + 675/2 N - 2025/2 N^3 + 180 z^2 N^2`.
pub fn p0_y_closed_form(n: i64, field: &Arc<NumberField>) -> NfElem {
    let n = qi(n);
    let h = |a: i64| Q::new(a.into(), 2.into());
    let c0 = qi(90) + h(675) * &n - h(2025) * pow(&n, 3);
    let c1 = qi(-135) * &n;
    let c2 = qi(-60) + qi(180) * pow(&n, 2);
    NfElem::from_poly(field, QPoly::new(vec![c0, c1, c2]))
}

/// Is `q` an integer?
pub fn is_integral(q: &Q) -> bool {
    q.denom().is_one()
}

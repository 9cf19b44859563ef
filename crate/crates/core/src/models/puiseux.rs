//! The real branch at infinity of `g(u, v) = 0` as a series in `1/u`, with
//! coefficients in `Q(zeta)[N]`, `zeta^3 = 15`.
//!
//! Writing `t = 1/u` and `w = t v`, the equation becomes
//! `15 - w^3 + 4 t w^2 - 15 t^2 - 3 t^2 w - 15 (N^3 - N) t^3 = 0` with
//! `w(0) = zeta`. At order `t^k` the unknown coefficient appears only through
//! `-3 zeta^2 c_k`, so every step is a division by `3 zeta^2`.

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::maps::{Term, CUBIC_X_NUM, CUBIC_Y_NUM};
use crate::curve::{qi, Q};
use crate::error::{Error, Result};
use crate::numerics::{NfElem, NumberField, PrecisionContext, QPoly, Real};

pub fn zeta_field(ctx: &PrecisionContext) -> Arc<NumberField> {
    NumberField::new(QPoly::from_ints(&[-15, 0, 0, 1]), 0, "z", ctx)
}

/// Polynomial in the family parameter `N` with coefficients in `Q(zeta)`.
#[derive(Clone)]
pub struct ZetaPoly {
    field: Arc<NumberField>,
    /// `terms[i]` is the coefficient of `N^i`.
    terms: Vec<NfElem>,
}

impl ZetaPoly {
    pub fn zero(field: &Arc<NumberField>) -> ZetaPoly {
        ZetaPoly {
            field: field.clone(),
            terms: vec![],
        }
    }

    pub fn constant(c: NfElem) -> ZetaPoly {
        let f = c.field().clone();
        ZetaPoly {
            field: f,
            terms: vec![c],
        }
        .trim()
    }

    pub fn rational(field: &Arc<NumberField>, q: Q) -> ZetaPoly {
        ZetaPoly::constant(NfElem::from_rational(field, q))
    }

    /// `c N^k`.
    pub fn monomial(c: NfElem, k: usize) -> ZetaPoly {
        let f = c.field().clone();
        let mut terms = vec![NfElem::from_int(&f, 0); k];
        terms.push(c);
        ZetaPoly { field: f, terms }.trim()
    }

    fn trim(mut self) -> ZetaPoly {
        while self.terms.last().is_some_and(|c| c.is_zero()) {
            self.terms.pop();
        }
        self
    }

    pub fn coeff(&self, k: usize) -> NfElem {
        self.terms
            .get(k)
            .cloned()
            .unwrap_or_else(|| NfElem::from_int(&self.field, 0))
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ZetaPoly) -> ZetaPoly {
        let n = self.terms.len().max(o.terms.len());
        ZetaPoly {
            field: self.field.clone(),
            terms: (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect(),
        }
        .trim()
    }

    pub fn sub(&self, o: &ZetaPoly) -> ZetaPoly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> ZetaPoly {
        ZetaPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, o: &ZetaPoly) -> ZetaPoly {
        if self.is_zero() || o.is_zero() {
            return ZetaPoly::zero(&self.field);
        }
        let mut t = vec![NfElem::from_int(&self.field, 0); self.terms.len() + o.terms.len() - 1];
        for (i, a) in self.terms.iter().enumerate() {
            for (j, b) in o.terms.iter().enumerate() {
                t[i + j] = t[i + j].add(&a.mul(b));
            }
        }
        ZetaPoly {
            field: self.field.clone(),
            terms: t,
        }
        .trim()
    }

    pub fn scale(&self, c: &NfElem) -> ZetaPoly {
        ZetaPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|a| a.mul(c)).collect(),
        }
        .trim()
    }

    /// Value at an integer `N`.
    pub fn at(&self, n: i64) -> NfElem {
        let mut acc = NfElem::from_int(&self.field, 0);
        for c in self.terms.iter().rev() {
            acc = acc.scale(&qi(n)).add(c);
        }
        acc
    }

    /// `sum_i c_i N^i` from `(i, [q0, q1, q2])` with `c_i = q0 + q1 zeta + q2 zeta^2`.
    pub fn from_table(field: &Arc<NumberField>, rows: &[(usize, [Q; 3])]) -> ZetaPoly {
        let mut acc = ZetaPoly::zero(field);
        for (k, c) in rows {
            let e = NfElem::from_poly(field, QPoly::new(c.to_vec()));
            acc = acc.add(&ZetaPoly::monomial(e, *k));
        }
        acc
    }
}

impl PartialEq for ZetaPoly {
    fn eq(&self, o: &ZetaPoly) -> bool {
        self.terms == o.terms
    }
}

impl fmt::Debug for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ZetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*N"),
                _ => format!("({c})*N^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Series = Vec<ZetaPoly>;

fn s_mul(a: &Series, b: &Series, len: usize) -> Series {
    let f = &a[0].field;
    let mut out = vec![ZetaPoly::zero(f); len];
    for i in 0..a.len().min(len) {
        for j in 0..b.len().min(len - i) {
            out[i + j] = out[i + j].add(&a[i].mul(&b[j]));
        }
    }
    out
}

fn s_add(a: &Series, b: &Series) -> Series {
    let f = &a[0].field;
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(|| ZetaPoly::zero(f));
            let y = b.get(i).cloned().unwrap_or_else(|| ZetaPoly::zero(f));
            x.add(&y)
        })
        .collect()
}

fn s_scale(a: &Series, c: &ZetaPoly) -> Series {
    a.iter().map(|x| x.mul(c)).collect()
}

fn s_shift(a: &Series, k: usize, len: usize) -> Series {
    let f = &a[0].field;
    let mut out = vec![ZetaPoly::zero(f); k];
    out.extend(a.iter().cloned());
    out.truncate(len);
    while out.len() < len {
        out.push(ZetaPoly::zero(f));
    }
    out
}

/// Branch `v_1(u) = sum_k c_k u^(1-k)`, `c_0 = zeta`.
#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    /// `None` for the symbolic-`N` expansion.
    pub n: Option<i64>,
    /// Coefficients of `u^1, u^0, u^-1, ...`.
    pub coefficients: Vec<ZetaPoly>,
    /// The series converges for `|u|` above this radius.
    pub validity_radius: Option<i64>,
}

impl PuiseuxBranch {
    /// Coefficient of `u^e`.
    pub fn coeff_of_power(&self, e: i64) -> Option<&ZetaPoly> {
        let k = 1 - e;
        if k < 0 {
            None
        } else {
            self.coefficients.get(k as usize)
        }
    }

    /// Numerical value of the truncated series at a real `u` (concrete `N` only).
    pub fn eval(&self, u: &Real, ctx: &PrecisionContext) -> Real {
        let n = self.n.expect("numeric evaluation needs a concrete N");
        let t = u.recip();
        let mut acc = Real::zero(ctx.bits());
        let mut pw = u.clone();
        for c in &self.coefficients {
            acc = &acc + &(&c.at(n).to_real(ctx) * &pw);
            pw = &pw * &t;
        }
        acc
    }
}

/// Series for `w = zeta + c_1 t + ...` to `depth` terms, symbolic in `N`.
fn w_series(field: &Arc<NumberField>, depth: usize) -> Result<Series> {
    let z = NfElem::gen(field);
    let mut w: Series = vec![ZetaPoly::constant(z.clone())];
    let inv = z.square().scale(&qi(3)).inv();
    let r = |q: i64| ZetaPoly::rational(field, qi(q));
    // -15 (N^3 - N)
    let c3 = ZetaPoly::from_table(
        field,
        &[
            (1, [qi(15), Q::zero(), Q::zero()]),
            (3, [qi(-15), Q::zero(), Q::zero()]),
        ],
    );
    for k in 1..depth {
        let len = k + 1;
        let mut wk = w.clone();
        wk.push(ZetaPoly::zero(field));
        let w2 = s_mul(&wk, &wk, len);
        let w3 = s_mul(&w2, &wk, len);
        // F = 15 - w^3 + 4 t w^2 - 15 t^2 - 3 t^2 w - 15 (N^3 - N) t^3
        let mut f: Series = vec![r(15)];
        f = s_add(&f, &s_scale(&w3, &r(-1)));
        f = s_add(&f, &s_shift(&s_scale(&w2, &r(4)), 1, len));
        f = s_add(&f, &s_shift(&vec![r(-15)], 2, len));
        f = s_add(&f, &s_shift(&s_scale(&wk, &r(-3)), 2, len));
        f = s_add(&f, &s_shift(&vec![c3.clone()], 3, len));
        let rk = f.get(k).cloned().unwrap_or_else(|| ZetaPoly::zero(field));
        // lower orders must already vanish
        if f.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::Contract(
                "branch recursion left a nonzero lower-order term".into(),
            ));
        }
        w.push(rk.scale(&inv));
    }
    Ok(w)
}

/// Symbolic expansion to `depth` coefficients.
pub fn puiseux_expand_symbolic(depth: usize, ctx: &PrecisionContext) -> Result<PuiseuxBranch> {
    if depth < 2 {
        return Err(Error::Contract("depth must be at least 2".into()));
    }
    let field = zeta_field(ctx);
    Ok(PuiseuxBranch {
        n: None,
        coefficients: w_series(&field, depth)?,
        validity_radius: None,
    })
}

/// Expansion for a concrete `N`.
pub fn puiseux_expand(n: i64, depth: usize, ctx: &PrecisionContext) -> Result<PuiseuxBranch> {
    let sym = puiseux_expand_symbolic(depth, ctx)?;
    let coefficients = sym
        .coefficients
        .iter()
        .map(|c| ZetaPoly::constant(c.at(n)))
        .collect();
    Ok(PuiseuxBranch {
        n: Some(n),
        coefficients,
        validity_radius: Some(n.abs() + 1),
    })
}

// substitute u = 1/t, v = w/t into a numerator of total (u, v) degree `deg`,
// multiplied through by t^deg
fn numerator_series(
    field: &Arc<NumberField>,
    terms: &[Term],
    deg: u32,
    w: &Series,
    len: usize,
) -> Series {
    let one = ZetaPoly::rational(field, Q::one());
    let mut wp: Vec<Series> = vec![vec![one.clone()]];
    for i in 1..=3 {
        let next = s_mul(&wp[i - 1], w, len);
        wp.push(next);
    }
    let mut acc: Series = vec![ZetaPoly::zero(field); len];
    for &(c, ni, a, b) in terms {
        let coef = ZetaPoly::monomial(NfElem::from_int(field, c), ni as usize);
        let shift = (deg - a - b) as usize;
        let s = s_shift(&s_scale(&wp[b as usize], &coef), shift, len);
        acc = s_add(&acc, &s);
    }
    acc.truncate(len);
    acc
}

// 1 / (1 - N t)^p as a series
fn inv_one_minus_nt(field: &Arc<NumberField>, p: u32, len: usize) -> Series {
    (0..len)
        .map(|k| {
            // binomial(k + p - 1, p - 1) N^k
            let mut c = BigRational::one();
            for i in 1..p as i64 {
                c = c * qi(k as i64 + i) / qi(i);
            }
            ZetaPoly::monomial(NfElem::from_rational(field, c), k)
        })
        .collect()
}

/// `x(t) = X(u, v_1(u))` expanded in `t = 1/u`, symbolic in `N`, `len` terms.
pub fn x_series(len: usize, ctx: &PrecisionContext) -> Result<Vec<ZetaPoly>> {
    let field = zeta_field(ctx);
    let w = w_series(&field, len)?;
    let num = numerator_series(&field, CUBIC_X_NUM, 2, &w, len);
    // (N - u)^2 t^2 = (1 - N t)^2
    Ok(s_mul(&num, &inv_one_minus_nt(&field, 2, len), len))
}

/// `y(t) = Y(u, v_1(u))` expanded in `t`, symbolic in `N`, `len` terms.
pub fn y_series(len: usize, ctx: &PrecisionContext) -> Result<Vec<ZetaPoly>> {
    let field = zeta_field(ctx);
    let w = w_series(&field, len)?;
    let num = numerator_series(&field, CUBIC_Y_NUM, 3, &w, len);
    // (N - u)^3 t^3 = -(1 - N t)^3, and the map carries a factor 3/2
    let f = ZetaPoly::rational(&field, Q::new((-3).into(), 2.into()));
    Ok(s_scale(
        &s_mul(&num, &inv_one_minus_nt(&field, 3, len), len),
        &f,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn constant_term_is_four_thirds() {
        let ctx = PrecisionContext::default();
        let b = puiseux_expand_symbolic(4, &ctx).unwrap();
        let f = zeta_field(&ctx);
        assert_eq!(
            b.coeff_of_power(0).unwrap(),
            &ZetaPoly::rational(&f, qq(4, 3))
        );
        let want = ZetaPoly::from_table(&f, &[(0, [Q::zero(), qq(-1, 3), qq(7, 135)])]);
        assert_eq!(b.coeff_of_power(-1).unwrap(), &want);
    }

    fn z(q0: Q, q1: Q, q2: Q) -> [Q; 3] {
        [q0, q1, q2]
    }

    #[test]
    fn symbolic_through_u_minus_four() {
        let ctx = PrecisionContext::default();
        let b = puiseux_expand_symbolic(6, &ctx).unwrap();
        let f = zeta_field(&ctx);
        let o = Q::zero;
        let m2 = ZetaPoly::from_table(
            &f,
            &[
                (3, z(o(), qq(-1, 3), o())),
                (1, z(o(), qq(1, 3), o())),
                (0, z(o(), qq(4, 243), o())),
            ],
        );
        assert_eq!(b.coeff_of_power(-2).unwrap(), &m2);
        let m3 = ZetaPoly::from_table(&f, &[(0, z(o(), qq(-1, 9), qq(7, 405)))]);
        assert_eq!(b.coeff_of_power(-3).unwrap(), &m3);
        let m4 = ZetaPoly::from_table(
            &f,
            &[
                (3, z(o(), qq(-2, 9), qq(7, 405))),
                (1, z(o(), qq(2, 9), qq(-7, 405))),
                (0, z(o(), qq(8, 729), qq(-28, 32805))),
            ],
        );
        assert_eq!(b.coeff_of_power(-4).unwrap(), &m4);
    }

    #[test]
    fn specialised_at_minus_two() {
        let ctx = PrecisionContext::default();
        let b = puiseux_expand(-2, 6, &ctx).unwrap();
        let f = zeta_field(&ctx);
        let o = Q::zero;
        assert_eq!(
            b.coeff_of_power(-2).unwrap(),
            &ZetaPoly::from_table(&f, &[(0, z(o(), qq(490, 243), o()))])
        );
        assert_eq!(
            b.coeff_of_power(-4).unwrap(),
            &ZetaPoly::from_table(&f, &[(0, z(o(), qq(980, 729), qq(-686, 6561)))])
        );
        assert_eq!(b.validity_radius, Some(3));
    }

    #[test]
    fn x_expansion_leading_terms() {
        let ctx = PrecisionContext::default();
        let xs = x_series(3, &ctx).unwrap();
        let f = zeta_field(&ctx);
        let o = Q::zero;
        let c0 = ZetaPoly::from_table(
            &f,
            &[
                (2, z(o(), qi(45), o())),
                (1, z(qi(-60), o(), o())),
                (0, z(o(), qi(-15), qi(3))),
            ],
        );
        assert_eq!(xs[0], c0);
        let c1 = ZetaPoly::from_table(
            &f,
            &[
                (3, z(o(), qi(45), o())),
                (2, z(qi(-120), o(), o())),
                (1, z(o(), qi(-15), qi(6))),
                (0, z(qi(40), qi(-4), o())),
            ],
        );
        assert_eq!(xs[1], c1);
        let c2 = ZetaPoly::from_table(
            &f,
            &[
                (4, z(o(), qi(45), o())),
                (3, z(qi(-120), o(), o())),
                (2, z(o(), qi(-30), qq(34, 3))),
                (1, z(qi(40), qi(-8), o())),
                (0, z(qi(3), qi(5), qq(-25, 9))),
            ],
        );
        assert_eq!(xs[2], c2);
    }
}

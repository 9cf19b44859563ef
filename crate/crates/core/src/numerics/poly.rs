//! Dense univariate polynomials over the rationals and rigorous real-root isolation.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

/// Coefficients stored from the constant term upwards; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    c: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> QPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    /// From integer coefficients, constant term first.
    pub fn from_ints(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> QPoly {
        QPoly::new(
            c.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        )
    }

    pub fn zero() -> QPoly {
        QPoly { c: vec![] }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_real(&self, x: &Real) -> Real {
        let p = x.prec();
        let mut acc = Real::zero(p);
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + &Real::from_ratio(a, p);
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * q(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut r = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        QPoly::new(r)
    }

    pub fn scale(&self, s: &BigRational) -> QPoly {
        QPoly::new(self.c.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.c.len() - 1;
        let lc = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quo = vec![BigRational::zero(); r.len() - dd];
        for i in (0..quo.len()).rev() {
            let f = &r[i + dd] / &lc;
            if !f.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] -= &f * b;
                }
            }
            quo[i] = f;
        }
        r.truncate(dd);
        (QPoly::new(quo), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        QPoly::new(self.c.iter().map(|a| a / &l).collect())
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self / gcd(self, self')`, keeping each real root once.
    pub fn squarefree(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Cauchy bound: every complex root has modulus below the returned integer.
    pub fn root_bound(&self) -> BigInt {
        let l = self.lead().abs();
        let m = self.c[..self.c.len() - 1]
            .iter()
            .map(|a| a.abs() / &l)
            .fold(BigRational::zero(), |x, y| if y > x { y } else { x });
        (m + BigRational::one()).ceil().to_integer() + 1
    }

    fn sturm_chain(&self) -> Vec<QPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }
}

fn sign_changes(chain: &[QPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn sign_of(p: &QPoly, x: &BigRational) -> i32 {
    let v = p.eval(x);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// All distinct real roots, in decreasing order, each to `ctx` precision.
///
/// Isolation uses a Sturm chain on the square-free part, so the count is exact;
/// each isolated root is then refined by Newton iteration and its final
/// enclosure is confirmed by an exact sign change.
pub fn real_roots(poly: &QPoly, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    if poly.degree().unwrap_or(0) == 0 {
        return Err(Error::Contract(
            "real_roots needs a polynomial of degree at least 1".into(),
        ));
    }
    let p = poly.squarefree();
    let chain = p.sturm_chain();
    let bound = BigRational::from_integer(p.root_bound());
    let mut stack = vec![(-bound.clone(), bound)];
    let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
    let mut steps = 0usize;
    while let Some((a, b)) = stack.pop() {
        steps += 1;
        if steps > 100_000 {
            return Err(Error::Precision("root isolation did not terminate".into()));
        }
        let n = sign_changes(&chain, &a) - sign_changes(&chain, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((a, b));
            continue;
        }
        // split away from exact roots so each root stays strictly inside one half
        let mut k = 512;
        let m = loop {
            let m = &a + (&b - &a) * BigRational::new(BigInt::from(k), BigInt::from(1024));
            if !p.eval(&m).is_zero() {
                break m;
            }
            k += 1;
        };
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    let bits = ctx.bits() + 16;
    let mut out = Vec::with_capacity(isolated.len());
    for (a, b) in isolated {
        out.push(refine(&p, a, b, bits)?.with_prec(ctx.bits()));
    }
    out.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(out)
}

/// Refine the unique root of `p` in `(a, b]` to `bits` bits.
fn refine(p: &QPoly, mut a: BigRational, mut b: BigRational, bits: u32) -> Result<Real> {
    if p.eval(&b).is_zero() {
        return Ok(Real::from_ratio(&b, bits));
    }
    let sa = sign_of(p, &a);
    // exact bisection to a 2^-60 relative bracket
    for _ in 0..400 {
        let w = &b - &a;
        let scale = a.abs().max(b.abs()).max(BigRational::one());
        if w * BigRational::from_integer(BigInt::one() << 60usize) < scale {
            break;
        }
        let m = (&a + &b) / q(2);
        let s = sign_of(p, &m);
        if s == 0 {
            return Ok(Real::from_ratio(&m, bits));
        }
        if s == sa {
            a = m;
        } else {
            b = m;
        }
    }
    let dp = p.derivative();
    let mut x = Real::from_ratio(&((&a + &b) / q(2)), bits);
    let lo = Real::from_ratio(&a, bits);
    let hi = Real::from_ratio(&b, bits);
    let iters = ((bits as f64 / 50.0).log2().ceil().max(0.0) as usize) + 4;
    for _ in 0..iters {
        let fx = p.eval_real(&x);
        let dfx = dp.eval_real(&x);
        if dfx.is_zero() {
            break;
        }
        let nx = &x - &(&fx / &dfx);
        if nx < lo || nx > hi {
            return Err(Error::Precision(
                "Newton step left the isolating interval".into(),
            ));
        }
        x = nx;
    }
    // exact confirmation: the sign must change across a tiny bracket around x
    let mag = x.magnitude_bits().unwrap_or(0).max(0);
    let eps = Real::one(bits).mul_pow2(mag - bits as i64 + 6);
    let l = (&x - &eps).to_ratio();
    let r = (&x + &eps).to_ratio();
    let (sl, sr) = (sign_of(p, &l), sign_of(p, &r));
    if sl * sr > 0 {
        return Err(Error::Precision(
            "refined root failed the sign-change check".into(),
        ));
    }
    Ok(x)
}

/// A real algebraic number given by its minimal polynomial and root index.
#[derive(Clone, Debug)]
pub struct AlgebraicConstant {
    pub minimal_polynomial: QPoly,
    /// Index into the real roots sorted in decreasing order.
    pub chosen_root_index: usize,
    pub cached_value: Real,
}

impl AlgebraicConstant {
    pub fn new(
        minimal_polynomial: QPoly,
        chosen_root_index: usize,
        ctx: &PrecisionContext,
    ) -> Result<Self> {
        let roots = real_roots(&minimal_polynomial, ctx)?;
        let v = roots.get(chosen_root_index).cloned().ok_or_else(|| {
            Error::Contract(format!("polynomial has only {} real roots", roots.len()))
        })?;
        Ok(AlgebraicConstant {
            minimal_polynomial,
            chosen_root_index,
            cached_value: v,
        })
    }

    /// The real cube root of 15.
    pub fn cbrt15(ctx: &PrecisionContext) -> Self {
        AlgebraicConstant::new(QPoly::from_ints(&[-15, 0, 0, 1]), 0, ctx)
            .expect("x^3-15 has one real root")
    }

    /// The positive square root of 35.
    pub fn sqrt35(ctx: &PrecisionContext) -> Self {
        AlgebraicConstant::new(QPoly::from_ints(&[-35, 0, 1]), 0, ctx)
            .expect("x^2-35 has two real roots")
    }

    /// Value at `ctx` precision, recomputed when the cache is too coarse.
    pub fn value(&self, ctx: &PrecisionContext) -> Real {
        if self.cached_value.prec() >= ctx.bits() {
            self.cached_value.with_prec(ctx.bits())
        } else {
            AlgebraicConstant::new(self.minimal_polynomial.clone(), self.chosen_root_index, ctx)
                .map(|c| c.cached_value)
                .expect("root isolation succeeded at lower precision")
        }
    }
}

/// Evaluates a rational polynomial expression in an algebraic constant.
pub fn eval_algebraic(expr: &QPoly, constant: &AlgebraicConstant, ctx: &PrecisionContext) -> Real {
    expr.eval_real(&constant.value(ctx))
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let m = a.abs();
            let body = match (i, m.is_one()) {
                (0, _) => format!("{m}"),
                (1, true) => "x".to_string(),
                (1, false) => format!("{m}*x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{m}*x^{i}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

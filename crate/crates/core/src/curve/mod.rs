//! Short Weierstrass curves over Q and exact point arithmetic.

mod height;
mod improve;

pub use height::{canonical_height, congruent, naive_height, pairing_matrix, HeightPairing};
pub use improve::improve_basis;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{real_roots, PrecisionContext, QPoly, Real};

pub type Q = BigRational;

pub fn qi(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"n"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n.trim().parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `y^2 = x^3 + A x + B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveQ {
    pub a: Q,
    pub b: Q,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum PointQ {
    Infinity,
    Affine { x: Q, y: Q },
}

impl PointQ {
    pub fn new(x: Q, y: Q) -> PointQ {
        PointQ::Affine { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> PointQ {
        PointQ::new(qi(x), qi(y))
    }

    /// Parses a pair of `"p/q"` strings.
    pub fn parse(x: &str, y: &str) -> Option<PointQ> {
        Some(PointQ::new(parse_q(x)?, parse_q(y)?))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointQ::Infinity)
    }

    pub fn x(&self) -> Option<&Q> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Q> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { y, .. } => Some(y),
        }
    }
}

impl fmt::Debug for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointQ::Infinity => write!(f, "O"),
            PointQ::Affine { x, y } => write!(f, "({}, {})", fmt_q(x), fmt_q(y)),
        }
    }
}

/// Generators of the free part together with the torsion subgroup.
#[derive(Clone, Debug, PartialEq)]
pub struct MWBasis {
    pub generators: Vec<PointQ>,
    pub torsion_order: u32,
    pub torsion_points: Vec<PointQ>,
}

impl MWBasis {
    /// Basis with trivial torsion.
    pub fn free(generators: Vec<PointQ>) -> MWBasis {
        MWBasis {
            generators,
            torsion_order: 1,
            torsion_points: vec![PointQ::Infinity],
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

impl CurveQ {
    pub fn new(a: Q, b: Q) -> Result<CurveQ> {
        let c = CurveQ { a, b };
        if c.discriminant().is_zero() {
            return Err(Error::Contract("singular cubic".into()));
        }
        Ok(c)
    }

    pub fn from_ints(a: i64, b: i64) -> CurveQ {
        CurveQ::new(qi(a), qi(b)).expect("nonsingular")
    }

    /// `-16 (4A^3 + 27B^2)`.
    pub fn discriminant(&self) -> Q {
        -qi(16) * (qi(4) * &self.a * &self.a * &self.a + qi(27) * &self.b * &self.b)
    }

    pub fn j_invariant(&self) -> Q {
        let a3 = &self.a * &self.a * &self.a;
        -qi(1728) * qi(64) * a3 / self.discriminant()
    }

    /// Right-hand side `x^3 + A x + B` as a polynomial.
    pub fn rhs(&self) -> QPoly {
        QPoly::new(vec![self.b.clone(), self.a.clone(), Q::zero(), Q::one()])
    }

    pub fn rhs_at(&self, x: &Q) -> Q {
        x * x * x + &self.a * x + &self.b
    }

    pub fn contains(&self, p: &PointQ) -> bool {
        match p {
            PointQ::Infinity => true,
            PointQ::Affine { x, y } => y * y == self.rhs_at(x),
        }
    }

    fn check(&self, p: &PointQ) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Contract(format!("{p} is not on the curve")))
        }
    }

    /// Real roots of the cubic, decreasing.
    pub fn real_roots(&self, ctx: &PrecisionContext) -> Result<Vec<Real>> {
        real_roots(&self.rhs(), ctx)
    }

    /// Integer coefficients, if the model is integral.
    pub fn integral_coeffs(&self) -> Option<(BigInt, BigInt)> {
        if self.a.is_integer() && self.b.is_integer() {
            Some((self.a.to_integer(), self.b.to_integer()))
        } else {
            None
        }
    }

    pub fn neg(&self, p: &PointQ) -> PointQ {
        match p {
            PointQ::Infinity => PointQ::Infinity,
            PointQ::Affine { x, y } => PointQ::new(x.clone(), -y),
        }
    }

    /// Group law on checked inputs.
    pub fn add(&self, p: &PointQ, q: &PointQ) -> Result<PointQ> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &PointQ, q: &PointQ) -> PointQ {
        let (x1, y1, x2, y2) = match (p, q) {
            (PointQ::Infinity, _) => return q.clone(),
            (_, PointQ::Infinity) => return p.clone(),
            (PointQ::Affine { x: x1, y: y1 }, PointQ::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return PointQ::Infinity;
            }
            (qi(3) * x1 * x1 + &self.a) / (qi(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - x1 - x2;
        let y3 = lambda * (x1 - &x3) - y1;
        PointQ::new(x3, y3)
    }

    pub fn double(&self, p: &PointQ) -> PointQ {
        self.add_unchecked(p, p)
    }

    pub fn sub(&self, p: &PointQ, q: &PointQ) -> Result<PointQ> {
        self.add(p, &self.neg(q))
    }

    /// `n P` by double-and-add.
    pub fn mul(&self, n: i64, p: &PointQ) -> PointQ {
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = PointQ::Infinity;
        let mut d = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &d);
            }
            k >>= 1;
            if k > 0 {
                d = self.double(&d);
            }
        }
        acc
    }

    /// `sum m_i P_i + T`.
    pub fn multi_scalar(
        &self,
        basis: &MWBasis,
        coeffs: &[i64],
        torsion: &PointQ,
    ) -> Result<PointQ> {
        if coeffs.len() != basis.rank() {
            return Err(Error::Contract(format!(
                "{} coefficients for a basis of rank {}",
                coeffs.len(),
                basis.rank()
            )));
        }
        for g in &basis.generators {
            self.check(g)?;
        }
        self.check(torsion)?;
        let mut acc = torsion.clone();
        for (m, g) in coeffs.iter().zip(&basis.generators) {
            if *m != 0 {
                acc = self.add_unchecked(&acc, &self.mul(*m, g));
            }
        }
        Ok(acc)
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn sign_q(q: &Q) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd1() -> CurveQ {
        CurveQ::from_ints(-1575, -12451725)
    }

    #[test]
    fn discriminant_and_j() {
        let e = fd1();
        assert_eq!(e.discriminant(), qi(-66979386718470000));
        assert_eq!(
            e.j_invariant(),
            Q::new((-59270400).into(), 9187844543i64.into())
        );
    }

    #[test]
    fn sum_of_two_generators() {
        let e = fd1();
        let p3 = PointQ::from_ints(3055, 168805);
        let p5 = PointQ::parse("1185/4", "-28935/8").unwrap();
        let s = e.add(&e.neg(&p3), &e.neg(&p5)).unwrap();
        assert_eq!(s, PointQ::from_ints(555, 12555));
    }

    #[test]
    fn off_curve_input_is_rejected() {
        let e = fd1();
        assert!(e.add(&PointQ::from_ints(1, 1), &PointQ::Infinity).is_err());
    }

    #[test]
    fn identity_and_inverse() {
        let e = fd1();
        let p = PointQ::from_ints(235, 395);
        assert_eq!(e.add(&p, &PointQ::Infinity).unwrap(), p);
        assert_eq!(e.add(&p, &e.neg(&p)).unwrap(), PointQ::Infinity);
        assert_eq!(e.mul(3, &p), e.add_unchecked(&p, &e.double(&p)));
    }
}

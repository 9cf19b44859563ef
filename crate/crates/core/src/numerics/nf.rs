//! Exact arithmetic in simple algebraic extensions `Q[t]/(m(t))`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPoly;
use super::{AlgebraicConstant, PrecisionContext, Real};

/// A number field given by a monic irreducible polynomial and a real embedding.
#[derive(Debug)]
pub struct NumberField {
    pub minpoly: QPoly,
    pub name: &'static str,
    pub embedding: AlgebraicConstant,
}

impl NumberField {
    pub fn new(
        minpoly: QPoly,
        root_index: usize,
        name: &'static str,
        ctx: &PrecisionContext,
    ) -> Arc<NumberField> {
        let minpoly = minpoly.monic();
        let embedding = AlgebraicConstant::new(minpoly.clone(), root_index, ctx)
            .expect("real embedding exists");
        Arc::new(NumberField {
            minpoly,
            name,
            embedding,
        })
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }
}

#[derive(Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    poly: QPoly,
}

impl NfElem {
    pub fn from_poly(field: &Arc<NumberField>, p: QPoly) -> NfElem {
        NfElem {
            field: field.clone(),
            poly: p.rem(&field.minpoly),
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> NfElem {
        NfElem {
            field: field.clone(),
            poly: QPoly::new(vec![q]),
        }
    }

    pub fn from_int(field: &Arc<NumberField>, v: i64) -> NfElem {
        NfElem::from_rational(field, BigRational::from_integer(BigInt::from(v)))
    }

    /// The generator `t`.
    pub fn gen(field: &Arc<NumberField>) -> NfElem {
        NfElem::from_poly(field, QPoly::from_ints(&[0, 1]))
    }

    /// Coefficients `c_i` of `t^i`, padded to the field degree.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.field.degree())
            .map(|i| self.poly.coeff(i))
            .collect()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.poly.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            _ => None,
        }
    }

    pub fn add(&self, o: &NfElem) -> NfElem {
        NfElem {
            field: self.field.clone(),
            poly: self.poly.add(&o.poly),
        }
    }

    pub fn sub(&self, o: &NfElem) -> NfElem {
        NfElem {
            field: self.field.clone(),
            poly: self.poly.sub(&o.poly),
        }
    }

    pub fn mul(&self, o: &NfElem) -> NfElem {
        NfElem::from_poly(&self.field, self.poly.mul(&o.poly))
    }

    pub fn neg(&self) -> NfElem {
        NfElem {
            field: self.field.clone(),
            poly: self.poly.neg(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> NfElem {
        NfElem {
            field: self.field.clone(),
            poly: self.poly.scale(s),
        }
    }

    pub fn square(&self) -> NfElem {
        self.mul(self)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> NfElem {
        assert!(!self.is_zero(), "inverse of zero in a number field");
        // invariant: r_i = s_i * a (mod m)
        let (mut r0, mut r1) = (self.field.minpoly.clone(), self.poly.clone());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::from_ints(&[1]));
        while !r1.is_zero() {
            let (quo, r) = r0.div_rem(&r1);
            let s = s0.sub(&quo.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert_eq!(r0.degree(), Some(0), "minimal polynomial is reducible");
        let c = BigRational::one() / r0.coeff(0);
        NfElem::from_poly(&self.field, s0.scale(&c))
    }

    pub fn div(&self, o: &NfElem) -> NfElem {
        self.mul(&o.inv())
    }

    pub fn pow(&self, e: u32) -> NfElem {
        let mut r = NfElem::from_int(&self.field, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Value under the field's real embedding.
    pub fn to_real(&self, ctx: &PrecisionContext) -> Real {
        super::eval_algebraic(&self.poly, &self.field.embedding, ctx)
    }
}

impl PartialEq for NfElem {
    fn eq(&self, o: &NfElem) -> bool {
        self.poly == o.poly
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.poly.to_string().replace('x', self.field.name);
        write!(f, "{s}")
    }
}

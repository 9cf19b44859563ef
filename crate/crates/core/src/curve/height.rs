//! Naive and canonical heights, height pairing.
//!
//! The canonical height uses the duplication-formula series: the archimedean
//! contribution follows the real orbit `x -> Phi(x)/Psi(x)` and the
//! non-archimedean corrections track the common power of `p` cancelled from
//! `(Phi, Psi)` at each doubling, for each prime `p` dividing `6(4A^3 + 27B^2)`.
//! Values are in the normalisation where `h(2P) = 4 h(P)` and
//! `h(P) ~ (1/2) log H(x(P))`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{CurveQ, MWBasis, PointQ, Q};
use crate::error::{Error, Result};
use crate::numerics::factor::{prime_divisors, valuation};
use crate::numerics::{min_eigenvalue, PrecisionContext, Real, SymMatrix};

/// Number of doublings in the series; the truncation error is below `4^-STEPS`.
const STEPS: usize = 36;

/// Weil height `log max(|p|, |q|)` of `p/q` in lowest terms.
pub fn naive_height(x: &Q) -> f64 {
    let m = if x.numer().abs() > *x.denom() {
        x.numer().abs()
    } else {
        x.denom().clone()
    };
    if m.is_zero() {
        return 0.0;
    }
    Real::from_int(&m, 128).ln_abs_f64()
}

fn ln_big(v: &BigInt) -> f64 {
    Real::from_int(v, 128).ln_abs_f64()
}

/// Canonical height of a rational point on an integral model.
pub fn canonical_height(curve: &CurveQ, p: &PointQ, ctx: &PrecisionContext) -> Result<f64> {
    let x = match p {
        PointQ::Infinity => return Ok(0.0),
        PointQ::Affine { x, .. } => x,
    };
    if !curve.contains(p) {
        return Err(Error::Contract(format!("{p} is not on the curve")));
    }
    let (a, b) = curve
        .integral_coeffs()
        .ok_or_else(|| Error::Contract("canonical height needs an integral model".into()))?;
    let num = x.numer().clone();
    let den = x.denom().clone();
    let h0 = ln_big(if num.abs() > den { &num } else { &den });
    let arch = archimedean(&a, &b, &num, &den, ctx);
    let mut nonarch = 0.0;
    let disc = (BigInt::from(4) * &a * &a * &a + BigInt::from(27) * &b * &b).abs();
    let six_disc = (disc.clone() * 6u32).to_biguint().unwrap();
    for prime in prime_divisors(&six_disc) {
        nonarch += nonarchimedean(&a, &b, &num, &den, &prime, &disc.to_biguint().unwrap())?;
    }
    Ok((h0 + arch - nonarch) / 2.0)
}

fn archimedean(a: &BigInt, b: &BigInt, num: &BigInt, den: &BigInt, ctx: &PrecisionContext) -> f64 {
    // the doubling map loses about two bits per step
    let bits = ctx.bits().max(200) + 2 * STEPS as u32 + 32;
    let ra = Real::from_int(a, bits);
    let rb = Real::from_int(b, bits);
    let one = Real::one(bits);
    let mut x = &Real::from_int(num, bits) / &Real::from_int(den, bits);
    let mut s = 0.0f64;
    let mut w = 1.0f64;
    for _ in 0..STEPS {
        w /= 4.0;
        let x2 = x.square();
        // Phi = x^4 - 2A x^2 - 8B x + A^2, Psi = 4(x^3 + A x + B)
        let ax2 = (&ra * &x2).mul_pow2(1);
        let bx = (&rb * &x).mul_pow2(3);
        let phi = &(&(&x2 * &x2) - &ax2) - &(&bx - &ra.square());
        let psi = (&(&(&x2 * &x) + &(&ra * &x)) + &rb).mul_pow2(2);
        let top = Real::max(&phi.abs(), &psi.abs());
        let xl = if x.abs() > one { x.ln_abs_f64() } else { 0.0 };
        s += w * (top.ln_abs_f64() - 4.0 * xl);
        if psi.is_zero() {
            break;
        }
        x = &phi / &psi;
    }
    s
}

fn vp(z: &BigInt, p: &BigInt, cap: u32) -> u32 {
    if z.is_zero() {
        return cap;
    }
    let mut z = z.clone();
    let mut c = 0;
    while c < cap && (&z % p).is_zero() {
        z /= p;
        c += 1;
    }
    c
}

fn nonarchimedean(
    a: &BigInt,
    b: &BigInt,
    num: &BigInt,
    den: &BigInt,
    p: &BigUint,
    disc: &BigUint,
) -> Result<f64> {
    let pi = BigInt::from(p.clone());
    let extra = if p == &BigUint::from(2u32) { 12 } else { 0 };
    let per_step = 2 * valuation(disc, p) + extra + 1;
    let mut prec = STEPS as u32 * per_step + 10;
    let mut modulus = num_traits::pow(pi.clone(), prec as usize);
    let mut aa = num.mod_floor(&modulus);
    let mut dd = den.mod_floor(&modulus);
    let lp = ln_big(&pi);
    let mut total = 0.0;
    let mut w = 1.0f64;
    for _ in 0..STEPS {
        w /= 4.0;
        let a2 = &aa * &aa;
        let d2 = &dd * &dd;
        let phi =
            (&a2 * &a2 - BigInt::from(2) * a * &a2 * &d2 - BigInt::from(8) * b * &aa * &d2 * &dd
                + a * a * &d2 * &d2)
                .mod_floor(&modulus);
        let psi = (BigInt::from(4) * &dd * (&a2 * &aa + a * &aa * &d2 + b * &d2 * &dd))
            .mod_floor(&modulus);
        let v = vp(&phi, &pi, prec).min(vp(&psi, &pi, prec));
        if v >= prec {
            return Err(Error::Precision(format!(
                "p-adic precision exhausted at p = {p}"
            )));
        }
        total += w * v as f64 * lp;
        let div = num_traits::pow(pi.clone(), v as usize);
        prec -= v;
        modulus = num_traits::pow(pi.clone(), prec as usize);
        aa = (phi / &div).mod_floor(&modulus);
        dd = (psi / &div).mod_floor(&modulus);
    }
    Ok(total)
}

/// Height-pairing matrix of a basis together with its least eigenvalue.
#[derive(Clone, Debug)]
pub struct HeightPairing {
    pub matrix: SymMatrix<Real>,
    pub heights: Vec<f64>,
    pub rho: Real,
    pub gamma: Option<f64>,
}

impl HeightPairing {
    pub fn rho_f64(&self) -> f64 {
        self.rho.to_f64()
    }

    pub fn rows_f64(&self) -> Vec<Vec<f64>> {
        self.matrix
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_f64()).collect())
            .collect()
    }
}

/// `<P_i, P_j> = (h(P_i + P_j) - h(P_i) - h(P_j)) / 2` over the generators.
pub fn pairing_matrix(
    curve: &CurveQ,
    basis: &MWBasis,
    ctx: &PrecisionContext,
) -> Result<HeightPairing> {
    let r = basis.rank();
    let gens = &basis.generators;
    let heights: Vec<f64> = gens
        .iter()
        .map(|g| canonical_height(curve, g, ctx))
        .collect::<Result<_>>()?;
    let mut m = vec![vec![0.0f64; r]; r];
    for i in 0..r {
        m[i][i] = heights[i];
        for j in 0..i {
            let s = curve.add(&gens[i], &gens[j])?;
            let hs = canonical_height(curve, &s, ctx)?;
            let v = (hs - heights[i] - heights[j]) / 2.0;
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    let bits = ctx.bits();
    let matrix = SymMatrix::from_fn(r, |i, j| Real::from_f64(m[i][j], bits));
    let rho = min_eigenvalue(&matrix, ctx)?;
    if !rho.is_negative() && !rho.is_zero() {
        Ok(HeightPairing {
            matrix,
            heights,
            rho,
            gamma: None,
        })
    } else {
        Err(Error::Rank(format!(
            "height pairing is not positive definite (least eigenvalue {})",
            rho.to_sci(8)
        )))
    }
}

/// `U^T M U` for an integer change of basis.
pub fn congruent(m: &[Vec<f64>], u: &[Vec<i64>]) -> Vec<Vec<f64>> {
    let r = m.len();
    let mut out = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = 0.0;
            for k in 0..r {
                for l in 0..r {
                    s += u[k][i] as f64 * m[k][l] * u[l][j] as f64;
                }
            }
            out[i][j] = s;
        }
    }
    out
}

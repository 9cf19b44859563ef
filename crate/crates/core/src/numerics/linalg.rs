//! Small dense symmetric eigenvalue problems and exact rational matrix helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{PrecisionContext, Real};
use crate::error::{Error, Result};

/// Field operations shared by `f64` and [`Real`] so Jacobi runs on either.
pub trait Scalar: Clone {
    fn zero_like(&self) -> Self;
    fn from_f64_like(&self, v: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn lt(&self, o: &Self) -> bool;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
}

impl Scalar for f64 {
    fn zero_like(&self) -> f64 {
        0.0
    }
    fn from_f64_like(&self, v: f64) -> f64 {
        v
    }
    fn add(&self, o: &f64) -> f64 {
        self + o
    }
    fn sub(&self, o: &f64) -> f64 {
        self - o
    }
    fn mul(&self, o: &f64) -> f64 {
        self * o
    }
    fn div(&self, o: &f64) -> f64 {
        self / o
    }
    fn sqrt(&self) -> f64 {
        f64::sqrt(*self)
    }
    fn abs(&self) -> f64 {
        f64::abs(*self)
    }
    fn lt(&self, o: &f64) -> bool {
        self < o
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

impl Scalar for Real {
    fn zero_like(&self) -> Real {
        Real::zero(self.prec())
    }
    fn from_f64_like(&self, v: f64) -> Real {
        Real::from_f64(v, self.prec())
    }
    fn add(&self, o: &Real) -> Real {
        self + o
    }
    fn sub(&self, o: &Real) -> Real {
        self - o
    }
    fn mul(&self, o: &Real) -> Real {
        self * o
    }
    fn div(&self, o: &Real) -> Real {
        self / o
    }
    fn sqrt(&self) -> Real {
        Real::sqrt(self)
    }
    fn abs(&self) -> Real {
        Real::abs(self)
    }
    fn lt(&self, o: &Real) -> bool {
        self < o
    }
    fn is_zero(&self) -> bool {
        Real::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Real::is_negative(self)
    }
}

/// Symmetric matrix stored densely in row-major order.
#[derive(Clone, Debug)]
pub struct SymMatrix<T = Real> {
    n: usize,
    a: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    /// Builds from rows; rejects non-square or asymmetric input.
    pub fn from_rows(rows: Vec<Vec<T>>, tol: &T) -> Result<SymMatrix<T>> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Contract("matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if tol.lt(&rows[i][j].sub(&rows[j][i]).abs()) {
                    return Err(Error::Contract(format!(
                        "matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(SymMatrix {
            n,
            a: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from the lower triangle produced by `f(i, j)` with `j <= i`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> SymMatrix<T> {
        let mut a: Vec<Option<T>> = vec![None; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                a[j * n + i] = Some(v.clone());
                a[i * n + j] = Some(v);
            }
        }
        SymMatrix {
            n,
            a: a.into_iter().map(Option::unwrap).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.n)
            .map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Every eigenvalue by cyclic Jacobi rotations, ascending.
    pub fn eigenvalues(&self, tol: &T) -> Result<Vec<T>> {
        let n = self.n;
        let mut a = self.a.clone();
        let idx = |i: usize, j: usize| i * n + j;
        for _sweep in 0..100 {
            let mut off = tol.zero_like();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        off = off.add(&a[idx(i, j)].mul(&a[idx(i, j)]));
                    }
                }
            }
            if off.lt(&tol.mul(tol)) || off.is_zero() {
                let mut ev: Vec<T> = (0..n).map(|i| a[idx(i, i)].clone()).collect();
                ev.sort_by(|x, y| {
                    if x.lt(y) {
                        std::cmp::Ordering::Less
                    } else if y.lt(x) {
                        std::cmp::Ordering::Greater
                    } else {
                        std::cmp::Ordering::Equal
                    }
                });
                return Ok(ev);
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[idx(p, q)].clone();
                    if apq.is_zero() {
                        continue;
                    }
                    let two = apq.from_f64_like(2.0);
                    let one = apq.from_f64_like(1.0);
                    let theta = a[idx(q, q)].sub(&a[idx(p, p)]).div(&two.mul(&apq));
                    let t = one.div(&theta.abs().add(&theta.mul(&theta).add(&one).sqrt()));
                    let t = if theta.is_negative() {
                        t.zero_like().sub(&t)
                    } else {
                        t
                    };
                    let c = one.div(&t.mul(&t).add(&one).sqrt());
                    let s = t.mul(&c);
                    for k in 0..n {
                        let akp = a[idx(k, p)].clone();
                        let akq = a[idx(k, q)].clone();
                        a[idx(k, p)] = c.mul(&akp).sub(&s.mul(&akq));
                        a[idx(k, q)] = s.mul(&akp).add(&c.mul(&akq));
                    }
                    for k in 0..n {
                        let apk = a[idx(p, k)].clone();
                        let aqk = a[idx(q, k)].clone();
                        a[idx(p, k)] = c.mul(&apk).sub(&s.mul(&aqk));
                        a[idx(q, k)] = s.mul(&apk).add(&c.mul(&aqk));
                    }
                }
            }
        }
        Err(Error::Precision("Jacobi iteration did not converge".into()))
    }
}

/// Least eigenvalue of a symmetric matrix of reals.
pub fn min_eigenvalue(h: &SymMatrix<Real>, ctx: &PrecisionContext) -> Result<Real> {
    let bits = ctx.bits();
    let scale =
        h.a.iter()
            .map(|x| x.abs())
            .fold(Real::zero(bits), |m, x| Real::max(&m, &x));
    let tol = (&ctx.epsilon() * &Real::max(&scale, &Real::one(bits))).with_prec(bits);
    let ev = h.eigenvalues(&tol)?;
    Ok(ev[0].clone())
}

/// Least eigenvalue in double precision, for screening.
pub fn min_eigenvalue_f64(rows: &[Vec<f64>]) -> f64 {
    let m = SymMatrix::from_fn(rows.len(), |i, j| 0.5 * (rows[i][j] + rows[j][i]));
    m.eigenvalues(&1e-15).map(|e| e[0]).unwrap_or(f64::NAN)
}

/// Inverse of a small double-precision matrix by Gauss-Jordan with pivoting.
pub fn inverse_f64(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for c in 0..n {
        let piv = (c..n).max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())?;
        if a[piv][c].abs() < 1e-300 {
            return None;
        }
        a.swap(c, piv);
        inv.swap(c, piv);
        let d = a[c][c];
        for j in 0..n {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for i in 0..n {
            if i != c {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] -= f * a[c][j];
                    inv[i][j] -= f * inv[c][j];
                }
            }
        }
    }
    Some(inv)
}

/// Exact inverse of a rational matrix; `None` when singular.
pub fn inverse_rational(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, piv);
        inv.swap(c, piv);
        let d = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &d;
            inv[c][j] = &inv[c][j] / &d;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                    let t = &f * &inv[c][j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Integer inverse of a unimodular matrix.
pub fn inverse_unimodular(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let q: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect()
        })
        .collect();
    let inv = inverse_rational(&q)?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| {
                    if v.is_integer() && v.abs() < BigRational::from_integer(BigInt::from(i64::MAX))
                    {
                        num_traits::ToPrimitive::to_i64(&v.to_integer())
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_closed_form() {
        let ctx = PrecisionContext::default();
        let b = ctx.bits();
        let r = |v: i64| Real::from_i64(v, b);
        let h =
            SymMatrix::from_rows(vec![vec![r(2), r(1)], vec![r(1), r(2)]], &ctx.epsilon()).unwrap();
        let ev = h.eigenvalues(&ctx.epsilon()).unwrap();
        assert!((ev[0].to_f64() - 1.0).abs() < 1e-50);
        assert!((ev[1].to_f64() - 3.0).abs() < 1e-50);
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        assert!(SymMatrix::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]], &1e-12).is_err());
    }

    #[test]
    fn bareiss_determinant() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        assert_eq!(det_int(&m), BigInt::from(4));
        let u = vec![vec![1, 2], vec![1, 3]];
        assert_eq!(
            inverse_unimodular(&u).unwrap(),
            vec![vec![3, -2], vec![-1, 1]]
        );
    }
}

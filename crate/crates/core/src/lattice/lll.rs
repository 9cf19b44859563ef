//! Integral LLL with exact Gram-Schmidt data (no floating point anywhere).
//!
//! Basis vectors are the rows of the input matrix. `d[i]` is the Gram
//! determinant of the first `i` rows and `lambda[k][j] = d[j+1] mu[k][j]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced basis and the unimodular `t` with `reduced = t * input`.
#[derive(Clone, Debug)]
pub struct LllResult {
    pub basis: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: &mut [BigInt], q: &BigInt, b: &[BigInt]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

/// Nearest integer to `a / b` for `b > 0`, halves rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

struct State {
    b: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        let two_lam = self.lam[k][l].abs() * 2;
        if two_lam <= self.d[l + 1] {
            return;
        }
        let q = round_div(&self.lam[k][l], &self.d[l + 1]);
        let (bl, hl) = (self.b[l].clone(), self.h[l].clone());
        axpy(&mut self.b[k], &q, &bl);
        axpy(&mut self.h[k], &q, &hl);
        let dl = self.d[l + 1].clone();
        self.lam[k][l] -= &q * dl;
        for i in 0..l {
            let li = self.lam[l][i].clone();
            self.lam[k][i] -= &q * li;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        self.h.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let big_b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k + 1] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k];
            self.lam[i][k - 1] = (&big_b * &t + &lam * &self.lam[i][k]) / &self.d[k + 1];
        }
        self.d[k] = big_b;
    }
}

/// LLL with `delta = 3/4` on the rows of `basis`.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Result<LllResult> {
    let n = basis.len();
    let id = |i: usize| {
        (0..n)
            .map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect::<Vec<_>>()
    };
    let mut s = State {
        b: basis.to_vec(),
        h: (0..n).map(id).collect(),
        d: vec![BigInt::zero(); n + 1],
        lam: vec![vec![BigInt::zero(); n]; n],
    };
    if n == 0 {
        return Ok(LllResult {
            basis: s.b,
            transform: s.h,
        });
    }
    s.d[0] = BigInt::one();
    s.d[1] = dot(&s.b[0], &s.b[0]);
    if s.d[1].is_zero() {
        return Err(Error::Rank("zero basis vector".into()));
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&s.b[k], &s.b[j]);
                for i in 0..j {
                    u = (&s.d[i + 1] * u - &s.lam[k][i] * &s.lam[j][i]) / &s.d[i];
                }
                if j < k {
                    s.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::Rank("basis vectors are linearly dependent".into()));
                    }
                    s.d[k + 1] = u;
                }
            }
        }
        loop {
            s.red(k, k - 1);
            // Lovasz: d_k d_{k-2} < (3/4) d_{k-1}^2 - lam^2, in 1-based Gram indices
            let lhs = &s.d[k + 1] * &s.d[k - 1] * 4;
            let rhs = &s.d[k] * &s.d[k] * 3 - &s.lam[k][k - 1] * &s.lam[k][k - 1] * 4;
            if lhs < rhs {
                s.swap(k, kmax);
                if k > 1 {
                    k -= 1;
                }
            } else {
                break;
            }
        }
        for l in (0..k - 1).rev() {
            s.red(k, l);
        }
        k += 1;
    }
    Ok(LllResult {
        basis: s.b,
        transform: s.h,
    })
}

/// Checks size reduction and the Lovasz condition exactly with rationals.
pub fn is_lll_reduced(basis: &[Vec<BigInt>]) -> bool {
    use num_rational::BigRational as R;
    let n = basis.len();
    let mut bstar: Vec<Vec<R>> = Vec::new();
    let mut norms: Vec<R> = Vec::new();
    let mut mu = vec![vec![R::zero(); n]; n];
    for i in 0..n {
        let bi: Vec<R> = basis[i]
            .iter()
            .map(|x| R::from_integer(x.clone()))
            .collect();
        let mut v = bi.clone();
        for j in 0..i {
            let m = bi.iter().zip(&bstar[j]).map(|(a, b)| a * b).sum::<R>() / &norms[j];
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        let nv: R = v.iter().map(|x| x * x).sum();
        if nv.is_zero() {
            return false;
        }
        norms.push(nv);
        bstar.push(v);
    }
    let half = R::new(1.into(), 2.into());
    let delta = R::new(3.into(), 4.into());
    for i in 0..n {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return false;
            }
        }
        if i > 0 && norms[i] < (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * &norms[i - 1] {
            return false;
        }
    }
    true
}

pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| row.iter().zip(b).map(|(x, bj)| x * &bj[j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::det_int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn identity_is_fixed() {
        let i = m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(lll_reduce(&i).unwrap().basis, i);
    }

    #[test]
    fn textbook_example() {
        let b = m(&[&[1, 1, 1], &[-1, 0, 2], &[3, 5, 6]]);
        let r = lll_reduce(&b).unwrap();
        assert!(is_lll_reduced(&r.basis));
        assert_eq!(mat_mul(&r.transform, &b), r.basis);
        assert_eq!(det_int(&r.transform).abs(), BigInt::one());
        assert_eq!(r.basis[0], m(&[&[0, 1, 0]])[0]);
    }

    #[test]
    fn dependent_rows_fail() {
        let b = m(&[&[1, 2], &[2, 4]]);
        assert!(matches!(lll_reduce(&b), Err(Error::Rank(_))));
    }
}

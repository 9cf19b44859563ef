//! Bounded search for a unimodular change of basis that enlarges the least
//! eigenvalue of the height-pairing matrix.
//!
//! With new generators `Q = P U` the pairing becomes `U^T H U`, whose inverse is
//! `W H^-1 W^T` for `W = U^-1`. Maximising the least eigenvalue is the same as
//! minimising the largest eigenvalue of `W H^-1 W^T`, and every row `w` of a
//! useful `W` has `w^T H^-1 w` below the current bound. So the search lists the
//! short integer rows (entries at most `radius`) and assembles determinant-one
//! matrices from them by branch and bound. Eigenvalue interlacing makes the
//! largest eigenvalue of any partial selection a valid lower bound.

use num_bigint::BigInt;

use super::{pairing_matrix, CurveQ, MWBasis};
use crate::error::Result;
use crate::numerics::linalg::{det_int, inverse_f64, inverse_unimodular, SymMatrix};
use crate::numerics::PrecisionContext;

fn quad(m: &[Vec<f64>], a: &[i64], b: &[i64]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        if a[i] == 0 {
            continue;
        }
        for j in 0..b.len() {
            s += a[i] as f64 * m[i][j] * b[j] as f64;
        }
    }
    s
}

fn max_eig(g: &[Vec<f64>]) -> f64 {
    let n = g.len();
    if n == 1 {
        return g[0][0];
    }
    let m = SymMatrix::from_fn(n, |i, j| g[i][j]);
    m.eigenvalues(&1e-14)
        .map(|e| e[n - 1])
        .unwrap_or(f64::INFINITY)
}

struct Search<'a> {
    hinv: &'a [Vec<f64>],
    cands: Vec<(f64, Vec<i64>)>,
    r: usize,
    best: f64,
    best_rows: Option<Vec<Vec<i64>>>,
}

impl Search<'_> {
    fn run(&mut self, start: usize, chosen: &mut Vec<usize>, ortho: &mut Vec<Vec<f64>>) {
        if chosen.len() == self.r {
            let rows: Vec<Vec<i64>> = chosen.iter().map(|&i| self.cands[i].1.clone()).collect();
            let big: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let d = det_int(&big);
            if d != BigInt::from(1) && d != BigInt::from(-1) {
                return;
            }
            let g = gram(self.hinv, &rows);
            let l = max_eig(&g);
            if l < self.best * (1.0 - 1e-12) {
                self.best = l;
                self.best_rows = Some(rows);
            }
            return;
        }
        for i in start..self.cands.len() {
            if self.cands[i].0 >= self.best {
                break;
            }
            if self.cands.len() - i < self.r - chosen.len() {
                break;
            }
            // independence via Gram-Schmidt in the Euclidean metric
            let v: Vec<f64> = self.cands[i].1.iter().map(|&x| x as f64).collect();
            let mut res = v.clone();
            for o in ortho.iter() {
                let num: f64 = res.iter().zip(o).map(|(a, b)| a * b).sum();
                let den: f64 = o.iter().map(|b| b * b).sum();
                for (r, b) in res.iter_mut().zip(o) {
                    *r -= num / den * b;
                }
            }
            if res.iter().map(|x| x * x).sum::<f64>() < 1e-9 {
                continue;
            }
            chosen.push(i);
            let rows: Vec<Vec<i64>> = chosen.iter().map(|&k| self.cands[k].1.clone()).collect();
            if max_eig(&gram(self.hinv, &rows)) < self.best {
                ortho.push(res);
                self.run(i + 1, chosen, ortho);
                ortho.pop();
            }
            chosen.pop();
        }
    }
}

fn gram(hinv: &[Vec<f64>], rows: &[Vec<i64>]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|a| rows.iter().map(|b| quad(hinv, a, b)).collect())
        .collect()
}

fn short_rows(hinv: &[Vec<f64>], r: usize, radius: i64, limit: f64) -> Vec<(f64, Vec<i64>)> {
    let mut out = Vec::new();
    let mut w = vec![-radius; r];
    loop {
        // canonical sign: first nonzero entry positive
        if let Some(f) = w.iter().find(|&&x| x != 0) {
            if *f > 0 {
                let n = quad(hinv, &w, &w);
                if n < limit {
                    out.push((n, w.clone()));
                }
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then_with(|| a.1.cmp(&b.1)));
                return out;
            }
            if w[k] < radius {
                w[k] += 1;
                break;
            }
            w[k] = -radius;
            k += 1;
        }
    }
}

/// Searches unimodular `W` with entries in `[-radius, radius]`; returns the
/// change of basis `U` (new generator `j` is `sum_i U[i][j] P_i`) when it
/// strictly improves the least eigenvalue.
pub fn improving_transform(h: &[Vec<f64>], radius: u32) -> Option<Vec<Vec<i64>>> {
    let r = h.len();
    let hinv = inverse_f64(h)?;
    let current = max_eig(&hinv);
    let cands = short_rows(&hinv, r, radius as i64, current);
    let mut s = Search {
        hinv: &hinv,
        cands,
        r,
        best: current,
        best_rows: None,
    };
    s.run(0, &mut Vec::new(), &mut Vec::new());
    let w = s.best_rows?;
    inverse_unimodular(&w)
}

/// Basis related to `basis` by a bounded unimodular change whose least
/// pairing eigenvalue is maximal among those searched; never worse than the input.
pub fn improve_basis(
    curve: &CurveQ,
    basis: &MWBasis,
    ctx: &PrecisionContext,
    search_radius: u32,
) -> Result<MWBasis> {
    let hp = pairing_matrix(curve, basis, ctx)?;
    let u = match improving_transform(&hp.rows_f64(), search_radius) {
        Some(u) => u,
        None => return Ok(basis.clone()),
    };
    let r = basis.rank();
    let mut gens = Vec::with_capacity(r);
    for j in 0..r {
        let col: Vec<i64> = (0..r).map(|i| u[i][j]).collect();
        gens.push(curve.multi_scalar(basis, &col, &super::PointQ::Infinity)?);
    }
    let out = MWBasis {
        generators: gens,
        torsion_order: basis.torsion_order,
        torsion_points: basis.torsion_points.clone(),
    };
    let new = pairing_matrix(curve, &out, ctx)?;
    if new.rho < hp.rho {
        return Ok(basis.clone());
    }
    Ok(out)
}

//! Direct scans over `|u| <= bound`, by two unrelated routes.

use num_integer::Roots;

use crate::models::Family;

/// `15u^3 - 15u - 90d`, the value of `v(v-1)(v-3)` on the cubic model.
fn cubic_rhs(d: i64, u: i64) -> i128 {
    let u = u as i128;
    15 * u * u * u - 15 * u - 90 * d as i128
}

fn h(v: i128) -> i128 {
    v * (v - 1) * (v - 3)
}

fn quartic_value(u: i64) -> i128 {
    let u = u as i128;
    (((35 * u - 350) * u + 945) * u - 630) * u + 99225
}

/// Real root of `v^3 - 4v^2 + 3v = k` on the outer monotone branch.
fn outer_root(k: f64) -> f64 {
    let mut v = k.cbrt() + 4.0 / 3.0;
    for _ in 0..60 {
        let f = v * (v - 1.0) * (v - 3.0) - k;
        let df = 3.0 * v * v - 8.0 * v + 3.0;
        if df == 0.0 {
            break;
        }
        let nv = v - f / df;
        if (nv - v).abs() < 1e-9 {
            return nv;
        }
        v = nv;
    }
    v
}

/// Integer points with `|u| <= u_bound`: the cubic by rounding the real
/// roots in `v`, the quartic by an integer square root.
pub fn small_u_scan(family: &Family, u_bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for u in -u_bound..=u_bound {
        match family {
            Family::Cubic(c) => {
                let k = cubic_rhs(c.d, u);
                let r = outer_root(k as f64).round() as i128;
                let mut cand: Vec<i128> = (-1..=4).chain(r - 2..=r + 2).collect();
                cand.sort_unstable();
                cand.dedup();
                out.extend(
                    cand.into_iter()
                        .filter(|&v| h(v) == k)
                        .map(|v| (u, v as i64)),
                );
            }
            Family::Quartic(_) => {
                let q = quartic_value(u);
                if q < 0 {
                    continue;
                }
                let s = (q as u128).sqrt() as i128;
                if s * s == q {
                    out.push((u, s as i64));
                    if s != 0 {
                        out.push((u, -s as i64));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn divisors(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut i = 1u128;
    while i * i <= n {
        if n.is_multiple_of(i) {
            out.push(i);
            if i * i != n {
                out.push(n / i);
            }
        }
        i += 1;
    }
    out
}

/// Same set as [`small_u_scan`] by a different path: every integral `v` on
/// the cubic divides `15u^3 - 15u - 90d`; the quartic uses a rounded float root.
pub fn brute_oracle(family: &Family, u_bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for u in -u_bound..=u_bound {
        match family {
            Family::Cubic(c) => {
                let k = cubic_rhs(c.d, u);
                let cand: Vec<i128> = if k == 0 {
                    vec![0, 1, 3]
                } else {
                    divisors(k.unsigned_abs())
                        .into_iter()
                        .flat_map(|d| [d as i128, -(d as i128)])
                        .collect()
                };
                for v in cand {
                    if h(v) == k {
                        out.push((u, v as i64));
                    }
                }
            }
            Family::Quartic(_) => {
                let q = quartic_value(u);
                if q < 0 {
                    continue;
                }
                let r = (q as f64).sqrt().round() as i128;
                for s in r - 1..=r + 1 {
                    if s >= 0 && s * s == q {
                        out.push((u, s as i64));
                        if s != 0 {
                            out.push((u, -s as i64));
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_small_points() {
        let f = Family::cubic(-2).unwrap();
        assert_eq!(
            small_u_scan(&f, 5),
            vec![(-2, 0), (-2, 1), (-2, 3), (-1, 6), (0, 6), (1, 6)]
        );
        assert!(brute_oracle(&f, 200).contains(&(-138, -339)));
    }

    #[test]
    fn single_column() {
        let q = Family::quartic();
        assert_eq!(small_u_scan(&q, 0), vec![(0, -315), (0, 315)]);
    }
}

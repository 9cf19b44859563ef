//! From integral `(u, v)` back to the binomial variables, and the
//! near-collision verdicts.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use super::Family;

fn isqrt_exact(d: i128) -> Option<i128> {
    if d < 0 {
        return None;
    }
    let s = (d as u128).sqrt() as i128;
    (s * s == d).then_some(s)
}

/// All natural `(m, n)` attached to an integral solution `(u, v)`.
///
/// Cubic: `u = n - 1`, `v = (m-2)(m-3)/2`. Quartic: `v = 210 m - 105`,
/// `2u = n^2 - 7n + 12`.
pub fn recover_collision_vars(family: &Family, u: i64, v: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    match family {
        Family::Cubic(_) => {
            let n = u + 1;
            if n < 0 {
                return out;
            }
            // m^2 - 5m + 6 - 2v = 0
            if let Some(s) = isqrt_exact(1 + 8 * v as i128) {
                for m in [(5 + s) / 2, (5 - s) / 2] {
                    if (5 + s) % 2 == 0 && m >= 0 && !out.contains(&(m as i64, n)) {
                        out.push((m as i64, n));
                    }
                }
            }
        }
        Family::Quartic(_) => {
            if (v as i128 + 105) % 210 != 0 {
                return out;
            }
            let m = (v as i128 + 105) / 210;
            if m < 0 {
                return out;
            }
            // n^2 - 7n + 12 - 2u = 0
            if let Some(s) = isqrt_exact(1 + 8 * u as i128) {
                for n in [(7 + s) / 2, (7 - s) / 2] {
                    if (7 + s) % 2 == 0 && n >= 0 && !out.contains(&(m as i64, n as i64)) {
                        out.push((m as i64, n as i64));
                    }
                }
            }
        }
    }
    out
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Outcome of checking a solution set against the near-collision definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollisionVerdict {
    NoNearCollision,
    Found(Vec<(i64, i64)>),
}

/// `C(big, l) - C(small, k) = diff` with `2 <= k <= small/2`,
/// `2 <= l <= big/2` and `C(big, l) >= diff^3`.
fn is_near_collision(small: i64, k: i64, big: i64, l: i64, diff: i64) -> bool {
    if diff <= 0 || k < 2 || l < 2 || 2 * k > small || 2 * l > big {
        return false;
    }
    let cl = binomial(big, l);
    cl.clone() - binomial(small, k) == BigInt::from(diff) && cl >= BigInt::from(diff).pow(3)
}

/// Checks every `(m, n)` against the near collision the family encodes.
///
/// Cubic: `C(n, 3) - C(m, 6) = d`; the larger coefficient is `C(m, 6)` when
/// `d < 0` and `C(n, 3)` otherwise. Quartic: `C(m, 2) - C(n, 8) = 1`.
pub fn near_collision_verdict(family: &Family, pairs: &[(i64, i64)]) -> CollisionVerdict {
    let found: Vec<(i64, i64)> = pairs
        .iter()
        .copied()
        .filter(|&(m, n)| match family {
            Family::Cubic(c) if c.d < 0 => is_near_collision(n, 3, m, 6, -c.d),
            Family::Cubic(c) => is_near_collision(m, 6, n, 3, c.d),
            Family::Quartic(_) => is_near_collision(n, 8, m, 2, 1),
        })
        .collect();
    if found.is_empty() {
        CollisionVerdict::NoNearCollision
    } else {
        CollisionVerdict::Found(found)
    }
}

/// The weaker check used in the text for the quartic: is any pair in the
/// range `m >= 4, n >= 16` at all?
pub fn in_quartic_collision_range(pairs: &[(i64, i64)]) -> bool {
    pairs.iter().any(|&(m, n)| m >= 4 && n >= 16)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_pairs() {
        let q = Family::quartic();
        assert_eq!(recover_collision_vars(&q, 15, 945), vec![(5, 9)]);
        assert_eq!(recover_collision_vars(&q, 36, 6615), vec![(32, 12)]);
        let mut p = recover_collision_vars(&q, 1, 315);
        p.sort();
        assert_eq!(p, vec![(2, 2), (2, 5)]);
        assert!(recover_collision_vars(&q, 111, 69615).is_empty());
        assert!(recover_collision_vars(&q, 1, -315).is_empty());
    }

    #[test]
    fn cubic_pairs() {
        let c = Family::cubic(-2).unwrap();
        // v = 6 -> (m-2)(m-3) = 12 -> m in {6, -1}
        assert_eq!(recover_collision_vars(&c, 1, 6), vec![(6, 2)]);
        assert!(recover_collision_vars(&c, -138, -339).is_empty());
    }

    #[test]
    fn genuine_near_collision_is_detected() {
        // C(10,3) = 120, C(16,2) = 120; difference 0 is not a near collision
        assert!(!is_near_collision(10, 3, 16, 2, 0));
        // C(7,2) - C(6,3) = 21 - 20 = 1
        assert!(is_near_collision(6, 3, 7, 2, 1));
    }
}

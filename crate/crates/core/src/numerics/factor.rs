//! Integer factorisation for the moderately sized discriminants met here.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SMALL: u32 = 10_000;

fn is_probable_prime(n: &BigUint) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    // these bases are deterministic below 3.3e24 and a strong test above it
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut qprod = BigUint::one();
    let m = 64;
    loop {
        let x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r {
            let ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                qprod = qprod * diff % n;
            }
            let g = qprod.gcd(n);
            if !g.is_one() {
                if &g == n {
                    // back up and go one step at a time
                    let mut ys = ys;
                    loop {
                        ys = f(&ys);
                        let diff = if x > ys { &x - &ys } else { &ys - &x };
                        let g = diff.gcd(n);
                        if !g.is_one() {
                            return if &g == n { None } else { Some(g) };
                        }
                    }
                }
                return Some(g);
            }
            k += m;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
}

fn split(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    for c in 1..50u64 {
        if let Some(d) = pollard_brent(&n, c) {
            let e = &n / &d;
            split(d, out);
            split(e, out);
            return;
        }
    }
    panic!("could not factor {n}");
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: &BigUint) -> Vec<BigUint> {
    let mut n = n.clone();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u32;
    while p < SMALL {
        if (&n % p).is_zero() {
            out.push(BigUint::from(p));
            while (&n % p).is_zero() {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut big = Vec::new();
    split(n, &mut big);
    big.sort();
    big.dedup();
    out.extend(big);
    out
}

/// Exponent of the prime `p` in `n` (`n` nonzero).
pub fn valuation(n: &BigUint, p: &BigUint) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

pub fn to_u64(n: &BigUint) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_a_semiprime_beyond_trial_division() {
        let n =
            BigUint::from(1_000_000_007u64) * BigUint::from(998_244_353u64) * BigUint::from(12u32);
        let ps: Vec<u64> = prime_divisors(&n)
            .iter()
            .map(|p| p.to_u64().unwrap())
            .collect();
        assert_eq!(ps, vec![2, 3, 998_244_353, 1_000_000_007]);
    }

    #[test]
    fn valuation_counts_powers() {
        assert_eq!(valuation(&BigUint::from(96u32), &BigUint::from(2u32)), 5);
    }
}

//! Binary floating point of arbitrary precision, `man * 2^exp`, on top of `BigInt`.
//!
//! Every result is rounded to nearest (ties to even) at the larger of the
//! operand precisions. Only the operations the elliptic-curve code needs are
//! provided: field arithmetic, square roots, pi, arctangent and a couple of
//! conversions.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub struct Real {
    man: BigInt,
    exp: i64,
    prec: u32,
}

/// Nearest integer to `m / 2^s`, ties to even.
fn round_shift(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    let neg = m.is_negative();
    let mag = m.magnitude();
    let q = mag >> s;
    let rem_bit = mag.bit(s - 1);
    let mut q = q;
    if rem_bit {
        let low_mask_nonzero = mag.trailing_zeros().is_some_and(|tz| tz < s - 1);
        if low_mask_nonzero || q.bit(0) {
            q += 1u32;
        }
    }
    let r = BigInt::from_biguint(Sign::Plus, q);
    if neg {
        -r
    } else {
        r
    }
}

fn pow2_f64(e: i64) -> f64 {
    let mut f = 1.0f64;
    let mut e = e;
    while e > 1000 {
        f *= 2f64.powi(1000);
        e -= 1000;
        if f.is_infinite() {
            return f;
        }
    }
    while e < -1000 {
        f *= 2f64.powi(-1000);
        e += 1000;
        if f == 0.0 {
            return f;
        }
    }
    f * 2f64.powi(e as i32)
}

impl Real {
    fn make(man: BigInt, exp: i64, prec: u32) -> Real {
        if man.is_zero() {
            return Real { man, exp: 0, prec };
        }
        let bits = man.bits();
        if bits > prec as u64 {
            let s = bits - prec as u64;
            let m = round_shift(&man, s);
            // rounding up may carry into one more bit
            if m.bits() > prec as u64 {
                return Real {
                    man: round_shift(&m, 1),
                    exp: exp + s as i64 + 1,
                    prec,
                };
            }
            Real {
                man: m,
                exp: exp + s as i64,
                prec,
            }
        } else {
            Real { man, exp, prec }
        }
    }

    pub fn zero(prec: u32) -> Real {
        Real {
            man: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Real {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Real {
        Real::make(BigInt::from(v), 0, prec)
    }

    pub fn from_int(v: &BigInt, prec: u32) -> Real {
        Real::make(v.clone(), 0, prec)
    }

    pub fn from_ratio(q: &BigRational, prec: u32) -> Real {
        let n = Real::from_int(q.numer(), prec + 8);
        let d = Real::from_int(q.denom(), prec + 8);
        (&n / &d).with_prec(prec)
    }

    pub fn from_f64(v: f64, prec: u32) -> Real {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Real::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i64;
        let (m, ex) = if e == 0 {
            (frac, -1074)
        } else {
            (frac | (1i64 << 52), e - 1075)
        };
        Real::make(BigInt::from(sign * m), ex, prec)
    }

    /// Parses `"-1.2345e-7"`-style decimal strings exactly before rounding.
    pub fn parse_decimal(s: &str, prec: u32) -> Option<Real> {
        parse_decimal_ratio(s).map(|q| Real::from_ratio(&q, prec))
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Real {
        Real::make(self.man.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn abs(&self) -> Real {
        Real {
            man: self.man.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Real {
        if self.is_zero() {
            return self.clone();
        }
        Real {
            man: self.man.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    /// Position of the leading bit: `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn magnitude_bits(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.man.bits() as i64)
        }
    }

    pub fn sqrt(&self) -> Real {
        assert!(!self.is_negative(), "square root of a negative number");
        if self.is_zero() {
            return self.clone();
        }
        let p = self.prec as i64;
        let bits = self.man.bits() as i64;
        let mut s = (2 * p + 4 - bits).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m: BigInt = &self.man << (s as usize);
        let r = m.sqrt();
        Real::make(r, (self.exp - s) / 2, self.prec)
    }

    pub fn square(&self) -> Real {
        self * self
    }

    pub fn recip(&self) -> Real {
        &Real::one(self.prec) / self
    }

    /// Nearest integer, ties to even.
    pub fn round(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << (self.exp as usize)
        } else {
            round_shift(&self.man, (-self.exp) as u64)
        }
    }

    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << (self.exp as usize)
        } else {
            let d = BigInt::one() << ((-self.exp) as usize);
            self.man.div_floor(&d)
        }
    }

    /// Exact rational value.
    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << (self.exp as usize))
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << ((-self.exp) as usize))
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits();
        let (m, e) = if bits > 64 {
            let s = bits - 64;
            (round_shift(&self.man, s), self.exp + s as i64)
        } else {
            (self.man.clone(), self.exp)
        };
        m.to_f64().unwrap_or(f64::NAN) * pow2_f64(e)
    }

    /// Natural logarithm of `|x|` to double precision, valid for any exponent.
    pub fn ln_abs_f64(&self) -> f64 {
        assert!(!self.is_zero(), "log of zero");
        let bits = self.man.bits();
        let s = bits.saturating_sub(60);
        let top = (self.man.magnitude() >> s).to_f64().unwrap();
        top.ln() + (self.exp + s as i64) as f64 * std::f64::consts::LN_2
    }

    /// `log10 |x|` to double precision.
    pub fn log10_abs_f64(&self) -> f64 {
        self.ln_abs_f64() / std::f64::consts::LN_10
    }

    pub fn pi(prec: u32) -> Real {
        thread_local! {
            static CACHE: RefCell<Option<Real>> = const { RefCell::new(None) };
        }
        CACHE.with(|c| {
            if let Some(v) = c.borrow().as_ref() {
                if v.prec >= prec {
                    return v.with_prec(prec);
                }
            }
            let v = machin_pi(prec + 16);
            let out = v.with_prec(prec);
            *c.borrow_mut() = Some(v);
            out
        })
    }

    /// Arctangent in `(-pi/2, pi/2)`.
    pub fn atan(&self) -> Real {
        let p = self.prec;
        if self.is_zero() {
            return self.clone();
        }
        let wp = p + 24;
        let x = self.with_prec(wp);
        let one = Real::one(wp);
        if x.abs() > one {
            let half_pi = Real::pi(wp).mul_pow2(-1);
            let r = x.recip().atan();
            let v = if x.is_negative() {
                -&half_pi - &r
            } else {
                &half_pi - &r
            };
            return v.with_prec(p);
        }
        // halve the argument k times: atan x = 2 atan(x / (1 + sqrt(1 + x^2)))
        let k = ((wp as f64).sqrt() / 2.0).ceil() as i64;
        let mut y = x;
        for _ in 0..k {
            let d = &one + &(&one + &y.square()).sqrt();
            y = &y / &d;
        }
        let y2 = y.square();
        let mut term = y.clone();
        let mut sum = y.clone();
        let mut n: i64 = 1;
        let floor = -(wp as i64) - 4;
        loop {
            term = -&(&term * &y2);
            let t = &term / &Real::from_i64(2 * n + 1, wp);
            match t.magnitude_bits() {
                Some(b) if b > floor => {}
                _ => break,
            }
            sum = &sum + &t;
            n += 1;
        }
        sum.mul_pow2(k).with_prec(p)
    }

    /// Arcsine for `|x| <= 1`.
    pub fn asin(&self) -> Real {
        let p = self.prec;
        let wp = p + 16;
        let x = self.with_prec(wp);
        let one = Real::one(wp);
        let c = &one - &x.square();
        assert!(!c.is_negative(), "asin argument outside [-1, 1]");
        if c.is_zero() {
            let h = Real::pi(wp).mul_pow2(-1);
            return if x.is_negative() { -h } else { h }.with_prec(p);
        }
        // asin x = 2 atan(x / (1 + sqrt(1 - x^2)))
        let t = &x / &(&one + &c.sqrt());
        t.atan().mul_pow2(1).with_prec(p)
    }

    pub fn max(a: &Real, b: &Real) -> Real {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Scientific notation with `digits` significant decimal digits.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = digits.max(1);
        let q = self.to_ratio();
        let neg = q.is_negative();
        let q = q.abs();
        let mut k = self.log10_abs_f64().floor() as i64;
        // scale to an integer with `digits` digits; fix up the f64 estimate of k
        let scaled = loop {
            let sh = digits as i64 - 1 - k;
            let ten = BigInt::from(10u32);
            let s = if sh >= 0 {
                &q * BigRational::from_integer(num_traits::pow(ten, sh as usize))
            } else {
                &q / BigRational::from_integer(num_traits::pow(ten, (-sh) as usize))
            };
            let n = s.round().to_integer();
            let len = n.to_string().len();
            if len > digits {
                k += 1;
            } else if len < digits {
                k -= 1;
            } else {
                break n;
            }
        };
        let s = scaled.to_string();
        let (h, t) = s.split_at(1);
        let sign = if neg { "-" } else { "" };
        if t.is_empty() {
            format!("{sign}{h}e{k}")
        } else {
            format!("{sign}{h}.{t}e{k}")
        }
    }

    /// Fixed notation with `decimals` digits after the point.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let q = self.to_ratio();
        let ten = BigInt::from(10u32);
        let scale = num_traits::pow(ten, decimals);
        let n = (q * BigRational::from_integer(scale.clone()))
            .round()
            .to_integer();
        let neg = n.is_negative();
        let digits = n.abs().to_string();
        let digits = if digits.len() <= decimals {
            format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (i, f) = digits.split_at(digits.len() - decimals);
        let sign = if neg { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{i}")
        } else {
            format!("{sign}{i}.{f}")
        }
    }
}

/// Exact rational value of a decimal literal such as `-1.342820e281`.
pub fn parse_decimal_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mant, ex) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().ok()? / 10;
    let e = ex - fp.len() as i64;
    let ten = BigInt::from(10u32);
    let mut q = if e >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

// pi = 16 atan(1/5) - 4 atan(1/239), in fixed point with `bits` fractional bits.
fn machin_pi(prec: u32) -> Real {
    let bits = prec as usize + 16;
    let atan_inv = |n: u32| -> BigInt {
        let one = BigInt::one() << bits;
        let n2 = BigInt::from(n * n);
        let mut power = one / n;
        let mut sum = power.clone();
        let mut k: u32 = 1;
        loop {
            power /= &n2;
            if power.is_zero() {
                break;
            }
            let t = &power / (2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    };
    let v = atan_inv(5) * 16 - atan_inv(239) * 4;
    Real::make(v, -(bits as i64), prec)
}

impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Real {
    fn cmp_exact(&self, other: &Real) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let e = self.exp.min(other.exp);
        let a: BigInt = &self.man << ((self.exp - e) as usize);
        let b: BigInt = &other.man << ((other.exp - e) as usize);
        a.cmp(&b)
    }

    fn add_impl(&self, other: &Real, negate_other: bool) -> Real {
        let p = self.prec.max(other.prec);
        let om = if negate_other {
            -&other.man
        } else {
            other.man.clone()
        };
        if other.is_zero() {
            return self.with_prec(p);
        }
        if self.is_zero() {
            return Real::make(om, other.exp, p);
        }
        let ta = self.exp + self.man.bits() as i64;
        let tb = other.exp + other.man.bits() as i64;
        // the smaller operand is far below the last place of the larger one
        if tb < ta - p as i64 - 4 && other.exp < self.exp {
            return Real::sticky(&self.man, self.exp, &om, p);
        }
        if ta < tb - p as i64 - 4 && self.exp < other.exp {
            return Real::sticky(&om, other.exp, &self.man, p);
        }
        let e = self.exp.min(other.exp);
        let a: BigInt = &self.man << ((self.exp - e) as usize);
        let b: BigInt = om << ((other.exp - e) as usize);
        Real::make(a + b, e, p)
    }

    // big + tiny where tiny sits entirely below the rounding position of big
    fn sticky(big: &BigInt, exp: i64, tiny: &BigInt, p: u32) -> Real {
        let sh = (p as i64 + 3 - big.bits() as i64).max(0);
        let m = (big << (sh as usize)) + tiny.signum();
        Real::make(m, exp - sh, p)
    }

    fn mul_impl(&self, other: &Real) -> Real {
        let p = self.prec.max(other.prec);
        Real::make(&self.man * &other.man, self.exp + other.exp, p)
    }

    fn div_impl(&self, other: &Real) -> Real {
        assert!(!other.is_zero(), "division by zero");
        let p = self.prec.max(other.prec);
        if self.is_zero() {
            return Real::zero(p);
        }
        let shift = (p as i64 + 4 + other.man.bits() as i64 - self.man.bits() as i64).max(0);
        let num: BigInt = &self.man << (shift as usize);
        let (q, r) = num.div_rem(&other.man);
        // sticky bit keeps round-to-nearest honest after truncation
        let q = if r.is_zero() {
            q << 1usize
        } else {
            (q << 1usize) + q_sign(&self.man, &other.man)
        };
        Real::make(q, self.exp - shift - other.exp - 1, p)
    }
}

fn q_sign(a: &BigInt, b: &BigInt) -> i32 {
    if a.is_negative() != b.is_negative() {
        -1
    } else {
        1
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                $body(self, o)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                $body(&self, &o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                $body(&self, o)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &Real, b: &Real| a.add_impl(b, false));
binop!(Sub, sub, |a: &Real, b: &Real| a.add_impl(b, true));
binop!(Mul, mul, |a: &Real, b: &Real| a.mul_impl(b));
binop!(Div, div, |a: &Real, b: &Real| a.div_impl(b));

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            man: -&self.man,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real {
            man: -self.man,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.to_sci(((self.prec as f64) * std::f64::consts::LOG10_2) as usize)
                .as_str()
        )
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_sci(d))
    }
}

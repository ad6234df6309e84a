//! Arbitrary-precision interval arithmetic over dyadic rationals.
//!
//! Every endpoint is an exact binary fraction `mant · 2^exp`. Operations are
//! carried out exactly and then rounded outward to the working precision of
//! the interval, so an `Interval` always contains the true real value it was
//! derived from.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{float::FloatCore, Signed, ToPrimitive, Zero};

/// Rounding direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// Exact binary fraction `mant · 2^exp`.
#[derive(Clone, Debug)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic { mant: BigInt::from(v), exp: 0 }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic { mant: v, exp: 0 }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        let (m, e, s) = FloatCore::integer_decode(x);
        let mant = BigInt::from(m) * BigInt::from(s);
        Dyadic { mant, exp: e as i64 }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Binary magnitude: `floor(log2 |x|)` for nonzero `x`.
    pub fn magnitude(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.bits() as i64 - 1)
        }
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, i64) {
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &other.mant << (other.exp - e) as usize;
        (a, b, e)
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, e) = self.aligned(other);
        Dyadic { mant: a + b, exp: e }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic { mant: &self.mant * &other.mant, exp: self.exp + other.exp }
    }

    pub fn mul_int(&self, k: &BigInt) -> Dyadic {
        Dyadic { mant: &self.mant * k, exp: self.exp }
    }

    /// Multiply by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// Round to at most `prec` mantissa bits in the given direction.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let mant = shr_round(&self.mant, shift, dir);
        Dyadic { mant, exp: self.exp + shift as i64 }
    }

    /// Quotient rounded to `prec` bits; `other` must be nonzero.
    pub fn div(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let k = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.mant << k as usize;
        let q = match dir {
            Round::Down => num.div_floor(&other.mant),
            Round::Up => -((-num).div_floor(&other.mant)),
        };
        Dyadic { mant: q, exp: self.exp - k - other.exp }.round(prec, dir)
    }

    /// Square root rounded to `prec` bits; `self` must be nonnegative.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mut k = (2 * prec as i64 + 4 - self.bits() as i64).max(0);
        if (self.exp - k).rem_euclid(2) != 0 {
            k += 1;
        }
        let n = &self.mant << k as usize;
        let mut s = n.sqrt();
        if dir == Round::Up && &s * &s < n {
            s += 1;
        }
        Dyadic { mant: s, exp: (self.exp - k) / 2 }.round(prec, dir)
    }

    /// Directed conversion to `f64`.
    pub fn to_f64(&self, dir: Round) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(53, dir);
        let m = r.mant.to_f64().expect("53-bit mantissa fits f64");
        let e = r.exp.clamp(-2000, 2000) as i32;
        let v = libm::ldexp(m, e);
        if v.is_infinite() {
            return match (v > 0.0, dir) {
                (true, Round::Down) => f64::MAX,
                (false, Round::Up) => f64::MIN,
                _ => v,
            };
        }
        // ldexp is exact outside the subnormal range; nudge outward there.
        if v == 0.0 || v.is_subnormal() {
            match dir {
                Round::Down => v.next_down(),
                Round::Up => v.next_up(),
            }
        } else {
            v
        }
    }

    /// Nearest-ish conversion, for diagnostics and approximate work.
    pub fn to_f64_approx(&self) -> f64 {
        let lo = self.to_f64(Round::Down);
        let hi = self.to_f64(Round::Up);
        if lo == hi {
            lo
        } else {
            lo + (hi - lo) / 2.0
        }
    }

    /// Floor as an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            shr_round(&self.mant, (-self.exp) as u64, Round::Down)
        }
    }

    /// Ceiling as an integer.
    pub fn ceil_int(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as usize
        } else {
            shr_round(&self.mant, (-self.exp) as u64, Round::Up)
        }
    }
}

fn shr_round(m: &BigInt, shift: u64, dir: Round) -> BigInt {
    match dir {
        // BigInt's `>>` rounds toward negative infinity.
        Round::Down => m >> shift as usize,
        Round::Up => -((-m) >> shift as usize),
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        // Same nonzero sign: compare magnitudes first to avoid huge shifts.
        let (ma, mb) = (self.magnitude().unwrap(), other.magnitude().unwrap());
        if ma != mb {
            return if sa > 0 { ma.cmp(&mb) } else { mb.cmp(&ma) };
        }
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64_approx())
    }
}

/// Closed real interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        Interval::new(x.clone(), x, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(v), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Interval::point(Dyadic::from_bigint(v.clone()), prec)
    }

    /// Enclosure of the rational `num / den`.
    pub fn from_ratio(num: i64, den: i64, prec: u32) -> Self {
        let (n, d) = (Dyadic::from_int(num), Dyadic::from_int(den));
        Interval {
            lo: n.div(&d, prec, Round::Down),
            hi: n.div(&d, prec, Round::Up),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Strictly below / above / undecided relative to a constant.
    pub fn cmp_dyadic(&self, x: &Dyadic) -> Option<Ordering> {
        if &self.hi < x {
            Some(Ordering::Less)
        } else if &self.lo > x {
            Some(Ordering::Greater)
        } else if self.lo == self.hi {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn cmp_int(&self, v: i64) -> Option<Ordering> {
        self.cmp_dyadic(&Dyadic::from_int(v))
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: self.hi.neg(), hi: self.lo.neg(), prec: self.prec }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        let prec = self.prec.max(other.prec);
        Interval {
            lo: self.lo.add(&other.lo).round(prec, Round::Down),
            hi: self.hi.add(&other.hi).round(prec, Round::Up),
            prec,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn add_int(&self, k: i64) -> Interval {
        self.add(&Interval::from_int(k, self.prec))
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let prec = self.prec.max(other.prec);
        let c = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = c.iter().min().unwrap();
        let hi = c.iter().max().unwrap();
        Interval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let (a, b) = (self.lo.mul_int(k), self.hi.mul_int(k));
        let (lo, hi) = if k.is_negative() { (b, a) } else { (a, b) };
        Interval {
            lo: lo.round(self.prec, Round::Down),
            hi: hi.round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn sqr(&self) -> Interval {
        let a = self.abs();
        let lo = a.lo.mul(&a.lo);
        let hi = a.hi.mul(&a.hi);
        Interval {
            lo: lo.round(self.prec, Round::Down),
            hi: hi.round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let hi = core::cmp::max(self.lo.abs(), self.hi.clone());
            Interval { lo: Dyadic::zero(), hi, prec: self.prec }
        }
    }

    /// `None` when the divisor interval contains zero.
    pub fn div(&self, other: &Interval) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let prec = self.prec.max(other.prec);
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let lo = pairs.iter().map(|(a, b)| a.div(b, prec, Round::Down)).min().unwrap();
        let hi = pairs.iter().map(|(a, b)| a.div(b, prec, Round::Up)).max().unwrap();
        Some(Interval { lo, hi, prec })
    }

    pub fn recip(&self) -> Option<Interval> {
        Interval::from_int(1, self.prec).div(self)
    }

    /// Square root of the nonnegative part of the interval.
    pub fn sqrt(&self) -> Interval {
        let lo = if self.lo.signum() > 0 {
            self.lo.sqrt(self.prec, Round::Down)
        } else {
            Dyadic::zero()
        };
        let hi = if self.hi.signum() > 0 {
            self.hi.sqrt(self.prec, Round::Up)
        } else {
            Dyadic::zero()
        };
        Interval { lo, hi, prec: self.prec }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: core::cmp::min(self.lo.clone(), other.lo.clone()),
            hi: core::cmp::max(self.hi.clone(), other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// Outward `f64` bounds.
    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (self.lo.to_f64(Round::Down), self.hi.to_f64(Round::Up))
    }

    /// Midpoint as `f64` together with an upper bound on the distance from
    /// that float to any point of the interval.
    pub fn to_f64_ball(&self) -> (f64, f64) {
        let mid = self.mid().to_f64_approx();
        let m = Dyadic::from_f64(mid);
        let r = core::cmp::max(self.hi.sub(&m), m.sub(&self.lo));
        (mid, r.to_f64(Round::Up).max(0.0))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_bounds();
        write!(f, "[{lo:.17e}, {hi:.17e}]")
    }
}

/// Rectangular complex interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        let prec = re.prec();
        ComplexInterval { re, im: Interval::from_int(0, prec) }
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        ComplexInterval::real(Interval::from_int(v, prec))
    }

    pub fn add(&self, other: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn neg(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, other: &ComplexInterval) -> ComplexInterval {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexInterval { re, im }
    }

    pub fn mul_int(&self, k: &BigInt) -> ComplexInterval {
        ComplexInterval { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn add_int(&self, k: i64) -> ComplexInterval {
        ComplexInterval { re: self.re.add_int(k), im: self.im.clone() }
    }

    pub fn conj(&self) -> ComplexInterval {
        ComplexInterval { re: self.re.clone(), im: self.im.neg() }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> Interval {
        self.re.sqr().add(&self.im.sqr())
    }

    /// Enclosure of `|z|`.
    pub fn modulus(&self) -> Interval {
        self.norm_sqr().sqrt()
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    pub fn overlaps(&self, other: &ComplexInterval) -> bool {
        self.re.overlaps(&other.re) && self.im.overlaps(&other.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn bigint_shift_rounds_toward_negative_infinity() {
        let m = BigInt::from(-5);
        assert_eq!(&m >> 1usize, BigInt::from(-3));
        assert_eq!(shr_round(&m, 1, Round::Up), BigInt::from(-2));
        assert_eq!(shr_round(&BigInt::from(5), 1, Round::Up), BigInt::from(3));
    }

    #[test]
    fn directed_division_brackets_one_third() {
        let one = Dyadic::from_int(1);
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 64, Round::Down);
        let hi = one.div(&three, 64, Round::Up);
        assert!(lo < hi);
        assert!(lo.mul(&three) < one);
        assert!(hi.mul(&three) > one);
        assert!(hi.sub(&lo) <= Dyadic::new(BigInt::one(), -64));
    }

    #[test]
    fn sqrt_two_is_enclosed() {
        let two = Interval::from_int(2, 128);
        let s = two.sqrt();
        let sq = s.sqr();
        assert!(sq.contains(&Dyadic::from_int(2)));
        let (lo, hi) = s.to_f64_bounds();
        assert!(lo <= core::f64::consts::SQRT_2 && core::f64::consts::SQRT_2 <= hi);
    }

    #[test]
    fn interval_mul_handles_mixed_signs() {
        let a = Interval::new(Dyadic::from_int(-2), Dyadic::from_int(3), 64);
        let b = Interval::new(Dyadic::from_int(-5), Dyadic::from_int(1), 64);
        let c = a.mul(&b);
        assert_eq!(c.lo(), &Dyadic::from_int(-15));
        assert_eq!(c.hi(), &Dyadic::from_int(10));
    }

    #[test]
    fn directed_float_conversion() {
        let third = Interval::from_ratio(1, 3, 200);
        let (lo, hi) = third.to_f64_bounds();
        assert!(lo < hi);
        assert!(lo <= 1.0 / 3.0 && 1.0 / 3.0 <= hi);
        assert_eq!(Dyadic::from_f64(0.75).to_f64(Round::Down), 0.75);
        assert_eq!(Dyadic::from_f64(-1.5e-300).to_f64(Round::Up), -1.5e-300);
    }

    #[test]
    fn ordering_is_exact() {
        let a = Dyadic::new(BigInt::from(3), -1);
        let b = Dyadic::new(BigInt::from(6), -2);
        assert_eq!(a, b);
        assert!(Dyadic::new(BigInt::from(-1), 10) < Dyadic::new(BigInt::from(1), -10));
        assert!(Dyadic::new(BigInt::from(-3), 0) < Dyadic::new(BigInt::from(-1), 0));
    }
}

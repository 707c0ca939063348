//! Rational interval enclosures for expressions involving natural logarithms.
//!
//! Every enclosure is a pair of exact rationals `lo <= x <= hi`, so a
//! comparison that the interval decides is decided for the true real value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Working precision used unless a caller escalates.
pub const DEFAULT_DIGITS: u32 = 60;
/// Precision ladder ceiling for undecided comparisons.
pub const MAX_DIGITS: u32 = 480;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn add_rational(&self, x: &BigRational) -> Interval {
        Interval {
            lo: &self.lo + x,
            hi: &self.hi + x,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Interval {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    /// Rounds both ends outward onto the grid `10^-digits`.
    pub fn rounded(&self, digits: u32) -> Interval {
        let grid = BigRational::from_integer(BigInt::from(10u32).pow(digits));
        Interval {
            lo: (&self.lo * &grid).floor() / &grid,
            hi: (&self.hi * &grid).ceil() / &grid,
        }
    }

    /// `Some(ceil(x))` when both ends agree on it.
    pub fn ceil(&self) -> Option<BigInt> {
        let a = self.lo.ceil().to_integer();
        let b = self.hi.ceil().to_integer();
        (a == b).then_some(a)
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
fn ten_pow_neg(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Fixed-point enclosure of `atanh(p/q)` for `0 <= p/q <= 1/3`, scaled by
/// `2^bits`. Returns the truncated sum and a bound on its absolute error.
///
/// Each power `floor(P z^2)` adds at most one unit of error on top of the
/// previous one, so the j-th power is off by at most `j + 1` and each
/// truncated term by at most 2. Once the power truncates to zero, the true
/// tail is at most `(J + 2) / (1 - z^2) <= 2 (J + 2)`.
fn atanh_fixed(p: &BigInt, q: &BigInt, bits: u64) -> (BigInt, BigInt) {
    let p2 = p * p;
    let q2 = q * q;
    let mut power = (BigInt::one() << bits) * p / q;
    let mut sum = BigInt::zero();
    let mut j: u64 = 0;
    while !power.is_zero() {
        sum += &power / BigInt::from(2 * j + 1);
        power = power * &p2 / &q2;
        j += 1;
    }
    (sum, BigInt::from(4 * (j + 3)))
}

fn bit_length(x: &BigInt) -> i64 {
    x.bits() as i64
}

/// Encloses `ln(q)` for a positive rational `q` with width about `10^-digits`.
pub fn ln(q: &BigRational, digits: u32) -> Interval {
    assert!(q.is_positive(), "ln of non-positive rational");
    if q.is_one() {
        return Interval::exact(BigRational::zero());
    }
    let two = BigRational::from_integer(2.into());
    // q = 2^m * y with y in [2/3, 4/3]
    let mut m = bit_length(q.numer()) - bit_length(q.denom());
    let pow2 = |e: i64| -> BigRational {
        let p = BigRational::from_integer(BigInt::one() << e.unsigned_abs());
        if e >= 0 {
            p
        } else {
            p.recip()
        }
    };
    let mut y = q * pow2(-m);
    if y > rational(4, 3) {
        y /= &two;
        m += 1;
    } else if y < rational(2, 3) {
        y *= &two;
        m -= 1;
    }
    let one = BigRational::one();
    let z = (&y - &one) / (&y + &one);
    // 10^-digits needs digits * log2(10) bits, plus room for m * ln 2
    let bits = (digits as u64 * 3322).div_ceil(1000) + 16 + m.unsigned_abs().max(1).ilog2() as u64 + 1;
    let (mut value, mut err) = atanh_fixed(&z.numer().abs(), z.denom(), bits);
    if z.is_negative() {
        value = -value;
    }
    value *= 2;
    err *= 2;
    if m != 0 {
        let (ln2, ln2_err) = atanh_fixed(&BigInt::one(), &BigInt::from(3), bits);
        value += ln2 * 2 * m;
        err += ln2_err * 2 * m.unsigned_abs();
    }
    let scale = BigInt::one() << bits;
    Interval {
        lo: BigRational::new(&value - &err, scale.clone()),
        hi: BigRational::new(value + err, scale),
    }
}

/// Smallest integer `>= x` for an enclosure produced by `make(digits)`,
/// escalating precision until the enclosure pins the ceiling down.
pub fn certified_ceil(make: impl Fn(u32) -> Interval) -> Option<BigInt> {
    let mut digits = DEFAULT_DIGITS;
    while digits <= MAX_DIGITS {
        if let Some(c) = make(digits).ceil() {
            return Some(c);
        }
        digits *= 2;
    }
    None
}

/// Decides `x >= 0` for an enclosure family, escalating precision; `None`
/// means the sign could not be certified (treated as failure by callers).
pub fn certified_nonnegative(make: impl Fn(u32) -> Interval) -> Option<bool> {
    let mut digits = DEFAULT_DIGITS;
    while digits <= MAX_DIGITS {
        let iv = make(digits);
        // an enclosure touching zero only counts when it is exactly zero
        if iv.lo.is_positive() || (iv.lo.is_zero() && iv.hi.is_zero()) {
            return Some(true);
        }
        if iv.hi.is_negative() {
            return Some(false);
        }
        digits *= 2;
    }
    None
}

/// Integer ceiling of an exact rational.
pub fn ceil_rational(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_mod_floor(x.denom());
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

//! Exact rational numbers and closed rational intervals.
//!
//! Integers and rationals are GMP-backed (`rug`); `rug::Rational` is always
//! kept in canonical form (positive denominator, coprime parts), so every
//! value produced here is canonical.

mod ball;
pub mod serde_rational;

use std::cmp::Ordering;
use std::fmt;

use rug::ops::{DivRounding, Pow};
pub use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

pub use ball::Ball;

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    #[serde(with = "serde_rational")]
    lo: Rational,
    #[serde(with = "serde_rational")]
    hi: Rational,
}

impl RationalInterval {
    /// Builds `[lo, hi]`, swapping the endpoints if they are given in the
    /// wrong order.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        if lo <= hi {
            Self { lo, hi }
        } else {
            Self { lo: hi, hi: lo }
        }
    }

    pub fn point(v: Rational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn from_ints(lo: i64, hi: i64) -> Self {
        Self::new(Rational::from(lo), Rational::from(hi))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        Rational::from(&self.hi - &self.lo)
    }

    pub fn midpoint(&self) -> Rational {
        let mut m = Rational::from(&self.lo + &self.hi);
        m >>= 1;
        m
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.cmp0() != Ordering::Greater && self.hi.cmp0() != Ordering::Less
    }

    /// True when the whole interval lies in the open interval `(-eps, eps)`.
    pub fn strictly_within(&self, eps: &Rational) -> bool {
        let neg = Rational::from(-eps);
        self.lo > neg && &self.hi < eps
    }

    /// Largest absolute value attained on the interval.
    pub fn mag(&self) -> Rational {
        let a = Rational::from(self.lo.abs_ref());
        let b = Rational::from(self.hi.abs_ref());
        a.max(b)
    }

    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn neg(&self) -> RationalInterval {
        RationalInterval {
            lo: Rational::from(-&self.hi),
            hi: Rational::from(-&self.lo),
        }
    }

    pub fn add(&self, other: &RationalInterval) -> RationalInterval {
        interval_add(self, other)
    }

    pub fn sub(&self, other: &RationalInterval) -> RationalInterval {
        interval_add(self, &other.neg())
    }

    pub fn mul(&self, other: &RationalInterval) -> RationalInterval {
        interval_mul(self, other)
    }

    pub fn pow(&self, k: u32) -> RationalInterval {
        interval_pow(self, k)
    }

    pub fn scale(&self, c: &Rational) -> RationalInterval {
        RationalInterval::new(Rational::from(&self.lo * c), Rational::from(&self.hi * c))
    }

    pub fn add_scalar(&self, c: &Rational) -> RationalInterval {
        RationalInterval {
            lo: Rational::from(&self.lo + c),
            hi: Rational::from(&self.hi + c),
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `[a.lo + b.lo, a.hi + b.hi]`.
pub fn interval_add(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    RationalInterval {
        lo: Rational::from(&a.lo + &b.lo),
        hi: Rational::from(&a.hi + &b.hi),
    }
}

/// Exact min/max over the four endpoint products.
pub fn interval_mul(a: &RationalInterval, b: &RationalInterval) -> RationalInterval {
    if a.is_point() && b.is_point() {
        return RationalInterval::point(Rational::from(&a.lo * &b.lo));
    }
    let p = [
        Rational::from(&a.lo * &b.lo),
        Rational::from(&a.lo * &b.hi),
        Rational::from(&a.hi * &b.lo),
        Rational::from(&a.hi * &b.hi),
    ];
    let mut lo = &p[0];
    let mut hi = &p[0];
    for v in &p[1..] {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    RationalInterval {
        lo: lo.clone(),
        hi: hi.clone(),
    }
}

/// Tight enclosure of `{x^k : x in a}`.
pub fn interval_pow(a: &RationalInterval, k: u32) -> RationalInterval {
    if k == 0 {
        return RationalInterval::point(Rational::from(1));
    }
    let lo_k = Rational::from((&a.lo).pow(k));
    let hi_k = Rational::from((&a.hi).pow(k));
    if k % 2 == 1 || a.lo.cmp0() != Ordering::Less {
        return RationalInterval { lo: lo_k, hi: hi_k };
    }
    if a.hi.cmp0() != Ordering::Greater {
        return RationalInterval { lo: hi_k, hi: lo_k };
    }
    RationalInterval {
        lo: Rational::new(),
        hi: lo_k.max(hi_k),
    }
}

/// `floor(log2(r))` for `r > 0`.
pub fn log2_bound(r: &Rational) -> Result<i64> {
    if r.cmp0() != Ordering::Greater {
        return Err(Error::NonPositive);
    }
    let (num, den) = (r.numer(), r.denom());
    let e = i64::from(num.significant_bits()) - i64::from(den.significant_bits());
    // floor(log2 r) is either e or e - 1; test 2^e <= num/den.
    let at_least = if e >= 0 {
        *num >= Integer::from(den << (e as u32))
    } else {
        Integer::from(num << ((-e) as u32)) >= *den
    };
    Ok(if at_least { e } else { e - 1 })
}

/// `2^e` as an exact rational.
pub fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(Integer::from(1) << (e as u32))
    } else {
        Rational::from((Integer::from(1), Integer::from(1) << ((-e) as u32)))
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Integer {
    let mut l = Integer::from(1);
    for v in values {
        if *v.denom() != 1 {
            l.lcm_mut(v.denom());
        }
    }
    l
}

/// Renders `v` with `digits` significant decimal digits, rounding to nearest.
pub fn to_decimal(v: &Rational, digits: u32) -> String {
    let digits = digits.max(1);
    if v.cmp0() == Ordering::Equal {
        return format!("{:.*}", (digits - 1) as usize, 0.0);
    }
    let neg = v.cmp0() == Ordering::Less;
    let a = Rational::from(v.abs_ref());
    let e = floor_log10(&a);
    // Number of digits after the decimal point.
    let frac = i64::from(digits) - 1 - e;
    let scaled = if frac >= 0 {
        a * Integer::from(Integer::u_pow_u(10, frac as u32))
    } else {
        a / Integer::from(Integer::u_pow_u(10, (-frac) as u32))
    };
    // Round half up.
    let (n, d) = (scaled.numer(), scaled.denom());
    let mut rounded = Integer::from(Integer::from(n << 1u32) + d).div_floor(Integer::from(d << 1u32));
    let mut frac = frac;
    // Rounding up may carry into a new leading digit (9.999 -> 10.00).
    if rounded.to_string().len() > digits as usize {
        rounded = rounded.div_floor(Integer::from(10));
        frac -= 1;
    }
    let mut s = rounded.to_string();
    let body = if frac > 0 {
        let frac = frac as usize;
        if s.len() <= frac {
            s = format!("{}{}", "0".repeat(frac + 1 - s.len()), s);
        }
        let split = s.len() - frac;
        format!("{}.{}", &s[..split], &s[split..])
    } else {
        format!("{}{}", s, "0".repeat((-frac) as usize))
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// `v^k` for a non-negative exponent.
pub fn rat_pow(v: &Rational, k: u32) -> Rational {
    Rational::from(v.pow(k))
}

/// `floor(log10(a))` for `a > 0`.
pub fn floor_log10(a: &Rational) -> i64 {
    // Start from the binary estimate and correct by comparison.
    let l2 = log2_bound(a).expect("positive");
    let mut e = ((l2 as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |k: i64| -> Rational {
        if k >= 0 {
            Rational::from(Integer::u_pow_u(10, k as u32))
        } else {
            Rational::from((Integer::from(1), Integer::from(Integer::u_pow_u(10, (-k) as u32))))
        }
    };
    while pow10(e) > *a {
        e -= 1;
    }
    while pow10(e + 1) <= *a {
        e += 1;
    }
    e
}

/// Parses `n`, `-n` or `n/d` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().ok()?;
            let d: Integer = d.trim().parse().ok()?;
            if d.cmp0() == Ordering::Equal {
                return None;
            }
            Some(Rational::from((n, d)))
        }
        None => s.parse::<Integer>().ok().map(Rational::from),
    }
}

/// Parses a plain decimal such as `-12.5030` exactly.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let n: Integer = format!("{int}{frac}").parse().ok()?;
    let v = Rational::from((n, Integer::from(Integer::u_pow_u(10, frac.len() as u32))));
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    fn iv(lo: Rational, hi: Rational) -> RationalInterval {
        RationalInterval::new(lo, hi)
    }

    #[test]
    fn add_examples() {
        let r = interval_add(&RationalInterval::from_ints(0, 1), &RationalInterval::from_ints(2, 3));
        assert_eq!(r, RationalInterval::from_ints(2, 4));
        let r = interval_add(&RationalInterval::from_ints(-1, 1), &RationalInterval::from_ints(0, 0));
        assert_eq!(r, RationalInterval::from_ints(-1, 1));
        let r = interval_add(&iv(q(1, 3), q(1, 2)), &iv(q(1, 6), q(1, 6)));
        assert_eq!(r, iv(q(1, 2), q(2, 3)));
    }

    #[test]
    fn mul_examples() {
        let r = interval_mul(&RationalInterval::from_ints(-1, 2), &RationalInterval::from_ints(3, 4));
        assert_eq!(r, RationalInterval::from_ints(-4, 8));
        let r = interval_mul(&RationalInterval::from_ints(0, 0), &RationalInterval::from_ints(-5, 5));
        assert_eq!(r, RationalInterval::from_ints(0, 0));
        let r = interval_mul(&RationalInterval::from_ints(-2, -1), &RationalInterval::from_ints(-3, -2));
        assert_eq!(r, RationalInterval::from_ints(2, 6));
    }

    #[test]
    fn pow_examples() {
        let a = RationalInterval::from_ints(-2, 1);
        assert_eq!(interval_pow(&a, 2), RationalInterval::from_ints(0, 4));
        assert_eq!(interval_pow(&a, 3), RationalInterval::from_ints(-8, 1));
        assert_eq!(interval_pow(&a, 0), RationalInterval::from_ints(1, 1));
        assert_eq!(
            interval_pow(&RationalInterval::from_ints(-3, -2), 2),
            RationalInterval::from_ints(4, 9)
        );
    }

    #[test]
    fn log2_examples() {
        assert_eq!(log2_bound(&Rational::from(1)).unwrap(), 0);
        assert_eq!(log2_bound(&q(5, 2)).unwrap(), 1);
        assert_eq!(log2_bound(&q(1, 78125)).unwrap(), -17);
        assert_eq!(log2_bound(&q(1, 2)).unwrap(), -1);
        assert_eq!(log2_bound(&q(3, 4)).unwrap(), -1);
        assert_eq!(log2_bound(&Rational::from(0)), Err(Error::NonPositive));
        assert_eq!(log2_bound(&Rational::from(-3)), Err(Error::NonPositive));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&q(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&q(-2, 3), 3), "-0.667");
        assert_eq!(to_decimal(&Rational::from(12345), 3), "12300");
        assert_eq!(to_decimal(&q(99999, 10000), 3), "10.0");
        assert_eq!(to_decimal(&Rational::from(0), 3), "0.00");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-3/6"), Some(q(-1, 2)));
        assert_eq!(parse_rational("7"), Some(Rational::from(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }
}

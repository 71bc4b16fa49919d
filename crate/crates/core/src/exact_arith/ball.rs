use std::cmp::Ordering;

use rug::{Integer, Rational};

use super::RationalInterval;

/// Fixed-point ball `[(mid - rad) / 2^prec, (mid + rad) / 2^prec]`.
///
/// Endpoints are exact dyadic rationals and every operation rounds outward,
/// so the result always encloses the exact image. This is the working
/// representation for evaluations that need millions of bits, where exact
/// rational arithmetic would grow without bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: Integer,
    rad: Integer,
    prec: u32,
}

fn shr_ceil(x: Integer, k: u32) -> Integer {
    // x >= 0
    -(Integer::from(-x) >> k)
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball {
            mid: Integer::new(),
            rad: Integer::new(),
            prec,
        }
    }

    pub fn from_integer(n: &Integer, prec: u32) -> Self {
        Ball {
            mid: Integer::from(n << prec),
            rad: Integer::new(),
            prec,
        }
    }

    /// `m / 2^k`, exact when `k <= prec`.
    pub fn from_dyadic(m: &Integer, k: u32, prec: u32) -> Self {
        if k <= prec {
            return Ball {
                mid: Integer::from(m << (prec - k)),
                rad: Integer::new(),
                prec,
            };
        }
        let exact = m.is_divisible_2pow(k - prec);
        Ball {
            mid: Integer::from(m >> (k - prec)),
            rad: Integer::from(u32::from(!exact)),
            prec,
        }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        if *q.denom() == 1 {
            return Self::from_integer(q.numer(), prec);
        }
        let scaled = Integer::from(q.numer() << prec);
        let (mid, rem) = scaled.div_rem_floor(q.denom().clone());
        Ball {
            mid,
            rad: Integer::from(u32::from(rem != 0)),
            prec,
        }
    }

    /// Smallest ball enclosing `[lo, hi] / 2^prec` (`lo <= hi`).
    pub fn from_ulp_bounds(lo: &Integer, hi: &Integer, prec: u32) -> Self {
        let mid = Integer::from(lo + hi) >> 1u32;
        let rad = Integer::from(hi - &mid);
        Ball { mid, rad, prec }
    }

    /// Encloses `[lo, hi] / 2^k` at precision `prec`.
    pub fn from_dyadic_bounds(lo: &Integer, hi: &Integer, k: u32, prec: u32) -> Self {
        if prec >= k {
            let s = prec - k;
            return Self::from_ulp_bounds(&Integer::from(lo << s), &Integer::from(hi << s), prec);
        }
        let s = k - prec;
        let l = Integer::from(lo >> s);
        let h = shr_ceil(hi.clone(), s);
        Self::from_ulp_bounds(&l, &h, prec)
    }

    pub fn from_interval(iv: &RationalInterval, prec: u32) -> Self {
        if iv.is_point() {
            return Self::from_rational(iv.lo(), prec);
        }
        let lo = Self::from_rational(iv.lo(), prec);
        let hi = Self::from_rational(iv.hi(), prec);
        // Enclose [lo.mid - 1, hi.mid + 1].
        let lo_m = Integer::from(&lo.mid - &lo.rad);
        let hi_m = Integer::from(&hi.mid + &hi.rad);
        let sum = Integer::from(&lo_m + &hi_m);
        let mid = sum >> 1u32;
        let rad = (Integer::from(&hi_m - &mid)).max(Integer::from(&mid - &lo_m));
        Ball { mid, rad, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> &Integer {
        &self.mid
    }

    pub fn rad(&self) -> &Integer {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad == 0
    }

    fn check(&self, other: &Ball) {
        debug_assert_eq!(self.prec, other.prec, "ball precision mismatch");
    }

    pub fn add(&self, other: &Ball) -> Ball {
        self.check(other);
        Ball {
            mid: Integer::from(&self.mid + &other.mid),
            rad: Integer::from(&self.rad + &other.rad),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.check(other);
        Ball {
            mid: Integer::from(&self.mid - &other.mid),
            rad: Integer::from(&self.rad + &other.rad),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: Integer::from(-&self.mid),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    /// Adds an exact integer.
    pub fn add_integer(&mut self, c: &Integer) {
        if *c != 0 {
            self.mid += Integer::from(c << self.prec);
        }
    }

    pub fn mul_integer(&self, c: &Integer) -> Ball {
        Ball {
            mid: Integer::from(&self.mid * c),
            rad: Integer::from(&self.rad * Integer::from(c.abs_ref())),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        self.check(other);
        let p = Integer::from(&self.mid * &other.mid);
        let exact = p.is_divisible_2pow(self.prec);
        let mid = p >> self.prec;
        let mut err = Integer::new();
        if other.rad != 0 {
            err += Integer::from(self.mid.abs_ref()) * &other.rad;
        }
        if self.rad != 0 {
            err += Integer::from(other.mid.abs_ref()) * &self.rad;
            if other.rad != 0 {
                err += Integer::from(&self.rad * &other.rad);
            }
        }
        let mut rad = if err == 0 {
            err
        } else {
            shr_ceil(err, self.prec)
        };
        if !exact {
            rad += 1;
        }
        Ball {
            mid,
            rad,
            prec: self.prec,
        }
    }

    /// Re-expresses the ball at another precision, rounding outward.
    pub fn with_prec(&self, prec: u32) -> Ball {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Ball {
                mid: Integer::from(&self.mid << (prec - self.prec)),
                rad: Integer::from(&self.rad << (prec - self.prec)),
                prec,
            },
            Ordering::Less => {
                let k = self.prec - prec;
                let exact = self.mid.is_divisible_2pow(k);
                let mid = Integer::from(&self.mid >> k);
                let mut rad = shr_ceil(self.rad.clone(), k);
                if !exact {
                    rad += 1;
                }
                Ball { mid, rad, prec }
            }
        }
    }

    /// Sign of every point in the ball, or `None` when the ball straddles 0.
    pub fn sign(&self) -> Option<Ordering> {
        if self.rad == 0 {
            return Some(self.mid.cmp0());
        }
        if self.mid > self.rad {
            Some(Ordering::Greater)
        } else if Integer::from(-&self.mid) > self.rad {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn excludes_zero(&self) -> bool {
        matches!(self.sign(), Some(Ordering::Greater | Ordering::Less))
    }

    /// Upper bound of `|v|` over the ball, in units of `2^-prec`.
    pub fn abs_upper_ulps(&self) -> Integer {
        Integer::from(self.mid.abs_ref()) + &self.rad
    }

    /// True when the ball lies strictly inside `(-eps, eps)`.
    pub fn strictly_within(&self, eps: &Rational) -> bool {
        // (|mid| + rad) / 2^prec < num / den
        let lhs = self.abs_upper_ulps() * eps.denom();
        let rhs = Integer::from(eps.numer() << self.prec);
        lhs < rhs
    }

    pub fn lo(&self) -> Rational {
        Rational::from((Integer::from(&self.mid - &self.rad), Integer::from(1) << self.prec))
    }

    pub fn hi(&self) -> Rational {
        Rational::from((Integer::from(&self.mid + &self.rad), Integer::from(1) << self.prec))
    }

    pub fn to_interval(&self) -> RationalInterval {
        RationalInterval::new(self.lo(), self.hi())
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo() <= *v && *v <= self.hi()
    }

    /// `log2` of the radius in absolute terms (`None` for an exact ball).
    pub fn rad_log2(&self) -> Option<i64> {
        if self.rad == 0 {
            None
        } else {
            Some(i64::from(self.rad.significant_bits()) - i64::from(self.prec))
        }
    }

    /// `[1, x, ..., x^n]`.
    pub fn powers(x: &Ball, n: usize) -> Vec<Ball> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Ball::from_integer(&Integer::from(1), x.prec));
        for i in 1..=n {
            let next = if i == 1 { x.clone() } else { out[i - 1].mul(x) };
            out.push(next);
        }
        out
    }

    /// `sum coeffs[i] * powers[i]`; only integer scalings, no full products.
    pub fn combine(coeffs: &[Integer], powers: &[Ball]) -> Ball {
        let mut acc = Ball::zero(powers[0].prec);
        for (i, c) in coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if i == 0 {
                acc.add_integer(c);
            } else {
                acc = acc.add(&powers[i].mul_integer(c));
            }
        }
        acc
    }

    /// Value of `sum coeffs[i] * x^i` (ascending integer coefficients).
    /// Higher degrees use Paterson-Stockmeyer: about `2 sqrt(d)` full
    /// products instead of `d`.
    pub fn eval_poly(coeffs: &[Integer], x: &Ball) -> Ball {
        if coeffs.is_empty() {
            return Ball::zero(x.prec);
        }
        let d = coeffs.len() - 1;
        if d < 8 {
            let mut acc = Ball::from_integer(&coeffs[d], x.prec);
            for c in coeffs[..d].iter().rev() {
                acc = acc.mul(x);
                acc.add_integer(c);
            }
            return acc;
        }
        let s = ((d + 1) as f64).sqrt().ceil() as usize;
        let pw = Ball::powers(x, s);
        let mut blocks = coeffs.chunks(s).rev();
        let mut acc = Ball::combine(blocks.next().expect("nonempty"), &pw);
        for block in blocks {
            acc = acc.mul(&pw[s]).add(&Ball::combine(block, &pw));
        }
        acc
    }
}

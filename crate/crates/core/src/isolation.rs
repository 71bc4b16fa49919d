//! Real-root isolation by Descartes' rule of signs, and certified
//! refinement of isolating intervals.

use std::cmp::Ordering;

use rug::ops::DivRounding;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{log2_bound, Ball, RationalInterval};
use crate::poly::zpoly::{self, ZPoly};
use crate::poly::{yun_decomposition, UniPoly};

/// A real algebraic number given by a square-free polynomial and an
/// interval containing exactly one of its roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    pub defining_poly: UniPoly,
    pub interval: RationalInterval,
    /// Multiplicity of the root in the polynomial it was projected from.
    pub raw_multiplicity: u32,
    /// Position among the roots of `defining_poly`, ascending from 0.
    pub index: usize,
}

impl IsolatedRoot {
    pub fn is_exact(&self) -> bool {
        self.interval.is_point()
    }

    /// Shrinks the interval to width at most `target_width`.
    pub fn refine(&self, target_width: &Rational) -> IsolatedRoot {
        refine(self, target_width)
    }
}

/// `1 + max_{i<d} |a_i| / |a_d|`; every real root lies in `(-B, B)`.
pub fn cauchy_bound(p: &UniPoly) -> Result<Rational> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let lc = Rational::from(p.coeff(d).abs_ref());
    let max = p.coeffs()[..d]
        .iter()
        .map(|c| Rational::from(c.abs_ref()))
        .max()
        .unwrap_or_default();
    Ok(Rational::from(1) + max / lc)
}

enum Found {
    Exact(Rational),
    Open(Rational, Rational),
}

/// Isolates every real root of a square-free polynomial. Results are
/// ascending; rational roots met during subdivision come back as point
/// intervals.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let (_, z) = p.primitive_integer();
    if zpoly::gcd(&z, &zpoly::derivative(&z)).len() > 1 {
        return Err(Error::NotSquareFree);
    }
    let bound = cauchy_bound(p)?;
    let w = (log2_bound(&bound)? + 1).max(0) as u32;

    let mut found = Vec::new();
    let mut q = z.clone();
    if q[0] == 0 {
        found.push(Found::Exact(Rational::new()));
        q.remove(0);
    }
    for negative in [false, true] {
        let mut h = q.clone();
        if negative {
            for (i, c) in h.iter_mut().enumerate() {
                if i % 2 == 1 {
                    *c = Integer::from(-&*c);
                }
            }
        }
        for f in isolate_unit(&h, w) {
            found.push(match f {
                Found::Exact(r) if negative => Found::Exact(-r),
                Found::Open(a, b) if negative => Found::Open(-b, -a),
                other => other,
            });
        }
    }

    let mut roots: Vec<RationalInterval> = found
        .into_iter()
        .map(|f| match f {
            Found::Exact(r) => RationalInterval::point(r),
            Found::Open(a, b) => clear_endpoint_roots(&z, a, b),
        })
        .collect();
    roots.sort_by(|a, b| a.lo().cmp(b.lo()));
    // Neighbours from subdivision may share an endpoint.
    for k in 1..roots.len() {
        while roots[k - 1].hi() >= roots[k].lo() {
            roots[k - 1] = bisect(&z, &roots[k - 1]);
        }
    }
    Ok(roots
        .into_iter()
        .enumerate()
        .map(|(index, interval)| IsolatedRoot {
            defining_poly: p.clone(),
            interval,
            raw_multiplicity: 1,
            index,
        })
        .collect())
}

fn sign_variations(coeffs: &[Integer]) -> usize {
    let mut count = 0;
    let mut last = Ordering::Equal;
    for c in coeffs {
        let s = c.cmp0();
        if s != Ordering::Equal {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound for roots of `q` in `(0, 1)`.
fn descartes_unit(q: &[Integer]) -> usize {
    let mut r: ZPoly = q.iter().rev().cloned().collect();
    zpoly::taylor_shift_one(&mut r);
    sign_variations(&r)
}

fn divide_positive_content(q: &mut ZPoly) {
    let g = zpoly::content(q);
    if g > 1 {
        for c in q.iter_mut() {
            c.div_exact_mut(&g);
        }
    }
}

/// Roots of `h` in `(0, 2^w)`, `h(0) != 0`.
fn isolate_unit(h: &[Integer], w: u32) -> Vec<Found> {
    let mut out = Vec::new();
    let scale = |c: &Integer, e: u32| Rational::from((Integer::from(c << w), Integer::from(1) << e));
    // q(x) is proportional to h(2^w (c + x) / 2^e).
    let mut q0: ZPoly = h.iter().enumerate().map(|(i, c)| Integer::from(c << (w * i as u32))).collect();
    divide_positive_content(&mut q0);
    let mut stack = vec![(q0, Integer::new(), 0u32)];
    while let Some((mut q, c, e)) = stack.pop() {
        match descartes_unit(&q) {
            0 => {}
            1 => out.push(Found::Open(scale(&c, e), scale(&Integer::from(&c + 1), e))),
            _ => {
                let d = q.len() - 1;
                // 2^d q(1/2)
                let half: Integer = q.iter().enumerate().map(|(i, a)| Integer::from(a << (d - i) as u32)).sum();
                if half == 0 {
                    out.push(Found::Exact(scale(&Integer::from(Integer::from(&c << 1u32) + 1), e + 1)));
                    q = zpoly::div_exact(&q, &[Integer::from(-1), Integer::from(2)]).expect("rational root divides");
                }
                let d = q.len() - 1;
                let mut left: ZPoly = q.iter().enumerate().map(|(i, a)| Integer::from(a << (d - i) as u32)).collect();
                divide_positive_content(&mut left);
                let mut right = left.clone();
                zpoly::taylor_shift_one(&mut right);
                let c2 = Integer::from(&c << 1u32);
                stack.push((right, Integer::from(&c2 + 1), e + 1));
                stack.push((left, c2, e + 1));
            }
        }
    }
    out
}

/// An interval from subdivision may end at a rational root found earlier.
/// Moves such endpoints inward until both are non-roots, using the sign of
/// the derivative to know the sign just inside a root endpoint.
fn clear_endpoint_roots(z: &[Integer], mut a: Rational, mut b: Rational) -> RationalInterval {
    let dz = zpoly::derivative(z);
    loop {
        let sa = zpoly::sign_at(z, &a);
        let sb = zpoly::sign_at(z, &b);
        if sa != Ordering::Equal && sb != Ordering::Equal {
            return RationalInterval::new(a, b);
        }
        let inner_a = if sa == Ordering::Equal { zpoly::sign_at(&dz, &a) } else { sa };
        let m = Rational::from(&a + &b) / 2u32;
        let sm = zpoly::sign_at(z, &m);
        if sm == Ordering::Equal {
            return RationalInterval::point(m);
        }
        if sm != inner_a {
            b = m;
        } else {
            a = m;
        }
    }
}

/// Keeps the half of an isolating interval that holds the root.
fn bisect(z: &[Integer], iv: &RationalInterval) -> RationalInterval {
    let m = iv.midpoint();
    match zpoly::sign_at(z, &m) {
        Ordering::Equal => RationalInterval::point(m),
        s if s == zpoly::sign_at(z, iv.lo()) => RationalInterval::new(m, iv.hi().clone()),
        _ => RationalInterval::new(iv.lo().clone(), m),
    }
}

/// Refines an isolating interval until its width is at most `target_width`.
pub fn refine(root: &IsolatedRoot, target_width: &Rational) -> IsolatedRoot {
    if root.is_exact() || root.interval.width() <= *target_width {
        return root.clone();
    }
    let bits = -log2_bound(target_width).expect("positive target width");
    let mut cursor = RootCursor::new(root);
    cursor.refine_to(bits);
    IsolatedRoot {
        interval: cursor.interval(),
        ..root.clone()
    }
}

/// Multiplicity of `root` in `raw`: the exponent of the unique Yun factor
/// of `raw` that vanishes at it.
pub fn raw_multiplicity(raw: &UniPoly, root: &IsolatedRoot) -> Result<u32> {
    for (factor, m) in yun_decomposition(raw)? {
        if factor.is_constant() {
            continue;
        }
        let (_, z) = factor.primitive_integer();
        let hit = if root.is_exact() {
            zpoly::sign_at(&z, root.interval.lo()) == Ordering::Equal
        } else {
            // The factor has at most one root inside; a sign change finds it.
            let sl = zpoly::sign_at(&z, root.interval.lo());
            let sh = zpoly::sign_at(&z, root.interval.hi());
            sl != Ordering::Equal && sh != Ordering::Equal && sl != sh
        };
        if hit {
            return Ok(m);
        }
    }
    Err(Error::NoMatchingFactor)
}

#[derive(Clone, Debug)]
enum CursorState {
    Exact(Rational),
    /// Root in `(lo / 2^k, hi / 2^k)`; `sign_lo` is the sign at `lo`, and
    /// `2^step` the subdivision count for the next secant guess.
    Bracket {
        lo: Integer,
        hi: Integer,
        k: u32,
        sign_lo: Ordering,
        step: u32,
    },
}

/// Refinement state for one root, with dyadic endpoints so that
/// evaluation can run in fixed-point ball arithmetic.
#[derive(Clone, Debug)]
pub(crate) struct RootCursor {
    poly: ZPoly,
    deriv: ZPoly,
    growth: u32,
    state: CursorState,
}

impl RootCursor {
    pub(crate) fn new(root: &IsolatedRoot) -> Self {
        let (_, poly) = root.defining_poly.primitive_integer();
        let iv = &root.interval;
        let mag = iv.mag();
        let radius_bits = if mag <= 1 { 0 } else { (log2_bound(&mag).unwrap() + 1) as u32 };
        let growth = {
            let mut total = Integer::new();
            for (i, c) in poly.iter().enumerate() {
                total += Integer::from(c.abs_ref()) * (i as u32 + 1) << (i as u32 * radius_bits);
            }
            total.significant_bits()
        };
        let mut cursor = RootCursor {
            deriv: zpoly::derivative(&poly),
            poly,
            growth,
            state: CursorState::Exact(iv.lo().clone()),
        };
        if !iv.is_point() {
            cursor.state = cursor.dyadic_bracket(iv.lo().clone(), iv.hi().clone());
        }
        cursor
    }

    pub(crate) fn interval(&self) -> RationalInterval {
        match &self.state {
            CursorState::Exact(r) => RationalInterval::point(r.clone()),
            CursorState::Bracket { lo, hi, k, .. } => {
                let den = Integer::from(1) << *k;
                RationalInterval::new(Rational::from((lo.clone(), den.clone())), Rational::from((hi.clone(), den)))
            }
        }
    }

    pub(crate) fn is_exact(&self) -> bool {
        matches!(self.state, CursorState::Exact(_))
    }

    /// Enclosure of the root at fixed-point precision `prec`.
    pub(crate) fn ball(&self, prec: u32) -> Ball {
        match &self.state {
            CursorState::Exact(r) => Ball::from_rational(r, prec),
            CursorState::Bracket { lo, hi, k, .. } => Ball::from_dyadic_bounds(lo, hi, *k, prec),
        }
    }

    /// `-log2` of the current width, rounded down (`u64::MAX` when exact).
    pub(crate) fn precision_bits(&self) -> u64 {
        match &self.state {
            CursorState::Exact(_) => u64::MAX,
            CursorState::Bracket { lo, hi, k, .. } => {
                let w = Integer::from(hi - lo) - 1u32;
                (i64::from(*k) - i64::from(w.significant_bits())).max(0) as u64
            }
        }
    }

    /// Converts a rational isolating interval to one with dyadic endpoints.
    fn dyadic_bracket(&self, mut a: Rational, mut b: Rational) -> CursorState {
        loop {
            let sa = zpoly::sign_at(&self.poly, &a);
            let w = Rational::from(&b - &a);
            let k = (2 - log2_bound(&w).unwrap()).max(0) as u32;
            let scale = Integer::from(1) << k;
            let lo = Integer::from(Rational::from(&a * &scale).ceil_ref());
            let hi = Integer::from(Rational::from(&b * &scale).floor_ref());
            let al = Rational::from((lo.clone(), scale.clone()));
            let bh = Rational::from((hi.clone(), scale.clone()));
            let s_lo = zpoly::sign_at(&self.poly, &al);
            if s_lo == Ordering::Equal {
                return CursorState::Exact(al);
            }
            let s_hi = zpoly::sign_at(&self.poly, &bh);
            if s_hi == Ordering::Equal {
                return CursorState::Exact(bh);
            }
            if s_lo != s_hi {
                return CursorState::Bracket { lo, hi, k, sign_lo: s_lo, step: 1 };
            }
            if s_lo != sa {
                b = al;
            } else {
                a = bh;
            }
        }
    }

    /// Certified sign of the defining polynomial at `m / 2^k`.
    fn sign_at(&self, m: &Integer, k: u32) -> Ordering {
        let mut guard = 64 + self.growth;
        for _ in 0..3 {
            let x = Ball::from_dyadic(m, k, k + guard);
            if let Some(s) = Ball::eval_poly(&self.poly, &x).sign() {
                return s;
            }
            guard *= 2;
        }
        zpoly::sign_at(&self.poly, &Rational::from((m.clone(), Integer::from(1) << k)))
    }

    /// Approximate value of the polynomial at `m / 2^k`, scaled by `2^(k + guard)`.
    fn approx_at(&self, m: &Integer, k: u32, guard: u32) -> Integer {
        let x = Ball::from_dyadic(m, k, k + guard);
        Ball::eval_poly(&self.poly, &x).mid().clone()
    }

    /// Refines until the width is at most `2^-bits`.
    pub(crate) fn refine_to(&mut self, bits: i64) {
        while !self.is_exact() && (self.precision_bits() as i64) < bits {
            self.step(bits);
        }
    }

    /// Interval Newton step `m - p(m) / p'(I)`, aiming to add about as many
    /// bits as the bracket already has. Returns false when `p'` is not
    /// bounded away from zero on the bracket or the step gains too little.
    fn newton_step(&mut self, bits: i64) -> bool {
        let CursorState::Bracket { lo, hi, k, step, .. } = &self.state else {
            return false;
        };
        let (lo, hi, k, step) = (lo.clone(), hi.clone(), *k, *step);
        let pb = self.precision_bits() as i64;
        if pb < 24 {
            return false;
        }
        let gain = (pb - 4).min(bits - pb + 2).max(1) as u32;
        let k2 = k + gain;
        let pd = k + 32 + self.growth;
        let d = Ball::eval_poly(&self.deriv, &Ball::from_dyadic_bounds(&lo, &hi, k, pd));
        let Some(dsign) = d.sign() else {
            return false;
        };
        let pp = k2 + 32 + self.growth;
        let mid2 = Integer::from(&lo + &hi);
        let v = Ball::eval_poly(&self.poly, &Ball::from_dyadic(&mid2, k + 1, pp));
        let (mut pl, mut ph) = (Integer::from(v.mid() - v.rad()), Integer::from(v.mid() + v.rad()));
        let (mut dl, mut dh) = (Integer::from(d.mid() - d.rad()), Integer::from(d.mid() + d.rad()));
        if dsign == Ordering::Less {
            (pl, ph) = (-ph, -pl);
            (dl, dh) = (-dh, -dl);
        }
        // p(m) / p'(I) in units of 2^-k2 is (P << k) / D.
        let q_lo = Integer::from(pl.clone() << k).div_floor(if pl.cmp0() == Ordering::Less { &dl } else { &dh }.clone());
        let q_hi = Integer::from(ph.clone() << k).div_ceil(if ph.cmp0() == Ordering::Less { &dh } else { &dl }.clone());
        let m = Integer::from(mid2 << (gain - 1));
        let new_lo = (Integer::from(&m - &q_hi) - 1u32).max(Integer::from(&lo << gain));
        let new_hi = (Integer::from(&m - &q_lo) + 1u32).min(Integer::from(&hi << gain));
        if new_lo >= new_hi {
            return false;
        }
        let w = Integer::from(&new_hi - &new_lo) - 1u32;
        let new_pb = i64::from(k2) - i64::from(w.significant_bits());
        if new_pb <= pb {
            return false;
        }
        self.state = CursorState::Bracket {
            lo: new_lo,
            hi: new_hi,
            k: k2,
            sign_lo: dsign.reverse(),
            step,
        };
        new_pb >= pb + i64::from(gain) / 2
    }

    /// One round of quadratic interval refinement: jump to the subinterval
    /// of width `w / 2^step` picked by the secant through the endpoints,
    /// squaring the subdivision count on success and halving its exponent
    /// on failure. With `step == 1` this is a bisection and always succeeds.
    fn step(&mut self, bits: i64) {
        if self.newton_step(bits) {
            return;
        }
        let CursorState::Bracket { lo, hi, k, sign_lo, step } = &self.state else {
            return;
        };
        let (lo, hi, k, sign_lo) = (lo.clone(), hi.clone(), *k, *sign_lo);
        let remaining = (bits - self.precision_bits() as i64).max(1) as u32;
        let nb = (*step).min(remaining.next_power_of_two()).max(1);
        let n = Integer::from(1) << nb;
        let guard = 2 * nb + self.growth + 32;
        let fa = self.approx_at(&lo, k, guard);
        let fb = self.approx_at(&hi, k, guard);
        let mut den = Integer::from(&fa - &fb);
        let mut num = Integer::from(&n * &fa);
        if den.cmp0() == Ordering::Less {
            den = -den;
            num = -num;
        }
        let j = if den == 0 {
            Integer::from(&n >> 1u32)
        } else {
            let t = Integer::from(Integer::from(&num << 1u32) + &den);
            t.div_floor(Integer::from(&den << 1u32)).clamp(&0, &n)
        };
        let width = Integer::from(&hi - &lo);
        let base = Integer::from(&lo << nb);
        let k2 = k + nb;
        let grid = |i: &Integer| Integer::from(&base + Integer::from(i * &width));
        let g = grid(&j);
        let sg = if j == 0 { sign_lo } else if j == n { sign_lo.reverse() } else { self.sign_at(&g, k2) };
        if sg == Ordering::Equal {
            self.state = CursorState::Exact(Rational::from((g, Integer::from(1) << k2)));
            return;
        }
        // Neighbouring grid point on the side of the root.
        let (j2, root_right) = if sg == sign_lo {
            (Integer::from(&j + 1), true)
        } else {
            (Integer::from(&j - 1), false)
        };
        let g2 = grid(&j2);
        let s2 = if j2 == 0 {
            sign_lo
        } else if j2 == n {
            sign_lo.reverse()
        } else {
            self.sign_at(&g2, k2)
        };
        if s2 == Ordering::Equal {
            self.state = CursorState::Exact(Rational::from((g2, Integer::from(1) << k2)));
            return;
        }
        let (new_lo, new_hi, new_sign, success) = if root_right {
            if s2 != sign_lo {
                (g, g2, sign_lo, true)
            } else {
                (g2, Integer::from(&hi << nb), sign_lo, false)
            }
        } else if s2 == sign_lo {
            (g2, g, sign_lo, true)
        } else {
            (Integer::from(&lo << nb), g2, sign_lo, false)
        };
        let next = if success { nb * 2 } else { (nb / 2).max(1) };
        self.state = CursorState::Bracket {
            lo: new_lo,
            hi: new_hi,
            k: k2,
            sign_lo: new_sign,
            step: next,
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn x(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(Var::X, c)
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_bound(&x(&[-109, 0, 114, 0, -45, 0, 4])).unwrap(), Rational::from((59, 2)));
        assert_eq!(cauchy_bound(&x(&[-2, 0, 1])).unwrap(), 3);
        assert_eq!(cauchy_bound(&x(&[0, 0, 0, 1])).unwrap(), 1);
        assert_eq!(cauchy_bound(&x(&[5])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn isolates_projection_roots() {
        let t = x(&[-109, 0, 114, 0, -45, 0, 4]);
        let roots = isolate_real_roots(&t).unwrap();
        assert_eq!(roots.len(), 2);
        let neg = Rational::from((-2858288520i64, 1_000_000_000));
        let pos = Rational::from((2858288520i64, 1_000_000_000));
        let fine = Rational::from((1, 1_000_000_000_000i64));
        let r0 = roots[0].refine(&fine);
        let r1 = roots[1].refine(&fine);
        assert!((r0.interval.midpoint() - neg).abs() < Rational::from((1, 100_000_000)));
        assert!((r1.interval.midpoint() - pos).abs() < Rational::from((1, 100_000_000)));

        let big_t = UniPoly::from_i64(Var::Y, &[-8, 0, -3, 2]);
        let roots = isolate_real_roots(&big_t).unwrap();
        assert_eq!(roots.len(), 1);
        let r = roots[0].refine(&fine);
        assert!(r.interval.width() <= fine);
        let expect = Rational::from((2273722337i64, 1_000_000_000));
        assert!((r.interval.midpoint() - expect).abs() < Rational::from((1, 1_000_000_000)));
    }

    #[test]
    fn rational_roots_and_endpoints() {
        let roots = isolate_real_roots(&x(&[-4, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        for (r, v) in roots.iter().zip([-2, 2]) {
            assert!(r.interval.contains(&Rational::from(v)));
        }
        // roots 0, 1/2, 1, 3/2 exercise the midpoint and endpoint cases
        let p = x(&[0, 3, -8, 4]).mul(&x(&[-1, 1]));
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 4);
        for (r, v) in roots.iter().zip([(0, 1), (1, 2), (1, 1), (3, 2)]) {
            let v = Rational::from(v);
            assert!(r.interval.contains(&v));
            if !r.is_exact() {
                assert_ne!(p.eval(r.interval.lo()).cmp0(), Ordering::Equal);
                assert_ne!(p.eval(r.interval.hi()).cmp0(), Ordering::Equal);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(isolate_real_roots(&x(&[1, 2, 1])), Err(Error::NotSquareFree));
        assert_eq!(isolate_real_roots(&x(&[])), Err(Error::ZeroPolynomial));
        assert!(isolate_real_roots(&x(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn refine_examples() {
        let root = IsolatedRoot {
            defining_poly: x(&[-2, 0, 1]),
            interval: RationalInterval::from_ints(1, 2),
            raw_multiplicity: 1,
            index: 0,
        };
        let t = Rational::from((1, 1024));
        let r = root.refine(&t);
        assert!(r.interval.width() <= t);
        assert!(Rational::from(r.interval.lo().square_ref()) < 2);
        assert!(Rational::from(r.interval.hi().square_ref()) > 2);
        let deep = root.refine(&crate::exact_arith::pow2(-5000));
        assert!(deep.interval.width() <= crate::exact_arith::pow2(-5000));
        assert!(Rational::from(deep.interval.lo().square_ref()) < 2);
        assert!(Rational::from(deep.interval.hi().square_ref()) > 2);

        let point = IsolatedRoot {
            defining_poly: x(&[-3, 1]),
            interval: RationalInterval::point(Rational::from(3)),
            raw_multiplicity: 1,
            index: 0,
        };
        assert_eq!(point.refine(&t), point);
    }

    #[test]
    fn non_dyadic_intervals_refine() {
        let root = IsolatedRoot {
            defining_poly: x(&[-2, 0, 1]),
            interval: RationalInterval::new(Rational::from((4, 3)), Rational::from((10, 7))),
            raw_multiplicity: 1,
            index: 0,
        };
        let r = root.refine(&Rational::from((1, 1 << 20)));
        assert!(Rational::from(r.interval.lo().square_ref()) < 2);
        assert!(Rational::from(r.interval.hi().square_ref()) > 2);
    }

    #[test]
    fn multiplicities_from_raw() {
        let c = UniPoly::from_i64(Var::Y, &[8, 0, 3, -2]);
        let raw = c.mul(&c);
        let roots = isolate_real_roots(&UniPoly::from_i64(Var::Y, &[-8, 0, -3, 2])).unwrap();
        assert_eq!(raw_multiplicity(&raw, &roots[0]).unwrap(), 2);
        let roots = isolate_real_roots(&x(&[-2, 0, 1])).unwrap();
        assert_eq!(raw_multiplicity(&x(&[-2, 0, 1]), &roots[1]).unwrap(), 1);
        // (x - 1)^3 (x + 1)
        let raw = x(&[-1, 1]).pow(3).mul(&x(&[1, 1]));
        let roots = isolate_real_roots(&x(&[-1, 0, 1])).unwrap();
        let one = roots.iter().find(|r| r.interval.contains(&Rational::from(1))).unwrap();
        assert_eq!(raw_multiplicity(&raw, one).unwrap(), 3);
    }
}

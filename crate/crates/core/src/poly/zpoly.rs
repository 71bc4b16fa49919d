//! Dense univariate polynomials over the integers, as ascending coefficient
//! slices. These are the workhorses behind gcd, Sturm chains, resultants and
//! root isolation; the rational-coefficient `UniPoly` converts into this form.

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::{Integer, Rational};

pub type ZPoly = Vec<Integer>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
}

pub fn trimmed(mut p: ZPoly) -> ZPoly {
    trim(&mut p);
    p
}

pub fn is_zero(p: &[Integer]) -> bool {
    p.iter().all(|c| *c == 0)
}

/// Degree of a trimmed polynomial; `None` for zero.
pub fn degree(p: &[Integer]) -> Option<usize> {
    p.iter().rposition(|c| *c != 0)
}

pub fn lc(p: &[Integer]) -> &Integer {
    p.last().expect("nonzero polynomial")
}

/// Non-negative gcd of the coefficients.
pub fn content(p: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for c in p {
        if *c != 0 {
            g.gcd_mut(c);
            if g == 1 {
                break;
            }
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub fn primitive(mut p: ZPoly) -> ZPoly {
    trim(&mut p);
    if p.is_empty() {
        return p;
    }
    let mut g = content(&p);
    if lc(&p).cmp0() == Ordering::Less {
        g = -g;
    }
    if g != 1 {
        for c in p.iter_mut() {
            c.div_exact_mut(&g);
        }
    }
    p
}

pub fn add(a: &[Integer], b: &[Integer]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = Integer::new();
        if let Some(x) = a.get(i) {
            c += x;
        }
        if let Some(x) = b.get(i) {
            c += x;
        }
        r.push(c);
    }
    trimmed(r)
}

pub fn sub(a: &[Integer], b: &[Integer]) -> ZPoly {
    let n = a.len().max(b.len());
    let mut r = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = Integer::new();
        if let Some(x) = a.get(i) {
            c += x;
        }
        if let Some(x) = b.get(i) {
            c -= x;
        }
        r.push(c);
    }
    trimmed(r)
}

pub fn mul(a: &[Integer], b: &[Integer]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if *y != 0 {
                r[i + j] += Integer::from(x * y);
            }
        }
    }
    trimmed(r)
}

pub fn scale(a: &[Integer], c: &Integer) -> ZPoly {
    if *c == 0 {
        return Vec::new();
    }
    a.iter().map(|x| Integer::from(x * c)).collect()
}

pub fn derivative(p: &[Integer]) -> ZPoly {
    trimmed(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| Integer::from(c * i as u32))
            .collect(),
    )
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub fn prem(a: &[Integer], b: &[Integer]) -> ZPoly {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trimmed(a.to_vec());
    let Some(da) = degree(&r) else {
        return r;
    };
    if da < db {
        // lc(b)^(0) convention is not used here: the caller scales explicitly.
        return r;
    }
    let lb = b[db].clone();
    let mut steps = da - db + 1;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            if *bj != 0 {
                r[j + shift] -= Integer::from(&lr * bj);
            }
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = Integer::from((&lb).pow(steps as u32));
        for c in r.iter_mut() {
            *c *= &f;
        }
    }
    r
}

/// Exact quotient `a / b` in `Z[x]`, or `None` when `b` does not divide `a`.
pub fn div_exact(a: &[Integer], b: &[Integer]) -> Option<ZPoly> {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trimmed(a.to_vec());
    let Some(da) = degree(&r) else {
        return Some(Vec::new());
    };
    if da < db {
        return None;
    }
    let lb = &b[db];
    let mut q = vec![Integer::new(); da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            return None;
        }
        if !r[dr].is_divisible(lb) {
            return None;
        }
        let c = Integer::from(r[dr].div_exact_ref(lb));
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            if *bj != 0 {
                r[j + shift] -= Integer::from(&c * bj);
            }
        }
        q[shift] = c;
        trim(&mut r);
    }
    Some(trimmed(q))
}

/// Primitive gcd (positive leading coefficient) by the primitive PRS.
/// `gcd(0, 0)` is the empty polynomial.
pub fn gcd(a: &[Integer], b: &[Integer]) -> ZPoly {
    let mut a = primitive(a.to_vec());
    let mut b = primitive(b.to_vec());
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![Integer::from(1)];
        }
        a = b;
        b = primitive(r);
    }
}

/// Sign of `p(v)` computed exactly.
pub fn sign_at(p: &[Integer], v: &Rational) -> Ordering {
    let Some(d) = degree(p) else {
        return Ordering::Equal;
    };
    if *v.denom() == 1 {
        return eval_int(p, v.numer()).cmp0();
    }
    // d^deg * p(n/d) = sum c_i n^i d^(deg-i); d^deg > 0.
    let (n, den) = (v.numer(), v.denom());
    let mut acc = Integer::new();
    let mut dpow = Integer::from(1);
    for c in p[..=d].iter().rev() {
        acc *= n;
        acc += Integer::from(c * &dpow);
        dpow *= den;
    }
    acc.cmp0()
}

pub fn eval_int(p: &[Integer], x: &Integer) -> Integer {
    let mut acc = Integer::new();
    for c in p.iter().rev() {
        acc *= x;
        acc += c;
    }
    acc
}

pub fn eval_rational(p: &[Integer], v: &Rational) -> Rational {
    let mut acc = Rational::new();
    for c in p.iter().rev() {
        acc *= v;
        acc += c;
    }
    acc
}

/// `p(x + 1)` in place (classic quadratic Taylor shift).
pub fn taylor_shift_one(p: &mut [Integer]) {
    let n = p.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = p[j + 1].clone();
            p[j] += t;
        }
    }
}

/// `p(x + c)` for an integer `c`.
pub fn taylor_shift(p: &[Integer], c: &Integer) -> ZPoly {
    let mut q = p.to_vec();
    let n = q.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = Integer::from(&q[j + 1] * c);
            q[j] += t;
        }
    }
    q
}

/// Sum of absolute values of the coefficients.
pub fn one_norm(p: &[Integer]) -> Integer {
    p.iter().map(|c| Integer::from(c.abs_ref())).sum()
}

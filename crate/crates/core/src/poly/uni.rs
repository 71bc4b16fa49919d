use std::cmp::Ordering;
use std::fmt;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::zpoly::{self, ZPoly};
use super::Var;
use crate::error::{Error, Result};
use crate::exact_arith::{denominator_lcm, serde_rational, RationalInterval};

/// Dense univariate polynomial with rational coefficients, ascending by
/// exponent. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniPoly {
    var: Var,
    #[serde(with = "serde_rational::vec")]
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0() == Ordering::Equal) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly {
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::new(var, vec![c])
    }

    /// The monomial `var`.
    pub fn identity(var: Var) -> Self {
        Self::from_i64(var, &[0, 1])
    }

    pub fn from_i64(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn from_integers(var: Var, coeffs: &[Integer]) -> Self {
        Self::new(var, coeffs.iter().map(|c| Rational::from(c.clone())).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn one_norm(&self) -> Rational {
        self.coeffs.iter().map(|c| Rational::from(c.abs_ref())).sum()
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= v;
            acc += c;
        }
        acc
    }

    pub fn eval_interval(&self, v: &RationalInterval) -> RationalInterval {
        let mut acc = RationalInterval::point(Rational::new());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(v).add_scalar(c);
        }
        acc
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let mut c = self.coeff(i);
                if let Some(o) = other.coeffs.get(i) {
                    c += o;
                }
                c
            })
            .collect();
        UniPoly::new(self.var, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut r = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                r[i + j] += Rational::from(a * b);
            }
        }
        UniPoly::new(self.var, r)
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut r = UniPoly::constant(self.var, Rational::from(1));
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.var, self.coeffs.iter().map(|a| Rational::from(a * c)).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rational::from(c * i as u32))
                .collect(),
        )
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::zero(self.var), self.clone());
        }
        let lc = d.coeffs[dd].clone();
        let mut q = vec![Rational::new(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = Rational::from(&r[k + dd] / &lc);
            if c.cmp0() != Ordering::Equal {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= Rational::from(&c * dj);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(self.var, q), UniPoly::new(self.var, r))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            Some(lc) => {
                let inv = Rational::from(lc.recip_ref());
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Returns `(scale, p)` with `self = scale * p`, `p` primitive over the
    /// integers with positive leading coefficient.
    pub fn primitive_integer(&self) -> (Rational, ZPoly) {
        if self.is_zero() {
            return (Rational::new(), Vec::new());
        }
        let l = denominator_lcm(self.coeffs.iter());
        let ints: ZPoly = self
            .coeffs
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&l / c.denom())))
            .collect();
        let prim = zpoly::primitive(ints.clone());
        let ratio = Rational::from((ints.last().unwrap().clone(), prim.last().unwrap().clone()));
        (ratio / l, prim)
    }

    /// Primitive integer form with positive leading coefficient.
    pub fn normalized(&self) -> UniPoly {
        let (_, p) = self.primitive_integer();
        UniPoly::from_integers(self.var, &p)
    }

    /// Integer coefficients of a polynomial that is already integral.
    pub fn integer_coeffs(&self) -> Option<ZPoly> {
        self.coeffs
            .iter()
            .map(|c| (*c.denom() == 1).then(|| c.numer().clone()))
            .collect()
    }

    /// Exact substitution `self(a + b * v)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> UniPoly {
        let lin = UniPoly::new(self.var, vec![a.clone(), b.clone()]);
        let mut acc = UniPoly::zero(self.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UniPoly::constant(self.var, c.clone()));
        }
        acc
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<(Var, u32)>, &Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| c.cmp0() != Ordering::Equal)
            .map(|(i, c)| (vec![(self.var, i as u32)], c))
            .collect();
        super::write_terms(f, &terms)
    }
}

/// Monic gcd over the rationals, via the primitive PRS over the integers.
pub fn gcd_uni(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let (_, pa) = a.primitive_integer();
    let (_, pb) = b.primitive_integer();
    let g = zpoly::gcd(&pa, &pb);
    Ok(UniPoly::from_integers(a.var, &g).monic())
}

/// `p / gcd(p, p')` as a primitive integer polynomial with positive leading
/// coefficient.
pub fn square_free_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, z) = p.primitive_integer();
    Ok(UniPoly::from_integers(p.var, &square_free_z(&z)))
}

pub(crate) fn square_free_z(p: &[Integer]) -> ZPoly {
    let d = zpoly::derivative(p);
    if d.is_empty() {
        return zpoly::primitive(p.to_vec());
    }
    let g = zpoly::gcd(p, &d);
    let q = zpoly::div_exact(p, &g).expect("gcd divides p");
    zpoly::primitive(q)
}

/// Yun's square-free decomposition: pairs `(factor, multiplicity)` with
/// pairwise coprime, square-free, primitive factors and strictly increasing
/// multiplicities, such that `p = content * prod factor^multiplicity`.
pub fn yun_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let (_, z) = p.primitive_integer();
    Ok(yun_z(&z)
        .into_iter()
        .map(|(f, m)| (UniPoly::from_integers(p.var, &f), m))
        .collect())
}

pub(crate) fn yun_z(p: &[Integer]) -> Vec<(ZPoly, u32)> {
    let p = zpoly::primitive(p.to_vec());
    let dp = zpoly::derivative(&p);
    let a0 = zpoly::gcd(&p, &dp);
    let mut b = zpoly::div_exact(&p, &a0).expect("gcd divides p");
    let mut c = zpoly::div_exact(&dp, &a0).expect("gcd divides p'");
    let mut d = zpoly::sub(&c, &zpoly::derivative(&b));
    let mut out = Vec::new();
    let mut k = 1u32;
    while zpoly::degree(&b).is_some_and(|deg| deg > 0) {
        let a = zpoly::gcd(&b, &d);
        if zpoly::degree(&a).is_some_and(|deg| deg > 0) {
            out.push((zpoly::primitive(a.clone()), k));
        }
        b = zpoly::div_exact(&b, &a).expect("gcd divides b");
        c = zpoly::div_exact(&d, &a).expect("gcd divides d");
        d = zpoly::sub(&c, &zpoly::derivative(&b));
        k += 1;
    }
    out
}

/// Sturm chain with every remainder rescaled by a positive constant to a
/// primitive integer polynomial (rescaling preserves signs).
pub(crate) fn sturm_chain(p: &[Integer]) -> Vec<ZPoly> {
    let p0 = zpoly::primitive(p.to_vec());
    let mut chain = vec![p0.clone()];
    let mut p1 = zpoly::derivative(&p0);
    if p1.is_empty() {
        return chain;
    }
    let g = zpoly::content(&p1);
    for c in p1.iter_mut() {
        c.div_exact_mut(&g);
    }
    chain.push(p1);
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        let db = zpoly::degree(b).unwrap();
        if db == 0 {
            break;
        }
        let da = zpoly::degree(a).unwrap();
        let mut r = zpoly::prem(a, b);
        if r.is_empty() {
            break;
        }
        // prem = lc(b)^(da-db+1) * rem; we need -rem up to a positive factor.
        let flip = zpoly::lc(b).cmp0() == Ordering::Less && (da - db + 1) % 2 == 1;
        if !flip {
            for c in r.iter_mut() {
                *c = Integer::from(-&*c);
            }
        }
        let g = zpoly::content(&r);
        for c in r.iter_mut() {
            c.div_exact_mut(&g);
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[ZPoly], v: &Rational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for q in chain {
        let s = zpoly::sign_at(q, v);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of a square-free `p` in the open interval
/// `(lo, hi)`, by Sturm's theorem. Endpoints must not be roots.
pub fn sturm_count(p: &UniPoly, interval: &RationalInterval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, z) = p.primitive_integer();
    sturm_count_z(&z, interval)
}

pub(crate) fn sturm_count_z(z: &[Integer], interval: &RationalInterval) -> Result<usize> {
    if zpoly::sign_at(z, interval.lo()) == Ordering::Equal
        || zpoly::sign_at(z, interval.hi()) == Ordering::Equal
    {
        return Err(Error::EndpointIsRoot);
    }
    if interval.is_point() {
        return Ok(0);
    }
    let chain = sturm_chain(z);
    let vl = sign_variations(&chain, interval.lo());
    let vh = sign_variations(&chain, interval.hi());
    Ok(vl.saturating_sub(vh))
}

//! Helpers and independent oracles shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};
use zeromatch::poly::{BiPoly, UniPoly, Var};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uni(var: Var, coeffs: &[i64]) -> UniPoly {
    UniPoly::from_i64(var, coeffs)
}

/// `prod (den * v - num)` over the given roots.
pub fn from_roots(var: Var, roots: &[Rational]) -> UniPoly {
    let mut p = UniPoly::constant(var, Rational::from(1));
    for r in roots {
        let factor = UniPoly::new(var, vec![Rational::from(-r.numer()), Rational::from(r.denom())]);
        p = p.mul(&factor);
    }
    p
}

/// Term-by-term exact evaluation, independent of the library's evaluators.
pub fn eval_terms(p: &BiPoly, x: &Rational, y: &Rational) -> Rational {
    let mut acc = Rational::new();
    for (&(i, j), c) in p.terms() {
        acc += Rational::from(c * Rational::from(x.pow(i))) * Rational::from(y.pow(j));
    }
    acc
}

/// `10^-k`.
pub fn ten_pow_neg(k: u32) -> Rational {
    Rational::from((Integer::from(1), Integer::from(10).pow(k)))
}

/// Random integer coefficient list of exact degree `deg`.
pub fn random_coeffs(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> Vec<i64> {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-bound..=bound);
    }
    c
}

/// Dense random bivariate polynomial of total degree at most `deg`.
pub fn random_bipoly(rng: &mut ChaCha8Rng, deg: u32, bound: i64) -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=deg {
        for j in 0..=deg - i {
            let c = rng.gen_range(-bound..=bound);
            if c != 0 {
                terms.push((c, i, j));
            }
        }
    }
    let p = BiPoly::from_i64_terms(&terms);
    if p.has_variables() {
        p
    } else {
        p.add(&BiPoly::var(Var::X))
    }
}

/// Distinct rational roots whose integer product polynomial has all
/// coefficients within `bound`.
pub fn random_root_set(rng: &mut ChaCha8Rng, var: Var, count: usize, bound: i64) -> Vec<Rational> {
    let pool: Vec<Rational> = [
        (0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (3, 1), (-3, 1), (1, 2), (-1, 2), (1, 3), (-1, 3),
        (3, 2), (-3, 2), (2, 3), (-2, 3), (4, 1), (-4, 1),
    ]
    .iter()
    .map(|&(n, d)| q(n, d))
    .collect();
    loop {
        let mut roots: Vec<Rational> = Vec::new();
        while roots.len() < count {
            let r = pool[rng.gen_range(0..pool.len())].clone();
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let p = from_roots(var, &roots);
        if p.coeffs().iter().all(|c| c.clone().abs() <= bound) {
            roots.sort();
            return roots;
        }
    }
}

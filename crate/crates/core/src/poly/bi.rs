use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::uni::UniPoly;
use super::zpoly::{self, ZPoly};
use super::Var;
use crate::exact_arith::{denominator_lcm, rat_pow, serde_rational, Ball, RationalInterval};

/// Sparse bivariate polynomial: exponent pair `(i, j)` of `x^i y^j` mapped to
/// a nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
    deg_x: u32,
    deg_y: u32,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::X => Self::from_terms([((1, 0), Rational::from(1))]),
            Var::Y => Self::from_terms([((0, 1), Rational::from(1))]),
        }
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut map: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (k, c) in terms {
            *map.entry(k).or_default() += c;
        }
        map.retain(|_, c| c.cmp0() != Ordering::Equal);
        Self::from_map(map)
    }

    pub fn from_i64_terms(terms: &[(i64, u32, u32)]) -> Self {
        Self::from_terms(terms.iter().map(|&(c, i, j)| ((i, j), Rational::from(c))))
    }

    fn from_map(terms: BTreeMap<(u32, u32), Rational>) -> Self {
        let deg_x = terms.keys().map(|k| k.0).max().unwrap_or(0);
        let deg_y = terms.keys().map(|k| k.1).max().unwrap_or(0);
        BiPoly {
            terms,
            deg_x,
            deg_y,
        }
    }

    /// Lifts a univariate polynomial.
    pub fn from_uni(p: &UniPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            let key = match p.var() {
                Var::X => (k, 0),
                Var::Y => (0, k),
            };
            (key, c.clone())
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        match v {
            Var::X => self.deg_x,
            Var::Y => self.deg_y,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    /// True when some term has a positive power of `x` or `y`.
    pub fn has_variables(&self) -> bool {
        self.deg_x > 0 || self.deg_y > 0
    }

    pub fn one_norm(&self) -> Rational {
        self.terms.values().map(|c| Rational::from(c.abs_ref())).sum()
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, Rational::from(-c)))
                .collect(),
            deg_x: self.deg_x,
            deg_y: self.deg_y,
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        Self::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                *out.entry((i + k, j + l)).or_default() += Rational::from(a * b);
            }
        }
        out.retain(|_, c| c.cmp0() != Ordering::Equal);
        Self::from_map(out)
    }

    pub fn pow(&self, k: u32) -> BiPoly {
        let mut result = BiPoly::constant(Rational::from(1));
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        Self::from_terms(self.terms.iter().map(|(k, a)| (*k, Rational::from(a * c))))
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> BiPoly {
        Self::from_terms(self.terms.iter().filter_map(|(&(i, j), c)| match v {
            Var::X if i > 0 => Some(((i - 1, j), Rational::from(c * i))),
            Var::Y if j > 0 => Some(((i, j - 1), Rational::from(c * j))),
            _ => None,
        }))
    }

    pub fn eval_exact(&self, x0: &Rational, y0: &Rational) -> Rational {
        // Horner in y over Horner-in-x rows.
        let rows = self.rows_in_y();
        let mut acc = Rational::new();
        for row in rows.iter().rev() {
            acc *= y0;
            let mut r = Rational::new();
            for c in row.iter().rev() {
                r *= x0;
                r += c;
            }
            acc += r;
        }
        acc
    }

    /// Enclosure of `{p(x, y) : x in xs, y in ys}` by interval Horner
    /// evaluation nested by `y`, then `x`.
    pub fn eval_interval(&self, xs: &RationalInterval, ys: &RationalInterval) -> RationalInterval {
        let rows = self.rows_in_y();
        let zero = RationalInterval::point(Rational::new());
        let mut acc = zero.clone();
        for row in rows.iter().rev() {
            let mut r = zero.clone();
            for c in row.iter().rev() {
                r = r.mul(xs).add_scalar(c);
            }
            acc = acc.mul(ys).add(&r);
        }
        acc
    }

    /// `rows[j][i]` = coefficient of `x^i y^j`, dense.
    fn rows_in_y(&self) -> Vec<Vec<Rational>> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut rows = vec![vec![Rational::new(); self.deg_x as usize + 1]; self.deg_y as usize + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows
    }

    /// Substitutes `v = value`, leaving a polynomial in the other variable.
    pub fn specialize(&self, v: Var, value: &Rational) -> UniPoly {
        let other = v.other();
        let n = self.degree_in(other) as usize + 1;
        let mut coeffs = vec![Rational::new(); n];
        for (&(i, j), c) in &self.terms {
            let (fixed, free) = match v {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            let mut t = rat_pow(value, fixed as u32);
            t *= c;
            coeffs[free as usize] += t;
        }
        UniPoly::new(other, coeffs)
    }

    /// Returns `(scale, p)` with `self = scale * p`, `p` having coprime
    /// integer coefficients. The sign of `self` is kept.
    pub fn primitive_integer(&self) -> (Rational, BTreeMap<(u32, u32), Integer>) {
        if self.is_zero() {
            return (Rational::new(), BTreeMap::new());
        }
        let l = denominator_lcm(self.terms.values());
        let mut ints: BTreeMap<(u32, u32), Integer> = self
            .terms
            .iter()
            .map(|(k, c)| (*k, Integer::from(c.numer() * Integer::from(&l / c.denom()))))
            .collect();
        let mut g = Integer::new();
        for c in ints.values() {
            g.gcd_mut(c);
        }
        for c in ints.values_mut() {
            c.div_exact_mut(&g);
        }
        (Rational::from((g, l)), ints)
    }

    /// Primitive integer form, as a `BiPoly`.
    pub fn normalized(&self) -> BiPoly {
        let (_, ints) = self.primitive_integer();
        Self::from_terms(ints.into_iter().map(|(k, c)| (k, Rational::from(c))))
    }

    /// Coefficients with respect to `v`: entry `k` is the coefficient of
    /// `v^k`, a dense integer polynomial in the other variable. The
    /// polynomial must have integer coefficients.
    pub fn integer_coeffs_in(&self, v: Var) -> Vec<ZPoly> {
        let deg_v = self.degree_in(v) as usize;
        let deg_o = self.degree_in(v.other()) as usize;
        let mut out = vec![vec![Integer::new(); deg_o + 1]; deg_v + 1];
        for (&(i, j), c) in &self.terms {
            debug_assert!(*c.denom() == 1, "integer coefficients required");
            let (kv, ko) = match v {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            out[kv as usize][ko as usize] = c.numer().clone();
        }
        for p in out.iter_mut() {
            zpoly::trim(p);
        }
        out
    }
}

/// Integer bivariate polynomial laid out for fast ball evaluation: rows by
/// power of `y`, each a dense integer polynomial in `x`.
#[derive(Clone, Debug)]
pub struct IntRows {
    rows: Vec<ZPoly>,
}

impl IntRows {
    pub fn new(p: &BiPoly) -> Self {
        IntRows {
            rows: p.integer_coeffs_in(Var::Y),
        }
    }

    /// Powers of `x` are shared by all rows, so the full products are
    /// `deg_x + deg_y`.
    pub fn eval_ball(&self, x: &Ball, y: &Ball) -> Ball {
        let dx = self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0);
        let pw = Ball::powers(x, dx);
        let mut acc = Ball::zero(x.prec());
        let mut first = true;
        for row in self.rows.iter().rev() {
            let r = Ball::combine(row, &pw);
            acc = if first { r } else { acc.mul(y).add(&r) };
            first = false;
        }
        acc
    }

    /// Bit length of an upper bound for `sum |a_ij| (i + j + 1) R^(i + j)`
    /// with `R = 2^radius_bits`: a Lipschitz-type bound used to choose
    /// working precision.
    pub fn growth_bits(&self, radius_bits: u32) -> u32 {
        let mut total = Integer::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if *c != 0 {
                    let e = (i + j) as u32;
                    let t = Integer::from(c.abs_ref()) * (e + 1) << (e * radius_bits);
                    total += t;
                }
            }
        }
        total.significant_bits()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Graded by total degree, then by power of x, descending.
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let terms: Vec<(Vec<(Var, u32)>, &Rational)> = keys
            .into_iter()
            .map(|k| (vec![(Var::X, k.0), (Var::Y, k.1)], &self.terms[k]))
            .collect();
        super::write_terms(f, &terms)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: u32,
    j: u32,
    #[serde(with = "serde_rational")]
    c: Rational,
}

impl Serialize for BiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| TermRepr { i, j, c: c.clone() })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        Ok(BiPoly::from_terms(terms.into_iter().map(|t| ((t.i, t.j), t.c))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_f() -> BiPoly {
        BiPoly::from_i64_terms(&[(1, 2, 0), (-1, 0, 2), (-3, 0, 0)])
    }

    fn worked_g() -> BiPoly {
        BiPoly::from_i64_terms(&[(3, 2, 0), (-2, 0, 3), (-1, 0, 0)])
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn norms_and_degrees() {
        assert_eq!(worked_f().one_norm(), 5);
        assert_eq!(worked_g().one_norm(), 6);
        assert_eq!((worked_g().deg_x(), worked_g().deg_y()), (2, 3));
        assert_eq!(BiPoly::zero().one_norm(), 0);
    }

    #[test]
    fn exact_evaluation() {
        assert_eq!(worked_f().eval_exact(&q(2, 1), &q(1, 1)), 0);
        assert_eq!(worked_g().eval_exact(&q(1, 1), &q(1, 1)), 0);
        assert_eq!(worked_f().eval_exact(&q(1, 2), &q(1, 3)), q(-103, 36));
    }

    #[test]
    fn interval_evaluation() {
        let pt = |v: i64| RationalInterval::point(Rational::from(v));
        assert_eq!(worked_f().eval_interval(&pt(2), &pt(1)), RationalInterval::from_ints(0, 0));
        let xy = BiPoly::from_i64_terms(&[(1, 1, 0), (-1, 0, 1)]);
        let unit = RationalInterval::from_ints(0, 1);
        assert_eq!(xy.eval_interval(&unit, &unit), RationalInterval::from_ints(-1, 1));
        let r = worked_f().eval_interval(&RationalInterval::new(q(7, 5), q(3, 2)), &pt(0));
        assert!(RationalInterval::new(q(-26, 25), q(-3, 4)).is_subset_of(&r));
    }

    #[test]
    fn ball_evaluation_encloses() {
        let rows = IntRows::new(&worked_g());
        let x = Ball::from_rational(&q(7, 3), 50);
        let y = Ball::from_rational(&q(-5, 11), 50);
        let v = rows.eval_ball(&x, &y);
        assert!(v.contains(&worked_g().eval_exact(&q(7, 3), &q(-5, 11))));
    }

    #[test]
    fn specialize_and_derivative() {
        let u = worked_f().specialize(Var::X, &q(2, 1));
        assert_eq!(u, UniPoly::from_i64(Var::Y, &[1, 0, -1]));
        let dy = worked_g().derivative(Var::Y);
        assert_eq!(dy, BiPoly::from_i64_terms(&[(-6, 0, 2)]));
    }

    #[test]
    fn primitive_integer_form() {
        let p = BiPoly::from_terms([((1, 0), q(2, 3)), ((0, 1), q(-4, 9))]);
        let (s, ints) = p.primitive_integer();
        assert_eq!(s, q(2, 9));
        assert_eq!(ints[&(1, 0)], 3);
        assert_eq!(ints[&(0, 1)], -2);
    }

    #[test]
    fn display_and_serde() {
        assert_eq!(worked_f().to_string(), "x^2 - y^2 - 3");
        assert_eq!(worked_g().to_string(), "-2*y^3 + 3*x^2 - 1");
        let s = serde_json::to_string(&worked_g()).unwrap();
        let back: BiPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, worked_g());
    }
}

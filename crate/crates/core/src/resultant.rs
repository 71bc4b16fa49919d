//! Elimination of one variable by Sylvester resultants, and removal of the
//! repeated factors the projection introduces.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::rat_pow;
use crate::poly::zpoly::{self, ZPoly};
use crate::poly::{square_free_part, BiPoly, UniPoly, Var};

/// Sylvester matrix of `f` and `g` with respect to an eliminated variable `v`.
///
/// Rows: `deg_v g` shifted copies of the coefficients of `f` (descending
/// powers of `v`), then `deg_v f` shifted copies of those of `g`. Entries are
/// polynomials in the surviving variable. Internally the matrix is built
/// from the primitive integer forms of `f` and `g`; `scale` carries the
/// factor relating its determinant to the resultant of the original inputs.
#[derive(Clone, Debug)]
pub struct SylvesterMatrix {
    surviving: Var,
    rows: Vec<Vec<ZPoly>>,
    scale: Rational,
}

impl SylvesterMatrix {
    pub fn new(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<Self> {
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let df = f.degree_in(eliminate) as usize;
        let dg = g.degree_in(eliminate) as usize;
        if df == 0 && dg == 0 {
            return Err(Error::DegreeZeroInEliminatedVar(eliminate));
        }
        let (sf, fi) = integer_form(f);
        let (sg, gi) = integer_form(g);
        let rows = sylvester_rows(&fi.integer_coeffs_in(eliminate), &gi.integer_coeffs_in(eliminate));
        let scale = rat_pow(&sf, dg as u32) * rat_pow(&sg, df as u32);
        Ok(SylvesterMatrix {
            surviving: eliminate.other(),
            rows,
            scale,
        })
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    /// Entries of the integer-normalized matrix.
    pub fn entries(&self) -> Vec<Vec<UniPoly>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| UniPoly::from_integers(self.surviving, e)).collect())
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination over `Z[v]`.
    pub fn det_bareiss(&self) -> UniPoly {
        let d = bareiss_det(self.rows.clone());
        UniPoly::from_integers(self.surviving, &d).scale(&self.scale)
    }
}

/// Sylvester matrix of two polynomials given by their (ascending)
/// coefficient lists, each coefficient an integer polynomial.
pub(crate) fn sylvester_rows(cf: &[ZPoly], cg: &[ZPoly]) -> Vec<Vec<ZPoly>> {
    let df = cf.len() - 1;
    let dg = cg.len() - 1;
    let n = df + dg;
    let mut rows = vec![vec![ZPoly::new(); n]; n];
    for r in 0..dg {
        for k in 0..=df {
            rows[r][r + df - k] = cf[k].clone();
        }
    }
    for r in 0..df {
        for k in 0..=dg {
            rows[dg + r][r + dg - k] = cg[k].clone();
        }
    }
    rows
}

fn integer_form(p: &BiPoly) -> (Rational, BiPoly) {
    let (s, ints) = p.primitive_integer();
    (
        s,
        BiPoly::from_terms(ints.into_iter().map(|(k, c)| (k, Rational::from(c)))),
    )
}

/// Bareiss elimination on a square matrix of integer polynomials.
pub(crate) fn bareiss_det(mut m: Vec<Vec<ZPoly>>) -> ZPoly {
    let n = m.len();
    if n == 0 {
        return vec![Integer::from(1)];
    }
    let mut negate = false;
    let mut prev: ZPoly = vec![Integer::from(1)];
    for k in 0..n - 1 {
        if zpoly::is_zero(&m[k][k]) {
            let Some(p) = (k + 1..n).find(|&i| !zpoly::is_zero(&m[i][k])) else {
                return Vec::new();
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = zpoly::mul(pivot, &row[j]);
                if !factor.is_empty() && !pivot_row[j].is_empty() {
                    v = zpoly::sub(&v, &zpoly::mul(&factor, &pivot_row[j]));
                }
                row[j] = if prev.len() == 1 && prev[0] == 1 {
                    v
                } else {
                    zpoly::div_exact(&v, &prev).expect("Bareiss division is exact")
                };
            }
        }
        prev = m[k][k].clone();
    }
    let mut d = std::mem::take(&mut m[n - 1][n - 1]);
    if negate {
        for c in d.iter_mut() {
            *c = Integer::from(-&*c);
        }
    }
    zpoly::trimmed(d)
}

/// Polynomial in the eliminated variable with coefficients in `Z[v]`.
type NestedPoly = Vec<ZPoly>;

fn nested_degree(p: &NestedPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_empty())
}

fn nested_prem(a: &NestedPoly, b: &NestedPoly) -> NestedPoly {
    let db = nested_degree(b).expect("nonzero divisor");
    let mut r = a.clone();
    let da = nested_degree(&r).unwrap_or(0);
    let lb = b[db].clone();
    let mut steps = da + 1 - db;
    while let Some(dr) = nested_degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = zpoly::mul(c, &lb);
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_empty() {
                r[j + shift] = zpoly::sub(&r[j + shift], &zpoly::mul(&lr, bj));
            }
        }
        r.truncate(dr.max(1));
        while r.len() > 1 && r.last().is_some_and(|c| c.is_empty()) {
            r.pop();
        }
        steps -= 1;
    }
    if steps > 0 {
        let f = zpoly_pow(&lb, steps);
        for c in r.iter_mut() {
            *c = zpoly::mul(c, &f);
        }
    }
    r
}

fn zpoly_pow(p: &[Integer], k: usize) -> ZPoly {
    let mut r = vec![Integer::from(1)];
    for _ in 0..k {
        r = zpoly::mul(&r, p);
    }
    r
}

/// Resultant by the subresultant PRS over `Z[v]` (an independent route to
/// the Sylvester determinant).
fn subresultant_nested(a: NestedPoly, b: NestedPoly) -> ZPoly {
    let (Some(mut da), Some(mut db)) = (nested_degree(&a), nested_degree(&b)) else {
        return Vec::new();
    };
    let (mut a, mut b) = (a, b);
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        negate = (da * db) % 2 == 1;
    }
    if db == 0 {
        let r = zpoly_pow(&b[0], da);
        return if negate { zpoly::scale(&r, &Integer::from(-1)) } else { r };
    }
    let mut g: ZPoly = vec![Integer::from(1)];
    let mut h: ZPoly = vec![Integer::from(1)];
    loop {
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = nested_prem(&a, &b);
        a = b;
        let divisor = zpoly::mul(&g, &zpoly_pow(&h, delta));
        b = r
            .iter()
            .map(|c| zpoly::div_exact(c, &divisor).expect("subresultant division is exact"))
            .collect();
        g = a[nested_degree(&a).unwrap()].clone();
        h = if delta == 0 {
            h
        } else {
            zpoly::div_exact(&zpoly_pow(&g, delta), &zpoly_pow(&h, delta - 1))
                .expect("subresultant division is exact")
        };
        da = nested_degree(&a).unwrap();
        match nested_degree(&b) {
            None => return Vec::new(),
            Some(0) => {
                db = 0;
                let _ = db;
                break;
            }
            Some(d) => db = d,
        }
    }
    let lb = b[0].clone();
    let res = zpoly::div_exact(&zpoly_pow(&lb, da), &zpoly_pow(&h, da - 1))
        .expect("subresultant division is exact");
    if negate {
        zpoly::scale(&res, &Integer::from(-1))
    } else {
        res
    }
}

/// `Res_v(f, g)` as a polynomial in the other variable: the determinant of
/// the Sylvester matrix, computed by Bareiss elimination. A polynomial that
/// does not involve `v` counts as degree 0, giving `Res_v(f, g) = f^(deg_v g)`.
pub fn resultant(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<UniPoly> {
    Ok(SylvesterMatrix::new(f, g, eliminate)?.det_bareiss())
}

/// Same resultant through the subresultant PRS.
pub fn resultant_subresultant(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<UniPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let df = f.degree_in(eliminate) as usize;
    let dg = g.degree_in(eliminate) as usize;
    if df == 0 && dg == 0 {
        return Err(Error::DegreeZeroInEliminatedVar(eliminate));
    }
    let (sf, fi) = integer_form(f);
    let (sg, gi) = integer_form(g);
    let r = subresultant_nested(fi.integer_coeffs_in(eliminate), gi.integer_coeffs_in(eliminate));
    let scale = rat_pow(&sf, dg as u32) * rat_pow(&sg, df as u32);
    Ok(UniPoly::from_integers(eliminate.other(), &r).scale(&scale))
}

/// A projection of the system onto one axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    /// The resultant as computed.
    pub raw: UniPoly,
    /// Its primitive, square-free part with positive leading coefficient.
    pub square_free: UniPoly,
}

/// Resultant with repeated factors and content removed. A resultant that
/// vanishes identically means `f` and `g` share a curve component, so the
/// system has infinitely many solutions.
pub fn no_extr_res(f: &BiPoly, g: &BiPoly, eliminate: Var) -> Result<Projection> {
    let raw = resultant(f, g, eliminate)?;
    if raw.is_zero() {
        return Err(Error::NotZeroDimensional(eliminate));
    }
    let square_free = square_free_part(&raw)?;
    Ok(Projection { raw, square_free })
}

/// Both projections, computed concurrently.
pub fn project(f: &BiPoly, g: &BiPoly) -> Result<(Projection, Projection)> {
    let (px, py) = crate::par::join(|| no_extr_res(f, g, Var::Y), || no_extr_res(f, g, Var::X));
    Ok((px?, py?))
}

/// Univariate resultant over the rationals by the Euclidean remainder
/// recurrence `Res(A, B) = (-1)^(ab) lc(B)^(a - deg R) Res(B, R)`.
pub fn univariate_resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::new();
    }
    let da = a.deg();
    let db = b.deg();
    if db == 0 {
        return rat_pow(&b.coeff(0), da as u32);
    }
    if da == 0 {
        return rat_pow(&a.coeff(0), db as u32);
    }
    let (_, r) = a.div_rem(b);
    if r.is_zero() {
        return Rational::new();
    }
    let dr = r.deg();
    let mut res = univariate_resultant(b, &r);
    res *= rat_pow(b.leading_coeff().unwrap(), (da - dr) as u32);
    if (da * db) % 2 == 1 {
        res = -res;
    }
    res
}

/// Checks `Res_y(f, g)(x0) == Res_y(f(x0, y), g(x0, y))`, which holds
/// whenever neither leading coefficient in `y` vanishes at `x0`.
pub fn specialization_check(f: &BiPoly, g: &BiPoly, x0: &Rational) -> Result<bool> {
    let fy = f.specialize(Var::X, x0);
    let gy = g.specialize(Var::X, x0);
    if fy.deg() != f.deg_y() as usize || gy.deg() != g.deg_y() as usize || fy.is_zero() || gy.is_zero() {
        return Err(Error::LeadingCoefficientVanishes);
    }
    let t = resultant(f, g, Var::Y)?;
    Ok(t.eval(x0) == univariate_resultant(&fy, &gy))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> (BiPoly, BiPoly) {
        (
            BiPoly::from_i64_terms(&[(1, 2, 0), (-1, 0, 2), (-3, 0, 0)]),
            BiPoly::from_i64_terms(&[(3, 2, 0), (-2, 0, 3), (-1, 0, 0)]),
        )
    }

    #[test]
    fn worked_example_projections() {
        let (f, g) = worked();
        let t = resultant(&f, &g, Var::Y).unwrap();
        assert_eq!(t, UniPoly::from_i64(Var::X, &[-109, 0, 114, 0, -45, 0, 4]));
        let big_t = resultant(&f, &g, Var::X).unwrap();
        let c = UniPoly::from_i64(Var::Y, &[8, 0, 3, -2]);
        assert_eq!(big_t, c.mul(&c));
        assert_eq!(resultant_subresultant(&f, &g, Var::Y).unwrap(), t);
        assert_eq!(resultant_subresultant(&f, &g, Var::X).unwrap(), big_t);
    }

    #[test]
    fn linear_pair() {
        let f = BiPoly::from_i64_terms(&[(1, 1, 0), (-1, 0, 1)]);
        let g = BiPoly::from_i64_terms(&[(1, 1, 0), (1, 0, 1), (-2, 0, 0)]);
        assert_eq!(resultant(&f, &g, Var::Y).unwrap(), UniPoly::from_i64(Var::X, &[2, -2]));
    }

    #[test]
    fn no_extraneous_factors() {
        let (f, g) = worked();
        let py = no_extr_res(&f, &g, Var::X).unwrap();
        assert_eq!(py.square_free, UniPoly::from_i64(Var::Y, &[-8, 0, -3, 2]));
        let px = no_extr_res(&f, &g, Var::Y).unwrap();
        assert_eq!(px.square_free, UniPoly::from_i64(Var::X, &[-109, 0, 114, 0, -45, 0, 4]));
        let l = BiPoly::from_i64_terms(&[(1, 1, 0), (-1, 0, 1)]);
        assert_eq!(no_extr_res(&l, &l, Var::Y), Err(Error::NotZeroDimensional(Var::Y)));
    }

    #[test]
    fn degree_zero_in_eliminated_variable() {
        // f free of y: Res_y(f, g) = f^(deg_y g).
        let f = BiPoly::from_i64_terms(&[(1, 2, 0), (-3, 1, 0), (2, 0, 0)]);
        let g = BiPoly::from_i64_terms(&[(1, 0, 2), (-7, 0, 1), (12, 0, 0)]);
        let t = resultant(&f, &g, Var::Y).unwrap();
        let fx = UniPoly::from_i64(Var::X, &[2, -3, 1]);
        assert_eq!(t, fx.pow(2));
        assert_eq!(resultant_subresultant(&f, &g, Var::Y).unwrap(), t);
        let x_only = BiPoly::from_i64_terms(&[(1, 1, 0), (-1, 0, 0)]);
        assert_eq!(
            resultant(&x_only, &f, Var::Y),
            Err(Error::DegreeZeroInEliminatedVar(Var::Y))
        );
    }

    #[test]
    fn rational_coefficients_scale_correctly() {
        // Res_y(f/2, g) = (1/2)^(deg_y g) Res_y(f, g)
        let (f, g) = worked();
        let half = f.scale(&Rational::from((1, 2)));
        let t = resultant(&f, &g, Var::Y).unwrap();
        let th = resultant(&half, &g, Var::Y).unwrap();
        assert_eq!(th, t.scale(&Rational::from((1, 8))));
    }

    #[test]
    fn specialization_examples() {
        let (f, g) = worked();
        assert!(specialization_check(&f, &g, &Rational::from(0)).unwrap());
        assert!(specialization_check(&f, &g, &Rational::from(1)).unwrap());
        let f2 = BiPoly::from_i64_terms(&[(1, 1, 1), (-1, 0, 0)]);
        let g2 = BiPoly::from_i64_terms(&[(1, 0, 1), (-1, 0, 0)]);
        assert_eq!(
            specialization_check(&f2, &g2, &Rational::from(0)),
            Err(Error::LeadingCoefficientVanishes)
        );
    }

    #[test]
    fn sylvester_layout() {
        let (f, g) = worked();
        let m = SylvesterMatrix::new(&f, &g, Var::Y).unwrap();
        assert_eq!(m.dimension(), 5);
        let e = m.entries();
        // first row: f's coefficients in y, descending: -1, 0, x^2 - 3
        assert_eq!(e[0][0], UniPoly::from_i64(Var::X, &[-1]));
        assert_eq!(e[0][2], UniPoly::from_i64(Var::X, &[-3, 0, 1]));
        // row 3: g's coefficients, descending: -2, 0, 0, 3x^2 - 1
        assert_eq!(e[3][0], UniPoly::from_i64(Var::X, &[-2]));
        assert_eq!(e[3][3], UniPoly::from_i64(Var::X, &[-1, 0, 3]));
    }
}

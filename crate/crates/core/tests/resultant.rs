mod common;

use common::*;
use proptest::prelude::*;
use rug::Rational;
use zeromatch::poly::{gcd_uni, zpoly, BiPoly, Var};
use zeromatch::resultant::{no_extr_res, resultant, resultant_subresultant, specialization_check, SylvesterMatrix};
use zeromatch::Error;

fn bipoly(max_deg: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((-9i64..=9, 0..=max_deg, 0..=max_deg), 1..7).prop_filter_map("no variables", |t| {
        let p = BiPoly::from_i64_terms(&t);
        p.has_variables().then_some(p)
    })
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Rational::from((n, d)))
}

/// `p - p(x0, y0)`, which vanishes at `(x0, y0)`.
fn through(p: &BiPoly, x0: &Rational, y0: &Rational) -> BiPoly {
    p.sub(&BiPoly::constant(p.eval_exact(x0, y0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn swapping_arguments_flips_sign(f in bipoly(3), g in bipoly(3), v in prop_oneof![Just(Var::X), Just(Var::Y)]) {
        let ab = resultant(&f, &g, v);
        let ba = resultant(&g, &f, v);
        match (ab, ba) {
            (Ok(ab), Ok(ba)) => {
                let odd = f.degree_in(v) * g.degree_in(v) % 2 == 1;
                prop_assert_eq!(ab, if odd { ba.neg() } else { ba });
            }
            (Err(e1), Err(e2)) => prop_assert_eq!(e1, e2),
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn bareiss_matches_subresultant(f in bipoly(3), g in bipoly(3)) {
        prop_assume!(f.deg_y() + g.deg_y() > 0);
        let det = SylvesterMatrix::new(&f, &g, Var::Y).unwrap().det_bareiss();
        prop_assert_eq!(&det, &resultant_subresultant(&f, &g, Var::Y).unwrap());
        prop_assert_eq!(det, resultant(&f, &g, Var::Y).unwrap());
    }

    #[test]
    fn specialization_commutes(f in bipoly(3), g in bipoly(3), x0 in small_rat()) {
        match specialization_check(&f, &g, &x0) {
            Ok(ok) => prop_assert!(ok),
            Err(Error::LeadingCoefficientVanishes | Error::DegreeZeroInEliminatedVar(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn projections_vanish_at_common_roots(p in bipoly(3), q in bipoly(3), x0 in small_rat(), y0 in small_rat()) {
        let (f, g) = (through(&p, &x0, &y0), through(&q, &x0, &y0));
        prop_assume!(f.has_variables() && g.has_variables());
        for (v, at) in [(Var::Y, &x0), (Var::X, &y0)] {
            match no_extr_res(&f, &g, v) {
                Ok(pr) => {
                    prop_assert_eq!(pr.raw.eval(at), Rational::new());
                    prop_assert_eq!(pr.square_free.eval(at), Rational::new());
                }
                Err(Error::NotZeroDimensional(_) | Error::DegreeZeroInEliminatedVar(_)) => {}
                Err(e) => prop_assert!(false, "{}", e),
            }
        }
    }

    #[test]
    fn projection_is_primitive_and_square_free(f in bipoly(3), g in bipoly(3)) {
        let pr = match no_extr_res(&f, &g, Var::Y) {
            Ok(pr) => pr,
            Err(_) => return Ok(()),
        };
        let sf = &pr.square_free;
        if !sf.is_constant() {
            prop_assert!(gcd_uni(sf, &sf.derivative()).unwrap().is_constant());
        }
        let z = sf.integer_coeffs().expect("integer coefficients");
        prop_assert_eq!(zpoly::content(&z), 1);
        prop_assert!(sf.leading_coeff().unwrap().cmp0().is_gt());
        let (_, rem) = pr.raw.div_rem(sf);
        prop_assert!(rem.is_zero());
    }
}

#[test]
fn random_dense_systems_specialize() {
    let mut r = rng(11);
    let mut checked = 0;
    while checked < 100 {
        let f = random_bipoly(&mut r, 4, 20);
        let g = random_bipoly(&mut r, 4, 20);
        let x0 = q(rand::Rng::gen_range(&mut r, -20..=20), rand::Rng::gen_range(&mut r, 1..=5));
        match specialization_check(&f, &g, &x0) {
            Ok(ok) => {
                assert!(ok, "{f}; {g} at {x0}");
                checked += 1;
            }
            Err(Error::LeadingCoefficientVanishes | Error::DegreeZeroInEliminatedVar(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn shared_factor_is_not_zero_dimensional() {
    let h = BiPoly::from_i64_terms(&[(1, 1, 0), (1, 0, 1), (-1, 0, 0)]);
    let f = h.mul(&BiPoly::var(Var::X));
    let g = h.mul(&BiPoly::var(Var::Y).add(&BiPoly::constant(q(2, 1))));
    assert_eq!(no_extr_res(&f, &g, Var::Y), Err(Error::NotZeroDimensional(Var::Y)));
}

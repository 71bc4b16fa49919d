mod common;

use proptest::prelude::*;
use rug::ops::Pow;
use rug::Rational;
use zeromatch::exact_arith::{
    floor_log10, interval_add, interval_mul, interval_pow, parse_decimal, parse_rational, to_decimal, RationalInterval,
};

fn rat() -> impl Strategy<Value = Rational> {
    (-1000i64..=1000, 1i64..=60).prop_map(|(n, d)| Rational::from((n, d)))
}

/// An interval together with a point inside it.
fn interval_with_point() -> impl Strategy<Value = (RationalInterval, Rational)> {
    (rat(), rat(), 0u32..=16).prop_map(|(a, b, t)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let v = Rational::from(&lo + Rational::from(&hi - &lo) * Rational::from((t, 16)));
        (RationalInterval::new(lo, hi), v)
    })
}

fn canonical(v: &Rational) -> bool {
    *v.denom() > 0 && v.numer().clone().gcd(v.denom()) == 1
}

/// Lower half of an interval.
fn halve(a: &RationalInterval) -> RationalInterval {
    RationalInterval::new(a.lo().clone(), a.midpoint())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn add_then_sub_is_identity(a in rat(), b in rat()) {
        let s = Rational::from(&a + &b);
        prop_assert!(canonical(&s));
        prop_assert_eq!(Rational::from(&s - &b), a);
    }

    #[test]
    fn results_stay_canonical(a in rat(), b in rat(), k in 0u32..6) {
        prop_assert!(canonical(&Rational::from(&a * &b)));
        prop_assert!(canonical(&Rational::from(&a - &b)));
        prop_assert!(canonical(&zeromatch::exact_arith::rat_pow(&a, k)));
        if b != 0 {
            prop_assert!(canonical(&Rational::from(&a / &b)));
        }
    }

    #[test]
    fn inclusion_isotonicity((a, x) in interval_with_point(), (b, y) in interval_with_point(), k in 0u32..7) {
        prop_assert!(interval_add(&a, &b).contains(&Rational::from(&x + &y)));
        prop_assert!(a.sub(&b).contains(&Rational::from(&x - &y)));
        prop_assert!(interval_mul(&a, &b).contains(&Rational::from(&x * &y)));
        prop_assert!(interval_pow(&a, k).contains(&zeromatch::exact_arith::rat_pow(&x, k)));
    }

    #[test]
    fn narrower_inputs_never_widen_outputs((a, _) in interval_with_point(), (b, _) in interval_with_point(), k in 1u32..7) {
        let (ha, hb) = (halve(&a), halve(&b));
        prop_assert!(interval_mul(&ha, &hb).width() <= interval_mul(&a, &b).width());
        prop_assert!(interval_pow(&ha, k).width() <= interval_pow(&a, k).width());
    }

    #[test]
    fn rational_text_round_trip(a in rat()) {
        prop_assert_eq!(parse_rational(&a.to_string()), Some(a));
    }

    #[test]
    fn decimal_is_within_half_unit(a in rat(), digits in 1u32..20) {
        prop_assume!(a != 0);
        let text = to_decimal(&a, digits);
        let back = parse_decimal(&text).unwrap();
        let e = floor_log10(&Rational::from(a.abs_ref()));
        let unit = pow10(e + 1 - i64::from(digits));
        prop_assert!(Rational::from(&back - &a).abs() * 2u32 <= unit, "{} -> {}", a, text);
    }
}

fn pow10(k: i64) -> Rational {
    if k >= 0 {
        Rational::from(rug::Integer::from(10).pow(k as u32))
    } else {
        common::ten_pow_neg((-k) as u32)
    }
}

#[test]
fn decimal_rounding_carries() {
    assert_eq!(to_decimal(&Rational::from((99999, 10000)), 3), "10.0");
    assert_eq!(to_decimal(&Rational::from((-1, 8)), 2), "-0.13");
}

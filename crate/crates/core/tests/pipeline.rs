mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use rug::Rational;
use zeromatch::bench::{bench_generate, generate_instance, BenchConfig, Family};
use zeromatch::exact_arith::{floor_log10, parse_decimal, pow2};
use zeromatch::pipeline::{parse_system, solve, RootReport, SolveReport, SystemInput};
use zeromatch::Error;

fn random_input(seed: u64) -> SystemInput {
    let mut r = rng(seed);
    let (df, dg) = (r.gen_range(1..=3), r.gen_range(1..=3));
    SystemInput::new(random_bipoly(&mut r, df, 9), random_bipoly(&mut r, dg, 9))
}

/// Unit of the last printed digit.
fn last_digit_unit(v: &Rational, digits: u32) -> Rational {
    let k = floor_log10(&Rational::from(v.abs_ref())) + 1 - i64::from(digits);
    if k >= 0 {
        Rational::from(rug::Integer::from(10).pow(k as u32))
    } else {
        ten_pow_neg((-k) as u32)
    }
}

fn check_root(root: &RootReport, digits: u32) -> Result<(), TestCaseError> {
    let v = parse_decimal(&root.approx).unwrap();
    prop_assert!(root.interval.contains(&v));
    if v != 0 {
        let unit = last_digit_unit(&v, digits);
        prop_assert!(Rational::from(&root.interval.midpoint() - &v).abs() < unit);
        prop_assert!(root.interval.width() <= unit);
    } else {
        prop_assert!(root.interval.width() <= pow2(-(digits as i64 * 3)));
    }
    Ok(())
}

use rug::ops::Pow;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn report_json_round_trips(seed in any::<u64>()) {
        let report = match solve(&random_input(seed)) {
            Ok(r) => r,
            Err(_) => return Ok(()),
        };
        prop_assert_eq!(&SolveReport::from_json(&report.to_json()).unwrap(), &report);
        let canonical = report.to_canonical_json();
        prop_assert!(!canonical.contains("\"run\""));
        prop_assert_eq!(SolveReport::from_json(&canonical).unwrap().run, None);
    }

    #[test]
    fn printed_digits_respect_enclosures(seed in any::<u64>(), digits in 1u32..=30) {
        let mut input = random_input(seed);
        input.options.digits = digits;
        let report = match solve(&input) {
            Ok(r) => r,
            Err(_) => return Ok(()),
        };
        for root in report.x_roots.iter().chain(&report.y_roots) {
            check_root(root, digits)?;
        }
        for s in &report.solutions {
            prop_assert_eq!(&s.x_approx, &report.x_roots[s.solution.i].approx);
            prop_assert_eq!(&s.y_approx, &report.y_roots[s.solution.j].approx);
        }
    }

    #[test]
    fn generation_is_pure(seed in any::<u64>(), family in prop_oneof![Just(Family::Dense), Just(Family::Sparse), Just(Family::MultipleRoot)]) {
        let config = BenchConfig { family, min_degree: 2, max_degree: 3, instances: 2, seed, ..BenchConfig::default() };
        let a = bench_generate(&config).unwrap();
        let b = bench_generate(&config).unwrap();
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
        let one = generate_instance(&config, 3, 1).unwrap();
        prop_assert_eq!(format!("{one:?}"), format!("{:?}", a[3]));
    }
}

#[test]
fn zero_dimensionality_is_checked() {
    let input = parse_system("x*y - 1; 2*x*y - 2").unwrap();
    assert!(matches!(solve(&input), Err(Error::NotZeroDimensional(_))));
}

#[test]
fn budget_is_enforced() {
    let mut input = parse_system("x^2 - y^2 - 3; 3*x^2 - 2*y^3 - 1").unwrap();
    input.options.budget_bits = Some(100);
    assert!(matches!(solve(&input), Err(Error::RefinementBudgetExceeded { .. })));
}

#[test]
fn text_report_lists_solutions() {
    let report = solve(&parse_system("x^2 + y^2 - 1; x - y").unwrap()).unwrap();
    let text = report.to_text();
    assert!(text.contains("0.7071067812"), "{text}");
    assert!(text.contains("-0.7071067812"), "{text}");
}

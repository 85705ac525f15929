use fraczeta::primes::{
    hausdorff_residual, mandelbrot_gauge, sieve, solve_theta_prime, varpi, varpi_factor,
};
use fraczeta::{ComplexValue, SignConvention, VarpiConfig};
use proptest::prelude::*;

proptest! {
    #[test]
    fn residual_is_real(p in 2u64..1_000_000, inv_delta in 1e-6f64..1e3, t in -1e3f64..1e3) {
        let (_, im) = hausdorff_residual(p, inv_delta, t);
        prop_assert!(im.abs() <= 1e-15);
    }

    #[test]
    fn trivial_gauge_solution(p in 1e-3f64..1e6, d in 1.0f64..10.0) {
        prop_assert_eq!(mandelbrot_gauge(p, p, d).unwrap(), 1.0);
    }

    #[test]
    fn varpi_log_modulus_reassociates(t in 0.0f64..20.0, limit in 2u64..3000, printed in any::<bool>()) {
        let conv = if printed { SignConvention::AsPrinted } else { SignConvention::BothMinus };
        let primes = sieve(limit).unwrap();
        let cfg = VarpiConfig::new(limit, conv).unwrap();
        let v = varpi(t, &primes, &cfg).unwrap();
        let sum: f64 = primes.iter().map(|p| varpi_factor(p, t, conv).norm().ln()).sum();
        prop_assert!((v.norm().ln() - sum).abs() < 1e-10);
    }
}

#[test]
fn closed_form_roots_zero_the_residual() {
    for p in fraczeta::primes::sieve(200).unwrap().iter() {
        let sols = solve_theta_prime(p, 8).unwrap();
        assert_eq!(sols.len(), 15);
        assert!(sols.windows(2).all(|w| w[0].theta_prime <= w[1].theta_prime));
        for s in sols {
            assert!(s.theta_prime >= 0.0);
            assert!(hausdorff_residual(p, 1.0, s.theta_prime).0.abs() < 1e-12);
        }
    }
}

#[test]
fn varpi_is_one_at_origin_for_every_set() {
    for limit in [2, 3, 10, 97, 1000, 10_000] {
        let cfg = VarpiConfig::new(limit, SignConvention::AsPrinted).unwrap();
        let v = varpi(0.0, &sieve(limit).unwrap(), &cfg).unwrap();
        assert_eq!(v, ComplexValue::new(1.0, 0.0));
    }
}

#[test]
fn sieve_matches_trial_division() {
    let primes = sieve(10_000).unwrap();
    let trial: Vec<u64> = (2u64..=10_000)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect();
    assert_eq!(primes.primes(), trial.as_slice());
    assert_eq!(primes.limit(), 10_000);
}

#[test]
fn product_underflow_is_reported() {
    // both_minus at θ′ = 0: factors 1 - 2/√p, log-modulus ≈ -Σ 2/√p ≈ -785 for p ≤ 1e7
    let limit = 10_000_000;
    let cfg = VarpiConfig::new(limit, SignConvention::BothMinus).unwrap();
    let err = varpi(0.0, &sieve(limit).unwrap(), &cfg).unwrap_err();
    assert!(matches!(err, fraczeta::Error::Overflow(_)), "{err}");
}

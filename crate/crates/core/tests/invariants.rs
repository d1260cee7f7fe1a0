use divapprox::approximants::{
    approximant_c, approximant_off_divisor_sum, approximant_tail_bound, ApproximantParams,
};
use divapprox::kernel::{phi_n, theorem2_rhs, KernelInterval, Rational, TestFunction};
use divapprox::numtheory::{
    divisors_brute, factorial_factorization, factorize, g_alpha_brute, g_from_factorization,
    legendre_exponent, sigma_exact,
};
use proptest::prelude::*;

proptest! {
    #[test]
    fn brute_matches_factorization(m in 1u64..=10_000, alpha in 0.1f64..6.0) {
        let brute = g_alpha_brute(alpha, m).unwrap();
        let fact = g_from_factorization(alpha, &factorize(m).unwrap()).unwrap();
        prop_assert!((brute - fact).abs() <= 1e-12 * brute, "{brute} vs {fact}");
    }

    #[test]
    fn divisor_count_is_product_of_exponents(m in 1u64..=1_000_000) {
        let f = factorize(m).unwrap();
        let count = divisors_brute(m).unwrap().len() as u128;
        prop_assert_eq!(f.divisor_count().unwrap(), count);
        prop_assert_eq!(f.to_u64(), Some(m));
    }

    #[test]
    fn sigma_is_g_times_power(m in 1u64..=5_000, alpha in 0.25f64..4.0) {
        let s = sigma_exact(alpha, m).unwrap();
        let g = g_alpha_brute(alpha, m).unwrap();
        let scaled = g * (m as f64).powf(alpha);
        prop_assert!((s - scaled).abs() <= 1e-12 * s);
    }

    #[test]
    fn kernel_is_symmetric_and_periodic(n in 1u64..100_000, x in 0.0f64..1.0) {
        let peak = phi_n(n, 0.0);
        prop_assert!((phi_n(n, x) - phi_n(n, -x)).abs() <= 1e-12 * peak);
        prop_assert!((phi_n(n, x) - phi_n(n, 1.0 - x)).abs() <= 1e-12 * peak);
        prop_assert!((phi_n(n, x) - phi_n(n, x + 3.0)).abs() <= 1e-12 * peak);
        prop_assert!(phi_n(n, x) >= 0.0 && phi_n(n, x) <= peak);
    }

    #[test]
    fn approximant_is_monotone_in_n(x in 1u64..=60, extra in 0u64..40, alpha in 0.25f64..4.0, e in 0u32..24) {
        let m = (x + extra).max(2) as f64;
        let p = ApproximantParams::new(alpha, 1 << e, m, x as f64).unwrap();
        let q = p.with_n(2 << e).unwrap();
        let sigma = sigma_exact(alpha, x).unwrap();
        let (c1, c2) = (approximant_c(&p), approximant_c(&q));
        prop_assert!(c2 <= c1 + 1e-12 * c1);
        prop_assert!(approximant_off_divisor_sum(&q).unwrap() <= approximant_off_divisor_sum(&p).unwrap());
        prop_assert!(c1 <= sigma + approximant_tail_bound(&p).unwrap());
        prop_assert!(c1 >= sigma * (1.0 - 1e-14));
    }

    #[test]
    fn non_integer_points_collapse(x in 1.0f64..30.0, alpha in 0.5f64..3.0) {
        prop_assume!(x.fract() > 1e-3 && x.fract() < 1.0 - 1e-3);
        let p = ApproximantParams::new(alpha, 1 << 40, 32.0, x).unwrap();
        prop_assert_eq!(approximant_c(&p), 0.0);
    }

    #[test]
    fn rhs_is_linear(a in -5.0f64..5.0, b in -5.0f64..5.0, lo in -6i64..6, len in 0i64..6, den in 1i64..5) {
        let iv = if den == 1 {
            KernelInterval::from_integers(lo, lo + len).unwrap()
        } else {
            KernelInterval::new(Rational::new(2 * lo * den + 1, 2 * den), Rational::new(2 * (lo + len) * den + 1, 2 * den)).unwrap()
        };
        let f = TestFunction::new("x^2", |x| x * x);
        let g = TestFunction::new("cos", |x| (0.5 * std::f64::consts::PI * x).cos());
        let h = TestFunction::linear_combination(a, &f, b, &g);
        let lhs = theorem2_rhs(&h, &iv);
        let rhs = a * theorem2_rhs(&f, &iv) + b * theorem2_rhs(&g, &iv);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }
}

#[test]
fn factorial_factorization_matches_small_factorials() {
    let mut v = 1u64;
    for m in 1..=20u64 {
        v *= m;
        let f = factorial_factorization(m).unwrap();
        assert_eq!(f.to_u64(), Some(v), "m = {m}");
        if v <= 10_000_000 {
            assert_eq!(f, factorize(v).unwrap());
        }
    }
    assert_eq!(legendre_exponent(100, 5), 24);
}

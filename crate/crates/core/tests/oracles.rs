use approx::assert_relative_eq;
use divapprox::kernel::{
    integrate_kernel_range, normalization_exact, normalization_table, TestFunction,
};
use divapprox::numtheory::{zeta, Factorization};
use divapprox::sum::Compensated;

fn direct_zeta(alpha: f64, terms: u64) -> f64 {
    (1..=terms)
        .rev()
        .map(|k| (k as f64).powf(-alpha))
        .collect::<Compensated>()
        .value()
}

#[test]
fn zeta_bracket_contains_direct_sum_plus_integral_tail() {
    for alpha in [1.5, 2.0, 3.0, 5.0] {
        let k = 1_000_000u64;
        let partial = direct_zeta(alpha, k);
        // tail of sum_{j>K} j^-alpha lies between the integrals from K+1 and from K
        let lo = partial + ((k + 1) as f64).powf(1.0 - alpha) / (alpha - 1.0);
        let hi = partial + (k as f64).powf(1.0 - alpha) / (alpha - 1.0);
        let z = zeta(alpha, 1e-10).unwrap();
        assert!(
            z.value <= hi && z.upper() >= lo,
            "alpha {alpha}: [{}, {}] vs [{lo}, {hi}]",
            z.value,
            z.upper()
        );
    }
}

#[test]
fn zeta_known_values() {
    let pi = std::f64::consts::PI;
    for (alpha, exact) in [
        (2.0, pi.powi(2) / 6.0),
        (4.0, pi.powi(4) / 90.0),
        (6.0, pi.powi(6) / 945.0),
    ] {
        let z = zeta(alpha, 1e-12).unwrap();
        assert!(z.contains(exact), "alpha {alpha}: {z:?} vs {exact}");
    }
}

#[test]
fn normalization_matches_gamma_ratio_for_small_n() {
    // sqrt(n) Gamma(n+1/2)/Gamma(n+1) = sqrt(n pi) (2n)! / (4^n (n!)^2)
    for n in 1..=60u64 {
        let mut central = 1.0f64;
        for k in 1..=n {
            central *= (2 * k - 1) as f64 / (2 * k) as f64;
        }
        let expected = (n as f64 * std::f64::consts::PI).sqrt() * central;
        assert_relative_eq!(
            normalization_exact(n).unwrap(),
            expected,
            max_relative = 1e-13
        );
    }
}

#[test]
fn normalization_table_is_order_preserving() {
    let t = normalization_table(&[1000, 10, 100]).unwrap();
    assert_eq!(
        t.iter().map(|r| r.n).collect::<Vec<_>>(),
        vec![1000, 10, 100]
    );
}

#[test]
fn quadrature_matches_closed_form_moments() {
    // cos(2 pi x) = 2 cos^2(pi x) - 1 gives phi_n moment I_n n/(n+1)
    let n = 50u64;
    let f = TestFunction::new("cos(2 pi x)", |x| (2.0 * std::f64::consts::PI * x).cos())
        .with_abs_bound(1.0);
    let q = integrate_kernel_range(n, &f, -0.5, 0.5, 1e-12).unwrap();
    let expected = n as f64 / (n + 1) as f64 * normalization_exact(n).unwrap();
    assert!(
        (q.value - expected).abs() < 1e-11,
        "{} vs {expected}",
        q.value
    );
}

#[test]
fn residues_of_huge_factorizations() {
    let f = Factorization::new(vec![(2, 100), (3, 50)]).unwrap();
    // 2^100 3^50 mod 1_000_003 by repeated multiplication
    let modulus = 1_000_003u64;
    let mut r = 1u64;
    for _ in 0..100 {
        r = r * 2 % modulus;
    }
    for _ in 0..50 {
        r = r * 3 % modulus;
    }
    assert_eq!(f.rem_u64(modulus), r);
}

#[test]
fn tail_mass_matches_endpoint_asymptotics() {
    // for large n the mass beyond delta is ~ 2 sqrt(n pi) cos^2n(pi delta) / (2 pi n tan(pi delta))
    let delta = 0.25;
    for n in [100_000u64, 1_000_000] {
        let t = &divapprox::kernel::check_condition_a(&[n], delta).unwrap()[0];
        let nf = n as f64;
        let pi = std::f64::consts::PI;
        let ln_expected = 0.5 * (nf * pi).ln() + nf * 0.5f64.ln() + (2.0 / (2.0 * pi * nf)).ln();
        assert!(
            (t.ln_tail_mass - ln_expected).abs() < 1e-4,
            "n {n}: {} vs {ln_expected}",
            t.ln_tail_mass
        );
    }
}

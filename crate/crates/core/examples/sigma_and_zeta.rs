// Divisor sums by brute force and from a factorization, and a certified
// bracket for zeta.

use divapprox::numtheory::{factorize, g_alpha_brute, g_from_factorization, sigma_exact, zeta};

pub fn run() -> divapprox::Result<()> {
    for m in [1u64, 6, 12, 28, 720_720] {
        let f = factorize(m)?;
        println!(
            "m = {m:>7} = {f}: sigma_1 = {}, G_2 brute = {:.15}, G_2 factored = {:.15}",
            sigma_exact(1.0, m)?,
            g_alpha_brute(2.0, m)?,
            g_from_factorization(2.0, &f)?,
        );
    }
    for alpha in [1.5, 2.0, 4.0] {
        let z = zeta(alpha, 1e-10)?;
        println!(
            "zeta({alpha}) in [{:.12}, {:.12}] using {} terms",
            z.value,
            z.upper(),
            z.terms_used
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> divapprox::Result<()> {
    run()
}

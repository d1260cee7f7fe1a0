// The kernel's unit-mass deficit and its mass outside (-delta, delta).

use divapprox::kernel::{check_condition_a, normalization_table};

pub fn run() -> divapprox::Result<()> {
    let ns = [1u64, 10, 100, 1000, 10_000, 100_000, 1_000_000];
    for r in normalization_table(&ns)? {
        println!(
            "n = {:>7}  I_n = {:.15}  n(1 - I_n) = {:.9}",
            r.n,
            r.value,
            r.scaled_deficit()
        );
    }
    for t in check_condition_a(&ns, 0.25)? {
        println!(
            "n = {:>7}  ln tail = {:>12.4}  ln envelope = {:>12.4}  within = {}",
            t.n,
            t.ln_tail_mass,
            t.ln_envelope,
            t.within_envelope()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> divapprox::Result<()> {
    run()
}

// C_{alpha,n}(M; x) closes in on sigma_alpha(x) at integers and on 0 between them.

use divapprox::approximants::{approximant_sequence, converge_to_sigma};

pub fn run() -> divapprox::Result<()> {
    let r = converge_to_sigma(2.0, 6, 12.0, 1e-8)?;
    println!("alpha=2 x=6 M=12");
    for s in &r.steps {
        println!(
            "  n = {:>5}  C = {:.12}  tail <= {:.3e}",
            s.n,
            s.value,
            s.tail_bound.unwrap_or(f64::NAN)
        );
    }
    println!("  sigma_2(6) ~ {} with n = {}", r.value, r.n_used);

    let schedule: Vec<u64> = (0..=20).step_by(4).map(|k| 1u64 << k).collect();
    println!("alpha=2 x=6.5 M=12");
    for s in approximant_sequence(2.0, 6.5, 12.0, &schedule)? {
        println!("  n = {:>7}  C = {:.3e}", s.n, s.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> divapprox::Result<()> {
    run()
}

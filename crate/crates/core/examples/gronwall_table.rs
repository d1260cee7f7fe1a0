// G_alpha along m!, lcm(1..m) and P_m, against zeta(alpha).

use divapprox::gronwall::{gronwall_sequence, sandwich_check, Variant};

pub fn run() -> divapprox::Result<()> {
    for variant in Variant::ALL {
        let rows = gronwall_sequence(2.0, 20, variant, 1e-10)?;
        for r in rows.iter().filter(|r| r.m % 5 == 0) {
            println!(
                "{variant:>15}  m = {:>2}  G_2 = {:.15}  zeta(2) - G_2 = {:.3e}",
                r.m, r.g_value, r.gap
            );
        }
    }
    for m in [2u64, 5, 10, 20] {
        let s = sandwich_check(3.0, m, 1e-10)?;
        println!(
            "alpha=3 m={m:>2}: sandwich holds = {}  low slack = {:.3e}",
            s.holds, s.slack_low
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> divapprox::Result<()> {
    run()
}

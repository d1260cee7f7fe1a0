// Kernel integrals against test functions approach sums over integers,
// with integer endpoints counted at half weight.

use divapprox::kernel::{
    lemma32_verify, theorem2_verify, KernelInterval, LemmaVariant, TestFunction,
};

pub fn run() -> divapprox::Result<()> {
    let schedule = [100u64, 1000, 10_000];
    let cases = [
        (
            TestFunction::new("x^2", |x| x * x).with_abs_bound(12.25),
            "1/2",
            "7/2",
        ),
        (TestFunction::constant(1.0), "0", "1"),
        (TestFunction::new("x", |x| x).with_abs_bound(2.0), "0", "2"),
    ];
    for (f, a, b) in &cases {
        let iv = KernelInterval::parse(a, b)?;
        for r in theorem2_verify(f, &iv, &schedule, 1e-10)? {
            println!(
                "{} on {iv}: n = {:>5}  lhs = {:.10}  rhs = {}  gap = {:.3e}",
                f.label(),
                r.n,
                r.lhs,
                r.rhs,
                r.gap
            );
        }
    }
    let id = TestFunction::new("x", |x| x).with_abs_bound(1.0);
    for r in lemma32_verify(&id, LemmaVariant::UnitInterval, &schedule, 1e-10)? {
        println!(
            "x on [0, 1]: n = {:>5}  integral = {:.10}  target = {}",
            r.n, r.integral, r.target
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> divapprox::Result<()> {
    run()
}

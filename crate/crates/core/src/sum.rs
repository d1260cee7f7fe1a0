//! Deterministic floating-point summation.

/// Pairwise (cascade) summation with a fixed split rule.
///
/// The reduction tree depends only on `values.len()`, so the result is
/// bit-identical no matter how the slice was produced (serially or by a
/// parallel map collected in order).
pub fn pairwise(values: &[f64]) -> f64 {
    const LEAF: usize = 16;
    if values.len() <= LEAF {
        return values.iter().fold(0.0, |acc, &v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise(&values[..mid]) + pairwise(&values[mid..])
}

/// Neumaier's variant of compensated summation.
///
/// Error is bounded by `2u|S| + O(n u^2) sum|x_i|`, independent of the term
/// count to first order.
#[derive(Debug, Default, Clone, Copy)]
pub struct Compensated {
    sum: f64,
    comp: f64,
}

impl Compensated {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Compensated {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Compensated::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Next representable value toward negative infinity (finite inputs).
pub(crate) fn next_down(x: f64) -> f64 {
    if x.is_nan() || x == f64::NEG_INFINITY {
        return x;
    }
    if x == 0.0 {
        return -f64::from_bits(1);
    }
    let bits = x.to_bits();
    if x > 0.0 {
        f64::from_bits(bits - 1)
    } else {
        f64::from_bits(bits + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_matches_exact_integers() {
        let v: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise(&v), 500_500.0);
        assert_eq!(pairwise(&[]), 0.0);
    }

    #[test]
    fn compensated_recovers_cancelled_bits() {
        let acc: Compensated = [1.0, 1e-16, 1e-16, -1.0].into_iter().collect();
        assert!((acc.value() - 2e-16).abs() < 1e-30);
    }

    #[test]
    fn next_down_steps_one_ulp() {
        assert!(next_down(1.0) < 1.0);
        assert_eq!(next_down(1.0), 1.0 - f64::EPSILON / 2.0);
        assert!(next_down(0.0) < 0.0);
        assert!(next_down(-1.0) < -1.0);
    }
}

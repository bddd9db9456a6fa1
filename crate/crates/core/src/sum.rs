//! Deterministic pairwise summation.
//!
//! Every floating-point reduction in the crate goes through these helpers so
//! that the rounding pattern depends only on the length of the input, never on
//! how the work was scheduled. The error grows like `O(log n)` ulps.

use num_complex::Complex64;
use std::ops::Add;

/// Below this length the leaf is summed left to right.
const LEAF: usize = 8;

fn pairwise<T: Copy + Add<Output = T>>(xs: &[T], zero: T) -> T {
    if xs.len() <= LEAF {
        return xs.iter().fold(zero, |acc, &x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise(&xs[..mid], zero) + pairwise(&xs[mid..], zero)
}

/// Pairwise sum of reals. The split point is always `len / 2`.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    pairwise(xs, 0.0)
}

pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    pairwise(xs, Complex64::new(0.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_small() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.5]), 1.5);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }

    #[test]
    fn integers_are_exact() {
        let xs: Vec<f64> = (1..=1000).map(f64::from).collect();
        assert_eq!(pairwise_sum(&xs), 500500.0);
    }

    #[test]
    fn beats_naive_on_many_tenths() {
        let xs = vec![0.1f64; 1 << 20];
        let exact = 0.1 * (1u64 << 20) as f64;
        let naive: f64 = xs.iter().sum();
        let pw = pairwise_sum(&xs);
        assert!((pw - exact).abs() <= (naive - exact).abs());
        assert!((pw - exact).abs() / exact < 1e-13);
    }

    #[test]
    fn complex_matches_componentwise() {
        let xs: Vec<Complex64> = (0..100).map(|k| Complex64::new(k as f64, -(k as f64))).collect();
        let s = pairwise_sum_complex(&xs);
        assert_eq!(s, Complex64::new(4950.0, -4950.0));
    }
}

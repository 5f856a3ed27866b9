use std::iter::FromIterator;
use std::ops::AddAssign;

/// Neumaier (improved Kahan) running sum.
///
/// The result carries an error of a few units of roundoff times `Σ|tᵢ|`,
/// independent of the number of terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
    abs_sum: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += value.abs();
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.compensation
    }

    /// `Σ|tᵢ|`, the scale against which rounding in the terms is measured.
    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        iter.into_iter().for_each(|t| acc.add(t));
        acc
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        iter.into_iter().for_each(|t| self.add(t));
    }
}

/// Compensated sum of a finite stream.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    terms.into_iter().collect::<CompensatedSum>().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cancels_exactly() {
        assert_eq!(compensated_sum([1.0, -1.0]), 0.0);
    }

    #[test]
    fn ten_million_tenths() {
        let s = compensated_sum(std::iter::repeat(0.1).take(10_000_000));
        assert!((s - 1e6).abs() <= 1e-6, "{s}");
        let naive: f64 = std::iter::repeat(0.1).take(10_000_000).sum();
        assert!((naive - 1e6).abs() > (s - 1e6).abs());
    }

    #[test]
    fn recovers_small_term_between_large_ones() {
        // exact value 1; the naive left fold returns 0
        assert_eq!(compensated_sum([1e16, 1.0, -1e16]), 1.0);
    }

    proptest! {
        #[test]
        fn permutation_stable(mut terms in prop::collection::vec(-1e6f64..1e6, 1..200), seed in any::<u64>()) {
            let forward = compensated_sum(terms.iter().copied());
            // deterministic shuffle
            let mut state = seed | 1;
            for i in (1..terms.len()).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let j = (state % (i as u64 + 1)) as usize;
                terms.swap(i, j);
            }
            let shuffled = compensated_sum(terms.iter().copied());
            let scale: f64 = terms.iter().map(|t| t.abs()).sum();
            let unit_roundoff = f64::EPSILON / 2.0;
            prop_assert!((forward - shuffled).abs() <= 10.0 * unit_roundoff * scale);
        }
    }
}

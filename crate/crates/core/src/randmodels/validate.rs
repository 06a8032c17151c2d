use num_rational::Rational64;

use crate::ratio::to_f64;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSequenceReport {
    /// Every entry is 0 or at least 3 and the sum is even.
    pub structure_ok: bool,
    /// `d_max <= threshold`, when a threshold was given.
    pub max_degree_ok: Option<bool>,
    /// First `i >= 2` (1-based, over the non-increasing order) where the
    /// prefix sum exceeds `c_a i ln(n) / ln(i)`.
    pub prefix_violation: Option<usize>,
}

impl DegreeSequenceReport {
    pub fn all_pass(&self) -> bool {
        self.structure_ok && self.max_degree_ok.unwrap_or(true) && self.prefix_violation.is_none()
    }
}

pub fn validate_degree_sequence(
    degrees: &[usize],
    n_ambient: usize,
    c_a: Rational64,
    max_degree_threshold: Option<usize>,
) -> DegreeSequenceReport {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let structure_ok = sorted.iter().all(|&d| d == 0 || d >= 3) && sorted.iter().sum::<usize>() % 2 == 0;
    let max_degree_ok = max_degree_threshold.map(|t| sorted.first().is_none_or(|&d| d <= t));
    let ln_n = (n_ambient as f64).ln();
    let ca = to_f64(&c_a);
    let mut prefix = sorted.first().copied().unwrap_or(0);
    let mut prefix_violation = None;
    for (idx, &d) in sorted.iter().enumerate().skip(1) {
        prefix += d;
        let i = idx + 1;
        if prefix as f64 > ca * i as f64 * ln_n / (i as f64).ln() {
            prefix_violation = Some(i);
            break;
        }
    }
    DegreeSequenceReport { structure_ok, max_degree_ok, prefix_violation }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = validate_degree_sequence(&[3, 3, 3, 3], 100, Rational64::from_integer(10), Some(5));
        assert!(r.all_pass());
        assert!(!validate_degree_sequence(&[4, 3, 2], 100, Rational64::from_integer(10), None).structure_ok);
        assert!(validate_degree_sequence(&[], 100, Rational64::from_integer(1), None).all_pass());
    }

    #[test]
    fn prefix_violation_located() {
        // i = 2: 40 > 1 * 2 * ln(100) / ln(2) ~ 13.3
        let r = validate_degree_sequence(&[20, 20, 4], 100, Rational64::from_integer(1), None);
        assert_eq!(r.prefix_violation, Some(2));
    }
}

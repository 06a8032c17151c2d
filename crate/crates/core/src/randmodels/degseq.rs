use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::One;
use rand::Rng;
use rand_distr::{Distribution, Normal, Poisson};

use super::mu::conjugate_mu;
use crate::error::{Error, Result};
use crate::ratio::to_f64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub n: usize,
    pub lambda: Rational64,
    pub mu: f64,
    pub seed: u64,
}

impl ModelParams {
    /// Requires `lambda > 1`; fills in the conjugate `mu`.
    pub fn new(n: usize, lambda: Rational64, seed: u64) -> Result<Self> {
        if lambda <= Rational64::one() {
            return Err(Error::domain("lambda", format!("{lambda} <= 1")));
        }
        if n == 0 {
            return Err(Error::domain("n", "must be positive"));
        }
        Ok(ModelParams { n, lambda, mu: conjugate_mu(lambda)?, seed })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSequenceSample {
    pub capital_lambda: f64,
    /// Raw Poisson draws.
    pub raw: Vec<usize>,
    /// `raw` with entries below 3 replaced by 0.
    pub degrees: Vec<usize>,
    pub kernel_vertex_count: usize,
    pub counts_by_degree: BTreeMap<usize, usize>,
}

impl DegreeSequenceSample {
    /// Degrees of the kernel vertices, in vertex order.
    pub fn kernel_degrees(&self) -> Vec<usize> {
        self.degrees.iter().copied().filter(|&d| d > 0).collect()
    }
}

/// Draws `Lambda ~ N(lambda - mu, 1/n)` (redrawn until positive), then `n`
/// independent `Poisson(Lambda)` values; the pair is redrawn until the sum
/// of the entries that are at least 3 is even.
pub fn sample_degree_sequence<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> Result<DegreeSequenceSample> {
    if params.lambda <= Rational64::one() {
        return Err(Error::domain("lambda", format!("{} <= 1", params.lambda)));
    }
    let n = params.n;
    let mean = to_f64(&params.lambda) - params.mu;
    let gauss = Normal::new(mean, 1.0 / (n as f64).sqrt()).map_err(|e| Error::domain("lambda", e.to_string()))?;
    loop {
        let cap_lambda = loop {
            let x = gauss.sample(rng);
            if x > 0.0 {
                break x;
            }
        };
        let pois = Poisson::new(cap_lambda).map_err(|e| Error::domain("lambda", e.to_string()))?;
        let raw: Vec<usize> = (0..n).map(|_| pois.sample(rng) as usize).collect();
        let kernel_sum: usize = raw.iter().filter(|&&d| d >= 3).sum();
        if kernel_sum % 2 == 1 {
            continue;
        }
        let degrees: Vec<usize> = raw.iter().map(|&d| if d >= 3 { d } else { 0 }).collect();
        let mut counts_by_degree = BTreeMap::new();
        for &d in degrees.iter().filter(|&&d| d > 0) {
            *counts_by_degree.entry(d).or_insert(0) += 1;
        }
        let kernel_vertex_count = counts_by_degree.values().sum();
        return Ok(DegreeSequenceSample { capital_lambda: cap_lambda, raw, degrees, kernel_vertex_count, counts_by_degree });
    }
}

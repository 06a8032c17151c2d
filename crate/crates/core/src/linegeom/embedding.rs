use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// Injective assignment of exact rational positions to vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineEmbedding {
    positions: Vec<BigRational>,
}

impl LineEmbedding {
    pub fn new(positions: Vec<BigRational>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(positions.len());
        for (v, p) in positions.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::Validation(format!("position {p} of vertex {v} is repeated")));
            }
        }
        Ok(LineEmbedding { positions })
    }

    pub fn from_integers<I: Into<BigInt>>(xs: impl IntoIterator<Item = I>) -> Result<Self> {
        Self::new(xs.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[BigRational] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> &BigRational {
        &self.positions[v]
    }

    /// Positions of `vertices`, in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> LineEmbedding {
        LineEmbedding { positions: vertices.iter().map(|&v| self.positions[v].clone()).collect() }
    }

    /// Image under `x ↦ -x`.
    pub fn reflected(&self) -> LineEmbedding {
        LineEmbedding { positions: self.positions.iter().map(|p| -p).collect() }
    }

    /// Image under `x ↦ x + c`.
    pub fn translated(&self, c: &BigRational) -> LineEmbedding {
        LineEmbedding { positions: self.positions.iter().map(|p| p + c).collect() }
    }

    /// Integer numerators over the least common denominator.
    pub fn scaled(&self) -> (Vec<BigInt>, BigInt) {
        let denom = self.positions.iter().fold(BigInt::one(), |l, p| l.lcm(p.denom()));
        let values = self.positions.iter().map(|p| p.numer() * (&denom / p.denom())).collect();
        (values, denom)
    }

    /// True when all scaled numerators fit in 63 bits, so `i128` sums of a
    /// few billion of them cannot overflow.
    pub(crate) fn fits_small(values: &[BigInt]) -> bool {
        values.iter().all(|v| v.abs().bits() <= 63)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::parse_big_rational;

    #[test]
    fn duplicates_rejected() {
        assert!(matches!(LineEmbedding::from_integers([0, 1, 0]), Err(Error::Validation(_))));
    }

    #[test]
    fn scaling_uses_lcm() {
        let e = LineEmbedding::new(vec![
            parse_big_rational("1/2").unwrap(),
            parse_big_rational("7/3").unwrap(),
            parse_big_rational("-2").unwrap(),
        ])
        .unwrap();
        let (vals, d) = e.scaled();
        assert_eq!(d, BigInt::from(6));
        assert_eq!(vals, vec![BigInt::from(3), BigInt::from(14), BigInt::from(-12)]);
    }
}

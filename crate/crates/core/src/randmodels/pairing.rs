use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graphcore::Multigraph;

/// Configuration model: a uniform perfect matching of the half-edges, read
/// as a multigraph. Edges are `(min, max)` in matching order.
pub fn sample_pairing<R: Rng + ?Sized>(degrees: &[usize], rng: &mut R) -> Result<Multigraph> {
    let total: usize = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::Parity(total as u64));
    }
    let mut stubs: Vec<usize> = Vec::with_capacity(total);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v, d));
    }
    stubs.shuffle(rng);
    let edges = stubs.chunks_exact(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
    Multigraph::new(degrees.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmodels::rng_from_seed;

    #[test]
    fn degree_two_is_a_loop() {
        let g = sample_pairing(&[2], &mut rng_from_seed(0)).unwrap();
        assert_eq!(g.edges(), &[(0, 0)]);
    }

    #[test]
    fn odd_sum_rejected() {
        assert_eq!(sample_pairing(&[3], &mut rng_from_seed(0)).unwrap_err(), Error::Parity(3));
    }

    #[test]
    fn degrees_preserved() {
        let d = [3, 1, 4, 1, 5, 2];
        let g = sample_pairing(&d, &mut rng_from_seed(3)).unwrap();
        assert_eq!(g.degrees(), &d);
    }
}

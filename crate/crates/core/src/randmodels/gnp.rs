use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graphcore::Multigraph;
use crate::ratio::to_f64;

/// Binomial random graph on `0..n`. Edges are listed as `(w, v)` with
/// `w < v`, ordered by `v` then `w`. Uses geometric skipping, so the cost is
/// proportional to `n` plus the number of edges.
pub fn sample_gnp<R: Rng + ?Sized>(n: usize, p: Rational64, rng: &mut R) -> Result<Multigraph> {
    if p < Rational64::zero() || p > Rational64::one() {
        return Err(Error::domain("p", format!("{p} not in [0,1]")));
    }
    let mut edges = Vec::new();
    if p.is_zero() || n < 2 {
        return Multigraph::new(n, edges);
    }
    if p.is_one() {
        for v in 1..n {
            for w in 0..v {
                edges.push((w, v));
            }
        }
        return Multigraph::new(n, edges);
    }
    let lq = (1.0 - to_f64(&p)).ln();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = 1.0 - rng.random::<f64>();
        w += 1 + (r.ln() / lq).floor() as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Multigraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmodels::rng_from_seed;

    #[test]
    fn extremes() {
        let mut rng = rng_from_seed(1);
        assert_eq!(sample_gnp(10, Rational64::zero(), &mut rng).unwrap().edge_count(), 0);
        let k = sample_gnp(10, Rational64::one(), &mut rng).unwrap();
        assert_eq!(k.edge_count(), 45);
        assert!(k.is_simple());
    }

    #[test]
    fn simple_and_deterministic() {
        let a = sample_gnp(200, Rational64::new(1, 20), &mut rng_from_seed(5)).unwrap();
        let b = sample_gnp(200, Rational64::new(1, 20), &mut rng_from_seed(5)).unwrap();
        assert_eq!(a, b);
        assert!(a.is_simple());
    }
}

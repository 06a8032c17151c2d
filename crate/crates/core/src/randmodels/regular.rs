use std::collections::HashSet;

use rand::Rng;

use super::pairing::sample_pairing;
use crate::error::{Error, Result};
use crate::graphcore::Multigraph;

fn check_regular_params(n: usize, d: usize) -> Result<()> {
    if (n * d) % 2 == 1 {
        return Err(Error::Parity((n * d) as u64));
    }
    if d >= n {
        return Err(Error::domain("d", format!("{d} >= n = {n}")));
    }
    Ok(())
}

/// Uniform simple `d`-regular graph on `0..n` by rejection from the pairing
/// model. Fails after `attempt_cap` rejected draws.
pub fn sample_regular_simple<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R, attempt_cap: usize) -> Result<Multigraph> {
    check_regular_params(n, d)?;
    let degrees = vec![d; n];
    for _ in 0..attempt_cap.max(1) {
        let g = sample_pairing(&degrees, rng)?;
        if g.is_simple() {
            return Ok(g);
        }
    }
    Err(Error::cap("regular graph rejection sampling", format!("{attempt_cap} attempts without a simple draw")))
}

/// Simple `d`-regular graph on `0..n` from the double-edge-swap chain, started
/// at a circulant graph and run for `swaps` proposals. Each proposal picks two
/// edges `ab`, `cd` uniformly and one of the two rewirings `ac, bd` or
/// `ad, bc`; it is accepted when the result stays simple. The proposal is
/// symmetric, so the chain's stationary law is uniform.
pub fn sample_regular_switch_chain<R: Rng + ?Sized>(n: usize, d: usize, swaps: usize, rng: &mut R) -> Result<Multigraph> {
    check_regular_params(n, d)?;
    let mut edges = circulant(n, d);
    let mut present: HashSet<(usize, usize)> = edges.iter().copied().collect();
    let m = edges.len();
    if m < 2 {
        return Multigraph::new(n, edges);
    }
    for _ in 0..swaps {
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (c, e) = edges[j];
        let (x, y) = if rng.random::<bool>() { ((a, c), (b, e)) } else { ((a, e), (b, c)) };
        let (x, y) = (ordered(x), ordered(y));
        if x.0 == x.1 || y.0 == y.1 || x == y || present.contains(&x) || present.contains(&y) {
            continue;
        }
        present.remove(&edges[i]);
        present.remove(&edges[j]);
        present.insert(x);
        present.insert(y);
        edges[i] = x;
        edges[j] = y;
    }
    Multigraph::new(n, edges)
}

fn ordered((u, v): (usize, usize)) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Each vertex joined to the `d/2` nearest on both sides, plus the
/// antipodal vertex when `d` is odd (then `n` is even).
fn circulant(n: usize, d: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * d / 2);
    for i in 0..n {
        for k in 1..=d / 2 {
            edges.push(ordered((i, (i + k) % n)));
        }
        if d % 2 == 1 && i < n / 2 {
            edges.push((i, i + n / 2));
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmodels::rng_from_seed;

    #[test]
    fn k4_is_forced() {
        let g = sample_regular_simple(4, 3, &mut rng_from_seed(0), 1000).unwrap();
        assert!(g.is_simple());
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn parity_error() {
        assert_eq!(sample_regular_simple(5, 3, &mut rng_from_seed(0), 10).unwrap_err(), Error::Parity(15));
    }

    #[test]
    fn chain_keeps_regular_and_simple() {
        let g = sample_regular_switch_chain(30, 17, 20_000, &mut rng_from_seed(3)).unwrap();
        assert!(g.is_simple());
        assert!(g.degrees().iter().all(|&x| x == 17));
        let g = sample_regular_switch_chain(9, 4, 1000, &mut rng_from_seed(3)).unwrap();
        assert!(g.is_simple());
        assert!(g.degrees().iter().all(|&x| x == 4));
    }
}

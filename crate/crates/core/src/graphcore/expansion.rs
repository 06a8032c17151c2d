use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::Rng;

use super::multigraph::Multigraph;
use crate::error::{Error, Result};
use crate::ratio::floor_mul;

/// Parameters of a `(c, alpha)` vertex expander: every `U` with `|U| <= c|V|`
/// has `|N(U)| >= alpha |U|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionSpec {
    c: Rational64,
    alpha: Rational64,
}

impl ExpansionSpec {
    pub fn new(c: Rational64, alpha: Rational64) -> Result<Self> {
        if c <= Rational64::zero() || c >= Rational64::one() {
            return Err(Error::domain("c", format!("{c} not in (0,1)")));
        }
        if alpha < Rational64::zero() {
            return Err(Error::domain("alpha", format!("{alpha} is negative")));
        }
        Ok(ExpansionSpec { c, alpha })
    }

    pub fn c(&self) -> Rational64 {
        self.c
    }

    pub fn alpha(&self) -> Rational64 {
        self.alpha
    }

    /// Whether a measured minimal ratio certifies this expansion.
    pub fn satisfied_by(&self, measured: Rational64) -> bool {
        measured >= self.alpha
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionMode {
    /// Every nonempty `U`; refuses graphs above `cap` vertices.
    Exact { cap: usize },
    /// Random connected sets; the result is an upper bound on the true alpha.
    Sampled { budget: usize },
}

pub const DEFAULT_EXACT_EXPANSION_CAP: usize = 20;

/// Largest admissible `|U|`: `floor(c n)`, but never below 1 so that a
/// single-vertex graph still has a set to measure.
fn max_set_size(c: &Rational64, n: usize) -> usize {
    floor_mul(c, n).max(1).min(n)
}

/// Minimal `|N(U)| / |U|` over nonempty `U` with `|U| <= c|V|`.
pub fn vertex_expansion_audit<R: Rng + ?Sized>(
    g: &Multigraph,
    c: Rational64,
    mode: ExpansionMode,
    rng: &mut R,
) -> Result<Rational64> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Precondition("expansion audit on an empty graph".into()));
    }
    if c <= Rational64::zero() || c >= Rational64::one() {
        return Err(Error::domain("c", format!("{c} not in (0,1)")));
    }
    let limit = max_set_size(&c, n);
    match mode {
        ExpansionMode::Exact { cap } => {
            if n > cap {
                return Err(Error::cap("exact expansion audit", format!("{n} vertices > cap {cap}")));
            }
            Ok(exact(g, limit))
        }
        ExpansionMode::Sampled { budget } => Ok(sampled(g, limit, budget.max(1), rng)),
    }
}

fn exact(g: &Multigraph, limit: usize) -> Rational64 {
    let n = g.vertex_count();
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let mut best: Option<Rational64> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size > limit {
            continue;
        }
        let mut nb = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            nb |= adj[v];
            rest &= rest - 1;
        }
        let ratio = Rational64::new((nb & !mask).count_ones() as i64, size as i64);
        if best.is_none_or(|b| ratio < b) {
            best = Some(ratio);
        }
    }
    best.unwrap_or_else(Rational64::zero)
}

fn sampled<R: Rng + ?Sized>(g: &Multigraph, limit: usize, budget: usize, rng: &mut R) -> Rational64 {
    let n = g.vertex_count();
    let mut best: Option<Rational64> = None;
    let mut in_set = vec![false; n];
    for _ in 0..budget {
        let target = rng.random_range(1..=limit);
        let root = rng.random_range(0..n);
        let mut set = vec![root];
        in_set[root] = true;
        let mut frontier: Vec<usize> = g.neighbors(root);
        while set.len() < target && !frontier.is_empty() {
            let w = frontier.swap_remove(rng.random_range(0..frontier.len()));
            if in_set[w] {
                continue;
            }
            in_set[w] = true;
            set.push(w);
            frontier.extend(g.neighbors(w).into_iter().filter(|&x| !in_set[x]));
        }
        let mut boundary: Vec<usize> =
            set.iter().flat_map(|&u| g.neighbors(u)).filter(|&x| !in_set[x]).collect();
        boundary.sort_unstable();
        boundary.dedup();
        let ratio = Rational64::new(boundary.len() as i64, set.len() as i64);
        if best.is_none_or(|b| ratio < b) {
            best = Some(ratio);
        }
        for &v in &set {
            in_set[v] = false;
        }
    }
    best.unwrap_or_else(Rational64::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn k4_half() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let a = vertex_expansion_audit(&g, Rational64::new(1, 2), ExpansionMode::Exact { cap: 20 }, &mut rng()).unwrap();
        assert_eq!(a, Rational64::one());
    }

    #[test]
    fn path_p4_half() {
        let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let a = vertex_expansion_audit(&g, Rational64::new(1, 2), ExpansionMode::Exact { cap: 20 }, &mut rng()).unwrap();
        assert_eq!(a, Rational64::new(1, 2));
    }

    #[test]
    fn single_vertex_zero() {
        let g = Multigraph::new(1, vec![]).unwrap();
        let a = vertex_expansion_audit(&g, Rational64::new(1, 3), ExpansionMode::Exact { cap: 20 }, &mut rng()).unwrap();
        assert_eq!(a, Rational64::zero());
    }

    #[test]
    fn exact_over_cap_is_error() {
        let g = Multigraph::new(21, vec![]).unwrap();
        let err = vertex_expansion_audit(&g, Rational64::new(1, 2), ExpansionMode::Exact { cap: 20 }, &mut rng());
        assert!(matches!(err, Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn spec_validation() {
        assert!(ExpansionSpec::new(Rational64::new(1, 2), Rational64::new(1, 3)).is_ok());
        assert!(ExpansionSpec::new(Rational64::one(), Rational64::zero()).is_err());
        assert!(ExpansionSpec::new(Rational64::new(1, 2), Rational64::new(-1, 3)).is_err());
    }
}

use std::collections::HashMap;
use std::f64::consts::E;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::multigraph::Multigraph;
use super::subsets::for_each_connected_subset;
use crate::error::{Error, Result};
use crate::ratio::to_f64;

pub const DEFAULT_EXACT_COUNT_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Connected vertex sets of size `s + 1` through a fixed vertex, against
    /// `(e(Δ-1))^s`. The exact count is the maximum over roots.
    Subgraphs { s: usize },
    /// Partitions of `V` into parts inducing connected subgraphs, against
    /// `|V|^{c|V|}`; requires `Δ <= |V|^c / 10`.
    Partitions { c: Rational64 },
    /// Spanning trees, against `e(eΔ/2)^{|V|-1}`.
    SpanningTrees,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound: f64,
    pub exact: Option<u128>,
}

impl BoundReport {
    /// True unless an exact count is present and exceeds the bound.
    pub fn holds(&self) -> bool {
        self.exact.is_none_or(|x| (x as f64) <= self.bound)
    }
}

pub fn combinatorial_bounds(
    g: &Multigraph,
    kind: BoundKind,
    want_exact: bool,
    exact_cap: usize,
) -> Result<BoundReport> {
    let n = g.vertex_count();
    let delta = g.max_degree();
    if want_exact && n > exact_cap {
        return Err(Error::cap("exact count", format!("{n} vertices > cap {exact_cap}")));
    }
    let report = match kind {
        BoundKind::Subgraphs { s } => {
            if delta < 3 {
                return Err(Error::Precondition(format!("subgraph bound needs Δ >= 3, got Δ = {delta}")));
            }
            let bound = (E * (delta as f64 - 1.0)).powi(s as i32);
            let exact = want_exact.then(|| {
                (0..n)
                    .map(|r| {
                        let mut count = 0u128;
                        let _ = for_each_connected_subset(g, r, s + 1, |set| {
                            if set.len() == s + 1 {
                                count += 1;
                            }
                            ControlFlow::Continue(())
                        });
                        count
                    })
                    .max()
                    .unwrap_or(0)
            });
            BoundReport { bound, exact }
        }
        BoundKind::Partitions { c } => {
            let nf = n as f64;
            let cf = to_f64(&c);
            let threshold = nf.powf(cf) / 10.0;
            if delta as f64 > threshold {
                return Err(Error::Precondition(format!(
                    "partition bound needs Δ <= |V|^c/10, but {delta} > {n}^{c}/10 = {threshold:.4}"
                )));
            }
            let bound = nf.powf(cf * nf);
            let exact = if want_exact { Some(count_connected_partitions(g, exact_cap)?) } else { None };
            BoundReport { bound, exact }
        }
        BoundKind::SpanningTrees => {
            let bound = E * (E * delta as f64 / 2.0).powi(n.saturating_sub(1) as i32);
            let exact = if want_exact {
                let t = count_spanning_trees(g);
                Some(t.to_u128().ok_or_else(|| Error::cap("exact count", "spanning tree count overflows u128"))?)
            } else {
                None
            };
            BoundReport { bound, exact }
        }
    };
    Ok(report)
}

/// Number of spanning trees by the matrix-tree theorem, with parallel edges
/// counted separately and loops ignored. Exact (fraction-free elimination).
pub fn count_spanning_trees(g: &Multigraph) -> BigInt {
    let n = g.vertex_count();
    if n == 0 {
        return BigInt::zero();
    }
    if n == 1 {
        return BigInt::from(1);
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for &(u, v) in g.edges() {
        if u != v {
            lap[u][u] += 1;
            lap[v][v] += 1;
            lap[u][v] -= 1;
            lap[v][u] -= 1;
        }
    }
    let m: Vec<Vec<BigInt>> = lap.into_iter().skip(1).map(|row| row.into_iter().skip(1).collect()).collect();
    bareiss_determinant(m)
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for i in 0..k {
        if m[i][i].is_zero() {
            match (i + 1..k).find(|&r| !m[r][i].is_zero()) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = (&m[r][c] * &m[i][i] - &m[r][i] * &m[i][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = m[i][i].clone();
    }
    if k == 0 {
        return BigInt::from(1);
    }
    prev * sign
}

/// Number of partitions of `V` whose parts each induce a connected subgraph.
/// Only adjacency matters: parallel edges and loops do not change the count.
pub fn count_connected_partitions(g: &Multigraph, cap: usize) -> Result<u128> {
    let n = g.vertex_count();
    if n > cap || n > 63 {
        return Err(Error::cap("exact partition count", format!("{n} vertices > cap {cap}")));
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w))).collect();
    let mut memo = HashMap::new();
    Ok(partitions_of(&adj, (1u64 << n) - 1, &mut memo))
}

fn partitions_of(adj: &[u64], rest: u64, memo: &mut HashMap<u64, u128>) -> u128 {
    if rest == 0 {
        return 1;
    }
    if let Some(&v) = memo.get(&rest) {
        return v;
    }
    let first = rest.trailing_zeros() as usize;
    let others = rest & !(1 << first);
    let mut total = 0u128;
    // every subset of the other vertices that, with `first`, is connected
    let mut sub = others;
    loop {
        let part = sub | (1 << first);
        if connected_mask(adj, part, first) {
            total += partitions_of(adj, rest & !part, memo);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & others;
    }
    memo.insert(rest, total);
    total
}

fn connected_mask(adj: &[u64], mask: u64, start: usize) -> bool {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == mask
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Multigraph {
        let mut e = vec![];
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Multigraph::new(n, e).unwrap()
    }

    #[test]
    fn k4_spanning_trees() {
        let r = combinatorial_bounds(&complete(4), BoundKind::SpanningTrees, true, 10).unwrap();
        assert_eq!(r.exact, Some(16));
        assert!((r.bound - E * (1.5 * E).powi(3)).abs() < 1e-9);
        assert!(r.holds());
    }

    #[test]
    fn cayley_and_multiedges() {
        for n in 2..8 {
            assert_eq!(count_spanning_trees(&complete(n)), BigInt::from(n).pow(n as u32 - 2));
        }
        let double = Multigraph::new(2, vec![(0, 1), (0, 1), (1, 1)]).unwrap();
        assert_eq!(count_spanning_trees(&double), BigInt::from(2));
        let disc = Multigraph::new(3, vec![(0, 1)]).unwrap();
        assert_eq!(count_spanning_trees(&disc), BigInt::zero());
    }

    #[test]
    fn triangle_partitions() {
        let t = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(count_connected_partitions(&t, 10).unwrap(), 5);
        let p = Multigraph::new(3, vec![(0, 1), (1, 2), (1, 2)]).unwrap();
        // {012},{01|2},{0|12},{0|1|2}
        assert_eq!(count_connected_partitions(&p, 10).unwrap(), 4);
    }

    #[test]
    fn complete_graph_partitions_are_bell_numbers() {
        let bell = [1u128, 1, 2, 5, 15, 52, 203, 877];
        for n in 1..8 {
            assert_eq!(count_connected_partitions(&complete(n), 10).unwrap(), bell[n]);
        }
    }

    #[test]
    fn partition_hypothesis_violation() {
        let mut e = vec![];
        for i in 0..10 {
            e.push((i, (i + 1) % 10));
            if i < 5 {
                e.push((i, i + 5));
            }
        }
        let g = Multigraph::new(10, e).unwrap();
        let err = combinatorial_bounds(&g, BoundKind::Partitions { c: Rational64::new(1, 2) }, false, 10).unwrap_err();
        match err {
            Error::Precondition(msg) => assert!(msg.contains("|V|^c/10")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn subgraph_bound_k4() {
        let r = combinatorial_bounds(&complete(4), BoundKind::Subgraphs { s: 2 }, true, 10).unwrap();
        assert_eq!(r.exact, Some(3));
        assert!(r.holds());
    }

    #[test]
    fn exact_over_cap() {
        let err = combinatorial_bounds(&complete(11), BoundKind::SpanningTrees, true, 10).unwrap_err();
        assert!(matches!(err, Error::ResourceCap { .. }));
    }
}

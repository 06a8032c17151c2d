//! Shared oracles for the integration tests: graphs up to isomorphism and a
//! brute-force rigid-map enumerator.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use linerig::graphcore::Multigraph;
use rand::Rng;

/// Edge slots of the complete graph on `n` vertices, as `(i, j)` with `i < j`.
pub fn slots(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for j in 1..n {
        for i in 0..j {
            out.push((i, j));
        }
    }
    out
}

fn edges_of(n: usize, mask: u32) -> Vec<(usize, usize)> {
    slots(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect()
}

/// Smallest edge mask over relabellings that respect a refinement by
/// (degree, sorted neighbour degrees); equal for isomorphic graphs.
fn canonical(n: usize, mask: u32) -> u32 {
    let edges = edges_of(n, mask);
    let mut deg = vec![0usize; n];
    for &(a, b) in &edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = edges
                .iter()
                .filter_map(|&(a, b)| if a == v { Some(deg[b]) } else if b == v { Some(deg[a]) } else { None })
                .collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    // cells of equal invariant, in order
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let s = slots(n);
    let mut best = u32::MAX;
    let mut perm = vec![0usize; n];
    fn rec(
        cells: &[Vec<usize>],
        ci: usize,
        next: usize,
        perm: &mut Vec<usize>,
        edges: &[(usize, usize)],
        s: &[(usize, usize)],
        best: &mut u32,
    ) {
        if ci == cells.len() {
            let m = edges.iter().fold(0u32, |m, &(a, b)| {
                let (x, y) = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                m | 1 << s.iter().position(|&e| e == (x, y)).unwrap()
            });
            *best = (*best).min(m);
            return;
        }
        let mut cell = cells[ci].clone();
        permute(&mut cell, 0, &mut |c| {
            for (k, &v) in c.iter().enumerate() {
                perm[v] = next + k;
            }
            rec(cells, ci + 1, next + c.len(), perm, edges, s, best);
        });
    }
    rec(&cells, 0, 0, &mut perm, &edges, &s, &mut best);
    best
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// One representative of every isomorphism class of simple graphs on `n`
/// vertices with at most `max_edges` edges.
pub fn graphs_up_to_iso(n: usize, max_edges: usize) -> Vec<Multigraph> {
    let total = slots(n).len();
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    let mut all: Vec<u32> = vec![0];
    for _ in 0..max_edges.min(total) {
        let mut next = BTreeSet::new();
        for &m in &level {
            for i in 0..total {
                if m >> i & 1 == 0 {
                    next.insert(canonical(n, m | 1 << i));
                }
            }
        }
        all.extend(next.iter().copied());
        level = next;
    }
    all.into_iter().map(|m| Multigraph::new(n, edges_of(n, m)).unwrap()).collect()
}

/// Every consistent edge-sign vector of a connected simple graph, normalized
/// so the first edge is `+`, with whether the induced map is injective.
pub fn brute_force_classes(g: &Multigraph, pos: &[i64]) -> BTreeSet<(Vec<i8>, bool)> {
    let n = g.vertex_count();
    let edges = g.edges();
    let m = edges.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << m) {
        let sigma: Vec<i8> = (0..m).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
        if m > 0 && sigma[0] == -1 {
            continue;
        }
        let mut phi: Vec<Option<i64>> = vec![None; n];
        phi[0] = Some(0);
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(a, b)) in edges.iter().enumerate() {
                let d = sigma[e] as i64 * (pos[b] - pos[a]);
                match (phi[a], phi[b]) {
                    (Some(x), None) => {
                        phi[b] = Some(x + d);
                        changed = true;
                    }
                    (None, Some(y)) => {
                        phi[a] = Some(y - d);
                        changed = true;
                    }
                    _ => {}
                }
            }
        }
        let phi: Vec<i64> = phi.into_iter().map(|x| x.expect("connected")).collect();
        let ok = edges.iter().enumerate().all(|(e, &(a, b))| phi[b] - phi[a] == sigma[e] as i64 * (pos[b] - pos[a]));
        if ok {
            let injective = phi.iter().collect::<HashSet<_>>().len() == n;
            out.insert((sigma, injective));
        }
    }
    out
}

pub fn distinct_integers<R: Rng>(n: usize, range: i64, rng: &mut R) -> Vec<i64> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let x = rng.random_range(0..range);
        if seen.insert(x) {
            out.push(x);
        }
    }
    out
}

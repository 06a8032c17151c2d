use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graphcore::Multigraph;

/// Default degree-sum limit for exact counting.
pub const DEFAULT_EXACT_DEGREE_SUM_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultigraphCount {
    /// Asymptotic estimate with its error term dropped.
    pub estimate: f64,
    pub exact: Option<u128>,
}

/// Asymptotic count of labelled multigraphs with degree sequence `degrees`:
/// `M1! / ((M1/2)! 2^{M1/2} prod d_i!) * exp(x + x^2)` with `x = M2 / (2 M1)`
/// and `M_r = sum_i d_i (d_i - 1) ... (d_i - r + 1)`. Optionally the exact count.
pub fn gm_estimate_and_exact_count(degrees: &[usize], want_exact: bool, exact_cap: usize) -> Result<MultigraphCount> {
    let m1: usize = degrees.iter().sum();
    if m1 % 2 == 1 {
        return Err(Error::Parity(m1 as u64));
    }
    let exact = if want_exact {
        if m1 > exact_cap {
            return Err(Error::cap("exact multigraph count", format!("degree sum {m1} > cap {exact_cap}")));
        }
        Some(count_multigraphs(degrees))
    } else {
        None
    };
    Ok(MultigraphCount { estimate: gm_estimate(degrees), exact })
}

fn ln_factorial(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

pub fn gm_estimate(degrees: &[usize]) -> f64 {
    let m1: usize = degrees.iter().sum();
    if m1 == 0 {
        return 1.0;
    }
    let m2: usize = degrees.iter().map(|&d| d * d.saturating_sub(1)).sum();
    let x = m2 as f64 / (2.0 * m1 as f64);
    let ln_pairings = ln_factorial(m1) - ln_factorial(m1 / 2) - (m1 / 2) as f64 * std::f64::consts::LN_2;
    let ln_sym: f64 = degrees.iter().map(|&d| ln_factorial(d)).sum();
    (ln_pairings - ln_sym + x + x * x).exp()
}

/// Number of labelled multigraphs (loops and parallel edges allowed) with
/// the given degree sequence, a loop adding 2 to its vertex's degree.
pub fn count_multigraphs(degrees: &[usize]) -> u128 {
    let mut memo = HashMap::new();
    let mut rest: Vec<usize> = degrees.iter().copied().filter(|&d| d > 0).collect();
    rest.sort_unstable_by(|a, b| b.cmp(a));
    count_rec(rest, &mut memo)
}

// `rest` is sorted non-increasing with no zeros; the count is symmetric in
// the vertices, so the sorted sequence is a valid memo key.
fn count_rec(rest: Vec<usize>, memo: &mut HashMap<Vec<usize>, u128>) -> u128 {
    if rest.is_empty() {
        return 1;
    }
    if let Some(&c) = memo.get(&rest) {
        return c;
    }
    let first = rest[0];
    let others = &rest[1..];
    let mut total = 0u128;
    for loops in 0..=first / 2 {
        let need = first - 2 * loops;
        let mut take = vec![0usize; others.len()];
        distribute(others, need, 0, &mut take, &mut |take| {
            let mut next: Vec<usize> =
                others.iter().zip(take).map(|(&r, &t)| r - t).filter(|&r| r > 0).collect();
            next.sort_unstable_by(|a, b| b.cmp(a));
            total += count_rec(next, memo);
        });
    }
    memo.insert(rest, total);
    total
}

/// Calls `f` with every vector `take` where `take[j] <= caps[j]` for `j >= i`
/// and the entries from `i` on sum to `need`.
fn distribute(caps: &[usize], need: usize, i: usize, take: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    if i == caps.len() {
        if need == 0 {
            f(take);
        }
        return;
    }
    let room: usize = caps[i + 1..].iter().sum();
    let lo = need.saturating_sub(room);
    for t in lo..=caps[i].min(need) {
        take[i] = t;
        distribute(caps, need - t, i + 1, take, f);
    }
    take[i] = 0;
}

/// Every labelled multigraph with the given degree sequence, each with its
/// edges listed by `(u, v)`, `u <= v`, in lexicographic order.
pub fn enumerate_multigraphs(degrees: &[usize], cap: usize) -> Result<Vec<Multigraph>> {
    let m1: usize = degrees.iter().sum();
    if m1 % 2 == 1 {
        return Err(Error::Parity(m1 as u64));
    }
    if m1 > cap {
        return Err(Error::cap("multigraph enumeration", format!("degree sum {m1} > cap {cap}")));
    }
    let n = degrees.len();
    let mut out = Vec::new();
    let mut rem = degrees.to_vec();
    let mut edges = Vec::new();
    enum_rec(n, 0, &mut rem, &mut edges, &mut out)?;
    Ok(out)
}

fn enum_rec(
    n: usize,
    v: usize,
    rem: &mut Vec<usize>,
    edges: &mut Vec<(usize, usize)>,
    out: &mut Vec<Multigraph>,
) -> Result<()> {
    if v == n {
        out.push(Multigraph::new(n, edges.clone())?);
        return Ok(());
    }
    let r = rem[v];
    for loops in 0..=r / 2 {
        let need = r - 2 * loops;
        let caps: Vec<usize> = rem[v + 1..].to_vec();
        let mut takes: Vec<Vec<usize>> = Vec::new();
        let mut take = vec![0; caps.len()];
        distribute(&caps, need, 0, &mut take, &mut |t| takes.push(t.to_vec()));
        for t in takes {
            let mark = edges.len();
            edges.extend(std::iter::repeat_n((v, v), loops));
            for (j, &c) in t.iter().enumerate() {
                edges.extend(std::iter::repeat_n((v, v + 1 + j), c));
                rem[v + 1 + j] -= c;
            }
            rem[v] = 0;
            enum_rec(n, v + 1, rem, edges, out)?;
            rem[v] = r;
            for (j, &c) in t.iter().enumerate() {
                rem[v + 1 + j] += c;
            }
            edges.truncate(mark);
        }
    }
    Ok(())
}

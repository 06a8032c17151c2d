use std::ops::ControlFlow;

use num_rational::Rational64;
use num_traits::{One, Zero};

use super::stats::{require_kernel, stats_with_membership};
use crate::error::{Error, Result};
use crate::graphcore::{for_each_connected_subset, KernelDecomposition};
use crate::par::Execution;
use crate::ratio::{floor_mul, to_f64};

/// Kernels up to this size are checked over every admissible subset; larger
/// ones use [`DEFAULT_SUBSET_SIZE_CAP`].
pub const EXHAUSTIVE_KERNEL_LIMIT: usize = 18;
pub const DEFAULT_SUBSET_SIZE_CAP: usize = 8;
/// Vertices per census round; witnesses found in one round are shared before
/// the next.
pub const CENSUS_BATCH: usize = 64;

pub fn default_size_cap(kernel_size: usize) -> usize {
    if kernel_size <= EXHAUSTIVE_KERNEL_LIMIT { kernel_size } else { DEFAULT_SUBSET_SIZE_CAP }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// Some admissible `S` has `E(S) > beta |S| ln n`.
    TooManyEdges,
    /// Some admissible `S` has fewer than 3 kernel neighbours.
    SmallBoundary,
    /// The vertex is not a kernel vertex.
    NotKernelVertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventDReport {
    pub vertex: usize,
    pub beta: Rational64,
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
    pub reason: Option<FailureReason>,
    /// The size cap was below `(1 - beta)|V(K)|` and nothing failed, so
    /// `holds` covers only the subsets examined.
    pub truncated: bool,
    pub subsets_examined: u64,
}

struct Check {
    beta_f: f64,
    ln_n: f64,
    limit: usize,
    effective: usize,
}

fn prepare(decomp: &KernelDecomposition, beta: Rational64, n_ambient: usize, size_cap: usize) -> Result<Check> {
    require_kernel(decomp)?;
    if beta <= Rational64::zero() || beta >= Rational64::one() {
        return Err(Error::domain("beta", format!("{beta} not in (0,1)")));
    }
    if n_ambient < 2 {
        return Err(Error::domain("n_ambient", format!("{n_ambient} < 2")));
    }
    if size_cap == 0 {
        return Err(Error::domain("size_cap", "must be positive"));
    }
    let k = decomp.kernel().vertex_count();
    let limit = floor_mul(&(Rational64::one() - beta), k);
    Ok(Check { beta_f: to_f64(&beta), ln_n: (n_ambient as f64).ln(), limit, effective: limit.min(size_cap) })
}

/// Checks the event for kernel vertex `v`: every connected kernel set `S`
/// containing `v` with `|S| <= (1 - beta)|V(K)|` has `E(S) <= beta |S| ln n`
/// and at least 3 kernel neighbours. Sets above `size_cap` are not examined.
pub fn event_d_check(
    decomp: &KernelDecomposition,
    v: usize,
    beta: Rational64,
    n_ambient: usize,
    size_cap: usize,
) -> Result<EventDReport> {
    let check = prepare(decomp, beta, n_ambient, size_cap)?;
    Ok(run_check(decomp, v, beta, &check))
}

fn run_check(decomp: &KernelDecomposition, v: usize, beta: Rational64, check: &Check) -> EventDReport {
    let kernel = decomp.kernel();
    let k = kernel.vertex_count();
    let mut report = EventDReport {
        vertex: v,
        beta,
        holds: true,
        witness: None,
        reason: None,
        truncated: false,
        subsets_examined: 0,
    };
    if v >= k {
        report.holds = false;
        report.reason = Some(FailureReason::NotKernelVertex);
        return report;
    }
    if check.limit == 0 {
        return report;
    }
    let mut member = vec![false; k];
    let mut examined = 0u64;
    let mut failure = None;
    let _ = for_each_connected_subset(kernel, v, check.effective, |set| {
        examined += 1;
        for &x in set {
            member[x] = true;
        }
        let st = stats_with_membership(decomp, set, &mut member);
        for &x in set {
            member[x] = false;
        }
        let reason = if st.big_e as f64 > check.beta_f * set.len() as f64 * check.ln_n {
            Some(FailureReason::TooManyEdges)
        } else if st.boundary < 3 {
            Some(FailureReason::SmallBoundary)
        } else {
            None
        };
        match reason {
            Some(r) => {
                failure = Some((st.subset, r));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    report.subsets_examined = examined;
    match failure {
        Some((s, r)) => {
            report.holds = false;
            report.witness = Some(s);
            report.reason = Some(r);
        }
        None => report.truncated = check.effective < check.limit,
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub holding: Vec<usize>,
    pub fraction: Rational64,
    pub any_truncated: bool,
    /// One report per kernel vertex. Vertices settled by a witness found for
    /// another vertex carry that witness and `subsets_examined = 0`.
    pub rows: Vec<EventDReport>,
}

/// Runs the check at every kernel vertex. Vertices are processed in rounds of
/// [`CENSUS_BATCH`]; after each round every violating set found marks all its
/// members as failing, so later rounds skip them. The round structure does
/// not depend on `exec`, so the result is the same sequentially and in
/// parallel.
pub fn event_d_census(
    decomp: &KernelDecomposition,
    beta: Rational64,
    n_ambient: usize,
    size_cap: usize,
    exec: Execution,
) -> Result<CensusReport> {
    let check = prepare(decomp, beta, n_ambient, size_cap)?;
    let k = decomp.kernel().vertex_count();
    let mut rows: Vec<Option<EventDReport>> = vec![None; k];
    let mut start = 0;
    while start < k {
        let end = (start + CENSUS_BATCH).min(k);
        let todo: Vec<usize> = (start..end).filter(|&v| rows[v].is_none()).collect();
        let done = exec.map(&todo, |&v| run_check(decomp, v, beta, &check));
        for r in done {
            if let Some(w) = &r.witness {
                for &u in w {
                    if u > r.vertex && rows[u].is_none() {
                        rows[u] = Some(EventDReport {
                            vertex: u,
                            subsets_examined: 0,
                            ..r.clone()
                        });
                    }
                }
            }
            let v = r.vertex;
            rows[v] = Some(r);
        }
        start = end;
    }
    let rows: Vec<EventDReport> = rows.into_iter().map(|r| r.expect("every vertex settled")).collect();
    let holding: Vec<usize> = rows.iter().filter(|r| r.holds).map(|r| r.vertex).collect();
    let any_truncated = rows.iter().any(|r| r.truncated);
    let fraction = Rational64::new(holding.len() as i64, k as i64);
    Ok(CensusReport { holding, fraction, any_truncated, rows })
}

/// CSV with header `vertex,holds,witness_size,truncated`.
pub fn census_csv(report: &CensusReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["vertex", "holds", "witness_size", "truncated"]).expect("writing to memory");
    for r in &report.rows {
        let ws = r.witness.as_ref().map(|w| w.len().to_string()).unwrap_or_default();
        w.write_record([r.vertex.to_string(), r.holds.to_string(), ws, r.truncated.to_string()])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("cells are utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{kernel_decompose, Multigraph};

    fn k4() -> KernelDecomposition {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        kernel_decompose(&g).unwrap()
    }

    #[test]
    fn k4_two_element_witness() {
        // ln n large enough that singletons pass on edge count
        let r = event_d_check(&k4(), 0, Rational64::new(1, 2), 1_000_000_000, 18).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 2);
        assert!(w.contains(&0));
        assert_eq!(r.reason, Some(FailureReason::SmallBoundary));
    }

    #[test]
    fn theta_single_vertex_fails() {
        let g = Multigraph::new(6, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)]).unwrap();
        let d = kernel_decompose(&g).unwrap();
        // (1 - beta) * 2 = 1, so only S = {u} is checked
        let r = event_d_check(&d, 0, Rational64::new(1, 2), 10_000, 18).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(vec![0]));
    }

    #[test]
    fn vacuous_for_tiny_kernels() {
        let r = event_d_check(&k4(), 0, Rational64::new(4, 5), 100, 18).unwrap();
        assert!(r.holds);
        assert_eq!(r.subsets_examined, 0);
        let c = event_d_census(&k4(), Rational64::new(4, 5), 100, 18, Execution::Sequential).unwrap();
        assert_eq!(c.fraction, Rational64::one());
    }

    #[test]
    fn k4_census_is_zero() {
        let c = event_d_census(&k4(), Rational64::new(1, 2), 1_000_000_000, 18, Execution::Parallel).unwrap();
        assert_eq!(c.fraction, Rational64::zero());
        assert!(census_csv(&c).starts_with("vertex,holds,witness_size,truncated\n0,false,2,false\n"));
    }

    #[test]
    fn triple_loop_kernel_has_no_boundary() {
        let g = Multigraph::new(1, vec![(0, 0), (0, 0), (0, 0)]).unwrap();
        let d = kernel_decompose(&g).unwrap();
        let c = event_d_census(&d, Rational64::new(1, 10), 100, 18, Execution::Sequential);
        // (1 - beta) * 1 < 1: vacuous
        assert_eq!(c.unwrap().fraction, Rational64::one());
        let r = event_d_check(&d, 3, Rational64::new(1, 2), 100, 18).unwrap();
        assert_eq!(r.reason, Some(FailureReason::NotKernelVertex));
    }

    #[test]
    fn dense_singleton_fails_on_edges() {
        let r = event_d_check(&k4(), 0, Rational64::new(1, 2), 100, 18).unwrap();
        assert_eq!(r.reason, Some(FailureReason::TooManyEdges));
        assert_eq!(r.witness, Some(vec![0]));
    }

    #[test]
    fn truncation_flag() {
        let mut e = vec![];
        for i in 0..10 {
            e.push((i, (i + 1) % 10));
            e.push((i, (i + 3) % 10));
        }
        let g = Multigraph::new(10, e).unwrap();
        let d = kernel_decompose(&g).unwrap();
        let r = event_d_check(&d, 0, Rational64::new(1, 2), 1_000_000_000, 1).unwrap();
        assert!(r.holds);
        assert!(r.truncated);
    }
}

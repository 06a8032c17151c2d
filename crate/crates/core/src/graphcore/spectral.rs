use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::multigraph::Multigraph;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

/// Summary of the adjacency spectrum of a connected `d`-regular graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralReport {
    pub degree: usize,
    pub top_eigenvalue: f64,
    /// `max_{i>=2} |lambda_i|`.
    pub second_magnitude: f64,
    pub iterations: usize,
    /// Certified distance from `second_magnitude` to the magnitude of some
    /// eigenvalue on the complement of the all-ones vector.
    pub tolerance_achieved: f64,
}

pub fn second_adjacency_eigenvalue(g: &Multigraph, tolerance: f64) -> Result<SpectralReport> {
    second_adjacency_eigenvalue_with_cap(g, tolerance, DEFAULT_ITERATION_CAP)
}

/// Power iteration with `A^2` on the orthogonal complement of the all-ones
/// vector. Squaring folds `lambda_2` and `lambda_n` together, so the
/// iteration converges to the largest magnitude even when both ends of the
/// spectrum tie.
pub fn second_adjacency_eigenvalue_with_cap(g: &Multigraph, tolerance: f64, cap: usize) -> Result<SpectralReport> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Precondition("spectral audit needs at least 2 vertices".into()));
    }
    let d = g.degree(0);
    if g.degrees().iter().any(|&x| x != d) {
        return Err(Error::Precondition("spectral audit needs a regular graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("spectral audit needs a connected graph".into()));
    }
    if !(tolerance > 0.0) {
        return Err(Error::domain("tolerance", "must be positive"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x005e_ed0f_1ea5);
    let mut x: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    project_and_normalize(&mut x);
    let mut tmp = vec![0.0; n];
    let mut y = vec![0.0; n];
    let mut last_residual = f64::INFINITY;
    for it in 1..=cap {
        multiply(g, &x, &mut tmp);
        multiply(g, &tmp, &mut y);
        let theta: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        let residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - theta * a).powi(2))
            .sum::<f64>()
            .sqrt();
        let magnitude = theta.max(0.0).sqrt();
        let achieved = if magnitude > 0.0 { residual / magnitude } else { residual.sqrt() };
        last_residual = achieved;
        if achieved <= tolerance {
            return Ok(SpectralReport {
                degree: d,
                top_eigenvalue: d as f64,
                second_magnitude: magnitude,
                iterations: it,
                tolerance_achieved: achieved,
            });
        }
        std::mem::swap(&mut x, &mut y);
        project_and_normalize(&mut x);
        if x.iter().all(|v| *v == 0.0) {
            // A^2 vanishes on the complement: every other eigenvalue is 0.
            return Ok(SpectralReport {
                degree: d,
                top_eigenvalue: d as f64,
                second_magnitude: 0.0,
                iterations: it,
                tolerance_achieved: 0.0,
            });
        }
    }
    Err(Error::Convergence { iterations: cap, residual: last_residual })
}

fn multiply(g: &Multigraph, x: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    for &(u, v) in g.edges() {
        if u == v {
            out[u] += 2.0 * x[u];
        } else {
            out[u] += x[v];
            out[v] += x[u];
        }
    }
}

fn project_and_normalize(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
}

/// Number of edges with exactly one endpoint in `set`; loops never count.
pub fn edge_boundary_count(g: &Multigraph, set: &[usize]) -> usize {
    let mut member = vec![false; g.vertex_count()];
    for &v in set {
        member[v] = true;
    }
    g.edges().iter().filter(|&&(u, v)| member[u] != member[v]).count()
}

/// Mixing-type check for a `d`-regular graph: the boundary of `set` exceeds
/// `d/2 * |set|`.
pub fn boundary_exceeds_half_degree(g: &Multigraph, set: &[usize]) -> bool {
    let d = g.max_degree();
    2 * edge_boundary_count(g, set) > d * set.len()
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
    fn complete_18() {
        let r = second_adjacency_eigenvalue(&complete(18), 1e-9).unwrap();
        assert_eq!(r.degree, 17);
        assert!((r.second_magnitude - 1.0).abs() < 1e-8);
    }

    #[test]
    fn cycle_c4() {
        let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = second_adjacency_eigenvalue(&g, 1e-9).unwrap();
        assert!((r.second_magnitude - 2.0).abs() < 1e-8);
    }

    #[test]
    fn rejects_irregular_and_disconnected() {
        let path = Multigraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(second_adjacency_eigenvalue(&path, 1e-9), Err(Error::Precondition(_))));
        let two = Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(matches!(second_adjacency_eigenvalue(&two, 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn tiny_cap_reports_non_convergence() {
        let g = Multigraph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(matches!(
            second_adjacency_eigenvalue_with_cap(&g, 1e-12, 1),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn boundary_counts() {
        let k4 = complete(4);
        assert_eq!(edge_boundary_count(&k4, &[0]), 3);
        assert_eq!(edge_boundary_count(&k4, &[0, 1, 2, 3]), 0);
        let k18 = complete(18);
        assert_eq!(edge_boundary_count(&k18, &[5]), 17);
        assert!(boundary_exceeds_half_degree(&k18, &[5]));
        let looped = Multigraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        assert_eq!(edge_boundary_count(&looped, &[0]), 1);
    }
}

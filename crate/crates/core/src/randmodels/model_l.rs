use rand::Rng;

use super::degseq::{sample_degree_sequence, DegreeSequenceSample, ModelParams};
use super::gm::enumerate_multigraphs;
use super::pairing::sample_pairing;
use crate::error::{Error, Result};
use crate::graphcore::{KernelDecomposition, Multigraph};

/// How the kernel multigraph was drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelLaw {
    /// Configuration model on the kernel degrees.
    Pairing,
    /// Exactly uniform over labelled multigraphs with the kernel degrees,
    /// by enumeration.
    Uniform,
}

/// Largest kernel degree sum for which [`KernelLaw::Uniform`] enumerates.
pub const UNIFORM_KERNEL_DEGREE_SUM_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct ModelLSample {
    pub degseq: DegreeSequenceSample,
    pub kernel: Multigraph,
    pub path_lengths: Vec<usize>,
    /// Kernel vertex `i` is core vertex `i`; the interiors of the paths
    /// follow, path by path in kernel edge order.
    pub core: Multigraph,
    pub decomposition: KernelDecomposition,
    pub kernel_law: KernelLaw,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelLOutcome {
    /// The degree sequence had no entry of at least 3.
    Empty(DegreeSequenceSample),
    Sample(Box<ModelLSample>),
}

impl ModelLOutcome {
    pub fn sample(&self) -> Option<&ModelLSample> {
        match self {
            ModelLOutcome::Empty(_) => None,
            ModelLOutcome::Sample(s) => Some(s),
        }
    }
}

/// Geometric on `{1, 2, ...}` with `P(L >= k) = mu^{k-1}`, by inversion:
/// `ceil(ln U / ln mu)` clamped below at 1.
pub fn sample_path_length<R: Rng + ?Sized>(mu: f64, rng: &mut R) -> usize {
    let u = 1.0 - rng.random::<f64>();
    ((u.ln() / mu.ln()).ceil() as usize).max(1)
}

/// Three-step draw: degree sequence, kernel multigraph on the entries that
/// are at least 3, geometric subdivision of every kernel edge.
pub fn sample_model_l<R: Rng + ?Sized>(params: &ModelParams, law: KernelLaw, rng: &mut R) -> Result<ModelLOutcome> {
    let degseq = sample_degree_sequence(params, rng)?;
    let kdeg = degseq.kernel_degrees();
    if kdeg.is_empty() {
        return Ok(ModelLOutcome::Empty(degseq));
    }
    let total: usize = kdeg.iter().sum();
    let (kernel, kernel_law) = if law == KernelLaw::Uniform && total <= UNIFORM_KERNEL_DEGREE_SUM_CAP {
        let all = enumerate_multigraphs(&kdeg, UNIFORM_KERNEL_DEGREE_SUM_CAP)?;
        (all[rng.random_range(0..all.len())].clone(), KernelLaw::Uniform)
    } else {
        (sample_pairing(&kdeg, rng)?, KernelLaw::Pairing)
    };
    let path_lengths: Vec<usize> = (0..kernel.edge_count()).map(|_| sample_path_length(params.mu, rng)).collect();
    let (core, decomposition) = subdivide(&kernel, &path_lengths)?;
    Ok(ModelLOutcome::Sample(Box::new(ModelLSample { degseq, kernel, path_lengths, core, decomposition, kernel_law })))
}

/// Replaces kernel edge `e` by a path with `lengths[e]` edges.
pub fn subdivide(kernel: &Multigraph, lengths: &[usize]) -> Result<(Multigraph, KernelDecomposition)> {
    if lengths.len() != kernel.edge_count() || lengths.contains(&0) {
        return Err(Error::Validation("one positive path length per kernel edge required".into()));
    }
    let k = kernel.vertex_count();
    let mut next = k;
    let mut edges = Vec::new();
    let mut twopaths = Vec::with_capacity(lengths.len());
    let mut twopath_edges = Vec::with_capacity(lengths.len());
    for (&(a, b), &len) in kernel.edges().iter().zip(lengths) {
        let mut path = vec![a];
        let mut pedges = Vec::with_capacity(len);
        for _ in 1..len {
            path.push(next);
            next += 1;
        }
        path.push(b);
        for w in path.windows(2) {
            pedges.push(edges.len());
            edges.push((w[0], w[1]));
        }
        twopaths.push(path);
        twopath_edges.push(pedges);
    }
    let core = Multigraph::new(next, edges)?;
    let decomposition =
        KernelDecomposition::from_parts(core.clone(), kernel.clone(), (0..k).collect(), twopaths, twopath_edges)?;
    Ok((core, decomposition))
}

use rand::Rng;

use super::degseq::ModelParams;
use super::model_l::{sample_model_l, KernelLaw, ModelLOutcome};
use crate::error::{Error, Result};
use crate::graphcore::Multigraph;
use crate::linegeom::LineEmbedding;

#[derive(Debug, Clone, PartialEq)]
pub struct ModelUSample {
    /// Graph on the `n` ambient vertices.
    pub graph: Multigraph,
    /// Core vertex `i` sits on ambient vertex `injection[i]`; empty for the
    /// complete-graph fallback.
    pub injection: Vec<usize>,
    /// True when the core had more vertices than the ambient set, in which
    /// case `graph` is complete.
    pub fallback: bool,
    pub core: ModelLOutcome,
    /// Positions of the core vertices under the injection.
    pub core_embedding: Option<LineEmbedding>,
}

/// Uniformly random injective map from `0..m` into `0..n` (`m <= n`),
/// as the first `m` entries of a partial Fisher-Yates shuffle.
pub fn random_injection<R: Rng + ?Sized>(m: usize, n: usize, rng: &mut R) -> Vec<usize> {
    assert!(m <= n);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in 0..m {
        let j = rng.random_range(i..n);
        perm.swap(i, j);
    }
    perm.truncate(m);
    perm
}

/// Draws a core from model L and places it on the ambient points by a
/// uniform injection.
pub fn sample_model_u<R: Rng + ?Sized>(params: &ModelParams, ambient: &LineEmbedding, rng: &mut R) -> Result<ModelUSample> {
    let ambient_size = ambient.len();
    if ambient_size != params.n {
        return Err(Error::Validation(format!("ambient set has {ambient_size} points, model has n = {}", params.n)));
    }
    let core = sample_model_l(params, KernelLaw::Pairing, rng)?;
    let n = ambient_size;
    let Some(sample) = core.sample() else {
        return Ok(ModelUSample {
            graph: Multigraph::new(n, vec![])?,
            injection: vec![],
            fallback: false,
            core,
            core_embedding: None,
        });
    };
    let m = sample.core.vertex_count();
    if m > n {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for v in 1..n {
            for w in 0..v {
                edges.push((w, v));
            }
        }
        return Ok(ModelUSample { graph: Multigraph::new(n, edges)?, injection: vec![], fallback: true, core, core_embedding: None });
    }
    let injection = random_injection(m, n, rng);
    let edges = sample.core.edges().iter().map(|&(a, b)| (injection[a], injection[b])).collect();
    let core_embedding = Some(ambient.restrict(&injection));
    Ok(ModelUSample { graph: Multigraph::new(n, edges)?, injection, fallback: false, core, core_embedding })
}

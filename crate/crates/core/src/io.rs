//! JSON forms of graphs, embeddings and model-L samples.
//!
//! Graph: `{"n": 3, "edges": [[0,1],[1,2]], "labels": {"0": "a"}}`, edges in
//! stored order, `labels` optional. Embedding: `{"positions": ["0", "7/3"]}`.
//! Model-L sample: `{"degseq": [...], "kernel": <graph>, "path_lengths":
//! [...], "core": <graph>}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::Multigraph;
use crate::linegeom::LineEmbedding;
use crate::randmodels::{subdivide, ModelLSample};
use crate::ratio::{format_big_rational, parse_big_rational};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<BTreeMap<usize, String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EmbeddingJson {
    positions: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelLJson {
    degseq: Vec<usize>,
    kernel: GraphJson,
    path_lengths: Vec<usize>,
    core: GraphJson,
}

/// The stored part of a model-L sample. The core is checked against the
/// subdivision of the kernel on load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredModelL {
    /// Full degree sequence, entries below 3 zeroed.
    pub degseq: Vec<usize>,
    pub kernel: Multigraph,
    pub path_lengths: Vec<usize>,
    pub core: Multigraph,
}

impl From<&ModelLSample> for StoredModelL {
    fn from(s: &ModelLSample) -> Self {
        StoredModelL {
            degseq: s.degseq.degrees.clone(),
            kernel: s.kernel.clone(),
            path_lengths: s.path_lengths.clone(),
            core: s.core.clone(),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse { locus: format!("line {}, column {}", e.line(), e.column()), reason: e.to_string() }
}

fn at(locus: &str, e: Error) -> Error {
    match e {
        Error::Validation(r) => Error::Parse { locus: locus.into(), reason: r },
        other => other,
    }
}

fn graph_to_json(g: &Multigraph) -> GraphJson {
    GraphJson {
        n: g.vertex_count(),
        edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
        labels: g.labels().cloned(),
    }
}

fn graph_from_json(j: GraphJson, locus: &str) -> Result<Multigraph> {
    let g = Multigraph::new(j.n, j.edges.into_iter().map(|[u, v]| (u, v)).collect())
        .map_err(|e| at(&format!("{locus}edges"), e))?;
    match j.labels {
        Some(l) => g.with_labels(l).map_err(|e| at(&format!("{locus}labels"), e)),
        None => Ok(g),
    }
}

pub fn graph_to_string(g: &Multigraph) -> String {
    serde_json::to_string(&graph_to_json(g)).expect("plain data serializes")
}

pub fn graph_from_str(s: &str) -> Result<Multigraph> {
    graph_from_json(serde_json::from_str(s).map_err(parse_err)?, "")
}

pub fn embedding_to_string(e: &LineEmbedding) -> String {
    let j = EmbeddingJson { positions: e.positions().iter().map(format_big_rational).collect() };
    serde_json::to_string(&j).expect("plain data serializes")
}

/// Duplicate positions are a validation error, not a parse error.
pub fn embedding_from_str(s: &str) -> Result<LineEmbedding> {
    let j: EmbeddingJson = serde_json::from_str(s).map_err(parse_err)?;
    let positions = j
        .positions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            parse_big_rational(p).map_err(|e| match e {
                Error::Parse { reason, .. } => Error::Parse { locus: format!("positions[{i}]"), reason },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LineEmbedding::new(positions)
}

pub fn model_l_to_string(m: &StoredModelL) -> String {
    let j = ModelLJson {
        degseq: m.degseq.clone(),
        kernel: graph_to_json(&m.kernel),
        path_lengths: m.path_lengths.clone(),
        core: graph_to_json(&m.core),
    };
    serde_json::to_string(&j).expect("plain data serializes")
}

pub fn model_l_from_str(s: &str) -> Result<StoredModelL> {
    let j: ModelLJson = serde_json::from_str(s).map_err(parse_err)?;
    let kernel = graph_from_json(j.kernel, "kernel.")?;
    let core = graph_from_json(j.core, "core.")?;
    let kd: Vec<usize> = j.degseq.iter().copied().filter(|&d| d > 0).collect();
    if kd != kernel.degrees() || j.degseq.iter().any(|&d| d > 0 && d < 3) {
        return Err(Error::Parse { locus: "degseq".into(), reason: "does not match the kernel degrees".into() });
    }
    let (expect, _) = subdivide(&kernel, &j.path_lengths).map_err(|e| at("path_lengths", e))?;
    if expect.edges() != core.edges() || expect.vertex_count() != core.vertex_count() {
        return Err(Error::Parse { locus: "core".into(), reason: "is not the subdivision of the kernel".into() });
    }
    Ok(StoredModelL { degseq: j.degseq, kernel, path_lengths: j.path_lengths, core })
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randmodels::{rng_from_seed, sample_model_l, KernelLaw, ModelParams};
    use num_rational::Rational64;

    #[test]
    fn triangle_and_embedding_round_trip() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let s = graph_to_string(&g);
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[1,2],[2,0]]}"#);
        assert_eq!(graph_from_str(&s).unwrap(), g);
        let e = LineEmbedding::from_integers([0, 1, 3]).unwrap();
        assert_eq!(embedding_from_str(&embedding_to_string(&e)).unwrap(), e);
    }

    #[test]
    fn labels_loops_and_parallel_edges_survive() {
        let labels = BTreeMap::from([(1, "b".to_string())]);
        let g = Multigraph::new(2, vec![(1, 1), (0, 1), (0, 1)]).unwrap().with_labels(labels).unwrap();
        let s = graph_to_string(&g);
        assert!(s.contains(r#""labels":{"1":"b"}"#));
        assert_eq!(graph_from_str(&s).unwrap(), g);
    }

    #[test]
    fn rational_is_canonical() {
        let e = embedding_from_str(r#"{"positions":["7/3","14/6x"]}"#);
        assert!(matches!(e, Err(Error::Parse { ref locus, .. }) if locus == "positions[1]"));
        let e = embedding_from_str(r#"{"positions":["7/3","-2"]}"#).unwrap();
        assert_eq!(embedding_to_string(&e), r#"{"positions":["7/3","-2"]}"#);
    }

    #[test]
    fn duplicates_and_schema_errors() {
        assert!(matches!(embedding_from_str(r#"{"positions":["1","2/2"]}"#), Err(Error::Validation(_))));
        assert!(matches!(graph_from_str(r#"{"n":2,"edges":[[0,2]]}"#), Err(Error::Parse { ref locus, .. }) if locus == "edges"));
        assert!(matches!(graph_from_str(r#"{"n":2,"edges":[[0]]}"#), Err(Error::Parse { .. })));
        assert!(matches!(graph_from_str(r#"{"n":2,"edges":[],"extra":1}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn model_l_round_trip() {
        let p = ModelParams::new(200, Rational64::new(3, 1), 5).unwrap();
        let mut rng = rng_from_seed(5);
        let out = sample_model_l(&p, KernelLaw::Pairing, &mut rng).unwrap();
        let stored = StoredModelL::from(out.sample().unwrap());
        let s = model_l_to_string(&stored);
        assert_eq!(model_l_from_str(&s).unwrap(), stored);
        let mut bad = stored.clone();
        bad.path_lengths[0] += 1;
        assert!(matches!(model_l_from_str(&model_l_to_string(&bad)), Err(Error::Parse { ref locus, .. }) if locus == "core"));
    }
}

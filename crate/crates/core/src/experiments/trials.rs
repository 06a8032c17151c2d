use std::collections::HashSet;

use num_rational::Rational64;
use rand::Rng;

use super::config::ExperimentConfig;
use super::kinds::ExperimentKind;
use crate::error::{Error, Result};
use crate::events::{default_size_cap, event_d_census};
use crate::graphcore::{
    kernel_decompose, largest_component, prune_to_subcubic, second_adjacency_eigenvalue_with_cap, two_core,
    vertex_expansion_audit, ExpansionMode, KernelDecomposition, DEFAULT_EXACT_EXPANSION_CAP,
};
use crate::linegeom::{
    enumerate_rigid_map_classes, is_reconstructible, largest_reconstructible_set, path_extension_solutions_int,
    LineEmbedding, RigidityOptions,
};
use crate::par::Execution;
use crate::randmodels::{
    rng_from_seed, sample_gnp, sample_model_l, sample_pairing, sample_regular_switch_chain, splitmix64,
    validate_degree_sequence, KernelLaw, ModelLSample, ModelParams, SimRng,
};
use crate::ratio::to_f64;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Ratio(Rational64),
    Text(&'static str),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(x) => Some(*x as f64),
            Cell::Float(x) => Some(*x),
            Cell::Ratio(r) => Some(to_f64(r)),
            _ => None,
        }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(x) => write!(f, "{x}"),
            Cell::Float(x) => write!(f, "{x}"),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Ratio(r) => f.write_str(&crate::ratio::format_rational64(r)),
            Cell::Text(s) => f.write_str(s),
            Cell::Empty => Ok(()),
        }
    }
}

const DEFAULT_POSITION_BITS: u32 = 40;
const TOY_DEGREE: usize = 17;
const SPECTRAL_TOLERANCE: f64 = 1e-9;
const DEFAULT_SPECTRAL_ITERATIONS: u64 = 1_000_000;
const DEFAULT_EXPANSION_SAMPLES: u64 = 10_000;

/// Settings resolved once per run, shared by every trial.
pub(crate) struct Plan {
    kind: ExperimentKind,
    config: ExperimentConfig,
    opts: RigidityOptions,
    position_bits: u32,
    ambient: Vec<i64>,
    toy: Toy,
    s: usize,
    c_a: Rational64,
    max_degree: Option<usize>,
    model: Option<ModelParams>,
}

struct Toy {
    d: usize,
    threshold: f64,
    swaps: usize,
    iterations: usize,
}

impl Plan {
    pub(crate) fn new(config: &ExperimentConfig) -> Result<Plan> {
        config.validate()?;
        let kind = config.experiment;
        let opts = RigidityOptions {
            class_cap: config.cap("class_cap", RigidityOptions::default().class_cap as u64) as usize,
            search_budget: config.cap("search_budget", RigidityOptions::default().search_budget),
            ..Default::default()
        };
        let bits_default = if kind == ExperimentKind::PathExtension { 62 } else { DEFAULT_POSITION_BITS };
        let position_bits: u32 = config.param("position_bits", bits_default)?;
        if !(1..=62).contains(&position_bits) {
            return Err(Error::Usage(format!("position_bits {position_bits} not in 1..=62")));
        }
        let d: usize = config.param("d", TOY_DEGREE)?;
        let toy = Toy {
            d,
            threshold: to_f64(&config.param_rational("threshold", Rational64::new(801, 100))?),
            swaps: config.cap("swaps", (100 * config.n * d).max(1) as u64) as usize,
            iterations: config.cap("spectral_iterations", DEFAULT_SPECTRAL_ITERATIONS) as usize,
        };
        let s: usize = config.param("s", 2)?;
        let max_degree = match config.params.get("max_degree") {
            Some(_) => Some(config.param("max_degree", 0usize)?),
            None => None,
        };
        let model = match kind {
            ExperimentKind::EventdCensus
            | ExperimentKind::ValidateModels
            | ExperimentKind::ExpansionAudit
            | ExperimentKind::PruneStats => Some(ModelParams::new(config.n, config.lambda, config.master_seed)?),
            _ => None,
        };
        let mut plan = Plan {
            kind,
            config: config.clone(),
            opts,
            position_bits,
            ambient: Vec::new(),
            toy,
            s,
            c_a: config.param_rational("c_a", Rational64::from_integer(10))?,
            max_degree,
            model,
        };
        match kind {
            ExperimentKind::RatioDesk => {
                if config.lambda < Rational64::from_integer(0) || config.lambda > Rational64::from_integer(config.n as i64) {
                    return Err(Error::domain("lambda", "p = lambda/n must lie in [0,1]"));
                }
            }
            ExperimentKind::PathExtension => {
                if s == 0 {
                    return Err(Error::domain("s", "path length must be positive"));
                }
                if config.n < (s + 1).max(4) {
                    return Err(Error::domain("n", format!("need at least max(s + 1, 4) = {} points", (s + 1).max(4))));
                }
                plan.ambient = match config.params.get("ambient").map(String::as_str) {
                    None | Some("generic") => {
                        // fixed for the whole run, drawn from its own stream
                        let mut rng = rng_from_seed(splitmix64(config.master_seed));
                        generic_positions(config.n, position_bits, &mut rng)?
                    }
                    Some("integers") => (0..config.n as i64).collect(),
                    Some(other) => return Err(Error::Usage(format!("ambient must be generic or integers, not {other:?}"))),
                };
            }
            ExperimentKind::EventdCensus => {
                let beta = plan.beta();
                if beta <= Rational64::from_integer(0) || beta >= Rational64::from_integer(1) {
                    return Err(Error::domain("beta", format!("{beta} not in (0,1)")));
                }
            }
            _ => {}
        }
        Ok(plan)
    }

    fn beta(&self) -> Rational64 {
        self.config.beta.unwrap_or(Rational64::new(1, 2))
    }

    fn c(&self) -> Rational64 {
        self.config.c.unwrap_or(Rational64::new(1, 2))
    }

    pub(crate) fn run_trial(&self, seed: u64) -> Result<Vec<Cell>> {
        let mut rng = rng_from_seed(seed);
        let rng = &mut rng;
        match self.kind {
            ExperimentKind::RatioDesk => self.ratio_desk(rng),
            ExperimentKind::Toy17 => self.toy17(rng),
            ExperimentKind::EventdCensus => self.eventd(rng),
            ExperimentKind::PathExtension => self.path_extension(rng),
            ExperimentKind::ValidateModels => self.validate_models(rng),
            ExperimentKind::ExpansionAudit => self.expansion(rng),
            ExperimentKind::PruneStats => self.prune(rng),
        }
    }

    fn ratio_desk(&self, rng: &mut SimRng) -> Result<Vec<Cell>> {
        let n = self.config.n;
        let p = if n == 0 { Rational64::from_integer(0) } else { self.config.lambda / Rational64::from_integer(n as i64) };
        let g = sample_gnp(n, p, rng)?;
        let positions = generic_positions(n, self.position_bits, rng)?;
        let core = two_core(&g);
        let comp = largest_component(&core.graph);
        let size = comp.graph.vertex_count();
        if size == 0 {
            return Ok(vec![Cell::Int(0), Cell::Int(0), Cell::Int(0), Cell::Empty]);
        }
        let kernel_size = kernel_decompose(&comp.graph)?.kernel().vertex_count();
        let emb = LineEmbedding::from_integers(comp.parent.iter().map(|&i| positions[core.parent[i]]))?;
        let r = largest_reconstructible_set(&comp.graph, &emb, &self.opts)?.len();
        Ok(vec![
            Cell::Int(size as u64),
            Cell::Int(kernel_size as u64),
            Cell::Int(r as u64),
            Cell::Float(r as f64 / size as f64),
        ])
    }

    fn toy17(&self, rng: &mut SimRng) -> Result<Vec<Cell>> {
        let n = self.config.n;
        let g = sample_regular_switch_chain(n, self.toy.d, self.toy.swaps, rng)?;
        let emb = LineEmbedding::from_integers(generic_positions(n, self.position_bits, rng)?)?;
        let all: Vec<usize> = (0..n).collect();
        let (class_count, reconstructible) = if g.is_connected() {
            let report = enumerate_rigid_map_classes(&g, &emb, &self.opts)?;
            if !report.class_count_exact {
                return Err(Error::Indeterminate("rigid-map enumeration was truncated".into()));
            }
            (Cell::Int(report.classes.len() as u64), report.classes.iter().all(|c| c.preserves(&emb, &all)))
        } else {
            (Cell::Empty, is_reconstructible(&g, &emb, &all, &self.opts)?.holds)
        };
        let spec = second_adjacency_eigenvalue_with_cap(&g, SPECTRAL_TOLERANCE, self.toy.iterations)?;
        Ok(vec![
            Cell::Int(self.toy.d as u64),
            class_count,
            Cell::Bool(reconstructible),
            Cell::Float(spec.second_magnitude),
            Cell::Bool(spec.second_magnitude <= self.toy.threshold),
        ])
    }

    fn model_l(&self, rng: &mut SimRng) -> Result<Option<ModelLSample>> {
        let params = self.model.as_ref().expect("model experiments carry parameters");
        Ok(sample_model_l(params, KernelLaw::Pairing, rng)?.sample().cloned())
    }

    fn eventd(&self, rng: &mut SimRng) -> Result<Vec<Cell>> {
        let Some(sample) = self.model_l(rng)? else {
            return Ok(vec![Cell::Int(0), Cell::Int(0), Cell::Empty, Cell::Bool(false)]);
        };
        let decomp = &sample.decomposition;
        let k = decomp.kernel().vertex_count();
        let cap = self.config.cap("size", default_size_cap(k) as u64) as usize;
        // the harness already runs trials in parallel
        let census = event_d_census(decomp, self.beta(), self.config.n.max(2), cap, Execution::Sequential)?;
        Ok(vec![
            Cell::Int(k as u64),
            Cell::Int(census.holding.len() as u64),
            Cell::Ratio(census.fraction),
            Cell::Bool(census.any_truncated),
        ])
    }

    fn path_extension(&self, rng: &mut SimRng) -> Result<Vec<Cell>> {
        let pos = &self.ambient;
        let n = pos.len();
        let u = rng.random_range(0..n);
        let v = loop {
            let v = rng.random_range(0..n);
            if v != u {
                break v;
            }
        };
        let mut used: HashSet<usize> = HashSet::from([u, v]);
        let mut interior = Vec::with_capacity(self.s - 1);
        while interior.len() + 1 < self.s {
            let w = rng.random_range(0..n);
            if used.insert(w) {
                interior.push(pos[w]);
            }
        }
        let span = (pos[v] - pos[u]).abs();
        let image_v = loop {
            let w = rng.random_range(0..n);
            if (pos[w] - pos[u]).abs() != span {
                break pos[w];
            }
        };
        let count = path_extension_solutions_int(pos[u], pos[v], pos[u], image_v, &interior)?;
        Ok(vec![Cell::Int(self.s as u64), Cell::Bool(count.total > 0), Cell::Int(count.total)])
    }

    fn validate_models(&self, rng: &mut SimRng) -> Result<Vec<Cell>> {
        let params = self.model.as_ref().expect("model experiments carry parameters");
        let outcome = sample_model_l(params, KernelLaw::Pairing, rng)?;
        let (degseq, lengths) = match &outcome {
            crate::randmodels::ModelLOutcome::Empty(d) => (d, &[][..]),
            crate::randmodels::ModelLOutcome::Sample(s) => (&s.degseq, &s.path_lengths[..]),
        };
        let report = validate_degree_sequence(&degseq.degrees, self.config.n, self.c_a, self.max_degree);
        let pairing = sample_pairing(&[3, 3], rng)?;
        Ok(vec![
            Cell::Int(degseq.kernel_vertex_count as u64),
            Cell::Bool(report.structure_ok),
            report.max_degree_ok.map(Cell::Bool).unwrap_or(Cell::Empty),
            report.prefix_violation.map(|i| Cell::Int(i as u64)).unwrap_or(Cell::Empty),
            Cell::Int(lengths.len() as u64),
            Cell::Int(lengths.iter().sum::<usize>() as u64),
            Cell::Text(if pairing.loop_count() > 0 { "loops" } else { "triple" }),
        ])
    }

    fn pruned(&self, rng: &mut SimRng) -> Result<Option<(ModelLSample, Option<(KernelDecomposition, usize)>)>> {
        let Some(sample) = self.model_l(rng)? else { return Ok(None) };
        let pruned = prune_to_subcubic(&sample.decomposition)?;
        let kept = pruned.decomposition().map(|d| (d.clone(), d.core().vertex_count()));
        Ok(Some((sample, kept)))
    }

    fn expansion(&self, rng: &mut SimRng) -> Result<Vec<Cell>> {
        let Some((sample, kept)) = self.pruned(rng)? else {
            return Ok(vec![Cell::Int(0), Cell::Int(0), Cell::Empty, Cell::Empty, Cell::Empty]);
        };
        let k = sample.decomposition.kernel().vertex_count() as u64;
        let Some((d, _)) = kept else {
            return Ok(vec![Cell::Int(k), Cell::Int(0), Cell::Empty, Cell::Empty, Cell::Empty]);
        };
        let kernel = d.kernel();
        let exact_cap = self.config.cap("exact_vertices", DEFAULT_EXACT_EXPANSION_CAP as u64) as usize;
        let exact = kernel.vertex_count() <= exact_cap;
        let mode = if exact {
            ExpansionMode::Exact { cap: exact_cap }
        } else {
            ExpansionMode::Sampled { budget: self.config.cap("samples", DEFAULT_EXPANSION_SAMPLES) as usize }
        };
        let alpha = vertex_expansion_audit(kernel, self.c(), mode, rng)?;
        Ok(vec![
            Cell::Int(k),
            Cell::Int(kernel.vertex_count() as u64),
            Cell::Ratio(alpha),
            Cell::Float(to_f64(&alpha)),
            Cell::Bool(exact),
        ])
    }

    fn prune(&self, rng: &mut SimRng) -> Result<Vec<Cell>> {
        let Some((sample, kept)) = self.pruned(rng)? else {
            return Ok(vec![Cell::Int(0), Cell::Int(0), Cell::Int(0), Cell::Int(0), Cell::Empty]);
        };
        let k = sample.decomposition.kernel().vertex_count();
        let (pc, pk) = kept.map(|(d, c)| (c, d.kernel().vertex_count())).unwrap_or((0, 0));
        Ok(vec![
            Cell::Int(sample.core.vertex_count() as u64),
            Cell::Int(k as u64),
            Cell::Int(pc as u64),
            Cell::Int(pk as u64),
            Cell::Float(pk as f64 / k as f64),
        ])
    }
}

/// `n` distinct integers drawn uniformly from `[0, 2^bits)`.
pub fn generic_positions<R: Rng + ?Sized>(n: usize, bits: u32, rng: &mut R) -> Result<Vec<i64>> {
    if bits == 0 || bits > 62 {
        return Err(Error::domain("bits", format!("{bits} not in 1..=62")));
    }
    let range = 1i64 << bits;
    if (n as i64) > range / 2 {
        return Err(Error::domain("bits", format!("2^{bits} is too small for {n} distinct positions")));
    }
    let mut seen = HashSet::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x = rng.random_range(0..range);
        if seen.insert(x) {
            out.push(x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_positions_are_distinct_and_bounded() {
        let mut rng = rng_from_seed(1);
        let p = generic_positions(500, 10, &mut rng).unwrap();
        assert_eq!(p.iter().collect::<HashSet<_>>().len(), 500);
        assert!(p.iter().all(|&x| (0..1024).contains(&x)));
        assert!(generic_positions(600, 10, &mut rng).is_err());
    }
}

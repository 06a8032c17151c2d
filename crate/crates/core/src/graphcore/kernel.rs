use std::collections::BTreeMap;

use super::multigraph::{Multigraph, Subgraph};
use crate::error::{Error, Result};

/// Maximal subgraph of minimum degree at least 2, obtained by repeatedly
/// deleting vertices of degree below 2. Vertices keep their parent ids via
/// [`Subgraph::parent`].
pub fn two_core(g: &Multigraph) -> Subgraph {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.degrees().to_vec();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < 2).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &(_, w) in g.incident(v) {
            if w != v && !removed[w] {
                deg[w] -= 1;
                if deg[w] < 2 {
                    stack.push(w);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    g.induced(&keep)
}

/// Largest connected component (ties go to the component holding the smallest id).
pub fn largest_component(g: &Multigraph) -> Subgraph {
    let comps = g.components();
    let best = comps
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
        .map(|(_, c)| c.clone())
        .unwrap_or_default();
    g.induced(&best)
}

/// A 2-core component together with its kernel multigraph and the 2-path
/// behind every kernel edge.
///
/// Kernel vertex `i` is core vertex `kernel_vertices()[i]`; kernel vertices are
/// numbered in ascending core id order. The 2-path of kernel edge `e = (a, b)`
/// is stored as a core vertex sequence running from `a` to `b`, together with
/// the core edge indices it traverses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelDecomposition {
    core: Multigraph,
    kernel: Multigraph,
    kernel_vertices: Vec<usize>,
    twopaths: Vec<Vec<usize>>,
    twopath_edges: Vec<Vec<usize>>,
    pure_cycle: bool,
}

impl KernelDecomposition {
    pub fn core(&self) -> &Multigraph {
        &self.core
    }

    pub fn kernel(&self) -> &Multigraph {
        &self.kernel
    }

    /// Kernel id → core id.
    pub fn kernel_vertices(&self) -> &[usize] {
        &self.kernel_vertices
    }

    /// Core vertex sequence of the 2-path behind each kernel edge.
    pub fn twopaths(&self) -> &[Vec<usize>] {
        &self.twopaths
    }

    /// Core edge indices along each 2-path.
    pub fn twopath_edges(&self) -> &[Vec<usize>] {
        &self.twopath_edges
    }

    /// Number of core edges on the 2-path of kernel edge `e`.
    pub fn path_length(&self, e: usize) -> usize {
        self.twopath_edges[e].len()
    }

    pub fn path_lengths(&self) -> Vec<usize> {
        self.twopath_edges.iter().map(Vec::len).collect()
    }

    pub fn is_pure_cycle(&self) -> bool {
        self.pure_cycle
    }

    /// Kernel id of a core vertex, if it is a kernel vertex.
    pub fn kernel_id(&self, core_vertex: usize) -> Option<usize> {
        self.kernel_vertices.binary_search(&core_vertex).ok()
    }

    /// Core edge multiset rebuilt from the 2-paths, as sorted `(min, max)` pairs.
    pub fn reexpanded_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .twopaths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect();
        out.sort_unstable();
        out
    }

    /// Builds a decomposition from parts produced by a sampler; the result is
    /// checked against the decomposition invariants.
    pub(crate) fn from_parts(
        core: Multigraph,
        kernel: Multigraph,
        kernel_vertices: Vec<usize>,
        twopaths: Vec<Vec<usize>>,
        twopath_edges: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let pure_cycle = kernel.vertex_count() == 0 && core.vertex_count() > 0;
        let d = KernelDecomposition { core, kernel, kernel_vertices, twopaths, twopath_edges, pure_cycle };
        d.check_invariants()?;
        Ok(d)
    }

    pub fn check_invariants(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Validation(m));
        for (k, &c) in self.kernel_vertices.iter().enumerate() {
            if self.core.degree(c) < 3 {
                return bad(format!("kernel vertex {k} (core {c}) has core degree {}", self.core.degree(c)));
            }
        }
        if self.kernel_vertices.windows(2).any(|w| w[0] >= w[1]) {
            return bad("kernel vertices not in ascending core order".into());
        }
        let mut covered = vec![false; self.core.edge_count()];
        for (e, (path, pedges)) in self.twopaths.iter().zip(&self.twopath_edges).enumerate() {
            if path.len() != pedges.len() + 1 {
                return bad(format!("2-path {e} has inconsistent lengths"));
            }
            let (a, b) = self.kernel.edges()[e];
            if path[0] != self.kernel_vertices[a] || path[path.len() - 1] != self.kernel_vertices[b] {
                return bad(format!("2-path {e} endpoints do not match kernel edge"));
            }
            for &w in &path[1..path.len() - 1] {
                if self.core.degree(w) != 2 {
                    return bad(format!("interior vertex {w} of 2-path {e} has degree {}", self.core.degree(w)));
                }
            }
            for (i, &ce) in pedges.iter().enumerate() {
                let (x, y) = self.core.edges()[ce];
                let (p, q) = (path[i], path[i + 1]);
                if !((x == p && y == q) || (x == q && y == p)) {
                    return bad(format!("2-path {e} step {i} does not follow core edge {ce}"));
                }
                if std::mem::replace(&mut covered[ce], true) {
                    return bad(format!("core edge {ce} lies on two 2-paths"));
                }
            }
        }
        if !self.pure_cycle && covered.iter().any(|c| !c) {
            return bad("2-paths do not cover every core edge".into());
        }
        Ok(())
    }
}

/// Decomposes a connected graph of minimum degree at least 2 into its kernel
/// and 2-paths. A component without vertices of degree 3 or more yields an
/// empty kernel with the pure-cycle flag set.
pub fn kernel_decompose(component: &Multigraph) -> Result<KernelDecomposition> {
    if component.vertex_count() == 0 {
        return Err(Error::Precondition("kernel_decompose needs a nonempty component".into()));
    }
    if !component.is_connected() {
        return Err(Error::Precondition("kernel_decompose needs a connected component".into()));
    }
    if component.min_degree() < 2 {
        return Err(Error::Precondition(format!(
            "kernel_decompose needs minimum degree 2, found {}",
            component.min_degree()
        )));
    }
    decompose_min_degree_two(component)
}

/// Same walk as [`kernel_decompose`] without the connectivity requirement.
/// Components that are pure cycles contribute no kernel edges; the flag is
/// only set when the whole graph has no vertex of degree 3 or more.
pub(crate) fn decompose_min_degree_two(core: &Multigraph) -> Result<KernelDecomposition> {
    let kernel_vertices: Vec<usize> =
        (0..core.vertex_count()).filter(|&v| core.degree(v) >= 3).collect();
    let mut kid = vec![usize::MAX; core.vertex_count()];
    for (i, &v) in kernel_vertices.iter().enumerate() {
        kid[v] = i;
    }
    let mut used = vec![false; core.edge_count()];
    let mut kedges = Vec::new();
    let mut twopaths = Vec::new();
    let mut twopath_edges = Vec::new();
    for &start in &kernel_vertices {
        for &(e0, w0) in core.incident(start) {
            if used[e0] {
                continue;
            }
            used[e0] = true;
            let mut path = vec![start, w0];
            let mut pedges = vec![e0];
            let (mut cur, mut via) = (w0, e0);
            while kid[cur] == usize::MAX {
                let &(e, w) = core
                    .incident(cur)
                    .iter()
                    .find(|&&(e, _)| e != via)
                    .ok_or_else(|| Error::Precondition(format!("vertex {cur} is a dead end")))?;
                used[e] = true;
                path.push(w);
                pedges.push(e);
                cur = w;
                via = e;
            }
            kedges.push((kid[start], kid[cur]));
            twopaths.push(path);
            twopath_edges.push(pedges);
        }
    }
    let kernel = Multigraph::new(kernel_vertices.len(), kedges)?;
    KernelDecomposition::from_parts(core.clone(), kernel, kernel_vertices, twopaths, twopath_edges)
}

/// Result of [`prune_to_subcubic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PruneOutcome {
    Empty,
    Pruned {
        /// Decomposition of the pruned core, relabelled densely.
        decomposition: KernelDecomposition,
        /// Pruned-core id → id in the input core.
        core_ids: Vec<usize>,
    },
}

impl PruneOutcome {
    pub fn decomposition(&self) -> Option<&KernelDecomposition> {
        match self {
            PruneOutcome::Empty => None,
            PruneOutcome::Pruned { decomposition, .. } => Some(decomposition),
        }
    }
}

/// Reduces a decomposition to a subcubic one:
///
/// - P1: delete kernel vertices of degree at least 4;
/// - P2: delete vertices of degree at most 1 while any exist;
/// - P3: suppress degree-2 vertices into a single edge;
/// - P4: keep one largest component (ties: the one holding the smallest kernel id).
///
/// The kept kernel edges determine an induced subgraph of the core, which is
/// decomposed afresh; its kernel is 3-regular.
pub fn prune_to_subcubic(decomp: &KernelDecomposition) -> Result<PruneOutcome> {
    let kernel = decomp.kernel();
    if kernel.vertex_count() == 0 {
        return Err(Error::Precondition("prune_to_subcubic needs a nonempty kernel".into()));
    }
    let k = kernel.vertex_count();
    // edges carry their core vertex sequence oriented from .0 to .1
    let mut edges: Vec<Option<(usize, usize, Vec<usize>)>> = kernel
        .edges()
        .iter()
        .zip(decomp.twopaths())
        .map(|(&(a, b), p)| Some((a, b, p.clone())))
        .collect();
    let mut alive = vec![true; k];

    let mut inc: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); k];
    for (i, e) in edges.iter().enumerate() {
        let (a, b, _) = e.as_ref().unwrap();
        inc[*a].insert(i, ());
        inc[*b].insert(i, ());
    }
    let degree = |v: usize, inc: &Vec<BTreeMap<usize, ()>>, edges: &Vec<Option<(usize, usize, Vec<usize>)>>| {
        inc[v]
            .keys()
            .map(|&i| {
                let (a, b, _) = edges[i].as_ref().unwrap();
                if a == b { 2 } else { 1 }
            })
            .sum::<usize>()
    };
    let delete_vertex = |v: usize,
                         alive: &mut Vec<bool>,
                         inc: &mut Vec<BTreeMap<usize, ()>>,
                         edges: &mut Vec<Option<(usize, usize, Vec<usize>)>>| {
        alive[v] = false;
        let ids: Vec<usize> = inc[v].keys().copied().collect();
        for i in ids {
            if let Some((a, b, _)) = edges[i].take() {
                inc[a].remove(&i);
                inc[b].remove(&i);
            }
        }
    };

    // P1
    for v in 0..k {
        if kernel.degree(v) >= 4 {
            delete_vertex(v, &mut alive, &mut inc, &mut edges);
        }
    }
    // P2
    loop {
        let low: Vec<usize> = (0..k).filter(|&v| alive[v] && degree(v, &inc, &edges) <= 1).collect();
        if low.is_empty() {
            break;
        }
        for v in low {
            if alive[v] && degree(v, &inc, &edges) <= 1 {
                delete_vertex(v, &mut alive, &mut inc, &mut edges);
            }
        }
    }
    // P3; a vertex whose only edge is a loop is an isolated cycle and stays
    for w in 0..k {
        if !alive[w] || degree(w, &inc, &edges) != 2 || inc[w].len() != 2 {
            continue;
        }
        let ids: Vec<usize> = inc[w].keys().copied().collect();
        let (a1, b1, p1) = edges[ids[0]].take().unwrap();
        let (a2, b2, p2) = edges[ids[1]].take().unwrap();
        for &(a, b, i) in &[(a1, b1, ids[0]), (a2, b2, ids[1])] {
            inc[a].remove(&i);
            inc[b].remove(&i);
        }
        // orient the first path to end at w, the second to start at w
        let mut first = p1;
        let u = if b1 == w { a1 } else { first.reverse(); b1 };
        let mut second = p2;
        let v = if a2 == w { b2 } else { second.reverse(); a2 };
        first.extend_from_slice(&second[1..]);
        alive[w] = false;
        let id = edges.len();
        edges.push(Some((u, v, first)));
        inc.push(BTreeMap::new());
        inc[u].insert(id, ());
        inc[v].insert(id, ());
    }
    // P4
    let mut comp = vec![usize::MAX; k];
    let mut best: Option<(usize, Vec<usize>)> = None;
    for s in 0..k {
        if !alive[s] || comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![s];
        comp[s] = s;
        let mut i = 0;
        while i < members.len() {
            let u = members[i];
            i += 1;
            for &id in inc[u].keys() {
                let (a, b, _) = edges[id].as_ref().unwrap();
                let w = if *a == u { *b } else { *a };
                if comp[w] == usize::MAX {
                    comp[w] = s;
                    members.push(w);
                }
            }
        }
        let cyclic_only = members.len() == 1 && degree(s, &inc, &edges) == 2;
        if cyclic_only {
            continue;
        }
        if best.as_ref().is_none_or(|(_, m)| members.len() > m.len()) {
            best = Some((s, members));
        }
    }
    let Some((root, _)) = best else {
        return Ok(PruneOutcome::Empty);
    };
    let mut core_vertices: Vec<usize> = edges
        .iter()
        .flatten()
        .filter(|(a, _, _)| comp[*a] == root)
        .flat_map(|(_, _, p)| p.iter().copied())
        .collect();
    core_vertices.sort_unstable();
    core_vertices.dedup();
    let sub = decomp.core().induced(&core_vertices);
    let decomposition = kernel_decompose(&sub.graph)?;
    debug_assert!((0..decomposition.kernel().vertex_count()).all(|v| decomposition.kernel().degree(v) == 3));
    Ok(PruneOutcome::Pruned { decomposition, core_ids: sub.parent })
}

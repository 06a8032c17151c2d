use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::embedding::LineEmbedding;
use super::signsum::{sign_solutions, Exact};
use crate::error::{Error, Result};
use crate::graphcore::Multigraph;

/// Ears up to this many edges are solved by pruned depth-first search;
/// longer ones by meet-in-the-middle.
const EAR_DIRECT_LIMIT: usize = 16;

pub const DEFAULT_CLASS_CAP: usize = 1 << 16;
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RigidityOptions {
    /// Keep only injective maps.
    pub injective_only: bool,
    /// Enumeration stops (and reports itself inexact) past this many classes.
    pub class_cap: usize,
    /// Work limit for the searches: search nodes when enumerating,
    /// branch-and-bound nodes for the largest reconstructible set.
    pub search_budget: u64,
}

impl Default for RigidityOptions {
    fn default() -> Self {
        RigidityOptions { injective_only: true, class_cap: DEFAULT_CLASS_CAP, search_budget: DEFAULT_SEARCH_BUDGET }
    }
}

/// One distance-preserving map up to isometry of the line.
///
/// The representative fixes the smallest vertex and gives the lowest-index
/// non-loop edge at that vertex the sign `+`. Loops carry sign `+`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidMapClass {
    pub representative: Vec<BigRational>,
    pub sigma: Vec<i8>,
    pub injective: bool,
    pub trivial: bool,
}

impl RigidMapClass {
    /// Whether the map restricted to `set` is an isometry.
    pub fn preserves(&self, emb: &LineEmbedding, set: &[usize]) -> bool {
        let Some(&first) = set.first() else { return true };
        let t = &self.representative[first] - emb.position(first);
        let r = &self.representative[first] + emb.position(first);
        set.iter().all(|&v| &self.representative[v] - emb.position(v) == t)
            || set.iter().all(|&v| &self.representative[v] + emb.position(v) == r)
    }

    /// Maximal vertex sets on which the map is a translation, followed by
    /// those on which it is a reflection. Each set is sorted; each list is
    /// ordered by smallest member.
    pub fn isometric_families(&self, emb: &LineEmbedding) -> Vec<Vec<usize>> {
        let mut out = group_by_key(self.representative.iter().zip(emb.positions()).map(|(f, p)| f - p));
        out.extend(group_by_key(self.representative.iter().zip(emb.positions()).map(|(f, p)| f + p)));
        out
    }

    pub fn max_isometric_family(&self, emb: &LineEmbedding) -> usize {
        self.isometric_families(emb).iter().map(Vec::len).max().unwrap_or(0)
    }
}

fn group_by_key(keys: impl Iterator<Item = BigRational>) -> Vec<Vec<usize>> {
    let mut index: HashMap<BigRational, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (v, k) in keys.enumerate() {
        let id = *index.entry(k).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[id].push(v);
    }
    groups
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub classes: Vec<RigidMapClass>,
    /// False when enumeration stopped at a cap; `classes` is then a prefix.
    pub class_count_exact: bool,
    /// Filled by [`super::reconstruction_report`]; plain enumeration leaves it empty.
    pub largest_set: Option<Vec<usize>>,
    pub per_class_max_isometric_family: Vec<usize>,
}

/// Enumerates the rigid maps of a connected graph up to isometry.
///
/// Parallel edges impose one constraint and loops none. The graph is split
/// into blocks; inside a 2-connected block the vertices are placed ear by ear
/// (first a cycle through the block's attachment vertex, then shortest
/// paths through unplaced vertices), each ear solving a signed subset-sum
/// for its edge signs, and every remaining edge is checked as soon as both
/// its ends are placed. Global classes are the block classes combined with
/// an independent reflection of each block about its attachment vertex.
pub fn enumerate_rigid_map_classes(
    g: &Multigraph,
    emb: &LineEmbedding,
    opts: &RigidityOptions,
) -> Result<ReconstructionReport> {
    let n = g.vertex_count();
    if emb.len() != n {
        return Err(Error::Validation(format!("embedding has {} positions for {n} vertices", emb.len())));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("rigid-map enumeration needs a connected graph".into()));
    }
    if opts.class_cap == 0 {
        return Err(Error::domain("class_cap", "must be at least 1"));
    }
    let (scaled, denom) = emb.scaled();
    let (images, exact) = if LineEmbedding::fits_small(&scaled) {
        let pos: Vec<i128> = scaled.iter().map(i128::from_big).collect();
        let (imgs, exact) = enumerate_scaled(g, &pos, opts)?;
        (imgs.into_iter().map(|v| v.iter().map(Exact::to_big).collect()).collect(), exact)
    } else {
        enumerate_scaled::<BigInt>(g, &scaled, opts)?
    };
    let classes: Vec<RigidMapClass> =
        images.into_iter().map(|img| build_class(g, &scaled, &denom, img)).collect();
    let per_class_max_isometric_family = classes.iter().map(|c| c.max_isometric_family(emb)).collect();
    Ok(ReconstructionReport { classes, class_count_exact: exact, largest_set: None, per_class_max_isometric_family })
}

fn build_class(g: &Multigraph, pos: &[BigInt], denom: &BigInt, img: Vec<BigInt>) -> RigidMapClass {
    let sigma = g
        .edges()
        .iter()
        .map(|&(u, v)| if u == v || &img[u] - &img[v] == &pos[u] - &pos[v] { 1 } else { -1 })
        .collect();
    let mut sorted: Vec<&BigInt> = img.iter().collect();
    sorted.sort();
    let injective = sorted.windows(2).all(|w| w[0] != w[1]);
    let trivial = img == pos;
    let representative = img.into_iter().map(|x| BigRational::new(x, denom.clone())).collect();
    RigidMapClass { representative, sigma, injective, trivial }
}

struct Block<T> {
    attach: usize,
    vertices: Vec<usize>,
    // per class, offsets from the attachment vertex aligned with `vertices`
    classes: Vec<Vec<T>>,
}

fn enumerate_scaled<T: Exact>(g: &Multigraph, pos: &[T], opts: &RigidityOptions) -> Result<(Vec<Vec<T>>, bool)> {
    let n = g.vertex_count();
    if n <= 1 {
        return Ok((vec![pos.to_vec()], true));
    }
    // underlying simple graph, remembering the lowest original edge index
    let mut key_to_h: HashMap<(usize, usize), usize> = HashMap::new();
    let mut h_edges: Vec<(usize, usize)> = Vec::new();
    let mut h_first: Vec<usize> = Vec::new();
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        key_to_h.entry(key).or_insert_with(|| {
            h_edges.push(key);
            h_first.push(i);
            h_edges.len() - 1
        });
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(u, v)) in h_edges.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
    }

    let root = 0;
    let block_edges = biconnected_blocks(n, &adj, root);
    let mut vertex_blocks: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut block_vertices: Vec<Vec<usize>> = Vec::with_capacity(block_edges.len());
    for (b, edges) in block_edges.iter().enumerate() {
        let mut vs: Vec<usize> = edges.iter().flat_map(|&e| [h_edges[e].0, h_edges[e].1]).collect();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            vertex_blocks[v].push(b);
        }
        block_vertices.push(vs);
    }
    let norm_edge = |b: usize, a: usize| -> usize {
        *block_edges[b]
            .iter()
            .filter(|&&e| h_edges[e].0 == a || h_edges[e].1 == a)
            .min_by_key(|&&e| h_first[e])
            .expect("attachment vertex lies on an edge of its block")
    };

    // blocks in breadth-first order over the block-cut tree; the block
    // holding the root's first edge leads
    let mut root_blocks = vertex_blocks[root].clone();
    root_blocks.sort_by_key(|&b| h_first[norm_edge(b, root)]);
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![false; block_edges.len()];
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    for &b in &root_blocks {
        seen[b] = true;
        queue.push_back((b, root));
    }
    while let Some((b, a)) = queue.pop_front() {
        order.push((b, a));
        for &v in &block_vertices[b] {
            if v == a {
                continue;
            }
            for &b2 in &vertex_blocks[v] {
                if !seen[b2] {
                    seen[b2] = true;
                    queue.push_back((b2, v));
                }
            }
        }
    }

    let mut budget = opts.search_budget;
    let mut exact = true;
    let mut blocks: Vec<Block<T>> = Vec::with_capacity(order.len());
    for &(b, a) in &order {
        let (classes, block_exact) =
            block_classes(&block_vertices[b], &block_edges[b], &h_edges, a, norm_edge(b, a), pos, opts, &mut budget)?;
        exact &= block_exact;
        blocks.push(Block { attach: a, vertices: block_vertices[b].clone(), classes });
    }

    // a truncated block search can come back empty
    if blocks.iter().any(|b| b.classes.is_empty()) {
        return Ok((Vec::new(), false));
    }

    // mixed-radix walk over (class, orientation) per block; the leading
    // block keeps orientation +
    let radix: Vec<usize> =
        blocks.iter().enumerate().map(|(i, b)| b.classes.len() * if i == 0 { 1 } else { 2 }).collect();
    let mut digits = vec![0usize; blocks.len()];
    let mut out: Vec<Vec<T>> = Vec::new();
    let mut phi: Vec<T> = pos.to_vec();
    let mut examined = 0u64;
    'walk: loop {
        examined += 1;
        if examined > opts.search_budget.max(opts.class_cap as u64) {
            exact = false;
            break;
        }
        for (i, (block, &digit)) in blocks.iter().zip(&digits).enumerate() {
            let (class, flip) = if i == 0 { (digit, false) } else { (digit / 2, digit % 2 == 1) };
            let base = phi[block.attach].clone();
            for (off, &v) in block.classes[class].iter().zip(&block.vertices) {
                if v != block.attach {
                    phi[v] = if flip { base.clone() - off.clone() } else { base.clone() + off.clone() };
                }
            }
        }
        if !opts.injective_only || is_injective(&phi) {
            if out.len() == opts.class_cap {
                exact = false;
                break;
            }
            out.push(phi.clone());
        }
        // advance, last digit fastest
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < radix[i] {
                continue 'walk;
            }
            digits[i] = 0;
        }
        break;
    }
    Ok((out, exact))
}

fn is_injective<T: Exact>(phi: &[T]) -> bool {
    let mut s: Vec<&T> = phi.iter().collect();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// Edge sets of the biconnected components reachable from `root`.
fn biconnected_blocks(n: usize, adj: &[Vec<(usize, usize)>], root: usize) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<usize> = Vec::new();
    // (vertex, edge to parent, next adjacency position)
    let mut frames: Vec<(usize, usize, usize)> = vec![(root, UNSEEN, 0)];
    disc[root] = 0;
    low[root] = 0;
    time += 1;
    while let Some(frame) = frames.last_mut() {
        let (v, pe) = (frame.0, frame.1);
        if frame.2 < adj[v].len() {
            let (w, e) = adj[v][frame.2];
            frame.2 += 1;
            if e == pe {
                continue;
            }
            if disc[w] == UNSEEN {
                edge_stack.push(e);
                disc[w] = time;
                low[w] = time;
                time += 1;
                frames.push((w, e, 0));
            } else if disc[w] < disc[v] {
                edge_stack.push(e);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            frames.pop();
            if let Some(parent) = frames.last() {
                let u = parent.0;
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            }
        }
    }
    blocks
}

struct Step {
    // p, interior..., q in local ids
    path: Vec<usize>,
    chords: Vec<(usize, usize)>,
}

/// Classes of one block, as offsets from the attachment vertex aligned with
/// `vertices`, identity first. The block's normalization edge has sign `+`.
#[allow(clippy::too_many_arguments)]
fn block_classes<T: Exact>(
    vertices: &[usize],
    edges: &[usize],
    h_edges: &[(usize, usize)],
    attach: usize,
    norm: usize,
    pos: &[T],
    opts: &RigidityOptions,
    budget: &mut u64,
) -> Result<(Vec<Vec<T>>, bool)> {
    let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let m = vertices.len();
    let p: Vec<T> = vertices.iter().map(|&v| pos[v].clone()).collect();
    let a = local[&attach];
    let identity: Vec<T> = p.iter().map(|x| x.clone() - p[a].clone()).collect();
    if edges.len() == 1 {
        return Ok((vec![identity], true));
    }
    let ledges: Vec<(usize, usize)> = edges.iter().map(|&e| (local[&h_edges[e].0], local[&h_edges[e].1])).collect();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for &(u, v) in &ledges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for l in nbrs.iter_mut() {
        l.sort_unstable();
    }
    let (nu, nv) = (local[&h_edges[norm].0], local[&h_edges[norm].1]);
    let x = if nu == a { nv } else { nu };
    let steps = ear_steps(m, &ledges, &nbrs, a, x);

    let mut psi: Vec<T> = vec![T::zero(); m];
    psi[a] = p[a].clone();
    let mut found: Vec<Vec<T>> = Vec::new();
    let mut exact = true;
    let mut search = EarSearch { p: &p, steps: &steps, opts, budget, found: &mut found, exact: &mut exact };
    search.run(0, &mut psi)?;

    let mut classes: Vec<Vec<T>> =
        found.into_iter().map(|img| img.iter().map(|y| y.clone() - p[a].clone()).collect()).collect();
    if let Some(i) = classes.iter().position(|c| *c == identity) {
        let id = classes.remove(i);
        classes.insert(0, id);
    }
    Ok((classes, exact))
}

fn ear_steps(m: usize, ledges: &[(usize, usize)], nbrs: &[Vec<usize>], a: usize, x: usize) -> Vec<Step> {
    let mut placed = vec![false; m];
    let mut order: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; ledges.len()];
    let edge_index: HashMap<(usize, usize), usize> =
        ledges.iter().enumerate().map(|(i, &(u, v))| ((u.min(v), u.max(v)), i)).collect();
    let mut steps = Vec::new();

    // shortest cycle through the normalization edge a-x
    let mut prev = vec![usize::MAX; m];
    let mut queue = VecDeque::from([x]);
    prev[x] = x;
    while let Some(u) = queue.pop_front() {
        if u == a {
            break;
        }
        for &w in &nbrs[u] {
            if u == x && w == a {
                continue;
            }
            if prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut back = vec![a];
    let mut cur = a;
    while cur != x {
        cur = prev[cur];
        back.push(cur);
    }
    back.push(a);
    back.reverse();
    // back = a, x, ..., a
    let mut pending = Some(back);

    while let Some(path) = pending.take() {
        for &v in &path {
            if !placed[v] {
                placed[v] = true;
                order.push(v);
            }
        }
        for w in path.windows(2) {
            used[edge_index[&(w[0].min(w[1]), w[0].max(w[1]))]] = true;
        }
        let mut chords = Vec::new();
        for (i, &(u, v)) in ledges.iter().enumerate() {
            if !used[i] && placed[u] && placed[v] {
                used[i] = true;
                chords.push((u, v));
            }
        }
        steps.push(Step { path, chords });
        pending = next_ear(&order, &placed, nbrs, true).or_else(|| next_ear(&order, &placed, nbrs, false));
    }
    steps
}

/// Shortest path `p, w, ..., y, q` from a placed vertex through unplaced ones
/// back to a placed vertex, with `q != p` when `distinct` is set.
fn next_ear(order: &[usize], placed: &[bool], nbrs: &[Vec<usize>], distinct: bool) -> Option<Vec<usize>> {
    let m = placed.len();
    for &p in order {
        for &w in &nbrs[p] {
            if placed[w] {
                continue;
            }
            let mut prev = vec![usize::MAX; m];
            prev[w] = w;
            let mut queue = VecDeque::from([w]);
            while let Some(y) = queue.pop_front() {
                let exit = nbrs[y].iter().copied().find(|&q| placed[q] && (q != p || (!distinct && y != w)));
                if let Some(q) = exit {
                    let mut path = vec![q, y];
                    let mut cur = y;
                    while cur != w {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.push(p);
                    path.reverse();
                    return Some(path);
                }
                for &z in &nbrs[y] {
                    if !placed[z] && prev[z] == usize::MAX {
                        prev[z] = y;
                        queue.push_back(z);
                    }
                }
            }
        }
    }
    None
}

struct EarSearch<'a, T> {
    p: &'a [T],
    steps: &'a [Step],
    opts: &'a RigidityOptions,
    budget: &'a mut u64,
    found: &'a mut Vec<Vec<T>>,
    exact: &'a mut bool,
}

impl<T: Exact> EarSearch<'_, T> {
    fn run(&mut self, step: usize, psi: &mut Vec<T>) -> Result<bool> {
        if *self.budget == 0 {
            *self.exact = false;
            return Ok(false);
        }
        *self.budget -= 1;
        if step == self.steps.len() {
            if self.opts.injective_only && !is_injective(psi) {
                return Ok(true);
            }
            if self.found.len() == self.opts.class_cap {
                *self.exact = false;
                return Ok(false);
            }
            self.found.push(psi.clone());
            return Ok(true);
        }
        let Step { path, chords } = &self.steps[step];
        let k = path.len() - 1;
        let d: Vec<T> = path.windows(2).map(|w| self.p[w[1]].clone() - self.p[w[0]].clone()).collect();
        let (first, last) = (path[0], path[k]);
        let solutions: Vec<Vec<i8>> = if step == 0 {
            // closed ear through the attachment vertex; first sign fixed +
            let target = T::zero() - d[0].clone();
            sign_solutions(&d[1..], &target, EAR_DIRECT_LIMIT)?
                .into_iter()
                .map(|mut s| {
                    s.insert(0, 1);
                    s
                })
                .collect()
        } else {
            let target = psi[last].clone() - psi[first].clone();
            sign_solutions(&d, &target, EAR_DIRECT_LIMIT)?
        };
        'sol: for s in solutions {
            for j in 1..k {
                let step_len = if s[j - 1] > 0 { d[j - 1].clone() } else { T::zero() - d[j - 1].clone() };
                psi[path[j]] = psi[path[j - 1]].clone() + step_len;
            }
            for &(u, v) in chords {
                if (psi[u].clone() - psi[v].clone()).abs() != (self.p[u].clone() - self.p[v].clone()).abs() {
                    continue 'sol;
                }
            }
            if !self.run(step + 1, psi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

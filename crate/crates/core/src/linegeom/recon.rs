use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::embedding::LineEmbedding;
use super::rigid::{enumerate_rigid_map_classes, ReconstructionReport, RigidMapClass, RigidityOptions};
use crate::error::{Error, Result};
use crate::graphcore::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconstructibilityAnswer {
    pub holds: bool,
    /// A rigid map (on the whole vertex set) that is not an isometry on `U`.
    pub witness: Option<RigidMapClass>,
}

fn check_inputs(g: &Multigraph, emb: &LineEmbedding) -> Result<()> {
    if emb.len() != g.vertex_count() {
        return Err(Error::Validation(format!(
            "embedding has {} positions for {} vertices",
            emb.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Whether every rigid map restricts to an isometry on `set`.
pub fn is_reconstructible(
    g: &Multigraph,
    emb: &LineEmbedding,
    set: &[usize],
    opts: &RigidityOptions,
) -> Result<ReconstructibilityAnswer> {
    check_inputs(g, emb)?;
    let n = g.vertex_count();
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(Error::Validation(format!("vertex {v} outside 0..{n}")));
    }
    let mut set: Vec<usize> = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() <= 1 {
        return Ok(ReconstructibilityAnswer { holds: true, witness: None });
    }
    let comps = g.components();
    let mut comp_of = vec![0; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    if let Some(&other) = set.iter().find(|&&v| comp_of[v] != comp_of[set[0]]) {
        return Ok(ReconstructibilityAnswer {
            holds: false,
            witness: Some(translation_witness(g, emb, &comps[comp_of[other]])),
        });
    }
    let comp = &comps[comp_of[set[0]]];
    let sub = g.induced(comp);
    let sub_emb = emb.restrict(&sub.parent);
    let report = enumerate_rigid_map_classes(&sub.graph, &sub_emb, opts)?;
    if !report.class_count_exact {
        return Err(Error::Indeterminate("rigid-map enumeration was truncated".into()));
    }
    let local: Vec<usize> = set.iter().map(|v| sub.parent.binary_search(v).expect("same component")).collect();
    for class in &report.classes {
        if !class.preserves(&sub_emb, &local) {
            return Ok(ReconstructibilityAnswer { holds: false, witness: Some(lift(g, emb, &sub.parent, class)) });
        }
    }
    Ok(ReconstructibilityAnswer { holds: true, witness: None })
}

/// Identity everywhere except `moved`, which is shifted past every position.
fn translation_witness(g: &Multigraph, emb: &LineEmbedding, moved: &[usize]) -> RigidMapClass {
    let ps = emb.positions();
    let lo = ps.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let hi = ps.iter().max().cloned().unwrap_or_else(BigRational::zero);
    let shift = hi - lo + BigRational::one();
    let mut representative = ps.to_vec();
    for &v in moved {
        representative[v] += &shift;
    }
    RigidMapClass { representative, sigma: vec![1; g.edge_count()], injective: true, trivial: false }
}

/// A component class extended by the identity on the other components.
fn lift(g: &Multigraph, emb: &LineEmbedding, parent: &[usize], class: &RigidMapClass) -> RigidMapClass {
    let mut representative = emb.positions().to_vec();
    for (i, &v) in parent.iter().enumerate() {
        representative[v] = class.representative[i].clone();
    }
    let sigma = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            if u != v && &representative[u] - &representative[v] != emb.position(u) - emb.position(v) {
                -1
            } else {
                1
            }
        })
        .collect();
    let mut sorted: Vec<&BigRational> = representative.iter().collect();
    sorted.sort();
    let injective = sorted.windows(2).all(|w| w[0] != w[1]);
    RigidMapClass { representative, sigma, injective, trivial: class.trivial }
}

/// A largest reconstructible vertex set, lexicographically smallest among
/// those of maximum size. Such a set lies inside one component.
pub fn largest_reconstructible_set(g: &Multigraph, emb: &LineEmbedding, opts: &RigidityOptions) -> Result<Vec<usize>> {
    check_inputs(g, emb)?;
    let mut best: Vec<usize> = Vec::new();
    for comp in g.components() {
        if comp.len() < best.len() {
            continue;
        }
        let sub = g.induced(&comp);
        let sub_emb = emb.restrict(&sub.parent);
        let report = enumerate_rigid_map_classes(&sub.graph, &sub_emb, opts)?;
        let local = best_set_from_report(&report, &sub_emb, opts)?;
        let global: Vec<usize> = local.iter().map(|&i| sub.parent[i]).collect();
        if better(&global, &best) {
            best = global;
        }
    }
    Ok(best)
}

/// Enumeration plus the largest reconstructible set, for a connected graph.
pub fn reconstruction_report(g: &Multigraph, emb: &LineEmbedding, opts: &RigidityOptions) -> Result<ReconstructionReport> {
    let mut report = enumerate_rigid_map_classes(g, emb, opts)?;
    report.largest_set = Some(best_set_from_report(&report, emb, opts)?);
    Ok(report)
}

fn better(a: &[usize], b: &[usize]) -> bool {
    match a.len().cmp(&b.len()) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a < b,
    }
}

pub(crate) fn best_set_from_report(
    report: &ReconstructionReport,
    emb: &LineEmbedding,
    opts: &RigidityOptions,
) -> Result<Vec<usize>> {
    if !report.class_count_exact {
        return Err(Error::Indeterminate("rigid-map enumeration was truncated".into()));
    }
    let n = emb.len();
    // family ids per class: translation ids, then reflection ids
    let keys: Vec<(Vec<usize>, Vec<usize>)> = report
        .classes
        .iter()
        .filter(|c| !c.trivial)
        .map(|c| {
            let t = family_ids(c.representative.iter().zip(emb.positions()).map(|(f, p)| f - p));
            let r = family_ids(c.representative.iter().zip(emb.positions()).map(|(f, p)| f + p));
            (t, r)
        })
        .collect();
    let mut search = Search { keys: &keys, best: Vec::new(), nodes: 0, budget: opts.search_budget };
    search.descend(0, (0..n).collect())?;
    Ok(search.best)
}

fn family_ids(keys: impl Iterator<Item = BigRational>) -> Vec<usize> {
    let mut index: HashMap<BigRational, usize> = HashMap::new();
    keys.map(|k| {
        let next = index.len();
        *index.entry(k).or_insert(next)
    })
    .collect()
}

struct Search<'a> {
    keys: &'a [(Vec<usize>, Vec<usize>)],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `cand` is sorted; every reconstructible set found below is a subset.
    fn descend(&mut self, level: usize, cand: Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::cap(
                "largest reconstructible set search",
                format!("more than {} branch-and-bound nodes", self.budget),
            ));
        }
        if cand.len() < self.best.len() {
            return Ok(());
        }
        if level == self.keys.len() {
            if better(&cand, &self.best) {
                self.best = cand;
            }
            return Ok(());
        }
        let (t, r) = &self.keys[level];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for ids in [t, r] {
            let mut by_id: HashMap<usize, Vec<usize>> = HashMap::new();
            for &v in &cand {
                by_id.entry(ids[v]).or_default().push(v);
            }
            groups.extend(by_id.into_values());
        }
        groups.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        groups.dedup();
        for grp in groups {
            if grp.len() < self.best.len() {
                break;
            }
            self.descend(level + 1, grp)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize, edges: &[(usize, usize)], pos: &[i64]) -> (Multigraph, LineEmbedding) {
        (Multigraph::new(n, edges.to_vec()).unwrap(), LineEmbedding::from_integers(pos.iter().copied()).unwrap())
    }

    #[test]
    fn small_exact_values() {
        let o = RigidityOptions::default();
        let (g, e) = setup(3, &[(0, 1), (1, 2)], &[0, 1, 5]);
        assert_eq!(largest_reconstructible_set(&g, &e, &o).unwrap(), vec![0, 1]);
        let (g, e) = setup(3, &[(0, 1), (1, 2), (2, 0)], &[0, 1, 3]);
        assert_eq!(largest_reconstructible_set(&g, &e, &o).unwrap(), vec![0, 1, 2]);
        let (g, e) = setup(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], &[0, 7, 19, 40, 77, 131]);
        assert_eq!(largest_reconstructible_set(&g, &e, &o).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn membership_queries() {
        let o = RigidityOptions::default();
        let (g, e) = setup(3, &[(0, 1), (1, 2)], &[0, 1, 5]);
        assert!(is_reconstructible(&g, &e, &[1, 2], &o).unwrap().holds);
        let ans = is_reconstructible(&g, &e, &[0, 1, 2], &o).unwrap();
        assert!(!ans.holds);
        assert_eq!(ans.witness.unwrap().sigma, vec![1, -1]);
        assert!(is_reconstructible(&g, &e, &[], &o).unwrap().holds);
        assert!(is_reconstructible(&g, &e, &[2], &o).unwrap().holds);
    }

    #[test]
    fn cross_component_sets_fail() {
        let o = RigidityOptions::default();
        let (g, e) = setup(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)], &[0, 7, 19, 40, 77, 131]);
        let ans = is_reconstructible(&g, &e, &[0, 3], &o).unwrap();
        assert!(!ans.holds);
        let w = ans.witness.unwrap();
        assert!(w.injective);
        assert!(!w.preserves(&e, &[0, 3]));
    }

    #[test]
    fn truncation_is_indeterminate() {
        let (g, e) = setup(4, &[(0, 1), (1, 2), (2, 3)], &[0, 10, 31, 75]);
        let o = RigidityOptions { class_cap: 2, ..Default::default() };
        assert!(matches!(is_reconstructible(&g, &e, &[0, 3], &o), Err(Error::Indeterminate(_))));
        assert!(matches!(largest_reconstructible_set(&g, &e, &o), Err(Error::Indeterminate(_))));
    }

    #[test]
    fn report_carries_largest_set() {
        let (g, e) = setup(3, &[(0, 1), (1, 2)], &[0, 1, 5]);
        let r = reconstruction_report(&g, &e, &RigidityOptions::default()).unwrap();
        assert_eq!(r.largest_set, Some(vec![0, 1]));
        assert_eq!(r.per_class_max_isometric_family, vec![3, 2]);
    }
}

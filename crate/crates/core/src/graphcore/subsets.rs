use std::ops::ControlFlow;

use super::multigraph::Multigraph;

/// Visits every vertex set `S` with `root ∈ S`, `|S| <= max_size` and `G[S]`
/// connected, exactly once. The slice passed to `visit` lists `S` in
/// insertion order (root first). Returning `ControlFlow::Break` stops the walk.
pub fn for_each_connected_subset<F>(g: &Multigraph, root: usize, max_size: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if max_size == 0 || root >= g.vertex_count() {
        return ControlFlow::Continue(());
    }
    let n = g.vertex_count();
    let neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut in_set = vec![false; n];
    let mut blocked = vec![false; n];
    in_set[root] = true;
    let mut set = vec![root];
    let ext = neighbors[root].clone();
    extend(&neighbors, &mut set, &mut in_set, &mut blocked, ext, max_size, &mut visit)
}

fn extend<F>(
    neighbors: &[Vec<usize>],
    set: &mut Vec<usize>,
    in_set: &mut [bool],
    blocked: &mut [bool],
    mut ext: Vec<usize>,
    max_size: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    visit(set)?;
    if set.len() == max_size {
        return ControlFlow::Continue(());
    }
    let mut newly_blocked = Vec::new();
    let mut flow = ControlFlow::Continue(());
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &x in &neighbors[w] {
            if !in_set[x] && !blocked[x] && x != w && !next.contains(&x) {
                next.push(x);
            }
        }
        set.push(w);
        in_set[w] = true;
        flow = extend(neighbors, set, in_set, blocked, next, max_size, visit);
        set.pop();
        in_set[w] = false;
        if flow.is_break() {
            break;
        }
        blocked[w] = true;
        newly_blocked.push(w);
    }
    for w in newly_blocked {
        blocked[w] = false;
    }
    flow
}

/// All connected vertex sets containing `root` with at most `max_size`
/// vertices, each sorted ascending, in visiting order.
pub fn enumerate_connected_subsets(g: &Multigraph, root: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = for_each_connected_subset(g, root, max_size, |s| {
        let mut v = s.to_vec();
        v.sort_unstable();
        out.push(v);
        ControlFlow::Continue(())
    });
    out
}

/// Number of connected sets of each size `1..=max_size` containing `root`.
pub fn connected_subset_counts(g: &Multigraph, root: usize, max_size: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_size + 1];
    let _ = for_each_connected_subset(g, root, max_size, |s| {
        counts[s.len()] += 1;
        ControlFlow::Continue(())
    });
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute(g: &Multigraph, root: usize, max_size: usize) -> HashSet<Vec<usize>> {
        let n = g.vertex_count();
        let mut out = HashSet::new();
        for mask in 1u32..(1 << n) {
            if mask & (1 << root) == 0 || mask.count_ones() as usize > max_size {
                continue;
            }
            let verts: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if g.induced(&verts).graph.is_connected() {
                out.insert(verts);
            }
        }
        out
    }

    #[test]
    fn star_center() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(enumerate_connected_subsets(&g, 0, 2).len(), 4);
    }

    #[test]
    fn triangle_root() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(enumerate_connected_subsets(&g, 0, 3).len(), 4);
    }

    #[test]
    fn k4_up_to_three() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let sets = enumerate_connected_subsets(&g, 0, 3);
        assert_eq!(sets.len(), 7);
        let e = std::f64::consts::E;
        assert!(7.0 <= 1.0 + 2.0 * e + (2.0 * e).powi(2));
    }

    #[test]
    fn matches_brute_force_without_duplicates() {
        let g = Multigraph::new(
            7,
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 4), (1, 1), (0, 1)],
        )
        .unwrap();
        for root in 0..7 {
            let sets = enumerate_connected_subsets(&g, root, 5);
            let uniq: HashSet<Vec<usize>> = sets.iter().cloned().collect();
            assert_eq!(uniq.len(), sets.len());
            assert_eq!(uniq, brute(&g, root, 5));
        }
    }

    #[test]
    fn early_stop() {
        let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut seen = 0;
        let flow = for_each_connected_subset(&g, 0, 4, |_| {
            seen += 1;
            if seen == 2 { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
        });
        assert!(flow.is_break());
        assert_eq!(seen, 2);
    }
}

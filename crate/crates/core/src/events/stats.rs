use crate::error::{Error, Result};
use crate::graphcore::KernelDecomposition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetStats {
    /// Kernel vertex ids, sorted.
    pub subset: Vec<usize>,
    /// Total number of core edges on the 2-paths of kernel edges touching `subset`.
    pub big_e: usize,
    /// Number of kernel edges touching `subset`; a loop counts once.
    pub big_d: usize,
    /// `|N_K(subset)|`, neighbours outside the subset.
    pub boundary: usize,
}

pub(crate) fn require_kernel(decomp: &KernelDecomposition) -> Result<()> {
    if decomp.is_pure_cycle() || decomp.kernel().vertex_count() == 0 {
        return Err(Error::Precondition("events need a decomposition with a nonempty kernel".into()));
    }
    Ok(())
}

pub fn subset_stats(decomp: &KernelDecomposition, subset: &[usize]) -> Result<SubsetStats> {
    require_kernel(decomp)?;
    let kernel = decomp.kernel();
    let k = kernel.vertex_count();
    if let Some(&v) = subset.iter().find(|&&v| v >= k) {
        return Err(Error::Validation(format!("{v} is not a kernel vertex (kernel has {k})")));
    }
    let mut set = subset.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut member = vec![false; k];
    for &v in &set {
        member[v] = true;
    }
    Ok(stats_with_membership(decomp, &set, &mut member))
}

/// `member` must mark exactly `subset` on entry; it is unchanged on return.
pub(crate) fn stats_with_membership(decomp: &KernelDecomposition, subset: &[usize], member: &mut [bool]) -> SubsetStats {
    let kernel = decomp.kernel();
    let mut big_d = 0;
    let mut big_e = 0;
    for &v in subset {
        // an edge inside the subset is counted from its smaller end
        for &(e, w) in kernel.incident(v) {
            if !member[w] || v <= w {
                big_d += 1;
                big_e += decomp.path_length(e);
            }
        }
    }
    let mut boundary = 0;
    let mut touched = Vec::new();
    for &v in subset {
        for w in kernel.neighbors(v) {
            if !member[w] {
                member[w] = true;
                touched.push(w);
                boundary += 1;
            }
        }
    }
    for w in touched {
        member[w] = false;
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    SubsetStats { subset: sorted, big_e, big_d, boundary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{kernel_decompose, Multigraph};

    fn theta() -> KernelDecomposition {
        // kernel vertices 0 and 1 joined by paths with 1, 1 and 2 interior vertices
        let g = Multigraph::new(6, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 5), (5, 1)]).unwrap();
        kernel_decompose(&g).unwrap()
    }

    #[test]
    fn theta_single_vertex() {
        let s = subset_stats(&theta(), &[0]).unwrap();
        assert_eq!((s.big_d, s.big_e, s.boundary), (3, 7, 1));
    }

    #[test]
    fn k4_single_vertex() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = subset_stats(&kernel_decompose(&g).unwrap(), &[0]).unwrap();
        assert_eq!((s.big_d, s.big_e, s.boundary), (3, 3, 3));
    }

    #[test]
    fn empty_subset() {
        let s = subset_stats(&theta(), &[]).unwrap();
        assert_eq!((s.big_d, s.big_e, s.boundary), (0, 0, 0));
    }

    #[test]
    fn loops_count_once() {
        // kernel: vertex with a loop joined to a triangle-ish structure
        let g = Multigraph::new(3, vec![(0, 0), (0, 1), (1, 2), (1, 2), (2, 2), (0, 1)]).unwrap();
        let d = kernel_decompose(&g).unwrap();
        let s = subset_stats(&d, &[0]).unwrap();
        assert_eq!(s.big_d, 3);
    }

    #[test]
    fn non_kernel_vertex_rejected() {
        assert!(matches!(subset_stats(&theta(), &[5]), Err(Error::Validation(_))));
    }
}

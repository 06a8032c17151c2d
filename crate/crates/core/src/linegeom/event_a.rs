use num_rational::Rational64;
use num_traits::{One, Zero};

use super::embedding::LineEmbedding;
use super::rigid::{enumerate_rigid_map_classes, RigidMapClass, RigidityOptions};
use crate::error::{Error, Result};
use crate::graphcore::KernelDecomposition;
use crate::ratio::ceil_mul;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventAReport {
    pub holds: bool,
    /// The class preserving the fewest kernel vertices.
    pub worst_class: Option<RigidMapClass>,
    /// Largest kernel-vertex set on which `worst_class` is an isometry.
    pub worst_preserved: usize,
    /// `ceil(c |V(K)|)`.
    pub required: usize,
}

/// Whether every rigid map of the core acts as an isometry on at least
/// `c |V(K)|` kernel vertices. `emb` gives positions of the core vertices.
pub fn event_a_check(
    decomp: &KernelDecomposition,
    emb: &LineEmbedding,
    c: Rational64,
    opts: &RigidityOptions,
) -> Result<EventAReport> {
    let k = decomp.kernel().vertex_count();
    if k == 0 {
        return Err(Error::Precondition("event A needs a nonempty kernel".into()));
    }
    if c <= Rational64::zero() || c > Rational64::one() {
        return Err(Error::domain("c", format!("{c} not in (0,1]")));
    }
    let report = enumerate_rigid_map_classes(decomp.core(), emb, opts)?;
    if !report.class_count_exact {
        return Err(Error::Indeterminate("rigid-map enumeration was truncated".into()));
    }
    let required = ceil_mul(&c, k);
    let mut is_kernel = vec![false; decomp.core().vertex_count()];
    for &v in decomp.kernel_vertices() {
        is_kernel[v] = true;
    }
    let mut worst: Option<(usize, &RigidMapClass)> = None;
    for class in &report.classes {
        let preserved = class
            .isometric_families(emb)
            .iter()
            .map(|f| f.iter().filter(|&&v| is_kernel[v]).count())
            .max()
            .unwrap_or(0);
        if worst.is_none_or(|(w, _)| preserved < w) {
            worst = Some((preserved, class));
        }
    }
    let (worst_preserved, worst_class) = worst.expect("the identity class is always present");
    Ok(EventAReport {
        holds: worst_preserved >= required,
        worst_class: Some(worst_class.clone()),
        worst_preserved,
        required,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{kernel_decompose, Multigraph};

    #[test]
    fn theta_half_is_vacuous() {
        let g = Multigraph::new(5, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        let d = kernel_decompose(&g).unwrap();
        let emb = LineEmbedding::from_integers([0, 1013, 271, 5003, 77]).unwrap();
        let r = event_a_check(&d, &emb, Rational64::new(1, 2), &RigidityOptions::default()).unwrap();
        assert_eq!(r.required, 1);
        assert!(r.holds);
    }

    #[test]
    fn k4_full() {
        let g = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let d = kernel_decompose(&g).unwrap();
        let emb = LineEmbedding::from_integers([0, 17, 45, 101]).unwrap();
        let r = event_a_check(&d, &emb, Rational64::one(), &RigidityOptions::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.worst_preserved, 4);
    }

    #[test]
    fn two_triangles_on_a_path_fail() {
        // triangles {0,1,2} and {4,5,6} joined through 3; kernel {2,4}
        let g = Multigraph::new(7, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
        let d = kernel_decompose(&g).unwrap();
        assert_eq!(d.kernel_vertices(), &[2, 4]);
        let emb = LineEmbedding::from_integers([0, 13, 40, 97, 180, 311, 502]).unwrap();
        let r = event_a_check(&d, &emb, Rational64::one(), &RigidityOptions::default()).unwrap();
        assert!(!r.holds);
        assert_eq!(r.worst_preserved, 1);
        assert!(!r.worst_class.unwrap().trivial);
    }
}

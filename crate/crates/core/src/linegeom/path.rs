use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::signsum::{count_sign_solutions, Exact};
use crate::error::{Error, Result};

/// Paths up to this many edges are counted by direct search.
pub const PATH_DIRECT_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionCount {
    pub total: u64,
    /// Solutions other than the all-plus sign vector.
    pub nontrivial: u64,
}

/// Counts sign vectors `s` with `Σ s_i d_i = img_v - img_u`, where `d_i` are
/// the consecutive gaps along `u, interior..., v`.
pub fn path_extension_solutions(
    pos_u: &BigRational,
    pos_v: &BigRational,
    img_u: &BigRational,
    img_v: &BigRational,
    interior: &[BigRational],
) -> Result<ExtensionCount> {
    let mut seq: Vec<&BigRational> = Vec::with_capacity(interior.len() + 2);
    seq.push(pos_u);
    seq.extend(interior);
    seq.push(pos_v);
    let mut seen = HashSet::new();
    for p in &seq[..seq.len() - 1] {
        if !seen.insert(*p) {
            return Err(Error::Validation(format!("path position {p} is repeated")));
        }
    }
    if interior.contains(pos_v) {
        return Err(Error::Validation(format!("path position {pos_v} is repeated")));
    }
    let denom = seq
        .iter()
        .chain([&img_u, &img_v])
        .fold(BigInt::one(), |l, p| l.lcm(p.denom()));
    let scale = |r: &BigRational| r.numer() * (&denom / r.denom());
    let d: Vec<BigInt> = seq.windows(2).map(|w| scale(w[1]) - scale(w[0])).collect();
    let target = scale(img_v) - scale(img_u);
    let small = d.iter().chain([&target]).all(|x| x.bits() <= 63);
    let total = if small {
        let d: Vec<i128> = d.iter().map(i128::from_big).collect();
        count_sign_solutions(&d, &i128::from_big(&target), PATH_DIRECT_LIMIT)?
    } else {
        count_sign_solutions(&d, &target, PATH_DIRECT_LIMIT)?
    };
    let plus = u64::from(pos_v - pos_u == img_v - img_u);
    Ok(ExtensionCount { total, nontrivial: total - plus })
}

/// Integer version of [`path_extension_solutions`] for hot loops. Positions
/// must fit in 63 bits.
pub fn path_extension_solutions_int(pos_u: i64, pos_v: i64, img_u: i64, img_v: i64, interior: &[i64]) -> Result<ExtensionCount> {
    let mut seq = Vec::with_capacity(interior.len() + 2);
    seq.push(pos_u);
    seq.extend_from_slice(interior);
    seq.push(pos_v);
    let mut seen = HashSet::new();
    for p in &seq {
        if !seen.insert(*p) {
            return Err(Error::Validation(format!("path position {p} is repeated")));
        }
    }
    let d: Vec<i128> = seq.windows(2).map(|w| w[1] as i128 - w[0] as i128).collect();
    let target = img_v as i128 - img_u as i128;
    let total = count_sign_solutions(&d, &target, PATH_DIRECT_LIMIT)?;
    let plus = u64::from(pos_v as i128 - pos_u as i128 == target);
    Ok(ExtensionCount { total, nontrivial: total - plus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn single_interior_vertex() {
        let r = path_extension_solutions(&q(0), &q(10), &q(0), &q(10), &[q(3)]).unwrap();
        assert_eq!(r, ExtensionCount { total: 1, nontrivial: 0 });
        let r = path_extension_solutions(&q(0), &q(10), &q(0), &q(4), &[q(3)]).unwrap();
        assert_eq!(r, ExtensionCount { total: 1, nontrivial: 1 });
        let r = path_extension_solutions(&q(0), &q(10), &q(0), &q(5), &[q(3)]).unwrap();
        assert_eq!(r, ExtensionCount { total: 0, nontrivial: 0 });
    }

    #[test]
    fn int_version_agrees() {
        assert_eq!(
            path_extension_solutions_int(0, 10, 0, 4, &[3]).unwrap(),
            ExtensionCount { total: 1, nontrivial: 1 }
        );
        assert_eq!(path_extension_solutions_int(0, 10, 0, 7, &[]).unwrap().total, 0);
    }

    #[test]
    fn repeated_interior_rejected() {
        assert!(path_extension_solutions(&q(0), &q(10), &q(0), &q(10), &[q(3), q(3)]).is_err());
        assert!(path_extension_solutions(&q(0), &q(10), &q(0), &q(10), &[q(10)]).is_err());
    }

    #[test]
    fn long_path_meet_in_the_middle_matches_structure() {
        // gaps all equal to 1: solutions are sign vectors with (k + t)/2 pluses
        let interior: Vec<BigRational> = (1..30).map(q).collect();
        let r = path_extension_solutions(&q(0), &q(30), &q(0), &q(2), &interior).unwrap();
        // 16 pluses out of 30
        let binom: u64 = (0..16).fold(1u64, |acc, i| acc * (30 - i) / (i + 1));
        assert_eq!(r.total, binom);
        assert_eq!(r.nontrivial, binom);
    }
}

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Exact integer type used by the sign-vector searches. `i128` is the fast
/// path for scaled positions that fit in 63 bits; `BigInt` handles the rest.
pub(crate) trait Exact: Clone + Ord + Hash + Signed + Debug + Send + Sync + 'static {
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Exact for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("caller checked the magnitude")
    }

    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Exact for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }

    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Largest half enumerated by the meet-in-the-middle search, in sign bits.
pub(crate) const MAX_HALF_BITS: usize = 22;

/// All `s ∈ {±1}^k` with `Σ s_i d_i = target`, as `+1/-1` vectors. Uses a
/// pruned depth-first search up to `direct_limit` terms and meet-in-the-middle
/// beyond.
pub(crate) fn sign_solutions<T: Exact>(d: &[T], target: &T, direct_limit: usize) -> Result<Vec<Vec<i8>>> {
    if d.len() <= direct_limit {
        let suffix = suffix_abs(d);
        let mut out = Vec::new();
        let mut signs = Vec::with_capacity(d.len());
        dfs(d, &suffix, 0, target.clone(), &mut signs, &mut out);
        return Ok(out);
    }
    let h = d.len() / 2;
    check_half(d.len() - h)?;
    let (left, right) = d.split_at(h);
    let mut table: HashMap<T, Vec<u64>> = HashMap::new();
    for_each_sum(left, |mask, s| table.entry(s).or_default().push(mask));
    let mut out = Vec::new();
    for_each_sum(right, |rmask, s| {
        if let Some(lmasks) = table.get(&(target.clone() - s)) {
            for &lmask in lmasks {
                let mut v = to_signs(lmask, left.len());
                v.extend(to_signs(rmask, right.len()));
                out.push(v);
            }
        }
    });
    Ok(out)
}

/// Number of `s ∈ {±1}^k` with `Σ s_i d_i = target`.
pub(crate) fn count_sign_solutions<T: Exact>(d: &[T], target: &T, direct_limit: usize) -> Result<u64> {
    if d.len() <= direct_limit {
        let suffix = suffix_abs(d);
        return Ok(count_dfs(d, &suffix, 0, target.clone()));
    }
    let h = d.len() / 2;
    check_half(d.len() - h)?;
    let (left, right) = d.split_at(h);
    let mut table: HashMap<T, u64> = HashMap::new();
    for_each_sum(left, |_, s| *table.entry(s).or_default() += 1);
    let mut total = 0u64;
    for_each_sum(right, |_, s| total += table.get(&(target.clone() - s)).copied().unwrap_or(0));
    Ok(total)
}

fn check_half(bits: usize) -> Result<()> {
    if bits > MAX_HALF_BITS {
        return Err(Error::cap(
            "sign-sum search",
            format!("half of {bits} terms exceeds {MAX_HALF_BITS}"),
        ));
    }
    Ok(())
}

fn suffix_abs<T: Exact>(d: &[T]) -> Vec<T> {
    let mut suffix = vec![T::zero(); d.len() + 1];
    for i in (0..d.len()).rev() {
        suffix[i] = suffix[i + 1].clone() + d[i].abs();
    }
    suffix
}

fn dfs<T: Exact>(d: &[T], suffix: &[T], i: usize, rest: T, signs: &mut Vec<i8>, out: &mut Vec<Vec<i8>>) {
    if rest.abs() > suffix[i] {
        return;
    }
    if i == d.len() {
        if rest.is_zero() {
            out.push(signs.clone());
        }
        return;
    }
    signs.push(1);
    dfs(d, suffix, i + 1, rest.clone() - d[i].clone(), signs, out);
    signs.pop();
    signs.push(-1);
    dfs(d, suffix, i + 1, rest + d[i].clone(), signs, out);
    signs.pop();
}

fn count_dfs<T: Exact>(d: &[T], suffix: &[T], i: usize, rest: T) -> u64 {
    if rest.abs() > suffix[i] {
        return 0;
    }
    if i == d.len() {
        return u64::from(rest.is_zero());
    }
    count_dfs(d, suffix, i + 1, rest.clone() - d[i].clone()) + count_dfs(d, suffix, i + 1, rest + d[i].clone())
}

/// Calls `f(mask, Σ s_i d_i)` for every sign vector, bit `i` of `mask` set
/// meaning `s_i = -1`.
fn for_each_sum<T: Exact>(d: &[T], mut f: impl FnMut(u64, T)) {
    let total: T = d.iter().cloned().fold(T::zero(), |a, b| a + b);
    let k = d.len();
    let mut sums: Vec<T> = vec![total];
    // sums[mask] = sums[mask without its top bit] - 2 d[top]
    for i in 0..k {
        let twice = d[i].clone() + d[i].clone();
        let len = sums.len();
        for m in 0..len {
            let v = sums[m].clone() - twice.clone();
            sums.push(v);
        }
    }
    for (mask, s) in sums.into_iter().enumerate() {
        f(mask as u64, s);
    }
}

fn to_signs(mask: u64, k: usize) -> Vec<i8> {
    (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()
}

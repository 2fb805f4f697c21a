//! Behaving sequences and the structure of long idempotent-sum free
//! sequences over a single cyclic semigroup.

mod classify;
mod explore;
mod invariants;

pub use classify::{
    classify_free_sequence, classify_shape, has_structure, length_threshold, matching_tags, structure_holds,
    Mode, StructClass, StructTag,
};
pub use explore::{explore_gap, GapKind, GapRow};
pub use invariants::{l_bruteforce, l_const, l_formula, lhat, lhat_bruteforce, lhat_formula};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, least_positive_residue, mod_inverse};
use crate::error::{Error, Result};

/// Default bound on the total handled by [`subset_sums`].
pub const DEFAULT_SUM_BOUND: u64 = 1_000_000;

/// A multiset of positive integers, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntSeq(Vec<u64>);

impl IntSeq {
    pub fn new(mut h: Vec<u64>) -> Result<Self> {
        if h.contains(&0) {
            return Err(Error::InvalidSpec("entries must be positive".into()));
        }
        h.sort_unstable();
        Ok(IntSeq(h))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl FromStr for IntSeq {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `1,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut pos = 0;
        let mut out = Vec::new();
        for part in s.split(',') {
            let t = part.trim();
            let v: u64 = t.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("expected a positive integer, found {t:?}"),
            })?;
            if v == 0 {
                return Err(Error::Parse { pos, msg: "entries must be positive".into() });
            }
            out.push(v);
            pos += part.len() + 1;
        }
        IntSeq::new(out)
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        f.write_str(&parts.join("·"))
    }
}

/// All sums of nonempty sub-multisets, ascending.
pub fn subset_sums(h: &IntSeq, bound: u64) -> Result<Vec<u64>> {
    let total = h.total();
    if total > bound {
        return Err(Error::BudgetExceeded(format!("subset-sum total {total} exceeds the bound {bound}")));
    }
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    let mut hi = 0usize;
    for &x in h.entries() {
        let x = x as usize;
        for s in (0..=hi).rev() {
            if reach[s] {
                reach[s + x] = true;
            }
        }
        hi += x;
    }
    Ok((1..=total).filter(|&s| reach[s as usize]).collect())
}

/// Sorted-slice test: every entry is at most one more than the sum before it.
pub(crate) fn behaving_sorted(h: &[u64]) -> bool {
    let mut prefix = 0u64;
    for &x in h {
        if x > prefix + 1 {
            return false;
        }
        prefix += x;
    }
    true
}

/// `Σ(h) = [1, Σh]`.
pub fn is_behaving(h: &IntSeq) -> Result<bool> {
    if h.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(behaving_sorted(h.entries()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundClass {
    Behaving,
    /// Not behaving, total above `2ℓ`.
    Strict,
    /// `1^{ℓ−1}·(ℓ+1)`.
    EqSplit,
    /// `2^ℓ`.
    EqTwos,
}

impl fmt::Display for BoundClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundClass::Behaving => "behaving",
            BoundClass::Strict => "strict",
            BoundClass::EqSplit => "eq_split",
            BoundClass::EqTwos => "eq_twos",
        })
    }
}

/// Behaving, or where a non-behaving sequence sits relative to `Σh ≥ 2ℓ`.
/// For `ℓ = 1` the two equality shapes coincide in `2`, reported as `eq_split`.
pub fn behaving_bound_classify(h: &IntSeq) -> Result<BoundClass> {
    if is_behaving(h)? {
        return Ok(BoundClass::Behaving);
    }
    let l = h.len() as u64;
    let total = h.total();
    if total > 2 * l {
        return Ok(BoundClass::Strict);
    }
    let e = h.entries();
    let split = e[..e.len() - 1].iter().all(|&x| x == 1) && e[e.len() - 1] == l + 1;
    if total == 2 * l && split {
        return Ok(BoundClass::EqSplit);
    }
    if total == 2 * l && e.iter().all(|&x| x == 2) {
        return Ok(BoundClass::EqTwos);
    }
    Err(Error::Internal(format!("non-behaving {h} has total {total} with length {l}")))
}

/// A unit `c` and a behaving `H` with `t = (c·h_i mod n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScWitness {
    pub c: u64,
    #[serde(rename = "H")]
    pub h: IntSeq,
}

/// Units coprime to `n` in ascending order, with their inverses.
pub(crate) fn units(n: u64) -> impl Iterator<Item = (u64, u64)> {
    (1..n.max(2)).filter(move |&c| gcd(c, n) == 1).map(move |c| (c, mod_inverse(c, n).expect("unit")))
}

/// `h_i`: least positive residues of `inv · t_i`, sorted.
pub(crate) fn scaled(t: &[u64], inv: u64, n: u64) -> Vec<u64> {
    let mut h: Vec<u64> = t
        .iter()
        .map(|&x| least_positive_residue(((inv as u128 * x as u128) % n as u128) as u64, n))
        .collect();
    h.sort_unstable();
    h
}

/// First `(c, H)` in ascending `c` with `H` behaving and `ΣH ≤ n − 1`.
pub fn savchev_chen(n: u64, t: &[u64]) -> Result<Option<ScWitness>> {
    if n < 2 {
        return Err(Error::Precondition(format!("modulus {n} must be at least 2")));
    }
    for (c, inv) in units(n) {
        let h = scaled(t, inv, n);
        if h.iter().sum::<u64>() < n && behaving_sorted(&h) {
            return Ok(Some(ScWitness { c, h: IntSeq(h) }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(s: &str) -> IntSeq {
        s.parse().unwrap()
    }

    #[test]
    fn sums() {
        assert_eq!(subset_sums(&h("1,1,2"), DEFAULT_SUM_BOUND).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(subset_sums(&h("2,2"), DEFAULT_SUM_BOUND).unwrap(), vec![2, 4]);
        assert_eq!(subset_sums(&h("5"), DEFAULT_SUM_BOUND).unwrap(), vec![5]);
        assert!(subset_sums(&h("5,6"), 10).is_err());
    }

    #[test]
    fn behaving() {
        assert!(is_behaving(&h("1,1,2")).unwrap());
        assert!(!is_behaving(&h("1,3")).unwrap());
        assert!(is_behaving(&h("1")).unwrap());
        assert_eq!(is_behaving(&IntSeq::default()), Err(Error::EmptySequence));
    }

    #[test]
    fn bound_classes() {
        assert_eq!(behaving_bound_classify(&h("2,2")).unwrap(), BoundClass::EqTwos);
        assert_eq!(behaving_bound_classify(&h("1,3")).unwrap(), BoundClass::EqSplit);
        assert_eq!(behaving_bound_classify(&h("3,4")).unwrap(), BoundClass::Strict);
        assert_eq!(behaving_bound_classify(&h("1,2")).unwrap(), BoundClass::Behaving);
    }

    #[test]
    fn savchev_chen_examples() {
        let w = savchev_chen(5, &[3, 3, 3]).unwrap().unwrap();
        assert_eq!((w.c, w.h.entries()), (3, &[1, 1, 1][..]));
        let w = savchev_chen(7, &[2, 2, 2, 2]).unwrap().unwrap();
        assert_eq!((w.c, w.h.entries()), (2, &[1, 1, 1, 1][..]));
        assert!(savchev_chen(1, &[]).is_err());
        // outside the guarantee: reported either way without error
        assert!(savchev_chen(6, &[5, 5]).is_ok());
    }
}

//! Sequences over a product semigroup and the predicates on them.
//!
//! A sequence is a finite multiset: every predicate here is invariant under
//! reordering, and two [`Seq`] values compare equal when their multisets do.

mod file;
mod reach;

pub use file::{format_seq_file, parse_seq_file};
pub(crate) use reach::DenseReach;
pub use reach::{CoordState, Layout, ReachSet, DEFAULT_STATE_CAP};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{Element, GroupSpec, ProductSpec};

/// A multiset of elements, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seq {
    terms: Vec<Element>,
}

impl Seq {
    pub fn new(mut terms: Vec<Element>) -> Self {
        terms.sort();
        Seq { terms }
    }

    pub fn empty() -> Self {
        Seq::default()
    }

    /// Single-coordinate shorthand: each entry is a canonical index.
    pub fn from_indices(ind: &[u64]) -> Self {
        Seq::new(ind.iter().map(|&t| Element::new(vec![t])).collect())
    }

    /// `a^[m]`
    pub fn repeat(a: &Element, m: usize) -> Self {
        Seq { terms: vec![a.clone(); m] }
    }

    pub fn terms(&self) -> &[Element] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct terms with their multiplicities, in element order.
    pub fn multiplicities(&self) -> BTreeMap<&Element, usize> {
        let mut m = BTreeMap::new();
        for t in &self.terms {
            *m.entry(t).or_insert(0) += 1;
        }
        m
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Seq) -> Seq {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Seq::new(terms)
    }

    pub fn with(&self, a: Element) -> Seq {
        let mut terms = self.terms.clone();
        terms.push(a);
        Seq::new(terms)
    }

    /// `self · a^[-1]`, or `None` when `a` is not a term.
    pub fn without(&self, a: &Element) -> Option<Seq> {
        let pos = self.terms.iter().position(|t| t == a)?;
        let mut terms = self.terms.clone();
        terms.remove(pos);
        Some(Seq { terms })
    }

    /// Whether `self` divides `other` as multisets.
    pub fn is_subsequence_of(&self, other: &Seq) -> bool {
        let theirs = other.multiplicities();
        self.multiplicities().iter().all(|(a, &m)| theirs.get(a).is_some_and(|&v| v >= m))
    }

    /// First coordinate of every term; meant for single-coordinate specs.
    pub fn indices(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.idx()[0]).collect()
    }

    pub fn validate(&self, spec: &ProductSpec) -> Result<()> {
        self.terms.iter().try_for_each(|t| spec.validate(t))
    }
}

impl FromIterator<Element> for Seq {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        Seq::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({t})")?;
        }
        f.write_str("]")
    }
}

/// Per-coordinate totals of the canonical indices of all terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SumProfile(pub Vec<u128>);

impl SumProfile {
    pub fn of(spec: &ProductSpec, t: &Seq) -> Result<Self> {
        t.validate(spec)?;
        let mut sums = vec![0u128; spec.arity()];
        for term in t.terms() {
            for (s, &x) in sums.iter_mut().zip(term.idx()) {
                *s += x as u128;
            }
        }
        Ok(SumProfile(sums))
    }

    /// The sum condition for the idempotent: every coordinate total is at
    /// least `cap_i` and divisible by `n_i`.
    pub fn meets_idempotent(&self, spec: &ProductSpec) -> bool {
        self.0.iter().zip(spec.coords()).all(|(&s, c)| {
            s >= c.cap() as u128 && s % c.period() as u128 == 0
        })
    }
}

impl std::ops::Add for SumProfile {
    type Output = SumProfile;

    fn add(self, rhs: SumProfile) -> SumProfile {
        SumProfile(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// A multiset of residue vectors over `Π Z_{n_i}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupSeq {
    terms: Vec<Vec<u64>>,
}

impl GroupSeq {
    /// Residues are reduced modulo the group's moduli.
    pub fn new(g: &GroupSpec, terms: Vec<Vec<u64>>) -> Result<Self> {
        let n = g.periods();
        let mut reduced = terms
            .into_iter()
            .map(|t| {
                if t.len() != n.len() {
                    return Err(Error::DimensionMismatch { expected: n.len(), got: t.len() });
                }
                Ok(t.iter().zip(n).map(|(x, m)| x % m).collect())
            })
            .collect::<Result<Vec<Vec<u64>>>>()?;
        reduced.sort();
        Ok(GroupSeq { terms: reduced })
    }

    /// Elements of a cyclic group `Z_n`.
    pub fn cyclic(n: u64, residues: &[u64]) -> Self {
        let mut terms: Vec<Vec<u64>> = residues.iter().map(|&x| vec![x % n]).collect();
        terms.sort();
        GroupSeq { terms }
    }

    pub fn terms(&self) -> &[Vec<u64>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_arity(&self, g: &GroupSpec) -> Result<()> {
        let r = g.periods().len();
        match self.terms.iter().find(|t| t.len() != r) {
            Some(t) => Err(Error::DimensionMismatch { expected: r, got: t.len() }),
            None => Ok(()),
        }
    }
}

/// `σ(T)`, the sum of all terms. Undefined on the empty sequence because a
/// product of cyclic semigroups need not have an identity.
pub fn sigma(spec: &ProductSpec, t: &Seq) -> Result<Element> {
    t.validate(spec)?;
    let mut it = t.terms().iter();
    let first = it.next().ok_or(Error::EmptySequence)?.clone();
    Ok(it.fold(first, |acc, a| spec.add_unchecked(&acc, a)))
}

/// `Ψ(T)`: every term reduced to its residue vector in `G_S`.
pub fn psi(spec: &ProductSpec, t: &Seq) -> Result<GroupSeq> {
    t.validate(spec)?;
    let n = spec.periods();
    let mut terms: Vec<Vec<u64>> = t
        .terms()
        .iter()
        .map(|a| a.idx().iter().zip(&n).map(|(x, m)| x % m).collect())
        .collect();
    terms.sort();
    Ok(GroupSeq { terms })
}

pub fn is_idempotent_sum(spec: &ProductSpec, t: &Seq) -> Result<bool> {
    if t.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(SumProfile::of(spec, t)?.meets_idempotent(spec))
}

/// Reach set of `t` under the default state cap.
pub fn reach(spec: &ProductSpec, t: &Seq) -> Result<ReachSet> {
    reach_with_cap(spec, t, DEFAULT_STATE_CAP)
}

pub fn reach_with_cap(spec: &ProductSpec, t: &Seq, cap: usize) -> Result<ReachSet> {
    t.validate(spec)?;
    let mut r = ReachSet::empty(Layout::for_semigroup(spec)?, cap);
    for a in t.terms() {
        r.push(a)?;
    }
    Ok(r)
}

/// No nonempty subsequence sums to the idempotent. The empty sequence is free.
pub fn is_idempotent_sum_free(spec: &ProductSpec, t: &Seq) -> Result<bool> {
    Ok(!reach(spec, t)?.contains_target())
}

/// `t` sums to the idempotent and no proper nonempty subsequence does.
pub fn is_minimal_idempotent_sum(spec: &ProductSpec, t: &Seq) -> Result<bool> {
    if !is_idempotent_sum(spec, t)? {
        return Ok(false);
    }
    // Every proper subsequence lies inside t minus one copy of some term.
    for a in t.multiplicities().keys() {
        let rest = t.without(a).expect("term of t");
        if !is_idempotent_sum_free(spec, &rest)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nonempty subsequence of `t` summing to the idempotent, if one exists.
pub fn idempotent_subsequence(spec: &ProductSpec, t: &Seq) -> Result<Option<Seq>> {
    t.validate(spec)?;
    let layout = Layout::for_semigroup(spec)?;
    Ok(witness_subsequence(&layout, t.terms().iter().map(|a| a.idx()), DEFAULT_STATE_CAP)?
        .map(|picked| picked.into_iter().map(|i| t.terms()[i].clone()).collect()))
}

/// Positions of a nonempty subsequence whose state is the layout target.
fn witness_subsequence<'a>(
    layout: &Layout,
    terms: impl Iterator<Item = &'a [u64]>,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    // first-reach predecessor: state -> (previous state or None for empty, term position)
    let mut pred: std::collections::HashMap<u64, (Option<u64>, usize)> = Default::default();
    let target = layout.target();
    for (j, raw) in terms.enumerate() {
        let mut fresh: Vec<(u64, (Option<u64>, usize))> = pred
            .keys()
            .map(|&s| (layout.step(s, raw), (Some(s), j)))
            .collect();
        fresh.push((layout.step(0, raw), (None, j)));
        for (s, p) in fresh {
            pred.entry(s).or_insert(p);
        }
        if pred.len() > cap {
            return Err(Error::StateCapExceeded { cap });
        }
        if pred.contains_key(&target) {
            let mut picked = Vec::new();
            let mut cur = Some(target);
            while let Some(s) = cur {
                let (prev, pos) = pred[&s];
                picked.push(pos);
                cur = prev;
            }
            picked.reverse();
            return Ok(Some(picked));
        }
    }
    Ok(None)
}

/// No nonempty subsequence sums to zero in `Π Z_{n_i}`.
pub fn is_zero_sum_free(g: &GroupSpec, t: &GroupSeq) -> Result<bool> {
    t.check_arity(g)?;
    let mut r = ReachSet::empty(Layout::for_group(g.periods())?, DEFAULT_STATE_CAP);
    for a in t.terms() {
        r.push_raw(a)?;
        if r.contains_target() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nonempty, sums to zero, and no proper nonempty subsequence does.
pub fn is_minimal_zero_sum(g: &GroupSpec, t: &GroupSeq) -> Result<bool> {
    t.check_arity(g)?;
    if t.is_empty() {
        return Ok(false);
    }
    let n = g.periods();
    let zero = (0..n.len()).all(|i| t.terms().iter().map(|a| a[i]).sum::<u64>() % n[i] == 0);
    if !zero {
        return Ok(false);
    }
    // A zero-sum sequence is minimal iff removing any single term leaves it zero-sum free.
    let mut seen = std::collections::BTreeSet::new();
    for (pos, a) in t.terms().iter().enumerate() {
        if !seen.insert(a) {
            continue;
        }
        let mut rest = t.terms().to_vec();
        rest.remove(pos);
        if !is_zero_sum_free(g, &GroupSeq { terms: rest })? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ProductSpec {
        s.parse().unwrap()
    }

    fn el(v: &[u64]) -> Element {
        Element::new(v.to_vec())
    }

    #[test]
    fn sigma_examples() {
        let s = spec("C(2;3)");
        assert_eq!(sigma(&s, &Seq::from_indices(&[1, 1, 1])).unwrap(), el(&[3]));
        assert_eq!(sigma(&s, &Seq::from_indices(&[2, 3])).unwrap(), el(&[2]));
        assert_eq!(sigma(&spec("C(1;1)"), &Seq::from_indices(&[1])).unwrap(), el(&[1]));
        assert_eq!(sigma(&s, &Seq::empty()), Err(Error::EmptySequence));
    }

    #[test]
    fn psi_examples() {
        let s = spec("C(2;3)");
        assert_eq!(psi(&s, &Seq::from_indices(&[3])).unwrap().terms(), &[vec![0]]);
        let s = spec("C(3;2)xC(1;4)");
        assert_eq!(psi(&s, &Seq::new(vec![el(&[4, 3])])).unwrap().terms(), &[vec![0, 3]]);
        assert!(psi(&s, &Seq::empty()).unwrap().is_empty());
    }

    #[test]
    fn idempotent_sum_examples() {
        let s = spec("C(2;3)");
        assert!(is_idempotent_sum(&s, &Seq::from_indices(&[1, 1, 1])).unwrap());
        assert!(!is_idempotent_sum(&s, &Seq::from_indices(&[1, 1])).unwrap());
        assert!(is_idempotent_sum(&spec("C(3;2)"), &Seq::from_indices(&[1, 1, 1, 1])).unwrap());
        assert_eq!(is_idempotent_sum(&s, &Seq::empty()), Err(Error::EmptySequence));
    }

    #[test]
    fn reach_examples() {
        let s = spec("C(2;3)");
        let r = reach(&s, &Seq::from_indices(&[1])).unwrap();
        assert_eq!(r.states(), vec![vec![CoordState { saturated: false, value: Some(1), residue: 1 }]]);

        let r = reach(&s, &Seq::from_indices(&[1, 1])).unwrap();
        let values: Vec<_> = r.states().iter().map(|st| st[0].value).collect();
        assert_eq!(values, vec![Some(1), Some(2)]);

        // sums 3 and 6 both saturate to residue 0
        let r = reach(&s, &Seq::from_indices(&[3, 3])).unwrap();
        assert_eq!(r.states(), vec![vec![CoordState { saturated: true, value: None, residue: 0 }]]);

        assert!(reach(&s, &Seq::empty()).unwrap().is_empty());
    }

    #[test]
    fn free_examples() {
        assert!(is_idempotent_sum_free(&spec("C(2;3)"), &Seq::from_indices(&[1, 1])).unwrap());
        assert!(!is_idempotent_sum_free(&spec("C(2;3)"), &Seq::from_indices(&[3])).unwrap());
        assert!(is_idempotent_sum_free(&spec("C(3;2)"), &Seq::from_indices(&[1, 1, 1])).unwrap());
        assert!(is_idempotent_sum_free(&spec("C(3;2)"), &Seq::empty()).unwrap());
    }

    #[test]
    fn minimal_examples() {
        let s = spec("C(2;3)");
        assert!(is_minimal_idempotent_sum(&s, &Seq::from_indices(&[1, 1, 1])).unwrap());
        assert!(!is_minimal_idempotent_sum(&s, &Seq::from_indices(&[1, 1, 1, 3])).unwrap());
        assert!(is_minimal_idempotent_sum(&spec("C(1;1)"), &Seq::from_indices(&[1])).unwrap());
    }

    #[test]
    fn zero_sum_free_examples() {
        let z5 = GroupSpec::new(vec![5]).unwrap();
        assert!(is_zero_sum_free(&z5, &GroupSeq::cyclic(5, &[3, 3, 3])).unwrap());
        let z4 = GroupSpec::new(vec![4]).unwrap();
        assert!(!is_zero_sum_free(&z4, &GroupSeq::cyclic(4, &[2, 2])).unwrap());
        assert!(is_zero_sum_free(&z4, &GroupSeq::default()).unwrap());
        let z2z2 = GroupSpec::new(vec![2, 2]).unwrap();
        assert!(matches!(
            is_zero_sum_free(&z2z2, &GroupSeq::cyclic(2, &[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn witness_is_idempotent_subsequence() {
        let s = spec("C(3;2)xC(1;4)");
        let t = Seq::new(vec![el(&[1, 1]), el(&[1, 1]), el(&[2, 2]), el(&[1, 3])]);
        let w = idempotent_subsequence(&s, &t).unwrap().expect("not free");
        assert!(w.is_subsequence_of(&t));
        assert!(is_idempotent_sum(&s, &w).unwrap());
        let free = Seq::new(vec![el(&[1, 1]), el(&[1, 1])]);
        assert_eq!(idempotent_subsequence(&s, &free).unwrap(), None);
    }

    #[test]
    fn minimal_zero_sum() {
        let z6 = GroupSpec::new(vec![6]).unwrap();
        assert!(is_minimal_zero_sum(&z6, &GroupSeq::cyclic(6, &[1, 5])).unwrap());
        assert!(!is_minimal_zero_sum(&z6, &GroupSeq::cyclic(6, &[3, 3, 1, 5])).unwrap());
        assert!(!is_minimal_zero_sum(&z6, &GroupSeq::cyclic(6, &[1, 1])).unwrap());
    }
}

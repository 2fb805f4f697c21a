//! Capped subset-sum states.
//!
//! Whether a subsequence sums to the idempotent only depends, per coordinate,
//! on whether its index sum has reached `cap_i = ⌈k_i/n_i⌉·n_i` and on the
//! sum modulo `n_i`. Each coordinate sum is therefore folded into
//! `[0, cap_i + n_i)`: values below `cap_i` are kept exactly, larger values
//! collapse to `cap_i + (sum mod n_i)`. The idempotent condition holds exactly
//! on the state whose every coordinate equals `cap_i`.
//!
//! A zero cap gives the residue-only encoding used for groups.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Element, ProductSpec};

/// Mixed-radix encoding of per-coordinate capped sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    caps: Vec<u64>,
    periods: Vec<u64>,
    strides: Vec<u64>,
    universe: u64,
    target: u64,
}

impl Layout {
    pub fn new(caps: Vec<u64>, periods: Vec<u64>) -> Result<Self> {
        debug_assert_eq!(caps.len(), periods.len());
        let mut strides = Vec::with_capacity(caps.len());
        let mut universe: u64 = 1;
        for (&c, &n) in caps.iter().zip(&periods) {
            strides.push(universe);
            let radix = c.checked_add(n).ok_or(Error::Overflow("coordinate state radix"))?;
            universe = universe
                .checked_mul(radix)
                .ok_or(Error::Overflow("reach-state universe exceeds u64"))?;
        }
        let target = caps.iter().zip(&strides).map(|(c, s)| c * s).sum();
        Ok(Layout { caps, periods, strides, universe, target })
    }

    /// States for idempotent-sum questions over a product semigroup.
    pub fn for_semigroup(spec: &ProductSpec) -> Result<Self> {
        Layout::new(spec.caps(), spec.periods())
    }

    /// Residue-only states for zero-sum questions over `Π Z_{n_i}`.
    pub fn for_group(periods: &[u64]) -> Result<Self> {
        Layout::new(vec![0; periods.len()], periods.to_vec())
    }

    pub fn arity(&self) -> usize {
        self.caps.len()
    }

    /// Number of encodable states, `Π (cap_i + n_i)`.
    pub fn universe(&self) -> u64 {
        self.universe
    }

    /// The state meaning "sum is the idempotent" (or zero, for groups).
    pub fn target(&self) -> u64 {
        self.target
    }

    #[inline]
    fn fold(&self, i: usize, x: u64) -> u64 {
        let c = self.caps[i];
        if x < c {
            x
        } else {
            c + (x - c) % self.periods[i]
        }
    }

    /// Fold one coordinate digit plus a raw amount.
    #[inline]
    pub(crate) fn next_digit(&self, i: usize, digit: u64, raw: u64) -> u64 {
        self.fold(i, digit + raw)
    }

    pub(crate) fn radix(&self, i: usize) -> u64 {
        self.caps[i] + self.periods[i]
    }

    pub(crate) fn stride(&self, i: usize) -> u64 {
        self.strides[i]
    }

    /// State reached by adding `raw` to the sums encoded by `state`. State 0
    /// doubles as the empty sum.
    #[inline]
    pub fn step(&self, state: u64, raw: &[u64]) -> u64 {
        let mut rest = state;
        let mut out = 0;
        for i in 0..self.caps.len() {
            let radix = self.radix(i);
            let digit = rest % radix;
            rest /= radix;
            out += self.fold(i, digit + raw[i]) * self.strides[i];
        }
        out
    }

    pub fn decode(&self, state: u64) -> Vec<CoordState> {
        let mut rest = state;
        (0..self.caps.len())
            .map(|i| {
                let radix = self.radix(i);
                let digit = rest % radix;
                rest /= radix;
                let (cap, n) = (self.caps[i], self.periods[i]);
                if digit < cap {
                    CoordState { saturated: false, value: Some(digit), residue: digit % n }
                } else {
                    CoordState { saturated: true, value: None, residue: (digit - cap) % n }
                }
            })
            .collect()
    }
}

/// One coordinate of a reach state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CoordState {
    /// The coordinate sum has reached `cap_i`.
    pub saturated: bool,
    /// The exact sum, when not saturated.
    pub value: Option<u64>,
    /// The sum modulo `n_i`.
    pub residue: u64,
}

/// Default bound on the number of states a [`ReachSet`] may hold.
pub const DEFAULT_STATE_CAP: usize = 10_000_000;

/// The set of capped sum profiles realised by the nonempty subsequences of a
/// sequence. Built incrementally, one term at a time.
#[derive(Debug, Clone)]
pub struct ReachSet {
    layout: Layout,
    states: HashSet<u64>,
    cap: usize,
}

impl ReachSet {
    pub fn empty(layout: Layout, cap: usize) -> Self {
        ReachSet { layout, states: HashSet::new(), cap }
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Extend by one term given as raw per-coordinate amounts.
    pub fn push_raw(&mut self, raw: &[u64]) -> Result<()> {
        let mut added: Vec<u64> = self.states.iter().map(|&s| self.layout.step(s, raw)).collect();
        added.push(self.layout.step(0, raw));
        self.states.extend(added);
        if self.states.len() > self.cap {
            return Err(Error::StateCapExceeded { cap: self.cap });
        }
        Ok(())
    }

    pub fn push(&mut self, a: &Element) -> Result<()> {
        self.push_raw(a.idx())
    }

    pub fn contains_state(&self, state: u64) -> bool {
        self.states.contains(&state)
    }

    /// Some nonempty subsequence sums to the idempotent (zero, for groups).
    pub fn contains_target(&self) -> bool {
        self.states.contains(&self.layout.target())
    }

    /// Encoded states in increasing order.
    pub fn encoded(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.states.iter().copied().collect();
        v.sort_unstable();
        v
    }

    /// Decoded states in increasing order of their encoding.
    pub fn states(&self) -> Vec<Vec<CoordState>> {
        self.encoded().into_iter().map(|s| self.layout.decode(s)).collect()
    }
}

/// Dense bitset over the whole state universe; the search engine's working
/// representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DenseReach {
    words: Vec<u64>,
}

impl DenseReach {
    pub(crate) fn new(universe: u64) -> Self {
        DenseReach { words: vec![0; universe.div_ceil(64) as usize] }
    }

    #[inline]
    #[cfg(test)]
    pub(crate) fn contains(&self, s: u64) -> bool {
        self.words[(s >> 6) as usize] >> (s & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn insert(&mut self, s: u64) {
        self.words[(s >> 6) as usize] |= 1 << (s & 63);
    }

    pub(crate) fn copy_from(&mut self, other: &DenseReach) {
        self.words.copy_from_slice(&other.words);
    }

    pub(crate) fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(((wi as u64) << 6) | b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_folds_above_cap() {
        // C(2;3): cap 3, states [0, 6)
        let l = Layout::new(vec![3], vec![3]).unwrap();
        assert_eq!(l.universe(), 6);
        assert_eq!(l.target(), 3);
        assert_eq!(l.step(0, &[1]), 1);
        assert_eq!(l.step(2, &[1]), 3);
        assert_eq!(l.step(3, &[3]), 3);
        assert_eq!(l.step(4, &[5]), 3);
        let d = l.decode(5);
        assert_eq!(d, vec![CoordState { saturated: true, value: None, residue: 2 }]);
    }

    #[test]
    fn group_layout_is_residues() {
        let l = Layout::for_group(&[4, 6]).unwrap();
        assert_eq!(l.universe(), 24);
        assert_eq!(l.target(), 0);
        assert_eq!(l.step(0, &[3, 5]), 3 + 4 * 5);
        assert_eq!(l.step(l.step(0, &[3, 5]), &[1, 1]), 0);
    }

    #[test]
    fn dense_iteration() {
        let mut d = DenseReach::new(200);
        for s in [0, 5, 63, 64, 199] {
            d.insert(s);
        }
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 199]);
        assert!(d.contains(64) && !d.contains(65));
    }

    #[test]
    fn state_cap_is_enforced() {
        let l = Layout::new(vec![100], vec![1]).unwrap();
        let mut r = ReachSet::empty(l, 3);
        for _ in 0..3 {
            r.push_raw(&[1]).unwrap();
        }
        assert_eq!(r.len(), 3);
        assert!(matches!(r.push_raw(&[1]), Err(Error::StateCapExceeded { cap: 3 })));
    }
}

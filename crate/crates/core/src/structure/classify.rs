use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{CyclicSpec, ProductSpec};
use crate::sequences::{is_idempotent_sum_free, is_minimal_idempotent_sum, Seq};

use super::{behaving_sorted, savchev_chen, scaled, units, IntSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StructTag {
    #[serde(rename = "BEHAVING_I")]
    BehavingI,
    #[serde(rename = "TWO_POWER_II")]
    TwoPowerIi,
    #[serde(rename = "N2_SPECIAL_III")]
    N2SpecialIii,
    #[serde(rename = "N1_SPLIT_IV")]
    N1SplitIv,
    #[serde(rename = "N1_TWOS_V")]
    N1TwosV,
    #[serde(rename = "NONE")]
    None,
}

impl fmt::Display for StructTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructTag::BehavingI => "BEHAVING_I",
            StructTag::TwoPowerIi => "TWO_POWER_II",
            StructTag::N2SpecialIii => "N2_SPECIAL_III",
            StructTag::N1SplitIv => "N1_SPLIT_IV",
            StructTag::N1TwosV => "N1_TWOS_V",
            StructTag::None => "NONE",
        })
    }
}

/// Classification of a sequence over `C(k;n)`, with the witness `(c, H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructClass {
    pub tag: StructTag,
    pub c: Option<u64>,
    #[serde(rename = "H")]
    pub h: Option<IntSeq>,
    pub threshold_met: bool,
}

impl StructClass {
    fn none(threshold_met: bool) -> Self {
        StructClass { tag: StructTag::None, c: None, h: None, threshold_met }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Free,
    Minimal,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Mode::Free),
            "minimal" => Ok(Mode::Minimal),
            other => Err(Error::InvalidSpec(format!("unknown mode {other:?}"))),
        }
    }
}

/// Least length from which the classification is guaranteed:
/// `⌈(⌈k/n⌉+1)n/2 − 1⌉` for `k > n`, `⌊n/2⌋ + 1` otherwise.
pub fn length_threshold(c: &CyclicSpec) -> u64 {
    let (k, n) = (c.index(), c.period());
    if k > n {
        ((c.cap() / n + 1) * n - 1) / 2
    } else {
        n / 2 + 1
    }
}

fn indices(c: &CyclicSpec, t: &Seq) -> Result<Vec<u64>> {
    let spec = ProductSpec::single(*c);
    t.validate(&spec)?;
    Ok(t.indices())
}

/// Every shape among (i)–(v) that the sorted index values `ind` match,
/// for `k > n`. For `k ≤ n` only `BEHAVING_I` can match.
pub fn matching_tags(c: &CyclicSpec, ind: &[u64]) -> Vec<StructTag> {
    let mut ind = ind.to_vec();
    ind.sort_unstable();
    let (k, n, cap) = (c.index(), c.period(), c.cap());
    let len = ind.len() as u64;
    let mut out = Vec::new();
    if k <= n {
        if n >= 2 && !ind.is_empty() {
            let t: Vec<u64> = ind.iter().map(|x| x % n).collect();
            if savchev_chen(n, &t).ok().flatten().is_some() {
                out.push(StructTag::BehavingI);
            }
        }
        return out;
    }
    let sum: u64 = ind.iter().sum();
    let all = |v: u64| ind.iter().all(|&x| x == v);
    if !ind.is_empty() && behaving_sorted(&ind) && sum < cap {
        out.push(StructTag::BehavingI);
    }
    let m = cap / n;
    if n >= 3 && cap % 2 == 1 && len == (m + 1) * n / 2 - 1 && all(2) {
        out.push(StructTag::TwoPowerIi);
    }
    if n == 2 && len == k.div_ceil(2) && len >= 1 {
        let (x, rest) = ind.split_last().expect("nonempty");
        if rest.iter().all(|&y| y == 2) && *x >= 3 && x % 2 == 1 {
            out.push(StructTag::N2SpecialIii);
        }
    }
    if n == 1 && k % 2 == 1 && len == (k - 1) / 2 && len >= 1 {
        let (x, rest) = ind.split_last().expect("nonempty");
        if rest.iter().all(|&y| y == 1) && *x == k.div_ceil(2) {
            out.push(StructTag::N1SplitIv);
        }
        if all(2) {
            out.push(StructTag::N1TwosV);
        }
    }
    out
}

/// Shape classification without checking freeness or length.
pub fn classify_shape(c: &CyclicSpec, t: &Seq) -> Result<StructClass> {
    let ind = indices(c, t)?;
    let threshold_met = ind.len() as u64 >= length_threshold(c);
    let Some(&tag) = matching_tags(c, &ind).first() else {
        return Ok(StructClass::none(threshold_met));
    };
    let (cc, h) = if c.index() > c.period() {
        (1, IntSeq::new(ind)?)
    } else {
        let n = c.period();
        let t: Vec<u64> = ind.iter().map(|x| x % n).collect();
        let w = savchev_chen(n, &t)?.expect("matched BEHAVING_I");
        (w.c, w.h)
    };
    Ok(StructClass { tag, c: Some(cc), h: Some(h), threshold_met })
}

/// Classify an idempotent-sum free sequence at or above the length threshold.
pub fn classify_free_sequence(c: &CyclicSpec, t: &Seq) -> Result<StructClass> {
    let spec = ProductSpec::single(*c);
    t.validate(&spec)?;
    if !is_idempotent_sum_free(&spec, t)? {
        return Err(Error::Precondition("sequence is not idempotent-sum free".into()));
    }
    let need = length_threshold(c);
    if (t.len() as u64) < need {
        return Err(Error::Precondition(format!(
            "length {} is below the classification threshold {need} for {c}",
            t.len()
        )));
    }
    let out = classify_shape(c, t)?;
    if out.tag == StructTag::None {
        return Err(Error::Internal(format!("free sequence {t} over {c} matches no class")));
    }
    Ok(out)
}

/// The behaving-sequence structure on sorted index values, without
/// checking that the sequence is free or minimal.
pub fn structure_holds(c: &CyclicSpec, ind: &[u64], mode: Mode) -> bool {
    let (k, n, cap) = (c.index(), c.period(), c.cap());
    let fits = |h: &[u64]| {
        let s: u64 = h.iter().sum();
        let ok = match mode {
            Mode::Free => s < cap,
            Mode::Minimal => s == cap,
        };
        ok && behaving_sorted(h)
    };
    if k > n {
        let mut h = ind.to_vec();
        h.sort_unstable();
        return fits(&h);
    }
    if n == 1 {
        return fits(&vec![1; ind.len()]);
    }
    units(n).any(|(_, inv)| fits(&scaled(ind, inv, n)))
}

/// Whether `t` carries the behaving-sequence structure for its mode.
pub fn has_structure(c: &CyclicSpec, t: &Seq, mode: Mode) -> Result<bool> {
    let spec = ProductSpec::single(*c);
    t.validate(&spec)?;
    if t.is_empty() {
        return Err(Error::EmptySequence);
    }
    let ok = match mode {
        Mode::Free => is_idempotent_sum_free(&spec, t)?,
        Mode::Minimal => is_minimal_idempotent_sum(&spec, t)?,
    };
    if !ok {
        let want = match mode {
            Mode::Free => "idempotent-sum free",
            Mode::Minimal => "a minimal idempotent-sum sequence",
        };
        return Err(Error::Precondition(format!("sequence is not {want}")));
    }
    Ok(structure_holds(c, &t.indices(), mode))
}

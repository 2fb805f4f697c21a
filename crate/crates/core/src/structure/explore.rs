use serde::Serialize;

use crate::constants::{ConstResult, Ranges};
use crate::search::Budget;
use crate::semigroup::CyclicSpec;

use super::invariants::{l_bruteforce, l_formula, lhat_bruteforce, lhat_formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapKind {
    LhatGap,
    LGap,
}

/// One `C(k;n)` with `k > n`: brute-force value against the closed form or interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapRow {
    pub spec: String,
    pub k: u64,
    pub n: u64,
    pub brute: Option<u64>,
    pub lower: u64,
    pub upper: Option<u64>,
    pub determined: bool,
    pub inside: Option<bool>,
    /// `l̂` by brute force, recorded for `l` rows to check `l ≤ l̂ + 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhat_brute: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l_le_lhat_plus_one: Option<bool>,
    pub anomaly: bool,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Rows for every `C(k;n)` with `k > n` in the ranges.
pub fn explore_gap(kind: GapKind, ranges: &Ranges, budget: &Budget) -> Vec<GapRow> {
    ranges
        .cyclic()
        .into_iter()
        .filter(|c| c.index() > c.period())
        .map(|c| gap_row(kind, &c, budget))
        .collect()
}

fn gap_row(kind: GapKind, c: &CyclicSpec, budget: &Budget) -> GapRow {
    let (formula, brute): (ConstResult, _) = match kind {
        GapKind::LhatGap => (lhat_formula(c), lhat_bruteforce(c, budget)),
        GapKind::LGap => (l_formula(c), l_bruteforce(c, budget)),
    };
    let (value, nodes, mut error) = match brute {
        Ok(r) => (r.value, r.nodes, None),
        Err(e) => (None, 0, Some(e.to_string())),
    };
    let inside = value.map(|v| formula.admits(v));
    let (lhat_brute, bound) = match (kind, value) {
        (GapKind::LGap, Some(v)) => match lhat_bruteforce(c, budget) {
            Ok(h) => (h.value, h.value.map(|h| v <= h + 1)),
            Err(e) => {
                error = Some(e.to_string());
                (None, None)
            }
        },
        _ => (None, None),
    };
    GapRow {
        spec: c.to_string(),
        k: c.index(),
        n: c.period(),
        brute: value,
        lower: formula.lower,
        upper: formula.upper(),
        determined: formula.value.is_some(),
        inside,
        lhat_brute,
        l_le_lhat_plus_one: bound,
        anomaly: inside == Some(false) || bound == Some(false),
        nodes,
        error,
    }
}

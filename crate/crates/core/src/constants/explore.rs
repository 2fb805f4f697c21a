use serde::Serialize;

use crate::search::Budget;
use crate::semigroup::{CyclicSpec, ProductSpec};

use super::davenport::davenport_formula;
use super::eb::{divisible_pair, eb_bruteforce, max_excess, rank_two_condition};

/// Inclusive parameter ranges for batch exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ranges {
    pub k_min: u64,
    pub k_max: u64,
    pub n_min: u64,
    pub n_max: u64,
}

impl Ranges {
    pub fn new(k_min: u64, k_max: u64, n_min: u64, n_max: u64) -> Self {
        Ranges { k_min: k_min.max(1), k_max, n_min: n_min.max(1), n_max }
    }

    pub fn cyclic(&self) -> Vec<CyclicSpec> {
        let mut out = Vec::new();
        for k in self.k_min..=self.k_max {
            for n in self.n_min..=self.n_max {
                out.push(CyclicSpec::new(k, n).expect("k, n >= 1"));
            }
        }
        out
    }
}

/// One instance `C(k_1;n_1) × C(k_2;n_2)` of the rank-two equality question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub spec: String,
    pub brute: Option<u64>,
    pub max_plus_d: u64,
    pub equality: Option<bool>,
    pub cond_i: bool,
    pub cond_ii: bool,
    /// Equality holds but neither condition does.
    pub counterexample: bool,
    /// A condition holds but equality fails.
    pub bug: bool,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ConjectureRow {
    pub fn anomalous(&self) -> bool {
        self.counterexample || self.bug
    }
}

/// Every unordered pair of factors drawn from `ranges`, each checked by brute force.
pub fn explore_conjecture(ranges: &Ranges, budget: &Budget) -> Vec<ConjectureRow> {
    let factors = ranges.cyclic();
    let mut rows = Vec::new();
    for (a, fa) in factors.iter().enumerate() {
        for fb in &factors[a..] {
            let s = ProductSpec::new(vec![*fa, *fb]).expect("two factors");
            rows.push(conjecture_row(&s, budget));
        }
    }
    rows
}

fn conjecture_row(s: &ProductSpec, budget: &Budget) -> ConjectureRow {
    let d = davenport_formula(&s.group()).ok().and_then(|d| d.value).expect("rank two is exact");
    let max_plus_d = max_excess(s) + d;
    let cond_i = divisible_pair(s);
    let cond_ii = rank_two_condition(s).is_some();
    let (brute, nodes, error) = match eb_bruteforce(s, budget) {
        Ok(b) => (b.result.value, b.result.nodes, None),
        Err(e) => (None, 0, Some(e.to_string())),
    };
    let equality = brute.map(|v| v == max_plus_d);
    ConjectureRow {
        spec: s.format_spec(),
        brute,
        max_plus_d,
        equality,
        cond_i,
        cond_ii,
        counterexample: equality == Some(true) && !cond_i && !cond_ii,
        bug: equality == Some(false) && (cond_i || cond_ii),
        nodes,
        error,
    }
}

//! The Davenport constant `D(G)` and the Erdős-Burgess constant `I(S)`.

mod davenport;
mod eb;
mod explore;
mod witness;

pub use davenport::{d_star, davenport, davenport_bruteforce, davenport_formula, invariant_factors, DavenportBrute};
pub use eb::{eb, eb_bounds, eb_bruteforce, eb_exact, reduce_spec, EbBounds, EbBrute, Reduction};
pub use explore::{explore_conjecture, ConjectureRow, Ranges};
pub use witness::{claim_a, claim_b, lift, rank_two_witness, v_witness};

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::search::SearchStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Davenport,
    ErdosBurgess,
    Lhat,
    L,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::Davenport => "davenport",
            Quantity::ErdosBurgess => "erdos_burgess",
            Quantity::Lhat => "lhat",
            Quantity::L => "l",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Formula,
    Brute,
    Both,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Brute => "brute",
            Method::Both => "both",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "formula" => Ok(Method::Formula),
            "brute" => Ok(Method::Brute),
            "both" => Ok(Method::Both),
            other => Err(Error::InvalidSpec(format!("unknown method {other:?}"))),
        }
    }
}

/// Which closed form or procedure produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    #[serde(rename = "THM_D_RANK2")]
    ThmDRank2,
    #[serde(rename = "THM_D_PGROUP")]
    ThmDPgroup,
    #[serde(rename = "D_BOUNDS")]
    DBounds,
    #[serde(rename = "THM31_II_EQ")]
    Thm31IiEq,
    #[serde(rename = "THM31_III")]
    Thm31Iii,
    #[serde(rename = "THM31_III_REFUTED")]
    Thm31IiiRefuted,
    #[serde(rename = "COR31_R1")]
    Cor31R1,
    #[serde(rename = "COR31_DIV")]
    Cor31Div,
    #[serde(rename = "COR31_PPOW")]
    Cor31Ppow,
    #[serde(rename = "THM41_I")]
    Thm41I,
    #[serde(rename = "THM41_II")]
    Thm41Ii,
    #[serde(rename = "THM32_REDUCE")]
    Thm32Reduce,
    #[serde(rename = "EB_BOUNDS")]
    EbBounds,
    #[serde(rename = "THM61_TABLE")]
    Thm61Table,
    #[serde(rename = "THM_F")]
    ThmF,
    #[serde(rename = "THM61_II")]
    Thm61Ii,
    #[serde(rename = "THM61_II_BOUNDS")]
    Thm61IiBounds,
    #[serde(rename = "TRIVIAL")]
    Trivial,
    #[serde(rename = "BRUTE")]
    Brute,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::ThmDRank2 => "THM_D_RANK2",
            Rule::ThmDPgroup => "THM_D_PGROUP",
            Rule::DBounds => "D_BOUNDS",
            Rule::Thm31IiEq => "THM31_II_EQ",
            Rule::Thm31Iii => "THM31_III",
            Rule::Thm31IiiRefuted => "THM31_III_REFUTED",
            Rule::Cor31R1 => "COR31_R1",
            Rule::Cor31Div => "COR31_DIV",
            Rule::Cor31Ppow => "COR31_PPOW",
            Rule::Thm41I => "THM41_I",
            Rule::Thm41Ii => "THM41_II",
            Rule::Thm32Reduce => "THM32_REDUCE",
            Rule::EbBounds => "EB_BOUNDS",
            Rule::Thm61Table => "THM61_TABLE",
            Rule::ThmF => "THM_F",
            Rule::Thm61Ii => "THM61_II",
            Rule::Thm61IiBounds => "THM61_II_BOUNDS",
            Rule::Trivial => "TRIVIAL",
            Rule::Brute => "BRUTE",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Upper end of a result interval. `None` means no formula bound exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Upper(pub Option<u64>);

impl Serialize for Upper {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str("unbounded-by-formula"),
        }
    }
}

/// A computed constant: exact value or interval, with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstResult {
    pub spec: String,
    pub quantity: Quantity,
    pub method: Method,
    pub value: Option<u64>,
    pub lower: u64,
    pub upper: Upper,
    pub rule: Rule,
    pub nodes: u64,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors: Option<Vec<u64>>,
}

impl ConstResult {
    pub fn exact(spec: String, quantity: Quantity, value: u64, rule: Rule) -> Self {
        ConstResult {
            spec,
            quantity,
            method: Method::Formula,
            value: Some(value),
            lower: value,
            upper: Upper(Some(value)),
            rule,
            nodes: 0,
            elapsed_ms: 0,
            invariant_factors: None,
        }
    }

    pub fn interval(spec: String, quantity: Quantity, lower: u64, upper: u64, rule: Rule) -> Self {
        ConstResult {
            value: None,
            lower,
            upper: Upper(Some(upper)),
            ..ConstResult::exact(spec, quantity, lower, rule)
        }
    }

    pub(crate) fn brute(spec: String, quantity: Quantity, value: u64, stats: SearchStats) -> Self {
        ConstResult {
            method: Method::Brute,
            nodes: stats.nodes,
            elapsed_ms: stats.elapsed.as_millis() as u64,
            ..ConstResult::exact(spec, quantity, value, Rule::Brute)
        }
    }

    pub fn upper(&self) -> Option<u64> {
        self.upper.0
    }

    /// `lower ≤ v ≤ upper`.
    pub fn admits(&self, v: u64) -> bool {
        self.lower <= v && self.upper.0.is_none_or(|u| v <= u)
    }

    /// Merge a formula result with a brute-force one for `--method both`.
    pub(crate) fn cross_check(formula: ConstResult, brute: ConstResult) -> crate::Result<ConstResult> {
        let v = brute.value.expect("brute results are exact");
        let agree = match formula.value {
            Some(f) => f == v,
            None => formula.admits(v),
        };
        if !agree {
            return Err(Error::Internal(format!(
                "{} of {}: brute force gives {v}, formula gives {}",
                formula.quantity,
                formula.spec,
                formula.describe()
            )));
        }
        Ok(ConstResult {
            method: Method::Both,
            rule: if formula.value.is_some() { formula.rule } else { Rule::Brute },
            ..brute
        }
        .with_factors(formula.invariant_factors))
    }

    pub(crate) fn with_factors(mut self, f: Option<Vec<u64>>) -> Self {
        self.invariant_factors = f;
        self
    }

    /// `7` or `[7, 8]`.
    pub fn describe(&self) -> String {
        match (self.value, self.upper.0) {
            (Some(v), _) => v.to_string(),
            (None, Some(u)) => format!("[{}, {}]", self.lower, u),
            (None, None) => format!("[{}, unbounded-by-formula]", self.lower),
        }
    }
}

pub(crate) fn checked_sum(xs: impl IntoIterator<Item = u64>) -> crate::Result<u64> {
    xs.into_iter()
        .try_fold(0u64, |a, x| a.checked_add(x))
        .ok_or(Error::Overflow("constant exceeds u64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = ConstResult::interval("C(1;2)xC(4;3)".into(), Quantity::ErdosBurgess, 7, 8, Rule::Thm31IiiRefuted);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["quantity"], "erdos_burgess");
        assert_eq!(v["method"], "formula");
        assert!(v["value"].is_null());
        assert_eq!(v["upper"], 8);
        assert_eq!(v["rule"], "THM31_III_REFUTED");
        assert!(v.get("invariant_factors").is_none());
        let open = ConstResult { upper: Upper(None), ..r };
        assert_eq!(serde_json::to_value(&open).unwrap()["upper"], "unbounded-by-formula");
    }

    #[test]
    fn rule_tags_match_serde() {
        for r in [Rule::ThmDRank2, Rule::Cor31Div, Rule::Thm41Ii, Rule::Brute, Rule::Thm61IiBounds] {
            assert_eq!(serde_json::to_value(r).unwrap(), r.tag());
        }
    }
}

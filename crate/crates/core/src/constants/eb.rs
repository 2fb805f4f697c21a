use crate::arith::{gcd, is_prime_power};
use crate::error::{Error, Result};
use crate::search::{Budget, Engine, Meter};
use crate::semigroup::{CyclicSpec, ProductSpec};
use crate::sequences::{Layout, Seq};

use super::davenport::davenport_formula;
use super::{checked_sum, ConstResult, Method, Quantity, Rule};

/// `max_i (⌈k_i/n_i⌉ − 1)·n_i`.
pub(crate) fn max_excess(s: &ProductSpec) -> u64 {
    s.coords().iter().map(CyclicSpec::excess).max().expect("nonempty spec")
}

fn max_multiplier(s: &ProductSpec) -> u64 {
    s.coords().iter().map(CyclicSpec::excess_multiplier).max().expect("nonempty spec")
}

/// Interval for `I(S)`. `d_exact` is false when `D(G_S)` is itself only
/// known up to an interval, in which case the bounds use its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EbBounds {
    pub lower: u64,
    pub upper: u64,
    pub d_exact: bool,
}

pub fn eb_bounds(s: &ProductSpec) -> Result<EbBounds> {
    let d = davenport_formula(&s.group())?;
    let (d_lo, d_hi) = (d.lower, d.upper().expect("finite groups have a Davenport upper bound"));
    let m = max_excess(s);
    let r1 = checked_sum(s.r1().into_iter().map(|i| s.coords()[i].period() - 1))?;
    let first = checked_sum([m, 1, r1])?;
    let second = checked_sum([max_multiplier(s), d_lo])?;
    Ok(EbBounds {
        lower: first.max(second),
        upper: checked_sum([m, d_hi])?,
        d_exact: d.value.is_some(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    /// `I(S) = offset + D(G_S)`; `value` is present when `D(G_S)` is known.
    Closed { offset: u64, value: Option<u64> },
    Spec(ProductSpec),
}

/// Drop redundant period-one factors, or evaluate `I(S)` outright when a
/// period-one factor dominates. Specs without period-one factors come back
/// unchanged.
pub fn reduce_spec(s: &ProductSpec) -> Result<Reduction> {
    let nil: Vec<&CyclicSpec> = s.coords().iter().filter(|c| c.period() == 1).collect();
    let Some(eps) = nil.iter().max_by_key(|c| c.index()) else {
        return Ok(Reduction::Spec(s.clone()));
    };
    let offset = eps.index() - 1;
    if offset >= max_excess(s) {
        let d = davenport_formula(&s.group())?;
        let value = d.value.map(|d| checked_sum([offset, d])).transpose()?;
        return Ok(Reduction::Closed { offset, value });
    }
    let mut kept: Vec<CyclicSpec> = Vec::new();
    let mut eps_done = false;
    for c in s.coords() {
        if c.period() > 1 {
            kept.push(*c);
        } else if !eps_done && c.index() == eps.index() {
            kept.push(*c);
            eps_done = true;
        }
    }
    Ok(Reduction::Spec(ProductSpec::new(kept)?))
}

fn pairwise_coprime(n: &[u64]) -> bool {
    (0..n.len()).all(|i| (i + 1..n.len()).all(|j| gcd(n[i], n[j]) == 1))
}

/// Some coordinate attaining the maximal excess has period one, or the
/// product of the other periods divides its excess multiplier.
pub(crate) fn coprime_condition(s: &ProductSpec) -> bool {
    let m = max_excess(s);
    let c = s.coords();
    (0..c.len()).filter(|&e| c[e].excess() == m).any(|e| {
        if c[e].period() == 1 {
            return true;
        }
        let prod = (0..c.len())
            .filter(|&i| i != e)
            .try_fold(1u64, |acc, i| acc.checked_mul(c[i].period()));
        match prod {
            Some(p) => c[e].excess_multiplier().is_multiple_of(p),
            None => false,
        }
    })
}

/// The divisibility alternative for two factors: some coordinate attains the
/// maximal excess and `n_other / gcd(n_1, n_2)` divides its multiplier.
pub(crate) fn rank_two_condition(s: &ProductSpec) -> Option<usize> {
    let c = s.coords();
    if c.len() != 2 {
        return None;
    }
    let m = max_excess(s);
    let g = gcd(c[0].period(), c[1].period());
    (0..2).find(|&e| c[e].excess() == m && c[e].excess_multiplier().is_multiple_of(c[1 - e].period() / g))
}

pub(crate) fn divisible_pair(s: &ProductSpec) -> bool {
    let n = s.periods();
    n.len() == 2 && (n[1].is_multiple_of(n[0]) || n[0].is_multiple_of(n[1]))
}

/// Closed-form `I(S)`, or the best interval when no rule applies.
pub fn eb_exact(s: &ProductSpec) -> Result<ConstResult> {
    let name = s.format_spec();
    let bounds = eb_bounds(s)?;
    let work = match reduce_spec(s)? {
        Reduction::Closed { value: Some(v), .. } => {
            return Ok(ConstResult::exact(name, Quantity::ErdosBurgess, v, Rule::Thm32Reduce));
        }
        Reduction::Closed { offset, value: None } => {
            let d = davenport_formula(&s.group())?;
            let hi = d.upper().expect("finite group");
            return Ok(ConstResult::interval(
                name,
                Quantity::ErdosBurgess,
                checked_sum([offset, d.lower])?,
                checked_sum([offset, hi])?,
                Rule::Thm32Reduce,
            ));
        }
        Reduction::Spec(w) => w,
    };
    let d = davenport_formula(&work.group())?;
    let m = max_excess(&work);
    let n = work.periods();
    let with_upper = |rule| -> Result<ConstResult> {
        let dv = d.value.ok_or_else(|| Error::Internal(format!("{rule} fired without an exact D")))?;
        Ok(ConstResult::exact(name.clone(), Quantity::ErdosBurgess, checked_sum([m, dv])?, rule))
    };
    let prod = n.iter().try_fold(1u64, |a, &x| a.checked_mul(x));
    if work.arity() == 1 {
        return with_upper(Rule::Cor31R1);
    }
    if divisible_pair(&work) {
        return with_upper(Rule::Cor31Div);
    }
    if prod.is_some_and(is_prime_power) {
        return with_upper(Rule::Cor31Ppow);
    }
    if rank_two_condition(&work).is_some() {
        return with_upper(Rule::Thm41Ii);
    }
    if pairwise_coprime(&n) {
        if coprime_condition(&work) {
            return with_upper(Rule::Thm31Iii);
        }
        let dv = d.value.expect("cyclic group");
        let upper = checked_sum([m, dv])? - 1;
        if bounds.lower > upper {
            return Err(Error::Internal(format!("lower bound {} exceeds {upper} for {name}", bounds.lower)));
        }
        return Ok(ConstResult::interval(name, Quantity::ErdosBurgess, bounds.lower, upper, Rule::Thm31IiiRefuted));
    }
    let r1_sum = checked_sum(work.r1().into_iter().map(|i| n[i] - 1))?;
    if d.value == Some(1 + r1_sum) {
        return with_upper(Rule::Thm31IiEq);
    }
    Ok(ConstResult::interval(name, Quantity::ErdosBurgess, bounds.lower, bounds.upper, Rule::EbBounds))
}

/// Exhaustive `I(S)` together with a longest idempotent-sum free sequence.
#[derive(Debug, Clone)]
pub struct EbBrute {
    pub result: ConstResult,
    pub witness: Seq,
}

pub fn eb_bruteforce(s: &ProductSpec, budget: &Budget) -> Result<EbBrute> {
    let count = s.element_count()?;
    if count - 1 > budget.alphabet_cap as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{count} elements exceed the alphabet cap {}",
            budget.alphabet_cap
        )));
    }
    let bounds = eb_bounds(s)?;
    let alphabet: Vec<Vec<u64>> = s.non_idempotent_elements().into_iter().map(|e| e.idx().to_vec()).collect();
    let engine = Engine::new(Layout::for_semigroup(s)?, &alphabet, budget)?;
    let meter = Meter::new(budget);
    let start = bounds.lower.saturating_sub(1) as usize;
    let (len, path) = engine.longest_free(start, (count - 1) as usize, &meter)?;
    let value = len as u64 + 1;
    if value < bounds.lower || value > bounds.upper {
        return Err(Error::Internal(format!(
            "brute force gives {value} outside [{}, {}] for {s}",
            bounds.lower, bounds.upper
        )));
    }
    let witness = path.iter().map(|&i| alphabet[i].clone().into()).collect();
    Ok(EbBrute {
        result: ConstResult::brute(s.format_spec(), Quantity::ErdosBurgess, value, meter.stats()),
        witness,
    })
}

pub fn eb(s: &ProductSpec, method: Method, budget: &Budget) -> Result<ConstResult> {
    match method {
        Method::Formula => eb_exact(s),
        Method::Brute => Ok(eb_bruteforce(s, budget)?.result),
        Method::Both => ConstResult::cross_check(eb_exact(s)?, eb_bruteforce(s, budget)?.result),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::parse_spec;

    fn spec(s: &str) -> ProductSpec {
        parse_spec(s).unwrap()
    }

    #[test]
    fn bounds_examples() {
        let b = eb_bounds(&spec("C(3;2)")).unwrap();
        assert_eq!((b.lower, b.upper), (4, 4));
        let b = eb_bounds(&spec("C(2;3)")).unwrap();
        assert_eq!((b.lower, b.upper), (3, 3));
        let b = eb_bounds(&spec("C(5;1)")).unwrap();
        assert_eq!((b.lower, b.upper), (5, 5));
    }

    #[test]
    fn exact_examples() {
        let r = eb_exact(&spec("C(3;2)")).unwrap();
        assert_eq!((r.value, r.rule), (Some(4), Rule::Cor31R1));
        let r = eb_exact(&spec("C(3;2)xC(1;4)")).unwrap();
        assert_eq!((r.value, r.rule), (Some(7), Rule::Cor31Div));
        let r = eb_exact(&spec("C(1;2)xC(4;3)")).unwrap();
        assert_eq!(r.value, None);
        assert_eq!(r.rule, Rule::Thm31IiiRefuted);
        assert_eq!((r.lower, r.upper()), (7, Some(8)));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(
            reduce_spec(&spec("C(9;1)xC(1;2)")).unwrap(),
            Reduction::Closed { offset: 8, value: Some(10) }
        );
        assert_eq!(
            reduce_spec(&spec("C(2;1)xC(7;2)")).unwrap(),
            Reduction::Spec(spec("C(2;1)xC(7;2)"))
        );
        // k_ε − 1 = 2 already reaches the maximal excess 2, so the closed form applies.
        assert_eq!(
            reduce_spec(&spec("C(2;1)xC(3;1)xC(1;5)")).unwrap(),
            Reduction::Closed { offset: 2, value: Some(7) }
        );
        assert_eq!(
            reduce_spec(&spec("C(2;1)xC(3;1)xC(11;5)")).unwrap(),
            Reduction::Spec(spec("C(3;1)xC(11;5)"))
        );
    }

    #[test]
    fn brute_examples() {
        let b = Budget::default();
        for (s, v) in [("C(2;3)", 3), ("C(3;2)", 4), ("C(1;2)xC(1;2)", 3), ("C(1;2)xC(4;3)", 7)] {
            let out = eb_bruteforce(&spec(s), &b).unwrap();
            assert_eq!(out.result.value, Some(v), "{s}");
            assert_eq!(out.witness.len() as u64, v - 1);
        }
    }

    #[test]
    fn both_agrees() {
        let r = eb(&spec("C(3;2)"), Method::Both, &Budget::default()).unwrap();
        assert_eq!((r.value, r.method, r.rule), (Some(4), Method::Both, Rule::Cor31R1));
    }
}

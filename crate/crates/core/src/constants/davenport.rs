use crate::arith::{gcd, is_prime_power, lcm};
use crate::error::{Error, Result};
use crate::search::{Budget, Engine, Meter};
use crate::semigroup::GroupSpec;
use crate::sequences::{GroupSeq, Layout};

use super::{checked_sum, ConstResult, Method, Quantity, Rule};

/// Invariant factors `d_1 | … | d_r`, all greater than one.
pub fn invariant_factors(g: &GroupSpec) -> Result<Vec<u64>> {
    let mut a = g.periods().to_vec();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let (x, y) = (a[i], a[j]);
            a[i] = gcd(x, y);
            a[j] = lcm(x, y).ok_or(Error::Overflow("invariant factor exceeds u64"))?;
        }
    }
    a.retain(|&d| d > 1);
    Ok(a)
}

/// `d*(G) = Σ (d_j − 1)`.
pub fn d_star(g: &GroupSpec) -> Result<u64> {
    checked_sum(invariant_factors(g)?.into_iter().map(|d| d - 1))
}

pub fn davenport_formula(g: &GroupSpec) -> Result<ConstResult> {
    let f = invariant_factors(g)?;
    let lower = 1 + checked_sum(f.iter().map(|d| d - 1))?;
    let spec = g.to_string();
    let rule = if f.len() <= 2 {
        Some(Rule::ThmDRank2)
    } else if is_prime_power(*f.last().expect("rank > 2")) {
        Some(Rule::ThmDPgroup)
    } else {
        None
    };
    let out = match rule {
        Some(rule) => ConstResult::exact(spec, Quantity::Davenport, lower, rule),
        None => {
            let nr = *f.last().expect("rank > 2") as f64;
            let order = g.order()? as f64;
            let upper = (nr + nr * (order / nr).ln()).floor() as u64;
            if upper < lower {
                return Err(Error::Internal(format!(
                    "Davenport upper bound {upper} below 1 + d* = {lower} for {g}"
                )));
            }
            ConstResult::interval(spec, Quantity::Davenport, lower, upper, Rule::DBounds)
        }
    };
    Ok(out.with_factors(Some(f)))
}

/// Exhaustive Davenport computation together with a longest zero-sum free sequence.
#[derive(Debug, Clone)]
pub struct DavenportBrute {
    pub result: ConstResult,
    pub witness: GroupSeq,
}

pub fn davenport_bruteforce(g: &GroupSpec, budget: &Budget) -> Result<DavenportBrute> {
    let order = g.order()?;
    if order - 1 > budget.alphabet_cap as u128 {
        return Err(Error::BudgetExceeded(format!("group of order {order} exceeds the alphabet cap")));
    }
    let layout = Layout::for_group(g.periods())?;
    let alphabet = nonzero_residues(g.periods());
    let engine = Engine::new(layout, &alphabet, budget)?;
    let meter = Meter::new(budget);
    let start = d_star(g)? as usize;
    let (len, path) = engine.longest_free(start, (order - 1) as usize, &meter)?;
    let witness = GroupSeq::new(g, path.iter().map(|&i| alphabet[i].clone()).collect())?;
    let result = ConstResult::brute(g.to_string(), Quantity::Davenport, len as u64 + 1, meter.stats())
        .with_factors(Some(invariant_factors(g)?));
    Ok(DavenportBrute { result, witness })
}

/// Residue vectors of `Π Z_{n_i}` other than zero, in lexicographic order.
fn nonzero_residues(periods: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; periods.len()];
    loop {
        if cur.iter().any(|&x| x != 0) {
            out.push(cur.clone());
        }
        let mut i = periods.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < periods[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

pub fn davenport(g: &GroupSpec, method: Method, budget: &Budget) -> Result<ConstResult> {
    match method {
        Method::Formula => davenport_formula(g),
        Method::Brute => Ok(davenport_bruteforce(g, budget)?.result),
        Method::Both => {
            let f = davenport_formula(g)?;
            let b = davenport_bruteforce(g, budget)?.result;
            ConstResult::cross_check(f, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: &[u64]) -> GroupSpec {
        GroupSpec::new(p.to_vec()).unwrap()
    }

    #[test]
    fn factors() {
        assert_eq!(invariant_factors(&g(&[2, 3])).unwrap(), vec![6]);
        assert_eq!(invariant_factors(&g(&[4, 6])).unwrap(), vec![2, 12]);
        assert!(invariant_factors(&g(&[1, 1])).unwrap().is_empty());
        assert_eq!(invariant_factors(&g(&[6, 10, 15])).unwrap(), vec![30, 30]);
    }

    #[test]
    fn dstar() {
        assert_eq!(d_star(&g(&[2, 3])).unwrap(), 5);
        assert_eq!(d_star(&g(&[2, 2, 2])).unwrap(), 3);
        assert_eq!(d_star(&g(&[1])).unwrap(), 0);
    }

    #[test]
    fn formula_cases() {
        assert_eq!(davenport_formula(&g(&[6])).unwrap().value, Some(6));
        let r = davenport_formula(&g(&[2, 2])).unwrap();
        assert_eq!((r.value, r.rule), (Some(3), Rule::ThmDRank2));
        let r = davenport_formula(&g(&[2, 2, 2])).unwrap();
        assert_eq!((r.value, r.rule), (Some(4), Rule::ThmDPgroup));
        let r = davenport_formula(&g(&[2, 2, 6])).unwrap();
        assert_eq!(r.value, None);
        assert_eq!(r.lower, 1 + 1 + 1 + 5);
        assert!(r.upper().unwrap() >= r.lower);
        assert_eq!(davenport_formula(&g(&[1])).unwrap().value, Some(1));
    }

    #[test]
    fn brute_small_groups() {
        let b = Budget::default();
        for (p, d) in [(&[6u64][..], 6), (&[2, 2], 3), (&[3, 3], 5), (&[2, 4], 5), (&[1], 1)] {
            let out = davenport_bruteforce(&g(p), &b).unwrap();
            assert_eq!(out.result.value, Some(d), "{p:?}");
            assert_eq!(out.witness.len() as u64, d - 1);
        }
        assert_eq!(davenport(&g(&[2, 2]), Method::Both, &b).unwrap().value, Some(3));
    }
}

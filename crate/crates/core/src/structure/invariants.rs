//! `l̂(C(k;n))` and `l(C(k;n))`: closed forms and exhaustive evaluation.

use crate::constants::{ConstResult, Method, Quantity, Rule};
use crate::error::Result;
use crate::search::{Budget, Engine, Meter};
use crate::semigroup::{CyclicSpec, ProductSpec};
use crate::sequences::Layout;

use super::classify::{structure_holds, Mode};

/// `(⌈k/n⌉ + 1)·n`.
fn doubled_threshold(c: &CyclicSpec) -> u64 {
    (c.cap() / c.period() + 1) * c.period()
}

pub fn lhat_formula(c: &CyclicSpec) -> ConstResult {
    let (k, n, cap) = (c.index(), c.period(), c.cap());
    let name = c.to_string();
    if k <= n {
        let v = match n {
            1 => 0,
            2 | 3 => 1,
            4 => 2,
            _ => n / 2 + 1,
        };
        return ConstResult::exact(name, Quantity::Lhat, v, Rule::Thm61Table);
    }
    let a = doubled_threshold(c);
    if n >= 3 && cap % 2 == 0 {
        ConstResult::interval(name, Quantity::Lhat, cap / 2 + 1, a.div_ceil(2) - 1, Rule::Thm61IiBounds)
    } else {
        ConstResult::exact(name, Quantity::Lhat, a / 2, Rule::Thm61Ii)
    }
}

pub fn l_formula(c: &CyclicSpec) -> ConstResult {
    let (k, n, cap) = (c.index(), c.period(), c.cap());
    let name = c.to_string();
    if k <= n {
        let v = match n {
            1..=5 | 7 => 1,
            6 => 5,
            _ => n / 2 + 2,
        };
        return ConstResult::exact(name, Quantity::L, v, Rule::ThmF);
    }
    let a = doubled_threshold(c);
    if n >= 3 && cap % 2 == 0 {
        ConstResult::interval(name, Quantity::L, cap / 2 + 1, a.div_ceil(2), Rule::Thm61IiBounds)
    } else if n == 2 {
        ConstResult::interval(name, Quantity::L, a.div_ceil(2) - 1, a.div_ceil(2), Rule::Thm61IiBounds)
    } else {
        ConstResult::exact(name, Quantity::L, a / 2 + 1, Rule::Thm61Ii)
    }
}

struct Walker {
    engine: Engine,
    /// Index value of each alphabet position.
    ind: Vec<u64>,
    max_len: usize,
    meter: Meter,
}

impl Walker {
    fn new(c: &CyclicSpec, budget: &Budget) -> Result<Self> {
        let spec = ProductSpec::single(*c);
        let ind: Vec<u64> = (1..=c.size()).filter(|&t| t != c.cap()).collect();
        let alphabet: Vec<Vec<u64>> = ind.iter().map(|&t| vec![t]).collect();
        let engine = Engine::new(Layout::for_semigroup(&spec)?, &alphabet, budget)?;
        Ok(Walker { engine, ind, max_len: (c.cap() - 1) as usize, meter: Meter::new(budget) })
    }
}

/// Longest violating length, merged across branches.
fn merge(parts: Vec<Option<usize>>) -> Option<usize> {
    parts.into_iter().flatten().max()
}

fn finish(c: &CyclicSpec, q: Quantity, worst: Option<usize>, meter: &Meter) -> ConstResult {
    let v = worst.map_or(1, |w| w as u64 + 1);
    ConstResult::brute(c.to_string(), q, v, meter.stats())
}

/// Exhaustive `l̂`: one more than the longest free sequence lacking the structure.
pub fn lhat_bruteforce(c: &CyclicSpec, budget: &Budget) -> Result<ConstResult> {
    if c.index() == 1 && c.period() == 1 {
        return Ok(ConstResult::brute(c.to_string(), Quantity::Lhat, 0, Default::default()));
    }
    let w = Walker::new(c, budget)?;
    let parts = w.engine.fold_free(
        w.max_len,
        &w.meter,
        || None,
        |worst: &mut Option<usize>, path, _| {
            if worst.is_some_and(|v| v >= path.len()) {
                return;
            }
            let ind: Vec<u64> = path.iter().map(|&p| w.ind[p]).collect();
            if !structure_holds(c, &ind, Mode::Free) {
                *worst = Some(path.len());
            }
        },
    )?;
    Ok(finish(c, Quantity::Lhat, merge(parts), &w.meter))
}

/// Capped subset-sum freeness on index values of `C(k;n)`.
fn free_ind(c: &CyclicSpec, ind: &[u64]) -> bool {
    let (cap, n) = (c.cap(), c.period());
    let fold = |x: u64| if x < cap { x } else { cap + (x - cap) % n };
    let mut seen = vec![false; (cap + n) as usize];
    let mut states: Vec<u64> = Vec::new();
    for &a in ind {
        let mut fresh = vec![fold(a)];
        fresh.extend(states.iter().map(|&s| fold(s + a)));
        for s in fresh {
            if s == cap {
                return false;
            }
            if !seen[s as usize] {
                seen[s as usize] = true;
                states.push(s);
            }
        }
    }
    true
}

/// `T·a` is a minimal idempotent-sum sequence, given `T` free and `a ≥ max T`.
fn minimal_extension(c: &CyclicSpec, t: &[u64], a: u64) -> bool {
    let s: u64 = t.iter().sum::<u64>() + a;
    if s < c.cap() || !s.is_multiple_of(c.period()) {
        return false;
    }
    let mut rest: Vec<u64> = t.to_vec();
    rest.push(a);
    let mut prev = None;
    for i in 0..t.len() {
        if prev == Some(t[i]) || t[i] == a {
            continue;
        }
        prev = Some(t[i]);
        let mut without = rest.clone();
        without.remove(i);
        if !free_ind(c, &without) {
            return false;
        }
    }
    true
}

/// Exhaustive `l`: one more than the longest minimal idempotent-sum
/// sequence lacking the structure, at least 1.
pub fn l_bruteforce(c: &CyclicSpec, budget: &Budget) -> Result<ConstResult> {
    let w = Walker::new(c, budget)?;
    let all: Vec<u64> = (1..=c.size()).collect();
    let check = |worst: &mut Option<usize>, t: &[u64]| {
        let from = t.last().copied().unwrap_or(1);
        for &a in all.iter().filter(|&&a| a >= from) {
            if worst.is_some_and(|v| v > t.len()) {
                return;
            }
            if minimal_extension(c, t, a) {
                let mut s = t.to_vec();
                s.push(a);
                if !structure_holds(c, &s, Mode::Minimal) {
                    *worst = Some(s.len());
                }
            }
        }
    };
    let mut first: Option<usize> = None;
    check(&mut first, &[]);
    let parts = w.engine.fold_free(
        w.max_len,
        &w.meter,
        || None,
        |worst: &mut Option<usize>, path, _| {
            let t: Vec<u64> = path.iter().map(|&p| w.ind[p]).collect();
            check(worst, &t);
        },
    )?;
    let mut worst = merge(parts);
    worst = worst.max(first);
    Ok(finish(c, Quantity::L, worst, &w.meter))
}

fn dispatch(
    formula: ConstResult,
    method: Method,
    brute: impl FnOnce() -> Result<ConstResult>,
) -> Result<ConstResult> {
    match method {
        Method::Formula => Ok(formula),
        Method::Brute => brute(),
        Method::Both => ConstResult::cross_check(formula, brute()?),
    }
}

pub fn lhat(c: &CyclicSpec, method: Method, budget: &Budget) -> Result<ConstResult> {
    dispatch(lhat_formula(c), method, || lhat_bruteforce(c, budget))
}

pub fn l_const(c: &CyclicSpec, method: Method, budget: &Budget) -> Result<ConstResult> {
    dispatch(l_formula(c), method, || l_bruteforce(c, budget))
}

//! Naive reference implementations used as oracles by the integration tests.
#![allow(dead_code)]

use ebs_core::{Element, ProductSpec, Seq};

/// Canonical index of `x^s` in `C(k;n)`.
pub fn reduce(k: u64, n: u64, s: u64) -> u64 {
    if s < k + n {
        s
    } else {
        k + (s - k) % n
    }
}

/// The idempotent of `C(k;n)`: the power `x^e` with `k ≤ e < k+n` and `n | e`.
pub fn idempotent(k: u64, n: u64) -> u64 {
    (k..k + n).find(|e| e % n == 0).unwrap()
}

pub fn pairs(s: &ProductSpec) -> Vec<(u64, u64)> {
    s.coords().iter().map(|c| (c.index(), c.period())).collect()
}

/// Sum of the chosen terms, coordinate by coordinate, by repeated reduction.
fn subset_is_idempotent(kn: &[(u64, u64)], terms: &[Vec<u64>], mask: u64) -> bool {
    kn.iter().enumerate().all(|(i, &(k, n))| {
        let mut acc = 0;
        for (j, t) in terms.iter().enumerate() {
            if mask >> j & 1 == 1 {
                acc = if acc == 0 { t[i] } else { reduce(k, n, acc + t[i]) };
            }
        }
        acc == idempotent(k, n)
    })
}

/// Every nonempty subset is tried, so only short sequences are feasible.
pub fn naive_free(s: &ProductSpec, t: &Seq) -> bool {
    let kn = pairs(s);
    let terms: Vec<Vec<u64>> = t.terms().iter().map(|a| a.idx().to_vec()).collect();
    assert!(terms.len() <= 24, "naive oracle on a sequence of length {}", terms.len());
    (1..1u64 << terms.len()).all(|m| !subset_is_idempotent(&kn, &terms, m))
}

pub fn naive_idempotent_sum(s: &ProductSpec, t: &Seq) -> bool {
    let kn = pairs(s);
    let terms: Vec<Vec<u64>> = t.terms().iter().map(|a| a.idx().to_vec()).collect();
    !terms.is_empty() && subset_is_idempotent(&kn, &terms, (1u64 << terms.len()) - 1)
}

pub fn all_elements(s: &ProductSpec) -> Vec<Element> {
    let mut out = vec![vec![]];
    for (k, n) in pairs(s) {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (1..k + n).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Element::new).collect()
}

/// Non-decreasing index sequences of length `len` over positions `0..m`.
pub fn multisets(m: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, len: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in from..m {
            cur.push(i);
            go(m, len, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, len, 0, &mut Vec::new(), &mut out);
    out
}

/// `I(S)` by growing the set of free multisets one length at a time.
pub fn naive_eb(s: &ProductSpec) -> u64 {
    let alpha = all_elements(s);
    let mut free: Vec<Vec<usize>> = vec![vec![]];
    let mut len = 0;
    loop {
        let next: Vec<Vec<usize>> = free
            .iter()
            .flat_map(|p| {
                let from = p.last().copied().unwrap_or(0);
                (from..alpha.len()).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .filter(|q| naive_free(s, &Seq::new(q.iter().map(|&i| alpha[i].clone()).collect())))
            .collect();
        if next.is_empty() {
            return len + 1;
        }
        free = next;
        len += 1;
    }
}

/// Nonempty subset sums of `h` cover exactly `1..=Σh`.
pub fn naive_behaving(h: &[u64]) -> bool {
    let total: u64 = h.iter().sum();
    let mut reach = vec![false; total as usize + 1];
    reach[0] = true;
    for &x in h {
        for s in (x as usize..=total as usize).rev() {
            reach[s] |= reach[s - x as usize];
        }
    }
    reach[1..].iter().all(|&b| b)
}

/// Residues reachable as nonempty subset sums mod `n`, as a bitmask.
pub fn zero_sum_free_mod(n: u64, t: &[u64]) -> bool {
    let mut reach: u64 = 0;
    for &x in t {
        let mut shifted = 0u64;
        for r in 0..n {
            if reach >> r & 1 == 1 {
                shifted |= 1 << ((r + x) % n);
            }
        }
        reach |= shifted | 1 << (x % n);
    }
    reach & 1 == 0
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// `(⌈k/n⌉ − 1)·n`.
pub fn excess(k: u64, n: u64) -> u64 {
    (ceil_div(k, n) - 1) * n
}

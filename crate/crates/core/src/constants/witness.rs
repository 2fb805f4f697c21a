//! Explicit idempotent-sum free sequences realising the lower bounds.

use crate::arith::{factorize, gcd};
use crate::semigroup::{Element, ProductSpec};
use crate::sequences::{GroupSeq, Seq};

use super::eb::{coprime_condition, max_excess, rank_two_condition};

/// Index 1 at coordinate `i`, `n_j` everywhere else.
fn unit(s: &ProductSpec, i: usize) -> Element {
    let idx = s
        .coords()
        .iter()
        .enumerate()
        .map(|(j, c)| if j == i { 1 } else { c.period() })
        .collect();
    Element::new(idx)
}

/// `e_r^{[(⌈k_r/n_r⌉−1)n_r]} · Π_{i∈R1} e_i^{[n_i−1]}`.
pub fn claim_a(s: &ProductSpec, r: usize) -> Seq {
    let mut terms = vec![unit(s, r); s.coords()[r].excess() as usize];
    for i in s.r1() {
        terms.extend(std::iter::repeat_n(unit(s, i), (s.coords()[i].period() - 1) as usize));
    }
    Seq::new(terms)
}

/// Lift residues to indices: residue `x` becomes `x`, zero becomes `n_i`.
pub fn lift(s: &ProductSpec, u: &GroupSeq) -> Seq {
    let n = s.periods();
    u.terms()
        .iter()
        .map(|a| Element::new(a.iter().zip(&n).map(|(&x, &m)| if x == 0 { m } else { x }).collect()))
        .collect()
}

/// `μ^{[⌈k_t/n_t⌉−1]} · U` with `μ` all `n_i` and `U` a lift of the zero-sum free `u`.
pub fn claim_b(s: &ProductSpec, t: usize, u: &GroupSeq) -> Seq {
    let mu = Element::new(s.periods());
    Seq::repeat(&mu, s.coords()[t].excess_multiplier() as usize).concat(&lift(s, u))
}

/// `ν^{[M+N−1]}` with `ν` all ones, for pairwise coprime periods when the
/// maximal excess is attained at a periodic coordinate satisfying the
/// divisibility condition.
pub fn v_witness(s: &ProductSpec) -> Option<Seq> {
    let n = s.periods();
    let coprime = (0..n.len()).all(|i| (i + 1..n.len()).all(|j| gcd(n[i], n[j]) == 1));
    if !coprime || !coprime_condition(s) {
        return None;
    }
    let m = max_excess(s);
    let attained_nil = s.coords().iter().any(|c| c.period() == 1 && c.excess() == m);
    if attained_nil {
        return None;
    }
    let big_n: u64 = s.r1().iter().map(|&i| n[i]).product();
    let nu = Element::new(vec![1; s.arity()]);
    Some(Seq::repeat(&nu, (m + big_n - 1) as usize))
}

/// `b^{[M + lcm − 1]} · c^{[gcd − 1]}` for two factors satisfying the
/// divisibility alternative at coordinate `ε`.
pub fn rank_two_witness(s: &ProductSpec) -> Option<Seq> {
    let eps = rank_two_condition(s)?;
    let other = 1 - eps;
    let (n1, n2) = (s.coords()[other].period(), s.coords()[eps].period());
    let g = gcd(n1, n2);
    let pot = |p: u64, mut x: u64| {
        let mut e = 0;
        while x.is_multiple_of(p) {
            x /= p;
            e += 1;
        }
        e
    };
    let m1: u64 = factorize(n1)
        .into_iter()
        .filter(|&(p, e)| e < pot(p, n2))
        .map(|(p, e)| p.pow(e))
        .product();
    let place = |x: u64, y: u64| {
        let mut v = vec![0; 2];
        v[other] = x;
        v[eps] = y;
        Element::new(v)
    };
    let b = place(m1, 1);
    let c = place(n1 / m1, n2 / g);
    let lcm = n1 / g * n2;
    let m = max_excess(s);
    Some(Seq::repeat(&b, (m + lcm - 1) as usize).concat(&Seq::repeat(&c, (g - 1) as usize)))
}

//! Finite cyclic semigroups `C(k;n)` and their finite direct products.
//!
//! `C(k;n)` is generated by one element `g` and has the elements
//! `g, 2g, …, (k+n−1)g`. An element is stored by its canonical index: the
//! least `t ≥ 1` with `t·g` equal to it. Products are stored coordinate-wise
//! as index vectors, never as residues, since deciding whether a sum is the
//! idempotent needs the magnitude of each coordinate sum and not only its
//! class modulo the period.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::round_up;
use crate::error::{Error, Result};

/// One cyclic semigroup `C(k;n)` with index `k ≥ 1` and period `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicSpec {
    k: u64,
    n: u64,
}

impl CyclicSpec {
    pub fn new(k: u64, n: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("index must be >= 1".into()));
        }
        if n == 0 {
            return Err(Error::InvalidSpec("period must be >= 1".into()));
        }
        if k.checked_add(n).is_none() {
            return Err(Error::Overflow("k + n - 1 exceeds u64"));
        }
        Ok(CyclicSpec { k, n })
    }

    pub fn index(&self) -> u64 {
        self.k
    }

    pub fn period(&self) -> u64 {
        self.n
    }

    /// Number of elements, `k + n − 1`.
    pub fn size(&self) -> u64 {
        self.k + self.n - 1
    }

    /// `⌈k/n⌉·n`. This is also the canonical index of the idempotent.
    pub fn cap(&self) -> u64 {
        round_up(self.k, self.n)
    }

    /// `⌈k/n⌉ − 1`.
    pub fn excess_multiplier(&self) -> u64 {
        self.k.div_ceil(self.n) - 1
    }

    /// `(⌈k/n⌉ − 1)·n`, the quantity maximised in the Erdős-Burgess bounds.
    pub fn excess(&self) -> u64 {
        self.cap() - self.n
    }

    /// Reduce a raw generator count `raw ≥ 1` to the canonical index of `raw·g`.
    pub fn canonical_index(&self, raw: u64) -> Result<u64> {
        if raw == 0 {
            return Err(Error::OutOfRange { coord: 0, value: 0, max: self.size() });
        }
        Ok(self.reduce(raw))
    }

    #[inline]
    pub(crate) fn reduce(&self, raw: u64) -> u64 {
        if raw <= self.size() {
            raw
        } else {
            self.k + (raw - self.k) % self.n
        }
    }

    pub fn idempotent_index(&self) -> u64 {
        self.cap()
    }

    /// The subgroup `{k, …, k+n−1}` of the canonical indices.
    pub fn group_part(&self) -> std::ops::RangeInclusive<u64> {
        self.k..=self.size()
    }
}

impl fmt::Display for CyclicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({};{})", self.k, self.n)
    }
}

/// A point of a product semigroup, as its vector of canonical indices.
///
/// Elements order lexicographically by index vector; the exhaustive
/// searches rely on this order to enumerate multisets once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn new(idx: Vec<u64>) -> Self {
        Element(idx)
    }

    pub fn idx(&self) -> &[u64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<u64>> for Element {
    fn from(v: Vec<u64>) -> Self {
        Element(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The product `C(k_1;n_1) × … × C(k_r;n_r)`, in the listed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductSpec {
    coords: Vec<CyclicSpec>,
}

impl ProductSpec {
    pub fn new(coords: Vec<CyclicSpec>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidSpec("a product needs at least one coordinate".into()));
        }
        Ok(ProductSpec { coords })
    }

    pub fn single(c: CyclicSpec) -> Self {
        ProductSpec { coords: vec![c] }
    }

    /// Shorthand for tests and tables: `from_pairs(&[(k1, n1), (k2, n2)])`.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        let coords = pairs
            .iter()
            .map(|&(k, n)| CyclicSpec::new(k, n))
            .collect::<Result<Vec<_>>>()?;
        ProductSpec::new(coords)
    }

    pub fn coords(&self) -> &[CyclicSpec] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    /// Positions with period greater than one.
    pub fn r1(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| self.coords[i].period() > 1).collect()
    }

    pub fn caps(&self) -> Vec<u64> {
        self.coords.iter().map(CyclicSpec::cap).collect()
    }

    pub fn periods(&self) -> Vec<u64> {
        self.coords.iter().map(CyclicSpec::period).collect()
    }

    /// `G_S = Π Z_{n_i}`.
    pub fn group(&self) -> GroupSpec {
        GroupSpec { periods: self.periods() }
    }

    /// `Π (k_i + n_i − 1)`, with overflow reported.
    pub fn element_count(&self) -> Result<u128> {
        self.coords.iter().try_fold(1u128, |acc, c| {
            acc.checked_mul(c.size() as u128)
                .ok_or(Error::Overflow("element count exceeds u128"))
        })
    }

    pub fn idempotent(&self) -> Element {
        Element(self.coords.iter().map(CyclicSpec::idempotent_index).collect())
    }

    pub fn is_idempotent(&self, a: &Element) -> bool {
        a.0.iter().zip(&self.coords).all(|(&t, c)| t == c.cap())
    }

    pub fn validate(&self, a: &Element) -> Result<()> {
        if a.arity() != self.arity() {
            return Err(Error::DimensionMismatch { expected: self.arity(), got: a.arity() });
        }
        for (i, (&t, c)) in a.0.iter().zip(&self.coords).enumerate() {
            if t == 0 || t > c.size() {
                return Err(Error::OutOfRange { coord: i, value: t, max: c.size() });
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &Element, b: &Element) -> Element {
        Element(
            self.coords
                .iter()
                .zip(a.0.iter().zip(&b.0))
                .map(|(c, (&x, &y))| c.reduce(x + y))
                .collect(),
        )
    }

    /// All elements in lexicographic order of their index vectors.
    pub fn elements(&self) -> Elements<'_> {
        Elements { spec: self, next: Some(vec![1; self.arity()]) }
    }

    /// Elements other than the idempotent, in lexicographic order.
    pub fn non_idempotent_elements(&self) -> Vec<Element> {
        self.elements().filter(|e| !self.is_idempotent(e)).collect()
    }

    /// Canonical text form `C(k;n)xC(k;n)…`, without whitespace.
    pub fn format_spec(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ProductSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

pub struct Elements<'a> {
    spec: &'a ProductSpec,
    next: Option<Vec<u64>>,
}

impl Iterator for Elements<'_> {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ[i] < self.spec.coords[i].size() {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 1;
        }
        Some(Element(cur))
    }
}

/// A finite abelian group `Π Z_{n_i}` given by its list of moduli.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    periods: Vec<u64>,
}

impl GroupSpec {
    pub fn new(periods: Vec<u64>) -> Result<Self> {
        if periods.is_empty() {
            return Err(Error::InvalidSpec("a group needs at least one modulus".into()));
        }
        if periods.contains(&0) {
            return Err(Error::InvalidSpec("moduli must be >= 1".into()));
        }
        Ok(GroupSpec { periods })
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    pub fn order(&self) -> Result<u128> {
        self.periods.iter().try_fold(1u128, |acc, &n| {
            acc.checked_mul(n as u128).ok_or(Error::Overflow("group order exceeds u128"))
        })
    }

    /// `Π C(1;n_i)`, the same group viewed as a product of cyclic semigroups.
    pub fn as_product(&self) -> ProductSpec {
        ProductSpec {
            coords: self.periods.iter().map(|&n| CyclicSpec { k: 1, n }).collect(),
        }
    }

    /// Parse a comma-separated modulus list such as `2,4`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut periods = Vec::new();
        let mut pos = 0;
        for part in text.split(',') {
            let trimmed = part.trim();
            let v = trimmed.parse::<u64>().map_err(|_| Error::Parse {
                pos,
                msg: format!("expected a positive modulus, found {trimmed:?}"),
            })?;
            if v == 0 {
                return Err(Error::Parse { pos, msg: "moduli must be >= 1".into() });
            }
            periods.push(v);
            pos += part.len() + 1;
        }
        GroupSpec::new(periods)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.periods.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parse the grammar `C(<k>;<n>)` joined by `x`. Whitespace is allowed
/// around each factor.
pub fn parse_spec(text: &str) -> Result<ProductSpec> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let mut coords = Vec::new();
    loop {
        p.skip_ws();
        coords.push(p.factor()?);
        p.skip_ws();
        match p.peek() {
            None => break,
            Some(b'x') => p.pos += 1,
            Some(c) => return Err(p.err(format!("expected 'x' or end of input, found {:?}", c as char))),
        }
    }
    ProductSpec::new(coords)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.err(format!("expected {:?}, found {:?}", c as char, got as char))),
            None => Err(self.err(format!("expected {:?}, found end of input", c as char))),
        }
    }

    fn number(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            return Err(self.err(format!("{what} must be >= 1")));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(format!("expected a decimal {what}")));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        let v: u64 = digits
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: format!("{what} does not fit in 64 bits") })?;
        if v == 0 {
            return Err(Error::Parse { pos: start, msg: format!("{what} must be >= 1") });
        }
        Ok(v)
    }

    fn factor(&mut self) -> Result<CyclicSpec> {
        let start = self.pos;
        self.expect(b'C')?;
        self.expect(b'(')?;
        let k = self.number("index")?;
        self.expect(b';')?;
        let n = self.number("period")?;
        self.expect(b')')?;
        CyclicSpec::new(k, n).map_err(|e| Error::Parse { pos: start, msg: e.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> ProductSpec {
        s.parse().unwrap()
    }

    fn el(v: &[u64]) -> Element {
        Element::new(v.to_vec())
    }

    #[test]
    fn parse_examples() {
        let s = spec("C(2;3)");
        assert_eq!(s.coords(), &[CyclicSpec::new(2, 3).unwrap()]);
        let s = spec("C(3;2)xC(1;4)");
        assert_eq!(s.coords().len(), 2);
        assert_eq!((s.coords()[0].index(), s.coords()[0].period()), (3, 2));
        assert_eq!((s.coords()[1].index(), s.coords()[1].period()), (1, 4));
        assert_eq!(spec(" C(3;2) x  C(1;4) ").format_spec(), "C(3;2)xC(1;4)");
    }

    #[test]
    fn parse_errors() {
        match parse_spec("C(0;3)") {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 2);
                assert!(msg.contains("index must be >= 1"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_spec("C(2;0)"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_spec("C(-1;2)"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_spec("C(2;3)x"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_spec("C(2,3)"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_spec(""), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_spec("C(2;3)C(1;1)"), Err(Error::Parse { pos: 6, .. })));
        assert!(parse_spec("C(99999999999999999999;1)").is_err());
    }

    #[test]
    fn canonical_index_examples() {
        let c = CyclicSpec::new(2, 3).unwrap();
        assert_eq!(c.canonical_index(3).unwrap(), 3);
        assert_eq!(c.canonical_index(5).unwrap(), 2);
        assert!(c.canonical_index(0).is_err());
        let one = CyclicSpec::new(1, 1).unwrap();
        assert_eq!(one.canonical_index(7).unwrap(), 1);
    }

    #[test]
    fn add_examples() {
        let s = spec("C(2;3)");
        assert_eq!(s.add(&el(&[2]), &el(&[3])).unwrap(), el(&[2]));
        let s = spec("C(3;2)xC(1;4)");
        assert_eq!(s.add(&el(&[1, 2]), &el(&[1, 1])).unwrap(), el(&[2, 3]));
        let s = spec("C(1;1)");
        assert_eq!(s.add(&el(&[1]), &el(&[1])).unwrap(), el(&[1]));
    }

    #[test]
    fn add_rejects_bad_elements() {
        let s = spec("C(3;2)xC(1;4)");
        assert!(matches!(
            s.add(&el(&[1]), &el(&[1, 1])),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
        assert!(matches!(
            s.add(&el(&[5, 1]), &el(&[1, 1])),
            Err(Error::OutOfRange { coord: 0, value: 5, max: 4 })
        ));
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(spec("C(2;3)").idempotent(), el(&[3]));
        assert_eq!(spec("C(3;2)").idempotent(), el(&[4]));
        assert_eq!(spec("C(1;6)").idempotent(), el(&[6]));
    }

    #[test]
    fn element_count_examples() {
        assert_eq!(spec("C(2;3)").element_count().unwrap(), 4);
        assert_eq!(spec("C(3;2)xC(1;4)").element_count().unwrap(), 16);
        assert_eq!(spec("C(1;1)").element_count().unwrap(), 1);
        let huge = vec![CyclicSpec::new(u32::MAX as u64, u32::MAX as u64).unwrap(); 5];
        assert!(matches!(
            ProductSpec::new(huge).unwrap().element_count(),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn elements_are_lexicographic() {
        let s = spec("C(2;1)xC(1;3)");
        let all: Vec<_> = s.elements().collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], el(&[1, 1]));
        assert_eq!(all[5], el(&[2, 3]));
        assert_eq!(s.non_idempotent_elements().len(), 5);
    }

    #[test]
    fn group_parse() {
        let g = GroupSpec::parse("2, 4").unwrap();
        assert_eq!(g.periods(), &[2, 4]);
        assert!(GroupSpec::parse("2,x").is_err());
        assert!(GroupSpec::parse("0").is_err());
    }
}

//! Small integer helpers shared by the rest of the crate.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// `⌈k/n⌉·n`, the least multiple of `n` that is at least `k`.
pub fn round_up(k: u64, n: u64) -> u64 {
    ceil_div(k, n) * n
}

/// Prime factorization by trial division, as `(p, exponent)` pairs in increasing `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `p^a` with `a ≥ 1`.
pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() == 1
}

/// Inverse of `a` modulo `n` when `gcd(a, n) = 1`. Every residue is its own inverse mod 1.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

/// Least positive residue of `x` modulo `n`: the representative in `[1, n]`.
pub fn least_positive_residue(x: u64, n: u64) -> u64 {
    match x % n {
        0 => n,
        r => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_lcm() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(lcm(4, 6), Some(12));
        assert_eq!(lcm(u64::MAX, 2), None);
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(2));
        assert!(is_prime_power(9));
        assert!(is_prime_power(64));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(6));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn inverses() {
        for n in 2..30u64 {
            for a in 1..n {
                match mod_inverse(a, n) {
                    Some(b) => assert_eq!(a * b % n, 1),
                    None => assert_ne!(gcd(a, n), 1),
                }
            }
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_up(3, 2), 4);
        assert_eq!(round_up(2, 3), 3);
        assert_eq!(round_up(6, 3), 6);
        assert_eq!(least_positive_residue(0, 5), 5);
        assert_eq!(least_positive_residue(7, 5), 2);
    }
}

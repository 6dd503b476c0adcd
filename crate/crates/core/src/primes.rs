//! Small-integer prime arithmetic.

use std::collections::BTreeSet;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, exponent)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `π(n)`.
pub fn prime_divisors(n: u64) -> BTreeSet<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The largest divisor of `n` whose prime divisors all satisfy `keep`.
pub fn part_of(n: u64, keep: impl Fn(u64) -> bool) -> u64 {
    factorize(n)
        .into_iter()
        .filter(|&(p, _)| keep(p))
        .map(|(p, e)| p.pow(e))
        .product()
}

/// Whether every prime divisor of `n` satisfies `keep` (true for `n = 1`).
pub fn is_number_of(n: u64, keep: impl Fn(u64) -> bool) -> bool {
    factorize(n).into_iter().all(|(p, _)| keep(p))
}

pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_parts() {
        assert_eq!(factorize(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(part_of(60, |p| p == 2 || p == 5), 20);
        assert_eq!(part_of(60, |p| p == 7), 1);
        assert!(is_number_of(9, |p| p == 3));
        assert!(!is_number_of(12, |p| p == 3));
        assert_eq!(prime_power_base(16), Some(2));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
        assert!(is_prime(7) && !is_prime(1) && !is_prime(9));
    }
}

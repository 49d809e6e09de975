//! Small integer helpers: divisors, prime factors, divisor counts.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Positive divisors of `d` in increasing order.
pub fn divisors(d: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= d {
        if d.is_multiple_of(i) {
            small.push(i);
            if i * i != d {
                large.push(d / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Distinct prime factors of `d` in increasing order.
pub fn prime_factors(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p) {
            out.push(p);
            while d.is_multiple_of(p) {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Number of positive divisors of `d`.
pub fn eta(d: i64) -> Result<u64> {
    if d <= 0 {
        return Err(Error::NonPositive(d));
    }
    Ok(divisors(d as u64).len() as u64)
}

/// Positive gcd of the nonzero entries; zero when every entry is zero.
pub fn gcd_of(values: &[i64]) -> u64 {
    values.iter().fold(0u64, |g, &v| g.gcd(&v.unsigned_abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_examples() {
        assert_eq!(eta(1).unwrap(), 1);
        assert_eq!(eta(4).unwrap(), 3);
        assert_eq!(eta(12).unwrap(), 6);
        assert_eq!(eta(0), Err(Error::NonPositive(0)));
        assert_eq!(eta(-3), Err(Error::NonPositive(-3)));
    }

    #[test]
    fn divisors_match_brute_force() {
        for d in 1..500u64 {
            let brute: Vec<u64> = (1..=d).filter(|t| d % t == 0).collect();
            assert_eq!(divisors(d), brute);
        }
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(prime_factors(97), vec![97]);
        assert_eq!(gcd_of(&[0, -4, 6]), 2);
        assert_eq!(gcd_of(&[0, 0]), 0);
    }
}

//! Small integer helpers shared by several modules.

use crate::error::{ParseError, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn ensure_prime(p: u32) -> Result<u32> {
    if is_prime(p as u64) {
        Ok(p)
    } else {
        Err(ParseError::NotPrime(p as u64).into())
    }
}

/// `ν_p(m)`, the exponent of `p` in `m`; `m` must be positive.
pub fn nu(p: u32, mut m: u64) -> u32 {
    debug_assert!(m > 0);
    let p = p as u64;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    k
}

/// Base-`p` digit sum.
pub fn digit_sum(p: u32, mut n: u64) -> u64 {
    let p = p as u64;
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(ensure_prime(4).is_err());
    }

    #[test]
    fn valuations_and_digit_sums() {
        assert_eq!(nu(2, 48), 4);
        assert_eq!(nu(3, 10), 0);
        assert_eq!(digit_sum(2, 42), 3);
        assert_eq!(digit_sum(3, 8), 4);
    }
}

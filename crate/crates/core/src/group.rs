//! The cyclic group `C_pq` for distinct odd primes `p < q`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    EvenPrime(u64),
    #[error("p and q must be distinct (got {0} twice)")]
    Equal(u64),
    #[error("p must be smaller than q (got p = {p}, q = {q})")]
    Unordered { p: u64, q: u64 },
}

/// One of the two prime factors of `|G| = pq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    P,
    Q,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::P => Factor::Q,
            Factor::Q => Factor::P,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::P => f.write_str("p"),
            Factor::Q => f.write_str("q"),
        }
    }
}

/// `G = C_pq`. Construction validates that `p < q` are odd primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupPQ {
    p: u64,
    q: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl GroupPQ {
    pub fn new(p: u64, q: u64) -> Result<Self, GroupError> {
        for n in [p, q] {
            if !is_prime(n) {
                return Err(GroupError::NotPrime(n));
            }
            if n == 2 {
                return Err(GroupError::EvenPrime(n));
            }
        }
        if p == q {
            return Err(GroupError::Equal(p));
        }
        if p > q {
            return Err(GroupError::Unordered { p, q });
        }
        Ok(GroupPQ { p, q })
    }

    /// `C_15`, the group of all worked examples.
    pub fn c15() -> Self {
        GroupPQ { p: 3, q: 5 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.p * self.q
    }

    pub fn prime(&self, which: Factor) -> u64 {
        match which {
            Factor::P => self.p,
            Factor::Q => self.q,
        }
    }
}

impl fmt::Display for GroupPQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{} (p = {}, q = {})", self.order(), self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_odd_prime_pairs() {
        let g = GroupPQ::new(3, 5).unwrap();
        assert_eq!(g.order(), 15);
        assert_eq!(g.prime(Factor::Q), 5);
        assert!(GroupPQ::new(5, 7).is_ok());
        assert!(GroupPQ::new(3, 7).is_ok());
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(GroupPQ::new(2, 5), Err(GroupError::EvenPrime(2)));
        assert_eq!(GroupPQ::new(3, 9), Err(GroupError::NotPrime(9)));
        assert_eq!(GroupPQ::new(5, 5), Err(GroupError::Equal(5)));
        assert_eq!(
            GroupPQ::new(7, 3),
            Err(GroupError::Unordered { p: 7, q: 3 })
        );
        assert_eq!(GroupPQ::new(1, 3), Err(GroupError::NotPrime(1)));
    }
}

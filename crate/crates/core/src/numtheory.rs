//! Dyadic (2-adic) arithmetic: valuations, digit sums, and the
//! inequalities the parity classification rests on.

use crate::error::{Error, Result};

/// Binary digit sum of a positive integer.
pub fn s2(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Zero { what: "s2 argument" });
    }
    Ok(n.count_ones())
}

/// Dyadic valuation: the largest m such that 2^m divides n.
pub fn nu2(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Zero { what: "nu2 argument" });
    }
    Ok(n.trailing_zeros())
}

/// Dyadic valuation of the binomial coefficient C(j, a), computed as
/// s2(a) + s2(j - a) - s2(j) without forming the coefficient itself.
pub fn nu2_binomial(j: u64, a: u64) -> Result<u32> {
    if a > j {
        return Err(Error::BinomialDomain { j, a });
    }
    // s2(0) = 0 covers the boundary cases a = 0 and a = j.
    let v = a.count_ones() + (j - a).count_ones();
    debug_assert!(v >= j.count_ones());
    Ok(v - j.count_ones())
}

/// True iff the parts sum to n and their binary digits decompose the
/// digits of n, i.e. the addition carries nowhere.
pub fn digits_decompose(parts: &[u64], n: u64) -> Result<bool> {
    if parts.is_empty() {
        return Err(Error::Empty("digit decomposition parts"));
    }
    if n == 0 {
        return Err(Error::Zero { what: "digits_decompose target" });
    }
    let mut sum = 0u64;
    let mut digits = 0u32;
    for &p in parts {
        if p == 0 {
            return Err(Error::Zero { what: "digit decomposition part" });
        }
        sum = sum.checked_add(p).ok_or(Error::TooLarge {
            what: "digit decomposition sum",
            got: u64::MAX,
            limit: u64::MAX,
        })?;
        digits += p.count_ones();
    }
    Ok(sum == n && digits == n.count_ones())
}

/// Outcome of the inequality T - nu2(T) >= s2(T).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IneqNumb {
    pub holds: bool,
    pub tight: bool,
}

/// Checks T - nu2(T) >= s2(T); tight exactly for T in {1, 2}.
pub fn check_ineq_numb(t: u64) -> Result<IneqNumb> {
    let lhs = t - u64::from(nu2(t)?);
    let rhs = u64::from(s2(t)?);
    Ok(IneqNumb {
        holds: lhs >= rhs,
        tight: lhs == rhs,
    })
}

/// The dyadic facts about a positive integer used throughout the
/// parity arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicFacts {
    pub n: u64,
    pub nu2: u32,
    pub s2: u32,
}

impl DyadicFacts {
    pub fn of(n: u64) -> Result<Self> {
        Ok(DyadicFacts {
            n,
            nu2: nu2(n)?,
            s2: s2(n)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_values() {
        assert_eq!(s2(1).unwrap(), 1);
        assert_eq!(s2(12).unwrap(), 2);
        assert_eq!(s2(5712).unwrap(), 5);
        assert!(s2(0).is_err());
    }

    #[test]
    fn nu2_values() {
        assert_eq!(nu2(1).unwrap(), 0);
        assert_eq!(nu2(8).unwrap(), 3);
        assert_eq!(nu2(120).unwrap(), 3);
        assert!(nu2(0).is_err());
    }

    #[test]
    fn nu2_binomial_values() {
        // j = 2^n + r, a = r with 0 <= r < 2^n gives an odd coefficient.
        for n in 0..8u64 {
            for r in 0..(1 << n) {
                assert_eq!(nu2_binomial((1 << n) + r, r).unwrap(), 0);
            }
        }
        // central coefficient C(2^{n+1}, 2^n) is exactly divisible by 2.
        for n in 0..8u64 {
            assert_eq!(nu2_binomial(1 << (n + 1), 1 << n).unwrap(), 1);
        }
        assert_eq!(nu2_binomial(4, 2).unwrap(), 1); // C(4,2) = 6
        assert!(nu2_binomial(3, 4).is_err());
        assert_eq!(nu2_binomial(0, 0).unwrap(), 0);
    }

    #[test]
    fn nu2_binomial_matches_exact_coefficient() {
        // Against exactly computed C(j, a) for all 0 <= a <= j <= 64.
        for j in 0u64..=64 {
            let mut binom: u128 = 1;
            for a in 0..=j {
                let exact_nu2 = binom.trailing_zeros();
                assert_eq!(
                    nu2_binomial(j, a).unwrap(),
                    exact_nu2,
                    "j={j} a={a}"
                );
                if a < j {
                    binom = binom * u128::from(j - a) / u128::from(a + 1);
                }
            }
        }
    }

    #[test]
    fn digits_decompose_values() {
        assert!(digits_decompose(&[4, 2, 1], 7).unwrap());
        assert!(!digits_decompose(&[2, 2], 4).unwrap());
        assert!(digits_decompose(&[8, 4, 2, 1], 15).unwrap());
        assert!(digits_decompose(&[12], 12).unwrap());
        assert!(!digits_decompose(&[3, 3], 6).unwrap());
        assert!(digits_decompose(&[4, 2], 6).unwrap());
        assert!(!digits_decompose(&[4, 2], 7).unwrap());
        assert!(digits_decompose(&[], 7).is_err());
        assert!(digits_decompose(&[0, 7], 7).is_err());
    }

    #[test]
    fn ineq_numb_examples() {
        assert_eq!(
            check_ineq_numb(1).unwrap(),
            IneqNumb { holds: true, tight: true }
        );
        assert_eq!(
            check_ineq_numb(2).unwrap(),
            IneqNumb { holds: true, tight: true }
        );
        assert_eq!(
            check_ineq_numb(3).unwrap(),
            IneqNumb { holds: true, tight: false }
        );
        assert!(check_ineq_numb(0).is_err());
    }

    #[test]
    fn dyadic_facts() {
        let f = DyadicFacts::of(120).unwrap();
        assert_eq!(f.nu2, 3);
        assert_eq!(f.s2, 4);
        assert!((1u64 << f.nu2) & 120 != 0 || 120 % (1 << f.nu2) == 0);
        assert!(120 % (1u64 << (f.nu2 + 1)) != 0);
        assert!(DyadicFacts::of(0).is_err());
    }
}

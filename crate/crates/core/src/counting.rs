//! Involution counts `I_{n,d}` and the number of RCC loops of order `2p`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::algebra::{is_prime, two_adic_split};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`ind_count`].
pub const MAX_FORMULA_DEGREE: u64 = 64;
/// Largest `n` accepted by [`ind_count_brute`].
pub const MAX_BRUTE_DEGREE: usize = 10;

fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Number of `tau` in `S_n` with `tau^2 = 1` commuting with `zeta^d`,
/// `zeta` an `n`-cycle.
pub fn ind_count(n: u64, d: u64) -> Result<BigUint> {
    if n == 0 || d == 0 {
        return Err(Error::OutOfRange {
            what: "n and d",
            value: 0,
            bound: 1,
        });
    }
    if n > MAX_FORMULA_DEGREE {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: MAX_FORMULA_DEGREE,
        });
    }
    let d = n.gcd(&d);
    let m = n / d;
    let base = BigUint::from(2 - m % 2);
    let d_fact = factorial(d);
    let total = (0..=d / 2)
        .map(|k| {
            let num = &d_fact * BigUint::from(m).pow(k as u32) * base.pow((d - 2 * k) as u32);
            let den = BigUint::from(2u32).pow(k as u32) * factorial(k) * factorial(d - 2 * k);
            num / den
        })
        .sum();
    Ok(total)
}

/// `I_n = I_{n,n}`: one more than the number of involutions in `S_n`.
pub fn ind_count_full(n: u64) -> Result<BigUint> {
    ind_count(n, n)
}

/// Literal count over all of `S_n`.
pub fn ind_count_brute(n: usize, d: usize) -> Result<u64> {
    if n > MAX_BRUTE_DEGREE {
        return Err(Error::DegreeTooLarge {
            n,
            max: MAX_BRUTE_DEGREE,
        });
    }
    if n == 0 || d == 0 {
        return Err(Error::OutOfRange {
            what: "n and d",
            value: 0,
            bound: 1,
        });
    }
    let zd: Vec<usize> = (0..n).map(|x| (x + d) % n).collect();
    let count = (0..n)
        .permutations(n)
        .filter(|t| (0..n).all(|x| t[t[x]] == x) && (0..n).all(|x| t[zd[x]] == zd[t[x]]))
        .count();
    Ok(count as u64)
}

/// All `tau` in `S_n` with `tau^2 = 1`, as image vectors in lexicographic order.
pub fn involutions(n: usize) -> Vec<Vec<usize>> {
    fn extend(t: &mut Vec<usize>, x: usize, out: &mut Vec<Vec<usize>>) {
        let n = t.len();
        if x == n {
            out.push(t.clone());
            return;
        }
        if t[x] != usize::MAX {
            return extend(t, x + 1, out);
        }
        // partner x itself first, then larger partners: lexicographic
        for y in x..n {
            if t[y] != usize::MAX {
                continue;
            }
            t[x] = y;
            t[y] = x;
            extend(t, x + 1, out);
            t[y] = usize::MAX;
            t[x] = usize::MAX;
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![usize::MAX; n], 0, &mut out);
    out.sort();
    out
}

/// Orbits of conjugation by `zeta = (0 1 .. n-1)` on involutions-or-identity,
/// counted directly.
pub fn zeta_orbit_count_direct(n: usize) -> usize {
    let mut seen = BTreeSet::new();
    for t in involutions(n) {
        let canon = (0..n)
            .map(|k| {
                // zeta^-k tau zeta^k: x -> ((x - k) tau) + k
                (0..n)
                    .map(|x| (t[(x + n - k) % n] + k) % n)
                    .collect::<Vec<_>>()
            })
            .min()
            .expect("n >= 1");
        seen.insert(canon);
    }
    seen.len()
}

/// `(1/n) sum_{d=1}^{n} I_{n,d}`; errors if the division is inexact.
pub fn zeta_orbit_count(n: u64) -> Result<BigUint> {
    let sum: BigUint = (1..=n).map(|d| ind_count(n, d)).sum::<Result<BigUint>>()?;
    let (q, r) = sum.div_rem(&BigUint::from(n));
    if r != BigUint::from(0u32) {
        return Err(Error::NonIntegerOrbitCount {
            numerator: sum.to_string(),
            denominator: n,
        });
    }
    Ok(q)
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IValue {
    pub n: u64,
    pub d: u64,
    #[serde(serialize_with = "as_decimal")]
    pub value: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSplit {
    #[serde(serialize_with = "as_decimal")]
    pub case_a: BigUint,
    pub case_b: u64,
    pub case_c: u64,
}

/// Number of RCC loops of order `2p` up to isomorphism, with the split by
/// envelope type for odd `p`. Big values are serialized as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub p: u64,
    #[serde(serialize_with = "as_decimal")]
    pub total: BigUint,
    /// `None` for `p = 2`.
    pub split: Option<CaseSplit>,
    pub r: u64,
    pub i_values: Vec<IValue>,
}

pub fn total_rcc_count(p: u64) -> Result<CountReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_FORMULA_DEGREE + 1 {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            bound: MAX_FORMULA_DEGREE + 1,
        });
    }
    let n = p - 1;
    let i_values: Vec<IValue> = (1..=n)
        .map(|d| ind_count(n, d).map(|value| IValue { n, d, value }))
        .collect::<Result<_>>()?;
    let i_n = i_values.last().expect("n >= 1").value.clone();
    let orbits = zeta_orbit_count(n)?;
    let total = BigUint::from(p - 2) + &i_n + &orbits;
    let (_, r) = two_adic_split(n);
    let split = (p > 2).then(|| CaseSplit {
        case_a: i_n - 1u32 + orbits,
        case_b: p - r - 1,
        case_c: r,
    });
    Ok(CountReport {
        p,
        total,
        split,
        r,
        i_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn known_values() {
        assert_eq!(ind_count(4, 2).unwrap(), big(6));
        assert_eq!(ind_count(1, 1).unwrap(), big(1));
        assert_eq!(ind_count(4, 4).unwrap(), big(10));
        assert_eq!(ind_count(6, 3).unwrap(), big(20));
        assert_eq!(ind_count(6, 1).unwrap(), big(2));
    }

    #[test]
    fn brute_values() {
        assert_eq!(ind_count_brute(6, 3).unwrap(), 20);
        assert_eq!(ind_count_brute(6, 1).unwrap(), 2);
        assert_eq!(ind_count_brute(4, 4).unwrap(), 10);
        assert!(matches!(ind_count_brute(11, 1), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn gcd_reduction() {
        for n in 1..=12u64 {
            for d in (1..=n).filter(|d| n % d == 0) {
                for e in 1..=n {
                    if e.gcd(&(n / d)) == 1 {
                        assert_eq!(ind_count(n, d * e).unwrap(), ind_count(n, d).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn involution_listing() {
        assert_eq!(involutions(3).len(), 4);
        assert_eq!(involutions(4).len() as u64, 10);
        assert_eq!(involutions(3)[0], vec![0, 1, 2]);
        for n in 1..=8 {
            assert_eq!(BigUint::from(involutions(n).len()), ind_count_full(n as u64).unwrap());
        }
    }

    #[test]
    fn burnside_matches_direct_orbits() {
        for n in 1..=10u64 {
            assert_eq!(
                zeta_orbit_count(n).unwrap(),
                BigUint::from(zeta_orbit_count_direct(n as usize))
            );
        }
    }

    #[test]
    fn totals() {
        let expected = [
            (2u64, 2u64),
            (3, 5),
            (5, 18),
            (7, 99),
            (11, 10489),
            (13, 151973),
            (17, 49096721),
            (19, 1052729657),
        ];
        for (p, total) in expected {
            assert_eq!(total_rcc_count(p).unwrap().total, big(total), "p = {p}");
        }
        let r5 = total_rcc_count(5).unwrap().split.unwrap();
        assert_eq!((r5.case_a, r5.case_b, r5.case_c), (big(14), 3, 1));
        let r7 = total_rcc_count(7).unwrap().split.unwrap();
        assert_eq!((r7.case_a, r7.case_b, r7.case_c), (big(93), 3, 3));
        assert!(total_rcc_count(2).unwrap().split.is_none());
        assert_eq!(total_rcc_count(9).unwrap_err(), Error::NotPrime(9));
    }

    #[test]
    fn report_json() {
        let json = serde_json::to_string(&total_rcc_count(5).unwrap()).unwrap();
        assert!(json.starts_with(r#"{"p":5,"total":"18","split":{"case_a":"14","case_b":3,"case_c":1}"#));
    }
}

//! Concrete groups and fields: the wreath and affine contexts inside the
//! symmetric group of degree `2p`, finite fields `GF(q)`, and `GL(2,q)`.

mod affine;
mod field;
pub(crate) mod gl2;
mod wreath;

pub use affine::{affine_context, AffineContext};
pub use field::{field_context, FieldContext, FieldElement};
pub use gl2::{gl2_group, gl2_permutation_view, singer_element, Gl2Group, Gl2View, Matrix2};
pub use wreath::{wreath_context, WreathContext};

use crate::error::{Error, Result};

/// Upper bound on `p` accepted by the context constructors.
pub const MAX_CONTEXT_PRIME: u64 = 13;

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

pub(crate) fn check_odd_prime(p: u64, bound: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p > bound {
        return Err(Error::OutOfRange {
            what: "p",
            value: p,
            bound,
        });
    }
    Ok(())
}

/// Smallest positive primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1;
            for k in 1..p - 1 {
                x = x * g % p;
                if x == 1 && k < p - 1 {
                    return false;
                }
            }
            true
        })
        .expect("every prime has a primitive root")
}

/// Writes `n = 2^e * r` with `r` odd, returning `(e, r)`.
pub fn two_adic_split(n: u64) -> (u32, u64) {
    let e = n.trailing_zeros();
    (e, n >> e)
}

/// `q = p0^k` decomposition, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p0 = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut m = q;
    while m % p0 == 0 {
        m /= p0;
        k += 1;
    }
    (m == 1).then_some((p0, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(11), 2);
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(17), 3);
    }

    #[test]
    fn splits() {
        assert_eq!(two_adic_split(6), (1, 3));
        assert_eq!(two_adic_split(4), (2, 1));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}

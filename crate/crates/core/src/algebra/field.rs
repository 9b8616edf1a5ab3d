use serde::{Deserialize, Serialize};

use crate::algebra::prime_power;
use crate::error::{Error, Result};

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u64 = 27;
pub const MAX_EXTENSION_DEGREE: u32 = 3;

/// An element of a [`FieldContext`], encoded as `sum c_i p0^i` over its
/// polynomial-basis coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> usize {
        self.0 as usize
    }
}

/// `GF(p0^k)` as `F_p0[x] / (modulus)` with precomputed operation tables.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "FieldSpec", try_from = "FieldSpec")]
pub struct FieldContext {
    p0: u64,
    k: u32,
    /// Coefficients `[c_k, .., c_0]`, monic.
    modulus: Vec<u64>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct FieldSpec {
    p0: u64,
    k: u32,
    modulus: Vec<u64>,
}

impl From<FieldContext> for FieldSpec {
    fn from(f: FieldContext) -> Self {
        FieldSpec {
            p0: f.p0,
            k: f.k,
            modulus: f.modulus,
        }
    }
}

impl TryFrom<FieldSpec> for FieldContext {
    type Error = Error;

    fn try_from(spec: FieldSpec) -> Result<Self> {
        let f = field_context(spec.p0.pow(spec.k))?;
        if f.modulus != spec.modulus {
            return Err(Error::Parse(format!(
                "modulus {:?} differs from the canonical {:?}",
                spec.modulus, f.modulus
            )));
        }
        Ok(f)
    }
}

/// Coefficients low-degree first.
fn decode(mut v: u64, p0: u64, k: u32) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let c = v % p0;
            v /= p0;
            c
        })
        .collect()
}

fn encode(coeffs: &[u64], p0: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p0 + c)
}

/// Evaluates the polynomial `[c_k, .., c_0]` at `x` modulo `p0`.
fn eval_high_first(poly: &[u64], x: u64, p0: u64) -> u64 {
    poly.iter().fold(0, |acc, &c| (acc * x + c) % p0)
}

/// Irreducibility for degree at most three: no root in `F_p0`.
fn irreducible_small(poly: &[u64], p0: u64) -> bool {
    let degree = poly.len() - 1;
    debug_assert!(degree <= 3);
    degree == 1 || (0..p0).all(|x| eval_high_first(poly, x, p0) != 0)
}

impl FieldContext {
    pub fn order(&self) -> usize {
        self.p0.pow(self.k) as usize
    }

    pub fn characteristic(&self) -> u64 {
        self.p0
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Modulus coefficients, leading coefficient first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order() as u8).map(FieldElement)
    }

    pub fn element(&self, v: usize) -> FieldElement {
        assert!(v < self.order(), "element {v} outside GF({})", self.order());
        FieldElement(v as u8)
    }

    /// Coefficients of an element, leading coefficient first.
    pub fn coefficients(&self, x: FieldElement) -> Vec<u64> {
        let mut c = decode(x.0 as u64, self.p0, self.k);
        c.reverse();
        c
    }

    pub fn from_coefficients(&self, high_first: &[u64]) -> Result<FieldElement> {
        if high_first.len() != self.k as usize || high_first.iter().any(|&c| c >= self.p0) {
            return Err(Error::Parse(format!("bad coefficients {high_first:?}")));
        }
        let low_first: Vec<u64> = high_first.iter().rev().copied().collect();
        Ok(FieldElement(encode(&low_first, self.p0) as u8))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.value() * self.order() + b.value()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.value()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.value() * self.order() + b.value()])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != FieldElement::ZERO).then(|| FieldElement(self.inv[a.value()]))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Option<usize> {
        if a == FieldElement::ZERO {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// First generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.elements()
            .find(|&x| self.mult_order(x) == Some(self.order() - 1))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (p0, k) = (self.p0, self.k as usize);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p0;
            }
        }
        // low-first modulus without the leading 1
        let low: Vec<u64> = self.modulus.iter().rev().copied().collect();
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] = (prod[d - k + i] + (p0 - c) * low[i]) % p0;
            }
        }
        prod.truncate(k);
        prod
    }
}

/// `GF(q)` with the lexicographically smallest monic irreducible modulus.
pub fn field_context(q: u64) -> Result<FieldContext> {
    let (p0, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > MAX_FIELD_ORDER {
        return Err(Error::OutOfRange {
            what: "q",
            value: q,
            bound: MAX_FIELD_ORDER,
        });
    }
    if k > MAX_EXTENSION_DEGREE {
        return Err(Error::OutOfRange {
            what: "extension degree",
            value: k as u64,
            bound: MAX_EXTENSION_DEGREE as u64,
        });
    }
    // candidates [1, c_{k-1}, .., c_0] in lexicographic order
    let modulus = (0..q)
        .map(|v| {
            let mut tail = decode(v, p0, k);
            tail.reverse();
            let mut m = vec![1u64];
            m.extend(tail);
            m
        })
        .find(|m| irreducible_small(m, p0))
        .expect("irreducible polynomials exist in every degree");
    let n = q as usize;
    let mut f = FieldContext {
        p0,
        k,
        modulus,
        add: vec![0; n * n],
        mul: vec![0; n * n],
        neg: vec![0; n],
        inv: vec![0; n],
    };
    for a in 0..n {
        let ca = decode(a as u64, p0, k);
        for b in 0..n {
            let cb = decode(b as u64, p0, k);
            let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p0).collect();
            f.add[a * n + b] = encode(&sum, p0) as u8;
            f.mul[a * n + b] = encode(&f.poly_mul(&ca, &cb), p0) as u8;
        }
    }
    for a in 0..n {
        f.neg[a] = (0..n).find(|&b| f.add[a * n + b] == 0).expect("additive inverse") as u8;
        if a != 0 {
            f.inv[a] = (0..n)
                .find(|&b| f.mul[a * n + b] == 1)
                .ok_or_else(|| Error::Parse("modulus is reducible".into()))? as u8;
        }
    }
    Ok(f)
}

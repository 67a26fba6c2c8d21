use std::fmt;

use super::{plain::write_terms, PlainPoly, PrimeField};
use crate::error::{Error, Result};

/// A residue class of `F_p[x] / (x^n - 1)`, stored as its `n` coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    field: PrimeField,
    coeffs: Vec<u8>,
}

impl RingElement {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        assert!(n > 0, "ring length must be positive");
        RingElement {
            field,
            coeffs: vec![0; n],
        }
    }

    pub fn one(field: PrimeField, n: usize) -> Self {
        let mut e = Self::zero(field, n);
        e.coeffs[0] = 1;
        e
    }

    /// `x^k mod (x^n - 1)`.
    pub fn monomial(field: PrimeField, n: usize, k: usize) -> Self {
        let mut e = Self::zero(field, n);
        e.coeffs[k % n] = 1;
        e
    }

    /// Reduces ascending coefficients of any length modulo `x^n - 1`.
    pub fn from_coeffs(field: PrimeField, n: usize, coeffs: &[u8]) -> Self {
        let mut e = Self::zero(field, n);
        for (i, &c) in coeffs.iter().enumerate() {
            let j = i % n;
            e.coeffs[j] = field.add(e.coeffs[j], field.reduce(c as u32));
        }
        e
    }

    pub fn from_plain(poly: &PlainPoly, n: usize) -> Self {
        Self::from_coeffs(poly.field(), n, poly.coeffs())
    }

    /// The representative of degree below `n`.
    pub fn to_plain(&self) -> PlainPoly {
        PlainPoly::from_coeffs(self.field, self.coeffs.clone())
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Ring length `n`.
    #[inline]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn hamming_weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.len() != other.len() {
            return Err(Error::Mismatch(format!(
                "ring elements over ({}, n={}) and ({}, n={})",
                self.field,
                self.len(),
                other.field,
                other.len()
            )));
        }
        Ok(())
    }

    /// Cyclic convolution.
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.len();
        let f = self.field;
        if f.is_binary() {
            return Ok(self.binary_mul(other));
        }
        let mut acc = vec![0u32; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = if i + j >= n { i + j - n } else { i + j };
                acc[k] += a as u32 * b as u32;
            }
        }
        Ok(RingElement {
            field: f,
            coeffs: acc.into_iter().map(|c| f.reduce(c)).collect(),
        })
    }

    /// Packed shift/xor convolution into a `2n`-bit accumulator, folded at the end.
    fn binary_mul(&self, other: &Self) -> Self {
        let n = self.len();
        let src = pack_bits(&other.coeffs);
        let mut acc = vec![0u64; (2 * n).div_ceil(64) + 1];
        for (i, _) in self.coeffs.iter().enumerate().filter(|(_, &a)| a != 0) {
            let (w, b) = (i / 64, i % 64);
            for (k, &word) in src.iter().enumerate() {
                acc[w + k] ^= word << b;
                if b != 0 {
                    acc[w + k + 1] ^= word >> (64 - b);
                }
            }
        }
        let bit = |j: usize| ((acc[j / 64] >> (j % 64)) & 1) as u8;
        RingElement {
            field: self.field,
            coeffs: (0..n).map(|j| bit(j) ^ bit(j + n)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        Ok(RingElement {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        Ok(RingElement {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: u8) -> Self {
        let f = self.field;
        RingElement {
            field: f,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `f(x) -> sum f_i x^(n-i)`: index 0 is kept, index j >= 1 takes `f_(n-j)`.
    pub fn bar(&self) -> Self {
        let n = self.len();
        let mut coeffs = vec![0u8; n];
        coeffs[0] = self.coeffs[0];
        for j in 1..n {
            coeffs[j] = self.coeffs[n - j];
        }
        RingElement {
            field: self.field,
            coeffs,
        }
    }

    /// `x^k * self`, i.e. the cyclic shift by `k` positions.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.len();
        let mut coeffs = vec![0u8; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + k) % n] = c;
        }
        RingElement {
            field: self.field,
            coeffs,
        }
    }

    /// Euclidean inner product of the coefficient vectors.
    pub fn euclidean_inner(&self, other: &Self) -> Result<u8> {
        self.check(other)?;
        let f = self.field;
        let s: u32 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum();
        Ok(f.reduce(s))
    }
}

fn pack_bits(bits: &[u8]) -> Vec<u64> {
    let mut words = vec![0u64; bits.len().div_ceil(64)];
    for (i, &b) in bits.iter().enumerate() {
        if b != 0 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

/// Free-function form of [`RingElement::ring_mul`].
pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement> {
    a.ring_mul(b)
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

use serde::Serialize;

use crate::error::{Error, Result};

/// A prime field `F_p`, restricted to the small primes this crate supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u8,
}

impl PrimeField {
    pub const BINARY: PrimeField = PrimeField { p: 2 };

    pub fn new(p: u32) -> Result<Self> {
        match p {
            2 | 3 | 5 | 7 => Ok(PrimeField { p: p as u8 }),
            _ => Err(Error::UnsupportedField(p)),
        }
    }

    #[inline]
    pub fn p(self) -> u8 {
        self.p
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.p == 2
    }

    #[inline]
    pub fn reduce(self, a: u32) -> u8 {
        (a % self.p as u32) as u8
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u8) -> u8 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        // a^(p-2)
        let mut r = 1u8;
        for _ in 0..self.p - 2 {
            r = self.mul(r, a);
        }
        r
    }

    /// The nonzero elements `1..p`.
    pub fn units(self) -> impl Iterator<Item = u8> {
        1..self.p
    }
}

impl std::fmt::Display for PrimeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

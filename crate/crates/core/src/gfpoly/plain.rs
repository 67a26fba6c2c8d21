use std::fmt;

use super::PrimeField;
use crate::error::{Error, Result};

/// A polynomial over `F_p` with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlainPoly {
    field: PrimeField,
    coeffs: Vec<u8>,
}

impl PlainPoly {
    pub fn zero(field: PrimeField) -> Self {
        PlainPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        PlainPoly {
            field,
            coeffs: vec![1],
        }
    }

    /// `c * x^k`.
    pub fn monomial(field: PrimeField, k: usize, c: u8) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = field.reduce(c as u32);
        Self::from_coeffs(field, coeffs)
    }

    /// Builds a polynomial from ascending coefficients; entries are reduced mod p.
    pub fn from_coeffs(field: PrimeField, coeffs: impl Into<Vec<u8>>) -> Self {
        let mut coeffs: Vec<u8> = coeffs.into();
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c as u32);
        }
        let mut p = PlainPoly { field, coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from the exponents of its unit terms.
    pub fn from_exponents(field: PrimeField, exps: &[usize]) -> Self {
        let len = exps.iter().max().map_or(0, |&e| e + 1);
        let mut coeffs = vec![0u8; len];
        for &e in exps {
            coeffs[e] = field.add(coeffs[e], 1);
        }
        Self::from_coeffs(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_1(field: PrimeField, n: usize) -> Self {
        let mut coeffs = vec![0u8; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = 1;
        PlainPoly { field, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    #[inline]
    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, c: u8) -> Self {
        let f = self.field;
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect::<Vec<_>>())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Mismatch(format!(
                "polynomials over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs: Vec<u8> = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        let f = self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs: Vec<u8> = (0..len)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(f, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let mut acc = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += (a as u32) * (b as u32);
            }
        }
        Self::from_coeffs(f, acc.into_iter().map(|c| f.reduce(c)).collect::<Vec<_>>())
    }

    /// Long division; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_field(divisor)?;
        let f = self.field;
        let db = divisor
            .degree()
            .ok_or(Error::UndefinedInput("division by the zero polynomial"))?;
        let Some(da) = self.degree() else {
            return Ok((Self::zero(f), Self::zero(f)));
        };
        if da < db {
            return Ok((Self::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u8; da - db + 1];
        for shift in (0..=da - db).rev() {
            let c = rem[shift + db];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, lead_inv);
            quot[shift] = q;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = f.sub(rem[shift + j], f.mul(q, d));
            }
        }
        Ok((Self::from_coeffs(f, quot), Self::from_coeffs(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Quotient `self / divisor`, failing when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible {
                remainder: r.coeffs,
            });
        }
        Ok(q)
    }

    /// Whether `divisor` divides `self`. The zero polynomial divides only zero.
    pub fn is_divisible_by(&self, divisor: &Self) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        matches!(self.div_rem(divisor), Ok((_, r)) if r.is_zero())
    }

    /// `x^deg * self(1/x)` for the given `deg >= self.degree()`.
    pub(crate) fn reversed(&self, deg: usize) -> Self {
        let mut coeffs = vec![0u8; deg + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[deg - i] = c;
        }
        Self::from_coeffs(self.field, coeffs)
    }
}

/// `divides(a, b)`: true when `a | b`.
pub fn divides(a: &PlainPoly, b: &PlainPoly) -> bool {
    b.is_divisible_by(a)
}

/// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
pub fn plain_gcd(a: &PlainPoly, b: &PlainPoly) -> Result<PlainPoly> {
    a.check_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::UndefinedInput("gcd of two zero polynomials"));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.rem(&y)?;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

/// Monic least common multiple; zero if either input is zero.
pub fn plain_lcm(a: &PlainPoly, b: &PlainPoly) -> Result<PlainPoly> {
    a.check_field(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(PlainPoly::zero(a.field));
    }
    let g = plain_gcd(a, b)?;
    Ok(a.mul(b).exact_div(&g)?.monic())
}

impl fmt::Display for PlainPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// Writes `c0+c1x+...` in ascending order; `0` for no terms.
pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[u8]) -> fmt::Result {
    let mut first = true;
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (i, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => f.write_str("x")?,
            (1, c) => write!(f, "{c}x")?,
            (i, 1) => write!(f, "x^{i}")?,
            (i, c) => write!(f, "{c}x^{i}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

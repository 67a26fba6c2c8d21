//! Prime-field scalars, plain polynomials and the cyclic ring `F_p[x]/(x^n - 1)`.

mod field;
mod plain;
mod ring;

pub use field::PrimeField;
pub use plain::{divides, plain_gcd, plain_lcm, PlainPoly};
pub use ring::{ring_mul, RingElement};

use crate::error::{Error, Result};

/// A monic polynomial that divides `x^n - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorPoly {
    poly: PlainPoly,
    n: usize,
}

impl DivisorPoly {
    /// Normalizes `poly` to monic and checks that it divides `x^n - 1`.
    pub fn new(poly: &PlainPoly, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "ring length",
                value: 0,
                min: 1,
                max: usize::MAX,
            });
        }
        if poly.is_zero() {
            return Err(Error::UndefinedInput("zero polynomial cannot divide x^n - 1"));
        }
        PlainPoly::x_n_minus_1(poly.field(), n).exact_div(poly)?;
        Ok(DivisorPoly {
            poly: poly.monic(),
            n,
        })
    }

    pub fn one(field: PrimeField, n: usize) -> Self {
        DivisorPoly {
            poly: PlainPoly::one(field),
            n,
        }
    }

    /// `x^n - 1` itself (monic), generating the zero code.
    pub fn full(field: PrimeField, n: usize) -> Self {
        DivisorPoly {
            poly: PlainPoly::x_n_minus_1(field, n),
            n,
        }
    }

    #[inline]
    pub fn poly(&self) -> &PlainPoly {
        &self.poly
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.poly.field()
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    /// Dimension `n - deg` of the cyclic code this generates.
    pub fn dim(&self) -> usize {
        self.n - self.degree()
    }

    /// `(x^n - 1) / self`.
    pub fn cofactor(&self) -> DivisorPoly {
        let h = PlainPoly::x_n_minus_1(self.field(), self.n)
            .exact_div(&self.poly)
            .expect("divisor invariant");
        DivisorPoly {
            poly: h.monic(),
            n: self.n,
        }
    }

    /// Generator of the Euclidean dual cyclic code.
    pub fn dual(&self) -> DivisorPoly {
        let poly = euclidean_dual_generator(&self.poly, self.n).expect("divisor invariant");
        DivisorPoly { poly, n: self.n }
    }

    pub fn to_ring(&self) -> RingElement {
        RingElement::from_plain(&self.poly, self.n)
    }

    /// `gcd(f, x^n - 1)` as a divisor; zero maps to `x^n - 1`.
    pub fn gcd_with_xn1(f: &PlainPoly, n: usize) -> DivisorPoly {
        let xn1 = PlainPoly::x_n_minus_1(f.field(), n);
        let g = plain_gcd(f, &xn1).expect("x^n - 1 is nonzero");
        DivisorPoly { poly: g, n }
    }
}

/// Generator `h0^-1 x^deg(h) h(1/x)` of the Euclidean dual of the cyclic code `<g>`,
/// where `h = (x^n - 1)/g`.
pub fn euclidean_dual_generator(g: &PlainPoly, n: usize) -> Result<PlainPoly> {
    if g.is_zero() {
        return Err(Error::UndefinedInput("zero generator"));
    }
    let h = PlainPoly::x_n_minus_1(g.field(), n).exact_div(g)?;
    let rev = h.reversed(h.deg());
    Ok(rev.monic())
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: PrimeField = PrimeField::BINARY;

    #[test]
    fn dual_generator_length_15() {
        let g = PlainPoly::from_exponents(F2, &[4, 1, 0]);
        assert_eq!(
            euclidean_dual_generator(&g, 15).unwrap(),
            PlainPoly::from_exponents(F2, &[11, 10, 9, 8, 6, 4, 3, 0])
        );
    }

    #[test]
    fn dual_generator_of_one() {
        let one = PlainPoly::one(F2);
        assert_eq!(
            euclidean_dual_generator(&one, 6).unwrap(),
            PlainPoly::x_n_minus_1(F2, 6)
        );
    }

    #[test]
    fn dual_generator_hamming() {
        // h = (x^7-1)/(1+x+x^3) = 1+x+x^2+x^4; reversed: 1+x^2+x^3+x^4
        let g = PlainPoly::from_exponents(F2, &[0, 1, 3]);
        assert_eq!(
            euclidean_dual_generator(&g, 7).unwrap(),
            PlainPoly::from_exponents(F2, &[0, 2, 3, 4])
        );
    }

    #[test]
    fn dual_generator_rejects_non_divisor() {
        let g = PlainPoly::from_coeffs(F2, vec![0, 1, 1]);
        assert!(matches!(
            euclidean_dual_generator(&g, 3),
            Err(Error::NotDivisible { .. })
        ));
    }

    #[test]
    fn divisor_accessors() {
        let g = DivisorPoly::new(&PlainPoly::from_exponents(F2, &[0, 1, 3]), 7).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(g.cofactor().degree(), 4);
        assert_eq!(g.dual().dual(), g);
        assert!(DivisorPoly::new(&PlainPoly::from_coeffs(F2, vec![0, 1]), 7).is_err());
    }
}

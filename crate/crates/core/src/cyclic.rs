//! Cyclic codes, circulant expansions and minimum Hamming distance.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::engine::{self, WeightKind};
pub use crate::engine::{Distance, DistanceResult};
use crate::error::{Error, Result};
use crate::gfpoly::{DivisorPoly, PlainPoly, PrimeField, RingElement};
use crate::linalg::Matrix;

/// Default message budget for exhaustive enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Codes with at most this many messages are enumerated exhaustively by [`min_hamming`].
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// The cyclic code `<g>` of length `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicCode {
    g: DivisorPoly,
}

impl CyclicCode {
    pub fn new(g: DivisorPoly) -> Self {
        CyclicCode { g }
    }

    /// Checks that `g` divides `x^n - 1`.
    pub fn from_generator(g: &PlainPoly, n: usize) -> Result<Self> {
        Ok(CyclicCode {
            g: DivisorPoly::new(g, n)?,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.g.field()
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn generator(&self) -> &DivisorPoly {
        &self.g
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The `dim x n` matrix with rows `x^i g`, `0 <= i < dim`.
    pub fn generator_matrix(&self) -> Matrix {
        let t = self.dim();
        if t == 0 {
            return Matrix::new(self.field(), self.n());
        }
        circulant_rows(&self.g.to_ring(), t).expect("1 <= dim <= n")
    }

    pub fn contains(&self, c: &RingElement) -> bool {
        c.len() == self.n() && c.to_plain().is_divisible_by(self.g.poly())
    }
}

impl std::fmt::Display for CyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{}]_{}", self.n(), self.dim(), self.field().p())
    }
}

/// The ideal generated by `f` in `F_p[x]/(x^n - 1)`, i.e. `<gcd(f, x^n - 1)>`.
pub fn cyclic_from_element(f: &PlainPoly, n: usize) -> CyclicCode {
    CyclicCode {
        g: DivisorPoly::gcd_with_xn1(f, n),
    }
}

/// The `t x n` matrix whose row `i` is `x^i f`.
pub fn circulant_rows(f: &RingElement, t: usize) -> Result<Matrix> {
    let n = f.len();
    if t == 0 || t > n {
        return Err(Error::OutOfRange {
            what: "circulant row count",
            value: t,
            min: 1,
            max: n,
        });
    }
    let rows = (0..t).map(|i| f.shift(i).coeffs().to_vec()).collect();
    Matrix::from_rows(f.field(), n, rows)
}

/// Exact minimum Hamming weight by enumerating all `p^dim` messages.
pub fn min_hamming_exhaustive(code: &CyclicCode, message_budget: u64) -> Result<DistanceResult> {
    if code.is_zero() {
        return Ok(DistanceResult::exact(Distance::Infinite, 0));
    }
    engine::message_count(code.field(), code.dim(), message_budget)?;
    let scan = engine::scan_row_space(&code.generator_matrix(), WeightKind::Hamming, None);
    Ok(DistanceResult::exact(scan.min_all, scan.enumerated))
}

/// Single-information-set search over message weights `1..=weight_cap`.
pub fn min_hamming_iset(code: &CyclicCode, weight_cap: usize) -> DistanceResult {
    min_hamming_iset_budget(code, weight_cap, u64::MAX)
}

/// As [`min_hamming_iset`], also stopping before a level would push the message count past `budget`.
pub fn min_hamming_iset_budget(code: &CyclicCode, weight_cap: usize, budget: u64) -> DistanceResult {
    if code.is_zero() {
        return DistanceResult::exact(Distance::Infinite, 0);
    }
    engine::info_set_search(&code.generator_matrix(), weight_cap, budget)
}

/// Exhaustive when `p^dim <= 2^20`, information-set search (capped by `budget`) otherwise.
pub fn min_hamming(code: &CyclicCode, budget: u64) -> DistanceResult {
    if engine::message_count(code.field(), code.dim(), EXHAUSTIVE_LIMIT.min(budget)).is_ok() {
        min_hamming_exhaustive(code, u64::MAX).expect("within budget")
    } else {
        min_hamming_iset_budget(code, code.dim(), budget)
    }
}

/// Memoizes [`min_hamming`] by generator and budget.
#[derive(Default)]
pub struct DistanceCache {
    map: Mutex<HashMap<(CyclicCode, u64), DistanceResult>>,
}

impl DistanceCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn min_hamming(&self, code: &CyclicCode, budget: u64) -> DistanceResult {
        let key = (code.clone(), budget);
        if let Some(r) = self.map.lock().unwrap().get(&key) {
            return *r;
        }
        let r = min_hamming(code, budget);
        self.map.lock().unwrap().insert(key, r);
        r
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F2: PrimeField = PrimeField::BINARY;

    fn code(exps: &[usize], n: usize) -> CyclicCode {
        CyclicCode::from_generator(&PlainPoly::from_exponents(F2, exps), n).unwrap()
    }

    #[test]
    fn from_element_extremes() {
        let full = cyclic_from_element(&PlainPoly::one(F2), 9);
        assert_eq!(full.dim(), 9);
        let zero = cyclic_from_element(&PlainPoly::zero(F2), 9);
        assert!(zero.is_zero());
        let r = min_hamming_exhaustive(&zero, 1).unwrap();
        assert_eq!(r.value, Distance::Infinite);
        assert!(r.exact);
    }

    #[test]
    fn circulant_shapes() {
        let one = RingElement::one(F2, 4);
        let m = circulant_rows(&one, 4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.row(i)[j], (i == j) as u8);
            }
        }
        let a = RingElement::from_coeffs(F2, 3, &[1, 1]);
        let m = circulant_rows(&a, 2).unwrap();
        assert_eq!(m.rows(), &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert!(circulant_rows(&a, 4).is_err());
        assert!(circulant_rows(&a, 0).is_err());
    }

    #[test]
    fn hamming_code() {
        let c = code(&[0, 1, 3], 7);
        assert_eq!(c.generator_matrix().rank(), 4);
        let r = min_hamming_exhaustive(&c, 16).unwrap();
        assert_eq!(r.value, Distance::Finite(3));
        assert_eq!(r.enumerated, 16);
        assert!(min_hamming_exhaustive(&c, 15).is_err());
        assert_eq!(min_hamming_iset(&c, 4).value, Distance::Finite(3));
    }

    #[test]
    fn full_space_iset() {
        let c = cyclic_from_element(&PlainPoly::one(F2), 12);
        let r = min_hamming_iset(&c, 12);
        assert!(r.exact);
        assert_eq!(r.value, Distance::Finite(1));
        assert_eq!(r.enumerated, 12);
    }

    #[test]
    fn iset_cap_gives_interval() {
        // [23,12,7] Golay code: capping at weight 1 certifies only d >= 2
        let c = code(&[0, 2, 4, 5, 6, 10, 11], 23);
        let r = min_hamming_iset(&c, 1);
        assert!(!r.exact);
        assert_eq!(r.lower, Distance::Finite(2));
        assert!(r.upper >= Distance::Finite(7));
        assert_eq!(min_hamming(&c, DEFAULT_BUDGET).value, Distance::Finite(7));
        assert_eq!(min_hamming_iset(&c, 12).value, Distance::Finite(7));
    }

    #[test]
    fn cache_reuses_results() {
        let cache = DistanceCache::new();
        let c = code(&[0, 1, 3], 7);
        assert_eq!(cache.min_hamming(&c, 100).value, Distance::Finite(3));
        assert_eq!(cache.min_hamming(&c, 100).value, Distance::Finite(3));
        assert_eq!(cache.len(), 1);
    }
}

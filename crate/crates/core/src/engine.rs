//! Minimum-weight enumeration over row spaces.
//!
//! Exhaustive scans walk the message space in Gray-code order, so each step adds a
//! single basis row to the running codeword. The message space is split on its
//! leading digits into disjoint prefix ranges that are scanned independently and
//! merged by minimum. Binary codes use packed 64-bit words; in the symplectic
//! layout the two halves of a codeword sit in separate word blocks so that the
//! weight is `popcount(c' | c'')`.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gfpoly::PrimeField;
use crate::linalg::{Echelon, Matrix};

/// A minimum distance, with `Infinite` standing for the zero code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Distance::Infinite
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Outcome of a distance computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    pub value: Distance,
    pub exact: bool,
    pub lower: Distance,
    pub upper: Distance,
    /// Codewords (or messages) examined.
    pub enumerated: u64,
}

impl DistanceResult {
    pub fn exact(value: Distance, enumerated: u64) -> Self {
        DistanceResult {
            value,
            exact: true,
            lower: value,
            upper: value,
            enumerated,
        }
    }

    pub fn bounded(lower: Distance, upper: Distance, enumerated: u64) -> Self {
        if lower >= upper {
            return Self::exact(upper, enumerated);
        }
        DistanceResult {
            value: upper,
            exact: false,
            lower,
            upper,
            enumerated,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightKind {
    Hamming,
    /// Codewords of length `2N`; counts `i < N` with `(c_i, c_(N+i)) != (0, 0)`.
    Symplectic,
}

/// Result of a full row-space scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Scan {
    pub min_all: Distance,
    /// Minimum over codewords outside the excluded subspace (`Infinite` when none).
    pub min_outside: Distance,
    pub enumerated: u64,
}

impl Scan {
    fn empty() -> Self {
        Scan {
            min_all: Distance::Infinite,
            min_outside: Distance::Infinite,
            enumerated: 0,
        }
    }

    fn merge(self, o: Scan) -> Scan {
        Scan {
            min_all: self.min_all.min(o.min_all),
            min_outside: self.min_outside.min(o.min_outside),
            enumerated: self.enumerated + o.enumerated,
        }
    }
}

/// Number of messages `p^k`, or a refusal when it exceeds `budget`.
pub(crate) fn message_count(field: PrimeField, k: usize, budget: u64) -> Result<u64> {
    let total = (field.p() as u128).checked_pow(k as u32);
    match total {
        Some(t) if t <= budget as u128 => Ok(t as u64),
        _ => Err(Error::BudgetExceeded {
            required: format!("{}^{}", field.p(), k),
            budget,
        }),
    }
}

/// Scans every nonzero codeword spanned by the (linearly independent) rows of `basis`.
pub(crate) fn scan_row_space(basis: &Matrix, kind: WeightKind, exclude: Option<&Echelon>) -> Scan {
    if basis.nrows() == 0 {
        return Scan::empty();
    }
    if basis.field().is_binary() {
        let layout = Layout::new(basis.ncols(), kind);
        macro_rules! dispatch {
            ($($l:literal),*) => {
                match (layout.words, kind) {
                    $(
                        ($l, WeightKind::Hamming) => return scan_packed::<$l, false>(&layout, basis, exclude),
                        ($l, WeightKind::Symplectic) => return scan_packed::<$l, true>(&layout, basis, exclude),
                    )*
                    _ => {}
                }
            };
        }
        dispatch!(1, 2, 3, 4, 5, 6, 7, 8);
    }
    scan_bytes(basis, kind, exclude)
}

/// Column-to-bit mapping for packed binary codewords.
pub(crate) struct Layout {
    pub words: usize,
    half_cols: usize,
    half_words: usize,
    symplectic: bool,
}

impl Layout {
    pub fn new(ncols: usize, kind: WeightKind) -> Self {
        match kind {
            WeightKind::Hamming => Layout {
                words: ncols.div_ceil(64),
                half_cols: ncols,
                half_words: ncols.div_ceil(64),
                symplectic: false,
            },
            WeightKind::Symplectic => {
                let half = ncols / 2;
                let hw = half.div_ceil(64).max(1);
                Layout {
                    words: 2 * hw,
                    half_cols: half,
                    half_words: hw,
                    symplectic: true,
                }
            }
        }
    }

    #[inline]
    pub fn position(&self, col: usize) -> (usize, u64) {
        if self.symplectic && col >= self.half_cols {
            let c = col - self.half_cols;
            (self.half_words + c / 64, 1u64 << (c % 64))
        } else {
            (col / 64, 1u64 << (col % 64))
        }
    }

    pub fn pack(&self, row: &[u8], out: &mut [u64]) {
        out.iter_mut().for_each(|w| *w = 0);
        for (c, &v) in row.iter().enumerate() {
            if v != 0 {
                let (w, m) = self.position(c);
                out[w] |= m;
            }
        }
    }
}

#[inline(always)]
fn packed_weight<const L: usize, const SYMP: bool>(w: &[u64; L]) -> u32 {
    if SYMP {
        let h = L / 2;
        let mut s = 0;
        for i in 0..h {
            s += (w[i] | w[h + i]).count_ones();
        }
        s
    } else {
        w.iter().map(|x| x.count_ones()).sum()
    }
}

struct PackedEchelon<const L: usize> {
    rows: Vec<[u64; L]>,
    pivots: Vec<(usize, u64)>,
}

impl<const L: usize> PackedEchelon<L> {
    fn new(layout: &Layout, e: &Echelon) -> Self {
        let rows = e
            .basis()
            .rows()
            .iter()
            .map(|r| {
                let mut w = [0u64; L];
                layout.pack(r, &mut w);
                w
            })
            .collect();
        let pivots = e.pivots().iter().map(|&c| layout.position(c)).collect();
        PackedEchelon { rows, pivots }
    }

    #[inline]
    fn contains(&self, v: &[u64; L]) -> bool {
        let mut w = *v;
        for (row, &(i, m)) in self.rows.iter().zip(&self.pivots) {
            if w[i] & m != 0 {
                for j in 0..L {
                    w[j] ^= row[j];
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

fn scan_packed<const L: usize, const SYMP: bool>(
    layout: &Layout,
    basis: &Matrix,
    exclude: Option<&Echelon>,
) -> Scan {
    let rows: Vec<[u64; L]> = basis
        .rows()
        .iter()
        .map(|r| {
            let mut w = [0u64; L];
            layout.pack(r, &mut w);
            w
        })
        .collect();
    let excl = exclude.map(|e| PackedEchelon::<L>::new(layout, e));
    let k = rows.len();
    let prefix_bits = k.min(8);
    let low = k - prefix_bits;
    let (low_rows, prefix_rows) = rows.split_at(low);

    (0u64..1 << prefix_bits)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = [0u64; L];
            for (b, row) in prefix_rows.iter().enumerate() {
                if chunk >> b & 1 == 1 {
                    for j in 0..L {
                        acc[j] ^= row[j];
                    }
                }
            }
            let mut best = u32::MAX;
            let mut best_out = u32::MAX;
            let visit = |acc: &[u64; L], best: &mut u32, best_out: &mut u32| {
                let wt = packed_weight::<L, SYMP>(acc);
                if wt == 0 {
                    return;
                }
                if wt < *best {
                    *best = wt;
                }
                if let Some(ex) = &excl {
                    if wt < *best_out && !ex.contains(acc) {
                        *best_out = wt;
                    }
                }
            };
            visit(&acc, &mut best, &mut best_out);
            for i in 1u64..1 << low {
                let row = &low_rows[i.trailing_zeros() as usize];
                for j in 0..L {
                    acc[j] ^= row[j];
                }
                visit(&acc, &mut best, &mut best_out);
            }
            Scan {
                min_all: to_distance(best),
                min_outside: to_distance(best_out),
                enumerated: 1 << low,
            }
        })
        .reduce(Scan::empty, Scan::merge)
}

fn to_distance(w: u32) -> Distance {
    if w == u32::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(w)
    }
}

fn byte_weight(v: &[u8], kind: WeightKind) -> u32 {
    match kind {
        WeightKind::Hamming => v.iter().filter(|&&c| c != 0).count() as u32,
        WeightKind::Symplectic => {
            let h = v.len() / 2;
            (0..h).filter(|&i| v[i] != 0 || v[h + i] != 0).count() as u32
        }
    }
}

/// Generic path: p-ary Gray code where each step adds one basis row once.
fn scan_bytes(basis: &Matrix, kind: WeightKind, exclude: Option<&Echelon>) -> Scan {
    let f = basis.field();
    let p = f.p() as u64;
    let rows = basis.rows();
    let k = rows.len();
    let mut prefix_digits = 0;
    while prefix_digits < k && p.pow(prefix_digits as u32) < 64 {
        prefix_digits += 1;
    }
    let low = k - prefix_digits;
    let (low_rows, prefix_rows) = rows.split_at(low);
    let ncols = basis.ncols();

    (0..p.pow(prefix_digits as u32))
        .into_par_iter()
        .map(|chunk| {
            let mut acc = vec![0u8; ncols];
            let mut c = chunk;
            for row in prefix_rows {
                let d = (c % p) as u8;
                c /= p;
                if d != 0 {
                    crate::linalg::axpy(f, &mut acc, row, d, 0);
                }
            }
            let mut best = u32::MAX;
            let mut best_out = u32::MAX;
            let visit = |acc: &[u8], best: &mut u32, best_out: &mut u32| {
                let wt = byte_weight(acc, kind);
                if wt == 0 {
                    return;
                }
                *best = (*best).min(wt);
                if let Some(ex) = exclude {
                    if wt < *best_out && !ex.contains(acc) {
                        *best_out = wt;
                    }
                }
            };
            visit(&acc, &mut best, &mut best_out);
            let mut digits = vec![0u8; low];
            let mut count = 1u64;
            loop {
                // lowest digit that does not wrap
                let Some(j) = digits.iter().position(|&d| d as u64 != p - 1) else {
                    break;
                };
                digits[..j].iter_mut().for_each(|d| *d = 0);
                digits[j] += 1;
                crate::linalg::axpy(f, &mut acc, &low_rows[j], 1, 0);
                visit(&acc, &mut best, &mut best_out);
                count += 1;
            }
            Scan {
                min_all: to_distance(best),
                min_outside: to_distance(best_out),
                enumerated: count,
            }
        })
        .reduce(Scan::empty, Scan::merge)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    r
}

/// Single-information-set minimum Hamming weight search.
///
/// After systematizing, a codeword with message weight `w` has weight at least `w`,
/// so finishing level `w` certifies every unseen codeword has weight `>= w + 1`.
pub(crate) fn info_set_search(basis: &Matrix, weight_cap: usize, budget: u64) -> DistanceResult {
    let ech = basis.echelon();
    let sys = ech.basis();
    let k = sys.nrows();
    if k == 0 {
        return DistanceResult::exact(Distance::Infinite, 0);
    }
    let f = sys.field();
    let cap = weight_cap.clamp(1, k);
    // Row weights give an upper bound even when no level fits the budget.
    let mut best = sys
        .rows()
        .iter()
        .map(|r| byte_weight(r, WeightKind::Hamming))
        .min()
        .unwrap_or(u32::MAX);
    let mut enumerated = 0u64;
    let mut done = 0usize;
    for w in 1..=cap {
        let level = binomial(k, w).saturating_mul((f.p() as u128 - 1).pow(w as u32 - 1));
        if enumerated as u128 + level > budget as u128 {
            break;
        }
        let found = if f.is_binary() {
            binary_level(sys, w)
        } else {
            bytes_level(sys, w)
        };
        best = best.min(found);
        enumerated += level as u64;
        done = w;
        if best as usize <= w + 1 || w == k {
            return DistanceResult::exact(Distance::Finite(best), enumerated);
        }
    }
    DistanceResult::bounded(
        Distance::Finite(done as u32 + 1),
        Distance::Finite(best),
        enumerated,
    )
}

/// Minimum weight over all sums of exactly `w` distinct rows (binary).
fn binary_level(sys: &Matrix, w: usize) -> u32 {
    let layout = Layout::new(sys.ncols(), WeightKind::Hamming);
    let lw = layout.words;
    let k = sys.nrows();
    let packed: Vec<Vec<u64>> = sys
        .rows()
        .iter()
        .map(|r| {
            let mut v = vec![0u64; lw];
            layout.pack(r, &mut v);
            v
        })
        .collect();

    fn dfs(rows: &[Vec<u64>], start: usize, left: usize, acc: &mut Vec<u64>, best: &mut u32) {
        if left == 0 {
            let wt: u32 = acc.iter().map(|x| x.count_ones()).sum();
            *best = (*best).min(wt);
            return;
        }
        for i in start..=rows.len() - left {
            for (a, r) in acc.iter_mut().zip(&rows[i]) {
                *a ^= r;
            }
            dfs(rows, i + 1, left - 1, acc, best);
            for (a, r) in acc.iter_mut().zip(&rows[i]) {
                *a ^= r;
            }
        }
    }

    (0..=k - w)
        .into_par_iter()
        .map(|first| {
            let mut acc = packed[first].clone();
            let mut best = u32::MAX;
            dfs(&packed, first + 1, w - 1, &mut acc, &mut best);
            best
        })
        .min()
        .unwrap_or(u32::MAX)
}

/// Minimum weight over combinations of `w` rows with nonzero coefficients, the first being 1.
fn bytes_level(sys: &Matrix, w: usize) -> u32 {
    let f = sys.field();
    let rows = sys.rows();
    let k = rows.len();

    fn dfs(
        f: PrimeField,
        rows: &[Vec<u8>],
        start: usize,
        left: usize,
        acc: &mut Vec<u8>,
        best: &mut u32,
    ) {
        if left == 0 {
            *best = (*best).min(byte_weight(acc, WeightKind::Hamming));
            return;
        }
        for i in start..=rows.len() - left {
            for c in f.units() {
                crate::linalg::axpy(f, acc, &rows[i], c, 0);
                dfs(f, rows, i + 1, left - 1, acc, best);
                crate::linalg::axpy(f, acc, &rows[i], f.neg(c), 0);
            }
        }
    }

    (0..=k - w)
        .into_par_iter()
        .map(|first| {
            let mut acc = rows[first].clone();
            let mut best = u32::MAX;
            dfs(f, rows, first + 1, w - 1, &mut acc, &mut best);
            best
        })
        .min()
        .unwrap_or(u32::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(basis: &Matrix, kind: WeightKind) -> Distance {
        let p = basis.field().p() as usize;
        let k = basis.nrows();
        let mut best = Distance::Infinite;
        for idx in 1..p.pow(k as u32) {
            let mut m = vec![0u8; k];
            let mut x = idx;
            for d in m.iter_mut() {
                *d = (x % p) as u8;
                x /= p;
            }
            let wt = byte_weight(&basis.encode(&m), kind);
            if wt > 0 {
                best = best.min(Distance::Finite(wt));
            }
        }
        best
    }

    fn sample(field: PrimeField, k: usize, ncols: usize, seed: u64) -> Matrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let rows = (0..k)
                .map(|_| (0..ncols).map(|_| rng.gen_range(0..field.p())).collect())
                .collect();
            let m = Matrix::from_rows(field, ncols, rows).unwrap();
            if m.rank() == k {
                return m;
            }
        }
    }

    #[test]
    fn scans_agree_with_brute_force() {
        for (p, k, ncols) in [(2, 10, 20), (2, 12, 140), (3, 6, 10), (5, 4, 8), (2, 3, 6)] {
            let f = PrimeField::new(p).unwrap();
            for seed in 0..4 {
                let m = sample(f, k, ncols, seed);
                for kind in [WeightKind::Hamming, WeightKind::Symplectic] {
                    let scan = scan_row_space(&m, kind, None);
                    assert_eq!(scan.min_all, brute(&m, kind), "p={p} k={k} {kind:?}");
                    assert_eq!(scan.enumerated, (p as u64).pow(k as u32));
                }
            }
        }
    }

    #[test]
    fn exclusion_skips_subspace() {
        let f = PrimeField::BINARY;
        // span{e0} is excluded, so the next-lightest word is e1+e2
        let m = Matrix::from_rows(f, 4, vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0]]).unwrap();
        let sub = Matrix::from_rows(f, 4, vec![vec![1, 0, 0, 0]]).unwrap().echelon();
        let s = scan_row_space(&m, WeightKind::Hamming, Some(&sub));
        assert_eq!(s.min_all, Distance::Finite(1));
        assert_eq!(s.min_outside, Distance::Finite(2));
    }

    #[test]
    fn info_set_matches_scan() {
        for (p, k, ncols) in [(2, 9, 21), (3, 5, 11), (2, 14, 80)] {
            let f = PrimeField::new(p).unwrap();
            for seed in 10..14 {
                let m = sample(f, k, ncols, seed);
                let scan = scan_row_space(&m, WeightKind::Hamming, None);
                let r = info_set_search(&m, k, u64::MAX);
                assert!(r.exact);
                assert_eq!(r.value, scan.min_all);
            }
        }
    }

    #[test]
    fn budget_refusal() {
        let f = PrimeField::BINARY;
        assert_eq!(message_count(f, 10, 1024).unwrap(), 1024);
        assert!(matches!(
            message_count(f, 11, 1024),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(message_count(f, 300, u64::MAX).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(26, 2), 325);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(3, 4), 0);
    }
}

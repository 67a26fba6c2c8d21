//! Quasi-cyclic codes, the symplectic form, self-orthogonality criteria,
//! the index-2 decomposition and the symplectic dual.

use serde::Serialize;

use crate::cyclic::{circulant_rows, CyclicCode, DistanceResult};
use crate::engine::{self, WeightKind};
use crate::error::{Error, Result};
use crate::gfpoly::{
    euclidean_dual_generator, plain_gcd, DivisorPoly, PlainPoly, PrimeField, RingElement,
};
use crate::linalg::{Echelon, Matrix};

/// A vector `(c' | c'')` of length `2N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SympVector {
    field: PrimeField,
    entries: Vec<u8>,
}

impl SympVector {
    pub fn new(field: PrimeField, entries: Vec<u8>) -> Result<Self> {
        if entries.len() % 2 != 0 {
            return Err(Error::Mismatch(format!(
                "symplectic vector of odd length {}",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|c| field.reduce(c as u32)).collect();
        Ok(SympVector { field, entries })
    }

    pub fn from_halves(field: PrimeField, first: &[u8], second: &[u8]) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::Mismatch(format!(
                "halves of lengths {} and {}",
                first.len(),
                second.len()
            )));
        }
        Self::new(field, first.iter().chain(second).copied().collect())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Half-length `N`.
    pub fn half(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn first(&self) -> &[u8] {
        &self.entries[..self.half()]
    }

    pub fn second(&self) -> &[u8] {
        &self.entries[self.half()..]
    }
}

/// `sum_i (u_i v_(N+i) - u_(N+i) v_i)`.
pub fn symplectic_inner(u: &SympVector, v: &SympVector) -> Result<u8> {
    if u.field != v.field || u.entries.len() != v.entries.len() {
        return Err(Error::Mismatch(format!(
            "symplectic vectors of lengths {} and {}",
            u.entries.len(),
            v.entries.len()
        )));
    }
    Ok(symplectic_form(u.field, &u.entries, &v.entries))
}

fn symplectic_form(f: PrimeField, u: &[u8], v: &[u8]) -> u8 {
    let n = u.len() / 2;
    let p = f.p() as u32;
    let mut s = 0u32;
    for i in 0..n {
        s += u[i] as u32 * v[n + i] as u32 + (p - 1) * (u[n + i] as u32 * v[i] as u32 % p);
    }
    f.reduce(s)
}

/// Number of `i < N` with `(c_i, c_(N+i)) != (0, 0)`.
pub fn symplectic_weight(c: &SympVector) -> usize {
    let n = c.half();
    (0..n)
        .filter(|&i| c.entries[i] != 0 || c.entries[n + i] != 0)
        .count()
}

/// Whether every row of `a` is symplectic-orthogonal to every row of `b`.
pub fn symplectic_gram_is_zero(a: &Matrix, b: &Matrix) -> bool {
    let f = a.field();
    a.ncols() == b.ncols()
        && a.rows()
            .iter()
            .all(|u| b.rows().iter().all(|v| symplectic_form(f, u, v) == 0))
}

/// The 1-generator QC code spanned by `(g f_0, ..., g f_(l-1))` and its shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcOneGen {
    g: DivisorPoly,
    f: Vec<RingElement>,
    gcd_condition: bool,
}

impl QcOneGen {
    /// Requires an even index, `g | x^n - 1` and `gcd(f_0, ..., f_(l-1), h) = 1`.
    pub fn new(g: &PlainPoly, n: usize, f: Vec<RingElement>) -> Result<Self> {
        let code = Self::new_unchecked(g, n, f)?;
        if !code.gcd_condition {
            return Err(Error::Precondition(format!(
                "gcd(f_0, ..., f_{}, h) = {} is not 1",
                code.ell() - 1,
                code.common_factor()
            )));
        }
        Ok(code)
    }

    /// Skips the gcd condition; bound computations refuse such codes.
    pub fn new_unchecked(g: &PlainPoly, n: usize, f: Vec<RingElement>) -> Result<Self> {
        let g = DivisorPoly::new(g, n)?;
        if f.is_empty() || f.len() % 2 != 0 {
            return Err(Error::OutOfRange {
                what: "index",
                value: f.len(),
                min: 2,
                max: usize::MAX,
            });
        }
        if let Some(bad) = f.iter().find(|e| e.len() != n || e.field() != g.field()) {
            return Err(Error::Mismatch(format!(
                "generator entry over ({}, n={}) for a code over ({}, n={n})",
                bad.field(),
                bad.len(),
                g.field()
            )));
        }
        let mut code = QcOneGen {
            g,
            f,
            gcd_condition: false,
        };
        code.gcd_condition = code.common_factor().is_one();
        Ok(code)
    }

    /// Moves `gcd(f_0, ..., f_(l-1), h)` into `g` until it is 1; the spanned code is unchanged.
    pub fn normalized(g: &PlainPoly, n: usize, f: Vec<RingElement>) -> Result<(Self, PlainPoly)> {
        let mut code = Self::new_unchecked(g, n, f)?;
        let field = code.field();
        let mut moved = PlainPoly::one(field);
        while !code.gcd_condition {
            let u = code.common_factor();
            let g2 = code.g.poly().mul(&u);
            let f2 = code
                .f
                .iter()
                .map(|e| Ok(RingElement::from_plain(&e.to_plain().exact_div(&u)?, n)))
                .collect::<Result<Vec<_>>>()?;
            moved = moved.mul(&u);
            code = Self::new_unchecked(&g2, n, f2)?;
        }
        Ok((code, moved))
    }

    fn common_factor(&self) -> PlainPoly {
        let mut acc = self.h().poly().clone();
        for e in &self.f {
            acc = plain_gcd(&acc, &e.to_plain()).expect("h is nonzero");
        }
        acc
    }

    pub fn field(&self) -> PrimeField {
        self.g.field()
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn ell(&self) -> usize {
        self.f.len()
    }

    pub fn g(&self) -> &DivisorPoly {
        &self.g
    }

    pub fn f(&self) -> &[RingElement] {
        &self.f
    }

    /// Parity-check polynomial `(x^n - 1)/g`.
    pub fn h(&self) -> DivisorPoly {
        self.g.cofactor()
    }

    pub fn satisfies_gcd_condition(&self) -> bool {
        self.gcd_condition
    }

    /// `n - deg g` (valid under the gcd condition).
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Blocks `g f_j` of the generating tuple.
    pub fn generator_tuple(&self) -> Vec<RingElement> {
        let g = self.g.to_ring();
        self.f
            .iter()
            .map(|e| g.ring_mul(e).expect("same ring"))
            .collect()
    }

    /// Full `n x ln` circulant generator matrix.
    pub fn generator_matrix(&self) -> Matrix {
        block_matrix(&self.generator_tuple())
    }

    /// Reduced generator matrix with `dim` rows.
    pub fn reduced_generator(&self) -> Echelon {
        self.generator_matrix().echelon()
    }
}

fn block_matrix(blocks: &[RingElement]) -> Matrix {
    let n = blocks[0].len();
    let mut m = circulant_rows(&blocks[0], n).expect("t = n");
    for b in &blocks[1..] {
        m = m.hconcat(&circulant_rows(b, n).expect("t = n")).expect("n rows each");
    }
    m
}

/// An h-generator QC code: the sum of several 1-generator codes of the same shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QcMultiGen {
    rows: Vec<QcOneGen>,
}

impl QcMultiGen {
    pub fn new(rows: Vec<QcOneGen>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::UndefinedInput("no generators"));
        };
        for r in &rows {
            if r.n() != first.n() || r.ell() != first.ell() || r.field() != first.field() {
                return Err(Error::Mismatch(
                    "generators of differing field, length or index".into(),
                ));
            }
            if !r.satisfies_gcd_condition() {
                return Err(Error::Precondition(
                    "a generator violates the per-row gcd condition".into(),
                ));
            }
        }
        Ok(QcMultiGen { rows })
    }

    pub fn rows(&self) -> &[QcOneGen] {
        &self.rows
    }

    pub fn field(&self) -> PrimeField {
        self.rows[0].field()
    }

    pub fn n(&self) -> usize {
        self.rows[0].n()
    }

    pub fn ell(&self) -> usize {
        self.rows[0].ell()
    }

    pub fn generator_matrix(&self) -> Matrix {
        let mut m = self.rows[0].generator_matrix();
        for r in &self.rows[1..] {
            m = m.stack(&r.generator_matrix()).expect("same shape");
        }
        m
    }

    pub fn reduced_generator(&self) -> Echelon {
        self.generator_matrix().echelon()
    }

    pub fn dim(&self) -> usize {
        self.reduced_generator().rank()
    }
}

/// Outcome of a divisibility-based self-orthogonality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SsoCheck {
    pub holds: bool,
    /// First failing generator pair `(r, s)`.
    pub pair: Option<(usize, usize)>,
    /// Nonzero remainder of `g_s Lambda_(r,s)` modulo `g_r`'s dual generator (ascending).
    pub remainder: Option<Vec<u8>>,
}

impl SsoCheck {
    pub fn holds(&self) -> bool {
        self.holds
    }
}

/// `sum_i (f_(s,i) bar(f_(r,m+i)) - f_(s,m+i) bar(f_(r,i)))`.
pub fn pairing_polynomial(fr: &[RingElement], fs: &[RingElement]) -> RingElement {
    let m = fr.len() / 2;
    let mut acc = RingElement::zero(fr[0].field(), fr[0].len());
    for i in 0..m {
        let a = fs[i].ring_mul(&fr[m + i].bar()).expect("same ring");
        let b = fs[m + i].ring_mul(&fr[i].bar()).expect("same ring");
        acc = acc.add(&a.sub(&b).expect("same ring")).expect("same ring");
    }
    acc
}

/// Self-orthogonality of a 1-generator code: `g^perp | g Lambda_1`.
pub fn check_sso_one_gen(code: &QcOneGen) -> SsoCheck {
    check_pairs(std::slice::from_ref(code))
}

/// Self-orthogonality of an h-generator code: `g_r^perp | g_s Lambda_(r,s)` for all `r, s`.
pub fn check_sso_multi_gen(code: &QcMultiGen) -> SsoCheck {
    check_pairs(code.rows())
}

fn check_pairs(rows: &[QcOneGen]) -> SsoCheck {
    for (r, gr) in rows.iter().enumerate() {
        let dual = gr.g().dual();
        for (s, gs) in rows.iter().enumerate() {
            let lambda = pairing_polynomial(gr.f(), gs.f());
            let prod = gs.g().to_ring().ring_mul(&lambda).expect("same ring");
            let rem = prod.to_plain().rem(dual.poly()).expect("nonzero divisor");
            if !rem.is_zero() {
                return SsoCheck {
                    holds: false,
                    pair: Some((r, s)),
                    remainder: Some(rem.coeffs().to_vec()),
                };
            }
        }
    }
    SsoCheck {
        holds: true,
        pair: None,
        remainder: None,
    }
}

/// Brute-force self-orthogonality: every pair of generator rows pairs to zero.
pub fn gram_oracle(rows: &Matrix) -> bool {
    symplectic_gram_is_zero(rows, rows)
}

/// Three-block generator of an index-2 code: `Circ_t(g f_0, g f_1)`,
/// `([(x^n-1)/gcd(h, f_1)] | 0)` and `(0 | [(x^n-1)/gcd(h, f_0)])`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub t: usize,
    pub t_a: usize,
    pub t_b: usize,
    /// Left-block cyclic code `[(x^n-1)/gcd(h, f_1)]` of dimension `t_a`.
    pub c1: CyclicCode,
    /// Right-block cyclic code `[(x^n-1)/gcd(h, f_0)]` of dimension `t_b`.
    pub c2: CyclicCode,
    pub matrix: Matrix,
}

pub fn decompose_index2(code: &QcOneGen) -> Result<Decomposition> {
    require_index2(code)?;
    let n = code.n();
    let field = code.field();
    let h = code.h();
    let xn1 = PlainPoly::x_n_minus_1(field, n);
    let gcd1 = plain_gcd(h.poly(), &code.f()[1].to_plain()).expect("h nonzero");
    let gcd0 = plain_gcd(h.poly(), &code.f()[0].to_plain()).expect("h nonzero");
    let (t_a, t_b) = (gcd1.deg(), gcd0.deg());
    let dim = code.dim();
    if t_a + t_b > dim {
        return Err(Error::Internal(format!(
            "side blocks of dimensions {t_a} + {t_b} exceed the code dimension {dim}"
        )));
    }
    let t = dim - t_a - t_b;
    let c1 = CyclicCode::from_generator(&xn1.exact_div(&gcd1)?, n)?;
    let c2 = CyclicCode::from_generator(&xn1.exact_div(&gcd0)?, n)?;

    let zero = Matrix::from_rows(field, n, vec![vec![0; n]; n])?;
    let mut matrix = Matrix::new(field, 2 * n);
    if t > 0 {
        let tuple = code.generator_tuple();
        let top = circulant_rows(&tuple[0], t)?.hconcat(&circulant_rows(&tuple[1], t)?)?;
        matrix = matrix.stack(&top)?;
    }
    let block = |c: &CyclicCode, left: bool| -> Result<Matrix> {
        let m = c.generator_matrix();
        let z = Matrix::from_rows(field, n, zero.rows()[..m.nrows()].to_vec())?;
        if left {
            m.hconcat(&z)
        } else {
            z.hconcat(&m)
        }
    };
    matrix = matrix.stack(&block(&c1, true)?)?.stack(&block(&c2, false)?)?;

    let rank = matrix.rank();
    if rank != dim || matrix.nrows() != dim {
        return Err(Error::Internal(format!(
            "decomposed generator has rank {rank} with {} rows, expected {dim}",
            matrix.nrows()
        )));
    }
    if !matrix.same_row_space(&code.generator_matrix()) {
        return Err(Error::Internal(
            "decomposed generator spans a different code".into(),
        ));
    }
    Ok(Decomposition {
        t,
        t_a,
        t_b,
        c1,
        c2,
        matrix,
    })
}

fn require_index2(code: &QcOneGen) -> Result<()> {
    if code.ell() != 2 {
        return Err(Error::OutOfRange {
            what: "index",
            value: code.ell(),
            min: 2,
            max: 2,
        });
    }
    Ok(())
}

/// Symplectic dual of an index-2 code, generated by `(bar f_0, bar f_1)` and `(0, g^perp)`.
#[derive(Clone, Debug)]
pub struct DualTwoGen {
    pub gen1: (RingElement, RingElement),
    pub gen2: (RingElement, RingElement),
    pub expected_dim: usize,
    echelon: Echelon,
}

impl DualTwoGen {
    pub fn n(&self) -> usize {
        self.gen1.0.len()
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Full `2n x 2n` matrix of both circulant generators.
    pub fn generator_matrix(&self) -> Matrix {
        block_matrix(&[self.gen1.0.clone(), self.gen1.1.clone()])
            .stack(&block_matrix(&[self.gen2.0.clone(), self.gen2.1.clone()]))
            .expect("same shape")
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }
}

/// `gcd(bar f_0, g*)`, with `g*` the monic reciprocal of `g`; the two-generator dual
/// exists exactly when this is `1` (equivalently `gcd(f_0, g) = 1` in the ring).
pub fn dual_obstruction(code: &QcOneGen) -> PlainPoly {
    let g_rec = code.g().cofactor().dual();
    plain_gcd(&code.f()[0].bar().to_plain(), g_rec.poly()).expect("g nonzero")
}

/// Builds the two-generator dual; requires `gcd(bar f_0, g*) = 1`.
pub fn symplectic_dual(code: &QcOneGen) -> Result<DualTwoGen> {
    require_index2(code)?;
    if !code.satisfies_gcd_condition() {
        return Err(Error::Precondition(
            "the generator tuple violates the gcd condition".into(),
        ));
    }
    let n = code.n();
    let f0b = code.f()[0].bar();
    let f1b = code.f()[1].bar();
    let gcd = dual_obstruction(code);
    if !gcd.is_one() {
        return Err(Error::Precondition(format!(
            "dual construction needs gcd(bar f_0, g*) = 1 with g* the reciprocal of g, got {gcd}"
        )));
    }
    let gperp = RingElement::from_plain(code.g().dual().poly(), n);
    let zero = RingElement::zero(code.field(), n);
    let mut dual = DualTwoGen {
        gen1: (f0b, f1b),
        gen2: (zero, gperp),
        expected_dim: n + code.g().degree(),
        echelon: Matrix::new(code.field(), 2 * n).echelon(),
    };
    let full = dual.generator_matrix();
    dual.echelon = full.echelon();
    if dual.dim() != dual.expected_dim {
        return Err(Error::Internal(format!(
            "dual generator has rank {}, expected {}",
            dual.dim(),
            dual.expected_dim
        )));
    }
    if !symplectic_gram_is_zero(code.reduced_generator().basis(), dual.echelon.basis()) {
        return Err(Error::Internal(
            "dual generator is not symplectic-orthogonal to the code".into(),
        ));
    }
    Ok(dual)
}

/// Basis of `{v : <c, v>_s = 0 for every row c}`.
pub fn symplectic_nullspace(rows: &Matrix) -> Matrix {
    let f = rows.field();
    let half = rows.ncols() / 2;
    let swapped = rows
        .rows()
        .iter()
        .map(|r| {
            r[half..]
                .iter()
                .map(|&c| f.neg(c))
                .chain(r[..half].iter().copied())
                .collect()
        })
        .collect();
    Matrix::from_rows(f, rows.ncols(), swapped)
        .expect("same width")
        .null_space()
}

/// Dual basis from the two-generator construction when it applies, else from the null space.
pub fn symplectic_dual_basis(code: &QcOneGen) -> Echelon {
    match symplectic_dual(code) {
        Ok(d) => d.echelon,
        Err(_) => symplectic_nullspace(&code.reduced_generator().basis().clone()).echelon(),
    }
}

/// Exact minimum symplectic weight of the row space of `rows`.
pub fn symplectic_distance_exhaustive(rows: &Matrix, budget: u64) -> Result<DistanceResult> {
    let basis = rows.echelon();
    engine::message_count(rows.field(), basis.rank(), budget)?;
    let scan = engine::scan_row_space(basis.basis(), WeightKind::Symplectic, None);
    Ok(DistanceResult::exact(scan.min_all, scan.enumerated))
}

/// `<fa fb, fc>_e == <fa, bar(fb) fc>_e`.
pub fn lemma4_check(fa: &RingElement, fb: &RingElement, fc: &RingElement) -> Result<bool> {
    let lhs = fa.ring_mul(fb)?.euclidean_inner(fc)?;
    let rhs = fa.euclidean_inner(&fb.bar().ring_mul(fc)?)?;
    Ok(lhs == rhs)
}

/// Euclidean dual generator of `g` as a ring element.
pub fn dual_generator_element(g: &DivisorPoly) -> RingElement {
    let d = euclidean_dual_generator(g.poly(), g.n()).expect("divisor invariant");
    RingElement::from_plain(&d, g.n())
}

#![allow(dead_code)]

use qcsso::gfpoly::{plain_gcd, PlainPoly, PrimeField, RingElement};
use qcsso::linalg::Matrix;
use qcsso::qcsym::QcOneGen;
use qcsso::shell::{load_catalog, EntryCode};
use rand::Rng;

pub mod props;

/// The one-generator code of a catalog entry or worked example.
pub fn catalog_code(id: &str) -> QcOneGen {
    let cat = load_catalog().unwrap();
    match cat.entry(id).unwrap().code().unwrap() {
        EntryCode::OneGen { code, .. } => code,
        EntryCode::TwoGen(_) => panic!("{id} is a two-generator entry"),
    }
}

pub fn ring(field: PrimeField, n: usize, exps: &[usize]) -> RingElement {
    RingElement::from_plain(&PlainPoly::from_exponents(field, exps), n)
}

pub fn random_element<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> RingElement {
    let c: Vec<u8> = (0..n).map(|_| rng.gen_range(0..field.p())).collect();
    RingElement::from_coeffs(field, n, &c)
}

/// Random `(f_0, f_1)` with `gcd(f_0, f_1, h) = 1`.
pub fn random_pair<R: Rng>(rng: &mut R, g: &PlainPoly, n: usize) -> (RingElement, RingElement) {
    let field = g.field();
    let h = PlainPoly::x_n_minus_1(field, n).exact_div(g).unwrap();
    loop {
        let f0 = random_element(rng, field, n);
        let f1 = random_element(rng, field, n);
        let c = plain_gcd(&plain_gcd(&h, &f0.to_plain()).unwrap(), &f1.to_plain()).unwrap();
        if c.is_one() {
            return (f0, f1);
        }
    }
}

/// Distinct monic irreducible factors of a squarefree polynomial (Berlekamp).
fn berlekamp(f: &PlainPoly) -> Vec<PlainPoly> {
    let field = f.field();
    let m = f.deg();
    if m <= 1 {
        return vec![f.monic()];
    }
    let p = field.p() as usize;
    // rows of Q - I, where row i is x^(ip) mod f
    let xp = PlainPoly::monomial(field, p, 1).rem(f).unwrap();
    let mut cur = PlainPoly::one(field);
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![0u8; m];
        for (j, c) in row.iter_mut().enumerate() {
            *c = cur.coeff(j);
        }
        row[i] = field.sub(row[i], 1);
        rows.push(row);
        cur = cur.mul(&xp).rem(f).unwrap();
    }
    // v Q = v  <=>  (Q - I)^T v^T = 0
    let kernel = Matrix::from_rows(field, m, rows).unwrap().transpose().null_space();
    let r = kernel.nrows();
    let mut factors = vec![f.monic()];
    for v in kernel.rows() {
        if factors.len() == r {
            break;
        }
        let vp = PlainPoly::from_coeffs(field, v.clone());
        if vp.deg() == 0 {
            continue;
        }
        let mut next = Vec::new();
        for fac in factors {
            if fac.deg() <= 1 {
                next.push(fac);
                continue;
            }
            let mut rest = fac.clone();
            for s in 0..p as u8 {
                let shifted = vp.sub(&PlainPoly::monomial(field, 0, s));
                let d = plain_gcd(&rest, &shifted).unwrap();
                if !d.is_one() && d.deg() < rest.deg() {
                    rest = rest.exact_div(&d).unwrap().monic();
                    next.push(d);
                } else if d.deg() == rest.deg() {
                    break;
                }
            }
            next.push(rest.monic());
        }
        factors = next.into_iter().filter(|f| !f.is_one()).collect();
    }
    factors
}

/// Irreducible factors of `x^n - 1` with multiplicities.
pub fn factor_xn1(field: PrimeField, n: usize) -> Vec<(PlainPoly, usize)> {
    let p = field.p() as usize;
    let mut m = n;
    let mut mult = 1;
    while m % p == 0 {
        m /= p;
        mult *= p;
    }
    berlekamp(&PlainPoly::x_n_minus_1(field, m))
        .into_iter()
        .map(|f| (f, mult))
        .collect()
}

/// Every monic divisor of `x^n - 1`.
pub fn divisors(field: PrimeField, n: usize) -> Vec<PlainPoly> {
    let mut out = vec![PlainPoly::one(field)];
    for (f, mult) in factor_xn1(field, n) {
        let mut next = Vec::new();
        for d in &out {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..mult {
                acc = acc.mul(&f);
                next.push(acc.clone());
            }
        }
        out = next;
    }
    out
}

/// Brute-force minimum symplectic weight of the row space (small dimensions only).
pub fn brute_symplectic_distance(rows: &Matrix) -> Option<u32> {
    let basis = rows.echelon();
    let k = basis.rank();
    let p = rows.field().p() as u64;
    let half = rows.ncols() / 2;
    let mut best = None::<u32>;
    for idx in 1..p.pow(k as u32) {
        let mut m = vec![0u8; k];
        let mut x = idx;
        for d in m.iter_mut() {
            *d = (x % p) as u8;
            x /= p;
        }
        let c = basis.basis().encode(&m);
        let w = (0..half).filter(|&i| c[i] != 0 || c[half + i] != 0).count() as u32;
        best = Some(best.map_or(w, |b| b.min(w)));
    }
    best
}

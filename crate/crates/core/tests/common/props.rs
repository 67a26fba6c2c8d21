//! Property suites shared by the property tests and the acceptance runner.

use std::collections::BTreeMap;

use qcsso::bounds::{theorem4_bounds_with, theorem6_dual_bounds_with};
use qcsso::cyclic::{CyclicCode, DistanceCache};
use qcsso::gfpoly::{divides, PlainPoly, PrimeField, RingElement};
use qcsso::linalg::Matrix;
use qcsso::qcsym::{
    check_sso_multi_gen, check_sso_one_gen, dual_obstruction, lemma4_check, symplectic_distance_exhaustive,
    symplectic_dual, symplectic_dual_basis, symplectic_gram_is_zero, symplectic_inner, symplectic_nullspace,
    symplectic_weight, QcMultiGen, QcOneGen, SympVector,
};
use qcsso::shell::{emit_abbrev, load_catalog, parse_abbrev, EntryCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{divisors, random_element, random_pair};

pub const FIELDS: [u32; 4] = [2, 3, 5, 7];

/// Outcome of one suite: number of cases checked and a description of every failure.
#[derive(Debug, Default)]
pub struct Suite {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<String>,
    pub detail: String,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            name,
            ..Suite::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!("{}: {} cases, {} failures", self.name, self.cases, self.failures.len());
        if !self.detail.is_empty() {
            s.push_str(&format!(" ({})", self.detail));
        }
        s
    }

    pub fn assert_passed(&self) {
        assert!(self.passed(), "{}\n{}", self.summary(), self.failures.join("\n"));
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random_symp(rng: &mut ChaCha8Rng, f: PrimeField, half: usize) -> SympVector {
    let e = (0..2 * half).map(|_| rng.gen_range(0..f.p())).collect();
    SympVector::new(f, e).unwrap()
}

fn hamming(v: &[u8]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}

/// All generator-row pairs pair to zero, computed pair by pair.
pub fn brute_gram_zero(rows: &Matrix) -> bool {
    let f = rows.field();
    let vs: Vec<SympVector> = rows
        .rows()
        .iter()
        .map(|r| SympVector::new(f, r.clone()).unwrap())
        .collect();
    vs.iter()
        .all(|u| vs.iter().all(|v| symplectic_inner(u, v).unwrap() == 0))
}

/// `<a b, c>_e = <a, bar(b) c>_e` on random ring triples.
pub fn lemma4(cases: u64) -> Suite {
    let mut s = Suite::new("Lemma-4 identity");
    let mut r = rng(11);
    for i in 0..cases {
        let f = field(FIELDS[i as usize % 4]);
        let n = r.gen_range(1..=24);
        let (a, b, c) = (
            random_element(&mut r, f, n),
            random_element(&mut r, f, n),
            random_element(&mut r, f, n),
        );
        s.check(lemma4_check(&a, &b, &c).unwrap(), || {
            format!("{f} n={n}: {a:?} {b:?} {c:?}")
        });
    }
    s
}

/// Antisymmetry, isotropy and `q w_s(c) = w_H(c') + sum_alpha w_H(c'' + alpha c')`.
pub fn symplectic_identities(cases: u64) -> Suite {
    let mut s = Suite::new("symplectic antisymmetry and weight identity");
    let mut r = rng(12);
    for i in 0..cases {
        let f = field(FIELDS[i as usize % 4]);
        let half = r.gen_range(1..=20);
        let u = random_symp(&mut r, f, half);
        let v = random_symp(&mut r, f, half);
        let uv = symplectic_inner(&u, &v).unwrap();
        let vu = symplectic_inner(&v, &u).unwrap();
        s.check(uv == f.neg(vu), || format!("antisymmetry {f}: {u:?} {v:?}"));
        s.check(symplectic_inner(&u, &u).unwrap() == 0, || format!("isotropy {f}: {u:?}"));
        let (a, b) = (u.first(), u.second());
        let mut total = hamming(a);
        for alpha in 0..f.p() {
            let line: Vec<u8> = a.iter().zip(b).map(|(&x, &y)| f.add(y, f.mul(alpha, x))).collect();
            total += hamming(&line);
        }
        s.check(total == f.p() as usize * symplectic_weight(&u), || {
            format!("weight identity {f}: {u:?}")
        });
    }
    s
}

/// The divisibility criterion agrees with the pairwise Gram oracle, over every divisor `g`.
pub fn theorem2_vs_gram(samples_per_g: usize) -> Suite {
    let mut s = Suite::new("self-orthogonality criterion vs Gram oracle");
    let mut r = rng(13);
    let mut sso = 0u64;
    for p in [2, 3] {
        let f = field(p);
        for n in 1..=9 {
            for g in divisors(f, n) {
                for _ in 0..samples_per_g {
                    let (f0, f1) = random_pair(&mut r, &g, n);
                    let code = QcOneGen::new(&g, n, vec![f0, f1]).unwrap();
                    let fast = check_sso_one_gen(&code).holds;
                    let slow = brute_gram_zero(&code.generator_matrix());
                    sso += fast as u64;
                    s.check(fast == slow, || format!("{f} n={n} g={g} f={:?}", code.f()));
                }
                // two-generator codes exercise the pairwise criterion
                let (f0, f1) = random_pair(&mut r, &g, n);
                let g2 = &divisors(f, n)[r.gen_range(0..divisors(f, n).len())];
                let (e0, e1) = random_pair(&mut r, g2, n);
                let multi = QcMultiGen::new(vec![
                    QcOneGen::new(&g, n, vec![f0, f1]).unwrap(),
                    QcOneGen::new(g2, n, vec![e0, e1]).unwrap(),
                ])
                .unwrap();
                let fast = check_sso_multi_gen(&multi).holds;
                sso += fast as u64;
                s.check(fast == brute_gram_zero(&multi.generator_matrix()), || {
                    format!("two generators {f} n={n} g={g} g2={g2}")
                });
            }
        }
    }
    // every admissible pair for the shortest lengths
    for (p, max_n) in [(2u32, 5usize), (3, 3)] {
        let f = field(p);
        for n in 1..=max_n {
            let all: Vec<RingElement> = (0..(p as usize).pow(n as u32))
                .map(|mut x| {
                    let c: Vec<u8> = (0..n)
                        .map(|_| {
                            let d = (x % p as usize) as u8;
                            x /= p as usize;
                            d
                        })
                        .collect();
                    RingElement::from_coeffs(f, n, &c)
                })
                .collect();
            for g in divisors(f, n) {
                for f0 in &all {
                    for f1 in &all {
                        let Ok(code) = QcOneGen::new(&g, n, vec![f0.clone(), f1.clone()]) else {
                            continue;
                        };
                        let fast = check_sso_one_gen(&code).holds;
                        sso += fast as u64;
                        s.check(fast == brute_gram_zero(&code.generator_matrix()), || {
                            format!("{f} n={n} g={g} f=({f0:?}, {f1:?})")
                        });
                    }
                }
            }
        }
    }
    s.detail = format!("{sso} self-orthogonal");
    s
}

/// `[g1]` and `[g2]` are Euclidean-orthogonal exactly when `g1^perp | g2`, all divisor pairs.
pub fn theorem1_vs_divisibility() -> Suite {
    let mut s = Suite::new("cyclic orthogonality vs divisibility");
    let f = PrimeField::BINARY;
    for n in 1..=12 {
        let divs = divisors(f, n);
        for g1 in &divs {
            let c1 = CyclicCode::from_generator(g1, n).unwrap();
            let m1 = c1.generator_matrix();
            for g2 in &divs {
                let m2 = CyclicCode::from_generator(g2, n).unwrap().generator_matrix();
                let orth = m1.rows().iter().all(|a| {
                    m2.rows()
                        .iter()
                        .all(|b| a.iter().zip(b).fold(0u8, |acc, (&x, &y)| f.add(acc, f.mul(x, y))) == 0)
                });
                let crit = divides(c1.generator().dual().poly(), g2);
                s.check(orth == crit, || format!("n={n} g1={g1} g2={g2}"));
            }
        }
    }
    s
}

/// `lower <= d_s <= upper` for the primal bounds and, where the two-generator dual exists,
/// for the dual bounds; also tallies which branches fired.
pub fn sandwich(p: u32, max_n: usize, samples_per_g: usize, dual_budget: u64) -> (Suite, BTreeMap<&'static str, u64>) {
    let mut s = Suite::new(if p == 2 { "bound sandwich p=2" } else { "bound sandwich p=3" });
    let mut tags = BTreeMap::new();
    let mut r = rng(14 + p as u64);
    let f = field(p);
    let cache = DistanceCache::new();
    let (mut duals, mut skipped) = (0u64, 0u64);
    for n in 1..=max_n {
        for g in divisors(f, n) {
            for _ in 0..samples_per_g {
                let (f0, f1) = random_pair(&mut r, &g, n);
                let code = QcOneGen::new(&g, n, vec![f0, f1]).unwrap();
                let b = theorem4_bounds_with(&code, 1 << 20, &cache).unwrap();
                *tags.entry(b.case_tag.as_str()).or_insert(0) += 1;
                let d = symplectic_distance_exhaustive(&code.generator_matrix(), 1 << 24).unwrap();
                s.check(b.contains(d.value), || {
                    format!("primal n={n} g={g} f={:?}: {} not in [{}, {}]", code.f(), d.value, b.lower, b.upper)
                });
                let Ok(db) = theorem6_dual_bounds_with(&code, 1 << 20, &cache) else {
                    continue;
                };
                *tags.entry(db.case_tag.as_str()).or_insert(0) += 1;
                let dual = symplectic_dual(&code).unwrap();
                match symplectic_distance_exhaustive(dual.echelon().basis(), dual_budget) {
                    Ok(dd) => {
                        duals += 1;
                        s.check(db.contains(dd.value), || {
                            format!(
                                "dual n={n} g={g} f={:?}: {} not in [{}, {}] ({})",
                                code.f(),
                                dd.value,
                                db.lower,
                                db.upper,
                                db.case_tag.as_str()
                            )
                        });
                    }
                    Err(_) => skipped += 1,
                }
            }
        }
    }
    s.detail = format!("{duals} dual instances, {skipped} duals above budget");
    (s, tags)
}

/// The two-generator dual exists exactly when `gcd(bar f_0, g*) = 1`.
pub fn dual_hypothesis(samples_per_g: usize) -> Suite {
    let mut s = Suite::new("dual construction hypothesis");
    let mut r = rng(21);
    for p in FIELDS {
        let f = field(p);
        for n in 1..=9 {
            for g in divisors(f, n) {
                for _ in 0..samples_per_g {
                    let (f0, f1) = random_pair(&mut r, &g, n);
                    let code = QcOneGen::new(&g, n, vec![f0, f1]).unwrap();
                    let applies = dual_obstruction(&code).is_one();
                    let built = symplectic_dual(&code).is_ok();
                    s.check(applies == built, || format!("{f} n={n} g={g} f={:?}", code.f()));
                    if applies {
                        let null = symplectic_nullspace(code.reduced_generator().basis());
                        let dual = symplectic_dual(&code).unwrap();
                        s.check(dual.echelon().basis().same_row_space(&null), || {
                            format!("row space {f} n={n} g={g}")
                        });
                    }
                }
            }
        }
    }
    s
}

/// Every catalog code and its dual: ranks sum to `2n` and the cross Gram product vanishes.
pub fn catalog_duals() -> Suite {
    let mut s = Suite::new("catalog dual complementarity");
    let cat = load_catalog().unwrap();
    for e in cat.entries.iter().chain(&cat.examples) {
        let (primal, dual) = match e.code().unwrap() {
            EntryCode::OneGen { code, .. } => (code.reduced_generator(), symplectic_dual_basis(&code)),
            EntryCode::TwoGen(code) => {
                let p = code.reduced_generator();
                let d = symplectic_nullspace(p.basis()).echelon();
                (p, d)
            }
        };
        s.check(primal.rank() + dual.rank() == 2 * e.n, || {
            format!("{}: ranks {} + {}", e.id, primal.rank(), dual.rank())
        });
        s.check(symplectic_gram_is_zero(primal.basis(), dual.basis()), || {
            format!("{}: nonzero Gram product", e.id)
        });
    }
    s
}

/// Random text in the notation, including split runs and a trailing unbraced run.
fn random_notation(r: &mut ChaCha8Rng, f: PrimeField) -> String {
    let tokens = r.gen_range(1..=12);
    let mut t = String::new();
    for i in 0..tokens {
        t.push((b'0' + r.gen_range(0..f.p())) as char);
        match r.gen_range(0..3) {
            0 => {}
            // an unbraced count is only unambiguous at the end
            1 if i + 1 == tokens => t.push_str(&format!("^{}", r.gen_range(1..=99))),
            1 => {}
            _ => t.push_str(&format!("^{{{}}}", r.gen_range(1..=30))),
        }
    }
    t
}

/// emit then parse is the identity on trimmed vectors, and emit of parse is idempotent.
pub fn parser_roundtrip(cases: u64) -> Suite {
    let mut s = Suite::new("notation round trip");
    let mut r = rng(15);
    for i in 0..cases {
        let f = field(FIELDS[i as usize % 4]);
        let len = r.gen_range(1..=80);
        let density = r.gen_range(0.05..1.0);
        let v: Vec<u8> = (0..len)
            .map(|_| if r.gen_bool(density) { r.gen_range(1..f.p()) } else { 0 })
            .collect();
        let end = v.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        let text = emit_abbrev(&v);
        let back = parse_abbrev(&text, f).unwrap();
        let want: Vec<u8> = if end == 0 { vec![0] } else { v[..end].to_vec() };
        s.check(back == want, || format!("{v:?} -> {text} -> {back:?}"));
        let raw = random_notation(&mut r, f);
        let parsed = parse_abbrev(&raw, f).unwrap();
        let canon = emit_abbrev(&parsed);
        let again = emit_abbrev(&parse_abbrev(&canon, f).unwrap());
        s.check(canon == again, || format!("{raw} -> {canon} -> {again}"));
    }
    s
}

/// The two quoted notation examples.
pub fn parser_quotes() -> Suite {
    let mut s = Suite::new("quoted notation examples");
    let f = PrimeField::BINARY;
    s.check(parse_abbrev("101^3", f).unwrap() == [1, 0, 1, 1, 1], || "101^3".into());
    s.check(
        parse_abbrev("1^{2}0^{2}1^2", f).unwrap() == [1, 1, 0, 0, 1, 1],
        || "1^{2}0^{2}1^2".into(),
    );
    let g = PlainPoly::from_coeffs(f, parse_abbrev("101^3", f).unwrap());
    s.check(g.to_string() == "1+x^2+x^3+x^4", || g.to_string());
    s
}

/// Helper for random one-generator codes over a fixed `g`.
pub fn random_code(r: &mut ChaCha8Rng, g: &PlainPoly, n: usize) -> QcOneGen {
    let (f0, f1) = random_pair(r, g, n);
    QcOneGen::new(g, n, vec![f0, f1]).unwrap()
}


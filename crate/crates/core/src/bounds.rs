//! Lower and upper bounds on the minimum symplectic distance of an index-2
//! 1-generator QC code and of its symplectic dual, assembled from the
//! Hamming distances of auxiliary cyclic codes.

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::{cyclic_from_element, CyclicCode, DistanceCache, DEFAULT_BUDGET};
use crate::engine::{Distance, DistanceResult};
use crate::error::{Error, Result};
use crate::gfpoly::{divides, plain_gcd, plain_lcm, PlainPoly};
use crate::qcsym::{dual_obstruction, QcOneGen};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Primal,
    Dual,
}

/// Which branch of the lower-bound case analysis fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// The code itself is `{0}`.
    ZeroCode,
    PrimalEmptyS,
    PrimalBinaryS,
    PrimalOddS,
    DualEmptySDivides,
    DualEmptySNotDivides,
    DualBinarySDivides,
    DualBinarySNotDivides,
    DualOddSDivides,
    DualOddSNotDivides,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::ZeroCode => "zero-code",
            CaseTag::PrimalEmptyS => "primal-empty-s",
            CaseTag::PrimalBinaryS => "primal-binary-s",
            CaseTag::PrimalOddS => "primal-odd-s",
            CaseTag::DualEmptySDivides => "dual-empty-s-divides",
            CaseTag::DualEmptySNotDivides => "dual-empty-s-not-divides",
            CaseTag::DualBinarySDivides => "dual-binary-s-divides",
            CaseTag::DualBinarySNotDivides => "dual-binary-s-not-divides",
            CaseTag::DualOddSDivides => "dual-odd-s-divides",
            CaseTag::DualOddSNotDivides => "dual-odd-s-not-divides",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDistance {
    pub name: String,
    pub generator: String,
    pub n: usize,
    pub dim: usize,
    pub distance: DistanceResult,
}

/// A nontrivial gcd for some `alpha` together with the distance it contributes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaTerm {
    pub alpha: u8,
    pub gcd: String,
    /// Generator of the cyclic code whose distance enters the averaging sum.
    pub generator: String,
    pub distance: DistanceResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub q: u8,
    pub n: usize,
    pub components: Vec<ComponentDistance>,
    pub s_set: Vec<AlphaTerm>,
    pub d_value: Distance,
    pub lower: Distance,
    pub upper: Distance,
    /// All component distances that entered the bounds were exact.
    pub exact: bool,
    pub case_tag: CaseTag,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn component(&self, name: &str) -> Option<&ComponentDistance> {
        self.components.iter().find(|c| c.name == name)
    }

    /// Whether `d` lies in `[lower, upper]`.
    pub fn contains(&self, d: Distance) -> bool {
        self.lower <= d && d <= self.upper
    }
}

struct Components {
    codes: Vec<CyclicCode>,
    dist: Vec<DistanceResult>,
}

impl Components {
    fn compute(codes: Vec<CyclicCode>, budget: u64, cache: &DistanceCache) -> Self {
        let dist = codes
            .par_iter()
            .map(|c| cache.min_hamming(c, budget))
            .collect();
        Components { codes, dist }
    }

    fn lo(&self, i: usize) -> Distance {
        self.dist[i].lower
    }

    fn hi(&self, i: usize) -> Distance {
        self.dist[i].upper
    }

    fn report(&self) -> Vec<ComponentDistance> {
        self.codes
            .iter()
            .zip(&self.dist)
            .enumerate()
            .map(|(i, (c, d))| ComponentDistance {
                name: format!("C{i}"),
                generator: c.generator().poly().to_string(),
                n: c.n(),
                dim: c.dim(),
                distance: *d,
            })
            .collect()
    }
}

/// `max{ceil((d1 + d2 + count * unit + sum extra) / q), d1, d2}`, with zero-code terms left out of the sum.
fn averaged_bound(
    q: u8,
    d1: Distance,
    d2: Distance,
    count: usize,
    unit: Distance,
    extra: &[Distance],
    notes: &mut Vec<String>,
) -> Distance {
    let mut sum = 0u64;
    let mut omitted = Vec::new();
    for (label, d) in [("d1", d1), ("d2", d2)] {
        match d {
            Distance::Finite(v) => sum += v as u64,
            Distance::Infinite => omitted.push(label.to_string()),
        }
    }
    if count > 0 {
        match unit {
            Distance::Finite(v) => sum += count as u64 * v as u64,
            Distance::Infinite => omitted.push("trivial-gcd term".into()),
        }
    }
    for (i, d) in extra.iter().enumerate() {
        match d {
            Distance::Finite(v) => sum += *v as u64,
            Distance::Infinite => omitted.push(format!("gcd term {i}")),
        }
    }
    if !omitted.is_empty() {
        notes.push(format!(
            "zero-code distance omitted from the averaging sum: {}",
            omitted.join(", ")
        ));
    }
    let avg = Distance::Finite(sum.div_ceil(q as u64) as u32);
    avg.max(d1).max(d2)
}

fn min_of(ds: &[Distance]) -> Distance {
    ds.iter().copied().min().unwrap_or(Distance::Infinite)
}

fn require_bounds_input(code: &QcOneGen) -> Result<()> {
    if code.ell() != 2 {
        return Err(Error::OutOfRange {
            what: "index",
            value: code.ell(),
            min: 2,
            max: 2,
        });
    }
    if !code.satisfies_gcd_condition() {
        return Err(Error::Precondition(
            "bounds need gcd(f_0, f_1, h) = 1".into(),
        ));
    }
    Ok(())
}

fn plain_f(code: &QcOneGen) -> (PlainPoly, PlainPoly) {
    (code.f()[0].to_plain(), code.f()[1].to_plain())
}

/// Bounds on `d_s` of the code generated by `(g f_0, g f_1)`, with default budget.
pub fn theorem4_bounds(code: &QcOneGen) -> Result<BoundReport> {
    theorem4_bounds_with(code, DEFAULT_BUDGET, &DistanceCache::new())
}

/// Primal bounds; component distances use `budget` and are memoized in `cache`.
pub fn theorem4_bounds_with(
    code: &QcOneGen,
    budget: u64,
    cache: &DistanceCache,
) -> Result<BoundReport> {
    require_bounds_input(code)?;
    let field = code.field();
    let q = field.p();
    let n = code.n();
    let g = code.g().poly().clone();
    let h = code.h().poly().clone();
    let xn1 = PlainPoly::x_n_minus_1(field, n);
    let (f0, f1) = plain_f(code);
    let mut notes = Vec::new();

    let gcd_h = |f: &PlainPoly| plain_gcd(&h, f).expect("h nonzero");
    let codes = vec![
        cyclic_from_element(&g, n),
        cyclic_from_element(&g.mul(&f0), n),
        cyclic_from_element(&g.mul(&f1), n),
        cyclic_from_element(&xn1.exact_div(&gcd_h(&f0))?, n),
        cyclic_from_element(&xn1.exact_div(&gcd_h(&f1))?, n),
        cyclic_from_element(&g.mul(&plain_lcm(&f0, &f1)?), n),
    ];

    let mut s_codes = Vec::new();
    let mut s_meta = Vec::new();
    for alpha in field.units() {
        let i = gcd_h(&f0.add(&f1.scale(alpha)));
        if !i.is_one() {
            s_codes.push(cyclic_from_element(&g.mul(&i), n));
            s_meta.push((alpha, i));
        }
    }
    let comps = Components::compute(codes, budget, cache);
    let s_dist: Vec<DistanceResult> = s_codes
        .par_iter()
        .map(|c| cache.min_hamming(c, budget))
        .collect();
    let s_set: Vec<AlphaTerm> = s_meta
        .iter()
        .zip(&s_codes)
        .zip(&s_dist)
        .map(|(((alpha, i), c), d)| AlphaTerm {
            alpha: *alpha,
            gcd: i.to_string(),
            generator: c.generator().poly().to_string(),
            distance: *d,
        })
        .collect();

    let exact = comps.dist.iter().chain(&s_dist).all(|d| d.exact);
    if !exact {
        notes.push("some component distances are bounds, so the sandwich is widened".into());
    }

    if code.dim() == 0 {
        notes.push("the code is {0}".into());
        return Ok(BoundReport {
            kind: BoundKind::Primal,
            q,
            n,
            components: comps.report(),
            s_set,
            d_value: Distance::Infinite,
            lower: Distance::Infinite,
            upper: Distance::Infinite,
            exact,
            case_tag: CaseTag::ZeroCode,
            notes,
        });
    }

    let extra: Vec<Distance> = s_dist.iter().map(|d| d.lower).collect();
    let trivial = (q as usize - 1) - s_set.len();
    let d_value = averaged_bound(q, comps.lo(1), comps.lo(2), trivial, comps.lo(0), &extra, &mut notes);

    let (case_tag, lower) = if s_set.is_empty() {
        (CaseTag::PrimalEmptyS, min_of(&[comps.lo(3), comps.lo(4), d_value]))
    } else if q == 2 {
        (
            CaseTag::PrimalBinaryS,
            min_of(&[comps.lo(3), comps.lo(4), comps.lo(5), d_value]),
        )
    } else {
        (
            CaseTag::PrimalOddS,
            min_of(&[comps.lo(3), comps.lo(4), comps.lo(1).max(comps.lo(2))]),
        )
    };
    let upper = comps.hi(3).min(comps.hi(4));
    if upper.is_infinite() {
        notes.push("both side codes are {0}; the upper bound is vacuous".into());
    }

    Ok(BoundReport {
        kind: BoundKind::Primal,
        q,
        n,
        components: comps.report(),
        s_set,
        d_value,
        lower,
        upper,
        exact,
        case_tag,
        notes,
    })
}

/// Bounds on `d_s` of the symplectic dual, with default budget.
pub fn theorem6_dual_bounds(code: &QcOneGen) -> Result<BoundReport> {
    theorem6_dual_bounds_with(code, DEFAULT_BUDGET, &DistanceCache::new())
}

/// Dual bounds; requires `gcd(bar f_0, g*) = 1` with `g*` the reciprocal of `g`.
pub fn theorem6_dual_bounds_with(
    code: &QcOneGen,
    budget: u64,
    cache: &DistanceCache,
) -> Result<BoundReport> {
    require_bounds_input(code)?;
    let field = code.field();
    let q = field.p();
    let n = code.n();
    let xn1 = PlainPoly::x_n_minus_1(field, n);
    let f0b = code.f()[0].bar().to_plain();
    let f1b = code.f()[1].bar().to_plain();
    let gcd = dual_obstruction(code);
    if !gcd.is_one() {
        return Err(Error::Precondition(format!(
            "dual bounds need gcd(bar f_0, g*) = 1 with g* the reciprocal of g, got {gcd}"
        )));
    }
    let gp = code.g().dual().poly().clone();
    let mut notes = Vec::new();

    let gcd_xn1 = |f: &PlainPoly| plain_gcd(&xn1, f).expect("x^n - 1 nonzero");
    let c2_gen = plain_gcd(&f1b, &gp).expect("dual generator nonzero");
    let c4_gen = xn1.exact_div(&gcd_xn1(&f0b))?;
    let codes = vec![
        cyclic_from_element(&gp, n),
        cyclic_from_element(&f0b, n),
        cyclic_from_element(&c2_gen, n),
        cyclic_from_element(&xn1.exact_div(&gcd_xn1(&f1b))?, n),
        cyclic_from_element(&c4_gen, n),
        cyclic_from_element(&plain_gcd(&c4_gen, &gp)?, n),
        cyclic_from_element(&plain_lcm(&f0b, &c2_gen)?, n),
        cyclic_from_element(&f0b.mul(&gp.exact_div(&c2_gen)?), n),
    ];

    let mut s_codes = Vec::new();
    let mut s_meta = Vec::new();
    for alpha in field.units() {
        let i = plain_gcd(&f1b.add(&f0b.scale(alpha)), &gp).expect("dual generator nonzero");
        if !i.is_one() {
            s_codes.push(cyclic_from_element(&i, n));
            s_meta.push((alpha, i));
        }
    }
    let comps = Components::compute(codes, budget, cache);
    let s_dist: Vec<DistanceResult> = s_codes
        .par_iter()
        .map(|c| cache.min_hamming(c, budget))
        .collect();
    let s_set: Vec<AlphaTerm> = s_meta
        .iter()
        .zip(&s_codes)
        .zip(&s_dist)
        .map(|(((alpha, i), c), d)| AlphaTerm {
            alpha: *alpha,
            gcd: i.to_string(),
            generator: c.generator().poly().to_string(),
            distance: *d,
        })
        .collect();
    let exact = comps.dist.iter().chain(&s_dist).all(|d| d.exact);
    if !exact {
        notes.push("some component distances are bounds, so the sandwich is widened".into());
    }

    let extra: Vec<Distance> = s_dist.iter().map(|d| d.lower).collect();
    let trivial = (q as usize - 1) - s_set.len();
    let d_value = averaged_bound(
        q,
        comps.lo(1),
        comps.lo(2),
        trivial,
        Distance::Finite(1),
        &extra,
        &mut notes,
    );

    // [gcd(bar f_1, x^n - 1)] meets [g^perp] trivially: no codeword (a bar f_0, 0) survives
    let g_divides = divides(&xn1, &plain_lcm(&gcd_xn1(&f1b), &gp)?);
    let c7 = if g_divides { Distance::Infinite } else { comps.lo(7) };
    let (case_tag, lower) = match (s_set.is_empty(), q == 2, g_divides) {
        (true, _, true) => (
            CaseTag::DualEmptySDivides,
            min_of(&[comps.lo(3), comps.lo(5), d_value]),
        ),
        (true, _, false) => (
            CaseTag::DualEmptySNotDivides,
            min_of(&[comps.lo(3), comps.lo(5), c7, d_value]),
        ),
        (false, true, true) => (
            CaseTag::DualBinarySDivides,
            min_of(&[comps.lo(3), comps.lo(5), comps.lo(6), d_value]),
        ),
        (false, true, false) => (
            CaseTag::DualBinarySNotDivides,
            min_of(&[comps.lo(3), comps.lo(5), comps.lo(6), c7, d_value]),
        ),
        (false, false, true) => (
            CaseTag::DualOddSDivides,
            min_of(&[comps.lo(3), comps.lo(5), comps.lo(1).max(comps.lo(2))]),
        ),
        (false, false, false) => (
            CaseTag::DualOddSNotDivides,
            min_of(&[comps.lo(3), comps.lo(5), c7, comps.lo(1).max(comps.lo(2))]),
        ),
    };
    let upper = min_of(&[comps.hi(0), comps.hi(3), comps.hi(4)]);

    Ok(BoundReport {
        kind: BoundKind::Dual,
        q,
        n,
        components: comps.report(),
        s_set,
        d_value,
        lower,
        upper,
        exact,
        case_tag,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfpoly::{PrimeField, RingElement};

    const F2: PrimeField = PrimeField::BINARY;

    fn ring(exps: &[usize], n: usize) -> RingElement {
        RingElement::from_plain(&PlainPoly::from_exponents(F2, exps), n)
    }

    #[test]
    fn averaging_omits_zero_codes() {
        let mut notes = Vec::new();
        let d = averaged_bound(
            2,
            Distance::Finite(4),
            Distance::Finite(3),
            0,
            Distance::Finite(1),
            &[Distance::Infinite],
            &mut notes,
        );
        assert_eq!(d, Distance::Finite(4));
        assert_eq!(notes.len(), 1);
        let d = averaged_bound(
            2,
            Distance::Infinite,
            Distance::Finite(3),
            1,
            Distance::Finite(2),
            &[],
            &mut notes,
        );
        assert_eq!(d, Distance::Infinite);
    }

    #[test]
    fn diagonal_code_sandwich() {
        // (a, a) over n = 5: every nonzero codeword has d_s = w_H(a) >= 1
        let n = 5;
        let one = ring(&[0], n);
        let code = QcOneGen::new(&PlainPoly::one(F2), n, vec![one.clone(), one]).unwrap();
        let r = theorem4_bounds(&code).unwrap();
        assert_eq!(r.case_tag, CaseTag::PrimalBinaryS);
        assert!(r.contains(Distance::Finite(1)));
    }

    #[test]
    fn refuses_bad_inputs() {
        let n = 7;
        let u = PlainPoly::from_exponents(F2, &[0, 1]);
        let f = RingElement::from_plain(&u, n);
        let raw = QcOneGen::new_unchecked(&PlainPoly::one(F2), n, vec![f.clone(), f]).unwrap();
        assert!(matches!(theorem4_bounds(&raw), Err(Error::Precondition(_))));
        // bar f_0 = 1 + x^6 shares the factor 1 + x with g
        let code = QcOneGen::new(&u, n, vec![ring(&[0, 1], n), ring(&[0], n)]).unwrap();
        assert!(matches!(
            theorem6_dual_bounds(&code),
            Err(Error::Precondition(_))
        ));
    }
}

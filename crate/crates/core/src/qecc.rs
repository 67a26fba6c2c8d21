//! Quantum code parameters from binary symplectic self-orthogonal codes, the
//! propagation rules, and comparison against claimed records.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::bounds::{theorem6_dual_bounds_with, BoundReport};
use crate::cyclic::{DistanceCache, DistanceResult};
use crate::engine::{self, Distance, WeightKind};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::qcsym::{check_sso_one_gen, gram_oracle, symplectic_dual_basis, symplectic_nullspace, QcOneGen};

/// Minimum distance of a quantum code: exact, or bracketed when enumeration was out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum QeccDistance {
    Exact { value: u32 },
    Bounded { lower: u32, upper: Option<u32> },
}

impl QeccDistance {
    pub fn exact(d: u32) -> Self {
        QeccDistance::Exact { value: d }
    }

    pub fn lower(self) -> u32 {
        match self {
            QeccDistance::Exact { value } => value,
            QeccDistance::Bounded { lower, .. } => lower,
        }
    }

    pub fn upper(self) -> Option<u32> {
        match self {
            QeccDistance::Exact { value } => Some(value),
            QeccDistance::Bounded { upper, .. } => upper,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, QeccDistance::Exact { .. })
    }

    fn minus_one(self) -> Self {
        match self {
            QeccDistance::Exact { value } => QeccDistance::Exact { value: value - 1 },
            QeccDistance::Bounded { lower, upper } => QeccDistance::Bounded {
                lower: lower.saturating_sub(1).max(1),
                upper: upper.map(|u| u - 1),
            },
        }
    }
}

impl fmt::Display for QeccDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QeccDistance::Exact { value } => write!(f, "{value}"),
            QeccDistance::Bounded {
                lower,
                upper: Some(u),
            } => write!(f, "{lower}..{u}"),
            QeccDistance::Bounded { lower, upper: None } => write!(f, ">={lower}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Provenance {
    Constructed,
    Propagated { rule: u8, parent: String },
}

/// `[[n, k, d]]` with purity (when known) and provenance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QeccParams {
    pub n: usize,
    pub k: usize,
    pub d: QeccDistance,
    pub pure: Option<bool>,
    pub provenance: Provenance,
}

impl QeccParams {
    pub fn new(n: usize, k: usize, d: u32) -> Self {
        QeccParams {
            n,
            k,
            d: QeccDistance::exact(d),
            pure: None,
            provenance: Provenance::Constructed,
        }
    }

    /// `(n, k, d)` when `d` is exact.
    pub fn triple(&self) -> Option<(usize, usize, u32)> {
        match self.d {
            QeccDistance::Exact { value } => Some((self.n, self.k, value)),
            _ => None,
        }
    }
}

impl fmt::Display for QeccParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]", self.n, self.k, self.d)
    }
}

/// Result of mapping a self-orthogonal code to a quantum code.
#[derive(Clone, Debug, Serialize)]
pub struct CrssReport {
    pub params: QeccParams,
    pub primal_dim: usize,
    pub dual_dim: usize,
    /// Minimum symplectic weight over all nonzero dual codewords, when enumerated.
    pub dual_distance: Option<DistanceResult>,
    /// Dual bounds used when the dual was too large to enumerate.
    pub dual_bounds: Option<BoundReport>,
}

/// Quantum code of a binary 1-generator self-orthogonal code of index 2.
pub fn crss_map(code: &QcOneGen, budget: u64) -> Result<CrssReport> {
    crss_map_with(code, budget, &DistanceCache::new())
}

pub fn crss_map_with(code: &QcOneGen, budget: u64, cache: &DistanceCache) -> Result<CrssReport> {
    if !code.field().is_binary() {
        return Err(Error::Precondition(
            "the quantum construction is binary only".into(),
        ));
    }
    if code.ell() != 2 {
        return Err(Error::OutOfRange {
            what: "index",
            value: code.ell(),
            min: 2,
            max: 2,
        });
    }
    if !check_sso_one_gen(code).holds {
        return Err(Error::Precondition(
            "the code is not symplectic self-orthogonal".into(),
        ));
    }
    let primal = code.reduced_generator();
    let dual = symplectic_dual_basis(code);
    let mut report = crss_from_bases(&primal, &dual, budget)?;
    if report.dual_distance.is_none() {
        if let Ok(b) = theorem6_dual_bounds_with(code, budget, cache) {
            report.params.d = QeccDistance::Bounded {
                lower: b.lower.finite().unwrap_or(1).max(1),
                upper: None,
            };
            report.dual_bounds = Some(b);
        }
    }
    Ok(report)
}

/// Quantum code of an arbitrary binary self-orthogonal code given by generator rows.
pub fn crss_map_rows(rows: &Matrix, budget: u64) -> Result<CrssReport> {
    if !rows.field().is_binary() {
        return Err(Error::Precondition(
            "the quantum construction is binary only".into(),
        ));
    }
    if !gram_oracle(rows) {
        return Err(Error::Precondition(
            "the code is not symplectic self-orthogonal".into(),
        ));
    }
    let primal = rows.echelon();
    let dual = symplectic_nullspace(primal.basis()).echelon();
    crss_from_bases(&primal, &dual, budget)
}

fn crss_from_bases(primal: &Echelon, dual: &Echelon, budget: u64) -> Result<CrssReport> {
    let n = primal.basis().ncols() / 2;
    let k = n
        .checked_sub(primal.rank())
        .ok_or_else(|| Error::Internal("primal dimension exceeds n".into()))?;
    if primal.rank() + dual.rank() != 2 * n {
        return Err(Error::Internal(format!(
            "primal and dual dimensions {} + {} do not sum to {}",
            primal.rank(),
            dual.rank(),
            2 * n
        )));
    }
    let mut params = QeccParams {
        n,
        k,
        d: QeccDistance::Bounded {
            lower: 1,
            upper: None,
        },
        pure: None,
        provenance: Provenance::Constructed,
    };
    let mut dual_distance = None;
    if engine::message_count(dual.basis().field(), dual.rank(), budget).is_ok() {
        let scan = engine::scan_row_space(dual.basis(), WeightKind::Symplectic, Some(primal));
        let d = match scan.min_outside {
            Distance::Finite(d) => d,
            // dual equals primal (k = 0): fall back to the plain minimum
            Distance::Infinite => scan.min_all.finite().unwrap_or(0),
        };
        params.d = QeccDistance::exact(d);
        params.pure = Some(scan.min_outside.is_infinite() || scan.min_outside == scan.min_all);
        dual_distance = Some(DistanceResult::exact(scan.min_all, scan.enumerated));
    }
    Ok(CrssReport {
        params,
        primal_dim: primal.rank(),
        dual_dim: dual.rank(),
        dual_distance,
        dual_bounds: None,
    })
}

/// Codes obtained by one application of each applicable propagation rule:
/// `[[n,k-1,d]]`, `[[n+1,k,d]]` and `[[n-1,k+1,d-1]]`.
pub fn propagate(params: &QeccParams) -> Vec<QeccParams> {
    let parent = params.to_string();
    let child = |n, k, d, rule| QeccParams {
        n,
        k,
        d,
        pure: None,
        provenance: Provenance::Propagated {
            rule,
            parent: parent.clone(),
        },
    };
    let (n, k, d) = (params.n, params.k, params.d);
    let mut out = Vec::new();
    if k >= 1 {
        out.push(child(n, k - 1, d, 1));
    }
    if k > 0 {
        out.push(child(n + 1, k, d, 2));
    }
    if n >= 2 && d.lower() >= 2 && k + 1 <= n - 1 {
        out.push(child(n - 1, k + 1, d.minus_one(), 3));
    }
    out
}

/// Every parameter set reachable from `start` in at most `depth` rule applications
/// (starting points included), in breadth-first order without duplicates.
pub fn closure(start: &[QeccParams], depth: usize) -> Vec<QeccParams> {
    let mut seen: HashSet<(usize, usize, QeccDistance)> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for p in start {
        if seen.insert((p.n, p.k, p.d)) {
            out.push(p.clone());
            queue.push_back((p.clone(), 0));
        }
    }
    while let Some((p, level)) = queue.pop_front() {
        if level == depth {
            continue;
        }
        for c in propagate(&p) {
            if seen.insert((c.n, c.k, c.d)) {
                out.push(c.clone());
                queue.push_back((c, level + 1));
            }
        }
    }
    out
}

/// Exact `(n, k, d)` triples of [`closure`].
pub fn closure_triples(start: &[QeccParams], depth: usize) -> BTreeSet<(usize, usize, u32)> {
    closure(start, depth).iter().filter_map(|p| p.triple()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Matches,
    Exceeds,
    Below,
    UntestableAtBudget,
    /// Length or dimension differ, so the distance comparison does not apply.
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Matches => "matches",
            Verdict::Exceeds => "exceeds",
            Verdict::Below => "below",
            Verdict::UntestableAtBudget => "untestable-at-budget",
            Verdict::Mismatch => "mismatch",
        }
    }

    /// Whether the computation is consistent with the claim.
    pub fn is_ok(self) -> bool {
        matches!(
            self,
            Verdict::Matches | Verdict::Exceeds | Verdict::UntestableAtBudget
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimVerdict {
    pub claim: String,
    pub computed: String,
    pub verdict: Verdict,
}

/// Compares computed parameters with each claimed `(n, k, d)`.
pub fn claim_check(params: &QeccParams, claims: &[(usize, usize, u32)]) -> Vec<ClaimVerdict> {
    claims
        .iter()
        .map(|&(n, k, d)| {
            let verdict = if (n, k) != (params.n, params.k) {
                Verdict::Mismatch
            } else {
                match params.d {
                    QeccDistance::Exact { value } => match value.cmp(&d) {
                        std::cmp::Ordering::Equal => Verdict::Matches,
                        std::cmp::Ordering::Greater => Verdict::Exceeds,
                        std::cmp::Ordering::Less => Verdict::Below,
                    },
                    QeccDistance::Bounded { lower, upper } => {
                        if upper.is_some_and(|u| u < d) {
                            Verdict::Below
                        } else if lower > d {
                            Verdict::Exceeds
                        } else {
                            Verdict::UntestableAtBudget
                        }
                    }
                }
            };
            ClaimVerdict {
                claim: format!("[[{n},{k},{d}]]"),
                computed: params.to_string(),
                verdict,
            }
        })
        .collect()
}

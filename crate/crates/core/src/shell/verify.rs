//! Batch re-verification of the catalog.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::{Catalog, CatalogEntry, EntryCode, RecordProvenance};
use crate::bounds::{theorem4_bounds_with, theorem6_dual_bounds_with, BoundReport};
use crate::cyclic::{DistanceCache, DistanceResult, DEFAULT_BUDGET};
use crate::engine::Distance;
use crate::qcsym::{
    check_sso_multi_gen, check_sso_one_gen, gram_oracle, symplectic_distance_exhaustive,
    symplectic_dual, symplectic_dual_basis, symplectic_gram_is_zero, symplectic_nullspace,
};
use crate::qecc::{
    claim_check, closure_triples, crss_map_rows, crss_map_with, ClaimVerdict, QeccParams, Verdict,
};

/// Depth of the propagation closure used to account for derived records.
pub const CLOSURE_DEPTH: usize = 10;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Message budget for exhaustive symplectic enumerations.
    pub budget: u64,
    /// Message budget for each auxiliary cyclic distance.
    pub component_budget: u64,
    /// Compute distance bounds (the slow part for long codes).
    pub bounds: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            component_budget: DEFAULT_BUDGET,
            bounds: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub source: String,
    pub n: usize,
    pub sso: bool,
    pub sso_gram: bool,
    pub dimension: usize,
    pub claimed_dimension: usize,
    pub dimension_ok: bool,
    /// Common factor moved into `g` to meet the gcd condition (`1` when none).
    pub normalized_by: String,
    pub dual_dimension: usize,
    pub dual_consistent: bool,
    pub dual_construction: &'static str,
    pub primal_bounds: Option<BoundReport>,
    pub dual_bounds: Option<BoundReport>,
    pub primal_distance: Option<DistanceResult>,
    pub qecc: Option<QeccParams>,
    pub verdicts: Vec<ClaimVerdict>,
    pub errors: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordReport {
    pub id: String,
    pub source: String,
    pub qecc: String,
    pub provenance: RecordProvenance,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
    pub records: Vec<RecordReport>,
    pub entries_passed: usize,
    pub records_passed: usize,
    pub passed: bool,
}

/// Verifies every construction (entries and examples) and every claimed record.
pub fn verify_catalog(catalog: &Catalog, opts: &VerifyOptions) -> CatalogReport {
    let cache = DistanceCache::new();
    let all: Vec<&CatalogEntry> = catalog.entries.iter().chain(&catalog.examples).collect();
    let entries: Vec<EntryReport> = all
        .iter()
        .map(|e| verify_entry(e, opts, &cache))
        .collect();
    let records = verify_records(catalog);
    let entries_passed = entries.iter().filter(|r| r.passed).count();
    let records_passed = records.iter().filter(|r| r.ok).count();
    CatalogReport {
        passed: entries_passed == entries.len() && records_passed == records.len(),
        entries,
        records,
        entries_passed,
        records_passed,
    }
}

/// Constructed records must match their anchor's claim; derived ones must lie in
/// the propagation closure of the constructed ones.
pub fn verify_records(catalog: &Catalog) -> Vec<RecordReport> {
    let anchors: Vec<QeccParams> = catalog
        .records
        .iter()
        .filter(|r| matches!(r.provenance, RecordProvenance::Constructed { .. }))
        .map(|r| QeccParams::new(r.qecc.0, r.qecc.1, r.qecc.2))
        .collect();
    let reachable: BTreeSet<(usize, usize, u32)> = closure_triples(&anchors, CLOSURE_DEPTH);
    catalog
        .records
        .iter()
        .map(|r| {
            let (n, k, d) = r.qecc;
            let (ok, detail) = match &r.provenance {
                RecordProvenance::Constructed { anchor } => match catalog.entry(anchor) {
                    Some(e) if e.claimed_qecc.contains(&r.qecc) => {
                        (true, format!("claimed by {anchor}"))
                    }
                    _ => (false, format!("anchor {anchor} does not claim it")),
                },
                RecordProvenance::Propagated => {
                    if reachable.contains(&r.qecc) {
                        (true, format!("reached within {CLOSURE_DEPTH} propagation steps"))
                    } else {
                        (false, "not reachable by propagation".to_string())
                    }
                }
            };
            RecordReport {
                id: r.id.clone(),
                source: r.source.clone(),
                qecc: format!("[[{n},{k},{d}]]"),
                provenance: r.provenance.clone(),
                ok,
                detail,
            }
        })
        .collect()
}

pub fn verify_entry(entry: &CatalogEntry, opts: &VerifyOptions, cache: &DistanceCache) -> EntryReport {
    let mut report = EntryReport {
        id: entry.id.clone(),
        source: entry.source.clone(),
        n: entry.n,
        sso: false,
        sso_gram: false,
        dimension: 0,
        claimed_dimension: entry.claimed_code.1,
        dimension_ok: false,
        normalized_by: "1".into(),
        dual_dimension: 0,
        dual_consistent: false,
        dual_construction: "null-space",
        primal_bounds: None,
        dual_bounds: None,
        primal_distance: None,
        qecc: None,
        verdicts: Vec::new(),
        errors: Vec::new(),
        passed: false,
    };
    let code = match entry.code() {
        Ok(c) => c,
        Err(e) => {
            report.errors.push(e.to_string());
            return report;
        }
    };
    let (primal, dual, sso) = match &code {
        EntryCode::OneGen { code, moved } => {
            report.normalized_by = moved.to_string();
            report.dual_construction = if symplectic_dual(code).is_ok() {
                "two-generator"
            } else {
                "null-space"
            };
            (
                code.reduced_generator(),
                symplectic_dual_basis(code),
                check_sso_one_gen(code).holds,
            )
        }
        EntryCode::TwoGen(code) => {
            let primal = code.reduced_generator();
            let dual = symplectic_nullspace(primal.basis()).echelon();
            (primal, dual, check_sso_multi_gen(code).holds)
        }
    };
    report.sso = sso;
    report.sso_gram = gram_oracle(primal.basis());
    report.dimension = primal.rank();
    report.dimension_ok = report.dimension == entry.claimed_code.1;
    report.dual_dimension = dual.rank();
    report.dual_consistent = primal.rank() + dual.rank() == 2 * entry.n
        && symplectic_gram_is_zero(primal.basis(), dual.basis());
    if let Some((_, k, _)) = entry.claimed_dual {
        if k != dual.rank() {
            report
                .errors
                .push(format!("dual dimension {} differs from claimed {k}", dual.rank()));
        }
    }
    if sso != report.sso_gram {
        report
            .errors
            .push("divisibility test and Gram check disagree".into());
    }

    if let Ok(d) = symplectic_distance_exhaustive(primal.basis(), opts.budget) {
        report.primal_distance = Some(d);
        if let Some(claim) = entry.claimed_code_distance {
            if d.value != Distance::Finite(claim) {
                report
                    .errors
                    .push(format!("symplectic distance {} differs from claimed {claim}", d.value));
            }
        }
    }

    if opts.bounds {
        if let EntryCode::OneGen { code, .. } = &code {
            match theorem4_bounds_with(code, opts.component_budget, cache) {
                Ok(b) => report.primal_bounds = Some(b),
                Err(e) => report.errors.push(format!("primal bounds: {e}")),
            }
            if let Ok(b) = theorem6_dual_bounds_with(code, opts.component_budget, cache) {
                if let Some((_, _, d)) = entry.claimed_dual {
                    if b.upper < Distance::Finite(d) {
                        report.verdicts.push(ClaimVerdict {
                            claim: format!("dual distance {d}"),
                            computed: format!("at most {}", b.upper),
                            verdict: Verdict::Below,
                        });
                    }
                }
                report.dual_bounds = Some(b);
            }
        }
    }

    if sso && entry.field.is_binary() {
        let crss = match &code {
            EntryCode::OneGen { code, .. } if opts.bounds => {
                crss_map_with(code, opts.budget, cache)
            }
            EntryCode::OneGen { code, .. } => crss_map_rows(&code.generator_matrix(), opts.budget),
            EntryCode::TwoGen(code) => crss_map_rows(&code.generator_matrix(), opts.budget),
        };
        match crss {
            Ok(c) => {
                report.verdicts.extend(claim_check(&c.params, &entry.claimed_qecc));
                report.qecc = Some(c.params);
            }
            Err(e) => report.errors.push(format!("quantum code: {e}")),
        }
    }

    let sso_expected = entry.claims_sso.unwrap_or(sso);
    report.passed = report.errors.is_empty()
        && sso == sso_expected
        && report.dimension_ok
        && report.dual_consistent
        && report.verdicts.iter().all(|v| v.verdict.is_ok());
    report
}

/// Verifies entries in parallel (used when bounds are off and entries are cheap).
pub fn verify_entries_parallel(catalog: &Catalog, opts: &VerifyOptions) -> Vec<EntryReport> {
    let cache = DistanceCache::new();
    catalog
        .entries
        .par_iter()
        .chain(catalog.examples.par_iter())
        .map(|e| verify_entry(e, opts, &cache))
        .collect()
}

//! Seeded random search for self-orthogonal index-2 codes with a fixed `g`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::notation::emit_abbrev;
use crate::bounds::{theorem4_bounds_with, theorem6_dual_bounds_with, BoundKind};
use crate::cyclic::{DistanceCache, DEFAULT_BUDGET};
use crate::engine::Distance;
use crate::error::{Error, Result};
use crate::gfpoly::{plain_gcd, DivisorPoly, PlainPoly, RingElement};
use crate::qcsym::{check_sso_one_gen, gram_oracle, QcOneGen};
use crate::qecc::{crss_map_with, QeccParams};

/// Attempts at drawing `f_0` before a trial is abandoned.
const MAX_REJECTIONS: u32 = 1000;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub g: DivisorPoly,
    pub trials: u64,
    pub seed: u64,
    /// Drop candidates failing the divisibility criterion.
    pub require_sso: bool,
    /// Keep only hits whose lower bound reaches this value.
    pub min_lower: Option<u32>,
    /// Confirm quantum parameters exactly when the dual fits this budget.
    pub exact_budget: Option<u64>,
    /// Budget for each auxiliary cyclic distance.
    pub component_budget: u64,
}

impl SearchConfig {
    pub fn new(g: DivisorPoly, trials: u64, seed: u64) -> Self {
        SearchConfig {
            g,
            trials,
            seed,
            require_sso: true,
            min_lower: None,
            exact_budget: None,
            component_budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub trial: u64,
    pub f0: String,
    pub f1: String,
    pub sso: bool,
    /// Which bound scored the hit: the dual one when it applies, else the primal one.
    pub scored_by: BoundKind,
    pub lower: Distance,
    pub upper: Distance,
    pub qecc: Option<QeccParams>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub trials: u64,
    pub hits: Vec<SearchHit>,
    /// Draws of `f_0` rejected by the gcd condition, over all trials.
    pub rejected_draws: u64,
    /// Trials abandoned after too many rejections.
    pub abandoned: u64,
    pub failed_sso: u64,
}

enum Outcome {
    Hit(Box<SearchHit>, u64),
    Filtered(u64),
    NotSso(u64),
    Abandoned(u64),
}

/// Runs `cfg.trials` independent seeded trials; the result depends only on the config.
pub fn search(cfg: &SearchConfig) -> Result<SearchReport> {
    if cfg.trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let cache = DistanceCache::new();
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(cfg, t, &cache))
        .collect::<Result<_>>()?;
    let mut report = SearchReport {
        trials: cfg.trials,
        hits: Vec::new(),
        rejected_draws: 0,
        abandoned: 0,
        failed_sso: 0,
    };
    for o in outcomes {
        match o {
            Outcome::Hit(h, r) => {
                report.rejected_draws += r;
                report.hits.push(*h);
            }
            Outcome::Filtered(r) => report.rejected_draws += r,
            Outcome::NotSso(r) => {
                report.rejected_draws += r;
                report.failed_sso += 1;
            }
            Outcome::Abandoned(r) => {
                report.rejected_draws += r;
                report.abandoned += 1;
            }
        }
    }
    Ok(report)
}

fn random_element(rng: &mut ChaCha8Rng, g: &DivisorPoly) -> RingElement {
    let f = g.field();
    let coeffs: Vec<u8> = (0..g.n()).map(|_| rng.gen_range(0..f.p())).collect();
    RingElement::from_coeffs(f, g.n(), &coeffs)
}

fn run_trial(cfg: &SearchConfig, trial: u64, cache: &DistanceCache) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial);
    let g = &cfg.g;
    let n = g.n();
    let h = g.cofactor();
    let f1 = random_element(&mut rng, g);
    let base = plain_gcd(h.poly(), &f1.to_plain())?;
    let mut rejected = 0u64;
    let f0 = loop {
        let f0 = random_element(&mut rng, g);
        if plain_gcd(&base, &f0.to_plain())?.is_one() {
            break f0;
        }
        rejected += 1;
        if rejected >= MAX_REJECTIONS as u64 {
            return Ok(Outcome::Abandoned(rejected));
        }
    };
    let code = QcOneGen::new(g.poly(), n, vec![f0.clone(), f1.clone()])?;
    let sso = check_sso_one_gen(&code).holds;
    if cfg.require_sso && !sso {
        return Ok(Outcome::NotSso(rejected));
    }
    if sso && !gram_oracle(&code.generator_matrix()) {
        return Err(Error::Internal(format!(
            "trial {trial}: divisibility test and Gram check disagree"
        )));
    }
    let bounds = match theorem6_dual_bounds_with(&code, cfg.component_budget, cache) {
        Ok(b) => b,
        Err(Error::Precondition(_)) => theorem4_bounds_with(&code, cfg.component_budget, cache)?,
        Err(e) => return Err(e),
    };
    if let Some(min) = cfg.min_lower {
        if bounds.lower < Distance::Finite(min) {
            return Ok(Outcome::Filtered(rejected));
        }
    }
    let qecc = match cfg.exact_budget {
        Some(b) if sso && g.field().is_binary() => Some(crss_map_with(&code, b, cache)?.params),
        _ => None,
    };
    Ok(Outcome::Hit(
        Box::new(SearchHit {
            trial,
            f0: emit_abbrev(f0.coeffs()),
            f1: emit_abbrev(f1.coeffs()),
            sso,
            scored_by: bounds.kind,
            lower: bounds.lower,
            upper: bounds.upper,
            qecc,
        }),
        rejected,
    ))
}

/// Rebuilds the code of a hit.
pub fn hit_code(cfg: &SearchConfig, hit: &SearchHit) -> Result<QcOneGen> {
    let f = cfg.g.field();
    let parse = |s: &str| -> Result<RingElement> {
        let c = super::notation::parse_abbrev(s, f)?;
        Ok(RingElement::from_plain(&PlainPoly::from_coeffs(f, c), cfg.g.n()))
    };
    QcOneGen::new(cfg.g.poly(), cfg.g.n(), vec![parse(&hit.f0)?, parse(&hit.f1)?])
}

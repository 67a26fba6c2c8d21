use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qcsso::bounds::{theorem4_bounds, theorem6_dual_bounds, BoundReport};
use qcsso::cyclic::DEFAULT_BUDGET;
use qcsso::gfpoly::{DivisorPoly, PlainPoly, PrimeField, RingElement};
use qcsso::qcsym::{
    check_sso_one_gen, gram_oracle, symplectic_distance_exhaustive, symplectic_dual, symplectic_dual_basis,
    QcOneGen,
};
use qcsso::qecc::{claim_check, crss_map, ClaimVerdict, CrssReport};
use qcsso::shell::{
    emit_abbrev, env_budget, load_catalog, parse_poly_text, search, verify_catalog, Construction,
    SearchConfig, SearchHit, VerifyOptions,
};
use qcsso::{DistanceResult, Error};

/// Symplectic self-orthogonal quasi-cyclic codes of index 2.
///
/// Polynomials are given in run-length notation (`101^3` is 1 + x^2 + x^3 + x^4)
/// or as comma-separated ascending coefficients. Exit status: 0 when every check
/// passed, 1 when a verification failed, 2 on usage, parse or input errors.
#[derive(Parser)]
#[command(name = "qcsso", version)]
struct Cli {
    /// Field size (2, 3, 5 or 7)
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    /// Block length n (the code has length 2n)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Message budget for exhaustive enumerations [default: QCS_BUDGET or 2^28]
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Emit one JSON object per line
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Generator polynomial g (a divisor of x^n - 1)
    #[arg(long)]
    g: Option<String>,
    /// First coefficient polynomial f_0
    #[arg(long)]
    f0: Option<String>,
    /// Second coefficient polynomial f_1
    #[arg(long)]
    f1: Option<String>,
    /// Take q, n, g, f_0 and f_1 from a one-generator catalog entry (id or source, e.g. table2:1)
    #[arg(long, conflicts_with_all = ["g", "f0", "f1"])]
    entry: Option<String>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Side {
    Primal,
    Dual,
}

#[derive(Subcommand)]
enum Command {
    /// Test symplectic self-orthogonality by divisibility, cross-checked by the Gram matrix
    CheckSso(CodeArgs),
    /// Bounds on the minimum symplectic distance of the code (or of its dual with --dual)
    Bounds {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        dual: bool,
    },
    /// Symplectic dual: generators, dimension and distance bounds
    Dual(CodeArgs),
    /// Exact minimum symplectic distance within the budget
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Side::Primal)]
        of: Side,
    },
    /// Quantum code parameters of a binary self-orthogonal code
    Qecc {
        #[command(flatten)]
        code: CodeArgs,
        /// Claimed parameters n,k,d to compare against
        #[arg(long)]
        claim: Option<String>,
    },
    /// Re-verify every catalog construction and claimed record
    VerifyCatalog {
        /// Skip the distance bounds (fast structural check)
        #[arg(long)]
        no_bounds: bool,
        /// Verify only this entry
        #[arg(long)]
        entry: Option<String>,
    },
    /// Seeded random search for self-orthogonal codes with a fixed g
    Search {
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Keep only hits whose lower bound reaches this value
        #[arg(long)]
        min_lower: Option<u32>,
        /// Confirm quantum parameters exactly within this budget
        #[arg(long)]
        exact_budget: Option<u64>,
        /// Keep candidates that are not self-orthogonal
        #[arg(long)]
        allow_non_sso: bool,
    },
    /// Expand run-length notation
    Parse { text: String },
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    q: u32,
    n: Option<usize>,
    budget: u64,
    json: bool,
    seed: u64,
}

impl Ctx {
    fn field(&self) -> Result<PrimeField, Failure> {
        Ok(PrimeField::new(self.q)?)
    }

    fn n(&self) -> Result<usize, Failure> {
        match self.n {
            Some(n) if n >= 1 => Ok(n),
            Some(_) => Err(Failure::Usage("--n must be at least 1".into())),
            None => Err(Failure::Usage("--n is required".into())),
        }
    }

    /// JSON line or human text.
    fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string(value).expect("serializable report"));
        } else {
            println!("{}", human());
        }
    }
}

fn poly(text: &str, field: PrimeField) -> Result<PlainPoly, Failure> {
    Ok(PlainPoly::from_coeffs(field, parse_poly_text(text, field)?))
}

/// The code described by the arguments, with any common factor moved into `g`.
fn build_code(ctx: &Ctx, args: &CodeArgs) -> Result<(QcOneGen, PlainPoly), Failure> {
    if let Some(id) = &args.entry {
        let cat = load_catalog()?;
        let e = cat
            .entry(id)
            .or_else(|| cat.by_source(id))
            .ok_or_else(|| Failure::Usage(format!("unknown catalog entry {id}")))?;
        let Construction::OneGen { g, f0, f1 } = &e.construction else {
            return Err(Failure::Usage(format!("{id} is a two-generator entry")));
        };
        return Ok(QcOneGen::normalized(g, e.n, vec![f0.clone(), f1.clone()])?);
    }
    let field = ctx.field()?;
    let n = ctx.n()?;
    let need = |name: &str, v: &Option<String>| {
        v.clone()
            .ok_or_else(|| Failure::Usage(format!("--{name} is required (or use --entry)")))
    };
    let g = poly(&need("g", &args.g)?, field)?;
    let f0 = RingElement::from_plain(&poly(&need("f0", &args.f0)?, field)?, n);
    let f1 = RingElement::from_plain(&poly(&need("f1", &args.f1)?, field)?, n);
    Ok(QcOneGen::normalized(&g, n, vec![f0, f1])?)
}

#[derive(Serialize)]
struct CodeHeader {
    q: u8,
    n: usize,
    g: String,
    f0: String,
    f1: String,
    /// Common factor of `f_0`, `f_1` and `h` moved into `g` (`1` when none).
    normalized_by: String,
    dimension: usize,
}

impl CodeHeader {
    fn of(code: &QcOneGen, moved: &PlainPoly) -> Self {
        CodeHeader {
            q: code.field().p(),
            n: code.n(),
            g: code.g().poly().to_string(),
            f0: code.f()[0].to_plain().to_string(),
            f1: code.f()[1].to_plain().to_string(),
            normalized_by: moved.to_string(),
            dimension: code.dim(),
        }
    }

    fn line(&self) -> String {
        let mut s = format!("[{},{}]_{} code, g = {}", 2 * self.n, self.dimension, self.q, self.g);
        if self.normalized_by != "1" {
            s.push_str(&format!(" (common factor {} moved into g)", self.normalized_by));
        }
        s
    }
}

#[derive(Serialize)]
struct CheckSsoOut {
    command: &'static str,
    code: CodeHeader,
    sso: bool,
    gram: bool,
    remainder: Option<String>,
}

fn check_sso(ctx: &Ctx, args: &CodeArgs) -> Outcome {
    let (code, moved) = build_code(ctx, args)?;
    let check = check_sso_one_gen(&code);
    let gram = gram_oracle(&code.generator_matrix());
    if gram != check.holds {
        return Err(Failure::Verification("divisibility test and Gram check disagree".into()));
    }
    let out = CheckSsoOut {
        command: "check-sso",
        code: CodeHeader::of(&code, &moved),
        sso: check.holds,
        gram,
        remainder: check.remainder.as_deref().map(emit_abbrev),
    };
    ctx.emit(&out, || {
        let verdict = if out.sso {
            "symplectic self-orthogonal: true".to_string()
        } else {
            format!(
                "symplectic self-orthogonal: false (remainder {})",
                out.remainder.as_deref().unwrap_or("?")
            )
        };
        format!("{}\n{verdict}", out.code.line())
    });
    Ok(out.sso)
}

#[derive(Serialize)]
struct BoundsOut {
    command: &'static str,
    code: CodeHeader,
    #[serde(flatten)]
    report: BoundReport,
}

fn describe_bounds(b: &BoundReport) -> String {
    let mut s = format!(
        "{} bounds: {} <= d_s <= {} (case {}, D = {})",
        format!("{:?}", b.kind).to_lowercase(),
        b.lower,
        b.upper,
        b.case_tag.as_str(),
        b.d_value
    );
    for c in &b.components {
        s.push_str(&format!(
            "\n  {}: [{},{},{}] generated by {}",
            c.name, c.n, c.dim, c.distance.value, c.generator
        ));
    }
    for t in &b.s_set {
        s.push_str(&format!(
            "\n  alpha = {}: gcd {} gives distance {}",
            t.alpha, t.gcd, t.distance.value
        ));
    }
    for note in &b.notes {
        s.push_str(&format!("\n  note: {note}"));
    }
    s
}

fn bounds(ctx: &Ctx, args: &CodeArgs, dual: bool) -> Outcome {
    let (code, moved) = build_code(ctx, args)?;
    let report = if dual {
        theorem6_dual_bounds(&code)?
    } else {
        theorem4_bounds(&code)?
    };
    let out = BoundsOut {
        command: "bounds",
        code: CodeHeader::of(&code, &moved),
        report,
    };
    ctx.emit(&out, || format!("{}\n{}", out.code.line(), describe_bounds(&out.report)));
    Ok(true)
}

#[derive(Serialize)]
struct DualOut {
    command: &'static str,
    code: CodeHeader,
    dual_dimension: usize,
    /// `two-generator` when `(bar f_0, bar f_1), (0, g^perp)` generate the dual, else `null-space`.
    construction: &'static str,
    generators: Option<[[String; 2]; 2]>,
    bounds: Option<BoundReport>,
    bounds_unavailable: Option<String>,
}

fn dual(ctx: &Ctx, args: &CodeArgs) -> Outcome {
    let (code, moved) = build_code(ctx, args)?;
    let two = symplectic_dual(&code);
    let dim = symplectic_dual_basis(&code).rank();
    let generators = two.as_ref().ok().map(|d| {
        let s = |r: &RingElement| r.to_plain().to_string();
        [[s(&d.gen1.0), s(&d.gen1.1)], [s(&d.gen2.0), s(&d.gen2.1)]]
    });
    let (bounds, bounds_unavailable) = match theorem6_dual_bounds(&code) {
        Ok(b) => (Some(b), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let out = DualOut {
        command: "dual",
        code: CodeHeader::of(&code, &moved),
        dual_dimension: dim,
        construction: if two.is_ok() { "two-generator" } else { "null-space" },
        generators,
        bounds,
        bounds_unavailable,
    };
    ctx.emit(&out, || {
        let mut s = format!(
            "{}\ndual [{},{}] ({} construction)",
            out.code.line(),
            2 * code.n(),
            out.dual_dimension,
            out.construction
        );
        if let Some([[a, b], [c, d]]) = &out.generators {
            s.push_str(&format!("\n  generators ({a}, {b}) and ({c}, {d})"));
        }
        match (&out.bounds, &out.bounds_unavailable) {
            (Some(b), _) => s.push_str(&format!("\n{}", describe_bounds(b))),
            (None, Some(why)) => s.push_str(&format!("\nno dual bounds: {why}")),
            _ => {}
        }
        s
    });
    Ok(true)
}

#[derive(Serialize)]
struct DistanceOut {
    command: &'static str,
    code: CodeHeader,
    of: Side,
    dimension: usize,
    distance: DistanceResult,
}

fn distance(ctx: &Ctx, args: &CodeArgs, of: Side) -> Outcome {
    let (code, moved) = build_code(ctx, args)?;
    let basis = match of {
        Side::Primal => code.reduced_generator(),
        Side::Dual => symplectic_dual_basis(&code),
    };
    let d = symplectic_distance_exhaustive(basis.basis(), ctx.budget)?;
    let out = DistanceOut {
        command: "distance",
        code: CodeHeader::of(&code, &moved),
        of,
        dimension: basis.rank(),
        distance: d,
    };
    ctx.emit(&out, || {
        format!(
            "{}\nminimum symplectic distance of the {} [{},{}]: {} ({} messages)",
            out.code.line(),
            if matches!(of, Side::Primal) { "code" } else { "dual" },
            2 * code.n(),
            out.dimension,
            d.value,
            d.enumerated
        )
    });
    Ok(true)
}

#[derive(Serialize)]
struct QeccOut {
    command: &'static str,
    code: CodeHeader,
    qecc: String,
    report: CrssReport,
    verdicts: Vec<ClaimVerdict>,
}

fn parse_claim(text: &str) -> Result<(usize, usize, u32), Failure> {
    let parts: Vec<&str> = text.trim_matches(|c| c == '[' || c == ']').split(',').collect();
    let bad = || Failure::Usage(format!("claim {text:?} is not n,k,d"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    Ok((num(parts[0])?, num(parts[1])?, num(parts[2])? as u32))
}

fn qecc(ctx: &Ctx, args: &CodeArgs, claim: Option<&str>) -> Outcome {
    let (code, moved) = build_code(ctx, args)?;
    let claims = match claim {
        Some(c) => vec![parse_claim(c)?],
        None => Vec::new(),
    };
    let report = crss_map(&code, ctx.budget)?;
    let verdicts = claim_check(&report.params, &claims);
    let ok = verdicts.iter().all(|v| v.verdict.is_ok());
    let out = QeccOut {
        command: "qecc",
        code: CodeHeader::of(&code, &moved),
        qecc: report.params.to_string(),
        report,
        verdicts,
    };
    ctx.emit(&out, || {
        let mut s = format!("{}\nquantum code {}", out.code.line(), out.qecc);
        if let Some(pure) = out.report.params.pure {
            s.push_str(if pure { " (pure)" } else { " (impure)" });
        }
        if let Some(b) = &out.report.dual_bounds {
            s.push_str(&format!(
                "\n  dual too large to enumerate; dual distance in [{}, {}]",
                b.lower, b.upper
            ));
        }
        for v in &out.verdicts {
            s.push_str(&format!("\n  claim {}: {} (computed {})", v.claim, v.verdict.as_str(), v.computed));
        }
        s
    });
    Ok(ok)
}

#[derive(Serialize)]
struct VerifySummary {
    command: &'static str,
    entries: usize,
    entries_passed: usize,
    records: usize,
    records_passed: usize,
    passed: bool,
}

fn verify(ctx: &Ctx, no_bounds: bool, only: Option<&str>) -> Outcome {
    let mut cat = load_catalog()?;
    if let Some(id) = only {
        let keep = |e: &qcsso::shell::CatalogEntry| e.id == id || e.source == id;
        cat.entries.retain(keep);
        cat.examples.retain(keep);
        if cat.entries.is_empty() && cat.examples.is_empty() {
            return Err(Failure::Usage(format!("unknown catalog entry {id}")));
        }
    }
    let opts = VerifyOptions {
        budget: ctx.budget,
        component_budget: ctx.budget,
        bounds: !no_bounds,
    };
    let report = verify_catalog(&cat, &opts);
    for e in &report.entries {
        ctx.emit(e, || {
            let mut s = format!(
                "{} {} ({}): [{},{}] sso {}",
                if e.passed { "PASS" } else { "FAIL" },
                e.id,
                e.source,
                2 * e.n,
                e.dimension,
                e.sso
            );
            if let Some(q) = &e.qecc {
                s.push_str(&format!(", quantum {q}"));
            }
            if let Some(b) = &e.primal_bounds {
                s.push_str(&format!(", d_s in [{}, {}]", b.lower, b.upper));
            }
            if let Some(d) = &e.primal_distance {
                s.push_str(&format!(", d_s = {}", d.value));
            }
            for v in &e.verdicts {
                s.push_str(&format!(", claim {} {}", v.claim, v.verdict.as_str()));
            }
            for err in &e.errors {
                s.push_str(&format!(", error: {err}"));
            }
            s
        });
    }
    if only.is_none() {
        for r in &report.records {
            ctx.emit(r, || {
                format!("{} {} {}: {}", if r.ok { "PASS" } else { "FAIL" }, r.id, r.qecc, r.detail)
            });
        }
    }
    let records = if only.is_none() { report.records.len() } else { 0 };
    let records_passed = if only.is_none() { report.records_passed } else { 0 };
    let passed = report.entries_passed == report.entries.len() && records_passed == records;
    let summary = VerifySummary {
        command: "verify-catalog",
        entries: report.entries.len(),
        entries_passed: report.entries_passed,
        records,
        records_passed,
        passed,
    };
    ctx.emit(&summary, || {
        format!(
            "{} of {} entries and {} of {} records passed",
            summary.entries_passed, summary.entries, summary.records_passed, summary.records
        )
    });
    Ok(passed)
}

#[derive(Serialize)]
struct SearchSummary {
    command: &'static str,
    trials: u64,
    hits: usize,
    rejected_draws: u64,
    abandoned: u64,
    failed_sso: u64,
}

fn run_search(
    ctx: &Ctx,
    g: &str,
    trials: u64,
    min_lower: Option<u32>,
    exact_budget: Option<u64>,
    allow_non_sso: bool,
) -> Outcome {
    let field = ctx.field()?;
    let n = ctx.n()?;
    let g = DivisorPoly::new(&poly(g, field)?, n)?;
    let mut cfg = SearchConfig::new(g, trials, ctx.seed);
    cfg.require_sso = !allow_non_sso;
    cfg.min_lower = min_lower;
    cfg.exact_budget = exact_budget;
    cfg.component_budget = ctx.budget;
    let report = search(&cfg)?;
    for hit in &report.hits {
        ctx.emit(hit, || describe_hit(hit));
    }
    let summary = SearchSummary {
        command: "search",
        trials: report.trials,
        hits: report.hits.len(),
        rejected_draws: report.rejected_draws,
        abandoned: report.abandoned,
        failed_sso: report.failed_sso,
    };
    ctx.emit(&summary, || {
        format!(
            "{} hits in {} trials ({} not self-orthogonal, {} gcd rejections, {} abandoned)",
            summary.hits, summary.trials, summary.failed_sso, summary.rejected_draws, summary.abandoned
        )
    });
    Ok(true)
}

fn describe_hit(hit: &SearchHit) -> String {
    let mut s = format!(
        "trial {}: f0 = {}, f1 = {}, sso {}, {:?} bounds [{}, {}]",
        hit.trial, hit.f0, hit.f1, hit.sso, hit.scored_by, hit.lower, hit.upper
    );
    if let Some(q) = &hit.qecc {
        s.push_str(&format!(", quantum {q}"));
    }
    s
}

#[derive(Serialize)]
struct ParseOut<'a> {
    command: &'static str,
    input: &'a str,
    coefficients: Vec<u8>,
    polynomial: String,
    canonical: String,
}

fn parse(ctx: &Ctx, text: &str) -> Outcome {
    let field = ctx.field()?;
    let coefficients = parse_poly_text(text, field)?;
    let out = ParseOut {
        command: "parse",
        input: text,
        polynomial: PlainPoly::from_coeffs(field, coefficients.clone()).to_string(),
        canonical: emit_abbrev(&coefficients),
        coefficients,
    };
    ctx.emit(&out, || out.polynomial.clone());
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        q: cli.q,
        n: cli.n,
        budget: cli.budget.unwrap_or_else(|| env_budget(DEFAULT_BUDGET)),
        json: cli.json,
        seed: cli.seed,
    };
    match &cli.command {
        Command::CheckSso(a) => check_sso(&ctx, a),
        Command::Bounds { code, dual: d } => bounds(&ctx, code, *d),
        Command::Dual(a) => dual(&ctx, a),
        Command::Distance { code, of } => distance(&ctx, code, *of),
        Command::Qecc { code, claim } => qecc(&ctx, code, claim.as_deref()),
        Command::VerifyCatalog { no_bounds, entry } => verify(&ctx, *no_bounds, entry.as_deref()),
        Command::Search {
            g,
            trials,
            min_lower,
            exact_budget,
            allow_non_sso,
        } => run_search(&ctx, g, *trials, *min_lower, *exact_budget, *allow_non_sso),
        Command::Parse { text } => parse(&ctx, text),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

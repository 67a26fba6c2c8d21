//! The packaged catalog of constructions and claimed quantum code records.

use serde::{Deserialize, Serialize};

use super::notation::parse_abbrev;
use crate::error::{Error, Result};
use crate::gfpoly::{DivisorPoly, PlainPoly, PrimeField, RingElement};
use crate::qcsym::{QcMultiGen, QcOneGen};

const CATALOG_JSON: &str = include_str!("../../data/catalog.json");

#[derive(Deserialize)]
struct RawCatalog {
    version: u32,
    entries: Vec<RawEntry>,
    examples: Vec<RawEntry>,
    records: Vec<RawRecord>,
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    kind: String,
    source: String,
    q: u32,
    n: usize,
    ell: usize,
    g: Option<String>,
    f0: Option<String>,
    f1: Option<String>,
    g1: Option<String>,
    g2: Option<String>,
    f: Option<String>,
    code: Vec<usize>,
    dual: Option<Vec<usize>>,
    qecc: Vec<[usize; 3]>,
    #[serde(default)]
    sso: Option<bool>,
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    source: String,
    qecc: [usize; 3],
    previous: Option<[usize; 3]>,
    provenance: String,
    anchor: Option<String>,
}

/// Polynomials of a construction, kept alongside their notation as stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Generator `(g f_0, g f_1)`.
    OneGen {
        g: PlainPoly,
        f0: RingElement,
        f1: RingElement,
    },
    /// Generators `(g_1 f, g_1)` and `(g_2, g_2 f)`.
    TwoGen {
        g1: PlainPoly,
        g2: PlainPoly,
        f: RingElement,
    },
}

/// The code an entry describes, ready for the library operations.
#[derive(Clone, Debug)]
pub enum EntryCode {
    /// Normalized so that the gcd condition holds; `moved` is the factor shifted into `g`.
    OneGen { code: QcOneGen, moved: PlainPoly },
    TwoGen(QcMultiGen),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Notation {
    pub label: &'static str,
    pub text: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub source: String,
    pub field: PrimeField,
    pub n: usize,
    pub ell: usize,
    pub construction: Construction,
    pub notation: Vec<Notation>,
    /// Claimed `[2n, k]`.
    pub claimed_code: (usize, usize),
    /// Claimed minimum symplectic distance of the code itself, when stated.
    pub claimed_code_distance: Option<u32>,
    /// Claimed dual `[2n, k', d]`.
    pub claimed_dual: Option<(usize, usize, u32)>,
    pub claimed_qecc: Vec<(usize, usize, u32)>,
    /// Whether self-orthogonality is claimed (`None` when the source does not say).
    pub claims_sso: Option<bool>,
}

impl CatalogEntry {
    pub fn code(&self) -> Result<EntryCode> {
        let n = self.n;
        match &self.construction {
            Construction::OneGen { g, f0, f1 } => {
                let (code, moved) = QcOneGen::normalized(g, n, vec![f0.clone(), f1.clone()])?;
                Ok(EntryCode::OneGen { code, moved })
            }
            Construction::TwoGen { g1, g2, f } => {
                let one = RingElement::one(self.field, n);
                let a = QcOneGen::new(g1, n, vec![f.clone(), one.clone()])?;
                let b = QcOneGen::new(g2, n, vec![one, f.clone()])?;
                Ok(EntryCode::TwoGen(QcMultiGen::new(vec![a, b])?))
            }
        }
    }

    pub fn is_one_gen(&self) -> bool {
        matches!(self.construction, Construction::OneGen { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum RecordProvenance {
    Constructed { anchor: String },
    Propagated,
}

/// A claimed record quantum code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    pub source: String,
    pub qecc: (usize, usize, u32),
    pub previous: Option<(usize, usize, u32)>,
    pub provenance: RecordProvenance,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub version: u32,
    pub entries: Vec<CatalogEntry>,
    /// Worked examples, some of which are not self-orthogonal.
    pub examples: Vec<CatalogEntry>,
    pub records: Vec<ClaimRecord>,
}

impl Catalog {
    pub fn entry(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().chain(&self.examples).find(|e| e.id == id)
    }

    pub fn by_source(&self, source: &str) -> Option<&CatalogEntry> {
        self.entries
            .iter()
            .chain(&self.examples)
            .find(|e| e.source == source)
    }
}

/// Loads and validates the packaged catalog.
pub fn load_catalog() -> Result<Catalog> {
    load_catalog_from(CATALOG_JSON)
}

/// Loads and validates a catalog document.
pub fn load_catalog_from(text: &str) -> Result<Catalog> {
    let raw: RawCatalog = serde_json::from_str(text).map_err(|e| Error::Catalog {
        entry: "<document>".into(),
        reason: e.to_string(),
    })?;
    let entries = raw
        .entries
        .into_iter()
        .map(|e| convert_entry(e, true))
        .collect::<Result<Vec<_>>>()?;
    let examples = raw
        .examples
        .into_iter()
        .map(|e| convert_entry(e, false))
        .collect::<Result<Vec<_>>>()?;
    let records = raw
        .records
        .into_iter()
        .map(|r| {
            let bad = |reason: String| Error::Catalog {
                entry: r.id.clone(),
                reason,
            };
            let provenance = match (r.provenance.as_str(), &r.anchor) {
                ("constructed", Some(a)) => {
                    if !entries.iter().any(|e| &e.id == a) {
                        return Err(bad(format!("unknown anchor {a}")));
                    }
                    RecordProvenance::Constructed { anchor: a.clone() }
                }
                ("propagated", None) => RecordProvenance::Propagated,
                (p, _) => return Err(bad(format!("bad provenance {p}"))),
            };
            let triple = |t: [usize; 3]| (t[0], t[1], t[2] as u32);
            Ok(ClaimRecord {
                id: r.id.clone(),
                source: r.source.clone(),
                qecc: triple(r.qecc),
                previous: r.previous.map(triple),
                provenance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalog {
        version: raw.version,
        entries,
        examples,
        records,
    })
}

fn convert_entry(e: RawEntry, default_sso: bool) -> Result<CatalogEntry> {
    let id = e.id.clone();
    let bad = |reason: String| Error::Catalog {
        entry: id.clone(),
        reason,
    };
    let field = PrimeField::new(e.q).map_err(|err| bad(err.to_string()))?;
    let n = e.n;
    if e.ell != 2 {
        return Err(bad(format!("index {} is not supported", e.ell)));
    }
    let mut notation = Vec::new();
    let mut poly = |label: &'static str, text: &Option<String>| -> Result<PlainPoly> {
        let text = text
            .as_ref()
            .ok_or_else(|| bad(format!("missing polynomial {label}")))?;
        let coeffs = parse_abbrev(text, field).map_err(|err| bad(format!("{label}: {err}")))?;
        if coeffs.len() > n + 1 {
            return Err(bad(format!("{label} has {} coefficients for n = {n}", coeffs.len())));
        }
        notation.push(Notation {
            label,
            text: text.clone(),
        });
        Ok(PlainPoly::from_coeffs(field, coeffs))
    };
    let check_divisor = |label: &str, g: &PlainPoly| -> Result<()> {
        DivisorPoly::new(g, n)
            .map(|_| ())
            .map_err(|err| bad(format!("{label} does not divide x^{n} - 1: {err}")))
    };
    let construction = match e.kind.as_str() {
        "one-gen" => {
            let g = poly("g", &e.g)?;
            let f0 = poly("f0", &e.f0)?;
            let f1 = poly("f1", &e.f1)?;
            check_divisor("g", &g)?;
            Construction::OneGen {
                g,
                f0: RingElement::from_plain(&f0, n),
                f1: RingElement::from_plain(&f1, n),
            }
        }
        "two-gen" => {
            let g1 = poly("g1", &e.g1)?;
            let g2 = poly("g2", &e.g2)?;
            let f = poly("f", &e.f)?;
            check_divisor("g1", &g1)?;
            check_divisor("g2", &g2)?;
            Construction::TwoGen {
                g1,
                g2,
                f: RingElement::from_plain(&f, n),
            }
        }
        k => return Err(bad(format!("unknown kind {k}"))),
    };
    if e.code.len() < 2 || e.code[0] != 2 * n {
        return Err(bad(format!("claimed code {:?} does not have length 2n", e.code)));
    }
    let entry = CatalogEntry {
        id: e.id.clone(),
        source: e.source.clone(),
        field,
        n,
        ell: e.ell,
        construction,
        notation,
        claimed_code: (e.code[0], e.code[1]),
        claimed_code_distance: e.code.get(2).map(|&d| d as u32),
        claimed_dual: match e.dual.as_deref() {
            Some(&[len, k, d]) => Some((len, k, d as u32)),
            Some(other) => return Err(bad(format!("bad dual claim {other:?}"))),
            None => None,
        },
        claimed_qecc: e.qecc.iter().map(|t| (t[0], t[1], t[2] as u32)).collect(),
        claims_sso: e.sso.or(Some(default_sso).filter(|&s| s)),
    };
    // the gcd condition must be reachable and the generators well formed
    entry.code().map_err(|err| bad(err.to_string()))?;
    Ok(entry)
}

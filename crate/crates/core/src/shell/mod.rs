//! Notation parser, packaged catalog, catalog verification and search.

pub mod catalog;
pub mod notation;
pub mod search;
pub mod verify;

pub use catalog::{
    load_catalog, load_catalog_from, Catalog, CatalogEntry, ClaimRecord, Construction, EntryCode,
};
pub use notation::{emit_abbrev, parse_abbrev, parse_poly_text};
pub use search::{search, SearchConfig, SearchHit, SearchReport};
pub use verify::{
    verify_catalog, verify_entries_parallel, verify_entry, verify_records, CatalogReport, EntryReport,
    RecordReport, VerifyOptions, CLOSURE_DEPTH,
};

/// Budget from `QCS_BUDGET` when set and valid, else `default`.
pub fn env_budget(default: u64) -> u64 {
    std::env::var("QCS_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

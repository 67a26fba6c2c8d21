//! Quasi-cyclic codes over prime fields: symplectic self-orthogonality criteria,
//! minimum-distance bounds and engines, and the quantum codes they yield.
//!
//! ```
//! use qcsso::gfpoly::{PlainPoly, PrimeField, RingElement};
//! use qcsso::qcsym::{check_sso_one_gen, QcOneGen};
//!
//! let f = PrimeField::BINARY;
//! let g = PlainPoly::one(f);
//! let a = RingElement::from_coeffs(f, 5, &[1, 1, 1]);
//! // (a, a) is always symplectic self-orthogonal
//! let code = QcOneGen::new(&g, 5, vec![a.clone(), a]).unwrap();
//! assert!(check_sso_one_gen(&code).holds());
//! ```

pub mod bounds;
pub mod cyclic;
mod engine;
pub mod error;
pub mod gfpoly;
pub mod linalg;
pub mod qcsym;
pub mod qecc;
pub mod shell;

pub use engine::{Distance, DistanceResult};
pub use error::{Error, Result};

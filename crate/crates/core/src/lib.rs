//! Exact computations in the periplectic q-Brauer category and its endomorphism algebras.
//!
//! Coefficients live in Z[q, q^-1]. Morphism spaces are handled by a rewriting engine
//! (`tanglecat`) and cross-checked against an explicit matrix representation (`oracle`).

pub mod blocks;
pub mod cli;
pub mod coeff;
pub mod combin;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod pqbrauer;
pub mod repmod;
pub mod tanglecat;
pub mod verify;
pub use coeff::{Int, LaurentScalar, RationalScalar};
pub use error::{Error, Result};

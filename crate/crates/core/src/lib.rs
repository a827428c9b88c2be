//! Exterior algebra of N-fermion spaces `∧ᴺCᴹ` and fermionic unextendible
//! product bases.
//!
//! The crate has three layers:
//!
//! * the exterior-algebra core ([`nvector`], [`factorization`], [`exterior`],
//!   [`plucker`], [`slater`], [`subspace`]), generic over the [`Scalar`]
//!   backend;
//! * [`constructions`] of concrete (generalized) fermionic UPBs and related
//!   subspaces;
//! * the [`verifier`], which checks orthogonality, independence and complete
//!   entanglement of the orthogonal complement, with three-valued verdicts.
//!
//! Concrete aliases for the two main backends are exported at the crate root.

pub mod constructions;
pub mod cyclotomic;
pub mod error;
pub mod exterior;
pub mod factorization;
pub mod index;
pub mod json;
pub mod linalg;
pub mod nvector;
pub mod plucker;
pub mod scalar;
pub mod slater;
pub mod subspace;
pub mod verifier;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use exterior::{hodge_dual, inner_product, interior_product, support, wedge_product};
pub use factorization::{factorize, Factorization};
pub use index::MultiIndex;
pub use nvector::NVector;
pub use plucker::plucker_residual;
pub use scalar::{Scalar, C64, CQ};
pub use subspace::Subspace;

/// Default relative threshold below which floating quantities count as zero.
pub const ZERO_TOL: f64 = 1e-10;

pub type NVectorF = NVector<C64>;
pub type NVectorQ = NVector<CQ>;
pub type FactorizationF = Factorization<C64>;
pub type FactorizationQ = Factorization<CQ>;
pub type SubspaceF = Subspace<C64>;
pub type SubspaceQ = Subspace<CQ>;
pub type CandidateSetF = constructions::CandidateSet<C64>;
pub type CandidateSetQ = constructions::CandidateSet<CQ>;

//! Exact construction and verification of superregular (MDS) and
//! b-block superregular matrices over finite fields.
//!
//! A matrix is superregular when every square submatrix is nonsingular, and
//! b-block superregular when every square submatrix made of whole `b×b`
//! blocks is nonsingular. The crate provides:
//!
//! - [`field`]: arithmetic in GF(p) and GF(p^n), primitivity, discrete logs;
//! - [`linalg`]: dense matrices, determinants, Kronecker products;
//! - [`companion`]: companion matrices and the isomorphism between GF(p^n)
//!   and GF(p)[C];
//! - [`verify`]: exhaustive (block-)superregularity checks and minor tables;
//! - [`construct`]: Kronecker, lifting and perturbation constructions;
//! - [`format`]: text and JSON serialisation of matrices and reports.

pub mod arith;
pub mod companion;
pub mod construct;
pub mod error;
pub mod field;
pub mod format;
pub mod linalg;
pub mod poly;
pub mod verify;

pub use companion::{companion, mat_frobenius, BlockMat, CompanionCtx};
pub use construct::{ConstructOptions, PerturbBase, PerturbSpecBlock, PerturbSpecRow};
pub use error::{Error, Result};
pub use field::{ElemStyle, FieldCtx, FieldElem};
pub use linalg::{IndexSet, Mat};
pub use poly::Poly;
pub use verify::{MinorTable, VerifyOptions, VerifyReport, Witness};

//! Exact rank-one characteristic polynomial assignment.
//!
//! Given a square matrix `A` over an exact field and a monic target `q` of
//! the same degree, decide whether some `B` of rank at most one satisfies
//! `det(tI - (A + B)) = q`, and if so build `B = v wᵀ` explicitly.
//!
//! Feasibility is decided eigenvalue by eigenvalue: for each eigenvalue `λ`
//! of `A`, the multiplicity of `λ` as a root of `q` must be at least
//! `alg_λ(A) - j_λ(A)`, where `j_λ(A)` is the size of the largest Jordan
//! block at `λ`. The witness is synthesised in Jordan coordinates from a
//! partial fraction decomposition of `(p_A - q) / p_A` restricted to one
//! largest block per eigenvalue, then conjugated back.
//!
//! Two fields are supported: [`Rationals`] (arbitrary precision) and
//! [`PrimeField`] (residues modulo a prime `p < 2^31`). The characteristic
//! polynomial of `A` must split over the working field; `q` need not.

pub mod assign;
pub mod cli;
pub mod error;
pub mod field;
pub mod jordan;
pub mod matrix;
pub mod oracle;
pub mod poly;

pub use assign::{
    construct_block_from_h, construct_distinct, construct_general, feasibility, FeasibilityReport,
    FeasibilityRow, Perturbation,
};
pub use error::{Error, Result};
pub use field::{parse_scalar, Field, FieldSpec, Fp, PrimeField, Rationals};
pub use jordan::{
    eigen_structure, jordan_basis, BlockPosition, EigenRecord, EigenStructure, JordanDecomposition,
};
pub use matrix::Mat;
pub use oracle::{
    certify_theorem, enumerate_achievable, verify_assignment, OracleReport, Verification,
};
pub use poly::{Poly, RootMultiset};

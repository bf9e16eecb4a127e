//! Exact-arithmetic toolkit for constructing and certifying highly symmetric
//! digraphs.
//!
//! The crate is organised around three layers:
//!
//! * group-theoretic plumbing: permutations, stabilizer chains, coset actions
//!   ([`perm`]), and digraphs built from them ([`digraph`]);
//! * exact linear algebra over the rationals and over the degree-7 cyclotomic
//!   field ([`exact`], [`cyclo`]);
//! * the built-in digraph families and the claim harness that certifies their
//!   properties ([`construct`], [`verify`]).
//!
//! Everything is computed with exact arithmetic; no floating point is used
//! anywhere.

#![forbid(unsafe_code)]

pub mod construct;
pub mod cyclo;
pub mod digraph;
pub mod exact;
pub mod perm;
pub mod verify;

mod error;

pub use error::{Error, Result};

pub use construct::{build_gamma, build_sigma, GammaFamilyInstance, SigmaInstance};
pub use cyclo::CyclotomicElement;
pub use digraph::{ArcOrbitWitness, Digraph};
pub use exact::{Matrix, Poly, Rational};
pub use perm::{CosetAction, Permutation, PermutationGroup};
pub use verify::{
    verify_all, verify_selected, Claim, ClaimStatus, SuiteKind, VerificationReport, VerifyOptions,
};

/// Default ceiling on full group enumeration (element count).
pub const DEFAULT_ENUM_BOUND: u128 = 2_000_000;

/// Default ceiling on the number of s-arcs an orbit computation may touch.
pub const DEFAULT_MAX_ARCS: u128 = 100_000_000;

//! Executable algebra of near-domains, near-fields and sharply 2-transitive
//! permutation groups.
//!
//! - [`tables`]: finite near-domain models, axiom checks, d-coefficients
//! - [`construct`]: Galois fields and Dickson near-fields
//! - [`permaction`]: affine groups, involutions, splitting, coordinatization
//! - [`enumerate`]: exhaustive search for near-domains of small order
//! - [`verify`]: checker for equational derivations over near-domain terms
//! - [`cli`]: the `nd` command line

pub mod cli;
pub mod construct;
pub mod enumerate;
pub mod permaction;
pub mod tables;
pub mod verify;

/// Exact rationals for symbolic constants.
pub type Rational = num_rational::BigRational;

pub use tables::{
    check_near_domain, AxiomReport, Element, NearDomain, NearDomainTable, TableError,
};

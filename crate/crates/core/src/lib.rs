//! Cayley and dual Cayley automata of finite semigroups.
//!
//! The Cayley machine of a finite semigroup `S` has state and alphabet set
//! `S`; in state `q` reading `x` it outputs `q·x` and moves to `q·x`. The
//! dual machine outputs `x·q` instead. Both generate transformation
//! semigroups on infinite sequences over `S`. This crate computes those
//! closures with canonical minimized transducers, decides finiteness from
//! Green's relations (the Cayley closure is finite iff `S` is H-trivial;
//! the dual closure additionally requires that no two distinct idempotents
//! are R-related), and cross-checks the two routes over exhaustive catalogs
//! of small semigroups.

pub mod catalog;
mod cascade;
pub mod closure;
pub mod green;
pub mod io;
pub mod mealy;
pub mod semigroup;

pub use closure::{
    certificate, closure, closure_isomorphic, free_check, verify_wreath_step, Budget, Certificate,
    CertificateKind, ClosureError, ClosureReport, ClosureVerdict, FreeCheckReport,
    LimitingResource,
};
pub use green::{
    criteria, green, miller_clifford_holds, schutzenberger, CriteriaError, CriterionVerdict,
    GreenStructure, SchutzenbergerGroup,
};
pub use mealy::{
    apply_prefix, canonicalize, cayley, compose, compose_bounded, dual_cayley, equal, generator,
    generators, output_map, step, MealyError, MealyMachine, OutputMap, PointedTransducer,
};
pub use semigroup::{
    classify, direct_product, named, Classification, FiniteSemigroup, SemigroupError, MAX_ORDER,
};

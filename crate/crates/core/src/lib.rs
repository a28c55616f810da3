//! Numerical semigroups and the Hilbert function of their tangent cones.
//!
//! The central object is [`NumericalSemigroup`]: an additive subsemigroup of
//! the natural numbers with finite complement, held by its minimal
//! generators with the Apéry set and Frobenius number precomputed. On top of
//! it sit the filtration by sums of the maximal ideal (orders, level sets,
//! Hilbert function, reduction number), the per-residue invariants
//! `a_i, b_i, c_i` with the Cohen-Macaulay test for the tangent cone, the
//! constructive matching of level-skipping elements into fresh level
//! elements, certificates for monotonicity of the Hilbert function, and an
//! exhaustive, deterministic search over bounded semigroup families.

pub mod error;
pub mod filtration;
pub mod invariants;
pub mod monotonicity;
pub mod report;
pub mod representations;
pub mod search;
pub mod semigroup;

pub use error::{Error, Result};
pub use filtration::{LevelSets, LevelTable};
pub use invariants::{blowup, AperyInvariants};
pub use monotonicity::{certify, necessary_report, Certificate, NecessaryReport, Verdict};
pub use representations::{
    build_injection, lex_greatest_maximal_rep, maximal_representations, psi_map,
    InjectionResult, Representation,
};
pub use search::{enumerate_semigroups, hunt, Predicate, SearchConstraints, SearchRecord};
pub use semigroup::{minimal_generator_system, NumericalSemigroup};

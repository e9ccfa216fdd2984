//! Generator-defined algebra maps, involutions and finite automorphism groups.

mod group;
mod involutions;
mod map;
mod change_of_variables;

use thiserror::Error;

use crate::pbw::PbwError;

pub use group::{fixed_subalgebra_basis, group_closure, AutoGroup, FixedBasis, FixedSummary, GROUP_ORDER_BOUND};
pub use involutions::{
    birational_pair, conjugate_involution, convention_swap, minimal_w_sigma, sign_involution, tau, verify_weyl_pair,
    BirationalPair, Conjugation, WeylPairResult,
};
pub use change_of_variables::{change_of_variables_suite, factorwise_fixed_check, FactorwiseReport, ChangeOfVariablesReport};
pub use map::{extend_morphism, same_presentation, GenMorphism, MorphismText, RelationDefect};

#[derive(Debug, Error)]
pub enum MorphError {
    #[error(transparent)]
    Pbw(#[from] PbwError),
    #[error("expected {expected} generator images, found {found}")]
    WrongImageCount { expected: usize, found: usize },
    #[error("{morphism} violates {} relation(s); first: [{}, {}] has defect {}", failures.len(), failures[0].left, failures[0].right, failures[0].defect)]
    RelationViolated { morphism: String, failures: Vec<RelationDefect> },
    #[error("image of localized generator {generator} must be a scalar multiple of the target's localized generator")]
    LocalizedImage { generator: String },
    #[error("cannot compose {first} with {second}: presentations differ")]
    NotComposable { first: String, second: String },
    #[error("supplied inverse of {morphism} does not compose to the identity")]
    NotInverse { morphism: String },
    #[error("{morphism} has no certified inverse")]
    MissingInverse { morphism: String },
    #[error("group generated exceeds order bound {bound}")]
    OrderBoundExceeded { bound: usize },
}

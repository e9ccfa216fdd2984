//! Normal ordering over an ordered generator set with filtration-lowering
//! commutation rules, plus overlap checking and ad-operators.

mod consistency;
mod index;
mod poly;
mod presentation;
mod text;

pub use consistency::{ConsistencyReport, HomomorphismReport, OverlapFailure};
pub use index::MonomialIndex;
pub use poly::{Monomial, NCPoly};
pub use presentation::{Lattice, Presentation, DEFAULT_SWAP_BOUND};
pub use text::{format_poly, parse_normal_form};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PbwError {
    #[error("generator `{0}` appears twice")]
    DuplicateGenerator(String),
    #[error("weights must be positive, one per generator")]
    BadWeights,
    #[error("rule pair ({left}, {right}) is not of the form j > i within range")]
    BadRulePair { left: usize, right: usize },
    #[error("relation for {left}·{right} has degree {degree}, not below {bound}")]
    NonLoweringRelation { left: String, right: String, degree: String, bound: String },
    #[error("rewriting exceeded {bound} swaps")]
    NonTerminating { bound: u64 },
    #[error("ad is not nilpotent on `{generator}` within {bound} steps")]
    NotNilpotent { generator: String, bound: usize },
    #[error("exponent {exponent} not allowed on `{generator}`")]
    ExponentNotAllowed { generator: String, exponent: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("monomial has {found} exponents, presentation has {expected} generators")]
    WrongArity { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

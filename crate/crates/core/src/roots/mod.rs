//! Root systems, Weyl dimensions, the grading data attached to the minimal
//! nilpotent orbit of every simple type, and the parity criterion for the
//! central element of the principal `SL2`.

mod system;
mod table;

use thiserror::Error;

pub use system::{rep_dimension, weight_multiplicities, RootSystem};
pub use table::{
    parity_check, table1_row, table1_rows, G1Structure, ParityVerdict, Summand, Table1Row, GENERIC_E_READING,
    TABLE1_TYPES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unknown or unsupported type {name}")]
    UnknownType { name: String },
    #[error("weight {weight:?} is not dominant integral for {system}")]
    NonDominantWeight { system: String, weight: Vec<i64> },
}

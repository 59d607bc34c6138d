//! Conjugacy classes, character tables and operations on class functions.

mod classes;
mod classfn;
mod dixon;
pub mod modp;
mod symmetric;
mod table;

pub use classes::{conjugacy_classes, ClassInfo, ConjugacyClasses};
pub use classfn::{
    central_invariants, class_fusion, compose, decompose, decompose_rational, induce, inner_product, restrict, ClassFunction,
    ClassFusion,
};
pub use dixon::dixon_character_table;
pub use symmetric::{class_size, mn_character, murnaghan_nakayama_table, partitions};
pub use table::{CharacterTable, Irreducible};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharTabError {
    #[error("character table construction failed: {0}")]
    Dixon(String),
    #[error("orthogonality fails for {0}")]
    Orthogonality(String),
    #[error("class {0} of the subgroup has no image class")]
    Fusion(usize),
    #[error("class function has {found} values, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("order {sub} does not divide {ambient}")]
    NotSubgroup { sub: u64, ambient: u64 },
    #[error("multiplicity of {label} is {multiplicity}")]
    NotACharacter { label: String, multiplicity: String },
}

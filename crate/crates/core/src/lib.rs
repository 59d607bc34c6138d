//! Cohomology of root-system arrangements and the moduli spaces built from
//! them, as graded representations of Weyl and symplectic groups, obtained
//! from twisted point counts over finite fields.

// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod chartab;
pub mod group;
pub mod counting;
pub mod lattice;
pub mod modspaces;
pub mod rootsys;

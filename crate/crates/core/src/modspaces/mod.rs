//! Cohomology of the level-two moduli spaces assembled from twisted counts,
//! and its verification against the reference tables.

mod analysis;
pub mod groups;
mod pipeline;
pub mod reference;
mod rep;
mod suite;
mod verify;

pub use analysis::{m3_analysis, q2_checks, strata_registry, FourTermSequence, M3Report, StrataListing, Stratum};
pub use groups::{Context, Subgroup, SymmetricSubgroup};
pub use pipeline::{ArtifactKey, ArtifactStore, BaseArtifact, Pipeline, Traces};
pub use reference::{Inconsistency, ReferenceTables};
pub use rep::{bundle_total, closure_subtract, label_dimension, projectivize, Fiber, GradedRep, LABEL_PREFIX};
pub use suite::{bijection_check, closure_identity, verify_scope, Scope, ScopeReport};
pub use verify::{find_global_bijection, mismatches, verify_space, BijectionSearch, Check, LabelBijection, Mismatch, Report};

use crate::chartab::CharTabError;
use crate::counting::CountingError;
use crate::group::GroupError;
use crate::rootsys::RootSystemError;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModSpaceError {
    #[error("{context}: multiplicity of {label} in degree {degree} would be {value}")]
    Negative { context: String, degree: usize, label: String, value: i128 },
    #[error("incompatible shapes: {0}")]
    Shape(String),
    #[error("inconsistent structure: {0}")]
    Structure(String),
    #[error("{space}: the symplectic and the Weyl induction disagree in degree {degree}")]
    CrossCheck { space: SpaceId, degree: usize },
    #[error("reference data: {0}")]
    Reference(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    CharTab(#[from] CharTabError),
    #[error(transparent)]
    Counting(#[from] CountingError),
}

/// The moduli spaces computed here. Names follow the strata of quartics
/// with a marked point, their closures, and the strata of canonical divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceId {
    /// Quartics marked with an ordinary point.
    QOrd,
    /// Quartics marked with an ordinary flex.
    QFlx,
    /// Quartics marked with a genuine bitangent point.
    QBtg,
    /// Quartics marked with a hyperflex.
    QHfl,
    QOrdBar,
    QBtgBar,
    /// Hyperelliptic curves.
    Hyp3,
    /// Hyperelliptic curves with a marked point.
    Hyp31,
    /// Projectivized quartic stratum of differentials with two double zeros.
    PC22Q,
    PC22QBar,
    /// Non-projectivized strata of differentials.
    H211,
    H31,
    C22Q,
    C4Q,
    H211Bar,
    C22QBar,
}

/// How a space is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// `{+-I}`-invariants of the induction of `base` to W(E7), then
    /// optionally divided by the scalar action.
    WeylInvariants { base: BaseArtifact, projectivize: bool },
    /// Induction of the graded S8 representation on M_{0,8} to Sp(6,2).
    Hyperelliptic,
    Closure { open: SpaceId, boundary: SpaceId },
    Bundle { base: SpaceId, fiber: Fiber },
}

impl SpaceId {
    pub const ALL: [SpaceId; 16] = [
        SpaceId::QOrd,
        SpaceId::QFlx,
        SpaceId::QBtg,
        SpaceId::QHfl,
        SpaceId::QOrdBar,
        SpaceId::QBtgBar,
        SpaceId::Hyp3,
        SpaceId::Hyp31,
        SpaceId::PC22Q,
        SpaceId::PC22QBar,
        SpaceId::H211,
        SpaceId::H31,
        SpaceId::C22Q,
        SpaceId::C4Q,
        SpaceId::H211Bar,
        SpaceId::C22QBar,
    ];

    /// Identifier used on the command line and in file names.
    pub fn slug(self) -> &'static str {
        match self {
            SpaceId::QOrd => "q-ord",
            SpaceId::QFlx => "q-flx",
            SpaceId::QBtg => "q-btg",
            SpaceId::QHfl => "q-hfl",
            SpaceId::QOrdBar => "q-ordbar",
            SpaceId::QBtgBar => "q-btgbar",
            SpaceId::Hyp3 => "hyp3",
            SpaceId::Hyp31 => "hyp31",
            SpaceId::PC22Q => "pc22q",
            SpaceId::PC22QBar => "pc22qbar",
            SpaceId::H211 => "h-2-1-1",
            SpaceId::H31 => "h-3-1",
            SpaceId::C22Q => "c-2-2-q",
            SpaceId::C4Q => "c-4-q",
            SpaceId::H211Bar => "hbar-2-1-1",
            SpaceId::C22QBar => "cbar-2-2-q",
        }
    }

    pub fn recipe(self) -> Recipe {
        use BaseArtifact::*;
        use SpaceId::*;
        let bundle = |base| Recipe::Bundle { base, fiber: Fiber::P1 };
        match self {
            QOrd => Recipe::WeylInvariants { base: ToricE7, projectivize: false },
            QFlx => Recipe::WeylInvariants { base: LinearE7, projectivize: true },
            QBtg => Recipe::WeylInvariants { base: ToricE6, projectivize: false },
            QHfl => Recipe::WeylInvariants { base: LinearE6, projectivize: true },
            PC22Q => Recipe::WeylInvariants { base: ToricE6Extended, projectivize: false },
            Hyp3 => Recipe::Hyperelliptic,
            QOrdBar => Recipe::Closure { open: QOrd, boundary: QFlx },
            QBtgBar => Recipe::Closure { open: QBtg, boundary: QHfl },
            PC22QBar => Recipe::Closure { open: PC22Q, boundary: QHfl },
            Hyp31 => bundle(Hyp3),
            H211 => bundle(QOrd),
            H31 => bundle(QFlx),
            C22Q => bundle(PC22Q),
            C4Q => bundle(QHfl),
            H211Bar => bundle(QOrdBar),
            C22QBar => bundle(PC22QBar),
        }
    }

    /// Name of the shipped reference table, if there is one.
    pub fn reference_name(self) -> Option<&'static str> {
        use SpaceId::*;
        Some(match self {
            QOrd => "q_ord",
            QFlx => "q_flx",
            QBtg => "q_btg",
            QHfl => "q_hfl",
            QOrdBar => "q_ordbar",
            QBtgBar => "q_btgbar",
            Hyp3 => "hyp3",
            PC22Q => "pc22q",
            PC22QBar => "pc22qbar",
            _ => return None,
        })
    }

    /// Spaces with a reference table, in a fixed order.
    pub fn with_reference() -> impl Iterator<Item = SpaceId> {
        Self::ALL.into_iter().filter(|s| s.reference_name().is_some())
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for SpaceId {
    type Err = ModSpaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpaceId::ALL.into_iter().find(|id| id.slug() == s).ok_or_else(|| ModSpaceError::UnknownSpace(s.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs_round_trip() {
        for id in SpaceId::ALL {
            assert_eq!(id.slug().parse::<SpaceId>().unwrap(), id);
        }
        assert!("bogus".parse::<SpaceId>().is_err());
        assert_eq!(SpaceId::with_reference().count(), 9);
    }
}

//! Evaluation of the space recipes, with the expensive trace computations
//! optionally persisted through an [`ArtifactStore`].

use super::groups::Context;
use super::rep::{bundle_total, closure_subtract, projectivize, GradedRep};
use super::{ModSpaceError, Recipe, SpaceId};
use crate::chartab::{central_invariants, induce, ClassFunction, ClassInfo};
use crate::counting::m0n::m0n_graded_rep;
use crate::counting::{class_counts, purity_traces, ArrangementKind};
use crate::lattice::matrix::small::Mat;
use crate::rootsys::RootSystem;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Traces of class representatives, `[degree][class]`.
pub type Traces = Vec<Vec<BigInt>>;

/// Graded class functions obtained from twisted point counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseArtifact {
    /// Toric E7 complement on the 60 classes of W(E7).
    ToricE7,
    /// Linear E7 complement on the 60 classes of W(E7).
    LinearE7,
    /// Toric E6 complement on the classes of W(E6).
    ToricE6,
    LinearE6,
    /// Toric E6 complement on the classes of W(E6) x {+-I}.
    ToricE6Extended,
    /// M_{0,8} on the classes of S8.
    ModuliPoints8,
}

impl BaseArtifact {
    pub const ALL: [BaseArtifact; 6] = [
        BaseArtifact::ToricE7,
        BaseArtifact::LinearE7,
        BaseArtifact::ToricE6,
        BaseArtifact::LinearE6,
        BaseArtifact::ToricE6Extended,
        BaseArtifact::ModuliPoints8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseArtifact::ToricE7 => "toric-e7",
            BaseArtifact::LinearE7 => "linear-e7",
            BaseArtifact::ToricE6 => "toric-e6",
            BaseArtifact::LinearE6 => "linear-e6",
            BaseArtifact::ToricE6Extended => "toric-e6-extended",
            BaseArtifact::ModuliPoints8 => "m0n-8",
        }
    }

    fn kind(self) -> ArrangementKind {
        match self {
            BaseArtifact::LinearE7 | BaseArtifact::LinearE6 => ArrangementKind::Linear,
            _ => ArrangementKind::Toric,
        }
    }

    /// Group classes the traces are indexed by.
    pub fn classes(self, ctx: &Context) -> &ClassInfo {
        match self {
            BaseArtifact::ToricE7 | BaseArtifact::LinearE7 => &ctx.weyl,
            BaseArtifact::ToricE6 | BaseArtifact::LinearE6 => &ctx.parabolic.info,
            BaseArtifact::ToricE6Extended => &ctx.extended.info,
            BaseArtifact::ModuliPoints8 => &ctx.s8.info,
        }
    }

    fn twists(self, ctx: &Context) -> Option<(&RootSystem, &[Mat])> {
        match self {
            BaseArtifact::ToricE7 | BaseArtifact::LinearE7 => Some((&ctx.e7, &ctx.weyl_reps)),
            BaseArtifact::ToricE6 | BaseArtifact::LinearE6 => Some((&ctx.e6, &ctx.parabolic.matrices)),
            BaseArtifact::ToricE6Extended => Some((&ctx.e6, &ctx.extended.matrices)),
            BaseArtifact::ModuliPoints8 => None,
        }
    }

    /// Identifies the inputs of the computation: the group classes and the
    /// twisting matrices or cycle types, plus the arrangement.
    pub fn key(self, ctx: &Context) -> ArtifactKey {
        let info = self.classes(ctx);
        let mut m = format!("v{};{};{};order={};sizes={:?}", FORMAT_VERSION, self.name(), info.group, info.order, info.sizes);
        match self.twists(ctx) {
            Some((sys, reps)) => {
                write!(m, ";{};{};roots={:?};reps={:?}", self.kind(), sys.kind(), sys.positive_roots(), reps)
            }
            None => write!(m, ";cycles={:?}", ctx.s8.cycle_types),
        }
        .expect("writing to a string");
        ArtifactKey { name: self.name(), material: m }
    }
}

/// Bumped whenever the meaning of stored traces changes.
pub const FORMAT_VERSION: u32 = 1;

/// Name and fingerprint material of a stored artifact. Stores should hash
/// the material to address content.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtifactKey {
    pub name: &'static str,
    pub material: String,
}

/// Persistence for base traces. `load` must return `Ok(None)` on a miss
/// and an error on corrupted content.
pub trait ArtifactStore {
    fn load(&self, key: &ArtifactKey) -> Result<Option<Traces>, ModSpaceError>;
    fn save(&self, key: &ArtifactKey, traces: &Traces) -> Result<(), ModSpaceError>;
}

/// Memoizing evaluator of recipes.
pub struct Pipeline<'a> {
    ctx: &'a Context,
    store: Option<&'a dyn ArtifactStore>,
    bases: BTreeMap<BaseArtifact, Traces>,
    spaces: BTreeMap<SpaceId, GradedRep>,
}

impl<'a> Pipeline<'a> {
    pub fn new(ctx: &'a Context) -> Self {
        Pipeline { ctx, store: None, bases: BTreeMap::new(), spaces: BTreeMap::new() }
    }

    pub fn with_store(ctx: &'a Context, store: &'a dyn ArtifactStore) -> Self {
        Pipeline { store: Some(store), ..Pipeline::new(ctx) }
    }

    pub fn context(&self) -> &'a Context {
        self.ctx
    }

    /// Traces of a base artifact, from the store when present.
    pub fn base(&mut self, artifact: BaseArtifact) -> Result<&Traces, ModSpaceError> {
        if !self.bases.contains_key(&artifact) {
            let key = artifact.key(self.ctx);
            let cached = match self.store {
                Some(s) => s.load(&key)?,
                None => None,
            };
            let traces = match cached {
                Some(t) if shape_matches(&t, artifact.classes(self.ctx).len()) => t,
                Some(_) => return Err(ModSpaceError::Cache(format!("{} has the wrong shape", artifact.name()))),
                None => {
                    let t = compute_base(self.ctx, artifact)?;
                    if let Some(s) = self.store {
                        s.save(&key, &t)?;
                    }
                    t
                }
            };
            self.bases.insert(artifact, traces);
        }
        Ok(&self.bases[&artifact])
    }

    /// The graded representation of a space.
    pub fn space(&mut self, id: SpaceId) -> Result<GradedRep, ModSpaceError> {
        if let Some(r) = self.spaces.get(&id) {
            return Ok(r.clone());
        }
        let rep = match id.recipe() {
            Recipe::WeylInvariants { base, projectivize: proj } => {
                let rep = self.weyl_invariants(id, base)?;
                if proj {
                    projectivize(&rep)?
                } else {
                    rep
                }
            }
            Recipe::Hyperelliptic => {
                let ctx = self.ctx;
                let fs = class_functions(self.base(BaseArtifact::ModuliPoints8)?);
                let induced = fs
                    .iter()
                    .map(|f| induce(f, &ctx.s8.to_sp, &ctx.s8.info, ctx.sp_info()))
                    .collect::<Result<Vec<_>, _>>()?;
                GradedRep::from_class_functions(&induced, &ctx.table)?
            }
            Recipe::Closure { open, boundary } => closure_subtract(&self.space(open)?, &self.space(boundary)?)?,
            Recipe::Bundle { base, fiber } => bundle_total(&self.space(base)?, fiber),
        };
        self.spaces.insert(id, rep.clone());
        Ok(rep)
    }

    /// `{+-I}`-invariants of the induction to W(E7). For W(E6), which meets
    /// `{+-I}` trivially, the result must equal the induction from its image
    /// in Sp(6,2); that is asserted.
    fn weyl_invariants(&mut self, id: SpaceId, base: BaseArtifact) -> Result<GradedRep, ModSpaceError> {
        let ctx = self.ctx;
        let fs = class_functions(self.base(base)?);
        let sub = match base {
            BaseArtifact::ToricE6 | BaseArtifact::LinearE6 => Some(&ctx.parabolic),
            BaseArtifact::ToricE6Extended => Some(&ctx.extended),
            _ => None,
        };
        let on_weyl: Vec<ClassFunction> = match sub {
            None => fs.clone(),
            Some(s) => {
                let fusion = s.to_weyl.as_ref().expect("subgroups of W(E7) carry a fusion");
                fs.iter().map(|f| induce(f, fusion, &s.info, &ctx.weyl)).collect::<Result<_, _>>()?
            }
        };
        let invariants: Vec<ClassFunction> = on_weyl.iter().map(central_invariants).collect::<Result<_, _>>()?;
        if matches!(base, BaseArtifact::ToricE6 | BaseArtifact::LinearE6) {
            let s = &ctx.parabolic;
            for (degree, (f, inv)) in fs.iter().zip(&invariants).enumerate() {
                if &induce(f, &s.to_sp, &s.info, ctx.sp_info())? != inv {
                    return Err(ModSpaceError::CrossCheck { space: id, degree });
                }
            }
        }
        GradedRep::from_class_functions(&invariants, &ctx.table)
    }
}

fn shape_matches(t: &Traces, classes: usize) -> bool {
    !t.is_empty() && t.iter().all(|row| row.len() == classes)
}

fn class_functions(t: &Traces) -> Vec<ClassFunction> {
    t.iter().map(|row| ClassFunction::from_integers(row)).collect()
}

/// Evaluates the twisted counts of a base artifact and converts them to
/// graded traces.
pub fn compute_base(ctx: &Context, artifact: BaseArtifact) -> Result<Traces, ModSpaceError> {
    let start = std::time::Instant::now();
    let traces = match artifact.twists(ctx) {
        Some((sys, reps)) => {
            let n = sys.rank();
            let counts = class_counts(sys, artifact.kind(), reps)?;
            let per_class = counts.iter().map(|c| purity_traces(c, n)).collect::<Result<Vec<_>, _>>()?;
            (0..=n).map(|i| per_class.iter().map(|t| t.0[i].clone()).collect()).collect()
        }
        None => m0n_graded_rep(&ctx.s8.cycle_types)?
            .iter()
            .map(|f| f.to_integers().ok_or_else(|| ModSpaceError::Structure("non-integral trace".into())))
            .collect::<Result<_, _>>()?,
    };
    log::info!("{} computed in {:.1?}", artifact.name(), start.elapsed());
    Ok(traces)
}

//! The groups acting on the moduli spaces, with class data and fusions.
//!
//! W(E7) class functions live on 60 classes: `c` is the class of elements of
//! determinant `+1` whose reduction lies in the symplectic class `c`, and
//! `30 + c` holds their negatives. Multiplication by `-I` swaps the halves.

use super::ModSpaceError;
use crate::chartab::{
    class_fusion, conjugacy_classes, dixon_character_table, CharacterTable, ClassFunction, ClassFusion, ClassInfo,
    ConjugacyClasses,
};
use crate::group::{GroupStore, PermGroup};
use crate::lattice::det_i64;
use crate::lattice::matrix::small::{self, Mat};
use crate::rootsys::{
    build_root_system, extended_e6_with_inversion, mod2_symplectic_reduction, parabolic_e6_in_e7,
    s8_symplectic_embedding, CartanType, LatticeGroup, RootImageKey, RootSystem, SpKey, SymplecticGroup,
};
use num_traits::One;
use std::sync::{Arc, OnceLock};

/// Node of the E7 diagram whose deletion leaves E6.
pub const E6_NODE: usize = 6;

/// A subgroup given by its classes, with the twists it induces on a smaller
/// root system and its class fusions into W(E7) and Sp(6,2).
pub struct Subgroup {
    pub info: ClassInfo,
    /// Action of each class representative on the relevant root lattice.
    pub matrices: Vec<Mat>,
    pub to_weyl: Option<ClassFusion>,
    pub to_sp: ClassFusion,
}

/// S8 inside Sp(6,2) with the cycle types of its class representatives.
pub struct SymmetricSubgroup {
    pub info: ClassInfo,
    pub cycle_types: Vec<Vec<usize>>,
    pub to_sp: ClassFusion,
}

/// Everything the space recipes need, built once.
pub struct Context {
    pub e7: Arc<RootSystem>,
    pub e6: Arc<RootSystem>,
    pub sp: SymplecticGroup,
    pub sp_classes: ConjugacyClasses<SpKey>,
    pub table: CharacterTable,
    /// Classes of W(E7) in the 60-class layout.
    pub weyl: ClassInfo,
    /// Representatives of the 60 classes as E7 lattice automorphisms.
    pub weyl_reps: Vec<Mat>,
    /// W(E6) acting on its own lattice.
    pub parabolic: Subgroup,
    /// W(E6) x {+-I} acting on the E6 lattice.
    pub extended: Subgroup,
    pub s8: SymmetricSubgroup,
    /// Order of W(E6), used for indices.
    pub parabolic_order: u64,
}

impl Context {
    /// Process-wide context; the first call builds it.
    pub fn shared() -> Result<&'static Context, ModSpaceError> {
        static CTX: OnceLock<Context> = OnceLock::new();
        if let Some(c) = CTX.get() {
            return Ok(c);
        }
        let built = Context::build()?;
        Ok(CTX.get_or_init(|| built))
    }

    pub fn build() -> Result<Context, ModSpaceError> {
        let e7 = Arc::new(build_root_system(CartanType::E7)?);
        let e6 = Arc::new(build_root_system(CartanType::E6)?);
        let sp = mod2_symplectic_reduction(e7.clone())?;
        let sp_classes = conjugacy_classes(&sp.store);
        let table = dixon_character_table(&sp.store, &sp_classes)?;
        table.verify_orthogonality()?;
        log::info!("Sp(6,2): {} classes", sp_classes.info.len());

        let (weyl, weyl_reps) = weyl_classes(&e7, &sp, &sp_classes)?;

        let par = parabolic_e6_in_e7(e7.clone(), E6_NODE)?;
        if par.e6.cartan() != e6.cartan() {
            return Err(ModSpaceError::Structure("parabolic E6 has a different Cartan matrix".into()));
        }
        let parabolic_order = par.store.order();
        let lg_e7 = LatticeGroup::new(e7.clone());
        let gens = (0..7).map(|i| lg_e7.simple_reflection(i)).collect();
        let weyl_store = GroupStore::enumerate_exact(lg_e7, gens, CartanType::E7.weyl_order())?;
        let ext = extended_e6_with_inversion(&weyl_store, &par)?;
        drop(weyl_store);

        let locate = |key: &RootImageKey, lg: &LatticeGroup| -> Option<(usize, usize)> {
            let spk = sp.reduction.key_of_root_images(*key);
            let c = sp_classes.class_of(&sp.store, &spk)?;
            let det_negative = det_i64(&lg.matrix(*key)) != num_bigint::BigInt::one();
            Some((c, c + if det_negative { sp_classes.info.len() } else { 0 }))
        };
        let subgroup = |store: &GroupStore<LatticeGroup>, restrict: &dyn Fn(RootImageKey) -> Mat| {
            let cc = conjugacy_classes(store);
            let lg = store.group();
            let to_sp = class_fusion(&cc.reps, |k| locate(k, lg).map(|p| p.0))?;
            let to_weyl = class_fusion(&cc.reps, |k| locate(k, lg).map(|p| p.1))?;
            let matrices: Vec<Mat> = cc.reps.iter().map(|&k| restrict(k)).collect();
            if let Some(bad) = matrices.iter().position(|m| !e6.is_automorphism(m)) {
                return Err(ModSpaceError::Structure(format!("class {bad} does not act on the E6 roots")));
            }
            Ok::<_, ModSpaceError>(Subgroup { info: cc.info, matrices, to_weyl: Some(to_weyl), to_sp })
        };
        let parabolic = subgroup(&par.store, &|k| par.restricted_matrix(k))?;
        let extended = subgroup(&ext.store, &|k| ext.restricted_matrix(k))?;

        let emb = s8_symplectic_embedding(&sp)?;
        let scc = conjugacy_classes(&emb.perms);
        let pg: PermGroup = *emb.perms.group();
        let cycle_types = scc.reps.iter().map(|&p| pg.cycle_type(p)).collect();
        let to_sp = class_fusion(&scc.reps, |&p| sp_classes.class_of(&sp.store, &emb.image(p)))?;
        let s8 = SymmetricSubgroup { info: scc.info, cycle_types, to_sp };

        Ok(Context { e7, e6, sp, sp_classes, table, weyl, weyl_reps, parabolic, extended, s8, parabolic_order })
    }

    pub fn sp_info(&self) -> &ClassInfo {
        &self.sp_classes.info
    }

    /// Characters of the irreducibles, one class function each.
    pub fn irreducible(&self, i: usize) -> ClassFunction {
        ClassFunction::from_integers(&self.table.irreducibles[i].values)
    }
}

/// Lifts each symplectic class representative along its generator word to a
/// Weyl group element of determinant `+1`, and lays out the 60 classes.
fn weyl_classes(
    e7: &RootSystem,
    sp: &SymplecticGroup,
    classes: &ConjugacyClasses<SpKey>,
) -> Result<(ClassInfo, Vec<Mat>), ModSpaceError> {
    let refl = e7.simple_reflections();
    let n = e7.rank();
    let mut plus = Vec::with_capacity(classes.reps.len());
    for rep in &classes.reps {
        let idx = sp.store.index_of(rep).expect("representatives are group elements");
        let word = sp.store.word(idx);
        let mut w = word.iter().fold(small::identity(n), |acc, &g| small::mul(&acc, &refl[g as usize]));
        if word.len() % 2 == 1 {
            w = small::neg(&w);
        }
        if sp.reduction.key_of_matrix(&w) != *rep {
            return Err(ModSpaceError::Structure("lifted word does not reduce to its class".into()));
        }
        plus.push(w);
    }
    let info = &classes.info;
    let lcm2 = |o: u64| if o.is_multiple_of(2) { o } else { 2 * o };
    let weyl = ClassInfo {
        group: "W(E7)".into(),
        order: 2 * info.order,
        sizes: [info.sizes.clone(), info.sizes.clone()].concat(),
        element_orders: info.element_orders.iter().copied().chain(info.element_orders.iter().map(|&o| lcm2(o))).collect(),
        inverse: info.inverse.iter().copied().chain(info.inverse.iter().map(|&c| c + info.len())).collect(),
    };
    let reps = plus.iter().cloned().chain(plus.iter().map(small::neg)).collect();
    Ok((weyl, reps))
}

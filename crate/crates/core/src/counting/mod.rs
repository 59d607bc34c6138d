//! Twisted point counts of root-system arrangement complements.
//!
//! For an automorphism `g` of the root lattice, `N_g(q)` counts the points of
//! the complement fixed by `g` composed with Frobenius. Counts are Möbius sums
//! over `g`-stable strata; enumeration over finite fields lives in [`oracle`]
//! and is only used to check them.

mod flats;
mod layers;
pub mod m0n;
pub mod oracle;
mod span;

pub use flats::{bits, Arrangement, Flat, FlatLattice, FlatPoset, LatticeFlat, Mask};
pub use layers::{Layer, LayerKey, LayerPoset};
pub use span::{integer_kernel, SpanComplement};

use crate::chartab::ClassFunction;
use crate::lattice::matrix::small::Mat;
use crate::lattice::{char_poly_i64, det_i64, det_pencil_i64, IntPoly};
use crate::rootsys::{CartanType, RootSystem};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountingError {
    #[error("{0} does not preserve the root system")]
    NotAnAutomorphism(String),
    #[error("count polynomial {poly} has degree {found:?}, expected {expected}")]
    Degree { poly: String, expected: usize, found: Option<usize> },
    #[error("negative Betti number {value} in degree {degree}")]
    NegativeBetti { degree: usize, value: BigInt },
    #[error("{q} is not a good prime for the {kind} arrangement of {system}")]
    BadPrime { system: CartanType, kind: ArrangementKind, q: u64 },
    #[error("enumeration of {size} points exceeds the bound {bound}")]
    TooLarge { size: BigInt, bound: u64 },
    #[error("division by q^3 - q is not exact for cycle type {0:?}")]
    NotPolynomial(Vec<usize>),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

/// Complement of root hyperplanes in affine space, or of root subtori in the
/// torus with the root lattice as character group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArrangementKind {
    Linear,
    Toric,
}

impl fmt::Display for ArrangementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ArrangementKind::Linear => "linear",
            ArrangementKind::Toric => "toric",
        })
    }
}

impl FromStr for ArrangementKind {
    type Err = CountingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(ArrangementKind::Linear),
            "toric" => Ok(ArrangementKind::Toric),
            _ => Err(CountingError::Unsupported(format!("arrangement kind {s}"))),
        }
    }
}

/// `N_g(q)` together with what it counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountPolynomial {
    pub system: CartanType,
    pub kind: ArrangementKind,
    pub poly: IntPoly,
}

/// `trace(g | H^i)` for `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedTraces(pub Vec<BigInt>);

/// The hyperplanes of the positive roots.
pub fn root_arrangement(system: &RootSystem) -> Arrangement {
    Arrangement::new(system.rank(), system.positive_roots().to_vec())
}

type Memo<T> = Mutex<FxHashMap<CartanType, Arc<T>>>;

fn memoized<T>(memo: &'static OnceLock<Memo<T>>, kind: CartanType, make: impl FnOnce() -> T) -> Arc<T> {
    let memo = memo.get_or_init(Default::default);
    if let Some(x) = memo.lock().expect("memo lock").get(&kind) {
        return Arc::clone(x);
    }
    let x = Arc::new(make());
    Arc::clone(memo.lock().expect("memo lock").entry(kind).or_insert(x))
}

/// The intersection lattice of the root hyperplanes, built once per type.
pub fn flat_lattice(system: &RootSystem) -> Arc<FlatLattice> {
    static MEMO: OnceLock<Memo<FlatLattice>> = OnceLock::new();
    memoized(&MEMO, system.kind(), || FlatLattice::build(root_arrangement(system)))
}

/// The layers of the toric root arrangement, built once per type.
pub fn layer_poset(system: &RootSystem) -> Arc<LayerPoset> {
    static MEMO: OnceLock<Memo<LayerPoset>> = OnceLock::new();
    memoized(&MEMO, system.kind(), || LayerPoset::build(flat_lattice(system)))
}

pub fn build_flat_poset(system: &RootSystem) -> FlatPoset {
    flat_lattice(system).poset()
}

pub fn build_layer_poset(system: &RootSystem) -> Arc<LayerPoset> {
    layer_poset(system)
}

fn check_automorphism(system: &RootSystem, g: &Mat) -> Result<Vec<u8>, CountingError> {
    if g.len() != system.rank() || !system.is_automorphism(g) {
        return Err(CountingError::NotAnAutomorphism(format!("{g:?}")));
    }
    Ok(system.hyperplane_permutation(g))
}

/// `sum over g-stable flats X of mu(X) q^dim X`, the Möbius function being
/// that of the stable subposet.
pub fn twisted_flat_count(system: &RootSystem, g: &Mat) -> Result<CountPolynomial, CountingError> {
    let perm = check_automorphism(system, g)?;
    let poset = flat_lattice(system).stable(&perm);
    Ok(CountPolynomial {
        system: system.kind(),
        kind: ArrangementKind::Linear,
        poly: IntPoly::from_i64(&poset.characteristic_coefficients()),
    })
}

/// `|T^{gF}| = det(A) det(qA - I)` for `g` acting by `A` on the character
/// lattice: the sign makes the count positive for large `q`. For `A` of
/// finite order this is `det(qI - A^{-1}) = det(qI - A)`.
pub fn torus_fixed_count(a: &Mat) -> IntPoly {
    char_poly_i64(a)
}

/// [`torus_fixed_count`] straight from its definition, for cross-checks.
pub fn torus_fixed_count_by_pencil(a: &Mat) -> IntPoly {
    if a.is_empty() {
        return IntPoly::one();
    }
    det_pencil_i64(a).scale(&det_i64(a))
}

/// Local Möbius values keyed by the trivial characters of a layer and the
/// permutation induced on them, shared across twists.
#[derive(Default)]
pub struct LayerCountCache {
    nu: FxHashMap<(Mask, Vec<u8>), i64>,
}

/// `sum over g-stable layers Y of mu(T, Y) |Y^{gF}|`, with `mu` that of the
/// stable subposet. The interval above `Y` there is the stable flat lattice
/// of the characters trivial on `Y`.
pub fn twisted_layer_count(
    system: &RootSystem,
    poset: &LayerPoset,
    g: &Mat,
    cache: &mut LayerCountCache,
) -> Result<CountPolynomial, CountingError> {
    let perm = check_automorphism(system, g)?;
    let mut fix: FxHashMap<usize, IntPoly> = FxHashMap::default();
    let mut total = IntPoly::zero();
    for layer in &poset.layers {
        if !poset.is_stable(layer, g, &perm) {
            continue;
        }
        let restricted: Vec<u8> = bits(layer.mask).map(|i| perm[i]).collect();
        let nu = if bits(layer.mask).zip(&restricted).all(|(i, &p)| p as usize == i) {
            layer.mobius
        } else {
            *cache
                .nu
                .entry((layer.mask, restricted))
                .or_insert_with(|| poset.lattice.local_stable(layer.mask, &perm).top().mobius)
        };
        if nu == 0 {
            continue;
        }
        let count = fix
            .entry(layer.key.flat)
            .or_insert_with(|| torus_fixed_count(&layers::quotient_action(poset.basis_of(layer), g)));
        total = total + count.scale(&BigInt::from(nu));
    }
    Ok(CountPolynomial { system: system.kind(), kind: ArrangementKind::Toric, poly: total })
}

/// Whether `N_g(q)` is the number of points over the field with `q` elements:
/// reduction mod `q` must preserve ranks of all root subsets (linear), or `q`
/// must be a prime with every layer defined over it (toric).
pub fn good_prime(system: &RootSystem, kind: ArrangementKind, q: u64) -> bool {
    if !crate::chartab::modp::is_prime(q) {
        return false;
    }
    match kind {
        ArrangementKind::Linear => linear_reduction_preserves_ranks(system, q),
        ArrangementKind::Toric => toric_prime_is_good(&layer_poset(system), q),
    }
}

/// Toric goodness given a built poset: `q = 1` modulo the torsion exponent,
/// so Frobenius fixes every layer and torsion points stay distinct.
pub fn toric_prime_is_good(poset: &LayerPoset, q: u64) -> bool {
    crate::chartab::modp::is_prime(q) && (q - 1).is_multiple_of(poset.torsion_exponent as u64)
}

/// Every flat keeps its rank mod `q`, and no new dependency appears: the
/// closure of each flat is the same over `F_q` as over `Q`.
fn linear_reduction_preserves_ranks(system: &RootSystem, q: u64) -> bool {
    let lattice = flat_lattice(system);
    let arr = &lattice.arrangement;
    let field = crate::chartab::modp::PrimeField::new(q);
    let normals: Vec<Vec<u64>> =
        arr.normals.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
    lattice.flats.iter().all(|f| {
        let rows: Vec<Vec<u64>> = bits(f.mask).map(|i| normals[i].clone()).collect();
        if oracle::rank_mod_p(&field, &rows) != f.rank {
            return false;
        }
        // Hyperplanes outside the flat stay outside mod q.
        bits(arr.full_mask() & !f.mask).all(|i| {
            let mut r = rows.clone();
            r.push(normals[i].clone());
            oracle::rank_mod_p(&field, &r) == f.rank + 1
        })
    })
}

/// `trace(g | H^i) = (-1)^i [q^{n-i}] N_g(q)` for complements with pure
/// cohomology of Tate type `(i, i)`.
pub fn purity_traces(count: &CountPolynomial, n: usize) -> Result<GradedTraces, CountingError> {
    if count.poly.degree() != Some(n) {
        return Err(CountingError::Degree { poly: count.poly.to_string(), expected: n, found: count.poly.degree() });
    }
    Ok(GradedTraces(
        (0..=n)
            .map(|i| {
                let c = count.poly.coeff(n - i);
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
    ))
}

/// The same traces checked to be Betti numbers, for the identity twist.
pub fn betti_numbers(count: &CountPolynomial, n: usize) -> Result<Vec<u64>, CountingError> {
    let t = purity_traces(count, n)?;
    t.0.iter()
        .enumerate()
        .map(|(degree, v)| {
            if v.is_negative() {
                Err(CountingError::NegativeBetti { degree, value: v.clone() })
            } else {
                Ok(v.to_u64().expect("Betti numbers fit u64"))
            }
        })
        .collect()
}

/// Inverse of [`purity_traces`].
pub fn count_from_traces(traces: &GradedTraces) -> IntPoly {
    let n = traces.0.len() - 1;
    let mut c = vec![BigInt::zero(); n + 1];
    for (i, t) in traces.0.iter().enumerate() {
        c[n - i] = if i % 2 == 1 { -t.clone() } else { t.clone() };
    }
    IntPoly::new(c)
}

/// Per-degree class functions from the counts twisted by class
/// representatives: entry `[i][c]` is the trace of class `c` on `H^i`.
pub fn graded_class_function(
    system: &RootSystem,
    kind: ArrangementKind,
    reps: &[Mat],
) -> Result<Vec<ClassFunction>, CountingError> {
    let n = system.rank();
    let counts = class_counts(system, kind, reps)?;
    let traces: Vec<GradedTraces> = counts.iter().map(|c| purity_traces(c, n)).collect::<Result<_, _>>()?;
    Ok(traces_to_class_functions(&traces, n))
}

/// Twisted counts for each class representative, in input order. The work
/// is spread over the current rayon pool; each worker keeps its own cache.
pub fn class_counts(system: &RootSystem, kind: ArrangementKind, reps: &[Mat]) -> Result<Vec<CountPolynomial>, CountingError> {
    match kind {
        ArrangementKind::Linear => {
            let lattice = flat_lattice(system);
            log::debug!("{} flats for {}", lattice.len(), system.kind());
            reps.par_iter().map(|g| twisted_flat_count(system, g)).collect()
        }
        ArrangementKind::Toric => {
            let poset = layer_poset(system);
            reps.par_iter()
                .map_init(LayerCountCache::default, |cache, g| twisted_layer_count(system, &poset, g, cache))
                .collect()
        }
    }
}

pub fn traces_to_class_functions(traces: &[GradedTraces], n: usize) -> Vec<ClassFunction> {
    (0..=n)
        .map(|i| ClassFunction::from_integers(&traces.iter().map(|t| t.0[i].clone()).collect::<Vec<_>>()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::small;
    use crate::rootsys::build_root_system;

    fn sys(kind: CartanType) -> RootSystem {
        build_root_system(kind).unwrap()
    }

    fn minus(n: usize) -> Mat {
        small::neg(&small::identity(n))
    }

    #[test]
    fn a2_linear_characteristic_polynomial() {
        let s = sys(CartanType::A(2));
        let c = twisted_flat_count(&s, &small::identity(2)).unwrap();
        assert_eq!(c.poly, IntPoly::linear_root(1) * IntPoly::linear_root(2));
        assert_eq!(c.poly.eval_i64(5), BigInt::from(12));
    }

    #[test]
    fn a1_twists() {
        let s = sys(CartanType::A(1));
        assert_eq!(twisted_flat_count(&s, &minus(1)).unwrap().poly, IntPoly::linear_root(1));
        let poset = build_layer_poset(&s);
        let mut cache = LayerCountCache::default();
        let id = twisted_layer_count(&s, &poset, &small::identity(1), &mut cache).unwrap();
        assert_eq!(id.poly, IntPoly::linear_root(2));
        let tw = twisted_layer_count(&s, &poset, &minus(1), &mut cache).unwrap();
        assert_eq!(tw.poly, IntPoly::from_i64(&[0, 1]));
        assert_eq!(betti_numbers(&id, 1).unwrap(), vec![1, 2]);
    }

    #[test]
    fn a2_toric_identity() {
        let s = sys(CartanType::A(2));
        let poset = build_layer_poset(&s);
        let c = twisted_layer_count(&s, &poset, &small::identity(2), &mut LayerCountCache::default()).unwrap();
        assert_eq!(c.poly, IntPoly::from_i64(&[6, -5, 1]));
        assert!(good_prime(&s, ArrangementKind::Toric, 7));
    }

    #[test]
    fn empty_toric_arrangement() {
        let poset = LayerPoset::build(Arc::new(FlatLattice::build(Arrangement::new(2, vec![]))));
        assert_eq!(poset.layers.len(), 1);
        assert_eq!(torus_fixed_count(&small::identity(2)), IntPoly::linear_root(1).pow(2));
    }

    #[test]
    fn torus_count_matches_its_definition() {
        let s = sys(CartanType::E7);
        let refl = s.simple_reflections();
        let mut g = small::identity(7);
        // A walk through W(E7) by reflections, both signs of determinant.
        for step in 0..60 {
            g = small::mul(&g, &refl[(step * 5 + step / 7) % 7]);
            assert_eq!(torus_fixed_count(&g), torus_fixed_count_by_pencil(&g));
            let m = small::neg(&g);
            assert_eq!(torus_fixed_count(&m), torus_fixed_count_by_pencil(&m));
        }
    }

    #[test]
    fn purity_round_trip() {
        let c = CountPolynomial {
            system: CartanType::E7,
            kind: ArrangementKind::Toric,
            poly: IntPoly::linear_root(1).pow(7),
        };
        let t = purity_traces(&c, 7).unwrap();
        let expect: Vec<BigInt> = [1, 7, 21, 35, 35, 21, 7, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(t.0, expect);
        assert_eq!(count_from_traces(&t), c.poly);
    }

    #[test]
    fn e7_linear_bad_at_two() {
        assert!(!good_prime(&sys(CartanType::E7), ArrangementKind::Linear, 2));
    }
}

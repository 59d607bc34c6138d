//! Subgroups of the E7 Weyl group and of its symplectic image.

use super::lattice_group::{LatticeGroup, RootImageKey};
use super::symplectic::{SpKey, SymplecticF2, SymplecticGroup};
use super::{CartanType, RootSystem, RootSystemError};
use crate::group::{FiniteGroup, GroupStore, Perm, PermGroup};
use crate::lattice::matrix::small::Mat;
use std::sync::Arc;

/// The Weyl group of the E6 parabolic, acting on the whole E7 lattice.
pub struct ParabolicE6 {
    pub e6: Arc<RootSystem>,
    pub node: usize,
    pub store: GroupStore<LatticeGroup>,
}

impl ParabolicE6 {
    /// Action on the E6 sublattice, in the coordinates of its simple roots.
    pub fn restricted_matrix(&self, key: RootImageKey) -> Mat {
        restrict(&self.store.group().matrix(key), self.node)
    }
}

fn restrict(m: &Mat, node: usize) -> Mat {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != node)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != node).map(|(_, &x)| x).collect())
        .collect()
}

/// Deletes `node` from the E7 diagram and enumerates the Weyl group of the
/// resulting E6 subsystem inside W(E7).
pub fn parabolic_e6_in_e7(e7: Arc<RootSystem>, node: usize) -> Result<ParabolicE6, RootSystemError> {
    if e7.kind() != CartanType::E7 {
        return Err(RootSystemError::Unsupported(e7.kind().to_string()));
    }
    let e6 = Arc::new(e7.delete_node(node, CartanType::E6)?);
    let mut lg = LatticeGroup::new(e7.clone());
    let gens: Vec<RootImageKey> = (0..7).filter(|&i| i != node).map(|i| lg.simple_reflection(i)).collect();
    for &g in &gens {
        lg.register(g);
    }
    let store = GroupStore::enumerate_exact(lg, gens, CartanType::E6.weyl_order())?;
    // Every element stabilizes the sublattice spanned by the remaining simple roots.
    for &k in store.elements() {
        let m = store.group().matrix(k);
        if m.iter().enumerate().any(|(i, r)| i != node && r[node] != 0) {
            return Err(RootSystemError::Structure("parabolic does not stabilize its sublattice".into()));
        }
    }
    Ok(ParabolicE6 { e6, node, store })
}

/// `W(E6) x {1, sigma}` where `sigma` is the unique element of W(E7) acting
/// as `-1` on the E6 sublattice.
pub struct ExtendedE6 {
    pub sigma: RootImageKey,
    pub node: usize,
    pub store: GroupStore<LatticeGroup>,
}

impl ExtendedE6 {
    pub fn restricted_matrix(&self, key: RootImageKey) -> Mat {
        restrict(&self.store.group().matrix(key), self.node)
    }
}

/// Finds `sigma` by scanning W(E7) for elements that negate the E6 simple
/// roots, and enumerates the extended group.
pub fn extended_e6_with_inversion(
    weyl_e7: &GroupStore<LatticeGroup>,
    parabolic: &ParabolicE6,
) -> Result<ExtendedE6, RootSystemError> {
    let lg = weyl_e7.group();
    let sys = lg.system();
    let node = parabolic.node;
    let candidates: Vec<RootImageKey> = weyl_e7
        .elements()
        .iter()
        .copied()
        .filter(|&k| (0..7).filter(|&i| i != node).all(|i| LatticeGroup::image_index(k, i) == sys.negative_of(i)))
        .collect();
    let [sigma] = candidates[..] else {
        return Err(RootSystemError::Structure(format!("{} elements negate the E6 sublattice", candidates.len())));
    };
    if parabolic.store.contains(&sigma) {
        return Err(RootSystemError::Structure("inversion of the sublattice lies in W(E6)".into()));
    }
    let mut group = parabolic.store.group().clone();
    group.register(sigma);
    let mut gens = parabolic.store.generators().to_vec();
    gens.push(sigma);
    let store = GroupStore::enumerate_exact(group, gens, 2 * CartanType::E6.weyl_order())?;
    Ok(ExtendedE6 { sigma, node, store })
}

/// S8 acting on even subsets of eight points modulo the full set, carried into
/// the reduced E7 space by a symplectic isometry.
pub struct S8Embedding {
    pub perms: GroupStore<PermGroup>,
    /// Matrix `P` with `x -> x P` an isometry from subset coordinates.
    transfer: Vec<u64>,
    transfer_inv: Vec<u64>,
    pub image_order: u64,
}

const POINTS: usize = 8;
const SUBSET_DIM: usize = POINTS - 2;

/// Coordinates of an even subset of `0..8` in the basis `{i, i+1}`, `i < 6`.
fn subset_coords(mut set: u64) -> u64 {
    if set >> (POINTS - 1) & 1 == 1 {
        set ^= (1 << POINTS) - 1;
    }
    let mut c = 0u64;
    let mut carry = 0u64;
    for i in 0..SUBSET_DIM {
        let bit = (set >> i & 1) ^ carry;
        c |= bit << i;
        carry = bit;
    }
    debug_assert_eq!(carry, set >> SUBSET_DIM & 1, "subset has even size");
    c
}

fn subset_of_coords(c: u64) -> u64 {
    (0..SUBSET_DIM).filter(|i| c >> i & 1 == 1).fold(0, |acc, i| acc ^ (0b11 << i))
}

/// A symplectic basis `e1, f1, e2, f2, ...` of the space with Gram rows `form`.
fn symplectic_basis(form: &[u64]) -> Result<Vec<u64>, RootSystemError> {
    let pair = |x: u64, y: u64| SymplecticF2::pair(form, x, y);
    let mut pool: Vec<u64> = (0..form.len()).map(|i| 1u64 << i).collect();
    let mut basis = Vec::new();
    while let Some(pos) = pool.iter().position(|&v| v != 0) {
        let e = pool.remove(pos);
        if e == 0 {
            continue;
        }
        let Some(fpos) = pool.iter().position(|&v| pair(e, v)) else {
            return Err(RootSystemError::Structure("form is degenerate".into()));
        };
        let f = pool.remove(fpos);
        for v in pool.iter_mut() {
            let (a, b) = (pair(*v, f), pair(*v, e));
            if a {
                *v ^= e;
            }
            if b {
                *v ^= f;
            }
        }
        basis.push(e);
        basis.push(f);
    }
    Ok(basis)
}

impl S8Embedding {
    /// Matrix of a permutation on subset coordinates.
    fn subset_matrix(&self, p: Perm) -> SpKey {
        let space = SymplecticF2 { dim: SUBSET_DIM };
        let rows: Vec<u64> = (0..SUBSET_DIM)
            .map(|a| {
                let img = (1u64 << PermGroup::image(p, a)) | (1u64 << PermGroup::image(p, a + 1));
                subset_coords(img)
            })
            .collect();
        space.from_rows(&rows)
    }

    /// Image in the reduced E7 space: `P^-1 M P`.
    pub fn image(&self, p: Perm) -> SpKey {
        let space = SymplecticF2 { dim: SUBSET_DIM };
        let m = self.subset_matrix(p);
        let tinv = space.from_rows(&self.transfer_inv);
        let t = space.from_rows(&self.transfer);
        space.mul(&space.mul(&tinv, &m), &t)
    }
}

fn invert_rows(rows: &[u64]) -> Vec<u64> {
    let space = SymplecticF2 { dim: rows.len() };
    let inv = space.inv(&space.from_rows(rows));
    (0..rows.len()).map(|i| space.row(inv, i)).collect()
}

/// Builds the embedding and checks that it is an injective homomorphism into
/// the symplectic group.
pub fn s8_symplectic_embedding(sp: &SymplecticGroup) -> Result<S8Embedding, RootSystemError> {
    let group = PermGroup::new(POINTS);
    let perms = GroupStore::enumerate_exact(group, group.standard_generators(), 40_320)?;
    let subset_form: Vec<u64> = (0..SUBSET_DIM)
        .map(|a| {
            let sa = subset_of_coords(1 << a);
            (0..SUBSET_DIM).filter(|&b| (sa & subset_of_coords(1 << b)).count_ones() % 2 == 1).fold(0, |acc, b| acc | 1 << b)
        })
        .collect();
    let src = symplectic_basis(&subset_form)?;
    let dst = symplectic_basis(sp.reduction.form())?;
    // x P = x E_src^-1 E_dst
    let space = SymplecticF2 { dim: SUBSET_DIM };
    let p = space.mul(&space.from_rows(&invert_rows(&src)), &space.from_rows(&dst));
    let transfer: Vec<u64> = (0..SUBSET_DIM).map(|i| space.row(p, i)).collect();
    let transfer_inv = invert_rows(&transfer);
    let mut emb = S8Embedding { perms, transfer, transfer_inv, image_order: 0 };
    for i in 0..SUBSET_DIM {
        for j in 0..SUBSET_DIM {
            let x = emb.transfer[i];
            let y = emb.transfer[j];
            if SymplecticF2::pair(&subset_form, 1 << i, 1 << j) != SymplecticF2::pair(sp.reduction.form(), x, y) {
                return Err(RootSystemError::Structure("transfer is not an isometry".into()));
            }
        }
    }
    let gens = emb.perms.generators().to_vec();
    let images: Vec<SpKey> = gens.iter().map(|&g| emb.image(g)).collect();
    if images.iter().any(|k| !sp.store.contains(k)) {
        return Err(RootSystemError::Structure("permutation image is not symplectic".into()));
    }
    for &a in &gens {
        for &b in &gens {
            let lhs = emb.image(group.mul(&a, &b));
            let rhs = space.mul(&emb.image(a), &emb.image(b));
            if lhs != rhs {
                return Err(RootSystemError::NotHomomorphism("S8".into()));
            }
        }
    }
    let image = GroupStore::enumerate(space, images, 40_321)?;
    emb.image_order = image.order();
    if emb.image_order != 40_320 {
        return Err(RootSystemError::Structure(format!("image of S8 has order {}", emb.image_order)));
    }
    Ok(emb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_coordinates_round_trip() {
        for c in 0..64u64 {
            assert_eq!(subset_coords(subset_of_coords(c)), c);
        }
        // The complement represents the same class.
        assert_eq!(subset_coords(0b1111_1100), subset_coords(0b11));
    }

    #[test]
    fn symplectic_basis_is_symplectic() {
        let form = vec![0b10, 0b01];
        let b = symplectic_basis(&form).unwrap();
        assert!(SymplecticF2::pair(&form, b[0], b[1]));
    }
}

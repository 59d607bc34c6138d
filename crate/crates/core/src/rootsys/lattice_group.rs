//! Groups of root-system automorphisms keyed by the images of simple roots.

use super::RootSystem;
use crate::group::FiniteGroup;
use crate::lattice::matrix::small::Mat;
use std::sync::Arc;

/// Seven bits per simple root: the index of its image root. A root-system
/// automorphism is determined by these images, so the key is injective.
pub type RootImageKey = u64;

const BITS: u32 = 7;
const MASK: u64 = (1 << BITS) - 1;

/// The automorphism group of a root lattice restricted to the subgroup
/// generated by whatever generators a [`crate::group::GroupStore`] uses.
/// Multiplication by a registered element uses a precomputed root permutation.
#[derive(Clone)]
pub struct LatticeGroup {
    system: Arc<RootSystem>,
    registered: Vec<(RootImageKey, Vec<u16>)>,
}

impl LatticeGroup {
    pub fn new(system: Arc<RootSystem>) -> Self {
        assert!(system.roots().len() <= 1 << BITS && system.rank() * BITS as usize <= 64);
        let mut g = LatticeGroup { system, registered: Vec::new() };
        for i in 0..g.system.rank() {
            let k = g.simple_reflection(i);
            g.register(k);
        }
        g
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    /// Precomputes the root permutation of `key` for fast right multiplication.
    pub fn register(&mut self, key: RootImageKey) {
        if self.registered.iter().all(|(k, _)| *k != key) {
            let perm = self.root_permutation(key);
            self.registered.push((key, perm));
        }
    }

    pub fn image_index(key: RootImageKey, i: usize) -> usize {
        ((key >> (BITS * i as u32)) & MASK) as usize
    }

    fn from_images(images: impl IntoIterator<Item = usize>) -> RootImageKey {
        images.into_iter().enumerate().fold(0, |acc, (i, r)| acc | ((r as u64) << (BITS * i as u32)))
    }

    pub fn simple_reflection(&self, i: usize) -> RootImageKey {
        self.key_of_matrix(&self.system.simple_reflections()[i]).expect("reflections preserve roots")
    }

    pub fn minus_identity(&self) -> RootImageKey {
        Self::from_images((0..self.rank()).map(|i| self.system.negative_of(i)))
    }

    /// Key of a lattice map, or `None` if some simple root image is not a root.
    pub fn key_of_matrix(&self, g: &Mat) -> Option<RootImageKey> {
        let imgs: Option<Vec<usize>> = g.iter().map(|row| self.system.root_index(row)).collect();
        Some(Self::from_images(imgs?))
    }

    /// Matrix whose row `i` is the image of the `i`-th simple root.
    pub fn matrix(&self, key: RootImageKey) -> Mat {
        (0..self.rank()).map(|i| self.system.root(Self::image_index(key, i)).to_vec()).collect()
    }

    /// Index of the image of root `r` under `key`.
    pub fn apply(&self, key: RootImageKey, r: usize) -> usize {
        let root = self.system.root(r);
        let n = self.rank();
        let mut v = vec![0i64; n];
        for (i, &c) in root.iter().enumerate() {
            if c != 0 {
                let img = self.system.root(Self::image_index(key, i));
                for (o, x) in v.iter_mut().zip(img) {
                    *o += c * x;
                }
            }
        }
        self.system.root_index(&v).expect("automorphisms permute roots")
    }

    pub fn root_permutation(&self, key: RootImageKey) -> Vec<u16> {
        (0..self.system.roots().len()).map(|r| self.apply(key, r) as u16).collect()
    }

    pub fn mul_keys(&self, a: RootImageKey, b: RootImageKey) -> RootImageKey {
        let n = self.rank();
        if let Some((_, perm)) = self.registered.iter().find(|(k, _)| *k == b) {
            return Self::from_images((0..n).map(|i| perm[Self::image_index(a, i)] as usize));
        }
        Self::from_images((0..n).map(|i| self.apply(b, Self::image_index(a, i))))
    }
}

impl FiniteGroup for LatticeGroup {
    type Elem = RootImageKey;

    fn name(&self) -> String {
        format!("Aut({})", self.system.kind())
    }

    fn identity(&self) -> RootImageKey {
        Self::from_images(0..self.rank())
    }

    fn mul(&self, a: &RootImageKey, b: &RootImageKey) -> RootImageKey {
        self.mul_keys(*a, *b)
    }

    fn inv(&self, a: &RootImageKey) -> RootImageKey {
        let perm = self.root_permutation(*a);
        let mut inv = vec![0usize; perm.len()];
        for (r, &p) in perm.iter().enumerate() {
            inv[p as usize] = r;
        }
        Self::from_images((0..self.rank()).map(|i| inv[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupStore;
    use crate::lattice::matrix::small;
    use crate::rootsys::{build_root_system, CartanType};

    #[test]
    fn weyl_group_orders() {
        for kind in [CartanType::A(1), CartanType::A(2), CartanType::A(3), CartanType::A(4), CartanType::E6] {
            let lg = LatticeGroup::new(Arc::new(build_root_system(kind).unwrap()));
            let gens = (0..kind.rank()).map(|i| lg.simple_reflection(i)).collect();
            let store = GroupStore::enumerate_exact(lg, gens, kind.weyl_order()).unwrap();
            assert_eq!(store.order(), kind.weyl_order());
        }
    }

    #[test]
    fn keys_agree_with_matrices() {
        let rs = Arc::new(build_root_system(CartanType::E6).unwrap());
        let lg = LatticeGroup::new(rs.clone());
        let s: Vec<Mat> = rs.simple_reflections().to_vec();
        let m = small::mul(&small::mul(&s[0], &s[3]), &s[5]);
        let k = lg.mul_keys(lg.mul_keys(lg.simple_reflection(0), lg.simple_reflection(3)), lg.simple_reflection(5));
        assert_eq!(lg.matrix(k), m);
        assert_eq!(lg.key_of_matrix(&m), Some(k));
        assert_eq!(lg.mul(&k, &lg.inv(&k)), lg.identity());
        assert_eq!(lg.matrix(lg.minus_identity()), small::neg(&small::identity(6)));
    }
}

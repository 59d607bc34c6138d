//! Layers of toric arrangements: connected components of intersections of
//! character kernels in the torus `Hom(L, G_m)`.
//!
//! A layer is a coset of a subtorus. Its characters constant on it form the
//! saturated lattice `S` of a linear flat; the layer is that flat together
//! with the values `psi` in `Q/Z` of the characters of the flat's Hermite
//! basis on it.

use super::flats::{bits, permute_mask, FlatLattice, Mask};
use crate::lattice::matrix::small::{self, Mat};
use crate::lattice::{inverse_unimodular, smith_i64};
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use rustc_hash::FxHashMap;
use std::sync::Arc;

/// `x mod 1` in `[0, 1)`.
pub(crate) fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// Canonical identity of a layer: its flat and torsion coset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LayerKey {
    pub flat: usize,
    pub psi: Vec<Rational64>,
}

#[derive(Clone, Debug)]
pub struct Layer {
    pub key: LayerKey,
    pub rank: usize,
    /// Hyperplanes (characters) trivial on the layer.
    pub mask: Mask,
    /// `mu(T, Y)` in the poset of all layers.
    pub mobius: i64,
    /// Layers of one rank less containing this one.
    pub parents: Vec<usize>,
}

/// All layers by nondecreasing rank, the whole torus first.
#[derive(Clone, Debug)]
pub struct LayerPoset {
    pub lattice: Arc<FlatLattice>,
    pub layers: Vec<Layer>,
    pub index: FxHashMap<LayerKey, usize>,
    /// Least common multiple of the orders of all `psi` values.
    pub torsion_exponent: i64,
}

/// Coordinates of `v` in a Hermite basis, if `v` lies in its span.
pub(crate) fn coords_in_hnf(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let mut rest = v.to_vec();
    let mut c = Vec::with_capacity(basis.len());
    for b in basis {
        let p = b.iter().position(|&x| x != 0).expect("basis rows are nonzero");
        if rest[p] % b[p] != 0 {
            return None;
        }
        let k = rest[p] / b[p];
        for (r, x) in rest.iter_mut().zip(b) {
            *r -= k * x;
        }
        c.push(k);
    }
    rest.iter().all(|&x| x == 0).then_some(c)
}

fn pairing(c: &[i64], psi: &[Rational64]) -> Rational64 {
    frac(c.iter().zip(psi).map(|(&a, &p)| p * a).sum())
}

impl LayerPoset {
    fn basis(&self, key: &LayerKey) -> &[Vec<i64>] {
        &self.lattice.flats[key.flat].basis
    }

    fn psi_value(&self, key: &LayerKey, v: &[i64]) -> Option<Rational64> {
        coords_in_hnf(self.basis(key), v).map(|c| pairing(&c, &key.psi))
    }

    fn mask_of(&self, key: &LayerKey) -> Mask {
        let normals = &self.lattice.arrangement.normals;
        bits(self.lattice.flats[key.flat].mask)
            .filter(|&i| self.psi_value(key, &normals[i]).is_some_and(|x| x.is_zero()))
            .fold(0, |m, i| m | 1 << i)
    }

    /// Components of `Y ∩ ker(alpha)` over the normals `alpha` of one cover
    /// `child` of the flat of `Y`. With `S' = S + Z beta`, the extensions of
    /// `psi` are `x0 + t v` for `t` in `Q/Z`, and `alpha` vanishes at the
    /// `|k|` values of `t` solving `base + k t = 0`.
    fn children(&self, key: &LayerKey, child: usize, cls: Mask) -> Vec<Vec<Rational64>> {
        let h = &self.lattice.flats[child].basis;
        let r = key.psi.len();
        let (x0, v): (Vec<Rational64>, Vec<i64>) = if r == 0 {
            (vec![Rational64::zero()], vec![1])
        } else {
            let b: Mat = self
                .basis(key)
                .iter()
                .map(|row| coords_in_hnf(h, row).expect("a flat lies in its covers"))
                .collect();
            let s = smith_i64(&b, r + 1);
            debug_assert!(s.diagonal().iter().all(|&d| d == 1), "saturated in its cover");
            let mut y: Vec<Rational64> =
                s.u.iter().map(|row| row.iter().zip(&key.psi).map(|(&a, &p)| p * a).sum()).collect();
            y.push(Rational64::zero());
            let x0 = (0..=r).map(|i| frac((0..=r).map(|j| y[j] * s.v[i][j]).sum())).collect();
            let v = (0..=r).map(|i| s.v[i][r]).collect();
            (x0, v)
        };
        let mut out = Vec::new();
        for a in bits(cls) {
            let c = coords_in_hnf(h, &self.lattice.arrangement.normals[a]).expect("normal lies in its flat");
            let k = small::dot(&c, &v);
            debug_assert!(k != 0, "normal outside the smaller flat");
            let base = pairing(&c, &x0);
            for j in 0..k.abs() {
                let t = (Rational64::from(j) - base) / k;
                out.push((0..=r).map(|i| frac(x0[i] + t * v[i])).collect());
            }
        }
        out
    }

    /// Breadth-first construction from the whole torus.
    pub fn build(lattice: Arc<FlatLattice>) -> Self {
        let top = LayerKey { flat: 0, psi: Vec::new() };
        let mut poset = LayerPoset { lattice, layers: Vec::new(), index: FxHashMap::default(), torsion_exponent: 1 };
        poset.index.insert(top.clone(), 0);
        poset.layers.push(Layer { key: top, rank: 0, mask: 0, mobius: 1, parents: Vec::new() });
        let mut level: Vec<usize> = vec![0];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &li in &level {
                let key = poset.layers[li].key.clone();
                let lattice = Arc::clone(&poset.lattice);
                for &(child, cls) in &lattice.flats[key.flat].children {
                    for psi in poset.children(&key, child, cls) {
                        let ck = LayerKey { flat: child, psi };
                        let c = match poset.index.get(&ck) {
                            Some(&c) => c,
                            None => {
                                for p in &ck.psi {
                                    poset.torsion_exponent = poset.torsion_exponent.lcm(p.denom());
                                }
                                let mask = poset.mask_of(&ck);
                                let c = poset.layers.len();
                                poset.index.insert(ck.clone(), c);
                                poset.layers.push(Layer {
                                    key: ck,
                                    rank: lattice.flats[child].rank,
                                    mask,
                                    mobius: 0,
                                    parents: Vec::new(),
                                });
                                next.push(c);
                                c
                            }
                        };
                        if poset.layers[c].parents.last() != Some(&li) {
                            poset.layers[c].parents.push(li);
                        }
                    }
                }
            }
            level = next;
        }
        // Each interval [T, Y] is the geometric lattice of flats of the
        // characters trivial on Y, so Weisner's recursion over covers applies.
        for y in 1..poset.layers.len() {
            let a = poset.layers[y].mask.trailing_zeros();
            let mu: i64 = poset.layers[y]
                .parents
                .iter()
                .filter(|&&z| poset.layers[z].mask >> a & 1 == 0)
                .map(|&z| poset.layers[z].mobius)
                .sum();
            poset.layers[y].mobius = -mu;
        }
        log::debug!("layers by rank: {:?}", poset.counts_by_rank());
        poset
    }

    /// Whether `g` (acting on characters by `v -> v g`) maps the layer to
    /// itself. A stable mask makes the flat stable, so only `psi` is checked.
    pub fn is_stable(&self, layer: &Layer, g: &Mat, perm: &[u8]) -> bool {
        if permute_mask(layer.mask, perm) != layer.mask {
            return false;
        }
        self.basis(&layer.key).iter().zip(&layer.key.psi).all(|(b, &p)| {
            let img = small::vec_mul(b, g);
            self.psi_value(&layer.key, &img) == Some(p)
        })
    }

    pub fn basis_of(&self, layer: &Layer) -> &[Vec<i64>] {
        self.basis(&layer.key)
    }

    pub fn counts_by_rank(&self) -> Vec<usize> {
        let mut c = vec![0; self.lattice.dim() + 1];
        for l in &self.layers {
            c[l.rank] += 1;
        }
        c
    }
}

/// Matrix of `g` on `Z^n / S` for a saturated `S` stable under `g`, in a basis
/// adapted to `S`.
pub(crate) fn quotient_action(basis: &[Vec<i64>], g: &Mat) -> Mat {
    let n = g.len();
    let r = basis.len();
    if r == 0 {
        return g.clone();
    }
    // u b v = [I 0]: the first r rows of v^-1 span S.
    let s = smith_i64(basis, n);
    let v = s.v;
    let vinv = inverse_unimodular(&v).expect("unimodular transform");
    let m = small::mul(&small::mul(&vinv, g), &v);
    m[r..].iter().map(|row| row[r..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::super::flats::Arrangement;
    use super::*;

    fn build(dim: usize, normals: Vec<Vec<i64>>) -> LayerPoset {
        LayerPoset::build(Arc::new(FlatLattice::build(Arrangement::new(dim, normals))))
    }

    #[test]
    fn a1_torus_layers() {
        // Character 2x on G_m: kernel {1, -1}, two points.
        let p = build(1, vec![vec![2]]);
        assert_eq!(p.counts_by_rank(), vec![1, 2]);
        assert_eq!(p.torsion_exponent, 2);
        assert!(p.layers[1..].iter().all(|l| l.mobius == -1));
    }

    #[test]
    fn a2_torus_layers() {
        let p = build(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        // Three subtori meeting only at the identity.
        assert_eq!(p.counts_by_rank(), vec![1, 3, 1]);
        assert_eq!(p.layers.last().unwrap().mask, 0b111);
        assert_eq!(p.layers.last().unwrap().mobius, 2);
    }

    #[test]
    fn g2_style_torsion_points() {
        // x = 1 and x y^2 = 1 meet where y^2 = 1: two points.
        let p = build(2, vec![vec![1, 0], vec![1, 2]]);
        assert_eq!(p.counts_by_rank(), vec![1, 2, 2]);
    }

    #[test]
    fn quotient_of_a_stable_sublattice() {
        let g = vec![vec![0, 1], vec![1, 0]];
        let a = quotient_action(&[vec![1, 1]], &g);
        assert_eq!(a, vec![vec![-1]]);
    }
}

//! Reduction of a root lattice modulo 2 onto a symplectic space over F2.

use super::lattice_group::{LatticeGroup, RootImageKey};
use super::{RootSystem, RootSystemError};
use crate::group::{FiniteGroup, GroupStore};
use crate::lattice::matrix::small::Mat;
use std::sync::Arc;

/// A square matrix over F2 of dimension `d <= 8`; row `i` occupies bits
/// `d*i .. d*i + d`, column `j` of a row is bit `j`.
pub type SpKey = u64;

/// The general linear group over F2 in a fixed dimension, with elements as
/// packed row-convention matrices.
#[derive(Clone, Copy, Debug)]
pub struct SymplecticF2 {
    pub dim: usize,
}

impl SymplecticF2 {
    pub fn row(&self, a: SpKey, i: usize) -> u64 {
        (a >> (self.dim * i)) & ((1 << self.dim) - 1)
    }

    pub fn from_rows(&self, rows: &[u64]) -> SpKey {
        rows.iter().enumerate().fold(0, |acc, (i, &r)| acc | (r << (self.dim * i)))
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: u64, a: SpKey) -> u64 {
        (0..self.dim).filter(|j| v >> j & 1 == 1).fold(0, |acc, j| acc ^ self.row(a, j))
    }

    /// Bilinear form given by the Gram rows `form`.
    pub fn pair(form: &[u64], x: u64, y: u64) -> bool {
        let fx = (0..form.len()).filter(|i| x >> i & 1 == 1).fold(0, |acc, i| acc ^ form[i]);
        (fx & y).count_ones() % 2 == 1
    }

    pub fn preserves(&self, a: SpKey, form: &[u64]) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| Self::pair(form, 1 << i, 1 << j) == Self::pair(form, self.row(a, i), self.row(a, j)))
        })
    }
}

impl FiniteGroup for SymplecticF2 {
    type Elem = SpKey;

    fn name(&self) -> String {
        format!("GL({},2)", self.dim)
    }

    fn identity(&self) -> SpKey {
        self.from_rows(&(0..self.dim).map(|i| 1u64 << i).collect::<Vec<_>>())
    }

    fn mul(&self, a: &SpKey, b: &SpKey) -> SpKey {
        let d = self.dim;
        let mask = (1u64 << d) - 1;
        let mut brows = [0u64; 8];
        for (j, r) in brows.iter_mut().enumerate().take(d) {
            *r = (b >> (d * j)) & mask;
        }
        let mut out = 0u64;
        for i in 0..d {
            let mut v = (a >> (d * i)) & mask;
            let mut acc = 0u64;
            while v != 0 {
                acc ^= brows[v.trailing_zeros() as usize];
                v &= v - 1;
            }
            out |= acc << (d * i);
        }
        out
    }

    fn inv(&self, a: &SpKey) -> SpKey {
        let d = self.dim;
        let mut m: Vec<u64> = (0..d).map(|i| self.row(*a, i)).collect();
        let mut inv: Vec<u64> = (0..d).map(|i| 1u64 << i).collect();
        for col in 0..d {
            let p = (col..d).find(|&r| m[r] >> col & 1 == 1).expect("invertible matrix");
            m.swap(col, p);
            inv.swap(col, p);
            for r in 0..d {
                if r != col && m[r] >> col & 1 == 1 {
                    m[r] ^= m[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        self.from_rows(&inv)
    }
}

/// The quotient `L/2L` modulo the radical of the reduced form, with the
/// induced nondegenerate alternating form.
#[derive(Clone)]
pub struct Mod2Reduction {
    system: Arc<RootSystem>,
    radical: Option<u64>,
    pivot: Option<usize>,
    kept: Vec<usize>,
    root_images: Vec<u64>,
    form: Vec<u64>,
}

impl Mod2Reduction {
    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn space(&self) -> SymplecticF2 {
        SymplecticF2 { dim: self.dim() }
    }

    /// Gram rows of the alternating form on the quotient.
    pub fn form(&self) -> &[u64] {
        &self.form
    }

    /// Radical of the reduced form as a bit vector in simple-root coordinates.
    pub fn radical(&self) -> Option<u64> {
        self.radical
    }

    pub fn reduce_bits(&self, mut x: u64) -> u64 {
        if let (Some(r), Some(p)) = (self.radical, self.pivot) {
            if x >> p & 1 == 1 {
                x ^= r;
            }
        }
        self.kept.iter().enumerate().filter(|(_, &c)| x >> c & 1 == 1).fold(0, |acc, (k, _)| acc | 1 << k)
    }

    pub fn reduce_vector(&self, v: &[i64]) -> u64 {
        let bits = v.iter().enumerate().filter(|(_, c)| c.rem_euclid(2) == 1).fold(0, |acc, (i, _)| acc | 1 << i);
        self.reduce_bits(bits)
    }

    /// Induced map on the quotient of a lattice automorphism.
    pub fn key_of_matrix(&self, g: &Mat) -> SpKey {
        let rows: Vec<u64> = self.kept.iter().map(|&i| self.reduce_vector(&g[i])).collect();
        self.space().from_rows(&rows)
    }

    pub fn key_of_root_images(&self, key: RootImageKey) -> SpKey {
        let rows: Vec<u64> =
            self.kept.iter().map(|&i| self.root_images[LatticeGroup::image_index(key, i)]).collect();
        self.space().from_rows(&rows)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }
}

/// The symplectic group of the reduced form, enumerated from the images of
/// the simple reflections.
pub struct SymplecticGroup {
    pub reduction: Mod2Reduction,
    pub store: GroupStore<SymplecticF2>,
}

/// Order of `Sp(2m, 2)`.
fn symplectic_order(two_m: usize) -> u64 {
    let m = two_m as u32 / 2;
    (1..=m).fold(2u64.pow(m * m), |acc, i| acc * (4u64.pow(i) - 1))
}

/// Kernel of a square F2 matrix given by rows.
fn f2_kernel(rows: &[u64], n: usize) -> Vec<u64> {
    // Column-reduce: solve x * M = 0 for row vectors x, i.e. kernel of M^T.
    let mut cols: Vec<u64> = (0..n).map(|j| (0..n).filter(|&i| rows[i] >> j & 1 == 1).fold(0, |a, i| a | 1 << i)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| cols[i] >> c & 1 == 1) else { continue };
        cols.swap(r, p);
        for i in 0..n {
            if i != r && cols[i] >> c & 1 == 1 {
                cols[i] ^= cols[r];
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = 1u64 << f;
            for (k, &p) in pivots.iter().enumerate() {
                if cols[k] >> f & 1 == 1 {
                    x |= 1 << p;
                }
            }
            x
        })
        .collect()
}

/// Reduces the root lattice modulo 2, quotients by the radical of the form,
/// and enumerates the symplectic group generated by the simple reflections.
pub fn mod2_symplectic_reduction(system: Arc<RootSystem>) -> Result<SymplecticGroup, RootSystemError> {
    let n = system.rank();
    let gram: Vec<u64> = system
        .cartan()
        .iter()
        .map(|row| row.iter().enumerate().filter(|(_, c)| c.rem_euclid(2) == 1).fold(0, |a, (j, _)| a | 1 << j))
        .collect();
    let kernel = f2_kernel(&gram, n);
    let (radical, pivot) = match kernel.as_slice() {
        [] => (None, None),
        [r] => (Some(*r), Some(r.trailing_zeros() as usize)),
        _ => return Err(RootSystemError::Radical(kernel.len())),
    };
    let kept: Vec<usize> = (0..n).filter(|&i| Some(i) != pivot).collect();
    let mut red = Mod2Reduction { system: system.clone(), radical, pivot, kept, root_images: Vec::new(), form: Vec::new() };
    red.root_images = system.roots().iter().map(|r| red.reduce_vector(r)).collect();
    red.form = red
        .kept
        .iter()
        .map(|&i| red.kept.iter().enumerate().filter(|(_, &j)| gram[i] >> j & 1 == 1).fold(0, |a, (k, _)| a | 1 << k))
        .collect();
    let space = red.space();
    let gens: Vec<SpKey> = system.simple_reflections().iter().map(|s| red.key_of_matrix(s)).collect();
    if let Some(bad) = gens.iter().position(|&g| !space.preserves(g, &red.form)) {
        return Err(RootSystemError::Structure(format!("reflection {bad} does not preserve the reduced form")));
    }
    let expected = symplectic_order(red.dim());
    let store = GroupStore::enumerate_exact(space, gens, expected)?;
    Ok(SymplecticGroup { reduction: red, store })
}

/// Whether `-I` lies in the enumerated group; it is central automatically.
pub fn minus_identity_membership(store: &GroupStore<LatticeGroup>) -> bool {
    store.contains(&store.group().minus_identity())
}

/// Verifies that `w -> (det w, reduction of w)` is a bijection from the
/// enumerated Weyl group onto `{+1, -1} x Sp`, and returns the number of
/// distinct images.
pub fn split_direct_product(
    weyl: &GroupStore<LatticeGroup>,
    sp: &SymplecticGroup,
) -> Result<usize, RootSystemError> {
    let n = weyl.order() as usize;
    let mut seen = rustc_hash::FxHashSet::default();
    seen.reserve(n);
    for i in 0..n {
        // Generators are reflections, so the determinant is the word-length parity.
        let det_negative = weyl.word_length(i) % 2 == 1;
        let key = sp.reduction.key_of_root_images(weyl.element(i));
        if !sp.store.contains(&key) {
            return Err(RootSystemError::Structure("reduction leaves the symplectic group".into()));
        }
        seen.insert((det_negative, key));
    }
    if seen.len() as u64 != 2 * sp.store.order() || seen.len() != n {
        return Err(RootSystemError::Structure(format!("split map has {} images on {} elements", seen.len(), n)));
    }
    Ok(seen.len())
}

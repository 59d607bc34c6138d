//! Simply-laced root systems, their Weyl groups, and the finite groups built
//! from them: the mod-2 symplectic image, the E6 parabolic, its extension by
//! the inversion, and an embedded symmetric group.

mod embeddings;
mod lattice_group;
mod symplectic;

pub use embeddings::{extended_e6_with_inversion, parabolic_e6_in_e7, s8_symplectic_embedding, ExtendedE6, ParabolicE6, S8Embedding};
pub use lattice_group::{LatticeGroup, RootImageKey};
pub use symplectic::{
    minus_identity_membership, mod2_symplectic_reduction, split_direct_product, Mod2Reduction, SpKey, SymplecticF2,
    SymplecticGroup,
};

use crate::group::GroupError;
use crate::lattice::matrix::small::{self, Mat};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RootSystemError {
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("expected {expected} roots, generated {found}")]
    RootCount { expected: usize, found: usize },
    #[error("mod-2 form has radical of dimension {0}, expected 1")]
    Radical(usize),
    #[error("map is not a homomorphism on {0}")]
    NotHomomorphism(String),
    #[error("{0}")]
    Structure(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Cartan type of a simply-laced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A(usize),
    E6,
    E7,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) => n,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
        }
    }

    /// Edges of the Dynkin diagram, nodes numbered from zero in Bourbaki order.
    fn edges(self) -> Vec<(usize, usize)> {
        match self {
            CartanType::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            CartanType::E6 => vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)],
            CartanType::E7 => vec![(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3)],
        }
    }

    fn expected_roots(self) -> usize {
        match self {
            CartanType::A(n) => n * (n + 1),
            CartanType::E6 => 72,
            CartanType::E7 => 126,
        }
    }

    pub fn weyl_order(self) -> u64 {
        match self {
            CartanType::A(n) => (1..=n as u64 + 1).product(),
            CartanType::E6 => 51_840,
            CartanType::E7 => 2_903_040,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::E6 => f.write_str("E6"),
            CartanType::E7 => f.write_str("E7"),
        }
    }
}

impl std::str::FromStr for CartanType {
    type Err = RootSystemError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "E6" => Ok(CartanType::E6),
            "E7" => Ok(CartanType::E7),
            _ => s
                .strip_prefix('A')
                .and_then(|n| n.parse().ok())
                .filter(|&n| n >= 1)
                .map(CartanType::A)
                .ok_or_else(|| RootSystemError::Unsupported(s.into())),
        }
    }
}

/// Packs a small coefficient vector into a hash key.
pub(crate) fn pack_vector(v: &[i64]) -> u64 {
    v.iter().fold(0u64, |acc, &c| (acc << 5) | ((c + 16) as u64 & 0x1f))
}

/// A root system in the basis of simple roots, with the Cartan matrix as Gram
/// form. Roots are row vectors; a lattice map `g` acts by `v -> v g`.
#[derive(Clone)]
pub struct RootSystem {
    kind: CartanType,
    cartan: Mat,
    /// Positive roots sorted by height, then the negatives in the same order.
    roots: Vec<Vec<i64>>,
    index: FxHashMap<u64, u16>,
    reflections: Vec<Mat>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}, {} roots)", self.kind, self.roots.len())
    }
}

/// Builds the root system of the given type by closing the simple roots under
/// the simple reflections.
pub fn build_root_system(kind: CartanType) -> Result<RootSystem, RootSystemError> {
    let n = kind.rank();
    if n == 0 || n > 12 {
        return Err(RootSystemError::Unsupported(kind.to_string()));
    }
    let mut cartan = vec![vec![0i64; n]; n];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in kind.edges() {
        cartan[a][b] = -1;
        cartan[b][a] = -1;
    }
    RootSystem::from_cartan(kind, cartan)
}

impl RootSystem {
    fn from_cartan(kind: CartanType, cartan: Mat) -> Result<Self, RootSystemError> {
        let n = cartan.len();
        let reflections: Vec<Mat> = (0..n)
            .map(|i| {
                // v s_i = v - (v C)_i e_i
                let mut s = small::identity(n);
                for (a, row) in s.iter_mut().enumerate() {
                    row[i] -= cartan[a][i];
                }
                s
            })
            .collect();
        let mut seen: FxHashMap<u64, ()> = FxHashMap::default();
        let mut found: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            if seen.insert(pack_vector(&e), ()).is_none() {
                found.push(e);
            }
        }
        let mut head = 0;
        while head < found.len() {
            let v = found[head].clone();
            for s in &reflections {
                let w = small::vec_mul(&v, s);
                if seen.insert(pack_vector(&w), ()).is_none() {
                    found.push(w);
                }
            }
            head += 1;
        }
        if found.len() != kind.expected_roots() {
            return Err(RootSystemError::RootCount { expected: kind.expected_roots(), found: found.len() });
        }
        let mut positive: Vec<Vec<i64>> = found.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let negatives: Vec<Vec<i64>> = positive.iter().map(|r| r.iter().map(|c| -c).collect()).collect();
        let roots: Vec<Vec<i64>> = positive.into_iter().chain(negatives).collect();
        let index = roots.iter().enumerate().map(|(i, r)| (pack_vector(r), i as u16)).collect();
        Ok(RootSystem { kind, cartan, roots, index, reflections })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &Mat {
        &self.cartan
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.num_positive()]
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn root_index(&self, v: &[i64]) -> Option<usize> {
        if v.iter().any(|c| c.abs() > 15) {
            return None;
        }
        self.index.get(&pack_vector(v)).map(|&i| i as usize)
    }

    /// Index of `-roots[i]`.
    pub fn negative_of(&self, i: usize) -> usize {
        let p = self.num_positive();
        if i < p {
            i + p
        } else {
            i - p
        }
    }

    pub fn simple_reflections(&self) -> &[Mat] {
        &self.reflections
    }

    /// Inner product with respect to the Cartan form.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        small::dot(&small::vec_mul(a, &self.cartan), b)
    }

    /// True when `g` maps roots to roots and preserves the form.
    pub fn is_automorphism(&self, g: &Mat) -> bool {
        let gt = small::transpose(g);
        small::mul(&small::mul(g, &self.cartan), &gt) == self.cartan
            && self.roots.iter().all(|r| self.root_index(&small::vec_mul(r, g)).is_some())
    }

    /// Permutation of positive-root indices induced by `g`, identifying a
    /// root with its negative.
    pub fn hyperplane_permutation(&self, g: &Mat) -> Vec<u8> {
        let p = self.num_positive();
        self.positive_roots()
            .iter()
            .map(|r| {
                let i = self.root_index(&small::vec_mul(r, g)).expect("g preserves the root system");
                (if i < p { i } else { i - p }) as u8
            })
            .collect()
    }

    /// Exponents from the height distribution of positive roots: the number
    /// of exponents at least `k` equals the number of roots of height `k`.
    pub fn exponents(&self) -> Vec<u64> {
        let heights: Vec<usize> = self.positive_roots().iter().map(|r| r.iter().sum::<i64>() as usize).collect();
        let max_h = heights.iter().copied().max().unwrap_or(0);
        let counts: Vec<usize> = (1..=max_h).map(|h| heights.iter().filter(|&&x| x == h).count()).collect();
        let mut exps = Vec::new();
        for (k, &c) in counts.iter().enumerate() {
            let next = counts.get(k + 1).copied().unwrap_or(0);
            exps.extend(std::iter::repeat_n((k + 1) as u64, c - next));
        }
        exps.sort_unstable();
        exps
    }

    /// The sub-root-system of roots with zero coefficient at `node`, in the
    /// coordinates of the remaining simple roots.
    pub fn delete_node(&self, node: usize, kind: CartanType) -> Result<RootSystem, RootSystemError> {
        let keep: Vec<usize> = (0..self.rank()).filter(|&i| i != node).collect();
        let cartan: Mat = keep.iter().map(|&i| keep.iter().map(|&j| self.cartan[i][j]).collect()).collect();
        let sub = RootSystem::from_cartan(kind, cartan)?;
        let restricted = self.roots.iter().filter(|r| r[node] == 0).count();
        if restricted != sub.roots.len() {
            return Err(RootSystemError::RootCount { expected: sub.roots.len(), found: restricted });
        }
        Ok(sub)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts_and_exponents() {
        let e7 = build_root_system(CartanType::E7).unwrap();
        assert_eq!(e7.roots().len(), 126);
        assert_eq!(e7.exponents(), vec![1, 5, 7, 9, 11, 13, 17]);
        let e6 = build_root_system(CartanType::E6).unwrap();
        assert_eq!(e6.roots().len(), 72);
        assert_eq!(e6.exponents(), vec![1, 4, 5, 7, 8, 11]);
        let a3 = build_root_system(CartanType::A(3)).unwrap();
        assert_eq!(a3.exponents(), vec![1, 2, 3]);
        // Highest root of E7.
        assert_eq!(e7.root(62), &[2, 2, 3, 4, 3, 2, 1]);
    }

    #[test]
    fn roots_have_norm_two_and_reflections_are_automorphisms() {
        for kind in [CartanType::A(4), CartanType::E6, CartanType::E7] {
            let rs = build_root_system(kind).unwrap();
            assert!(rs.roots().iter().all(|r| rs.form(r, r) == 2));
            for s in rs.simple_reflections() {
                assert!(rs.is_automorphism(s));
                assert_eq!(small::mul(s, s), small::identity(rs.rank()));
            }
            for i in 0..rs.roots().len() {
                let neg: Vec<i64> = rs.root(i).iter().map(|c| -c).collect();
                assert_eq!(rs.root_index(&neg), Some(rs.negative_of(i)));
            }
        }
    }

    #[test]
    fn deleting_the_end_node_of_e7_gives_e6() {
        let e7 = build_root_system(CartanType::E7).unwrap();
        let sub = e7.delete_node(6, CartanType::E6).unwrap();
        let e6 = build_root_system(CartanType::E6).unwrap();
        assert_eq!(sub.cartan(), e6.cartan());
        assert!(e7.delete_node(0, CartanType::E6).is_err());
    }

    #[test]
    fn parse_cartan_type() {
        assert_eq!("A3".parse::<CartanType>().unwrap(), CartanType::A(3));
        assert_eq!("E7".parse::<CartanType>().unwrap(), CartanType::E7);
        assert!("B2".parse::<CartanType>().is_err());
    }
}

//! Finite groups given by generators, enumerated by breadth-first closure.

use rustc_hash::FxHashMap;
use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure of {name} exceeded {bound} elements")]
    TooLarge { name: String, bound: usize },
    #[error("expected order {expected} for {name}, found {found}")]
    WrongOrder { name: String, expected: u64, found: u64 },
    #[error("{0}")]
    Invalid(String),
}

/// A group with a compact, totally ordered element encoding. `mul(a, b)` is
/// the product `ab`; for matrix groups this is the row-vector convention
/// `v -> v a b`, for permutations "first `a`, then `b`".
pub trait FiniteGroup: Sync + Send {
    type Elem: Copy + Eq + Hash + Ord + Send + Sync + Debug;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = *a;
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    fn order_of(&self, a: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut x = *a;
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }

    /// `g^-1 x g`.
    fn conjugate(&self, x: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(g), x), g)
    }
}

/// All elements of the group generated by `generators`, with a spanning tree
/// of right multiplications so every element has a generator word.
pub struct GroupStore<G: FiniteGroup> {
    group: G,
    generators: Vec<G::Elem>,
    elements: Vec<G::Elem>,
    index: FxHashMap<G::Elem, u32>,
    /// For each element except the identity: parent index and generator.
    parent: Vec<(u32, u8)>,
    depth: Vec<u16>,
}

impl<G: FiniteGroup> GroupStore<G> {
    /// Breadth-first closure; fails once more than `bound` elements appear.
    pub fn enumerate(group: G, generators: Vec<G::Elem>, bound: usize) -> Result<Self, GroupError> {
        assert!(generators.len() < 256, "generator index fits a byte");
        let id = group.identity();
        let mut elements = vec![id];
        let mut index = FxHashMap::default();
        index.insert(id, 0u32);
        let mut parent = vec![(0u32, 0u8)];
        let mut depth = vec![0u16];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head];
            for (gi, g) in generators.iter().enumerate() {
                let y = group.mul(&x, g);
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                    if elements.len() >= bound {
                        return Err(GroupError::TooLarge { name: group.name(), bound });
                    }
                    e.insert(elements.len() as u32);
                    elements.push(y);
                    parent.push((head as u32, gi as u8));
                    depth.push(depth[head] + 1);
                }
            }
            head += 1;
        }
        log::debug!("enumerated {} with {} elements", group.name(), elements.len());
        Ok(GroupStore { group, generators, elements, index, parent, depth })
    }

    /// As [`GroupStore::enumerate`], and checks the resulting order.
    pub fn enumerate_exact(group: G, generators: Vec<G::Elem>, order: u64) -> Result<Self, GroupError> {
        let store = Self::enumerate(group, generators, order as usize + 1)?;
        if store.order() != order {
            return Err(GroupError::WrongOrder { name: store.group.name(), expected: order, found: store.order() });
        }
        Ok(store)
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn generators(&self) -> &[G::Elem] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> G::Elem {
        self.elements[i]
    }

    pub fn index_of(&self, x: &G::Elem) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn contains(&self, x: &G::Elem) -> bool {
        self.index.contains_key(x)
    }

    /// Generator indices `w` with `element(i) = gens[w0] gens[w1] ...`.
    pub fn word(&self, mut i: usize) -> Vec<u8> {
        let mut w = Vec::with_capacity(self.depth[i] as usize);
        while i != 0 {
            let (p, g) = self.parent[i];
            w.push(g);
            i = p as usize;
        }
        w.reverse();
        w
    }

    /// Length of the spanning-tree word, which is minimal in the generators.
    pub fn word_length(&self, i: usize) -> usize {
        self.depth[i] as usize
    }
}

/// Permutations of `{0, .., n-1}`, `n <= 16`, packed four bits per point.
#[derive(Clone, Copy, Debug)]
pub struct PermGroup {
    pub degree: usize,
}

/// A packed permutation; nibble `i` holds the image of `i`.
pub type Perm = u64;

impl PermGroup {
    pub fn new(degree: usize) -> Self {
        assert!((1..=16).contains(&degree));
        PermGroup { degree }
    }

    pub fn image(p: Perm, i: usize) -> usize {
        ((p >> (4 * i)) & 0xf) as usize
    }

    pub fn from_images(images: &[usize]) -> Perm {
        images.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
    }

    pub fn images(&self, p: Perm) -> Vec<usize> {
        (0..self.degree).map(|i| Self::image(p, i)).collect()
    }

    /// The cycle `(a b ... )` as a permutation.
    pub fn cycle(&self, points: &[usize]) -> Perm {
        let mut im: Vec<usize> = (0..self.degree).collect();
        for (k, &a) in points.iter().enumerate() {
            im[a] = points[(k + 1) % points.len()];
        }
        Self::from_images(&im)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self, p: Perm) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = Self::image(p, x);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Standard generators: the transposition (0 1) and the long cycle.
    pub fn standard_generators(&self) -> Vec<Perm> {
        if self.degree == 1 {
            return vec![self.identity()];
        }
        vec![self.cycle(&[0, 1]), self.cycle(&(0..self.degree).collect::<Vec<_>>())]
    }
}

impl FiniteGroup for PermGroup {
    type Elem = Perm;

    fn name(&self) -> String {
        format!("S{}", self.degree)
    }

    fn identity(&self) -> Perm {
        Self::from_images(&(0..self.degree).collect::<Vec<_>>())
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        (0..self.degree).fold(0u64, |acc, i| acc | ((Self::image(*b, Self::image(*a, i)) as u64) << (4 * i)))
    }

    fn inv(&self, a: &Perm) -> Perm {
        (0..self.degree).fold(0u64, |acc, i| acc | ((i as u64) << (4 * Self::image(*a, i))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        for (n, order) in [(1, 1), (3, 6), (5, 120), (8, 40320)] {
            let g = PermGroup::new(n);
            let store = GroupStore::enumerate(g, g.standard_generators(), 50_000).unwrap();
            assert_eq!(store.order(), order);
        }
    }

    #[test]
    fn words_reproduce_elements() {
        let g = PermGroup::new(5);
        let store = GroupStore::enumerate(g, g.standard_generators(), 200).unwrap();
        for i in 0..store.elements().len() {
            let w = store.word(i);
            let x = w.iter().fold(g.identity(), |acc, &k| g.mul(&acc, &store.generators()[k as usize]));
            assert_eq!(x, store.element(i));
        }
    }

    #[test]
    fn closure_bound_is_enforced() {
        let g = PermGroup::new(6);
        assert!(matches!(
            GroupStore::enumerate(g, g.standard_generators(), 100),
            Err(GroupError::TooLarge { .. })
        ));
    }

    #[test]
    fn permutation_conventions() {
        let g = PermGroup::new(4);
        let a = g.cycle(&[0, 1]);
        let b = g.cycle(&[1, 2]);
        // first a then b: 0 -> 1 -> 2
        assert_eq!(PermGroup::image(g.mul(&a, &b), 0), 2);
        assert_eq!(g.mul(&a, &g.inv(&a)), g.identity());
        assert_eq!(g.cycle_type(g.cycle(&[0, 1, 2])), vec![3, 1]);
        assert_eq!(g.order_of(&g.cycle(&[0, 1, 2, 3])), 4);
    }
}

//! Intersection lattices of linear arrangements given by integer normals, and
//! Möbius functions of their subposets of flats fixed by a symmetry.

use super::span::{integer_kernel, primitive, SpanComplement};
use crate::lattice::hnf_i64;
use crate::lattice::matrix::small;
use rustc_hash::FxHashMap;

/// A set of hyperplanes as a bit mask over an indexed list of normals.
pub type Mask = u64;

/// Normals of a central arrangement in `Q^n`, at most 64 of them.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
}

impl Arrangement {
    pub fn new(dim: usize, normals: Vec<Vec<i64>>) -> Self {
        assert!(normals.len() <= 64, "masks hold at most 64 hyperplanes");
        Arrangement { dim, normals }
    }

    pub fn full_mask(&self) -> Mask {
        if self.normals.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.normals.len()) - 1
        }
    }
}

/// A flat, recorded by the hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub mask: Mask,
    /// Rank of the span of the normals, the codimension of the flat.
    pub rank: usize,
    pub mobius: i64,
}

/// Flats sorted by rank with Möbius values `mu(V, X)` of the poset they form,
/// the ambient space first.
#[derive(Clone, Debug)]
pub struct FlatPoset {
    pub dim: usize,
    pub flats: Vec<Flat>,
}

impl FlatPoset {
    /// `sum_X mu(V, X) q^dim X` as coefficients, lowest degree first.
    pub fn characteristic_coefficients(&self) -> Vec<i64> {
        let mut c = vec![0i64; self.dim + 1];
        for f in &self.flats {
            c[self.dim - f.rank] = c[self.dim - f.rank].checked_add(f.mobius).expect("Möbius sums fit i64");
        }
        c
    }

    pub fn top(&self) -> &Flat {
        self.flats.iter().max_by_key(|f| f.mask.count_ones()).expect("at least the ambient space")
    }

    /// Fills in Möbius values from `mu(X) = -sum_{Y < X} mu(Y)`; the order
    /// is inclusion of masks, and flats must be sorted by rank.
    fn with_mobius(dim: usize, ranked: Vec<(Mask, usize)>) -> Self {
        let mut flats: Vec<Flat> = Vec::with_capacity(ranked.len());
        for (i, &(m, r)) in ranked.iter().enumerate() {
            let mobius = if i == 0 {
                1
            } else {
                -flats.iter().filter(|y| y.rank < r && y.mask & !m == 0).map(|y| y.mobius).sum::<i64>()
            };
            flats.push(Flat { mask: m, rank: r, mobius });
        }
        FlatPoset { dim, flats }
    }
}

/// A flat of the full intersection lattice with its cover relations.
#[derive(Clone, Debug)]
pub struct LatticeFlat {
    pub mask: Mask,
    pub rank: usize,
    /// Hermite basis of the saturated lattice spanned by the normals.
    pub basis: Vec<Vec<i64>>,
    pub mobius: i64,
    /// Covering flats with the hyperplanes each one adds.
    pub children: Vec<(usize, Mask)>,
    pub parents: Vec<usize>,
}

/// The intersection lattice, flats stored by nondecreasing rank.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    pub arrangement: Arrangement,
    pub flats: Vec<LatticeFlat>,
    pub index: FxHashMap<Mask, usize>,
}

pub(crate) fn permute_mask(mask: Mask, perm: &[u8]) -> Mask {
    bits(mask).fold(0, |m, i| m | 1 << perm[i])
}

impl FlatLattice {
    /// Rank by rank: the covers of `X` are `X` plus one class of the normals
    /// outside `X`, two normals sharing a class when their projections
    /// modulo the span of `X` are parallel.
    pub fn build(arrangement: Arrangement) -> Self {
        let n = arrangement.dim;
        let full = arrangement.full_mask();
        let bottom = LatticeFlat { mask: 0, rank: 0, basis: Vec::new(), mobius: 1, children: Vec::new(), parents: Vec::new() };
        let mut lattice = FlatLattice { arrangement, flats: vec![bottom], index: FxHashMap::default() };
        lattice.index.insert(0, 0);
        let mut level: Vec<(usize, SpanComplement)> = vec![(0, SpanComplement::zero(n))];
        while !level.is_empty() {
            let mut next = Vec::new();
            for (x, comp) in &level {
                let mask = lattice.flats[*x].mask;
                let mut classes: Vec<(Vec<i64>, Mask)> = Vec::new();
                let mut by_dir: FxHashMap<Vec<i64>, usize> = FxHashMap::default();
                for i in bits(full & !mask) {
                    let a = &lattice.arrangement.normals[i];
                    let dir = primitive(comp.complement.iter().map(|k| small::dot(k, a)).collect());
                    match by_dir.get(&dir) {
                        Some(&c) => classes[c].1 |= 1 << i,
                        None => {
                            by_dir.insert(dir.clone(), classes.len());
                            classes.push((dir, 1 << i));
                        }
                    }
                }
                for (_, cls) in classes {
                    let child_mask = mask | cls;
                    let c = match lattice.index.get(&child_mask) {
                        Some(&c) => c,
                        None => {
                            let first = cls.trailing_zeros() as usize;
                            let comp2 = comp.extend(&lattice.arrangement.normals[first]);
                            let basis = hnf_i64(&integer_kernel(&comp2.complement, n));
                            let c = lattice.flats.len();
                            lattice.flats.push(LatticeFlat {
                                mask: child_mask,
                                rank: comp2.rank(),
                                basis,
                                mobius: 0,
                                children: Vec::new(),
                                parents: Vec::new(),
                            });
                            lattice.index.insert(child_mask, c);
                            next.push((c, comp2));
                            c
                        }
                    };
                    lattice.flats[*x].children.push((c, cls));
                    lattice.flats[c].parents.push(*x);
                }
            }
            level = next;
        }
        // Weisner: for an atom a below X, mu(X) = -sum of mu(Z) over the
        // coatoms Z of [0, X] not containing a.
        for x in 1..lattice.flats.len() {
            let a = lattice.flats[x].mask.trailing_zeros();
            let mu: i64 = lattice.flats[x]
                .parents
                .iter()
                .filter(|&&z| lattice.flats[z].mask >> a & 1 == 0)
                .map(|&z| lattice.flats[z].mobius)
                .sum();
            lattice.flats[x].mobius = -mu;
        }
        lattice
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.arrangement.dim
    }

    /// The whole lattice as a poset.
    pub fn poset(&self) -> FlatPoset {
        FlatPoset {
            dim: self.dim(),
            flats: self.flats.iter().map(|f| Flat { mask: f.mask, rank: f.rank, mobius: f.mobius }).collect(),
        }
    }

    /// The smallest flat containing flat `x` and hyperplane `i`.
    pub fn join_atom(&self, x: usize, i: usize) -> usize {
        if self.flats[x].mask >> i & 1 == 1 {
            return x;
        }
        self.flats[x].children.iter().find(|(_, cls)| cls >> i & 1 == 1).expect("every hyperplane lies in a cover").0
    }

    /// Flats fixed by the hyperplane permutation `perm`, with the Möbius
    /// function of the fixed subposet.
    pub fn stable(&self, perm: &[u8]) -> FlatPoset {
        if perm.iter().enumerate().all(|(i, &p)| p as usize == i) {
            return self.poset();
        }
        let ranked: Vec<(Mask, usize)> =
            self.flats.iter().filter(|f| permute_mask(f.mask, perm) == f.mask).map(|f| (f.mask, f.rank)).collect();
        FlatPoset::with_mobius(self.dim(), ranked)
    }

    /// Flats of the subarrangement `universe` fixed by `perm`, which must map
    /// `universe` to itself. Such a flat is `X ∩ universe` for the flat `X` it
    /// spans, found by joining orbits one at a time.
    pub fn local_stable(&self, universe: Mask, perm: &[u8]) -> FlatPoset {
        let orbit_of = |i: usize| {
            let mut m: Mask = 0;
            let mut j = i;
            while m >> j & 1 == 0 {
                m |= 1 << j;
                j = perm[j] as usize;
            }
            m
        };
        let mut seen: FxHashMap<usize, ()> = FxHashMap::default();
        seen.insert(0, ());
        let mut found = vec![0usize];
        let mut head = 0;
        while head < found.len() {
            let x = found[head];
            head += 1;
            let mut done = self.flats[x].mask;
            for i in bits(universe & !done) {
                if done >> i & 1 == 1 {
                    continue;
                }
                let orbit = orbit_of(i);
                done |= orbit;
                let mut y = x;
                for j in bits(orbit) {
                    y = self.join_atom(y, j);
                }
                if seen.insert(y, ()).is_none() {
                    found.push(y);
                }
            }
        }
        found.sort_by_key(|&x| (self.flats[x].rank, self.flats[x].mask));
        let ranked = found.iter().map(|&x| (self.flats[x].mask & universe, self.flats[x].rank)).collect();
        FlatPoset::with_mobius(self.dim(), ranked)
    }
}

pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> FlatLattice {
        FlatLattice::build(Arrangement::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]))
    }

    #[test]
    fn a2_lattice() {
        let l = a2();
        assert_eq!(l.len(), 5);
        assert_eq!(l.poset().characteristic_coefficients(), vec![2, -3, 1]);
        assert_eq!(l.flats[4].basis, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn rotation_of_order_three() {
        // The rotation cycles the three lines; only the extremes are stable.
        let p = a2().stable(&[1, 2, 0]);
        assert_eq!(p.flats.len(), 2);
        assert_eq!(p.characteristic_coefficients(), vec![-1, 0, 1]);
        let local = a2().local_stable(0b111, &[1, 2, 0]);
        assert_eq!(local.characteristic_coefficients(), vec![-1, 0, 1]);
    }

    #[test]
    fn subarrangement_universe() {
        let p = a2().local_stable(0b011, &[0, 1, 2]);
        // Two coordinate lines: V, two lines, the origin.
        assert_eq!(p.flats.len(), 4);
        assert_eq!(p.top().mobius, 1);
    }

    #[test]
    fn orbit_closures_are_not_skipped() {
        // Coordinate lines x, y, z and x+y+z in Q^3. Swapping x and z fixes
        // the flat {x, z}, which lies inside the closure of {x, y, z}.
        let arr = Arrangement::new(3, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1], vec![1, 1, 1]]);
        let l = FlatLattice::build(arr);
        let p = l.local_stable(0b1111, &[0, 2, 1, 3]);
        assert!(p.flats.iter().any(|f| f.mask == 0b0110));
    }
}

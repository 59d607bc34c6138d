//! Conjugacy classes of an enumerated group.

use crate::group::{FiniteGroup, GroupStore};
use serde::{Deserialize, Serialize};

/// Class sizes and power data in a canonical class order: by element order,
/// then class size, then the minimal element key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub group: String,
    pub order: u64,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// Class of the inverses of the elements of each class.
    pub inverse: Vec<usize>,
}

impl ClassInfo {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.order / self.sizes[c]
    }
}

/// Conjugacy classes with canonical representatives and per-element labels.
pub struct ConjugacyClasses<E> {
    pub info: ClassInfo,
    /// Minimal element of each class.
    pub reps: Vec<E>,
    class_of: Vec<u32>,
}

impl<E: Copy> ConjugacyClasses<E> {
    /// Class of the element with the given store index.
    pub fn class_of_index(&self, i: usize) -> usize {
        self.class_of[i] as usize
    }

    pub fn class_of<G: FiniteGroup<Elem = E>>(&self, store: &GroupStore<G>, x: &E) -> Option<usize> {
        store.index_of(x).map(|i| self.class_of_index(i))
    }

    /// Store indices of the members of each class.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.info.len()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(i as u32);
        }
        out
    }
}

/// Partitions the group into conjugacy classes by closing each element under
/// conjugation by the generators.
pub fn conjugacy_classes<G: FiniteGroup>(store: &GroupStore<G>) -> ConjugacyClasses<G::Elem> {
    let g = store.group();
    let n = store.order() as usize;
    let gens: Vec<(G::Elem, G::Elem)> = store.generators().iter().map(|x| (g.inv(x), *x)).collect();
    const NONE: u32 = u32::MAX;
    let mut class_of = vec![NONE; n];
    let mut raw: Vec<(G::Elem, u64)> = Vec::new();
    let mut queue: Vec<usize> = Vec::new();
    for start in 0..n {
        if class_of[start] != NONE {
            continue;
        }
        let id = raw.len() as u32;
        class_of[start] = id;
        queue.clear();
        queue.push(start);
        let mut min = store.element(start);
        let mut head = 0;
        while head < queue.len() {
            let x = store.element(queue[head]);
            head += 1;
            for (ginv, gg) in &gens {
                let y = g.mul(&g.mul(ginv, &x), gg);
                let yi = store.index_of(&y).expect("group is closed under conjugation");
                if class_of[yi] == NONE {
                    class_of[yi] = id;
                    queue.push(yi);
                    if y < min {
                        min = y;
                    }
                }
            }
        }
        raw.push((min, queue.len() as u64));
    }
    let orders: Vec<u64> = raw.iter().map(|(r, _)| g.order_of(r)).collect();
    let mut perm: Vec<usize> = (0..raw.len()).collect();
    perm.sort_by(|&a, &b| (orders[a], raw[a].1, raw[a].0).cmp(&(orders[b], raw[b].1, raw[b].0)));
    let mut rank = vec![0u32; raw.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new as u32;
    }
    for c in class_of.iter_mut() {
        *c = rank[*c as usize];
    }
    let reps: Vec<G::Elem> = perm.iter().map(|&o| raw[o].0).collect();
    let inverse = reps
        .iter()
        .map(|r| class_of[store.index_of(&g.inv(r)).expect("closed under inverse")] as usize)
        .collect();
    let info = ClassInfo {
        group: g.name(),
        order: n as u64,
        sizes: perm.iter().map(|&o| raw[o].1).collect(),
        element_orders: perm.iter().map(|&o| orders[o]).collect(),
        inverse,
    };
    ConjugacyClasses { info, reps, class_of }
}

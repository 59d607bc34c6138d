//! Oracle sweeps shared by the test targets.

use level2coh::chartab::conjugacy_classes;
use level2coh::counting::oracle::{brute_force_twisted_count, DEFAULT_BOUND};
use level2coh::counting::*;
use level2coh::group::GroupStore;
use level2coh::lattice::matrix::small::Mat;
use level2coh::rootsys::*;
use num_bigint::BigInt;
use std::sync::Arc;

pub fn class_reps(kind: CartanType) -> (Arc<RootSystem>, Vec<Mat>) {
    let sys = Arc::new(build_root_system(kind).unwrap());
    let lg = LatticeGroup::new(sys.clone());
    let gens = (0..sys.rank()).map(|i| lg.simple_reflection(i)).collect();
    let store = GroupStore::enumerate_exact(lg, gens, kind.weyl_order()).unwrap();
    let cc = conjugacy_classes(&store);
    let reps = cc.reps.iter().map(|&k| store.group().matrix(k)).collect();
    (sys, reps)
}

pub fn good_primes(sys: &RootSystem, kind: ArrangementKind, from: u64, count: usize) -> Vec<u64> {
    (from..).filter(|&q| good_prime(sys, kind, q)).take(count).collect()
}

/// Möbius prediction against enumeration for every class at two good primes
/// per arrangement kind. Returns the number of comparisons made.
pub fn sweep(kind: CartanType, from_linear: u64, from_toric: u64) -> Result<usize, String> {
    let (sys, reps) = class_reps(kind);
    let mut compared = 0;
    for arr in [ArrangementKind::Linear, ArrangementKind::Toric] {
        let from = if arr == ArrangementKind::Linear { from_linear } else { from_toric };
        let primes = good_primes(&sys, arr, from, 2);
        let counts = class_counts(&sys, arr, &reps).map_err(|e| e.to_string())?;
        for (g, c) in reps.iter().zip(&counts) {
            if c.poly.degree() != Some(sys.rank()) || c.poly.leading() != Some(&BigInt::from(1)) {
                return Err(format!("{kind} {arr} g={g:?}: N={} is not monic of degree {}", c.poly, sys.rank()));
            }
            for &q in &primes {
                let oracle = brute_force_twisted_count(arr, &sys, g, q, DEFAULT_BOUND).map_err(|e| e.to_string())?;
                if c.poly.eval_i64(q as i64) != BigInt::from(oracle) {
                    return Err(format!("{kind} {arr} q={q} g={g:?}: N={} but enumeration gives {oracle}", c.poly));
                }
                compared += 1;
            }
        }
        if arr == ArrangementKind::Toric {
            // Euler characteristic (-1)^n |W| / [P : Q].
            let index = level2coh::lattice::det_i64(sys.cartan());
            let mut euler = BigInt::from(kind.weyl_order()) / index;
            if sys.rank() % 2 == 1 {
                euler = -euler;
            }
            if counts[0].poly.eval_i64(1) != euler {
                return Err(format!("{kind} toric identity: N(1) = {}, expected {euler}", counts[0].poly.eval_i64(1)));
            }
        }
    }
    Ok(compared)
}

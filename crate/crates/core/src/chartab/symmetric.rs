//! Characters of symmetric groups by the Murnaghan-Nakayama rule.

use super::classes::ClassInfo;
use super::table::{CharacterTable, Irreducible};
use rustc_hash::FxHashMap;

/// Partitions of `n` in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            rec(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of permutations with the given cycle type.
pub fn class_size(cycle_type: &[usize]) -> u64 {
    let n: usize = cycle_type.iter().sum();
    let mut denom: u64 = 1;
    let mut mult: FxHashMap<usize, u64> = FxHashMap::default();
    for &c in cycle_type {
        denom *= c as u64;
        *mult.entry(c).or_default() += 1;
    }
    for &m in mult.values() {
        denom *= (1..=m).product::<u64>();
    }
    (1..=n as u64).product::<u64>() / denom
}

/// `chi^shape` on the class of cycle type `cycles`, removing rim hooks via
/// beta-sets: a hook of length `r` moves a bead from `b` to `b - r`, with
/// sign given by the parity of the beads jumped over.
pub fn mn_character(shape: &[usize], cycles: &[usize]) -> i64 {
    let k = shape.len();
    let beta: Vec<usize> = shape.iter().enumerate().map(|(i, &l)| l + k - 1 - i).collect();
    let mut memo = FxHashMap::default();
    mn_beta(beta, cycles, &mut memo)
}

fn mn_beta(beta: Vec<usize>, cycles: &[usize], memo: &mut FxHashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else { return 1 };
    if let Some(&v) = memo.get(&(beta.clone(), cycles.len())) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut next = beta.clone();
        next[i] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn_beta(next, rest, memo);
    }
    memo.insert((beta, cycles.len()), total);
    total
}

/// Character table of `S_n` with classes in canonical order (element order,
/// size, then cycle type) and characters labelled by partitions.
pub fn murnaghan_nakayama_table(n: usize) -> (CharacterTable, Vec<Vec<usize>>) {
    let parts = partitions(n);
    let lcm = |c: &[usize]| c.iter().fold(1u64, |a, &x| num_integer::lcm(a, x as u64));
    let mut classes = parts.clone();
    classes.sort_by(|a, b| (lcm(a), class_size(a), b).cmp(&(lcm(b), class_size(b), a)));
    let info = ClassInfo {
        group: format!("S{n}"),
        order: (1..=n as u64).product(),
        sizes: classes.iter().map(|c| class_size(c)).collect(),
        element_orders: classes.iter().map(|c| lcm(c)).collect(),
        inverse: (0..classes.len()).collect(),
    };
    let irreducibles = parts
        .iter()
        .map(|shape| Irreducible {
            label: shape.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            values: classes.iter().map(|c| mn_character(shape, c)).collect(),
        })
        .collect();
    (CharacterTable { classes: info, irreducibles }, classes)
}

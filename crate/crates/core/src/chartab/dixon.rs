//! Character tables by simultaneous diagonalization of class matrices modulo
//! a large prime.
//!
//! Every character handled here is rational, so each central character value
//! `|C| chi(g) / chi(1)` is an integer of absolute value at most `|C|`; the
//! eigenvalues are found among those integers.

use super::classes::ConjugacyClasses;
use super::modp::PrimeField;
use super::table::CharacterTable;
use super::CharTabError;
use crate::group::{FiniteGroup, GroupStore};

/// Primes tried in order until one yields a verified table.
const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 1_000_000_000_000_000_003];

/// Class matrix `M[k][l] = #{x in C_j : x^-1 g_l in C_k}`.
fn class_matrix<G: FiniteGroup>(
    store: &GroupStore<G>,
    classes: &ConjugacyClasses<G::Elem>,
    members: &[u32],
) -> Vec<Vec<u64>> {
    let g = store.group();
    let r = classes.info.len();
    let mut m = vec![vec![0u64; r]; r];
    for &xi in members {
        let xinv = g.inv(&store.element(xi as usize));
        for (l, rep) in classes.reps.iter().enumerate() {
            let y = g.mul(&xinv, rep);
            let k = classes.class_of(store, &y).expect("closed");
            m[k][l] += 1;
        }
    }
    m
}

/// Dixon-Schneider character table of an enumerated group.
pub fn dixon_character_table<G: FiniteGroup>(
    store: &GroupStore<G>,
    classes: &ConjugacyClasses<G::Elem>,
) -> Result<CharacterTable, CharTabError> {
    let members = classes.members();
    let mut last = None;
    let mut cache: Vec<Option<Vec<Vec<u64>>>> = vec![None; classes.info.len()];
    for p in PRIMES {
        match table_mod_prime(store, classes, &members, &mut cache, PrimeField::new(p)) {
            Ok(t) => return Ok(t),
            Err(e) => {
                log::warn!("character table modulo {p} failed: {e}");
                last = Some(e);
            }
        }
    }
    Err(last.expect("at least one prime"))
}

fn table_mod_prime<G: FiniteGroup>(
    store: &GroupStore<G>,
    classes: &ConjugacyClasses<G::Elem>,
    members: &[Vec<u32>],
    cache: &mut [Option<Vec<Vec<u64>>>],
    f: PrimeField,
) -> Result<CharacterTable, CharTabError> {
    let info = &classes.info;
    let r = info.len();
    // Subspaces as lists of basis column vectors.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect()];
    let mut order: Vec<usize> = (1..r).collect();
    order.sort_by_key(|&c| (info.sizes[c], c));
    for &j in &order {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = cache[j].get_or_insert_with(|| class_matrix(store, classes, &members[j]));
        let mf: Vec<Vec<u64>> = m.iter().map(|row| row.iter().map(|&x| x % f.p).collect()).collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split_space(&f, &mf, &space, info.sizes[j])?);
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(CharTabError::Dixon("class matrices do not separate the characters".into()));
    }
    let order_g = info.order;
    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(CharTabError::Dixon("eigenvector vanishes at the identity".into()));
        }
        let scale = f.inv(v[0]);
        let w: Vec<u64> = v.iter().map(|&x| f.mul(x, scale)).collect();
        // sum_k w_k w_{k*} / |C_k| = |G| / chi(1)^2
        let s = (0..r).fold(0, |acc, k| {
            let t = f.mul(f.mul(w[k], w[info.inverse[k]]), f.inv(info.sizes[k] % f.p));
            f.add(acc, t)
        });
        if s == 0 {
            return Err(CharTabError::Dixon("degenerate norm".into()));
        }
        let d2 = f.mul(order_g % f.p, f.inv(s));
        let d = (d2 as f64).sqrt().round() as u64;
        let d = (d.saturating_sub(2)..=d + 2).find(|&x| x * x == d2).ok_or_else(|| CharTabError::Dixon("degree is not an integer".into()))?;
        if d == 0 || order_g % d != 0 {
            return Err(CharTabError::Dixon(format!("degree {d} does not divide the group order")));
        }
        let values: Vec<i64> = (0..r)
            .map(|k| f.lift(f.mul(f.mul(d % f.p, w[k]), f.inv(info.sizes[k] % f.p))))
            .collect();
        if values.iter().any(|v| v.unsigned_abs() > d) {
            return Err(CharTabError::Dixon("character value exceeds the degree".into()));
        }
        rows.push(values);
    }
    let table = CharacterTable::from_rows(classes.info.clone(), rows);
    table.verify_orthogonality()?;
    Ok(table)
}

/// Splits an invariant subspace into eigenspaces of `m`.
fn split_space(f: &PrimeField, m: &[Vec<u64>], basis: &[Vec<u64>], class_size: u64) -> Result<Vec<Vec<Vec<u64>>>, CharTabError> {
    let r = m.len();
    let d = basis.len();
    // Image vectors M b_i.
    let images: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..r).map(|k| (0..r).fold(0, |acc, l| f.add(acc, f.mul(m[k][l], b[l])))).collect())
        .collect();
    let restricted = coordinates_in_basis(f, basis, &images)?;
    let cp = f.char_poly(&restricted);
    let mut out = Vec::new();
    let mut found = 0;
    let bound = class_size as i64;
    for lambda in -bound..=bound {
        let lf = f.from_i64(lambda);
        if f.eval(&cp, lf) != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { f.sub(restricted[i][j], lf) } else { restricted[i][j] }).collect())
            .collect();
        let kernel = f.kernel(&shifted, d);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        out.push(
            kernel
                .iter()
                .map(|c| (0..r).map(|k| (0..d).fold(0, |acc, i| f.add(acc, f.mul(c[i], basis[i][k])))).collect())
                .collect(),
        );
    }
    if found != d {
        return Err(CharTabError::Dixon(format!("eigenspaces of dimension {found} in a space of dimension {d}")));
    }
    Ok(out)
}

/// Matrix `R` (as `R[i][j]`, row `i`) with `images[j] = sum_i R[i][j] basis[i]`.
fn coordinates_in_basis(f: &PrimeField, basis: &[Vec<u64>], images: &[Vec<u64>]) -> Result<Vec<Vec<u64>>, CharTabError> {
    let d = basis.len();
    let r = basis[0].len();
    // Solve B c = y for every image, B the r x d matrix with columns `basis`.
    let mut aug: Vec<Vec<u64>> = (0..r)
        .map(|k| (0..d).map(|i| basis[i][k]).chain(images.iter().map(|y| y[k])).collect())
        .collect();
    let width = d + images.len();
    // Full column rank: the pivot of column `col` lands in row `col`.
    for col in 0..d {
        let row = col;
        let p = (row..r).find(|&i| aug[i][col] != 0).ok_or_else(|| CharTabError::Dixon("basis is dependent".into()))?;
        aug.swap(row, p);
        let inv = f.inv(aug[row][col]);
        for x in aug[row].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..r {
            if i != row && aug[i][col] != 0 {
                let fac = aug[i][col];
                for j in 0..width {
                    let v = f.mul(fac, aug[row][j]);
                    aug[i][j] = f.sub(aug[i][j], v);
                }
            }
        }
    }
    if aug[d..].iter().any(|rw| rw[d..].iter().any(|&x| x != 0)) {
        return Err(CharTabError::Dixon("subspace is not invariant".into()));
    }
    Ok((0..d).map(|i| (0..images.len()).map(|j| aug[i][d + j]).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::conjugacy_classes;
    use crate::group::PermGroup;

    #[test]
    fn symmetric_group_tables() {
        for (n, classes) in [(3, 3), (4, 5), (5, 7)] {
            let g = PermGroup::new(n);
            let store = GroupStore::enumerate(g, g.standard_generators(), 1000).unwrap();
            let cc = conjugacy_classes(&store);
            let t = dixon_character_table(&store, &cc).unwrap();
            assert_eq!(t.len(), classes);
            t.verify_orthogonality().unwrap();
        }
    }

    #[test]
    fn s3_values() {
        let g = PermGroup::new(3);
        let store = GroupStore::enumerate(g, g.standard_generators(), 10).unwrap();
        let cc = conjugacy_classes(&store);
        let t = dixon_character_table(&store, &cc).unwrap();
        // Classes: identity, transpositions, 3-cycles.
        assert_eq!(cc.info.sizes, vec![1, 3, 2]);
        let rows: Vec<Vec<i64>> = t.irreducibles.iter().map(|c| c.values.clone()).collect();
        assert_eq!(rows, vec![vec![1, 1, 1], vec![1, -1, 1], vec![2, 0, -1]]);
        assert_eq!(t.labels(), vec!["1a", "1b", "2a"]);
    }
}

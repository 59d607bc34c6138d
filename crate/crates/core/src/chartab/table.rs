//! Character tables of rational-valued groups.

use super::classes::ClassInfo;
use super::CharTabError;
use serde::{Deserialize, Serialize};

/// An irreducible character with its label: dimension followed by a letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irreducible {
    pub label: String,
    pub values: Vec<i64>,
}

impl Irreducible {
    pub fn degree(&self) -> u64 {
        self.values[0] as u64
    }
}

/// Irreducible characters over the classes of `classes`, ordered by degree
/// and, within a degree, by values in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub classes: ClassInfo,
    pub irreducibles: Vec<Irreducible>,
}

impl CharacterTable {
    /// Sorts the characters canonically and assigns labels `1a, 7a, 21a, 21b, ...`.
    pub fn from_rows(classes: ClassInfo, mut rows: Vec<Vec<i64>>) -> Self {
        rows.sort_by(|a, b| a[0].cmp(&b[0]).then_with(|| b.cmp(a)));
        let mut irreducibles: Vec<Irreducible> = Vec::with_capacity(rows.len());
        for values in rows {
            let same = irreducibles.iter().filter(|c| c.values[0] == values[0]).count();
            let letter = letter_suffix(same);
            irreducibles.push(Irreducible { label: format!("{}{letter}", values[0]), values });
        }
        CharacterTable { classes, irreducibles }
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles.iter().map(Irreducible::degree).collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.irreducibles.iter().map(|c| c.label.clone()).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.irreducibles.iter().position(|c| c.label == label)
    }

    /// `sum_c |C| a(c) b(c^-1)`, which is `|G|` times the inner product.
    pub fn weighted_pairing(&self, a: &[i64], b: &[i64]) -> i128 {
        let info = &self.classes;
        (0..info.len()).map(|c| info.sizes[c] as i128 * a[c] as i128 * b[info.inverse[c]] as i128).sum()
    }

    /// Exact first and second orthogonality relations.
    pub fn verify_orthogonality(&self) -> Result<(), CharTabError> {
        let info = &self.classes;
        if self.len() != info.len() {
            return Err(CharTabError::Orthogonality(format!("{} characters on {} classes", self.len(), info.len())));
        }
        let order = info.order as i128;
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate() {
                let s = self.weighted_pairing(&a.values, &b.values);
                if s != if i == j { order } else { 0 } {
                    return Err(CharTabError::Orthogonality(format!("rows {} and {}", a.label, b.label)));
                }
            }
        }
        for c in 0..info.len() {
            for d in 0..info.len() {
                let s: i128 =
                    self.irreducibles.iter().map(|x| x.values[c] as i128 * x.values[info.inverse[d]] as i128).sum();
                let expect = if c == d { info.centralizer_order(c) as i128 } else { 0 };
                if s != expect {
                    return Err(CharTabError::Orthogonality(format!("columns {c} and {d}")));
                }
            }
        }
        Ok(())
    }
}

/// `a, b, ..., z, aa, ab, ...`
fn letter_suffix(k: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if k < 26 {
        (letters[k] as char).to_string()
    } else {
        format!("{}{}", letters[k / 26 - 1] as char, letters[k % 26] as char)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_follow_degrees() {
        let info = ClassInfo { group: "C2".into(), order: 2, sizes: vec![1, 1], element_orders: vec![1, 2], inverse: vec![0, 1] };
        let t = CharacterTable::from_rows(info, vec![vec![1, 1], vec![1, -1]]);
        assert_eq!(t.labels(), vec!["1a", "1b"]);
        assert_eq!(t.irreducibles[0].values, vec![1, 1]);
        t.verify_orthogonality().unwrap();
        assert_eq!(letter_suffix(27), "ab");
    }
}

//! Comparison of computed tables with reference tables.
//!
//! Letters distinguishing irreducibles of equal dimension are a convention,
//! so computed and reference labels are matched by one dimension-preserving
//! bijection shared by all tables.

use super::reference::ReferenceTables;
use super::rep::GradedRep;
use super::{ModSpaceError, SpaceId};
use itertools::Itertools;
use std::fmt;

/// `map[j]` is the reference column of computed irreducible `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelBijection {
    pub map: Vec<usize>,
}

impl LabelBijection {
    pub fn identity(n: usize) -> Self {
        LabelBijection { map: (0..n).collect() }
    }

    /// Computed index of each reference column.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.map.len()];
        for (j, &r) in self.map.iter().enumerate() {
            inv[r] = j;
        }
        inv
    }

    /// Re-expresses a computed representation in reference columns.
    pub fn to_reference(&self, rep: &GradedRep, reference_labels: &[String]) -> GradedRep {
        let inv = self.inverse();
        GradedRep {
            labels: reference_labels.to_vec(),
            dims: inv.iter().map(|&j| rep.dims[j]).collect(),
            rows: rep.rows.iter().map(|row| inv.iter().map(|&j| row[j]).collect()).collect(),
        }
    }

    /// Re-expresses a reference representation in computed columns.
    pub fn to_computed(&self, rep: &GradedRep, computed_labels: &[String]) -> GradedRep {
        GradedRep {
            labels: computed_labels.to_vec(),
            dims: self.map.iter().map(|&r| rep.dims[r]).collect(),
            rows: rep.rows.iter().map(|row| self.map.iter().map(|&r| row[r]).collect()).collect(),
        }
    }

    /// Pairs `(computed, reference)` that differ.
    pub fn renamed(&self, computed: &[String], reference: &[String]) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .filter(|(j, &r)| computed[*j] != reference[r])
            .map(|(j, &r)| (computed[j].clone(), reference[r].clone()))
            .collect()
    }
}

/// A cell where the tables disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub table: String,
    pub degree: usize,
    pub label: String,
    pub expected: u64,
    pub found: u64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} H^{} phi_{}: reference {}, computed {}", self.table, self.degree, self.label, self.expected, self.found)
    }
}

/// Outcome of the search over dimension-preserving bijections.
#[derive(Clone, Debug)]
pub struct BijectionSearch {
    /// A bijection with the fewest mismatching cells, the first in
    /// enumeration order among those.
    pub best: LabelBijection,
    pub mismatches: usize,
    /// Number of candidates reconciling every table.
    pub perfect: usize,
    pub candidates: usize,
}

/// Mismatching cells of `computed` read through `bijection` against
/// `reference`, including missing or extra degrees.
pub fn mismatches(
    name: &str,
    computed: &GradedRep,
    reference: &GradedRep,
    bijection: &LabelBijection,
) -> Vec<Mismatch> {
    let degrees = computed.degrees().max(reference.degrees());
    let mut out = Vec::new();
    for degree in 0..degrees {
        for (j, &r) in bijection.map.iter().enumerate() {
            let found = computed.rows.get(degree).map_or(0, |row| row[j]);
            let expected = reference.rows.get(degree).map_or(0, |row| row[r]);
            if found != expected {
                out.push(Mismatch { table: name.into(), degree, label: reference.labels[r].clone(), expected, found });
            }
        }
    }
    out
}

/// Tries every dimension-preserving bijection on all pairs at once.
pub fn find_global_bijection(pairs: &[(&str, &GradedRep, &GradedRep)]) -> Result<BijectionSearch, ModSpaceError> {
    let Some((_, first, reference)) = pairs.first() else {
        return Err(ModSpaceError::Shape("no tables to compare".into()));
    };
    for (name, c, r) in pairs {
        if c.labels != first.labels || r.labels != reference.labels {
            return Err(ModSpaceError::Shape(format!("{name} uses different columns")));
        }
    }
    let n = first.dims.len();
    let mut ref_dims = reference.dims.clone();
    ref_dims.sort_unstable();
    let mut dims = first.dims.clone();
    dims.sort_unstable();
    if dims != ref_dims {
        return Err(ModSpaceError::Shape("irreducible dimensions differ".into()));
    }
    // Columns of each dimension, in order.
    let blocks: Vec<(Vec<usize>, Vec<usize>)> = first
        .dims
        .iter()
        .copied()
        .unique()
        .map(|d| {
            let comp = (0..n).filter(|&j| first.dims[j] == d).collect();
            let refs = (0..n).filter(|&r| reference.dims[r] == d).collect();
            (comp, refs)
        })
        .collect();
    let choices: Vec<Vec<Vec<usize>>> =
        blocks.iter().map(|(_, refs)| refs.iter().copied().permutations(refs.len()).collect()).collect();
    let mut best: Option<(usize, LabelBijection)> = None;
    let mut perfect = 0;
    let mut candidates = 0;
    for pick in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let mut map = vec![0; n];
        for ((comp, _), refs) in blocks.iter().zip(&pick) {
            for (&j, &r) in comp.iter().zip(refs.iter()) {
                map[j] = r;
            }
        }
        let bij = LabelBijection { map };
        let count: usize = pairs.iter().map(|(name, c, r)| mismatches(name, c, r, &bij).len()).sum();
        candidates += 1;
        if count == 0 {
            perfect += 1;
        }
        if best.as_ref().is_none_or(|(b, _)| count < *b) {
            best = Some((count, bij));
        }
    }
    let (mismatches, best) = best.expect("at least one candidate");
    Ok(BijectionSearch { best, mismatches, perfect, candidates })
}

/// A named check with its outcome and a witness or summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

fn coefficient_diff(name: &str, computed: &crate::lattice::IntPoly, other: &crate::lattice::IntPoly) -> Option<String> {
    let n = computed.coeffs().len().max(other.coeffs().len());
    (0..n)
        .find(|&k| computed.coeff(k) != other.coeff(k))
        .map(|k| format!("t^{k}: computed {}, {name} {}", computed.coeff(k), other.coeff(k)))
}

/// Checks of one computed space against its reference table under the
/// given bijection: cells, the Poincare polynomial of the table rows, and
/// the stated Poincare polynomial when there is one.
pub fn verify_space(
    id: SpaceId,
    computed: &GradedRep,
    references: &ReferenceTables,
    bijection: &LabelBijection,
) -> Result<Report, ModSpaceError> {
    let name = id.reference_name().ok_or_else(|| ModSpaceError::Reference(format!("{id} has no reference table")))?;
    let reference = references.table(name)?;
    let mut report = Report::default();
    let cells = mismatches(name, computed, reference, bijection);
    report.push(match cells.first() {
        None => Check::new(format!("{id} table"), true, format!("{} degrees x {} irreducibles", reference.degrees(), reference.dims.len())),
        Some(m) => Check::new(format!("{id} table"), false, format!("{} mismatching cells, first {m}", cells.len())),
    });
    let p = computed.poincare();
    let rows = reference.poincare();
    report.push(match coefficient_diff("table rows", &p, &rows) {
        None => Check::new(format!("{id} Poincare vs table rows"), true, p.display_with("t")),
        Some(d) => Check::new(format!("{id} Poincare vs table rows"), false, d),
    });
    if let Some(stated) = references.theorem(id) {
        report.push(match coefficient_diff("stated", &p, stated) {
            None => Check::new(format!("{id} Poincare vs stated"), true, p.display_with("t")),
            Some(d) => Check::new(format!("{id} Poincare vs stated"), false, d),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(rows: Vec<Vec<u64>>) -> GradedRep {
        let labels = ["1a", "2a", "2b", "3a"].map(String::from).to_vec();
        GradedRep::new(labels, vec![1, 2, 2, 3], rows).unwrap()
    }

    #[test]
    fn swapped_letters_are_reconciled_globally() {
        let computed = rep(vec![vec![1, 1, 0, 0], vec![0, 2, 1, 1]]);
        let reference = rep(vec![vec![1, 0, 1, 0], vec![0, 1, 2, 1]]);
        let search = find_global_bijection(&[("t", &computed, &reference)]).unwrap();
        assert_eq!(search.candidates, 2);
        assert_eq!(search.mismatches, 0);
        assert_eq!(search.perfect, 1);
        assert_eq!(search.best.map, vec![0, 2, 1, 3]);
        assert_eq!(search.best.to_computed(&search.best.to_reference(&computed, &reference.labels), &computed.labels), computed);
    }

    #[test]
    fn inconsistent_tables_have_no_perfect_bijection() {
        let a = rep(vec![vec![1, 1, 0, 0]]);
        let b = rep(vec![vec![1, 0, 1, 0]]);
        let search = find_global_bijection(&[("x", &a, &a), ("y", &a, &b)]).unwrap();
        assert_eq!(search.perfect, 0);
        assert_eq!(search.mismatches, 2);
        let m = mismatches("y", &a, &b, &search.best);
        assert_eq!(m[0].degree, 0);
    }
}

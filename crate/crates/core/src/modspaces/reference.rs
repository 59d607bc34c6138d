//! The published cohomology tables and Poincare polynomials.

use super::rep::GradedRep;
use super::{ModSpaceError, SpaceId};
use crate::lattice::IntPoly;
use std::collections::BTreeMap;
use std::path::Path;

/// Tables shipped with the crate: name and CSV text.
const SHIPPED: [(&str, &str); 10] = [
    ("q_ord", include_str!("../../data/reference/q_ord.csv")),
    ("q_flx", include_str!("../../data/reference/q_flx.csv")),
    ("q_btg", include_str!("../../data/reference/q_btg.csv")),
    ("q_hfl", include_str!("../../data/reference/q_hfl.csv")),
    ("q_ordbar", include_str!("../../data/reference/q_ordbar.csv")),
    ("q_btgbar", include_str!("../../data/reference/q_btgbar.csv")),
    ("pc22q", include_str!("../../data/reference/pc22q.csv")),
    ("pc22qbar", include_str!("../../data/reference/pc22qbar.csv")),
    ("q2", include_str!("../../data/reference/q2.csv")),
    ("hyp3", include_str!("../../data/reference/hyp3.csv")),
];

/// Name of the plane quartic table, which is reference-only.
pub const Q2: &str = "q2";

/// Poincare polynomials as stated alongside the tables, constant term first.
const THEOREMS: [(&str, &[i64]); 8] = [
    ("q_ord", &[1, 63, 1638, 22680, 180089, 820827, 2004512, 2064430]),
    ("q_flx", &[1, 62, 1555, 20180, 142739, 521198, 765765]),
    ("q_btg", &[28, 1176, 19740, 168560, 768852, 1774584, 1639540]),
    ("q_hfl", &[28, 980, 13300, 87500, 278992, 344960]),
    ("q_ordbar", &[1, 62, 1576, 21125, 159909, 678068, 1483314, 1302665]),
    ("q_btgbar", &[28, 1148, 18760, 155260, 681352, 1495592, 1294580]),
    ("hyp3", &[36, 720, 5580, 20880, 37584, 25920]),
    ("q2", &[1, 35, 490, 3485, 13174, 24920, 18375]),
];

/// Published lower bound for `dim H^7(M_3[2])`.
pub const M3_LOWER_BOUND: u64 = 7680;

/// A stated Poincare coefficient that disagrees with the dimension sum of the
/// corresponding table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistency {
    pub table: String,
    pub degree: usize,
    pub row_dimension: u64,
    pub stated: i64,
}

#[derive(Clone, Debug)]
pub struct ReferenceTables {
    pub tables: BTreeMap<String, GradedRep>,
    pub theorems: BTreeMap<String, IntPoly>,
    /// Found while loading; kept as data so every check can report on it.
    pub inconsistencies: Vec<Inconsistency>,
}

impl ReferenceTables {
    pub fn shipped() -> Result<Self, ModSpaceError> {
        Self::from_texts(SHIPPED.iter().map(|(n, t)| (n.to_string(), t.to_string())))
    }

    /// Reads `<name>.csv` for every shipped table name from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self, ModSpaceError> {
        let texts = SHIPPED
            .iter()
            .map(|(n, _)| {
                let path = dir.join(format!("{n}.csv"));
                std::fs::read_to_string(&path)
                    .map(|t| (n.to_string(), t))
                    .map_err(|e| ModSpaceError::Reference(format!("{}: {e}", path.display())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_texts(texts)
    }

    fn from_texts(texts: impl IntoIterator<Item = (String, String)>) -> Result<Self, ModSpaceError> {
        let mut tables = BTreeMap::new();
        for (name, text) in texts {
            let rep = GradedRep::from_csv(&text).map_err(|e| ModSpaceError::Reference(format!("{name}: {e}")))?;
            tables.insert(name, rep);
        }
        let theorems: BTreeMap<String, IntPoly> =
            THEOREMS.iter().map(|(n, c)| (n.to_string(), IntPoly::from_i64(c))).collect();
        let mut inconsistencies = Vec::new();
        for (name, poly) in &theorems {
            let Some(t) = tables.get(name) else { continue };
            for degree in 0..t.degrees().max(poly.coeffs().len()) {
                let row_dimension = if degree < t.degrees() { t.dimension(degree) } else { 0 };
                let stated: i64 = poly.coeff(degree).try_into().expect("stated coefficients fit i64");
                if row_dimension as i64 != stated {
                    inconsistencies.push(Inconsistency { table: name.clone(), degree, row_dimension, stated });
                }
            }
        }
        for i in &inconsistencies {
            log::warn!("{} degree {}: rows sum to {}, stated {}", i.table, i.degree, i.row_dimension, i.stated);
        }
        Ok(ReferenceTables { tables, theorems, inconsistencies })
    }

    pub fn table(&self, name: &str) -> Result<&GradedRep, ModSpaceError> {
        self.tables.get(name).ok_or_else(|| ModSpaceError::Reference(format!("no table {name}")))
    }

    pub fn for_space(&self, id: SpaceId) -> Option<&GradedRep> {
        id.reference_name().and_then(|n| self.tables.get(n))
    }

    pub fn theorem(&self, id: SpaceId) -> Option<&IntPoly> {
        id.reference_name().and_then(|n| self.theorems.get(n))
    }
}

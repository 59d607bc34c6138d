//! Graded Sp(6,2) representations and the formulas relating them.

use super::ModSpaceError;
use crate::chartab::{decompose_rational, CharacterTable, ClassFunction};
use crate::lattice::IntPoly;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Multiplicities of the irreducibles in each cohomological degree. By purity
/// degree `i` carries weight `2i`, so weights are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedRep {
    /// Irreducible labels such as `21a`, in column order.
    pub labels: Vec<String>,
    pub dims: Vec<u64>,
    /// `rows[i][j]` is the multiplicity of irreducible `j` in degree `i`.
    pub rows: Vec<Vec<u64>>,
}

/// Column header prefix used in exported and reference tables.
pub const LABEL_PREFIX: &str = "phi_";

impl GradedRep {
    pub fn new(labels: Vec<String>, dims: Vec<u64>, rows: Vec<Vec<u64>>) -> Result<Self, ModSpaceError> {
        if labels.len() != dims.len() || rows.iter().any(|r| r.len() != dims.len()) {
            return Err(ModSpaceError::Shape(format!("{} labels, {} dimensions", labels.len(), dims.len())));
        }
        Ok(GradedRep { labels, dims, rows })
    }

    /// Decomposes per-degree class functions; fails on any negative or
    /// fractional multiplicity.
    pub fn from_class_functions(fs: &[ClassFunction], table: &CharacterTable) -> Result<Self, ModSpaceError> {
        let labels = table.labels();
        let mut rows = Vec::with_capacity(fs.len());
        for (degree, f) in fs.iter().enumerate() {
            let mut row = Vec::with_capacity(labels.len());
            for (j, m) in decompose_rational(f, table)?.iter().enumerate() {
                if !m.is_integer() {
                    return Err(ModSpaceError::Structure(format!("multiplicity {m} of {} in degree {degree}", labels[j])));
                }
                let m = m.to_integer();
                match m.to_u64() {
                    Some(v) => row.push(v),
                    None => {
                        let value = m.to_i128().ok_or_else(|| ModSpaceError::Structure(format!("multiplicity {m} too large")))?;
                        let label = labels[j].clone();
                        return Err(ModSpaceError::Negative { context: "decomposition".into(), degree, label, value });
                    }
                }
            }
            rows.push(row);
        }
        GradedRep::new(labels, table.degrees(), rows)
    }

    pub fn degrees(&self) -> usize {
        self.rows.len()
    }

    pub fn weight(degree: usize) -> usize {
        2 * degree
    }

    pub fn dimension(&self, degree: usize) -> u64 {
        self.rows[degree].iter().zip(&self.dims).map(|(m, d)| m * d).sum()
    }

    /// `sum_i dim H^i t^i`.
    pub fn poincare(&self) -> IntPoly {
        IntPoly::new((0..self.degrees()).map(|i| BigInt::from(self.dimension(i))).collect())
    }

    /// The class function `sum_j m_j chi_j` in the given degree.
    pub fn character(&self, degree: usize, table: &CharacterTable) -> ClassFunction {
        let m: Vec<BigInt> = self.rows[degree].iter().map(|&v| BigInt::from(v)).collect();
        crate::chartab::compose(&m, table)
    }

    fn check_shape(&self, other: &GradedRep) -> Result<(), ModSpaceError> {
        if self.labels != other.labels || self.dims != other.dims {
            return Err(ModSpaceError::Shape("graded representations use different irreducibles".into()));
        }
        Ok(())
    }

    fn empty_like(&self, degrees: usize) -> GradedRep {
        GradedRep { labels: self.labels.clone(), dims: self.dims.clone(), rows: vec![vec![0; self.dims.len()]; degrees] }
    }

    /// Degrees by irreducibles, header `degree,phi_1a,...`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree");
        for l in &self.labels {
            write!(out, ",{LABEL_PREFIX}{l}").expect("writing to a string");
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&i.to_string());
            for m in row {
                write!(out, ",{m}").expect("writing to a string");
            }
            out.push('\n');
        }
        out
    }

    /// Parses [`GradedRep::to_csv`] output. Dimensions are read off labels.
    pub fn from_csv(text: &str) -> Result<Self, ModSpaceError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| ModSpaceError::Reference("empty table".into()))?;
        let mut cols = header.split(',');
        if cols.next().map(str::trim) != Some("degree") {
            return Err(ModSpaceError::Reference("first column must be `degree`".into()));
        }
        let labels: Vec<String> = cols
            .map(|c| c.trim().strip_prefix(LABEL_PREFIX).map(str::to_string))
            .collect::<Option<_>>()
            .ok_or_else(|| ModSpaceError::Reference(format!("column labels must start with {LABEL_PREFIX}")))?;
        let dims = labels.iter().map(|l| label_dimension(l)).collect::<Result<Vec<_>, _>>()?;
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let mut cells = line.split(',').map(str::trim);
            let degree: usize = cells.next().and_then(|d| d.parse().ok()).ok_or_else(|| bad_row(i))?;
            if degree != i {
                return Err(ModSpaceError::Reference(format!("row {i} is labelled degree {degree}")));
            }
            let row: Vec<u64> = cells.map(|c| c.parse().map_err(|_| bad_row(i))).collect::<Result<_, _>>()?;
            rows.push(row);
        }
        GradedRep::new(labels, dims, rows)
    }

    /// Poincare polynomial as text, e.g. `36+720t+5580t^2`.
    pub fn poly_form(&self) -> String {
        self.poincare().display_with("t")
    }
}

fn bad_row(i: usize) -> ModSpaceError {
    ModSpaceError::Reference(format!("malformed row {i}"))
}

/// Dimension from a label such as `105c`.
pub fn label_dimension(label: &str) -> Result<u64, ModSpaceError> {
    let digits: String = label.chars().take_while(char::is_ascii_digit).collect();
    digits.parse().map_err(|_| ModSpaceError::Reference(format!("label {label} has no dimension")))
}

fn negative(context: &str, rep: &GradedRep, degree: usize, j: usize, value: i128) -> ModSpaceError {
    ModSpaceError::Negative { context: context.into(), degree, label: rep.labels[j].clone(), value }
}

/// Cohomology of the quotient of a cone complement by scalars:
/// `p_i = g_i - p_{i-1}`. The top value `p_n` must vanish, so that
/// `g_i = p_i + p_{i-1}` reassembles `g` exactly.
pub fn projectivize(g: &GradedRep) -> Result<GradedRep, ModSpaceError> {
    let n = g.degrees();
    let mut p = g.empty_like(n.saturating_sub(1));
    let mut prev = vec![0i128; g.dims.len()];
    for i in 0..n {
        for j in 0..g.dims.len() {
            let v = g.rows[i][j] as i128 - prev[j];
            if v < 0 || (i + 1 == n && v != 0) {
                return Err(negative("projectivize", g, i, j, if v < 0 { v } else { -v }));
            }
            prev[j] = v;
            if i + 1 < n {
                p.rows[i][j] = v as u64;
            }
        }
    }
    Ok(p)
}

/// Closure of an open stratum whose boundary is a smooth hypersurface:
/// `result_i = open_i - boundary_{i-1}` irreducible by irreducible.
pub fn closure_subtract(open: &GradedRep, boundary: &GradedRep) -> Result<GradedRep, ModSpaceError> {
    open.check_shape(boundary)?;
    // Boundary degree `d` lands in degree `d + 1`.
    if let Some(d) = (open.degrees().saturating_sub(1)..boundary.degrees()).find(|&d| boundary.rows[d].iter().any(|&m| m > 0)) {
        return Err(ModSpaceError::Shape(format!("boundary degree {d} has no target in the open part")));
    }
    let mut out = open.clone();
    for i in 1..open.degrees() {
        let Some(b) = boundary.rows.get(i - 1) else { break };
        for j in 0..open.dims.len() {
            let v = open.rows[i][j] as i128 - b[j] as i128;
            if v < 0 {
                return Err(negative("closure", open, i, j, v));
            }
            out.rows[i][j] = v as u64;
        }
    }
    Ok(out)
}

/// Fibre of a bundle whose Leray spectral sequence degenerates. In the
/// conventions used for these spaces both fibres contribute their class of
/// weight two two degrees up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fiber {
    P1,
    Gm,
}

/// `total_k = base_k + base_{k-2}`.
pub fn bundle_total(base: &GradedRep, fiber: Fiber) -> GradedRep {
    let shift = match fiber {
        Fiber::P1 | Fiber::Gm => 2,
    };
    let mut out = base.empty_like(base.degrees() + shift);
    for (i, row) in base.rows.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            out.rows[i][j] += m;
            out.rows[i + shift][j] += m;
        }
    }
    out
}

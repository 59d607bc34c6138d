//! Rational class functions: induction, restriction and decomposition.

use super::classes::ClassInfo;
use super::table::CharacterTable;
use super::CharTabError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Sub};

/// A class function given by its values on the classes of some group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassFunction {
    pub values: Vec<BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl ClassFunction {
    pub fn zero(len: usize) -> Self {
        ClassFunction { values: vec![BigRational::zero(); len] }
    }

    pub fn from_integers<T: Into<BigInt> + Clone>(values: &[T]) -> Self {
        ClassFunction { values: values.iter().cloned().map(|v| BigRational::from_integer(v.into())).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        ClassFunction { values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Integer values, if all values are integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(|v| v.is_integer().then(|| v.to_integer())).collect()
    }
}

impl Add for &ClassFunction {
    type Output = ClassFunction;
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        assert_eq!(self.len(), rhs.len());
        ClassFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;
    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        assert_eq!(self.len(), rhs.len());
        ClassFunction { values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect() }
    }
}

/// The class of the ambient group containing each class of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFusion {
    pub map: Vec<usize>,
}

/// Builds a fusion map from class representatives of the subgroup and a
/// function locating an element's class in the ambient group.
pub fn class_fusion<E>(sub_reps: &[E], mut ambient_class: impl FnMut(&E) -> Option<usize>) -> Result<ClassFusion, CharTabError> {
    let map = sub_reps
        .iter()
        .enumerate()
        .map(|(c, r)| ambient_class(r).ok_or(CharTabError::Fusion(c)))
        .collect::<Result<_, _>>()?;
    Ok(ClassFusion { map })
}

fn check_len(f: &ClassFunction, info: &ClassInfo) -> Result<(), CharTabError> {
    if f.len() != info.len() {
        return Err(CharTabError::Length { expected: info.len(), found: f.len() });
    }
    Ok(())
}

/// Induced class function:
/// `Ind f (g) = |C_G(g)| / |H| * sum over H-classes h fusing to g of |h^H| f(h)`.
pub fn induce(f: &ClassFunction, fusion: &ClassFusion, sub: &ClassInfo, ambient: &ClassInfo) -> Result<ClassFunction, CharTabError> {
    check_len(f, sub)?;
    if fusion.map.len() != sub.len() {
        return Err(CharTabError::Length { expected: sub.len(), found: fusion.map.len() });
    }
    if !ambient.order.is_multiple_of(sub.order) {
        return Err(CharTabError::NotSubgroup { sub: sub.order, ambient: ambient.order });
    }
    let mut sums = vec![BigRational::zero(); ambient.len()];
    for (h, &g) in fusion.map.iter().enumerate() {
        sums[g] += &f.values[h] * q(sub.sizes[h] as i64);
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(g, s)| s * q(ambient.centralizer_order(g) as i64) / q(sub.order as i64))
        .collect();
    Ok(ClassFunction { values })
}

pub fn restrict(f: &ClassFunction, fusion: &ClassFusion, ambient: &ClassInfo) -> Result<ClassFunction, CharTabError> {
    check_len(f, ambient)?;
    Ok(ClassFunction { values: fusion.map.iter().map(|&g| f.values[g].clone()).collect() })
}

/// `<a, b>_G = 1/|G| sum_c |C| a(c) b(c^-1)`.
pub fn inner_product(a: &ClassFunction, b: &ClassFunction, info: &ClassInfo) -> Result<BigRational, CharTabError> {
    check_len(a, info)?;
    check_len(b, info)?;
    let s: BigRational = (0..info.len()).map(|c| &a.values[c] * &b.values[info.inverse[c]] * q(info.sizes[c] as i64)).sum();
    Ok(s / q(info.order as i64))
}

/// Averages over the central involution: for a group `G x {1, z}` laid out as
/// the classes of `G` followed by their translates by `z`, the invariants are
/// `(f(c) + f(zc)) / 2` on the classes of `G`.
pub fn central_invariants(f: &ClassFunction) -> Result<ClassFunction, CharTabError> {
    if !f.len().is_multiple_of(2) {
        return Err(CharTabError::Length { expected: f.len() + 1, found: f.len() });
    }
    let half = f.len() / 2;
    let two = q(2);
    Ok(ClassFunction { values: (0..half).map(|c| (&f.values[c] + &f.values[half + c]) / &two).collect() })
}

/// Multiplicities of the irreducible characters; errors unless they are
/// nonnegative integers.
pub fn decompose(f: &ClassFunction, table: &CharacterTable) -> Result<Vec<BigInt>, CharTabError> {
    let raw = decompose_rational(f, table)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, m)| {
            if !m.is_integer() || m.is_negative() {
                Err(CharTabError::NotACharacter { label: table.irreducibles[i].label.clone(), multiplicity: m.to_string() })
            } else {
                Ok(m.to_integer())
            }
        })
        .collect()
}

/// Inner products with every irreducible, without integrality checks.
pub fn decompose_rational(f: &ClassFunction, table: &CharacterTable) -> Result<Vec<BigRational>, CharTabError> {
    table
        .irreducibles
        .iter()
        .map(|chi| inner_product(f, &ClassFunction::from_integers(&chi.values), &table.classes))
        .collect()
}

/// The class function `sum_i m_i chi_i`.
pub fn compose(multiplicities: &[BigInt], table: &CharacterTable) -> ClassFunction {
    let mut out = ClassFunction::zero(table.classes.len());
    for (m, chi) in multiplicities.iter().zip(&table.irreducibles) {
        for (o, v) in out.values.iter_mut().zip(&chi.values) {
            *o += BigRational::from_integer(m * BigInt::from(*v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::murnaghan_nakayama_table;

    #[test]
    fn induce_trivial_from_trivial_subgroup_is_regular() {
        let (t, _) = murnaghan_nakayama_table(4);
        let trivial_group = ClassInfo { group: "1".into(), order: 1, sizes: vec![1], element_orders: vec![1], inverse: vec![0] };
        let ind = induce(&ClassFunction::from_integers(&[1]), &ClassFusion { map: vec![0] }, &trivial_group, &t.classes).unwrap();
        let m = decompose(&ind, &t).unwrap();
        let degrees: Vec<BigInt> = t.degrees().into_iter().map(BigInt::from).collect();
        assert_eq!(m, degrees);
    }

    #[test]
    fn decompose_rejects_virtual_characters() {
        let (t, _) = murnaghan_nakayama_table(3);
        let f = &ClassFunction::from_integers(&t.irreducibles[0].values.clone()).scale(&q(-1)) + &ClassFunction::zero(3);
        assert!(matches!(decompose(&f, &t), Err(CharTabError::NotACharacter { .. })));
        let comp = compose(&[BigInt::from(2), BigInt::from(0), BigInt::from(1)], &t);
        assert_eq!(decompose(&comp, &t).unwrap(), vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn central_invariants_average_pairs() {
        let f = ClassFunction::from_integers(&[4, 2, 0, 2]);
        assert_eq!(central_invariants(&f).unwrap(), ClassFunction::from_integers(&[2, 2]));
        assert!(central_invariants(&ClassFunction::from_integers(&[1, 2, 3])).is_err());
    }
}

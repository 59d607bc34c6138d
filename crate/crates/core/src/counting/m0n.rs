//! Counts of `M_{0,n}` twisted by permutations of the marked points.
//!
//! A configuration fixed by `sigma` composed with Frobenius assigns to each
//! `d`-cycle a closed point of degree `d` of the projective line and a choice
//! among its `d` geometric points; distinct cycles need distinct closed points.

use super::{purity_traces, traces_to_class_functions, ArrangementKind, CountPolynomial, CountingError, GradedTraces};
use crate::chartab::ClassFunction;
use crate::lattice::IntPoly;
use crate::rootsys::CartanType;
use num_bigint::BigInt;

fn mobius(mut n: usize) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `d` times the number of closed points of degree `d` on the projective
/// line: `sum_{e | d} mu(d/e) (q^e + 1)`.
fn degree_d_points_times_d(d: usize) -> IntPoly {
    let mut acc = IntPoly::zero();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let term = IntPoly::monomial(BigInt::from(1), e) + IntPoly::one();
        acc = acc + term.scale(&BigInt::from(mobius(d / e)));
    }
    acc
}

/// `N_sigma(q)` for a permutation of cycle type `cycle_type` on `n >= 3` points.
pub fn m0n_twisted_count(cycle_type: &[usize]) -> Result<IntPoly, CountingError> {
    let n: usize = cycle_type.iter().sum();
    if n < 3 || cycle_type.contains(&0) {
        return Err(CountingError::Unsupported(format!("cycle type {cycle_type:?}")));
    }
    let mut numer = IntPoly::one();
    let max = cycle_type.iter().copied().max().unwrap_or(0);
    for d in 1..=max {
        let m = cycle_type.iter().filter(|&&c| c == d).count();
        let db = degree_d_points_times_d(d);
        for k in 0..m {
            numer = numer * (db.clone() - IntPoly::constant(BigInt::from(d * k)));
        }
    }
    let pgl = IntPoly::from_i64(&[0, -1, 0, 1]);
    numer.div_exact(&pgl).ok_or_else(|| CountingError::NotPolynomial(cycle_type.to_vec()))
}

/// Per-degree `S_n` class functions on the classes listed by cycle type.
pub fn m0n_graded_rep(classes: &[Vec<usize>]) -> Result<Vec<ClassFunction>, CountingError> {
    let n: usize = classes.first().map_or(0, |c| c.iter().sum());
    let dim = n.checked_sub(3).ok_or_else(|| CountingError::Unsupported(format!("n = {n}")))?;
    let traces: Vec<GradedTraces> = classes
        .iter()
        .map(|c| {
            let poly = m0n_twisted_count(c)?;
            // Only the grading matters for the purity translation.
            purity_traces(&CountPolynomial { system: CartanType::A(dim.max(1)), kind: ArrangementKind::Linear, poly }, dim)
        })
        .collect::<Result<_, _>>()?;
    Ok(traces_to_class_functions(&traces, dim))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_a_falling_factorial() {
        let expect = (2..=6).fold(IntPoly::one(), |acc, a| acc * IntPoly::linear_root(a));
        assert_eq!(m0n_twisted_count(&[1; 8]).unwrap(), expect);
        assert_eq!(m0n_twisted_count(&[1; 4]).unwrap(), IntPoly::linear_root(2));
    }

    #[test]
    fn eight_cycle() {
        assert_eq!(m0n_twisted_count(&[8]).unwrap(), IntPoly::from_i64(&[0, 0, 0, 1, 0, 1]));
    }
}

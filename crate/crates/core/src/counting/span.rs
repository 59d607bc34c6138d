//! Exact rational spans of small integer vectors.

use crate::lattice::hnf_i64;
use num_integer::Integer;

/// Divides a vector by the gcd of its entries and makes the first nonzero
/// entry positive.
pub(crate) fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    v
}

/// Basis of the lattice `{x in Z^n : r . x = 0 for every row r}`.
pub fn integer_kernel(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let m = rows.len();
    // Rows of [M^T | I]; after Hermite reduction the rows vanishing on the
    // first block span the kernel.
    let aug: Vec<Vec<i64>> = (0..n)
        .map(|j| rows.iter().map(|r| r[j]).chain((0..n).map(|k| i64::from(j == k))).collect())
        .collect();
    hnf_i64(&aug).into_iter().filter(|r| r[..m].iter().all(|&x| x == 0)).map(|r| r[m..].to_vec()).collect()
}

/// Orthogonal complement of a span, maintained incrementally: a vector lies in
/// the span iff it is orthogonal to every complement vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanComplement {
    pub complement: Vec<Vec<i64>>,
    pub dim: usize,
}

impl SpanComplement {
    pub fn zero(n: usize) -> Self {
        SpanComplement { complement: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(), dim: n }
    }

    pub fn rank(&self) -> usize {
        self.dim - self.complement.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.complement.iter().all(|k| k.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == 0)
    }

    /// The complement of `span + <v>`.
    pub fn extend(&self, v: &[i64]) -> SpanComplement {
        let dots: Vec<i64> = self.complement.iter().map(|k| k.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
        let Some(p) = dots.iter().position(|&d| d != 0) else { return self.clone() };
        let kp = &self.complement[p];
        let complement = self
            .complement
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != p)
            .map(|(i, k)| primitive(k.iter().zip(kp).map(|(a, b)| a * dots[p] - b * dots[i]).collect()))
            .collect();
        SpanComplement { complement, dim: self.dim }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_a_row() {
        let k = integer_kernel(&[vec![1, 1, 0]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + v[1], 0);
        }
        // Saturated: (2, 4) spans a rank-one lattice whose kernel is (2, -1).
        let k = integer_kernel(&[vec![2, 4]], 2);
        assert_eq!(k.len(), 1);
        assert_eq!(primitive(k[0].clone()), vec![2, -1]);
    }

    #[test]
    fn complement_tracks_span() {
        let s = SpanComplement::zero(3).extend(&[1, -1, 0]).extend(&[0, 1, -1]);
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[1, 0, -1]));
        assert!(!s.contains(&[1, 0, 0]));
        assert_eq!(s.extend(&[1, 0, -1]), s);
    }
}

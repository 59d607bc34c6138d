//! Hermite and Smith normal forms and fraction-free determinants.

use super::int::{ext_gcd, with_fallback, ExactInt};
use super::matrix::IntMatrix;
use super::poly::IntPoly;
use super::LatticeError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Rows<T> = Vec<Vec<T>>;

fn to_big(rows: &[Vec<i64>]) -> Rows<BigInt> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn from_big<T: ExactInt>(rows: &[Vec<BigInt>]) -> Option<Rows<T>> {
    rows.iter().map(|r| r.iter().map(T::from_bigint).collect()).collect()
}

/// Replaces rows `(p, q)` by `(x p + y q, b' p - a' q)`, a unimodular move that
/// puts `gcd(a, b)` in row `p` and zero in row `q` at the chosen column.
fn gcd_row_step<T: ExactInt>(rows: &mut [Vec<T>], p: usize, q: usize, col: usize) -> Option<()> {
    let a = rows[p][col].clone();
    let b = rows[q][col].clone();
    let (g, x, y) = ext_gcd(&a, &b)?;
    let a1 = a.div_exact(&g)?;
    let b1 = b.div_exact(&g)?;
    for j in 0..rows[p].len() {
        let rp = rows[p][j].clone();
        let rq = rows[q][j].clone();
        rows[p][j] = x.mul(&rp)?.add(&y.mul(&rq)?)?;
        rows[q][j] = b1.mul(&rp)?.sub(&a1.mul(&rq)?)?;
    }
    Some(())
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
/// rows in echelon order, positive pivots, entries above a pivot reduced into
/// `[0, pivot)`. Two generating sets span the same lattice iff their forms agree.
pub(crate) fn hnf_generic<T: ExactInt>(mut rows: Rows<T>) -> Option<Rows<T>> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let mut pr = 0;
    for col in 0..n {
        if pr == m {
            break;
        }
        for i in pr + 1..m {
            if !rows[i][col].is_zero() {
                gcd_row_step(&mut rows, pr, i, col)?;
            }
        }
        if rows[pr][col].is_zero() {
            continue;
        }
        if rows[pr][col].is_negative() {
            for x in rows[pr].iter_mut() {
                *x = x.neg()?;
            }
        }
        let pivot = rows[pr][col].clone();
        for k in 0..pr {
            let q = rows[k][col].div_floor(&pivot)?;
            if !q.is_zero() {
                for j in 0..n {
                    let v = rows[k][j].sub_mul(&q, &rows[pr][j])?;
                    rows[k][j] = v;
                }
            }
        }
        pr += 1;
    }
    rows.truncate(pr);
    Some(rows)
}

/// Smith decomposition `U * M * V = D` computed by [`smith_generic`].
#[derive(Clone, Debug)]
pub(crate) struct SmithParts<T> {
    pub u: Rows<T>,
    pub d: Rows<T>,
    pub v: Rows<T>,
}

fn identity<T: ExactInt>(n: usize) -> Rows<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

fn transpose<T: Clone>(rows: &[Vec<T>], cols: usize) -> Rows<T> {
    (0..cols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Applies the row move of [`gcd_row_step`] to `a` and mirrors it on `u`.
fn paired_row_step<T: ExactInt>(a: &mut [Vec<T>], u: &mut [Vec<T>], p: usize, q: usize, col: usize) -> Option<()> {
    let x0 = a[p][col].clone();
    let y0 = a[q][col].clone();
    if !x0.is_zero() && x0.divides(&y0)? {
        // Elementary move keeps row p, so the pivot column stays cleared.
        let k = y0.div_exact(&x0)?;
        for rows in [&mut *a, &mut *u] {
            for j in 0..rows[p].len() {
                let v = rows[q][j].sub_mul(&k, &rows[p][j])?;
                rows[q][j] = v;
            }
        }
        return Some(());
    }
    let (g, x, y) = ext_gcd(&x0, &y0)?;
    let a1 = x0.div_exact(&g)?;
    let b1 = y0.div_exact(&g)?;
    for rows in [&mut *a, &mut *u] {
        for j in 0..rows[p].len() {
            let rp = rows[p][j].clone();
            let rq = rows[q][j].clone();
            rows[p][j] = x.mul(&rp)?.add(&y.mul(&rq)?)?;
            rows[q][j] = b1.mul(&rp)?.sub(&a1.mul(&rq)?)?;
        }
    }
    Some(())
}

/// Smith normal form with unimodular transforms, diagonal entries nonnegative
/// and each dividing the next.
pub(crate) fn smith_generic<T: ExactInt>(m: &[Vec<T>], cols: usize) -> Option<SmithParts<T>> {
    let rows = m.len();
    let mut a: Rows<T> = m.to_vec();
    let mut u = identity::<T>(rows);
    // Column operations are row operations on the transpose.
    let mut vt = identity::<T>(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Bring a nonzero entry of minimal size to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs_cmp(&a[bi][bj]).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        u.swap(t, bi);
        for r in a.iter_mut() {
            r.swap(t, bj);
        }
        vt.swap(t, bj);
        loop {
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    paired_row_step(&mut a, &mut u, t, i, t)?;
                }
            }
            let mut at = transpose(&a, cols);
            for j in t + 1..cols {
                if !at[j][t].is_zero() {
                    paired_row_step(&mut at, &mut vt, t, j, t)?;
                }
            }
            a = transpose(&at, rows);
            let col_clear = (t + 1..rows).all(|i| a[i][t].is_zero());
            if !col_clear {
                continue;
            }
            // Enforce divisibility of the remaining block by the pivot.
            let pivot = a[t][t].clone();
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !pivot.divides(&a[i][j])? {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                None => break,
                Some(i) => {
                    for rws in [&mut a, &mut u] {
                        for j in 0..rws[t].len() {
                            let v = rws[t][j].add(&rws[i][j])?;
                            rws[t][j] = v;
                        }
                    }
                }
            }
        }
        if a[t][t].is_negative() {
            for rws in [&mut a, &mut u] {
                for x in rws[t].iter_mut() {
                    *x = x.neg()?;
                }
            }
        }
        t += 1;
    }
    Some(SmithParts { u, d: a, v: transpose(&vt, cols) })
}

/// Fraction-free Gaussian elimination determinant.
pub(crate) fn det_generic<T: ExactInt>(m: &[Vec<T>]) -> Option<T> {
    let n = m.len();
    let mut a: Rows<T> = m.to_vec();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return Some(T::zero()) };
            a.swap(k, p);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { T::one() } else { a[n - 1][n - 1].clone() };
    if sign_flip {
        det.neg()
    } else {
        Some(det)
    }
}

/// Result of [`smith_normal_form`]: `u * m * v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Nonzero invariant factors in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !Zero::is_zero(x)).collect()
    }
}

/// Smith normal form of an integer matrix with its unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.to_rows();
    let p = smith_generic(&rows, m.cols()).expect("arbitrary precision");
    SmithForm {
        u: IntMatrix::from_rows(&p.u).expect("square"),
        d: IntMatrix::from_rows(&p.d).expect("rectangular"),
        v: IntMatrix::from_rows(&p.v).expect("square"),
    }
}

/// Canonical Hermite basis of the lattice spanned by the rows of `m`.
pub fn hnf_canonical(m: &IntMatrix) -> IntMatrix {
    let rows = hnf_generic(m.to_rows()).expect("arbitrary precision");
    if rows.is_empty() {
        return IntMatrix::zeros(0, m.cols());
    }
    IntMatrix::from_rows(&rows).expect("rectangular")
}

/// Determinant of a square matrix.
pub fn determinant(m: &IntMatrix) -> Result<BigInt, LatticeError> {
    if !m.is_square() {
        return Err(LatticeError::NotSquare(m.rows(), m.cols()));
    }
    Ok(det_generic(&m.to_rows()).expect("arbitrary precision"))
}

/// `det(q*A - I)` as a polynomial in `q`, by exact interpolation at
/// `q = 0, 1, ..., n`.
pub fn det_pencil(a: &IntMatrix) -> Result<IntPoly, LatticeError> {
    if !a.is_square() {
        return Err(LatticeError::NotSquare(a.rows(), a.cols()));
    }
    let n = a.rows();
    let id = IntMatrix::identity(n);
    let values: Vec<BigInt> = (0..=n)
        .map(|k| {
            let m = a.scale(&BigInt::from(k)).sub(&id).expect("same shape");
            det_generic(&m.to_rows()).expect("arbitrary precision")
        })
        .collect();
    Ok(interpolate_at_naturals(&values))
}

/// Fast path of [`det_pencil`] for small machine-integer matrices.
pub fn det_pencil_i64(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    let values: Vec<BigInt> = (0..=n as i64)
        .map(|k| {
            let m: Rows<i64> = a
                .iter()
                .enumerate()
                .map(|(i, r)| r.iter().enumerate().map(|(j, &x)| k * x - i64::from(i == j)).collect())
                .collect();
            with_fallback(
                || det_generic(&m).map(BigInt::from),
                || det_generic(&to_big(&m)),
            )
        })
        .collect();
    interpolate_at_naturals(&values)
}

/// Characteristic polynomial `det(q I - A)` by Faddeev-LeVerrier in `i128`,
/// falling back to interpolation of exact determinants on overflow.
pub fn char_poly_i64(a: &[Vec<i64>]) -> IntPoly {
    let n = a.len();
    let fast = || -> Option<Vec<i128>> {
        let am: Rows<i128> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let mut c = vec![0i128; n + 1];
        c[n] = 1;
        let mut m: Rows<i128> = vec![vec![0; n]; n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
            let mut next: Rows<i128> = vec![vec![0; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s: i128 = 0;
                    for l in 0..n {
                        s = s.checked_add(am[i][l].checked_mul(m[l][j])?)?;
                    }
                    next[i][j] = s;
                }
                next[i][i] = next[i][i].checked_add(c[n - k + 1])?;
            }
            let mut tr: i128 = 0;
            for i in 0..n {
                for l in 0..n {
                    tr = tr.checked_add(am[i][l].checked_mul(next[l][i])?)?;
                }
            }
            c[n - k] = -tr / k as i128;
            m = next;
        }
        Some(c)
    };
    match fast() {
        Some(c) => IntPoly::new(c.into_iter().map(BigInt::from).collect()),
        None => {
            let values: Vec<BigInt> = (0..=n as i64)
                .map(|k| {
                    let m: Rows<BigInt> = a
                        .iter()
                        .enumerate()
                        .map(|(i, r)| r.iter().enumerate().map(|(j, &x)| BigInt::from(k * i64::from(i == j) - x)).collect())
                        .collect();
                    det_generic(&m).expect("big integers do not overflow")
                })
                .collect();
            interpolate_at_naturals(&values)
        }
    }
}

/// The unique polynomial of degree `< values.len()` taking `values[k]` at `k`.
fn interpolate_at_naturals(values: &[BigInt]) -> IntPoly {
    // Newton forward differences over the rationals, expanded into monomials.
    let n = values.len();
    let mut diffs: Vec<BigRational> = values.iter().cloned().map(BigRational::from_integer).collect();
    let mut coeffs = Vec::with_capacity(n);
    for k in 0..n {
        coeffs.push(diffs[k].clone());
        for i in (k + 1..n).rev() {
            diffs[i] = (&diffs[i] - &diffs[i - 1]) / BigRational::from_integer(BigInt::from(k + 1));
        }
    }
    // p(q) = sum_k c_k * q (q-1) ... (q-k+1)
    let mut result = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (k, c) in coeffs.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            result[i] += c * b;
        }
        let shift = BigRational::from_integer(BigInt::from(k));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * &shift;
        }
        basis = next;
    }
    IntPoly::new(
        result
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "determinant polynomial has integer coefficients");
                c.to_integer()
            })
            .collect(),
    )
}

/// Canonical Hermite basis of a machine-integer lattice.
pub fn hnf_i64(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    with_fallback(
        || hnf_generic(rows.to_vec()),
        || hnf_generic(to_big(rows)).and_then(|r| from_big(&r)),
    )
}

/// Machine-integer Smith decomposition `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct SmallSmith {
    pub u: Vec<Vec<i64>>,
    pub d: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

impl SmallSmith {
    /// Diagonal entries, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i64> {
        let k = self.d.len().min(self.d.first().map_or(0, Vec::len));
        (0..k).map(|i| self.d[i][i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|&&x| x != 0).count()
    }
}

/// Smith form of a machine-integer matrix with `cols` columns. Panics only if
/// a transform entry exceeds `i64`, which would need astronomically large input.
pub fn smith_i64(m: &[Vec<i64>], cols: usize) -> SmallSmith {
    let p = with_fallback(
        || smith_generic(m, cols),
        || {
            let b = smith_generic(&to_big(m), cols)?;
            Some(SmithParts { u: from_big(&b.u)?, d: from_big(&b.d)?, v: from_big(&b.v)? })
        },
    );
    SmallSmith { u: p.u, d: p.d, v: p.v }
}

/// Determinant of a small machine-integer matrix.
pub fn det_i64(m: &[Vec<i64>]) -> BigInt {
    with_fallback(|| det_generic(m).map(BigInt::from), || det_generic(&to_big(m)))
}

/// Inverse of a unimodular machine-integer matrix.
pub fn inverse_unimodular(m: &[Vec<i64>]) -> Result<Vec<Vec<i64>>, LatticeError> {
    let n = m.len();
    // Gauss-Jordan over the integers on [m | I] via Hermite reduction.
    let aug: Rows<i64> = m
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().copied().chain((0..n).map(|j| i64::from(i == j))).collect())
        .collect();
    let h = hnf_i64(&aug);
    if h.len() != n || (0..n).any(|i| (0..n).any(|j| h[i][j] != i64::from(i == j))) {
        return Err(LatticeError::NotUnimodular);
    }
    Ok(h.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::small;
    use proptest::prelude::*;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn char_poly_examples() {
        let rot = vec![vec![0, -1], vec![1, -1]];
        assert_eq!(char_poly_i64(&rot), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(char_poly_i64(&small::identity(3)), IntPoly::linear_root(1).pow(3));
    }

    #[test]
    fn smith_examples() {
        let s = smith_normal_form(&im(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.d, im(&[vec![1, 0], vec![0, 6]]));
        let s = smith_normal_form(&im(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.d, im(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn hnf_example() {
        let h = hnf_canonical(&im(&[vec![2, 0], vec![0, 2], vec![1, 1]]));
        assert_eq!(h, im(&[vec![1, 1], vec![0, 2]]));
    }

    #[test]
    fn pencil_examples() {
        assert_eq!(det_pencil(&IntMatrix::identity(2)).unwrap().to_string(), "1-2q+q^2");
        assert_eq!(det_pencil(&im(&[vec![-1]])).unwrap().to_string(), "-1-q");
        assert_eq!(det_pencil(&im(&[vec![0, 1], vec![-1, 0]])).unwrap().to_string(), "1+q^2");
        assert!(det_pencil(&im(&[vec![1, 2]])).is_err());
    }

    #[test]
    fn unimodular_inverse() {
        let m = vec![vec![2, 1], vec![1, 1]];
        let inv = inverse_unimodular(&m).unwrap();
        assert_eq!(small::mul(&m, &inv), small::identity(2));
        assert!(inverse_unimodular(&[vec![2, 0], vec![0, 1]]).is_err());
    }

    fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-20i64..20, c), r)
        })
    }

    /// Determinantal divisors d_k = gcd of k x k minors, the independent
    /// characterization of the invariant factors.
    fn determinantal_divisors(m: &[Vec<i64>]) -> Vec<BigInt> {
        use itertools::Itertools;
        use num_integer::Integer;
        let (r, c) = (m.len(), m[0].len());
        (1..=r.min(c))
            .map(|k| {
                let mut g = <BigInt as Zero>::zero();
                for rs in (0..r).combinations(k) {
                    for cs in (0..c).combinations(k) {
                        let minor: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                        g = g.gcd(&det_i64(&minor));
                    }
                }
                g
            })
            .collect()
    }

    proptest! {
        #[test]
        fn smith_is_a_valid_decomposition(m in matrix_strategy()) {
            let cols = m[0].len();
            let s = smith_i64(&m, cols);
            prop_assert_eq!(small::mul(&small::mul(&s.u, &m), &s.v), s.d.clone());
            prop_assert_eq!(det_i64(&s.u).magnitude().clone(), num_bigint::BigUint::from(1u8));
            prop_assert_eq!(det_i64(&s.v).magnitude().clone(), num_bigint::BigUint::from(1u8));
            let big = smith_normal_form(&IntMatrix::from_i64_rows(&m));
            prop_assert!(big.d.is_diagonal());
            let diag = s.diagonal();
            for w in diag.windows(2) {
                prop_assert!(w[0] >= 0 && w[1] >= 0);
                prop_assert!(w[0] != 0 && w[1] % w[0] == 0 || w[1] == 0);
            }
            // Products of invariant factors equal the determinantal divisors.
            let dd = determinantal_divisors(&m);
            let mut prod = <BigInt as One>::one();
            for (k, d) in diag.iter().enumerate() {
                prod *= BigInt::from(*d);
                prop_assert_eq!(&prod, &dd[k]);
            }
        }

        #[test]
        fn hnf_is_canonical(m in matrix_strategy(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, Rng, SeedableRng};
            let h = hnf_i64(&m);
            // A random unimodular recombination spans the same lattice.
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut other = m.clone();
            other.shuffle(&mut rng);
            for _ in 0..6 {
                let i = rng.gen_range(0..other.len());
                let j = rng.gen_range(0..other.len());
                if i != j {
                    let k: i64 = rng.gen_range(-3..=3);
                    let src = other[j].clone();
                    for (x, y) in other[i].iter_mut().zip(&src) { *x += k * y; }
                }
            }
            prop_assert_eq!(hnf_i64(&other), h.clone());
            // Every original row lies in the span of the basis, and vice versa.
            let h2 = hnf_i64(&[h.clone(), m.clone()].concat());
            prop_assert_eq!(h2, h);
        }

        #[test]
        fn pencil_matches_pointwise_determinant(m in (1usize..5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-4i64..4, n), n)), q in -6i64..6) {
            let p = det_pencil_i64(&m);
            let n = m.len();
            let direct: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| q * m[i][j] - i64::from(i == j)).collect()).collect();
            prop_assert_eq!(p.eval(&BigInt::from(q)), det_i64(&direct));
        }
    }
}

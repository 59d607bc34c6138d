//! Brute-force twisted point counts over finite fields, used only to check
//! the Möbius sums.

use super::{good_prime, ArrangementKind, CountingError};
use crate::chartab::modp::PrimeField;
use crate::lattice::matrix::small::{self, Mat};
use crate::lattice::{inverse_unimodular, smith_i64};
use crate::rootsys::RootSystem;
use num_bigint::BigInt;
use num_integer::Integer;

/// Default cap on the number of points enumerated.
pub const DEFAULT_BOUND: u64 = 2_000_000_000;

pub(crate) fn rank_mod_p(field: &PrimeField, rows: &[Vec<u64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() {
        return 0;
    }
    cols - field.kernel(rows, cols).len()
}

/// Polynomials over `F_p`, lowest degree first, trimmed.
fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(f: &PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv = f.inv(m[dm]);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = f.mul(*r.last().unwrap(), inv);
        for (i, &mi) in m.iter().enumerate() {
            r[k + i] = f.sub(r[k + i], f.mul(c, mi));
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(f: &PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = f.add(c[i + j], f.mul(x, y));
        }
    }
    poly_rem(f, &c, m)
}

fn poly_powmod(f: &PrimeField, a: &[u64], mut e: u128, m: &[u64]) -> Vec<u64> {
    let mut base = poly_rem(f, a, m);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(f, &acc, &base, m);
        }
        base = poly_mulmod(f, &base, &base, m);
        e >>= 1;
    }
    acc
}

fn poly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn sub_x(f: &PrimeField, a: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    a.resize(a.len().max(2), 0);
    a[1] = f.sub(a[1], 1);
    trim(a)
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Rabin's test for a monic polynomial of degree `m`.
fn is_irreducible(f: &PrimeField, poly: &[u64]) -> bool {
    let m = (poly.len() - 1) as u32;
    let p = f.p as u128;
    let x = [0u64, 1];
    if !sub_x(f, &poly_powmod(f, &x, p.pow(m), poly)).is_empty() {
        return false;
    }
    prime_factors(m as u64).into_iter().all(|r| {
        let h = sub_x(f, &poly_powmod(f, &x, p.pow(m / r as u32), poly));
        poly_gcd(f, &h, poly).len() == 1
    })
}

/// The first monic irreducible polynomial of degree `m` in lexicographic order
/// of its lower coefficients.
fn irreducible_poly(f: &PrimeField, m: usize) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let mut lower = vec![0u64; m];
    loop {
        let mut poly = lower.clone();
        poly.push(1);
        if poly[0] != 0 && is_irreducible(f, &poly) {
            return poly;
        }
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < f.p {
                break;
            }
            lower[i] = 0;
            i += 1;
            assert!(i < m, "an irreducible polynomial of each degree exists");
        }
    }
}

/// Matrix of `x -> x^p` on `F_p[X]/(poly)` in the monomial basis, rows being
/// images of basis vectors.
fn frobenius_matrix(f: &PrimeField, poly: &[u64]) -> Vec<Vec<u64>> {
    let m = poly.len() - 1;
    let xp = poly_powmod(f, &[0, 1], f.p as u128, poly);
    let mut rows = Vec::with_capacity(m);
    let mut cur = vec![1u64];
    for _ in 0..m {
        let mut r = cur.clone();
        r.resize(m, 0);
        rows.push(r);
        cur = poly_mulmod(f, &cur, &xp, poly);
    }
    rows
}

fn multiplicative_order(g: &Mat) -> usize {
    let id = small::identity(g.len());
    let mut x = g.clone();
    let mut k = 1;
    while x != id {
        x = small::mul(&x, g);
        k += 1;
        assert!(k <= 1 << 16, "lattice automorphisms of root systems have small order");
    }
    k
}

/// Points of the affine complement fixed by `x -> F(x) h`, where `h` is the
/// contragredient of `g`, so that root functionals `alpha . x` are permuted.
pub fn linear_brute_force(system: &RootSystem, g: &Mat, q: u64, bound: u64) -> Result<u64, CountingError> {
    let n = system.rank();
    let size = BigInt::from(q).pow(n as u32);
    if size > BigInt::from(bound) {
        return Err(CountingError::TooLarge { size, bound });
    }
    let f = PrimeField::new(q);
    let m = multiplicative_order(g);
    let poly = irreducible_poly(&f, m);
    let fr = frobenius_matrix(&f, &poly);
    let ginv = inverse_unimodular(g).map_err(|_| CountingError::NotAnAutomorphism(format!("{g:?}")))?;
    let h = small::transpose(&ginv);
    // Equations (j, b): sum_{k,a} h[k][j] fr[a][b] X[k,a] - X[j,b] = 0.
    let nm = n * m;
    let mut eqs = vec![vec![0u64; nm]; nm];
    for j in 0..n {
        for b in 0..m {
            let row = &mut eqs[j * m + b];
            for k in 0..n {
                let hk = f.from_i64(h[k][j]);
                if hk == 0 {
                    continue;
                }
                for a in 0..m {
                    row[k * m + a] = f.add(row[k * m + a], f.mul(hk, fr[a][b]));
                }
            }
            row[j * m + b] = f.sub(row[j * m + b], 1);
        }
    }
    let basis = f.kernel(&eqs, nm);
    if basis.len() != n {
        return Err(CountingError::Unsupported(format!("fixed space of dimension {} over F_{q}", basis.len())));
    }
    // Functional values of each root on each basis vector, in F_p^m.
    let values: Vec<Vec<Vec<u64>>> = system
        .positive_roots()
        .iter()
        .map(|r| {
            basis
                .iter()
                .map(|b| {
                    (0..m)
                        .map(|a| (0..n).fold(0, |acc, k| f.add(acc, f.mul(f.from_i64(r[k]), b[k * m + a]))))
                        .collect()
                })
                .collect()
        })
        .collect();
    // Coordinates are below q < 2^32, so products of two fit in u64.
    let roots = values.len();
    let last: Vec<Option<(usize, u64)>> = values
        .iter()
        .map(|v| v[n - 1].iter().position(|&x| x != 0).map(|k| (k, f.inv(v[n - 1][k]))))
        .collect();
    let mut partial = vec![0u64; roots * m];
    let mut digits = vec![0u64; n - 1];
    let mut hit = vec![false; q as usize];
    let mut touched: Vec<usize> = Vec::new();
    let mut count = 0u64;
    loop {
        let mut all = false;
        for r in 0..roots {
            let s = &partial[r * m..(r + 1) * m];
            match last[r] {
                None => {
                    if s.iter().all(|&x| x == 0) {
                        all = true;
                        break;
                    }
                }
                Some((k, inv)) => {
                    let w = &values[r][n - 1];
                    let c = (q - s[k]) % q * inv % q;
                    if !hit[c as usize] && (0..m).all(|a| (s[a] + c * w[a]).is_multiple_of(q)) {
                        hit[c as usize] = true;
                        touched.push(c as usize);
                    }
                }
            }
        }
        if !all {
            count += q - touched.len() as u64;
        }
        for &c in &touched {
            hit[c] = false;
        }
        touched.clear();
        // Next prefix; a wrapping digit adds its vector q times in total.
        let mut i = 0;
        while i < n - 1 {
            digits[i] += 1;
            for r in 0..roots {
                for a in 0..m {
                    let x = &mut partial[r * m + a];
                    *x += values[r][i][a];
                    if *x >= q {
                        *x -= q;
                    }
                }
            }
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == n - 1 {
            break;
        }
    }
    Ok(count)
}

/// Points `t` of the torus with `t(v) = t(v g)^q` and no root equal to one.
/// They are the characters of `Z^n / Z^n (q g - I)`, enumerated through its
/// Smith form.
pub fn toric_brute_force(system: &RootSystem, g: &Mat, q: u64, bound: u64) -> Result<u64, CountingError> {
    let n = system.rank();
    let qi = q as i64;
    let mut a = small::identity(n);
    for i in 0..n {
        for j in 0..n {
            a[i][j] = qi * g[i][j] - i64::from(i == j);
        }
    }
    let s = smith_i64(&a, n);
    let d = s.diagonal();
    let size: BigInt = d.iter().map(|&x| BigInt::from(x)).product();
    if size > BigInt::from(bound) || d.contains(&0) {
        return Err(CountingError::TooLarge { size, bound });
    }
    let top = *d.last().expect("rank at least one");
    // Root alpha is trivial at c iff sum_i c_i w_i (top / d_i) = 0 mod top,
    // with w = alpha v.
    let coef: Vec<Vec<i64>> = system
        .positive_roots()
        .iter()
        .map(|r| {
            let w = small::vec_mul(r, &s.v);
            (0..n).map(|i| (w[i].rem_euclid(d[i]) * (top / d[i])).rem_euclid(top)).collect()
        })
        .collect();
    let mut partial = vec![0i64; coef.len()];
    let mut digits = vec![0i64; n - 1];
    let mut hit = vec![false; top as usize];
    let mut touched: Vec<usize> = Vec::new();
    let mut count = 0u64;
    loop {
        for (r, &sr) in partial.iter().enumerate() {
            let a = coef[r][n - 1];
            let need = (-sr).rem_euclid(top);
            let g = a.gcd(&top);
            if need % g != 0 {
                continue;
            }
            // a c = need mod top: c0 + k top/g.
            let step = top / g;
            let (a1, need1) = (a / g, need / g);
            let c0 = if step == 1 { 0 } else { (need1 as i128 * modinv(a1.rem_euclid(step), step) as i128).rem_euclid(step as i128) as i64 };
            let mut c = c0;
            while c < top {
                if !hit[c as usize] {
                    hit[c as usize] = true;
                    touched.push(c as usize);
                }
                c += step;
            }
        }
        count += top as u64 - touched.len() as u64;
        for &c in &touched {
            hit[c] = false;
        }
        touched.clear();
        let mut i = 0;
        while i < n - 1 {
            digits[i] += 1;
            let wrap = digits[i] == d[i];
            // A wrapping digit adds d_i coef = 0 mod top in total.
            for (r, p) in partial.iter_mut().enumerate() {
                *p += coef[r][i];
                if *p >= top {
                    *p -= top;
                }
            }
            if !wrap {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == n - 1 {
            break;
        }
    }
    Ok(count)
}

fn modinv(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Oracle count after checking that `q` is good for the arrangement.
pub fn brute_force_twisted_count(
    kind: ArrangementKind,
    system: &RootSystem,
    g: &Mat,
    q: u64,
    bound: u64,
) -> Result<u64, CountingError> {
    if !good_prime(system, kind, q) {
        return Err(CountingError::BadPrime { system: system.kind(), kind, q });
    }
    match kind {
        ArrangementKind::Linear => linear_brute_force(system, g, q, bound),
        ArrangementKind::Toric => toric_brute_force(system, g, q, bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, CartanType};

    #[test]
    fn small_oracles() {
        let a2 = build_root_system(CartanType::A(2)).unwrap();
        let a1 = build_root_system(CartanType::A(1)).unwrap();
        let id2 = small::identity(2);
        assert_eq!(brute_force_twisted_count(ArrangementKind::Toric, &a2, &id2, 7, DEFAULT_BOUND).unwrap(), 20);
        assert_eq!(brute_force_twisted_count(ArrangementKind::Linear, &a2, &id2, 5, DEFAULT_BOUND).unwrap(), 12);
        let m1 = vec![vec![-1]];
        assert_eq!(toric_brute_force(&a1, &m1, 5, DEFAULT_BOUND).unwrap(), 5);
        assert_eq!(linear_brute_force(&a1, &m1, 5, DEFAULT_BOUND).unwrap(), 4);
    }

    #[test]
    fn field_construction() {
        let f = PrimeField::new(3);
        let p = irreducible_poly(&f, 2);
        assert_eq!(p, vec![1, 0, 1]);
        let fr = frobenius_matrix(&f, &p);
        // x^3 = -x mod x^2 + 1.
        assert_eq!(fr[1], vec![0, 2]);
    }
}

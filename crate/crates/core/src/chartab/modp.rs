//! Linear algebra over a prime field `F_p` with `p < 2^63`.

/// Arithmetic modulo a fixed prime.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 63).contains(&p) && is_prime(p));
        PrimeField { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            -((self.p - a) as i64)
        } else {
            a as i64
        }
    }

    /// Basis of the right kernel `{x : A x = 0}` of a `rows x cols` matrix.
    pub fn kernel(&self, a: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut m: Vec<Vec<u64>> = a.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
            m.swap(r, p);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..m.len() {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        let v = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut x = vec![0u64; cols];
                x[f] = 1;
                for (k, &pc) in pivots.iter().enumerate() {
                    x[pc] = self.neg(m[k][f]);
                }
                x
            })
            .collect()
    }

    /// Characteristic polynomial `det(x I - A)`, lowest degree first, by
    /// reduction to upper Hessenberg form.
    pub fn char_poly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for k in 1..n.saturating_sub(1) {
            let Some(p) = (k..n).find(|&i| h[i][k - 1] != 0) else { continue };
            if p != k {
                h.swap(p, k);
                for row in h.iter_mut() {
                    row.swap(p, k);
                }
            }
            let inv = self.inv(h[k][k - 1]);
            for i in k + 1..n {
                let f = self.mul(h[i][k - 1], inv);
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = self.mul(f, h[k][j]);
                    h[i][j] = self.sub(h[i][j], v);
                }
                // Similarity: add f * column i to column k.
                for row in h.iter_mut() {
                    let v = self.mul(f, row[i]);
                    row[k] = self.add(row[k], v);
                }
            }
        }
        // Recurrence on leading principal minors of the Hessenberg matrix.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            // p_{m+1} = (x - h_mm) p_m - sum_{i<m} h_im * prod_{k=i+1..m} h_{k,k-1} * p_i
            let mut next = vec![0u64; m + 2];
            for (d, &c) in polys[m].iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                let v = self.mul(c, h[m][m]);
                next[d] = self.sub(next[d], v);
            }
            let mut prod = 1u64;
            for i in (0..m).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                let coef = self.mul(h[i][m], prod);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    let v = self.mul(coef, c);
                    next[d] = self.sub(next[d], v);
                }
            }
            polys.push(next);
        }
        polys.pop().expect("at least the constant polynomial")
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

//! Exact dense rational matrices.
//!
//! Kernels and ranks are exact. The hot path runs the elimination modulo
//! 62-bit primes and certifies the result: a trivial kernel is certified by a
//! single full-column-rank reduction (modular rank is a lower bound for the
//! rational rank), and a nontrivial kernel is reconstructed by CRT plus
//! rational reconstruction and then verified by exact matrix-vector products.
//! Verified vectors give a lower bound on the kernel dimension that meets the
//! modular upper bound, so the certified answer never depends on luck with
//! primes; when reconstruction fails the code falls back to rational
//! elimination.

use crate::error::{Error, Result};
use crate::scalar::{canonical_int_vector, Scalar};
use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl MatrixQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        MatrixQ {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        MatrixQ::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn to_row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Rows scaled to integers (denominators cleared); all-zero rows dropped.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            if let Some(ints) = canonical_int_vector(self.row(i)) {
                out.push(ints);
            }
        }
        out
    }

    /// Canonical basis of the right kernel {v : Mv = 0}.
    ///
    /// Basis vectors are the reduced-echelon basis of the kernel space,
    /// scaled to integer entries with content 1 and positive first nonzero
    /// entry, ordered by leading coordinate. The result is unique for a
    /// given kernel space.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        if self.cols == 0 {
            return vec![];
        }
        let int_rows = self.integer_rows();
        if int_rows.is_empty() {
            return canonicalize_basis(
                (0..self.cols)
                    .map(|j| {
                        let mut v = vec![Scalar::zero(); self.cols];
                        v[j] = Scalar::one();
                        v
                    })
                    .collect(),
            );
        }
        if let Some(vs) = kernel_modular(&int_rows, self.cols) {
            return vs;
        }
        kernel_exact(self.to_row_vecs(), self.cols)
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis().len()
    }

    pub fn rank(&self) -> usize {
        self.cols - self.kernel_dim()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination on the
    /// denominator-cleared integer matrix.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut den = BigInt::one();
            for v in self.row(i) {
                den = den.lcm(v.denom());
            }
            m.push(
                self.row(i)
                    .iter()
                    .map(|v| v.numer() * (&den / v.denom()))
                    .collect(),
            );
            scale *= den;
        }
        let d = det_bigint(&mut m);
        Ok(Scalar::new(d, scale))
    }

    /// Reduced row echelon form over Q with its pivot columns.
    pub fn rref(&self) -> (MatrixQ, Vec<usize>) {
        let (rows, pivots) = rref_rational(self.to_row_vecs(), self.cols);
        (
            MatrixQ {
                rows: rows.len(),
                cols: self.cols,
                data: rows.into_iter().flatten().collect(),
            },
            pivots,
        )
    }
}

/// Fraction-free determinant; consumes the matrix buffer.
pub(crate) fn det_bigint(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !m[i][k].is_zero());
        let Some(p) = pivot else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    if sign < 0 {
        -m[n - 1][n - 1].clone()
    } else {
        m[n - 1][n - 1].clone()
    }
}

fn rref_rational(mut rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = Scalar::one() / rows[r][c].clone();
        for j in c..cols {
            let v = &rows[r][j] * &inv;
            rows[r][j] = v;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let v = &rows[i][j] - &(&rows[r][j] * &f);
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Reduce a verified spanning set to the unique canonical basis: reduced
/// echelon form of the stacked vectors, each row scaled to canonical integers.
fn canonicalize_basis(vectors: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return vec![];
    }
    let cols = vectors[0].len();
    let (rows, _) = rref_rational(vectors, cols);
    rows.iter()
        .map(|r| {
            canonical_int_vector(r)
                .expect("nonzero echelon row")
                .into_iter()
                .map(Scalar::from_integer)
                .collect()
        })
        .collect()
}

fn kernel_exact(rows: Vec<Vec<Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    let (rref, pivots) = rref_rational(rows, cols);
    kernel_from_rref(
        &|r, c| rref[r][c].clone(),
        &pivots,
        cols,
    )
}

fn kernel_from_rref(
    entry: &dyn Fn(usize, usize) -> Scalar,
    pivots: &[usize],
    cols: usize,
) -> Vec<Vec<Scalar>> {
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut vectors = Vec::new();
    for f in 0..cols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -entry(r, f);
        }
        vectors.push(v);
    }
    canonicalize_basis(vectors)
}

// ---------------------------------------------------------------------------
// Modular fast path.

const MAX_PRIMES: usize = 48;

static PRIMES: Lazy<Vec<u64>> = Lazy::new(|| {
    let mut primes = Vec::with_capacity(MAX_PRIMES);
    let mut c: u64 = (1u64 << 62) - 1;
    while primes.len() < MAX_PRIMES {
        if is_prime_u64(c) {
            primes.push(c);
        }
        c -= 2;
    }
    primes
});

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn reduce_mod(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().expect("residue fits u64")
}

fn rref_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = invmod(rows[r][c], p);
        for j in c..cols {
            rows[r][j] = mulmod(rows[r][j], inv, p);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in c..cols {
                    let sub = mulmod(rows[r][j], f, p);
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

struct ModRref {
    p: u64,
    pivots: Vec<usize>,
    rref: Vec<Vec<u64>>,
}

fn kernel_modular(int_rows: &[Vec<BigInt>], cols: usize) -> Option<Vec<Vec<Scalar>>> {
    let primes = &*PRIMES;
    let mut computed: Vec<ModRref> = Vec::new();
    let mut next = 0usize;
    // Cumulative prime counts tried before each reconstruction attempt.
    for target in [1usize, 3, 7, 15, 31, MAX_PRIMES] {
        while next < target && next < primes.len() {
            let p = primes[next];
            next += 1;
            let rows_p: Vec<Vec<u64>> = int_rows
                .iter()
                .map(|r| r.iter().map(|x| reduce_mod(x, p)).collect())
                .collect();
            let (rref, pivots) = rref_mod(rows_p, cols, p);
            if pivots.len() == cols {
                // Modular rank is a lower bound for the rational rank, so a
                // full-column-rank reduction certifies a trivial kernel.
                return Some(vec![]);
            }
            computed.push(ModRref { p, pivots, rref });
        }
        // Highest rank wins; among those, the leftmost pivot set (the
        // rational pivot set is the lexicographically smallest of any
        // full-rank reduction).
        let best = computed
            .iter()
            .max_by(|a, b| {
                a.pivots
                    .len()
                    .cmp(&b.pivots.len())
                    .then_with(|| b.pivots.cmp(&a.pivots))
            })?
            .pivots
            .clone();
        let group: Vec<&ModRref> = computed.iter().filter(|m| m.pivots == best).collect();
        if let Some(vs) = reconstruct_kernel(&group, cols, int_rows) {
            return Some(vs);
        }
    }
    None
}

fn reconstruct_kernel(
    group: &[&ModRref],
    cols: usize,
    int_rows: &[Vec<BigInt>],
) -> Option<Vec<Vec<Scalar>>> {
    let pivots = &group[0].pivots;
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_set.contains(c)).collect();

    let mut modulus = BigInt::one();
    for m in group {
        modulus *= BigInt::from(m.p);
    }

    let mut vectors: Vec<Vec<Scalar>> = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![Scalar::zero(); cols];
        v[f] = Scalar::one();
        for (r, &c) in pivots.iter().enumerate() {
            let residues: Vec<(BigInt, BigInt)> = group
                .iter()
                .map(|m| {
                    let val = (m.p - m.rref[r][f]) % m.p;
                    (BigInt::from(val), BigInt::from(m.p))
                })
                .collect();
            let combined = crt_combine(&residues);
            v[c] = rational_reconstruct(&combined, &modulus)?;
        }
        vectors.push(v);
    }

    // Exact verification: every reconstructed vector must lie in the kernel.
    // Verified vectors are independent (distinct unit free coordinates), so
    // together with the modular rank bound they pin down the exact kernel.
    for v in &vectors {
        let ints = canonical_int_vector(v).expect("kernel candidate nonzero");
        for row in int_rows {
            let dot: BigInt = row.iter().zip(&ints).map(|(a, b)| a * b).sum();
            if !dot.is_zero() {
                return None;
            }
        }
    }
    Some(canonicalize_basis(vectors))
}

fn crt_combine(residues: &[(BigInt, BigInt)]) -> BigInt {
    let mut x = residues[0].0.clone();
    let mut m = residues[0].1.clone();
    for (r, p) in &residues[1..] {
        // x' = x + m * t with t = (r - x)/m mod p
        let diff = (r - &x).mod_floor(p);
        let m_inv = mod_inverse(&m.mod_floor(p), p);
        let t = (&diff * &m_inv).mod_floor(p);
        x += &m * t;
        m *= p;
    }
    x
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    // extended Euclid; p is prime and a nonzero mod p in our usage
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

/// Wang-style rational reconstruction of r mod m with |num|, den <= sqrt(m/2).
fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Scalar> {
    if r.is_zero() {
        return Some(Scalar::zero());
    }
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() {
        return None;
    }
    let (num, den) = if s1.is_negative() {
        (-r1, -s1)
    } else {
        (r1, s1)
    };
    if den > bound || num.gcd(&den) != BigInt::one() {
        return None;
    }
    Some(Scalar::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, zint};

    fn svec(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| zint(x)).collect()
    }

    #[test]
    fn kernel_frozen_examples() {
        // single row (1 1): kernel spanned by (1, -1)
        let m = MatrixQ::from_int_rows(&[&[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![svec(&[1, -1])]);
        // identity: trivial kernel
        let m = MatrixQ::identity(3);
        assert!(m.kernel_basis().is_empty());
        // rank-1 2x2: kernel spanned by (2, -1)
        let m = MatrixQ::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.kernel_basis(), vec![svec(&[2, -1])]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_zero_and_empty() {
        let m = MatrixQ::zero(2, 3);
        let k = m.kernel_basis();
        assert_eq!(
            k,
            vec![svec(&[1, 0, 0]), svec(&[0, 1, 0]), svec(&[0, 0, 1])]
        );
        let m = MatrixQ::zero(0, 2);
        assert_eq!(m.kernel_basis().len(), 2);
    }

    #[test]
    fn kernel_with_rational_entries() {
        let m = MatrixQ::from_rows(vec![vec![q(1, 2), q(1, 3), zint(1)]]);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        // each canonical: integer entries, content 1, leading positive
        for v in &k {
            let ints = canonical_int_vector(v).unwrap();
            let v2: Vec<Scalar> = ints.into_iter().map(Scalar::from_integer).collect();
            assert_eq!(&v2, v);
        }
        // kernel membership
        for v in &k {
            let dot: Scalar = m.row(0).iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn modular_and_exact_paths_agree() {
        let m = MatrixQ::from_int_rows(&[
            &[2, 4, 6, -2],
            &[1, 3, 5, 7],
            &[3, 7, 11, 5],
        ]);
        let fast = m.kernel_basis();
        let slow = kernel_exact(m.to_row_vecs(), m.ncols());
        assert_eq!(fast, slow);
        assert_eq!(fast.len(), 2);
    }

    #[test]
    fn det_examples() {
        // Vandermonde at 1, 2, 3
        let m = MatrixQ::from_int_rows(&[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9]]);
        assert_eq!(m.det().unwrap(), zint(2));
        assert_eq!(MatrixQ::identity(3).det().unwrap(), zint(1));
        let m = MatrixQ::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det().unwrap(), zint(0));
        // row swap sign
        let m = MatrixQ::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), zint(-1));
        // rational entries
        let m = MatrixQ::from_rows(vec![vec![q(1, 2), zint(0)], vec![zint(0), q(2, 3)]]);
        assert_eq!(m.det().unwrap(), q(1, 3));
        assert!(MatrixQ::zero(1, 2).det().is_err());
    }

    #[test]
    fn rref_shape() {
        let m = MatrixQ::from_int_rows(&[&[0, 2, 4], &[1, 1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r.row(0), &svec(&[1, 0, -1])[..]);
        assert_eq!(r.row(1), &svec(&[0, 1, 2])[..]);
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime_u64(PRIMES[0]));
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64(1u64 << 61));
        assert_eq!(PRIMES.len(), MAX_PRIMES);
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let m = BigInt::from(PRIMES[0]) * BigInt::from(PRIMES[1]);
        for (n, d) in [(1i64, 3i64), (-7, 5), (22, 7), (0, 1), (-100003, 99991)] {
            let target = Scalar::new(BigInt::from(n), BigInt::from(d));
            // residue = n * d^{-1} mod m
            let dinv = mod_inverse(&BigInt::from(d).mod_floor(&m), &m);
            let res = (BigInt::from(n) * dinv).mod_floor(&m);
            assert_eq!(rational_reconstruct(&res, &m).unwrap(), target);
        }
    }
}

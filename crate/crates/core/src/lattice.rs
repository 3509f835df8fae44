//! Integer lattice arithmetic: Smith normal form with unimodular transforms,
//! torsion of lattice quotients, and a few helpers built on top of them
//! (row-lattice bases, integer kernels, exact determinants).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntegerMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = BigInt::from(v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(src, c)] * factor;
            self[(dst, c)] += v;
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, src)] * factor;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self[(r, c)];
            self[(r, c)] = v;
        }
    }
}

/// Smith normal form `left * M * right = diag(invariants)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    /// `min(rows, cols)` diagonal entries: nonzero ones first, each dividing
    /// the next, followed by zeros.
    pub invariants: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(rows, cols);
        for (i, v) in self.invariants.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }
}

/// Smith normal form by elementary row and column operations, always pivoting
/// on an entry of minimal nonzero absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntegerMatrix::identity(rows);
    let mut right = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let v = &a[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, t)] / &a[(t, t)]);
                a.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                dirty |= !a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&a[(t, j)] / &a[(t, t)]);
                a.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                dirty |= !a[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the rest.
            let pivot = a[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let invariants = (0..rows.min(cols)).map(|i| a[(i, i)].clone()).collect();
    SmithForm {
        invariants,
        left,
        right,
    }
}

/// Structure of `Z^n / span(generators)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientInvariants {
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl QuotientInvariants {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn torsion_primes(&self) -> BTreeSet<u64> {
        self.torsion.iter().flat_map(prime_factors).collect()
    }
}

fn generator_matrix(ambient_rank: usize, generators: &[Vec<i64>]) -> Result<IntegerMatrix> {
    for g in generators {
        if g.len() != ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: g.len(),
            });
        }
    }
    IntegerMatrix::from_rows(ambient_rank, generators)
}

pub fn quotient_invariants(
    ambient_rank: usize,
    generators: &[Vec<i64>],
) -> Result<QuotientInvariants> {
    let g = generator_matrix(ambient_rank, generators)?;
    let snf = smith_normal_form(&g);
    let rank = snf.rank();
    let torsion = snf
        .invariants
        .iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .cloned()
        .collect();
    Ok(QuotientInvariants {
        torsion,
        free_rank: ambient_rank - rank,
    })
}

/// Primes `p` such that `Z^n / span(generators)` has `p`-torsion.
pub fn quotient_torsion_primes(
    ambient_rank: usize,
    generators: &[Vec<i64>],
) -> Result<BTreeSet<u64>> {
    Ok(quotient_invariants(ambient_rank, generators)?.torsion_primes())
}

/// Prime divisors of `|n|` in increasing order (trial division; the
/// invariants met here are small).
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::from(2u32);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.to_u64().expect("trial divisor fits in u64"));
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 1u32;
    }
    if !n.is_one() {
        out.push(n.to_u64().expect("prime factor fits in u64"));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A basis (as rows) of the lattice spanned by the given rows.
pub fn row_lattice_basis(ambient_rank: usize, generators: &[Vec<i64>]) -> Result<IntegerMatrix> {
    let g = generator_matrix(ambient_rank, generators)?;
    let snf = smith_normal_form(&g);
    // U G V = D  =>  rowspace(G) = rowspace(D V^{-1}); rows d_i * (row i of V^{-1}).
    let v_inv = unimodular_inverse(&snf.right)?;
    let rank = snf.rank();
    let mut basis = IntegerMatrix::zeros(rank, ambient_rank);
    for i in 0..rank {
        for c in 0..ambient_rank {
            basis[(i, c)] = &snf.invariants[i] * &v_inv[(i, c)];
        }
    }
    Ok(basis)
}

/// Coordinates `c` with `c * basis = x`, if `x` lies in the row lattice of the
/// (full row rank) `basis`.
pub fn coordinates_in_basis(basis: &IntegerMatrix, x: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(basis);
    // U B V = D, so c B = x  <=>  (c U^{-1}) D = x V.
    let xv: Vec<BigInt> = (0..basis.cols)
        .map(|j| (0..basis.cols).map(|k| &x[k] * &snf.right[(k, j)]).sum())
        .collect();
    let rank = snf.rank();
    if rank != basis.rows {
        return None;
    }
    let mut y = vec![BigInt::zero(); basis.rows];
    for j in 0..basis.cols {
        if j < rank {
            let (q, r) = xv[j].div_rem(&snf.invariants[j]);
            if !r.is_zero() {
                return None;
            }
            y[j] = q;
        } else if !xv[j].is_zero() {
            return None;
        }
    }
    // c = y U
    Some(
        (0..basis.rows)
            .map(|j| (0..basis.rows).map(|k| &y[k] * &snf.left[(k, j)]).sum())
            .collect(),
    )
}

/// Integer basis of the right kernel `{v : M v = 0}`.
pub fn integer_kernel(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    (rank..m.cols)
        .map(|j| (0..m.cols).map(|i| snf.right[(i, j)].clone()).collect())
        .collect()
}

/// Inverse of a unimodular matrix via its adjugate-free elimination.
pub fn unimodular_inverse(m: &IntegerMatrix) -> Result<IntegerMatrix> {
    let n = m.rows;
    if m.cols != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.cols,
        });
    }
    let snf = smith_normal_form(m);
    if snf.invariants.iter().any(|d| !d.is_one()) {
        return Err(Error::InvalidInput("matrix is not unimodular".into()));
    }
    // U M V = I  =>  M^{-1} = V U.
    snf.right.mul(&snf.left)
}

use super::poly::Poly;
use super::{Elem, Ring, RingOps};
use crate::error::{Error, Result};

/// Dense matrix of ring or field elements, row major.
pub type Matrix = Vec<Vec<Elem>>;

/// Pivots must stay this far below the precision for a rank to be
/// certified.
const RANK_GUARD: usize = 2;

pub fn mat_zero<R: RingOps + ?Sized>(r: &R, rows: usize, cols: usize) -> Matrix {
    vec![vec![r.zero(); cols]; rows]
}

pub fn mat_identity<R: RingOps + ?Sized>(r: &R, n: usize) -> Matrix {
    let mut m = mat_zero(r, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = r.one();
    }
    m
}

pub fn mat_add<R: RingOps + ?Sized>(r: &R, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.add(u, v)).collect())
        .collect()
}

pub fn mat_sub<R: RingOps + ?Sized>(r: &R, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| r.sub(u, v)).collect())
        .collect()
}

pub fn mat_scale<R: RingOps + ?Sized>(r: &R, a: &Matrix, c: &Elem) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|x| r.mul(x, c)).collect())
        .collect()
}

pub fn mat_mul<R: RingOps + ?Sized>(r: &R, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |row| row.len());
    let mut out = mat_zero(r, n, m);
    for i in 0..n {
        for l in 0..k {
            if r.is_zero(&a[i][l]) {
                continue;
            }
            for j in 0..m {
                out[i][j] = r.add(&out[i][j], &r.mul(&a[i][l], &b[l][j]));
            }
        }
    }
    out
}

/// Evaluates a polynomial at a square matrix by Horner's rule.
pub fn mat_poly_eval<R: RingOps + ?Sized>(r: &R, f: &[Elem], m: &Matrix) -> Matrix {
    let n = m.len();
    let mut acc = mat_zero(r, n, n);
    for c in f.iter().rev() {
        acc = mat_mul(r, &acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = r.add(&row[i], c);
        }
    }
    acc
}

/// Characteristic polynomial `det(X - M)` by Berkowitz's division-free
/// algorithm.
pub fn char_poly<R: RingOps + ?Sized>(r: &R, m: &Matrix) -> Poly {
    let n = m.len();
    // coefficients high to low during the recursion
    let mut c: Vec<Elem> = vec![r.one()];
    for k in 0..n {
        // leading principal (k+1) x (k+1) block: a = m[k][k], row R, column C, A
        let a = &m[k][k];
        let col: Vec<Elem> = (0..k).map(|i| m[i][k].clone()).collect();
        let row: Vec<Elem> = (0..k).map(|j| m[k][j].clone()).collect();
        // Toeplitz entries: 1, -a, -R C, -R A C, ..., -R A^(k-1) C
        let mut t = vec![r.one(), r.neg(a)];
        let mut v = col.clone();
        for _ in 0..k {
            let dotp = row
                .iter()
                .zip(&v)
                .fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)));
            t.push(r.neg(&dotp));
            v = (0..k)
                .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&m[i][j], &v[j]))))
                .collect();
        }
        let mut next = vec![r.zero(); k + 2];
        for (i, out) in next.iter_mut().enumerate() {
            for j in 0..c.len() {
                if i >= j && i - j < t.len() {
                    *out = r.add(out, &r.mul(&t[i - j], &c[j]));
                }
            }
        }
        c = next;
    }
    c.reverse();
    c
}

pub fn determinant<R: RingOps + ?Sized>(r: &R, m: &Matrix) -> Elem {
    let cp = char_poly(r, m);
    if m.len() % 2 == 0 {
        cp[0].clone()
    } else {
        r.neg(&cp[0])
    }
}

/// Gauss-Jordan elimination choosing unit pivots. Returns the inverse, or
/// `None` if some column has no unit pivot.
fn unit_pivot_inverse<R: RingOps + ?Sized>(r: &R, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a = m.clone();
    let mut inv = mat_identity(r, n);
    for col in 0..n {
        let piv = (col..n).find(|&i| r.unit_inverse(&a[i][col]).is_some())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let u = r.unit_inverse(&a[col][col])?;
        for j in 0..n {
            a[col][j] = r.mul(&a[col][j], &u);
            inv[col][j] = r.mul(&inv[col][j], &u);
        }
        for i in 0..n {
            if i == col || r.is_zero(&a[i][col]) {
                continue;
            }
            let f = a[i][col].clone();
            for j in 0..n {
                let x = r.mul(&f, &a[col][j]);
                a[i][j] = r.sub(&a[i][j], &x);
                let y = r.mul(&f, &inv[col][j]);
                inv[i][j] = r.sub(&inv[i][j], &y);
            }
        }
    }
    Some(inv)
}

/// Inverse of a matrix with unit determinant.
pub fn invert<R: RingOps + ?Sized>(r: &R, m: &Matrix) -> Result<Matrix> {
    unit_pivot_inverse(r, m).ok_or_else(|| Error::NotInvertible {
        det_valuation: r.valuation(&determinant(r, m)),
    })
}

/// Solves `A x = b` for square `A` with unit determinant.
pub(crate) fn solve_unit<R: RingOps + ?Sized>(r: &R, a: &Matrix, b: &[Elem]) -> Option<Vec<Elem>> {
    let inv = unit_pivot_inverse(r, a)?;
    Some(
        inv.iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .fold(r.zero(), |acc, (x, y)| r.add(&acc, &r.mul(x, y)))
            })
            .collect(),
    )
}

/// Rank of a matrix over a field.
pub fn rank_over_field<R: RingOps + ?Sized>(f: &R, m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| !f.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(rank, piv);
        let u = f.unit_inverse(&a[rank][col]).expect("field");
        for i in rank + 1..rows {
            if f.is_zero(&a[i][col]) {
                continue;
            }
            let factor = f.mul(&a[i][col], &u);
            for j in col..cols {
                let x = f.mul(&factor, &a[rank][j]);
                a[i][j] = f.sub(&a[i][j], &x);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over the fraction field by elimination with pivots of minimal
/// valuation, which is exact modulo `pi^N`. The rank is certified when
/// every pivot has valuation at most `N - 2`. A pivot closer to the
/// precision is accepted only if nothing remains after it; otherwise
/// further nonzero entries could be hidden below the precision and
/// `PrecisionExhausted` is raised.
pub fn generic_rank(ring: &Ring, m: &Matrix) -> Result<(usize, bool)> {
    let n_prec = ring.precision();
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut certified = true;
    while rank < rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in rank..rows {
            for j in rank..cols {
                let v = ring.valuation(&a[i][j]);
                if v < n_prec && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        if v + RANK_GUARD > n_prec {
            certified = false;
        }
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        let unit = ring.divide_by_uniformizer(&a[rank][rank], v);
        let uinv = ring
            .unit_inverse(&unit)
            .expect("pivot divided by its valuation is a unit");
        for i in rank + 1..rows {
            if ring.is_zero(&a[i][rank]) {
                continue;
            }
            let factor = ring.mul(&ring.divide_by_uniformizer(&a[i][rank], v), &uinv);
            for j in rank..cols {
                let x = ring.mul(&factor, &a[rank][j]);
                a[i][j] = ring.sub(&a[i][j], &x);
            }
        }
        rank += 1;
    }
    if !certified && rank < rows.min(cols) {
        return Err(Error::PrecisionExhausted(format!(
            "rank decision within {RANK_GUARD} digits of precision {n_prec}"
        )));
    }
    Ok((rank, certified))
}

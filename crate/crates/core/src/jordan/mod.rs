//! Jordan decompositions of matrices over a truncated DVR whose special
//! fiber decomposition is the classical one, together with centralizer
//! dimension diagnostics on the two fibers.
//!
//! The semisimple part is `t = p(g)` for a polynomial `p` with `p(0) = 0`
//! and `p = sigma(a_i)` modulo the Hensel factor of the characteristic
//! polynomial belonging to the residue eigenvalue `a_i`, where `sigma` is
//! the multiplicative section of the ring.

mod ordinary;

pub use ordinary::{is_ordinary, OrdinaryReport, TorusElement, ValueGroup};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dvr::poly::{poly_eval, poly_from_roots, Poly};
use crate::dvr::{
    char_poly, crt_interpolate, determinant, element_to_json, generic_rank, hensel_factor, invert,
    mat_identity, mat_mul, mat_poly_eval, mat_sub, matrix_to_json, rank_over_field, Elem,
    HenselFactor, Matrix, ResidueField, Ring, RingOps,
};
use crate::error::{Error, Result};

/// Per residue eigenvalue: the eigenvalue, its multiplicity and the value
/// of the section on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub residue_eigenvalue: Elem,
    pub multiplicity: usize,
    pub section_value: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanPair {
    pub t: Matrix,
    pub u: Matrix,
    pub interpolant: Poly,
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveJordanPair {
    pub x_ss: Matrix,
    pub x_n: Matrix,
    pub interpolant: Poly,
    pub blocks: Vec<Block>,
}

fn check_square(m: &Matrix) -> Result<usize> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: row.len(),
        });
    }
    Ok(n)
}

pub fn reduce_matrix(ring: &Ring, m: &Matrix) -> Matrix {
    m.iter()
        .map(|row| row.iter().map(|x| ring.residue(x)).collect())
        .collect()
}

/// Kernel of a matrix over a field, as a list of basis vectors.
pub fn nullspace_field(f: &ResidueField, m: &Matrix) -> Vec<Vec<Elem>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, piv);
        let inv = f.unit_inverse(&a[r][c]).expect("field");
        for j in 0..cols {
            a[r][j] = f.mul(&a[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                for j in 0..cols {
                    let x = f.mul(&factor, &a[r][j]);
                    a[i][j] = f.sub(&a[i][j], &x);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![f.zero(); cols];
            v[free] = f.one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[k][free]);
            }
            v
        })
        .collect()
}

fn residue_eigenvalues(f: &ResidueField, m: &Matrix) -> Result<Vec<(Elem, usize)>> {
    // reuse the Hensel root search at precision one
    let ring = Ring::new(crate::dvr::RingKind::Equal, f.clone(), 1)?;
    let cp = char_poly(f, m);
    let factors = hensel_factor(&ring, &cp)?;
    Ok(factors
        .into_iter()
        .map(|h| (h.residue_root, h.multiplicity))
        .collect())
}

/// Classical multiplicative Jordan decomposition over a finite field from
/// the generalized eigenspaces.
pub fn field_jordan(f: &ResidueField, m: &Matrix) -> Result<(Matrix, Matrix)> {
    let n = check_square(m)?;
    if f.is_zero(&determinant(f, m)) {
        return Err(Error::Singular);
    }
    let eigen = residue_eigenvalues(f, m)?;
    let mut basis: Vec<Vec<Elem>> = Vec::with_capacity(n);
    let mut diag: Vec<Elem> = Vec::with_capacity(n);
    for (a, _) in &eigen {
        let shifted: Matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            f.sub(&m[i][j], a)
                        } else {
                            m[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut power = mat_identity(f, n);
        for _ in 0..n {
            power = mat_mul(f, &power, &shifted);
        }
        for v in nullspace_field(f, &power) {
            basis.push(v);
            diag.push(a.clone());
        }
    }
    // columns of b are the eigenvector basis
    let b: Matrix = (0..n)
        .map(|i| (0..n).map(|k| basis[k][i].clone()).collect())
        .collect();
    let b_inv = invert(f, &b)?;
    let mut d = mat_identity(f, n);
    for (k, a) in diag.iter().enumerate() {
        d[k][k] = a.clone();
    }
    let t = mat_mul(f, &mat_mul(f, &b, &d), &b_inv);
    let u = mat_mul(f, &invert(f, &t)?, m);
    Ok((t, u))
}

fn blocks_of(ring: &Ring, factors: &[HenselFactor]) -> Vec<Block> {
    factors
        .iter()
        .map(|h| Block {
            residue_eigenvalue: h.residue_root.clone(),
            multiplicity: h.multiplicity,
            section_value: ring.section(&h.residue_root),
        })
        .collect()
}

/// Multiplicative decomposition `g = t u` with `t = p(g)`.
pub fn relative_jordan(ring: &Ring, g: &Matrix) -> Result<JordanPair> {
    check_square(g)?;
    if ring.valuation(&determinant(ring, g)) > 0 {
        return Err(Error::Singular);
    }
    let factors = hensel_factor(ring, &char_poly(ring, g))?;
    let blocks = blocks_of(ring, &factors);
    let mut moduli = vec![vec![ring.zero(), ring.one()]];
    let mut targets = vec![ring.zero()];
    for (h, b) in factors.iter().zip(&blocks) {
        moduli.push(h.poly.clone());
        targets.push(b.section_value.clone());
    }
    let interpolant = crt_interpolate(ring, &moduli, &targets)?;
    let t = mat_poly_eval(ring, &interpolant, g);
    let u = mat_mul(ring, &invert(ring, &t)?, g);
    Ok(JordanPair {
        t,
        u,
        interpolant,
        blocks,
    })
}

/// Additive decomposition `x = x_ss + x_n` with `x_ss = p(x)`. The residue
/// eigenvalue `0`, if present, has section value `0`, which is what makes
/// `p(0) = 0` without a separate modulus `X`.
pub fn additive_relative_jordan(ring: &Ring, x: &Matrix) -> Result<AdditiveJordanPair> {
    let n = check_square(x)?;
    let factors = hensel_factor(ring, &char_poly(ring, x))?;
    let blocks = blocks_of(ring, &factors);
    let moduli: Vec<Poly> = factors.iter().map(|h| h.poly.clone()).collect();
    let targets: Vec<Elem> = blocks.iter().map(|b| b.section_value.clone()).collect();
    let interpolant = crt_interpolate(ring, &moduli, &targets)?;
    let x_ss = if n == 0 {
        vec![]
    } else {
        mat_poly_eval(ring, &interpolant, x)
    };
    let x_n = mat_sub(ring, x, &x_ss);
    Ok(AdditiveJordanPair {
        x_ss,
        x_n,
        interpolant,
        blocks,
    })
}

/// Matrix of `Y -> M Y - Y M` on `n x n` matrices, with `Y` flattened
/// row by row.
pub fn commutator_operator<R: RingOps + ?Sized>(r: &R, m: &Matrix) -> Matrix {
    let n = m.len();
    let mut a = vec![vec![r.zero(); n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                a[row][k * n + j] = r.add(&a[row][k * n + j], &m[i][k]);
                a[row][i * n + k] = r.sub(&a[row][i * n + k], &m[k][j]);
            }
        }
    }
    a
}

/// Dimension of the centralizer of `m` in `gl_n` over a field.
pub fn centralizer_dim(f: &ResidueField, m: &Matrix) -> usize {
    let n = m.len();
    n * n - rank_over_field(f, &commutator_operator(f, m))
}

/// Centralizer dimension on the generic fiber, with the certification flag
/// of the underlying rank computation.
pub fn generic_centralizer_dim(ring: &Ring, m: &Matrix) -> Result<(usize, bool)> {
    let n = m.len();
    let (rank, certified) = generic_rank(ring, &commutator_operator(ring, m))?;
    Ok((n * n - rank, certified))
}

/// Centralizer dimension of the semisimple part of `g` on the generic
/// fiber. It equals the sum of squared multiplicities of the generic
/// eigenvalues, which is the multiplicity of `0` as a root of the
/// characteristic polynomial of the commutator operator.
pub fn generic_semisimple_centralizer_dim(ring: &Ring, g: &Matrix) -> Result<usize> {
    let cp = char_poly(ring, &commutator_operator(ring, g));
    let (k, c) = cp
        .iter()
        .enumerate()
        .find(|(_, c)| !ring.is_zero(c))
        .expect("monic characteristic polynomial");
    if ring.valuation(c) + 2 > ring.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "coefficient of X^{k} in the commutator characteristic polynomial is too close to the precision"
        )));
    }
    Ok(k)
}

/// Pairs `(i, j)`, `i < j`, of eigenvalue positions (listed block by block
/// with multiplicity) whose values agree under `same`.
fn coincidence_pattern<F: Fn(&Block, &Block) -> bool>(
    blocks: &[Block],
    same: F,
) -> Vec<(usize, usize)> {
    let owners: Vec<&Block> = blocks
        .iter()
        .flat_map(|b| std::iter::repeat_n(b, b.multiplicity))
        .collect();
    let mut out = Vec::new();
    for i in 0..owners.len() {
        for j in i + 1..owners.len() {
            if same(owners[i], owners[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDims {
    pub special: usize,
    pub generic: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingPattern {
    pub special: Vec<(usize, usize)>,
    pub generic: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberReport {
    pub dims: FiberDims,
    pub ss_dims: FiberDims,
    pub pure: bool,
    pub pure_ss_part: bool,
    /// Equal to `pure`: every element of `GL_n` is ordinary.
    pub strongly_pure: bool,
    pub generic_rank_certified: bool,
    pub root_vanishing_pattern: VanishingPattern,
    pub jordan: JordanPair,
}

/// Centralizer dimensions of `g` and of its semisimple part on the special
/// and generic fibers.
pub fn purity_report(ring: &Ring, g: &Matrix) -> Result<FiberReport> {
    let n = check_square(g)?;
    let field = ring.residue_field();
    let jordan = relative_jordan(ring, g)?;
    let special = centralizer_dim(field, &reduce_matrix(ring, g));
    let (generic, generic_rank_certified) = generic_centralizer_dim(ring, g)?;
    let ss_special = centralizer_dim(field, &reduce_matrix(ring, &jordan.t));
    let ss_generic = generic_semisimple_centralizer_dim(ring, g)?;
    // the generic semisimple part commutes with everything commuting with
    // g, and the generic t is a polynomial in it
    let block_bound: usize = jordan
        .blocks
        .iter()
        .map(|b| b.multiplicity * b.multiplicity)
        .sum();
    if ss_generic < generic
        || ss_generic > block_bound
        || special < generic
        || n == 0 && special != 0
    {
        return Err(Error::PrecisionExhausted(format!(
            "inconsistent generic dimensions (centralizer {generic}, semisimple part {ss_generic})"
        )));
    }
    let root_vanishing_pattern = VanishingPattern {
        special: coincidence_pattern(&jordan.blocks, |a, b| {
            a.residue_eigenvalue == b.residue_eigenvalue
        }),
        generic: coincidence_pattern(&jordan.blocks, |a, b| a.section_value == b.section_value),
    };
    let pure = special == generic;
    Ok(FiberReport {
        dims: FiberDims { special, generic },
        ss_dims: FiberDims {
            special: ss_special,
            generic: ss_generic,
        },
        pure,
        pure_ss_part: ss_special == ss_generic,
        strongly_pure: pure,
        generic_rank_certified,
        root_vanishing_pattern,
        jordan,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumIndices {
    /// `(d, e)`: centralizer dimensions of the element and of its
    /// semisimple part.
    pub special: (usize, usize),
    pub generic: (usize, usize),
    pub d_agrees: bool,
    pub e_agrees: bool,
}

pub fn stratum_indices(ring: &Ring, g: &Matrix) -> Result<StratumIndices> {
    let r = purity_report(ring, g)?;
    Ok(StratumIndices {
        special: (r.dims.special, r.ss_dims.special),
        generic: (r.dims.generic, r.ss_dims.generic),
        d_agrees: r.pure,
        e_agrees: r.pure_ss_part,
    })
}

/// A polynomial `q` with `q(0) = 0` and `q(c) = sigma(a_i)` at every
/// generic eigenvalue `c` with residue `a_i`, when the eigenvalues lie in
/// the ring and the interpolation problem has unit pivots. `None` means the
/// construction does not apply at this precision.
pub fn eigenvalue_interpolant(ring: &Ring, g: &Matrix, pair: &JordanPair) -> Option<Poly> {
    const SEARCH_LIMIT: u64 = 200_000;
    let q = ring.residue_field().order()?;
    let per_residue = q.checked_pow(ring.precision() as u32 - 1)?;
    if per_residue > SEARCH_LIMIT {
        return None;
    }
    let cp = char_poly(ring, g);
    let mut moduli = vec![vec![ring.zero(), ring.one()]];
    let mut targets = vec![ring.zero()];
    let mut found = 0;
    for b in &pair.blocks {
        let base = ring.lift(&b.residue_eigenvalue);
        let mut roots: Vec<Elem> = Vec::new();
        for k in 0..per_residue {
            // base + pi * (element with digit code k)
            let c = ring.add(
                &base,
                &ring.mul(&ring.uniformizer(), &digits_element(ring, k)),
            );
            if ring.is_zero(&poly_eval(ring, &cp, &c)) && !roots.contains(&c) {
                roots.push(c);
            }
        }
        if roots.is_empty() {
            return None;
        }
        found += roots.len();
        for c in roots {
            moduli.push(poly_from_roots(ring, &[c]));
            targets.push(b.section_value.clone());
        }
    }
    if found == 0 {
        return None;
    }
    crt_interpolate(ring, &moduli, &targets).ok()
}

/// Element whose coefficients in the basis `pi^k t^j` are the base-`p`
/// digits of `code`, for `k < N - 1`.
fn digits_element(ring: &Ring, mut code: u64) -> Elem {
    let field = ring.residue_field();
    let q = field.order().expect("small field");
    let mut out = ring.zero();
    for k in 0..ring.precision().saturating_sub(1) {
        let digit = field.element_from_code(code % q);
        code /= q;
        out = ring.add(
            &out,
            &ring.mul(&ring.lift(&digit), &ring.uniformizer_power(k)),
        );
    }
    out
}

/// Residues over a prime field as integers, otherwise as coefficient
/// vectors in the field generator.
fn residue_json(ring: &Ring, a: &Elem) -> Value {
    if ring.degree() == 1 {
        json!(a[0])
    } else {
        json!(a)
    }
}

fn blocks_json(ring: &Ring, blocks: &[Block]) -> Value {
    Value::Array(
        blocks
            .iter()
            .map(|b| {
                json!({
                    "residue_eigenvalue": residue_json(ring, &b.residue_eigenvalue),
                    "multiplicity": b.multiplicity,
                    "section_value": element_to_json(ring, &b.section_value),
                })
            })
            .collect(),
    )
}

fn poly_json(ring: &Ring, p: &Poly) -> Value {
    Value::Array(p.iter().map(|c| element_to_json(ring, c)).collect())
}

impl JordanPair {
    pub fn to_json(&self, ring: &Ring) -> Value {
        json!({
            "ring": ring.to_string(),
            "t": matrix_to_json(ring, &self.t),
            "u": matrix_to_json(ring, &self.u),
            "interpolant": poly_json(ring, &self.interpolant),
            "blocks": blocks_json(ring, &self.blocks),
        })
    }
}

impl AdditiveJordanPair {
    pub fn to_json(&self, ring: &Ring) -> Value {
        json!({
            "ring": ring.to_string(),
            "x_ss": matrix_to_json(ring, &self.x_ss),
            "x_n": matrix_to_json(ring, &self.x_n),
            "interpolant": poly_json(ring, &self.interpolant),
            "blocks": blocks_json(ring, &self.blocks),
        })
    }
}

impl FiberReport {
    pub fn to_json(&self, ring: &Ring) -> Value {
        json!({
            "pure": self.pure,
            "pure_ss_part": self.pure_ss_part,
            "strongly_pure": self.strongly_pure,
            "dims": self.dims,
            "ss_dims": self.ss_dims,
            "generic_rank_certified": self.generic_rank_certified,
            "root_vanishing_pattern": self.root_vanishing_pattern,
            "interpolant": poly_json(ring, &self.jordan.interpolant),
            "blocks": blocks_json(ring, &self.jordan.blocks),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(r: &Ring, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|row| row.iter().map(|&x| r.from_int(x)).collect())
            .collect()
    }

    fn fm(f: &ResidueField, rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|row| row.iter().map(|&x| f.from_int(x)).collect())
            .collect()
    }

    #[test]
    fn field_jordan_examples() {
        let f = ResidueField::prime(5).unwrap();
        let m = fm(&f, &[&[1, 1], &[0, 1]]);
        assert_eq!(
            field_jordan(&f, &m).unwrap(),
            (mat_identity(&f, 2), m.clone())
        );
        let d = fm(&f, &[&[2, 0], &[0, 3]]);
        assert_eq!(
            field_jordan(&f, &d).unwrap(),
            (d.clone(), mat_identity(&f, 2))
        );
        let s = fm(&f, &[&[1, 1], &[0, 2]]);
        assert_eq!(
            field_jordan(&f, &s).unwrap(),
            (s.clone(), mat_identity(&f, 2))
        );
        assert_eq!(
            field_jordan(&f, &fm(&f, &[&[0, 1], &[0, 0]])).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn relative_jordan_examples() {
        let r = Ring::witt(5, 1, 3).unwrap();
        let pair = relative_jordan(&r, &im(&r, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(pair.t, im(&r, &[&[57, 0], &[0, 68]]));
        assert_eq!(r.residue(&pair.u[0][0]), vec![1]);
        let g = im(&r, &[&[1, 1], &[0, 6]]);
        let pair = relative_jordan(&r, &g).unwrap();
        assert_eq!(pair.t, mat_identity(&r, 2));
        assert_eq!(pair.u, g);
        assert!(r.is_zero(&pair.interpolant[0]));
    }

    #[test]
    fn additive_examples() {
        let r = Ring::witt(5, 1, 3).unwrap();
        let pair = additive_relative_jordan(&r, &im(&r, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(
            reduce_matrix(&r, &pair.x_ss),
            reduce_matrix(&r, &im(&r, &[&[2, 0], &[0, 3]]))
        );
        assert!(pair.x_n.iter().flatten().all(|x| r.valuation(x) >= 1));
        let e12 = im(&r, &[&[0, 1], &[0, 0]]);
        let pair = additive_relative_jordan(&r, &e12).unwrap();
        assert!(pair.x_ss.iter().flatten().all(|x| r.is_zero(x)));
        assert_eq!(pair.x_n, e12);
        let r2 = Ring::witt(5, 1, 2).unwrap();
        let x = im(&r2, &[&[0, 1], &[0, 5]]);
        let pair = additive_relative_jordan(&r2, &x).unwrap();
        assert!(pair.x_ss.iter().flatten().all(|v| r2.is_zero(v)));
        assert_eq!(pair.x_n, x);
    }

    #[test]
    fn centralizer_dims() {
        let f = ResidueField::prime(7).unwrap();
        assert_eq!(centralizer_dim(&f, &mat_identity(&f, 2)), 4);
        assert_eq!(centralizer_dim(&f, &fm(&f, &[&[0, 1], &[0, 0]])), 2);
        assert_eq!(
            centralizer_dim(&f, &fm(&f, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])),
            5
        );
    }

    #[test]
    fn purity_example() {
        let r = Ring::witt(5, 1, 4).unwrap();
        let rep = purity_report(&r, &im(&r, &[&[1, 1], &[0, 6]])).unwrap();
        assert_eq!(
            rep.dims,
            FiberDims {
                special: 2,
                generic: 2
            }
        );
        assert_eq!(
            rep.ss_dims,
            FiberDims {
                special: 4,
                generic: 2
            }
        );
        assert!(rep.pure && !rep.pure_ss_part);
        let s = stratum_indices(&r, &im(&r, &[&[1, 1], &[0, 6]])).unwrap();
        assert_eq!(
            (s.special, s.generic, s.d_agrees, s.e_agrees),
            ((2, 4), (2, 2), true, false)
        );
        let t = purity_report(&r, &im(&r, &[&[57, 0], &[0, 68]])).unwrap();
        assert_eq!(
            (t.dims.special, t.dims.generic, t.pure, t.pure_ss_part),
            (2, 2, true, true)
        );
        let i = stratum_indices(&r, &mat_identity(&r, 2)).unwrap();
        assert_eq!((i.special, i.generic), ((4, 4), (4, 4)));
        let d = stratum_indices(&r, &im(&r, &[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!((d.special, d.generic), ((2, 2), (2, 2)));
    }

    #[test]
    fn eigenvalue_interpolant_cases() {
        let r = Ring::witt(5, 1, 3).unwrap();
        let g = im(&r, &[&[2, 0], &[0, 3]]);
        let pair = relative_jordan(&r, &g).unwrap();
        let q = eigenvalue_interpolant(&r, &g, &pair).unwrap();
        assert_eq!(poly_eval(&r, &q, &r.from_int(2)), r.from_int(57));
        let g = im(&r, &[&[1, 1], &[0, 6]]);
        let pair = relative_jordan(&r, &g).unwrap();
        assert!(eigenvalue_interpolant(&r, &g, &pair).is_none());
    }
}

//! Random samples and independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use reductive::dvr::{
    determinant, mat_add, mat_identity, mat_mul, mat_scale, Elem, Matrix, ResidueField, Ring,
    RingKind, RingOps,
};
use reductive::lattice::quotient_torsion_primes;
use reductive::rootdata::{RootDatum, RootSystem};

pub fn residue_order(ring: &Ring) -> u64 {
    ring.characteristic_p().pow(ring.degree() as u32)
}

pub fn random_elem(ring: &Ring, rng: &mut ChaCha8Rng) -> Elem {
    let len = match ring.kind() {
        RingKind::Mixed => ring.degree(),
        RingKind::Equal => ring.degree() * ring.precision(),
    };
    let raw: Vec<i64> = (0..len).map(|_| rng.gen_range(0..1_000_000)).collect();
    ring.element(&raw).unwrap()
}

pub fn random_matrix(ring: &Ring, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    (0..n)
        .map(|_| (0..n).map(|_| random_elem(ring, rng)).collect())
        .collect()
}

/// `B U B^-1 + pi E` with `U` upper triangular. The diagonal residues are
/// drawn from a small random set of codes, so eigenvalue multiplicities
/// occur; code 0 is allowed only when `allow_zero` is set.
pub fn random_split_matrix(
    ring: &Ring,
    n: usize,
    allow_zero: bool,
    rng: &mut ChaCha8Rng,
) -> Matrix {
    let q = residue_order(ring);
    let lo = u64::from(!allow_zero);
    let distinct = rng.gen_range(1..=n);
    let codes: Vec<u64> = (0..distinct).map(|_| rng.gen_range(lo..q)).collect();
    let pi = ring.uniformizer();
    let mut u = random_matrix(ring, n, rng);
    for i in 0..n {
        for j in 0..i {
            u[i][j] = ring.zero();
        }
        let c = codes[rng.gen_range(0..distinct)];
        u[i][i] = ring.add(
            &ring.section_of_code(c),
            &ring.mul(&pi, &random_elem(ring, rng)),
        );
    }
    let b = loop {
        let b = random_matrix(ring, n, rng);
        if ring.valuation(&determinant(ring, &b)) == 0 {
            break b;
        }
    };
    let b_inv = reductive::dvr::invert(ring, &b).unwrap();
    let mut g = mat_mul(ring, &mat_mul(ring, &b, &u), &b_inv);
    if rng.gen_bool(0.5) {
        let e = random_matrix(ring, n, rng);
        g = mat_add(ring, &g, &mat_scale(ring, &e, &pi));
    }
    g
}

pub fn mat_pow<R: RingOps + ?Sized>(r: &R, m: &Matrix, mut exp: u128) -> Matrix {
    let mut acc = mat_identity(r, m.len());
    let mut base = m.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mat_mul(r, &acc, &base);
        }
        base = mat_mul(r, &base, &base);
        exp >>= 1;
    }
    acc
}

/// Semisimple part over a finite field when the spectrum is split: the
/// `q^k`-th power for the least `q^k >= n` kills the nilpotent (or
/// unipotent) part and fixes the diagonalizable part. Works for both the
/// additive and the multiplicative decomposition.
pub fn frobenius_semisimple_part(f: &ResidueField, m: &Matrix) -> Matrix {
    let q = f.order().unwrap() as u128;
    let mut e = q;
    while e < m.len() as u128 {
        e *= q;
    }
    mat_pow(f, m, e)
}

pub fn commutes<R: RingOps + ?Sized>(r: &R, a: &Matrix, b: &Matrix) -> bool {
    mat_mul(r, a, b) == mat_mul(r, b, a)
}

/// Rank of an integer matrix modulo a prime, by plain elimination.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = (1..p).find(|x| x * m[rank][c] % p == 1).unwrap();
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Dimensions of the centralizer of the nilpotent with the given Jordan
/// chains inside the whole of `gl_n`, inside the `tau`-weight-0 part and
/// inside the positive-weight part, over `F_p`. Each is the kernel of
/// `Y -> XY - YX` restricted to matrix units of the given weights.
pub fn centralizer_oracle(
    n: usize,
    chains: &[Vec<usize>],
    tau: &[i64],
    p: i64,
) -> (usize, usize, usize) {
    let mut x = vec![vec![0i64; n]; n];
    for c in chains {
        for w in c.windows(2) {
            x[w[0]][w[1]] = 1;
        }
    }
    let kernel = |keep: &dyn Fn(i64) -> bool| -> usize {
        let units: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| keep(tau[i] - tau[j]))
            .collect();
        // column per unit E_ij: entries of X E_ij - E_ij X
        let mut rows = vec![vec![0i64; units.len()]; n * n];
        for (col, &(i, j)) in units.iter().enumerate() {
            for a in 0..n {
                rows[a * n + j][col] += x[a][i];
                rows[i * n + a][col] -= x[j][a];
            }
        }
        units.len() - rank_mod_p(&rows, p)
    };
    (kernel(&|_| true), kernel(&|w| w == 0), kernel(&|w| w > 0))
}

/// Closed subsystems by brute force over subsets of positive roots, using
/// coordinate arithmetic only.
pub fn brute_force_closed(rs: &RootSystem) -> Vec<Vec<Vec<i64>>> {
    let roots: HashSet<Vec<i64>> = rs.roots().iter().cloned().collect();
    let pos: Vec<Vec<i64>> = rs.roots()[..rs.num_positive()].to_vec();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pos.len()) {
        let mut members: Vec<Vec<i64>> = Vec::new();
        for (i, r) in pos.iter().enumerate() {
            if mask & (1 << i) != 0 {
                members.push(r.clone());
                members.push(r.iter().map(|c| -c).collect());
            }
        }
        let lookup: HashSet<&Vec<i64>> = members.iter().collect();
        let closed = members.iter().all(|a| {
            members.iter().all(|b| {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                !roots.contains(&s) || lookup.contains(&s)
            })
        });
        if closed {
            out.push(members);
        }
    }
    out
}

/// Torsion primes of the quotient of the lattice spanned by all roots by the
/// span of the given members, using every member as a generator.
pub fn oracle_primes(rs: &RootSystem, coroot_side: bool) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for members in brute_force_closed(rs) {
        let rows: Vec<Vec<i64>> = members
            .iter()
            .map(|m| {
                let a = rs.root_index(m).unwrap();
                if coroot_side {
                    rs.coroot(a)
                } else {
                    m.clone()
                }
            })
            .collect();
        out.extend(quotient_torsion_primes(rs.rank(), &rows).unwrap());
    }
    out
}

/// Primes failing pretty goodness by brute force: torsion of `X / Z Phi'`
/// or `Y / Z Phi'^vee` over every closed `Phi'`.
pub fn oracle_pretty_good_excluded(rd: &RootDatum) -> BTreeSet<u64> {
    let rs = rd.system();
    let m = rd.char_lattice_rank();
    let mut out = BTreeSet::new();
    for members in brute_force_closed(rs) {
        let idx: Vec<usize> = members.iter().map(|r| rs.root_index(r).unwrap()).collect();
        let xs: Vec<Vec<i64>> = idx.iter().map(|&a| rd.roots_in_x()[a].clone()).collect();
        let ys: Vec<Vec<i64>> = idx.iter().map(|&a| rd.coroots_in_y()[a].clone()).collect();
        out.extend(quotient_torsion_primes(m, &xs).unwrap());
        out.extend(quotient_torsion_primes(m, &ys).unwrap());
    }
    out
}

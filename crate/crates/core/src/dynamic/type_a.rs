//! Nilpotent orbits of `gl_n` through partitions: weighted cocharacters,
//! the associated-cocharacter test and the centralizer decomposition
//! `Z(X) = (Z(X) cap Z(tau)) x Z_U(X)` checked on dimensions.

use serde::{Deserialize, Serialize};

use crate::dvr::{rank_over_field, ResidueField, RingOps};
use crate::error::{Error, Result};
use crate::jordan::commutator_operator;

/// All partitions of `n`, parts in decreasing order, listed in reverse
/// lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n` by the generating-function recurrence.
pub fn partition_count(n: usize) -> u64 {
    let mut table = vec![0u64; n + 1];
    table[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            table[m] += table[m - part];
        }
    }
    table[n]
}

pub fn conjugate_partition(partition: &[usize]) -> Vec<usize> {
    let largest = partition.iter().copied().max().unwrap_or(0);
    (1..=largest)
        .map(|k| partition.iter().filter(|&&p| p >= k).count())
        .collect()
}

fn check_partition(partition: &[usize]) -> Result<usize> {
    if partition.contains(&0) {
        return Err(Error::InvalidInput(
            "partition parts must be positive".into(),
        ));
    }
    Ok(partition.iter().sum())
}

/// Weights of the cocharacter attached to the partition: for each part `m`
/// the values `m-1, m-3, ..., 1-m`, sorted in decreasing order.
pub fn weighted_cocharacter(partition: &[usize]) -> Result<Vec<i64>> {
    check_partition(partition)?;
    let mut w: Vec<i64> = partition.iter().flat_map(|&m| chain_weights(m)).collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    Ok(w)
}

fn chain_weights(m: usize) -> impl Iterator<Item = i64> {
    let m = m as i64;
    (0..m).map(move |k| m - 1 - 2 * k)
}

/// Jordan chains of the standard nilpotent: consecutive coordinates, one
/// chain per part.
pub fn standard_chains(partition: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    partition
        .iter()
        .map(|&m| {
            let chain: Vec<usize> = (start..start + m).collect();
            start += m;
            chain
        })
        .collect()
}

/// The nilpotent sending `e_{c[k+1]}` to `e_{c[k]}` along each chain `c`.
pub fn nilpotent_matrix(n: usize, chains: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for chain in chains {
        for pair in chain.windows(2) {
            m[pair[0]][pair[1]] = 1;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedReport {
    /// `Ad(tau(t)) X = t^2 X`.
    pub weight2: bool,
    /// `tau` lies in the derived group of the Levi cut out by the chains.
    pub derived_levi: bool,
    /// `X` is regular in every block of that Levi.
    pub distinguished_in_levi: bool,
    pub associated: bool,
    pub chains: Vec<Vec<usize>>,
}

fn check_chains(n: usize, chains: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in chains.iter().flatten() {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidInput(
                "chains must partition the coordinates".into(),
            ));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidInput(
            "chains must cover every coordinate".into(),
        ));
    }
    Ok(())
}

/// Test for a diagonal cocharacter `tau` of `GL_n` (given by its exponents)
/// against the nilpotent with the given Jordan chains.
pub fn is_associated_to_chains(tau: &[i64], chains: &[Vec<usize>]) -> Result<AssociatedReport> {
    let n = tau.len();
    check_chains(n, chains)?;
    let x = nilpotent_matrix(n, chains);
    let mut weight2 = true;
    for i in 0..n {
        for j in 0..n {
            if x[i][j] != 0 && tau[i] - tau[j] != 2 {
                weight2 = false;
            }
        }
    }
    let derived_levi = chains
        .iter()
        .all(|c| c.iter().map(|&i| tau[i]).sum::<i64>() == 0);
    // a nilpotent on a block is regular when its rank is one less than the
    // block size; the chain matrix has one nonzero entry per row and column
    let distinguished_in_levi = chains.iter().all(|c| {
        let rank = c
            .iter()
            .filter(|&&i| c.iter().any(|&j| x[i][j] != 0))
            .count();
        rank + 1 == c.len()
    });
    Ok(AssociatedReport {
        weight2,
        derived_levi,
        distinguished_in_levi,
        associated: weight2 && derived_levi && distinguished_in_levi,
        chains: chains.to_vec(),
    })
}

const PLACEMENT_LIMIT: usize = 8;

/// Test against a nilpotent of the given Jordan type, searching over the
/// placements of its chains on the coordinates (the nilpotents of this type
/// that are permutation conjugates of the standard one). The reported
/// placement is the best found, preferring associated over weight-2.
pub fn is_associated(tau: &[i64], partition: &[usize]) -> Result<AssociatedReport> {
    let n = check_partition(partition)?;
    if n != tau.len() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: tau.len(),
        });
    }
    if n > PLACEMENT_LIMIT {
        return Err(Error::InvalidInput(format!(
            "placement search is limited to n <= {PLACEMENT_LIMIT}"
        )));
    }
    let score = |r: &AssociatedReport| (r.associated, r.weight2, r.derived_levi);
    let mut best = is_associated_to_chains(tau, &standard_chains(partition))?;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if best.associated {
            break;
        }
        let mut start = 0;
        let chains: Vec<Vec<usize>> = partition
            .iter()
            .map(|&m| {
                let c = perm[start..start + m].to_vec();
                start += m;
                c
            })
            .collect();
        let r = is_associated_to_chains(tau, &chains)?;
        if score(&r) > score(&best) {
            best = r;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `tau` normalizes the line through `X` with character `t -> t^2`.
pub fn normalizer_weight_check(tau: &[i64], chains: &[Vec<usize>]) -> Result<bool> {
    Ok(is_associated_to_chains(tau, chains)?.weight2)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectCheck {
    pub dim_z: usize,
    pub dim_l_x: usize,
    pub dim_r_x: usize,
    /// Kernel dimensions of `ad X` on each weight space of `tau`, over
    /// `F_p`, keyed by weight.
    pub kernel_by_weight: Vec<(i64, usize)>,
    pub identity_holds: bool,
}

/// Dimensions of `Z(X)`, of its reductive part `Z(X) cap Z(tau)` and of its
/// unipotent part `Z_U(X)` for the standard nilpotent of the partition and
/// its weighted cocharacter, from the partition formulas, cross-checked
/// against kernels of `ad X` on weight spaces over `F_p`.
pub fn semidirect_dimension_check(partition: &[usize], p: u64) -> Result<SemidirectCheck> {
    let n = check_partition(partition)?;
    let field = ResidueField::prime(p)?;
    let dim_z: usize = conjugate_partition(partition).iter().map(|c| c * c).sum();
    let mut multiplicities = std::collections::BTreeMap::new();
    for &m in partition {
        *multiplicities.entry(m).or_insert(0usize) += 1;
    }
    let dim_l_x: usize = multiplicities.values().map(|m| m * m).sum();
    let dim_r_x = dim_z - dim_l_x;

    let chains = standard_chains(partition);
    let mut tau = vec![0i64; n];
    for c in &chains {
        for (&i, w) in c.iter().zip(chain_weights(c.len())) {
            tau[i] = w;
        }
    }
    let x: Vec<Vec<_>> = nilpotent_matrix(n, &chains)
        .iter()
        .map(|row| row.iter().map(|&v| field.from_int(v)).collect())
        .collect();
    let ad = commutator_operator(&field, &x);
    let mut by_weight: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    for i in 0..n {
        for j in 0..n {
            by_weight
                .entry(tau[i] - tau[j])
                .or_default()
                .push(i * n + j);
        }
    }
    let kernel_by_weight: Vec<(i64, usize)> = by_weight
        .iter()
        .map(|(&k, cols)| {
            let sub: Vec<Vec<_>> = ad
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect();
            (k, cols.len() - rank_over_field(&field, &sub))
        })
        .collect();
    let ker = |pred: &dyn Fn(i64) -> bool| -> usize {
        kernel_by_weight
            .iter()
            .filter(|(k, _)| pred(*k))
            .map(|(_, d)| d)
            .sum()
    };
    let identity_holds = ker(&|_| true) == dim_z
        && ker(&|k| k == 0) == dim_l_x
        && ker(&|k| k > 0) == dim_r_x
        && ker(&|k| k < 0) == 0;
    Ok(SemidirectCheck {
        dim_z,
        dim_l_x,
        dim_r_x,
        kernel_by_weight,
        identity_holds,
    })
}

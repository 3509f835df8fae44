//! Distinguished parabolics and the Bala-Carter parametrization of
//! nilpotent orbits by pairs (Levi, distinguished parabolic of the Levi).
//!
//! A pair `(J, S0)` of simple-root subsets, `S0 ⊆ J`, stands for the Levi
//! with simple roots `J` and its standard parabolic whose Levi has simple
//! roots `S0`. The attached cocharacter is `2 * sum of fundamental coweights
//! of J outside S0`; conjugating it to the dominant chamber of the ambient
//! system gives the weighted Dynkin diagram of the orbit, which separates
//! orbits.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootdata::{RootSet, RootSystem};

/// How the subgroup `U^1` of the unipotent radical is read: generated by
/// the root groups of roots that are sums of two unipotent roots (`Carter`),
/// or of roots that are not (`Literal`). A parabolic is distinguished when
/// `dim L = dim U/U^1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Carter,
    Literal,
}

impl FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "carter" => Ok(Convention::Carter),
            "literal" => Ok(Convention::Literal),
            _ => Err(Error::InvalidInput(format!(
                "unknown convention {s:?}; use carter or literal"
            ))),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Carter => "carter",
            Convention::Literal => "literal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishedReport {
    /// `|Phi_0| + rank` of the Levi of the parabolic.
    pub levi_dim: usize,
    pub unipotent_dim: usize,
    pub weight2_dim: usize,
    /// Unipotent roots that are not sums of two unipotent roots.
    pub indecomposable: usize,
    pub decomposable: usize,
    pub distinguished: bool,
}

fn root_weight(rs: &RootSystem, a: usize, outside: &[usize]) -> i64 {
    2 * outside.iter().map(|&i| rs.roots()[a][i]).sum::<i64>()
}

fn check_simple_subset(rs: &RootSystem, subset: &[usize]) -> Result<()> {
    if let Some(&i) = subset.iter().find(|&&i| i >= rs.rank()) {
        return Err(Error::InvalidInput(format!(
            "simple root index {i} out of range"
        )));
    }
    Ok(())
}

/// Distinguishedness of the parabolic with Levi simple roots `s0` inside
/// the Levi subsystem with simple roots `levi` (positions among the simple
/// roots of `rs`).
pub fn parabolic_analysis(
    rs: &RootSystem,
    levi: &[usize],
    s0: &[usize],
    convention: Convention,
) -> Result<DistinguishedReport> {
    check_simple_subset(rs, levi)?;
    if !s0.iter().all(|i| levi.contains(i)) {
        return Err(Error::InvalidInput(
            "S0 must be contained in the Levi simple roots".into(),
        ));
    }
    let outside: Vec<usize> = levi.iter().copied().filter(|i| !s0.contains(i)).collect();
    let in_levi = |a: usize| (0..rs.rank()).all(|i| rs.roots()[a][i] == 0 || levi.contains(&i));
    let roots: Vec<usize> = (0..rs.num_roots()).filter(|&a| in_levi(a)).collect();
    let phi0 = roots
        .iter()
        .filter(|&&a| root_weight(rs, a, &outside) == 0)
        .count();
    let unipotent: RootSet = roots
        .iter()
        .copied()
        .filter(|&a| root_weight(rs, a, &outside) > 0)
        .collect();
    let weight2_dim = unipotent
        .iter()
        .filter(|&a| root_weight(rs, a, &outside) == 2)
        .count();
    let decomposable = unipotent
        .iter()
        .filter(|&a| {
            unipotent.iter().any(|b| {
                rs.sum(a, rs.negative(b))
                    .is_some_and(|c| unipotent.contains(c))
            })
        })
        .count();
    let indecomposable = unipotent.len() - decomposable;
    let levi_dim = phi0 + levi.len();
    let target = match convention {
        Convention::Carter => indecomposable,
        Convention::Literal => decomposable,
    };
    Ok(DistinguishedReport {
        levi_dim,
        unipotent_dim: unipotent.len(),
        weight2_dim,
        indecomposable,
        decomposable,
        distinguished: levi_dim == target,
    })
}

/// The standard parabolic of `rs` whose Levi has simple roots `s0`.
pub fn is_distinguished_parabolic(
    rs: &RootSystem,
    s0: &[usize],
    convention: Convention,
) -> Result<bool> {
    let all: Vec<usize> = (0..rs.rank()).collect();
    Ok(parabolic_analysis(rs, &all, s0, convention)?.distinguished)
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &i)| i)
                .collect()
        })
        .collect()
}

fn simple_set(rs: &RootSystem, simple: &[usize]) -> RootSet {
    let gens: Vec<usize> = simple.iter().map(|&i| rs.simple_index(i)).collect();
    rs.generated_subsystem(&gens)
}

/// Representatives of the Weyl classes of standard Levi subsystems, as
/// simple-root subsets.
pub fn levi_classes(rs: &RootSystem) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..rs.rank()).collect();
    let mut reps: Vec<(Vec<usize>, RootSet)> = Vec::new();
    for j in subsets(&all) {
        let set = simple_set(rs, &j);
        if !reps.iter().any(|(_, s)| rs.are_conjugate(s, &set)) {
            reps.push((j, set));
        }
    }
    reps.into_iter().map(|(j, _)| j).collect()
}

type Q = Ratio<i64>;

/// Solves `a x = b` over the rationals for a nonsingular square `a`.
fn solve_rational(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Vec<Q> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != Q::from(0))
            .expect("Cartan matrices are nonsingular");
        a.swap(col, piv);
        b.swap(col, piv);
        for r in 0..n {
            if r != col && a[r][col] != Q::from(0) {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    let x = a[col][c];
                    a[r][c] -= f * x;
                }
                let y = b[col];
                b[r] -= f * y;
            }
        }
    }
    (0..n).map(|i| b[i] / a[i][i]).collect()
}

/// Weighted Dynkin diagram (pairings with the simple roots, made dominant)
/// of the cocharacter attached to `(levi, s0)`.
pub fn dominant_diagram(rs: &RootSystem, levi: &[usize], s0: &[usize]) -> Result<Vec<i64>> {
    let cartan = rs.cartan_matrix();
    let a: Vec<Vec<Q>> = levi
        .iter()
        .map(|&k| levi.iter().map(|&j| Q::from(cartan[k][j])).collect())
        .collect();
    let b: Vec<Q> = levi
        .iter()
        .map(|k| Q::from(if s0.contains(k) { 0 } else { 2 }))
        .collect();
    let c = solve_rational(a, b);
    let mut v: Vec<Q> = (0..rs.rank())
        .map(|i| {
            levi.iter()
                .zip(&c)
                .map(|(&j, &cj)| cj * Q::from(cartan[i][j]))
                .sum()
        })
        .collect();
    while let Some(i) = (0..rs.rank()).find(|&i| v[i] < Q::from(0)) {
        let vi = v[i];
        for (j, vj) in v.iter_mut().enumerate() {
            *vj -= Q::from(cartan[j][i]) * vi;
        }
    }
    v.iter()
        .map(|q| {
            q.is_integer()
                .then(|| q.to_integer())
                .ok_or_else(|| Error::InvalidInput("cocharacter has non-integral weights".into()))
        })
        .collect()
}

/// `dim G - dim G_0 - dim G_1` for the grading by a weighted diagram, which
/// is the orbit dimension when the diagram comes from an `sl_2`-triple.
pub fn orbit_dim(rs: &RootSystem, diagram: &[i64]) -> usize {
    let low = (0..rs.num_roots())
        .filter(|&a| {
            let w: i64 = (0..rs.rank()).map(|i| rs.roots()[a][i] * diagram[i]).sum();
            w == 0 || w == 1
        })
        .count();
    rs.num_roots() - low
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalaCarterDatum {
    pub levi: Vec<usize>,
    pub levi_label: String,
    pub distinguished_parabolic: Vec<usize>,
    pub parabolic_label: String,
    pub weighted_diagram: Vec<i64>,
    pub orbit_dim: usize,
}

impl BalaCarterDatum {
    pub fn to_json(&self) -> Value {
        json!({
            "levi": self.levi_label,
            "levi_simple_roots": self.levi,
            "dist_parabolic": self.parabolic_label,
            "parabolic_levi_simple_roots": self.distinguished_parabolic,
            "weighted_diagram": self.weighted_diagram,
            "orbit_dim": self.orbit_dim,
        })
    }
}

fn label_of(rs: &RootSystem, simple: &[usize]) -> String {
    let label = rs.subsystem_shape(&simple_set(rs, simple)).label();
    if label == "0" {
        "T".to_string()
    } else {
        label
    }
}

const BALA_CARTER_RANK_BOUND: usize = 8;

/// One datum per nilpotent orbit: Levi classes, then distinguished
/// parabolics of each Levi, with pairs identified when their weighted
/// diagrams agree. Sorted by orbit dimension.
pub fn enumerate_bala_carter(
    rs: &RootSystem,
    convention: Convention,
) -> Result<Vec<BalaCarterDatum>> {
    if rs.rank() > BALA_CARTER_RANK_BOUND {
        return Err(Error::RankBoundExceeded {
            rank: rs.rank(),
            bound: BALA_CARTER_RANK_BOUND,
            mode: "Bala-Carter enumeration",
        });
    }
    let mut out: Vec<BalaCarterDatum> = Vec::new();
    for levi in levi_classes(rs) {
        for s0 in subsets(&levi) {
            if !parabolic_analysis(rs, &levi, &s0, convention)?.distinguished {
                continue;
            }
            let diagram = dominant_diagram(rs, &levi, &s0)?;
            if out.iter().any(|d| d.weighted_diagram == diagram) {
                continue;
            }
            out.push(BalaCarterDatum {
                levi_label: label_of(rs, &levi),
                levi: levi.clone(),
                parabolic_label: if s0.is_empty() {
                    "Borel".to_string()
                } else {
                    format!("P({})", label_of(rs, &s0))
                },
                orbit_dim: orbit_dim(rs, &diagram),
                weighted_diagram: diagram,
                distinguished_parabolic: s0,
            });
        }
    }
    out.sort_by(|a, b| (a.orbit_dim, &a.levi_label).cmp(&(b.orbit_dim, &b.levi_label)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_root_system;

    fn system(t: &str) -> RootSystem {
        build_root_system(&t.parse().unwrap()).unwrap()
    }

    #[test]
    fn borels_are_distinguished() {
        for t in ["A1", "A3", "B2", "C3", "G2", "D4", "F4", "A1xB2"] {
            let rs = system(t);
            assert!(
                is_distinguished_parabolic(&rs, &[], Convention::Carter).unwrap(),
                "{t}"
            );
        }
        assert!(!is_distinguished_parabolic(&system("A1"), &[], Convention::Literal).unwrap());
    }

    #[test]
    fn type_a_has_only_borel() {
        let rs = system("A3");
        for s0 in subsets(&[0, 1, 2]).into_iter().skip(1) {
            assert!(!is_distinguished_parabolic(&rs, &s0, Convention::Carter).unwrap());
        }
    }

    #[test]
    fn g2_parabolics() {
        let rs = system("G2");
        let count = subsets(&[0, 1])
            .iter()
            .filter(|s0| is_distinguished_parabolic(&rs, s0, Convention::Carter).unwrap())
            .count();
        assert_eq!(count, 2);
    }

    #[test]
    fn orbit_counts() {
        for (t, n) in [
            ("A1", 2),
            ("A2", 3),
            ("A3", 5),
            ("B2", 4),
            ("G2", 5),
            ("B3", 7),
            ("C3", 8),
            ("D4", 12),
        ] {
            let data = enumerate_bala_carter(&system(t), Convention::Carter).unwrap();
            assert_eq!(data.len(), n, "{t}");
            for d in &data {
                assert!(
                    d.weighted_diagram.iter().all(|&x| (0..=2).contains(&x)),
                    "{t} {d:?}"
                );
            }
        }
    }

    #[test]
    fn g2_orbit_dimensions() {
        let data = enumerate_bala_carter(&system("G2"), Convention::Carter).unwrap();
        let dims: Vec<usize> = data.iter().map(|d| d.orbit_dim).collect();
        assert_eq!(dims, vec![0, 6, 8, 10, 12]);
        assert_eq!(data[4].weighted_diagram, vec![2, 2]);
    }
}

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{build_root_system, CartanType, Family, RootSystem, WeylGroup};
use crate::error::{Error, Result};
use crate::lattice::{coordinates_in_basis, quotient_invariants, row_lattice_basis};

/// How the character lattice sits relative to the root and weight lattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    GlStyle,
    /// Simple roots and simple coroots given explicitly in coordinates of a
    /// basis of X and of the dual basis of Y.
    Custom {
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
    },
}

impl Isogeny {
    pub fn name(&self) -> &'static str {
        match self {
            Isogeny::SimplyConnected => "simply_connected",
            Isogeny::Adjoint => "adjoint",
            Isogeny::GlStyle => "gl_style",
            Isogeny::Custom { .. } => "custom",
        }
    }
}

/// A root datum `(X, Phi, Y, Phi^vee)` with `X = Z^m` and `Y` its dual.
#[derive(Debug, Clone)]
pub struct RootDatum {
    system: Arc<RootSystem>,
    isogeny: Isogeny,
    simple_x: Vec<Vec<i64>>,
    simple_y: Vec<Vec<i64>>,
    roots_x: Vec<Vec<i64>>,
    coroots_y: Vec<Vec<i64>>,
    char_rank: usize,
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, rank X = {})",
            self.system.cartan_type(),
            self.isogeny.name(),
            self.char_rank
        )
    }
}

/// Invariants of the fundamental group and the center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupInvariants {
    pub pi1_torsion_primes: BTreeSet<u64>,
    pub center_torsion_primes: BTreeSet<u64>,
    pub pi1_order: u64,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    pub fn new(system: Arc<RootSystem>, isogeny: Isogeny) -> Result<Self> {
        let r = system.rank();
        let cartan = system.cartan_matrix().to_vec();
        let (simple_x, simple_y, m) = match &isogeny {
            Isogeny::SimplyConnected => {
                let id: Vec<Vec<i64>> = (0..r)
                    .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                    .collect();
                (cartan.clone(), id, r)
            }
            Isogeny::Adjoint => {
                let id: Vec<Vec<i64>> = (0..r)
                    .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                    .collect();
                let ct: Vec<Vec<i64>> = (0..r)
                    .map(|i| (0..r).map(|j| cartan[j][i]).collect())
                    .collect();
                (id, ct, r)
            }
            Isogeny::GlStyle => {
                let t = system.cartan_type();
                let ok = matches!(t.components(), [(Family::A, _)]) || t.components().is_empty();
                if !ok {
                    return Err(Error::UnsupportedIsogeny {
                        label: "gl_style".into(),
                        cartan_type: t.to_string(),
                    });
                }
                let n = r + 1;
                let rows: Vec<Vec<i64>> = (0..r)
                    .map(|i| {
                        let mut v = vec![0i64; n];
                        v[i] = 1;
                        v[i + 1] = -1;
                        v
                    })
                    .collect();
                (rows.clone(), rows, n)
            }
            Isogeny::Custom {
                simple_roots,
                simple_coroots,
            } => {
                if simple_roots.len() != r || simple_coroots.len() != r {
                    return Err(Error::DimensionMismatch {
                        expected: r,
                        found: simple_roots.len().max(simple_coroots.len()),
                    });
                }
                let m = simple_roots.first().map_or(0, |v| v.len());
                if simple_roots
                    .iter()
                    .chain(simple_coroots)
                    .any(|v| v.len() != m)
                {
                    return Err(Error::InvalidDatum("ragged embedding matrix".into()));
                }
                (simple_roots.clone(), simple_coroots.clone(), m)
            }
        };
        Self::from_matrices(system, isogeny, simple_x, simple_y, m)
    }

    fn from_matrices(
        system: Arc<RootSystem>,
        isogeny: Isogeny,
        simple_x: Vec<Vec<i64>>,
        simple_y: Vec<Vec<i64>>,
        m: usize,
    ) -> Result<Self> {
        let r = system.rank();
        let cartan = system.cartan_matrix();
        for i in 0..r {
            for j in 0..r {
                if dot(&simple_x[i], &simple_y[j]) != cartan[i][j] {
                    return Err(Error::InvalidDatum(format!(
                        "pairing of simple root {i} with simple coroot {j} is not the Cartan integer {}",
                        cartan[i][j]
                    )));
                }
            }
        }
        let combine = |coeffs: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
            let mut v = vec![0i64; m];
            for (c, b) in coeffs.iter().zip(basis) {
                for k in 0..m {
                    v[k] += c * b[k];
                }
            }
            v
        };
        let roots_x: Vec<Vec<i64>> = system
            .roots()
            .iter()
            .map(|c| combine(c, &simple_x))
            .collect();
        let coroots_y: Vec<Vec<i64>> = (0..system.num_roots())
            .map(|a| combine(&system.coroot(a), &simple_y))
            .collect();
        Ok(RootDatum {
            system,
            isogeny,
            simple_x,
            simple_y,
            roots_x,
            coroots_y,
            char_rank: m,
        })
    }

    /// Convenience constructor from a Cartan type string such as `"B2"`.
    pub fn from_type(t: &str, isogeny: Isogeny) -> Result<Self> {
        let ct: CartanType = t.parse()?;
        Self::new(Arc::new(build_root_system(&ct)?), isogeny)
    }

    /// `GL_n` with `X = Z^n`.
    pub fn gl(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("GL_0 is not supported".into()));
        }
        let ct = if n == 1 {
            CartanType::new(vec![])?
        } else {
            CartanType::irreducible(Family::A, n - 1)?
        };
        Self::new(Arc::new(build_root_system(&ct)?), Isogeny::GlStyle)
    }

    /// A split torus of the given rank.
    pub fn torus(rank: usize) -> Result<Self> {
        let rs = Arc::new(build_root_system(&CartanType::new(vec![])?)?);
        Self::from_matrices(
            rs,
            Isogeny::Custom {
                simple_roots: vec![],
                simple_coroots: vec![],
            },
            vec![],
            vec![],
            rank,
        )
    }

    /// Datum whose character lattice is generated by the roots, the
    /// `extra` vectors and `denominator * e_l` in the rational space spanned
    /// by fundamental weights and `torus_rank` extra coordinates measured in
    /// units of `1 / denominator`. Extra vectors have `rank + torus_rank`
    /// entries; their first `rank` entries are weight coordinates.
    pub fn intermediate(
        system: Arc<RootSystem>,
        extra: &[Vec<i64>],
        torus_rank: usize,
        denominator: i64,
    ) -> Result<Self> {
        let r = system.rank();
        let width = r + torus_rank;
        if denominator <= 0 {
            return Err(Error::InvalidInput("denominator must be positive".into()));
        }
        if let Some(v) = extra.iter().find(|v| v.len() != width) {
            return Err(Error::DimensionMismatch {
                expected: width,
                found: v.len(),
            });
        }
        let cartan = system.cartan_matrix();
        let root_rows: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut v = cartan[i].clone();
                v.resize(width, 0);
                v
            })
            .collect();
        let mut generators = root_rows.clone();
        for l in 0..torus_rank {
            let mut v = vec![0i64; width];
            v[r + l] = denominator;
            generators.push(v);
        }
        generators.extend(extra.iter().cloned());
        let basis = row_lattice_basis(width, &generators)?;
        if basis.rows() != width {
            return Err(Error::InvalidDatum(
                "character lattice is not of full rank".into(),
            ));
        }
        let to_i64 = |x: &BigInt| {
            x.to_i64()
                .ok_or_else(|| Error::InvalidDatum("coordinates overflow".into()))
        };
        let mut simple_x = Vec::with_capacity(r);
        for row in &root_rows {
            let target: Vec<BigInt> = row.iter().map(|&c| BigInt::from(c)).collect();
            let coords = coordinates_in_basis(&basis, &target)
                .ok_or_else(|| Error::InvalidDatum("root outside lattice".into()))?;
            simple_x.push(coords.iter().map(to_i64).collect::<Result<Vec<_>>>()?);
        }
        let mut simple_y = vec![vec![0i64; width]; r];
        for (j, row) in simple_y.iter_mut().enumerate() {
            for (l, entry) in row.iter_mut().enumerate() {
                *entry = to_i64(&basis[(l, j)])?;
            }
        }
        let isogeny = Isogeny::Custom {
            simple_roots: simple_x.clone(),
            simple_coroots: simple_y.clone(),
        };
        Self::from_matrices(system, isogeny, simple_x, simple_y, width)
    }

    /// Same datum in a different basis of X: `unimodular` (an invertible
    /// integer matrix) maps old coordinates to new ones by `x -> x U`.
    pub fn change_basis(&self, unimodular: &[Vec<i64>], inverse: &[Vec<i64>]) -> Result<Self> {
        let m = self.char_rank;
        let mul = |v: &[i64], mat: &[Vec<i64>]| -> Vec<i64> {
            (0..m)
                .map(|k| (0..m).map(|l| v[l] * mat[l][k]).sum())
                .collect()
        };
        // Y coordinates transform by the inverse transpose.
        let inv_t: Vec<Vec<i64>> = (0..m)
            .map(|i| (0..m).map(|j| inverse[j][i]).collect())
            .collect();
        let simple_x: Vec<Vec<i64>> = self.simple_x.iter().map(|v| mul(v, unimodular)).collect();
        let simple_y: Vec<Vec<i64>> = self.simple_y.iter().map(|v| mul(v, &inv_t)).collect();
        let isogeny = Isogeny::Custom {
            simple_roots: simple_x.clone(),
            simple_coroots: simple_y.clone(),
        };
        Self::from_matrices(self.system.clone(), isogeny, simple_x, simple_y, m)
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn system_arc(&self) -> Arc<RootSystem> {
        self.system.clone()
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    /// Rank of X.
    pub fn char_lattice_rank(&self) -> usize {
        self.char_rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.system.rank()
    }

    pub fn roots_in_x(&self) -> &[Vec<i64>] {
        &self.roots_x
    }

    pub fn coroots_in_y(&self) -> &[Vec<i64>] {
        &self.coroots_y
    }

    pub fn simple_roots_in_x(&self) -> &[Vec<i64>] {
        &self.simple_x
    }

    pub fn simple_coroots_in_y(&self) -> &[Vec<i64>] {
        &self.simple_y
    }

    /// The canonical pairing of X and Y.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        dot(x, y)
    }

    /// `<alpha_a, lambda>` for a cocharacter `lambda`.
    pub fn root_weight(&self, a: usize, lambda: &[i64]) -> i64 {
        dot(&self.roots_x[a], lambda)
    }

    /// Matrix of the reflection `s_a` on X acting on row vectors:
    /// `x -> x - <x, a^vee> a`.
    pub fn reflection_matrix(&self, a: usize) -> Vec<Vec<i64>> {
        let m = self.char_rank;
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| i64::from(i == j) - self.coroots_y[a][i] * self.roots_x[a][j])
                    .collect()
            })
            .collect()
    }

    pub fn weyl_group(&self) -> WeylGroup {
        let gens = (0..self.semisimple_rank())
            .map(|i| self.reflection_matrix(self.system.simple_index(i)))
            .collect();
        WeylGroup::new(self.char_rank, gens)
    }

    /// Torsion of Y/ZPhi^vee (fundamental group) and of X/ZPhi (dual of
    /// the center).
    pub fn pi1_and_center_invariants(&self) -> Result<GroupInvariants> {
        let m = self.char_rank;
        let y_quot = quotient_invariants(m, &self.simple_y)?;
        let x_quot = quotient_invariants(m, &self.simple_x)?;
        Ok(GroupInvariants {
            pi1_torsion_primes: y_quot.torsion_primes(),
            center_torsion_primes: x_quot.torsion_primes(),
            pi1_order: y_quot
                .torsion_order()
                .to_u64()
                .expect("small fundamental group"),
        })
    }
}

/// Builds the datum for a root system and isogeny label.
pub fn make_root_datum(rs: Arc<RootSystem>, label: Isogeny) -> Result<RootDatum> {
    RootDatum::new(rs, label)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> BTreeSet<u64> {
        v.iter().copied().collect()
    }

    #[test]
    fn sl2_pgl2_gl3_invariants() {
        let sl2 = RootDatum::from_type("A1", Isogeny::SimplyConnected).unwrap();
        let inv = sl2.pi1_and_center_invariants().unwrap();
        assert_eq!(
            (inv.pi1_order, inv.center_torsion_primes.clone()),
            (1, set(&[2]))
        );
        let pgl2 = RootDatum::from_type("A1", Isogeny::Adjoint).unwrap();
        let inv = pgl2.pi1_and_center_invariants().unwrap();
        assert_eq!(
            (inv.pi1_order, inv.center_torsion_primes.clone()),
            (2, set(&[]))
        );
        assert_eq!(inv.pi1_torsion_primes, set(&[2]));
        let gl3 = RootDatum::gl(3).unwrap();
        let inv = gl3.pi1_and_center_invariants().unwrap();
        assert_eq!((inv.pi1_order, inv.center_torsion_primes), (1, set(&[])));
    }

    #[test]
    fn gl_style_only_for_type_a() {
        let err = RootDatum::from_type("B2", Isogeny::GlStyle).unwrap_err();
        assert_eq!(err.kind(), "UnsupportedIsogeny");
    }

    #[test]
    fn root_coroot_pairing_is_two() {
        for t in ["B3", "G2", "C3", "A1xA2"] {
            for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
                let rd = RootDatum::from_type(t, iso).unwrap();
                for a in 0..rd.system().num_roots() {
                    assert_eq!(rd.pairing(&rd.roots_in_x()[a], &rd.coroots_in_y()[a]), 2);
                    for b in 0..rd.system().num_roots() {
                        assert_eq!(
                            rd.pairing(&rd.roots_in_x()[a], &rd.coroots_in_y()[b]),
                            rd.system().pairing(a, b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn custom_rejects_bad_pairing() {
        let iso = Isogeny::Custom {
            simple_roots: vec![vec![1]],
            simple_coroots: vec![vec![1]],
        };
        assert_eq!(
            RootDatum::from_type("A1", iso).unwrap_err().kind(),
            "InvalidDatum"
        );
    }

    #[test]
    fn intermediate_lattice_gl2() {
        // GL2: X generated by alpha = 2 w and e_1 = (w, 1/2)
        let rs = Arc::new(build_root_system(&"A1".parse().unwrap()).unwrap());
        let rd = RootDatum::intermediate(rs, &[vec![1, 1]], 1, 2).unwrap();
        let inv = rd.pi1_and_center_invariants().unwrap();
        assert_eq!(inv.pi1_order, 1);
        assert!(inv.center_torsion_primes.is_empty());
    }
}

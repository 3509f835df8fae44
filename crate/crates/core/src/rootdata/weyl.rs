use std::collections::HashSet;
use std::sync::OnceLock;

use super::{ClosedSubsystem, RootDatum};
use crate::error::{Error, Result};

/// Largest group the breadth-first closure will build.
pub const WEYL_ORBIT_CAP: usize = 1_000_000;

type Mat = Vec<Vec<i64>>;

/// A group generated by integer reflection matrices acting on row vectors
/// of X-coordinates.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    dim: usize,
    generators: Vec<Mat>,
    elements: OnceLock<std::result::Result<Vec<Mat>, Error>>,
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl WeylGroup {
    pub fn new(dim: usize, generators: Vec<Mat>) -> Self {
        WeylGroup {
            dim,
            generators,
            elements: OnceLock::new(),
        }
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All elements, built by breadth-first closure; fails past
    /// [`WEYL_ORBIT_CAP`].
    pub fn elements(&self) -> Result<&[Mat]> {
        self.elements
            .get_or_init(|| {
                let id = identity(self.dim);
                let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
                let mut all = vec![id];
                let mut k = 0;
                while k < all.len() {
                    for g in &self.generators {
                        let prod = mat_mul(&all[k], g);
                        if seen.insert(prod.clone()) {
                            all.push(prod);
                            if all.len() > WEYL_ORBIT_CAP {
                                return Err(Error::WeylOrbitCapExceeded {
                                    cap: WEYL_ORBIT_CAP,
                                });
                            }
                        }
                    }
                    k += 1;
                }
                Ok(all)
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }
}

/// The reflection subgroup `W(Sigma)` generated by reflections in the
/// positive roots of `sigma`.
pub fn weyl_stabilizer_and_subgroup(rd: &RootDatum, sigma: &ClosedSubsystem) -> WeylGroup {
    let rs = rd.system();
    let gens = sigma
        .member_roots()
        .into_iter()
        .filter(|&a| rs.is_positive(a))
        .map(|a| rd.reflection_matrix(a))
        .collect();
    WeylGroup::new(rd.char_lattice_rank(), gens)
}

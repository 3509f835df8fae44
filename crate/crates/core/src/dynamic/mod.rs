//! Cocharacters and the parabolics they define: weight spaces of the
//! adjoint action, the attached parabolic/Levi/unipotent root sets, the
//! type-A associated-cocharacter test and the Bala-Carter enumeration.

mod bala_carter;
mod type_a;

pub use bala_carter::{
    dominant_diagram, enumerate_bala_carter, is_distinguished_parabolic, levi_classes, orbit_dim,
    parabolic_analysis, BalaCarterDatum, Convention, DistinguishedReport,
};
pub use type_a::{
    conjugate_partition, is_associated, is_associated_to_chains, nilpotent_matrix,
    normalizer_weight_check, partition_count, partitions, semidirect_dimension_check,
    standard_chains, weighted_cocharacter, AssociatedReport, SemidirectCheck,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootdata::RootDatum;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightSpace {
    pub dim: usize,
    pub roots: Vec<usize>,
}

/// Weight spaces of `Ad(lambda)` on the Lie algebra. The Cartan part, of
/// dimension the rank of the character lattice, sits in weight `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightDecomposition {
    pub spaces: BTreeMap<i64, WeightSpace>,
    pub cartan_dim: usize,
}

impl WeightDecomposition {
    pub fn dim(&self, n: i64) -> usize {
        self.spaces.get(&n).map_or(0, |s| s.dim)
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(|s| s.dim).sum()
    }
}

fn check_cocharacter(rd: &RootDatum, lambda: &[i64]) -> Result<()> {
    if lambda.len() != rd.char_lattice_rank() {
        return Err(Error::DimensionMismatch {
            expected: rd.char_lattice_rank(),
            found: lambda.len(),
        });
    }
    Ok(())
}

pub fn weight_decomposition(rd: &RootDatum, lambda: &[i64]) -> Result<WeightDecomposition> {
    check_cocharacter(rd, lambda)?;
    let cartan_dim = rd.char_lattice_rank();
    let mut spaces: BTreeMap<i64, WeightSpace> = BTreeMap::new();
    spaces.insert(
        0,
        WeightSpace {
            dim: cartan_dim,
            roots: vec![],
        },
    );
    for a in 0..rd.system().num_roots() {
        let space = spaces
            .entry(rd.root_weight(a, lambda))
            .or_insert(WeightSpace {
                dim: 0,
                roots: vec![],
            });
        space.dim += 1;
        space.roots.push(a);
    }
    spaces.retain(|_, s| s.dim > 0);
    Ok(WeightDecomposition { spaces, cartan_dim })
}

/// Root sets of `P = P(lambda)`, its Levi `L = Z(lambda)` and unipotent
/// radical `U(lambda)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicData {
    pub phi_p: Vec<usize>,
    pub phi_l: Vec<usize>,
    pub phi_u: Vec<usize>,
}

pub fn dynamic_parabolic(rd: &RootDatum, lambda: &[i64]) -> Result<ParabolicData> {
    check_cocharacter(rd, lambda)?;
    let mut data = ParabolicData {
        phi_p: vec![],
        phi_l: vec![],
        phi_u: vec![],
    };
    for a in 0..rd.system().num_roots() {
        let w = rd.root_weight(a, lambda);
        if w >= 0 {
            data.phi_p.push(a);
        }
        if w == 0 {
            data.phi_l.push(a);
        }
        if w > 0 {
            data.phi_u.push(a);
        }
    }
    Ok(data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichardsonDimension {
    pub orbit_dim: usize,
    pub nilradical_dim: usize,
}

/// Dimension of the dense orbit of `P` on the Lie algebra of its unipotent
/// radical, whose elements have centralizer of dimension `dim L`.
pub fn richardson_dimension(parabolic: &ParabolicData) -> RichardsonDimension {
    let u = parabolic.phi_u.len();
    RichardsonDimension {
        orbit_dim: 2 * u,
        nilradical_dim: u,
    }
}

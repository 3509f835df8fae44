//! Bad, torsion and pretty good primes.
//!
//! All three sets are unions of torsion primes of lattice quotients indexed
//! by closed subsystems. Quotients by conjugate subsystems are isomorphic, so
//! one representative per Weyl orbit suffices. The prime `0` is always good
//! and never appears in an excluded set.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::quotient_torsion_primes;
use crate::rootdata::{enumerate_closed_subsystems, ClosedSubsystem, RootDatum, RootSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeClassification {
    pub bad: BTreeSet<u64>,
    pub torsion: BTreeSet<u64>,
    /// Primes that are not pretty good.
    pub pretty_good_excluded: BTreeSet<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationCheck {
    pub p: u64,
    pub is_pretty_good: bool,
    pub is_good: bool,
    pub divides_pi1: bool,
    pub center_nonsmooth: bool,
    pub equivalence_holds: bool,
}

fn union_over<F>(subsystems: &[ClosedSubsystem], mut quotient: F) -> Result<BTreeSet<u64>>
where
    F: FnMut(&ClosedSubsystem) -> Result<BTreeSet<u64>>,
{
    let mut out = BTreeSet::new();
    for s in subsystems {
        out.extend(quotient(s)?);
    }
    Ok(out)
}

/// Bad primes from an explicit list of closed subsystems.
pub fn bad_primes_from(rs: &RootSystem, subsystems: &[ClosedSubsystem]) -> Result<BTreeSet<u64>> {
    union_over(subsystems, |s| {
        let rows: Vec<Vec<i64>> = rs
            .subsystem_simple_roots(s.set())
            .into_iter()
            .map(|a| rs.roots()[a].clone())
            .collect();
        quotient_torsion_primes(rs.rank(), &rows)
    })
}

/// Torsion primes from an explicit list of closed subsystems.
pub fn torsion_primes_from(
    rs: &RootSystem,
    subsystems: &[ClosedSubsystem],
) -> Result<BTreeSet<u64>> {
    union_over(subsystems, |s| {
        let rows: Vec<Vec<i64>> = rs
            .subsystem_simple_roots(s.set())
            .into_iter()
            .map(|a| rs.coroot(a))
            .collect();
        quotient_torsion_primes(rs.rank(), &rows)
    })
}

/// Primes `p` such that `ZPhi / ZSigma` has `p`-torsion for some closed
/// subsystem `Sigma`.
pub fn bad_primes(rs: &RootSystem) -> Result<BTreeSet<u64>> {
    bad_primes_from(rs, &enumerate_closed_subsystems(rs, true)?)
}

/// Primes `p` such that `ZPhi^vee / ZSigma^vee` has `p`-torsion for some
/// closed subsystem `Sigma`.
pub fn torsion_primes(rs: &RootSystem) -> Result<BTreeSet<u64>> {
    torsion_primes_from(rs, &enumerate_closed_subsystems(rs, true)?)
}

/// Primes `p` such that `X / ZPhi'` or `Y / ZPhi'^vee` has `p`-torsion for
/// some closed subsystem `Phi'`.
pub fn pretty_good_excluded(rd: &RootDatum) -> Result<BTreeSet<u64>> {
    let rs = rd.system();
    let m = rd.char_lattice_rank();
    let reps = enumerate_closed_subsystems(rs, true)?;
    union_over(&reps, |s| {
        let simple = rs.subsystem_simple_roots(s.set());
        let xs: Vec<Vec<i64>> = simple.iter().map(|&a| rd.roots_in_x()[a].clone()).collect();
        let ys: Vec<Vec<i64>> = simple
            .iter()
            .map(|&a| rd.coroots_in_y()[a].clone())
            .collect();
        let mut out = quotient_torsion_primes(m, &xs)?;
        out.extend(quotient_torsion_primes(m, &ys)?);
        Ok(out)
    })
}

pub fn classify(rd: &RootDatum) -> Result<PrimeClassification> {
    Ok(PrimeClassification {
        bad: bad_primes(rd.system())?,
        torsion: torsion_primes(rd.system())?,
        pretty_good_excluded: pretty_good_excluded(rd)?,
    })
}

/// Compares pretty goodness of `p` with the conjunction "good, prime to the
/// fundamental group, and the center is smooth".
pub fn check_characterization(rd: &RootDatum, p: u64) -> Result<CharacterizationCheck> {
    let inv = rd.pi1_and_center_invariants()?;
    let is_good = p == 0 || !bad_primes(rd.system())?.contains(&p);
    let is_pretty_good = p == 0 || !pretty_good_excluded(rd)?.contains(&p);
    let divides_pi1 = p != 0 && inv.pi1_torsion_primes.contains(&p);
    let center_nonsmooth = p != 0 && inv.center_torsion_primes.contains(&p);
    Ok(CharacterizationCheck {
        p,
        is_pretty_good,
        is_good,
        divides_pi1,
        center_nonsmooth,
        equivalence_holds: is_pretty_good == (is_good && !divides_pi1 && !center_nonsmooth),
    })
}

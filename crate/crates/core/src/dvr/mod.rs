//! Truncated complete discrete valuation rings with finite residue field.
//!
//! Two kinds are supported: Witt vectors `W(F_q) / p^N`, realised as
//! `(Z/p^N)[t] / (f(t))` for a monic lift `f` of the residue field modulus,
//! and `F_q[[x]] / x^N`. Elements are plain coefficient vectors; every
//! operation takes the ring descriptor explicitly.

mod field;
mod hensel;
mod matrix;
pub mod poly;
mod ring;
mod serial;

pub use field::ResidueField;
pub use hensel::{crt_interpolate, hensel_factor, HenselFactor};
pub use matrix::{
    char_poly, determinant, generic_rank, invert, mat_add, mat_identity, mat_mul, mat_poly_eval,
    mat_scale, mat_sub, mat_zero, rank_over_field, Matrix,
};
pub use poly::Poly;
pub use serial::{
    element_from_json, element_to_json, element_to_string, matrix_from_json, matrix_to_json,
    matrix_to_string,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient vector of a ring or field element. Its layout is fixed by
/// the descriptor that produced it.
pub type Elem = Vec<u64>;

/// Commutative ring operations shared by residue fields and truncated DVRs.
pub trait RingOps {
    fn zero(&self) -> Elem;
    fn one(&self) -> Elem;
    fn from_int(&self, n: i64) -> Elem;
    fn add(&self, a: &Elem, b: &Elem) -> Elem;
    fn sub(&self, a: &Elem, b: &Elem) -> Elem;
    fn neg(&self, a: &Elem) -> Elem;
    fn mul(&self, a: &Elem, b: &Elem) -> Elem;
    fn is_zero(&self, a: &Elem) -> bool;
    /// Inverse of a unit; `None` for non-units.
    fn unit_inverse(&self, a: &Elem) -> Option<Elem>;
    /// Valuation, with [`precision`](Self::precision) standing for zero.
    fn valuation(&self, a: &Elem) -> usize;
    fn precision(&self) -> usize;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    /// `W(F_q) / p^N`
    Mixed,
    /// `F_q[[x]] / x^N`
    Equal,
}

/// Descriptor of a truncated DVR.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    kind: RingKind,
    field: ResidueField,
    precision: usize,
    /// `p^N` for the mixed kind, `p` for the equal kind.
    coeff_modulus: u64,
}

impl Ring {
    pub fn new(kind: RingKind, field: ResidueField, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidRing("precision must be at least 1".into()));
        }
        let p = field.characteristic();
        let coeff_modulus = match kind {
            RingKind::Mixed => p
                .checked_pow(precision as u32)
                .filter(|&m| m < (1u64 << 63))
                .ok_or_else(|| Error::InvalidRing(format!("{p}^{precision} exceeds 63 bits")))?,
            RingKind::Equal => p,
        };
        Ok(Ring {
            kind,
            field,
            precision,
            coeff_modulus,
        })
    }

    /// `W(F_{p^degree}) / p^precision`.
    pub fn witt(p: u64, degree: usize, precision: usize) -> Result<Self> {
        Self::new(RingKind::Mixed, ResidueField::new(p, degree)?, precision)
    }

    /// `F_{p^degree}[[x]] / x^precision`.
    pub fn power_series(p: u64, degree: usize, precision: usize) -> Result<Self> {
        Self::new(RingKind::Equal, ResidueField::new(p, degree)?, precision)
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.field
    }

    pub fn characteristic_p(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn modulus(&self) -> &[u64] {
        self.field.modulus()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.characteristic_p();
        match self.kind {
            RingKind::Mixed => write!(f, "Zq:p={p},deg={},prec={}", self.degree(), self.precision),
            RingKind::Equal => {
                if self.degree() == 1 {
                    write!(f, "Fq[[x]]:q={p},prec={}", self.precision)
                } else {
                    write!(f, "Fq[[x]]:q={p}^{},prec={}", self.degree(), self.precision)
                }
            }
        }
    }
}

fn parse_fields(s: &str) -> Result<Vec<(String, String)>> {
    s.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidRing(format!("expected key=value, found `{kv}`")))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn parse_num(v: &str) -> Result<u64> {
    v.parse()
        .map_err(|_| Error::InvalidRing(format!("bad number `{v}`")))
}

/// Prime power `q`, written either as an integer or as `p^k`.
fn parse_prime_power(v: &str) -> Result<(u64, usize)> {
    if let Some((p, k)) = v.split_once('^') {
        return Ok((parse_num(p)?, parse_num(k)? as usize));
    }
    let q = parse_num(v)?;
    let p = crate::lattice::prime_factors(&q.into())
        .first()
        .copied()
        .ok_or_else(|| Error::InvalidRing(format!("{q} is not a prime power")))?;
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::InvalidRing(format!("{q} is not a prime power")));
    }
    Ok((p, k))
}

impl FromStr for Ring {
    type Err = Error;

    /// Accepts `Zq:p=<prime>,deg=<d>,prec=<N>` and
    /// `Fq[[x]]:q=<prime power>,prec=<N>`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidRing(format!("cannot parse ring `{s}`")))?;
        let fields = parse_fields(rest)?;
        let get = |key: &str| {
            fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
        };
        let prec = parse_num(get("prec").ok_or_else(|| Error::InvalidRing("missing prec".into()))?)?
            as usize;
        match head.trim() {
            "Zq" => {
                let p = parse_num(get("p").ok_or_else(|| Error::InvalidRing("missing p".into()))?)?;
                let deg = get("deg").map(parse_num).transpose()?.unwrap_or(1) as usize;
                Ring::witt(p, deg, prec)
            }
            "Fq[[x]]" => {
                let (p, k) = parse_prime_power(
                    get("q").ok_or_else(|| Error::InvalidRing("missing q".into()))?,
                )?;
                Ring::power_series(p, k, prec)
            }
            other => Err(Error::InvalidRing(format!("unknown ring family `{other}`"))),
        }
    }
}

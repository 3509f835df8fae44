use thiserror::Error;

/// Errors raised by the library. Every variant carries a stable kind name
/// (see [`Error::kind`]) that the command line surfaces verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("isogeny label {label} is not available for {cartan_type}")]
    UnsupportedIsogeny { label: String, cartan_type: String },

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("rank {rank} exceeds the bound {bound} for {mode}")]
    RankBoundExceeded {
        rank: usize,
        bound: usize,
        mode: &'static str,
    },

    #[error("Weyl orbit exceeded the cap of {cap} elements")]
    WeylOrbitCapExceeded { cap: usize },

    #[error(
        "residue polynomial does not split; extension of degree {required_extension_degree} needed"
    )]
    ResidueNotSplit { required_extension_degree: usize },

    #[error("interpolation moduli are not pairwise coprime")]
    NonCoprimeModuli,

    #[error("matrix is not invertible (determinant valuation {det_valuation})")]
    NotInvertible { det_valuation: usize },

    #[error("matrix is singular on the special fiber")]
    Singular,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidRank { .. } => "InvalidRank",
            Error::UnsupportedIsogeny { .. } => "UnsupportedIsogeny",
            Error::InvalidDatum(_) => "InvalidDatum",
            Error::RankBoundExceeded { .. } => "RankBoundExceeded",
            Error::WeylOrbitCapExceeded { .. } => "WeylOrbitCapExceeded",
            Error::ResidueNotSplit { .. } => "ResidueNotSplit",
            Error::NonCoprimeModuli => "NonCoprimeModuli",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::Singular => "Singular",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::InvalidRing(_) => "InvalidRing",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

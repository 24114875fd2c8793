use std::path::PathBuf;

use spectral_core::heat::HeatError;
use spectral_core::lattice::LatticeError;
use spectral_core::polygeom::GeomError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const INVARIANT: u8 = 2;
    pub const NEGATIVE: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("internal invariant failed: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Invariant(_) => exit::INVARIANT,
            _ => exit::INPUT,
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Overflow(_) | LatticeError::GeneratingSetFailure { .. } => {
                Self::Invariant(e.to_string())
            }
            _ => Self::Input(e.to_string()),
        }
    }
}

impl From<HeatError> for CliError {
    fn from(e: HeatError) -> Self {
        match e {
            HeatError::Quadrature(_) | HeatError::ImaginaryResidual(_) => {
                Self::Invariant(e.to_string())
            }
            _ => Self::Input(e.to_string()),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        Self::Input(e.to_string())
    }
}

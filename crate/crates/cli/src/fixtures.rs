//! Built-in inputs, written out by `--emit`.

use clap::ValueEnum;
use serde_json::Value;
use spectral_core::lattice::{e16_basis, e8_basis, e8xe8_basis};
use spectral_core::polygeom::{inscribed_regular_ngon, CellComplex, Polygon};

use crate::error::CliError;
use crate::files::{complex_to_json, lattice_to_json, polygon_to_json};

/// Vertices used for the `disk` polygon.
const DISK_SIDES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    E8,
    E16,
    E8xe8,
    Square,
    Hexagon,
    Annulus,
    TwoHoles,
    Disk,
}

pub fn unit_square() -> Polygon {
    Polygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        .expect("unit square is a valid polygon")
}

pub fn emit(f: Fixture) -> Result<Value, CliError> {
    Ok(match f {
        Fixture::E8 => lattice_to_json(&e8_basis()),
        Fixture::E16 => lattice_to_json(&e16_basis()),
        Fixture::E8xe8 => lattice_to_json(&e8xe8_basis()),
        Fixture::Square => polygon_to_json(&unit_square()),
        Fixture::Hexagon => polygon_to_json(&inscribed_regular_ngon(6)?),
        Fixture::Disk => polygon_to_json(&inscribed_regular_ngon(DISK_SIDES)?),
        Fixture::Annulus => complex_to_json(&CellComplex::annulus()),
        Fixture::TwoHoles => complex_to_json(&CellComplex::two_holes()),
    })
}

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by std when it is linked
use num_traits::Float;

use super::hausdorff::hausdorff_distance_grid;
use super::{GeomError, Point, PointCloud, Polygon};

/// Regular `n`-gon inscribed in the unit circle, first vertex at `(1, 0)`.
pub fn inscribed_regular_ngon(n: usize) -> Result<Polygon, GeomError> {
    if n < 3 {
        return Err(GeomError::TooFewVertices(n));
    }
    Polygon::new(
        (0..n)
            .map(|i| {
                let (s, c) = (2.0 * PI * i as f64 / n as f64).sin_cos();
                [c, s]
            })
            .collect(),
    )
}

/// A `2^k`-gon inside the unit disk with all edges of length `1/k`.
///
/// Even-indexed vertices ("tips") lie on the unit circle, `2^{k-1}` of them
/// equally spaced. Between consecutive tips a notch vertex sits on the
/// inward perpendicular bisector of their chord, at the depth that makes
/// both of its edges `1/k` long.
#[derive(Debug, Clone, PartialEq)]
pub struct Staircase {
    pub k: u32,
    pub polygon: Polygon,
}

pub fn staircase_polygon(k: u32) -> Result<Staircase, GeomError> {
    if !(2..=24).contains(&k) {
        return Err(GeomError::InvalidParameter("staircase k must be in 2..=24"));
    }
    let tips = 1usize << (k - 1);
    let edge = 1.0 / k as f64;
    let half_angle = PI / tips as f64;
    let half_chord = half_angle.sin();
    if 2.0 * half_chord >= 2.0 * edge {
        return Err(GeomError::InfeasibleStaircase {
            k,
            chord: 2.0 * half_chord,
        });
    }
    let depth = (edge * edge - half_chord * half_chord).sqrt();
    let notch_radius = half_angle.cos() - depth;
    let mut vertices: Vec<Point> = Vec::with_capacity(2 * tips);
    for j in 0..tips {
        let a = 2.0 * half_angle * j as f64;
        let (s, c) = a.sin_cos();
        vertices.push([c, s]);
        let (s, c) = (a + half_angle).sin_cos();
        vertices.push([notch_radius * c, notch_radius * s]);
    }
    Ok(Staircase {
        k,
        polygon: Polygon::new(vertices)?,
    })
}

impl Staircase {
    /// Interior angles at the on-circle tips.
    pub fn tip_angles(&self) -> Result<Vec<f64>, GeomError> {
        Ok(self
            .polygon
            .interior_angles()?
            .into_iter()
            .step_by(2)
            .collect())
    }

    /// Interior angles at the notches; these are reflex.
    pub fn notch_angles(&self) -> Result<Vec<f64>, GeomError> {
        Ok(self
            .polygon
            .interior_angles()?
            .into_iter()
            .skip(1)
            .step_by(2)
            .collect())
    }

    pub fn max_tip_angle(&self) -> Result<f64, GeomError> {
        Ok(self.tip_angles()?.into_iter().fold(0.0, f64::max))
    }

    /// Hausdorff distance between samples of the polygon and of the closed
    /// unit disk, both at the given spacing.
    pub fn hausdorff_to_disk(&self, spacing: f64) -> Result<f64, GeomError> {
        let ours = self.polygon.sample(spacing)?;
        let disk = PointCloud::disk(1.0, spacing)?;
        Ok(hausdorff_distance_grid(&ours, &disk))
    }
}

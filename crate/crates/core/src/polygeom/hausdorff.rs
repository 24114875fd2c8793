use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by std when it is linked
use num_traits::Float;

use super::{GeomError, Point};

/// A finite, nonempty set of points in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Point>,
}

impl PointCloud {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        if points.is_empty() {
            return Err(GeomError::EmptyCloud);
        }
        if points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn translate(&self, v: Point) -> Self {
        Self {
            points: self
                .points
                .iter()
                .map(|p| [p[0] + v[0], p[1] + v[1]])
                .collect(),
        }
    }

    /// `n` equally spaced points on the circle of radius `r` about the origin.
    pub fn circle(r: f64, n: usize) -> Result<Self, GeomError> {
        if n == 0 {
            return Err(GeomError::EmptyCloud);
        }
        Self::new(
            (0..n)
                .map(|i| {
                    let (s, c) = (2.0 * PI * i as f64 / n as f64).sin_cos();
                    [r * c, r * s]
                })
                .collect(),
        )
    }

    /// The closed disk of radius `r`: grid points at the given spacing plus
    /// boundary points at most `spacing` apart.
    pub fn disk(r: f64, spacing: f64) -> Result<Self, GeomError> {
        if !(r > 0.0 && spacing > 0.0) {
            return Err(GeomError::InvalidParameter(
                "radius and spacing must be positive",
            ));
        }
        let n = (2.0 * PI * r / spacing).ceil() as usize;
        let mut points = Self::circle(r, n)?.points;
        let m = (r / spacing).floor() as i64;
        for i in -m..=m {
            for j in -m..=m {
                let p = [i as f64 * spacing, j as f64 * spacing];
                if p[0] * p[0] + p[1] * p[1] <= r * r {
                    points.push(p);
                }
            }
        }
        Self::new(points)
    }
}

fn dist2(a: Point, b: Point) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

/// `sup_{a∈A} inf_{b∈B} |a - b|` by a full scan.
pub fn directed_hausdorff(a: &PointCloud, b: &PointCloud) -> f64 {
    a.points
        .iter()
        .map(|p| {
            b.points
                .iter()
                .map(|q| dist2(*p, *q))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
        .sqrt()
}

/// Two-sided Hausdorff distance between finite clouds, by a quadratic scan.
pub fn hausdorff_distance(a: &PointCloud, b: &PointCloud) -> f64 {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Uniform bucket grid over a cloud, for exact nearest-neighbour queries.
struct Grid<'a> {
    points: &'a [Point],
    origin: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

impl<'a> Grid<'a> {
    fn new(cloud: &'a PointCloud) -> Self {
        let points = cloud.points();
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]);
        let per_side = (points.len() as f64).sqrt().ceil().max(1.0);
        let cell = if extent > 0.0 { extent / per_side } else { 1.0 };
        let nx = ((hi[0] - lo[0]) / cell).floor() as usize + 1;
        let ny = ((hi[1] - lo[1]) / cell).floor() as usize + 1;
        let mut buckets = alloc::vec![Vec::new(); nx * ny];
        for (i, p) in points.iter().enumerate() {
            let cx = (((p[0] - lo[0]) / cell).floor() as usize).min(nx - 1);
            let cy = (((p[1] - lo[1]) / cell).floor() as usize).min(ny - 1);
            buckets[cy * nx + cx].push(i as u32);
        }
        Self {
            points,
            origin: lo,
            cell,
            nx,
            ny,
            buckets,
        }
    }

    /// Cell of `p`, clamped to the grid. For a query outside the grid the
    /// ring distance bound below still holds from the clamped cell.
    fn cell_of(&self, p: Point) -> (i64, i64) {
        let clamp = |v: f64, n: usize| (v.floor().max(0.0) as i64).min(n as i64 - 1);
        (
            clamp((p[0] - self.origin[0]) / self.cell, self.nx),
            clamp((p[1] - self.origin[1]) / self.cell, self.ny),
        )
    }

    /// Squared distance to the nearest point; equal to the scan's minimum.
    fn nearest2(&self, p: Point) -> f64 {
        let (cx, cy) = self.cell_of(p);
        let mut best = f64::INFINITY;
        let max_ring = self.nx.max(self.ny) as i64;
        for ring in 0..=max_ring {
            // Every point in this ring or beyond is at least (ring-1)·cell away.
            let reach = (ring - 1).max(0) as f64 * self.cell;
            if reach * reach > best {
                break;
            }
            for x in cx - ring..=cx + ring {
                for y in cy - ring..=cy + ring {
                    if (x - cx).abs() != ring && (y - cy).abs() != ring {
                        continue;
                    }
                    if x < 0 || y < 0 || x >= self.nx as i64 || y >= self.ny as i64 {
                        continue;
                    }
                    for &i in &self.buckets[y as usize * self.nx + x as usize] {
                        best = best.min(dist2(p, self.points[i as usize]));
                    }
                }
            }
        }
        best
    }
}

fn directed_grid(a: &PointCloud, grid: &Grid<'_>) -> f64 {
    a.points
        .iter()
        .map(|p| grid.nearest2(*p))
        .fold(0.0, f64::max)
        .sqrt()
}

/// Same value as [`hausdorff_distance`], using bucketed nearest-neighbour
/// search. Suited to clouds of 10⁴–10⁶ points.
pub fn hausdorff_distance_grid(a: &PointCloud, b: &PointCloud) -> f64 {
    let ga = Grid::new(a);
    let gb = Grid::new(b);
    directed_grid(a, &gb).max(directed_grid(b, &ga))
}

//! Planar polygons, cell complexes, Hausdorff distance and two polygon
//! sequences approximating the unit disk.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)] // shadowed by std when it is linked
use num_traits::Float;

mod complex;
mod construct;
mod hausdorff;

pub use complex::{holes_from_chi, CellComplex};
pub use construct::{inscribed_regular_ngon, staircase_polygon, Staircase};
pub use hausdorff::{directed_hausdorff, hausdorff_distance, hausdorff_distance_grid, PointCloud};

pub type Point = [f64; 2];

/// Slack for the float orientation predicates.
pub const GEOM_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum GeomError {
    TooFewVertices(usize),
    NonFinite,
    RepeatedVertex(usize),
    SelfIntersecting {
        first: usize,
        second: usize,
    },
    ZeroArea,
    /// Vertices `i-1, i, i+1` are collinear.
    Collinear(usize),
    NegativeCount(&'static str),
    InconsistentIncidence(&'static str),
    EmptyCloud,
    InvalidParameter(&'static str),
    /// The staircase edge `1/k` is too short to reach the chord midpoint.
    InfeasibleStaircase {
        k: u32,
        chord: f64,
    },
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewVertices(n) => write!(f, "polygon needs at least 3 vertices, got {n}"),
            Self::NonFinite => write!(f, "vertex coordinates must be finite"),
            Self::RepeatedVertex(i) => write!(f, "vertex {i} repeats its predecessor"),
            Self::SelfIntersecting { first, second } => {
                write!(f, "edges {first} and {second} intersect")
            }
            Self::ZeroArea => write!(f, "polygon has zero area"),
            Self::Collinear(i) => write!(f, "vertex {i} is collinear with its neighbours"),
            Self::NegativeCount(which) => write!(f, "{which} count must be non-negative"),
            Self::InconsistentIncidence(why) => write!(f, "inconsistent incidence lists: {why}"),
            Self::EmptyCloud => write!(f, "point cloud is empty"),
            Self::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Self::InfeasibleStaircase { k, chord } => write!(
                f,
                "staircase k={k} infeasible: chord {chord} is not shorter than 2/k"
            ),
        }
    }
}

impl core::error::Error for GeomError {}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

/// Sign of the turn `a → b → c`, zero within [`GEOM_EPS`] scaled by the
/// edge lengths.
fn orient(a: Point, b: Point, c: Point) -> i8 {
    let u = sub(b, a);
    let v = sub(c, a);
    let x = cross(u, v);
    let scale = norm(u) * norm(v);
    if x > GEOM_EPS * scale {
        1
    } else if x < -GEOM_EPS * scale {
        -1
    } else {
        0
    }
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p[0] >= a[0].min(b[0]) - GEOM_EPS
        && p[0] <= a[0].max(b[0]) + GEOM_EPS
        && p[1] >= a[1].min(b[1]) - GEOM_EPS
        && p[1] <= a[1].max(b[1]) + GEOM_EPS
}

fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    let s = if len2 > 0.0 {
        (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    norm(sub(p, [a[0] + s * ab[0], a[1] + s * ab[1]]))
}

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    /// Validates and orients the vertex list. The closing edge is implicit.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self, GeomError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + n - 1) % n] {
                return Err(GeomError::RepeatedVertex(i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                let (c, d) = (vertices[j], vertices[(j + 1) % n]);
                if segments_touch(a, b, c, d) {
                    return Err(GeomError::SelfIntersecting {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        // Adjacent edges folding back onto each other.
        for i in 0..n {
            let (a, b, c) = (
                vertices[(i + n - 1) % n],
                vertices[i],
                vertices[(i + 1) % n],
            );
            if orient(a, b, c) == 0 && dot(sub(b, a), sub(c, b)) < 0.0 {
                return Err(GeomError::SelfIntersecting {
                    first: (i + n - 1) % n,
                    second: i,
                });
            }
        }
        let signed = signed_area(&vertices);
        if signed.abs() <= GEOM_EPS {
            return Err(GeomError::ZeroArea);
        }
        if signed < 0.0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| norm(sub(b, a))).sum()
    }

    /// Angle inside the polygon at each vertex, in `(0, 2π)`.
    pub fn interior_angles(&self) -> Result<Vec<f64>, GeomError> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let (a, b, c) = (
                    self.vertices[(i + n - 1) % n],
                    self.vertices[i],
                    self.vertices[(i + 1) % n],
                );
                if orient(a, b, c) == 0 {
                    return Err(GeomError::Collinear(i));
                }
                let incoming = sub(b, a);
                let outgoing = sub(c, b);
                let turn = cross(incoming, outgoing).atan2(dot(incoming, outgoing));
                Ok(PI - turn)
            })
            .collect()
    }

    pub fn min_interior_angle(&self) -> Result<f64, GeomError> {
        Ok(self
            .interior_angles()?
            .into_iter()
            .fold(f64::INFINITY, f64::min))
    }

    /// No reflex vertices. Collinear vertices are allowed.
    pub fn is_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            orient(
                self.vertices[(i + n - 1) % n],
                self.vertices[i],
                self.vertices[(i + 1) % n],
            ) >= 0
        })
    }

    /// Even-odd test; points on the boundary count as inside.
    pub fn contains(&self, p: Point) -> bool {
        if self
            .edges()
            .any(|(a, b)| point_segment_distance(p, a, b) <= GEOM_EPS)
        {
            return true;
        }
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn distance_to_boundary(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Boundary points at most `spacing` apart plus the interior points of
    /// a square grid with that spacing.
    pub fn sample(&self, spacing: f64) -> Result<PointCloud, GeomError> {
        if !(spacing > 0.0) {
            return Err(GeomError::InvalidParameter("spacing must be positive"));
        }
        let mut points = Vec::new();
        for (a, b) in self.edges() {
            let steps = (norm(sub(b, a)) / spacing).ceil().max(1.0) as usize;
            for s in 0..steps {
                let f = s as f64 / steps as f64;
                points.push([a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])]);
            }
        }
        let (lo, hi) = self.bounding_box();
        let nx = ((hi[0] - lo[0]) / spacing).floor() as i64;
        let ny = ((hi[1] - lo[1]) / spacing).floor() as i64;
        for i in 0..=nx {
            for j in 0..=ny {
                let p = [lo[0] + i as f64 * spacing, lo[1] + j as f64 * spacing];
                if self.contains(p) {
                    points.push(p);
                }
            }
        }
        PointCloud::new(points)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    0.5 * (0..n).map(|i| cross(v[i], v[(i + 1) % n])).sum::<f64>()
}

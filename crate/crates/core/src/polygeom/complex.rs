use alloc::vec::Vec;

use super::GeomError;

/// Counts of a 2-d cell complex, with optional incidence lists: each edge
/// as a pair of vertex indices and each face as a list of edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    vertices: u64,
    edges: u64,
    faces: u64,
    edge_list: Option<Vec<(usize, usize)>>,
    face_list: Option<Vec<Vec<usize>>>,
}

impl CellComplex {
    pub fn new(v: i64, e: i64, f: i64) -> Result<Self, GeomError> {
        let count = |x: i64, which| u64::try_from(x).map_err(|_| GeomError::NegativeCount(which));
        Ok(Self {
            vertices: count(v, "vertex")?,
            edges: count(e, "edge")?,
            faces: count(f, "face")?,
            edge_list: None,
            face_list: None,
        })
    }

    pub fn with_incidence(
        vertices: usize,
        edges: Vec<(usize, usize)>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Self, GeomError> {
        if edges.iter().any(|&(a, b)| a >= vertices || b >= vertices) {
            return Err(GeomError::InconsistentIncidence(
                "edge endpoint out of range",
            ));
        }
        if edges.iter().any(|&(a, b)| a == b) {
            return Err(GeomError::InconsistentIncidence("loop edge"));
        }
        if faces.iter().flatten().any(|&e| e >= edges.len()) {
            return Err(GeomError::InconsistentIncidence("face edge out of range"));
        }
        if faces.iter().any(Vec::is_empty) {
            return Err(GeomError::InconsistentIncidence("empty face"));
        }
        Ok(Self {
            vertices: vertices as u64,
            edges: edges.len() as u64,
            faces: faces.len() as u64,
            edge_list: Some(edges),
            face_list: Some(faces),
        })
    }

    pub fn vertices(&self) -> u64 {
        self.vertices
    }

    pub fn edges(&self) -> u64 {
        self.edges
    }

    pub fn faces(&self) -> u64 {
        self.faces
    }

    pub fn has_incidence(&self) -> bool {
        self.edge_list.is_some()
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }

    /// A polygon with `n` sides as one face.
    pub fn polygon(n: usize) -> Self {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::with_incidence(n, edges, alloc::vec![(0..n).collect()]).expect("indices are in range")
    }

    /// A square annulus: outer and inner squares joined at the corners into
    /// four trapezoids.
    pub fn annulus() -> Self {
        let mut edges = Vec::new();
        for i in 0..4 {
            edges.push((i, (i + 1) % 4));
        }
        for i in 0..4 {
            edges.push((4 + i, 4 + (i + 1) % 4));
        }
        for i in 0..4 {
            edges.push((i, 4 + i));
        }
        let faces = (0..4)
            .map(|i| alloc::vec![i, 4 + i, 8 + i, 8 + (i + 1) % 4])
            .collect();
        Self::with_incidence(8, edges, faces).expect("indices are in range")
    }

    /// A `cols × rows` grid of unit squares with the listed cells removed.
    pub fn grid_with_holes(cols: usize, rows: usize, removed: &[(usize, usize)]) -> Self {
        let vid = |x: usize, y: usize| y * (cols + 1) + x;
        let mut edges = Vec::new();
        let mut horizontal = alloc::vec![0; cols * (rows + 1)];
        for y in 0..=rows {
            for x in 0..cols {
                horizontal[y * cols + x] = edges.len();
                edges.push((vid(x, y), vid(x + 1, y)));
            }
        }
        let mut vertical = alloc::vec![0; (cols + 1) * rows];
        for y in 0..rows {
            for x in 0..=cols {
                vertical[y * (cols + 1) + x] = edges.len();
                edges.push((vid(x, y), vid(x, y + 1)));
            }
        }
        let mut faces = Vec::new();
        for y in 0..rows {
            for x in 0..cols {
                if removed.contains(&(x, y)) {
                    continue;
                }
                faces.push(alloc::vec![
                    horizontal[y * cols + x],
                    vertical[y * (cols + 1) + x + 1],
                    horizontal[(y + 1) * cols + x],
                    vertical[y * (cols + 1) + x],
                ]);
            }
        }
        Self::with_incidence((cols + 1) * (rows + 1), edges, faces).expect("indices are in range")
    }

    /// A 5 × 3 grid with two separated interior cells removed.
    pub fn two_holes() -> Self {
        Self::grid_with_holes(5, 3, &[(1, 1), (3, 1)])
    }
}

/// Number of holes of a connected planar region with Euler characteristic
/// `χ`: `1 - χ`.
pub fn holes_from_chi(chi: i64) -> Result<u64, GeomError> {
    u64::try_from(1 - chi).map_err(|_| GeomError::InvalidParameter("Euler characteristic above 1"))
}

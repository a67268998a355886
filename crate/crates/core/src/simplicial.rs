//! Finite abstract simplicial complexes and their reduced homology over a
//! characteristic-zero field.

use std::collections::BTreeSet;

use crate::linalg::{rank_exact, IntegerMatrix};

/// A simplicial complex on vertices `0..vertex_count`, stored as its full set
/// of faces (each a sorted vertex list).
///
/// The *void* complex has no faces; the *irrelevant* complex has only the
/// empty face. They are different objects with different reduced homology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn void(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            faces: BTreeSet::new(),
        }
    }

    pub fn irrelevant(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            faces: BTreeSet::from([Vec::new()]),
        }
    }

    /// Downward closure of the given facets. An empty facet list gives the
    /// void complex.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Self {
        let mut faces = BTreeSet::new();
        for facet in facets {
            let mut f = facet.clone();
            f.sort_unstable();
            f.dedup();
            assert!(
                f.iter().all(|&v| v < vertex_count),
                "facet {facet:?} uses a vertex outside 0..{vertex_count}"
            );
            for mask in 0u64..(1 << f.len()) {
                let sub: Vec<usize> = f
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                faces.insert(sub);
            }
        }
        Self {
            vertex_count,
            faces,
        }
    }

    /// Complex whose faces are the subsets `tau` of `0..vertex_count` with bit
    /// `tau` set in `mask` (bit index = subset bitmask). The mask must be
    /// downward closed.
    pub fn from_face_mask(vertex_count: usize, mask: &[u64]) -> Self {
        let mut faces = BTreeSet::new();
        for tau in 0usize..(1 << vertex_count) {
            if mask[tau / 64] >> (tau % 64) & 1 == 1 {
                faces.insert((0..vertex_count).filter(|v| tau >> v & 1 == 1).collect());
            }
        }
        let complex = Self {
            vertex_count,
            faces,
        };
        debug_assert!(complex.is_closed());
        complex
    }

    /// The full simplex on all vertices.
    pub fn simplex(vertex_count: usize) -> Self {
        Self::from_facets(vertex_count, &[(0..vertex_count).collect()])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    /// Faces of dimension `dim` (`dim = -1` is the empty face) in canonical
    /// lexicographic order.
    pub fn faces_of_dim(&self, dim: isize) -> Vec<&Vec<usize>> {
        if dim < -1 {
            return Vec::new();
        }
        let len = (dim + 1) as usize;
        self.faces.iter().filter(|f| f.len() == len).collect()
    }

    pub fn dimension(&self) -> Option<isize> {
        self.faces.iter().map(|f| f.len() as isize - 1).max()
    }

    pub fn is_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            (0..f.len()).all(|k| {
                let mut sub = f.clone();
                sub.remove(k);
                self.faces.contains(&sub)
            })
        })
    }

    /// Cone over a fresh apex vertex `vertex_count`.
    pub fn cone(&self) -> Self {
        let apex = self.vertex_count;
        let mut faces = self.faces.clone();
        for f in &self.faces {
            let mut with_apex = f.clone();
            with_apex.push(apex);
            faces.insert(with_apex);
        }
        Self {
            vertex_count: self.vertex_count + 1,
            faces,
        }
    }

    /// Reduced Euler characteristic `sum_i (-1)^i f_i`, counting the empty
    /// face in dimension -1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }
}

/// Matrix of the simplicial boundary map from `dim`-faces to `(dim-1)`-faces,
/// including the augmentation onto the empty face when `dim = 0`.
pub fn boundary_matrix(k: &SimplicialComplex, dim: usize) -> IntegerMatrix {
    let cols = k.faces_of_dim(dim as isize);
    let rows = k.faces_of_dim(dim as isize - 1);
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    for (c, face) in cols.iter().enumerate() {
        for skip in 0..face.len() {
            let mut sub = (*face).clone();
            sub.remove(skip);
            let r = rows
                .binary_search(&&sub)
                .expect("complex is closed under subsets");
            m.set(r, c, if skip % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// `dim H~_i(K; Q)` for `i = -1..=max_dim`; entry 0 of the result is `i = -1`.
pub fn reduced_homology_dims(k: &SimplicialComplex, max_dim: isize) -> Vec<usize> {
    assert!(max_dim >= -1, "max_dim must be at least -1");
    let len = (max_dim + 2) as usize;
    if k.is_void() {
        return vec![0; len];
    }
    // ranks[d + 1] = rank of the boundary out of d-faces, d >= 0.
    let top = k.dimension().unwrap_or(-1).max(max_dim) + 1;
    let mut ranks = vec![0usize; (top + 2) as usize];
    for d in 0..=top {
        ranks[(d + 1) as usize] = rank_exact(&boundary_matrix(k, d as usize));
    }
    (-1..=max_dim)
        .map(|i| {
            let faces = k.faces_of_dim(i).len();
            let out = if i >= 0 { ranks[(i + 1) as usize] } else { 0 };
            let incoming = ranks[(i + 2) as usize];
            faces - out - incoming
        })
        .collect()
}

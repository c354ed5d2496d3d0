use std::collections::{BTreeSet, HashMap};

use super::SimplicialError;
use crate::matrix::IntMatrix;

/// Pure oriented simplicial complex given by its facets.
///
/// Each facet is an ordered vertex tuple whose order is its orientation.
/// The `(d-1)`-faces carry a fixed reference orientation and a fixed
/// enumeration, which together determine the boundary matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedComplex {
    dim: usize,
    facets: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    face_index: HashMap<Vec<usize>, usize>,
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

/// `+1` if `tuple` is an even permutation of `reference`, `-1` otherwise.
/// Both must hold the same vertices.
pub(crate) fn permutation_sign(tuple: &[usize], reference: &[usize]) -> i64 {
    let pos: Vec<usize> = tuple
        .iter()
        .map(|v| reference.iter().position(|r| r == v).expect("same vertex set"))
        .collect();
    let mut inversions = 0;
    for i in 0..pos.len() {
        for j in i + 1..pos.len() {
            if pos[i] > pos[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Oriented codimension-one faces of an oriented simplex with their signs:
/// dropping vertex `i` contributes `(-1)^i` times the remaining tuple.
pub(crate) fn signed_faces(simplex: &[usize]) -> impl Iterator<Item = (Vec<usize>, i64)> + '_ {
    (0..simplex.len()).map(move |i| {
        let mut face = simplex.to_vec();
        face.remove(i);
        (face, if i % 2 == 0 { 1 } else { -1 })
    })
}

impl OrientedComplex {
    /// Complex whose `(d-1)`-faces use sorted vertex order as reference
    /// orientation and are enumerated lexicographically.
    pub fn new(dim: usize, facets: Vec<Vec<usize>>) -> Result<Self, SimplicialError> {
        let mut all = BTreeSet::new();
        Self::check_facets(dim, &facets)?;
        for f in &facets {
            for (face, _) in signed_faces(f) {
                all.insert(sorted(&face));
            }
        }
        Self::with_faces(dim, facets, all.into_iter().collect())
    }

    /// Complex with an explicit enumeration of the `(d-1)`-faces; each face
    /// is listed in its reference orientation.
    pub fn with_faces(
        dim: usize,
        facets: Vec<Vec<usize>>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Self, SimplicialError> {
        Self::check_facets(dim, &facets)?;
        let mut face_index = HashMap::new();
        for (i, face) in faces.iter().enumerate() {
            if face.len() != dim || sorted(face).windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::BadFaces(format!("face {:?} is not a {}-simplex", face, dim - 1)));
            }
            if face_index.insert(sorted(face), i).is_some() {
                return Err(SimplicialError::BadFaces(format!("face {:?} listed twice", face)));
            }
        }
        let mut used = vec![false; faces.len()];
        for f in &facets {
            for (face, _) in signed_faces(f) {
                match face_index.get(&sorted(&face)) {
                    Some(&i) => used[i] = true,
                    None => {
                        return Err(SimplicialError::BadFaces(format!("face {:?} of {:?} not enumerated", face, f)))
                    }
                }
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(SimplicialError::BadFaces(format!("face {:?} lies on no facet", faces[i])));
        }
        Ok(OrientedComplex { dim, facets, faces, face_index })
    }

    fn check_facets(dim: usize, facets: &[Vec<usize>]) -> Result<(), SimplicialError> {
        if dim == 0 {
            return Err(SimplicialError::NotPure("dimension must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        for f in facets {
            let s = sorted(f);
            if f.len() != dim + 1 || s.windows(2).any(|w| w[0] == w[1]) {
                return Err(SimplicialError::NotPure(format!("{:?} is not a {}-simplex", f, dim)));
            }
            if !seen.insert(s) {
                return Err(SimplicialError::DuplicateFacet(f.clone()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// `(d-1)`-faces in enumeration order and reference orientation.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.face_index.get(&sorted(face)).copied()
    }

    /// Nonzero entries of the boundary column of facet `j`.
    pub fn boundary_column(&self, j: usize) -> Vec<(usize, i64)> {
        signed_faces(&self.facets[j])
            .map(|(face, sign)| {
                let i = self.face_index[&sorted(&face)];
                (i, sign * permutation_sign(&face, &self.faces[i]))
            })
            .collect()
    }

    /// `|faces| x |facets|` matrix of the top boundary operator.
    pub fn boundary_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.faces.len(), self.facets.len());
        for j in 0..self.facets.len() {
            for (i, s) in self.boundary_column(j) {
                m.set(i, j, s);
            }
        }
        m
    }

    /// The `k`-simplices used as a basis of `C_k`: facets for `k = d`, the
    /// face enumeration for `k = d-1`, sorted lexicographic lists below.
    pub fn simplices(&self, k: usize) -> Vec<Vec<usize>> {
        if k == self.dim {
            return self.facets.clone();
        }
        if k + 1 == self.dim {
            return self.faces.clone();
        }
        let mut all = BTreeSet::new();
        for f in &self.facets {
            collect_subsets(&sorted(f), k + 1, &mut Vec::new(), 0, &mut all);
        }
        all.into_iter().collect()
    }

    /// Matrix of `∂_k : C_k → C_{k-1}` for `1 ≤ k ≤ d`.
    pub fn chain_boundary(&self, k: usize) -> IntMatrix {
        assert!(k >= 1 && k <= self.dim, "boundary index out of range");
        let rows = self.simplices(k - 1);
        let cols = self.simplices(k);
        let index: HashMap<Vec<usize>, usize> =
            rows.iter().enumerate().map(|(i, r)| (sorted(r), i)).collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (face, sign) in signed_faces(c) {
                let i = index[&sorted(&face)];
                m.set(i, j, sign * permutation_sign(&face, &rows[i]));
            }
        }
        m
    }

    /// Facet `j` with its orientation reversed (first two vertices swapped).
    pub fn flipped(&self, j: usize) -> OrientedComplex {
        let mut c = self.clone();
        c.facets[j].swap(0, 1);
        c
    }

    /// Facets sharing at least one vertex form a connected graph.
    pub fn is_connected(&self) -> bool {
        let k = self.facets.len();
        if k == 0 {
            return true;
        }
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for b in 0..k {
                if !seen[b] && self.facets[a].iter().any(|v| self.facets[b].contains(v)) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn collect_subsets(
    set: &[usize],
    size: usize,
    current: &mut Vec<usize>,
    from: usize,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if current.len() == size {
        out.insert(current.clone());
        return;
    }
    for i in from..set.len() {
        current.push(set[i]);
        collect_subsets(set, size, current, i + 1, out);
        current.pop();
    }
}

//! Finite simplicial complexes and their reduced homology.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::linalg;
use super::FieldSpec;

/// Faces are stored as vertex bitmasks, so complexes have at most 64 vertices.
pub const MAX_VERTICES: usize = 64;

/// A simplicial complex given by its facets.
///
/// `facets` empty is the void complex (no faces at all); `facets == [∅]` is
/// the complex `{∅}` whose only face is the empty face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    num_vertices: usize,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    pub fn void(num_vertices: usize) -> Self {
        SimplicialComplex { num_vertices, facets: Vec::new() }
    }

    pub fn from_facets(num_vertices: usize, facets: &[Vec<usize>]) -> Self {
        Self::from_masks(num_vertices, facets.iter().map(|f| to_mask(f)))
    }

    /// Builds the complex generated by arbitrary faces, keeping the maximal ones.
    pub fn from_masks(num_vertices: usize, faces: impl IntoIterator<Item = u64>) -> Self {
        assert!(num_vertices <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        let mut all: Vec<u64> = faces.into_iter().collect();
        all.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
        all.dedup();
        let mut facets: Vec<u64> = Vec::new();
        for f in all {
            if !facets.iter().any(|&g| f & g == f) {
                facets.push(f);
            }
        }
        facets.sort_unstable();
        SimplicialComplex { num_vertices, facets }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| from_mask(m)).collect()
    }

    /// Every face, as a bitmask, in no particular order.
    pub fn face_masks(&self) -> BTreeSet<u64> {
        let mut faces = BTreeSet::new();
        for &f in &self.facets {
            // enumerate all submasks of f
            let mut sub = f;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        faces
    }

    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.face_masks().into_iter().map(from_mask).collect()
    }

    /// Dimension of the largest face; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.count_ones() as isize - 1).max()
    }
}

pub(crate) fn to_mask(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |m, &v| {
        assert!(v < MAX_VERTICES, "vertex {v} out of range");
        m | (1 << v)
    })
}

pub(crate) fn from_mask(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask & (1 << b) != 0).collect()
}

/// Reduced homology ranks; `ranks[k]` is `dim H̃_{k-1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedHomology {
    pub ranks: Vec<usize>,
}

impl ReducedHomology {
    /// `dim H̃_degree`, for `degree >= -1`.
    pub fn get(&self, degree: isize) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|k| self.ranks.get(k).copied())
            .unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Signed boundary map from faces of size `k + 1` to faces of size `k`,
/// one row per source face.
pub(crate) fn boundary_rows(
    sources: &[u64],
    target_index: &HashMap<u64, usize>,
    target_len: usize,
) -> Vec<Vec<i64>> {
    sources
        .iter()
        .map(|&face| {
            let mut row = vec![0i64; target_len];
            for (pos, v) in from_mask(face).into_iter().enumerate() {
                let facet = face & !(1 << v);
                if let Some(&col) = target_index.get(&facet) {
                    row[col] = if pos % 2 == 0 { 1 } else { -1 };
                }
            }
            row
        })
        .collect()
}

/// Ranks of reduced simplicial homology over `field`.
///
/// The void complex has no homology at all; `{∅}` has `H̃_{-1} = 1`.
pub fn reduced_homology_ranks(complex: &SimplicialComplex, field: FieldSpec) -> ReducedHomology {
    let Some(dim) = complex.dimension() else {
        return ReducedHomology::default();
    };
    // chains[k] holds the faces with k vertices, i.e. dimension k - 1
    let top = (dim + 1) as usize;
    let mut chains: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for f in complex.face_masks() {
        chains[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<u64, usize>> = chains
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // boundary_rank[k]: rank of the map from size-k faces to size-(k-1) faces
    let mut boundary_rank = vec![0usize; top + 2];
    for k in 1..=top {
        let rows = boundary_rows(&chains[k], &index[k - 1], chains[k - 1].len());
        boundary_rank[k] = linalg::rank(&rows, field);
    }
    let ranks = (0..=top)
        .map(|k| chains[k].len() - boundary_rank[k] - boundary_rank[k + 1])
        .collect();
    ReducedHomology { ranks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn two_points() {
        let k = SimplicialComplex::from_facets(2, &[vec![0], vec![1]]);
        let h = reduced_homology_ranks(&k, q());
        assert_eq!(h.get(0), 1);
        assert_eq!(h.get(-1), 0);
        assert_eq!(h.get(1), 0);
    }

    #[test]
    fn triangle_boundary_is_a_circle() {
        let k = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        let h = reduced_homology_ranks(&k, q());
        assert_eq!(h.ranks, vec![0, 0, 1]);
    }

    #[test]
    fn simplex_is_acyclic() {
        let k = SimplicialComplex::from_facets(4, &[vec![0, 1, 2, 3]]);
        assert!(reduced_homology_ranks(&k, q()).is_acyclic());
    }

    #[test]
    fn degenerate_conventions() {
        let void = SimplicialComplex::void(3);
        assert!(void.is_void());
        assert!(reduced_homology_ranks(&void, q()).ranks.is_empty());
        let empty_face = SimplicialComplex::from_masks(3, [0u64]);
        assert_eq!(reduced_homology_ranks(&empty_face, q()).ranks, vec![1]);
    }

    #[test]
    fn projective_plane_torsion() {
        // six-vertex triangulation of RP^2: H̃_1 = Z/2, so ranks depend on char
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let facets: Vec<Vec<usize>> = tris.iter().map(|t| t.to_vec()).collect();
        let k = SimplicialComplex::from_facets(6, &facets);
        let h0 = reduced_homology_ranks(&k, q());
        assert!(h0.is_acyclic());
        let h2 = reduced_homology_ranks(&k, FieldSpec::new(2).unwrap());
        assert_eq!((h2.get(1), h2.get(2)), (1, 1));
    }

    #[test]
    fn facets_are_maximal() {
        let k = SimplicialComplex::from_facets(3, &[vec![0, 1], vec![0], vec![1, 2]]);
        assert_eq!(k.facets(), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(k.faces().len(), 6);
    }
}

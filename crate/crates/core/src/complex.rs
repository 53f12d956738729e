//! Abstract simplicial complexes on vertices `0 .. vertex_count`, stored by
//! their facets (inclusion-maximal simplices), together with the
//! constructions the wedge model needs: joins, wedges at basepoints,
//! boundary-of-simplex sphere models, and integral simplicial chain
//! complexes.

use std::collections::{BTreeSet, HashMap};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::homology::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {vertex} out of range for a complex on {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: u32 },
    #[error("facet contains vertex {vertex} twice")]
    DuplicateVertex { vertex: u32 },
    #[error("facets must be nonempty; represent an isolated vertex as a singleton facet")]
    EmptyFacet,
    #[error("vertex {vertex} does not appear in any facet")]
    UncoveredVertex { vertex: u32 },
    #[error("sphere models exist for dimensions >= -1, got {dim}")]
    InvalidSphereDimension { dim: i64 },
    #[error("wedge summands must be nonempty complexes")]
    EmptyWedgeSummand,
    #[error("wedge basepoint {basepoint} out of range for a summand on {vertex_count} vertices")]
    BasepointOutOfRange { basepoint: u32, vertex_count: u32 },
}

/// A finite abstract simplicial complex. The empty complex (no vertices, no
/// simplices) is allowed and plays the role of the sphere of dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertex_count: u32,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex from facet generators: sorts, removes dominated
    /// faces, and checks that every vertex below `vertex_count` is used.
    pub fn new(vertex_count: u32, facets: Vec<Vec<u32>>) -> Result<Self, ComplexError> {
        let mut cleaned: Vec<Vec<u32>> = Vec::with_capacity(facets.len());
        for mut facet in facets {
            if facet.is_empty() {
                return Err(ComplexError::EmptyFacet);
            }
            facet.sort_unstable();
            for pair in facet.windows(2) {
                if pair[0] == pair[1] {
                    return Err(ComplexError::DuplicateVertex { vertex: pair[0] });
                }
            }
            if let Some(&v) = facet.last() {
                if v >= vertex_count {
                    return Err(ComplexError::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            cleaned.push(facet);
        }
        let mut covered = vec![false; vertex_count as usize];
        for facet in &cleaned {
            for &v in facet {
                covered[v as usize] = true;
            }
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(ComplexError::UncoveredVertex { vertex: v as u32 });
        }
        // Drop faces dominated by a larger facet; longest first so that a
        // retained facet can never be a subset of a later one.
        cleaned.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Vec<u32>> = Vec::with_capacity(cleaned.len());
        for facet in cleaned {
            let dominated = kept.iter().any(|big| is_sorted_subset(&facet, big));
            if !dominated {
                kept.push(facet);
            }
        }
        kept.sort_unstable();
        Ok(SimplicialComplex {
            vertex_count,
            facets: kept,
        })
    }

    /// Internal constructor for facet families already known to be sorted
    /// antichains covering the vertex set.
    pub(crate) fn from_facets_trusted(vertex_count: u32, facets: Vec<Vec<u32>>) -> Self {
        debug_assert!(facets.iter().all(|f| f.windows(2).all(|w| w[0] < w[1])));
        debug_assert!(facets.windows(2).all(|w| w[0] < w[1]));
        SimplicialComplex {
            vertex_count,
            facets,
        }
    }

    /// The empty complex, with no vertices and no simplices.
    pub fn empty() -> Self {
        SimplicialComplex {
            vertex_count: 0,
            facets: Vec::new(),
        }
    }

    pub fn point() -> Self {
        SimplicialComplex {
            vertex_count: 1,
            facets: vec![vec![0]],
        }
    }

    /// The boundary of the (d+1)-simplex: the standard triangulation of the
    /// d-sphere. `sphere_model(-1)` is the empty complex, and
    /// `sphere_model(0)` is two points.
    pub fn sphere_model(dim: i64) -> Result<Self, ComplexError> {
        if dim < -1 {
            return Err(ComplexError::InvalidSphereDimension { dim });
        }
        if dim == -1 {
            return Ok(Self::empty());
        }
        let vertices = dim as u32 + 2;
        let mut facets = Vec::with_capacity(vertices as usize);
        for omit in 0..vertices {
            facets.push((0..vertices).filter(|&v| v != omit).collect());
        }
        facets.sort_unstable();
        Ok(Self::from_facets_trusted(vertices, facets))
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count == 0
    }

    /// Dimension of the complex; the empty complex has dimension -1.
    pub fn dim(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    /// All simplices, grouped by dimension (index `d` holds the sorted list
    /// of d-simplices).
    pub fn simplices_by_dim(&self) -> Vec<Vec<Vec<u32>>> {
        let top = self.dim();
        if top < 0 {
            return Vec::new();
        }
        let mut closure: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); top as usize + 1];
        for facet in &self.facets {
            for subset in nonempty_subsets(facet) {
                closure[subset.len() - 1].insert(subset);
            }
        }
        closure
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect()
    }

    /// Total number of simplices (all dimensions).
    pub fn simplex_count(&self) -> usize {
        self.simplices_by_dim().iter().map(|s| s.len()).sum()
    }

    /// Join of two complexes: simplices are unions of a simplex from each
    /// side (or from one side alone). Vertices of `other` are shifted past
    /// the vertices of `self`. The empty complex is the identity.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let shift = self.vertex_count;
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                let mut joined = Vec::with_capacity(a.len() + b.len());
                joined.extend_from_slice(a);
                joined.extend(b.iter().map(|&v| v + shift));
                facets.push(joined);
            }
        }
        facets.sort_unstable();
        // Facet products of two antichains form an antichain.
        SimplicialComplex::from_facets_trusted(self.vertex_count + other.vertex_count, facets)
    }

    /// Suspension: join with the 0-sphere.
    pub fn suspension(&self) -> SimplicialComplex {
        self.join(&Self::sphere_model(0).expect("0-sphere model is valid"))
    }

    /// Wedge of pointed complexes: disjoint union with all basepoints glued
    /// to a single vertex 0. Summands must be nonempty.
    pub fn wedge(summands: &[(SimplicialComplex, u32)]) -> Result<SimplicialComplex, ComplexError> {
        for (complex, basepoint) in summands {
            if complex.is_empty() {
                return Err(ComplexError::EmptyWedgeSummand);
            }
            if *basepoint >= complex.vertex_count {
                return Err(ComplexError::BasepointOutOfRange {
                    basepoint: *basepoint,
                    vertex_count: complex.vertex_count,
                });
            }
        }
        if summands.is_empty() {
            return Ok(Self::point());
        }
        let mut next_vertex = 1u32;
        let mut facets: Vec<Vec<u32>> = Vec::new();
        for (complex, basepoint) in summands {
            let mut relabel = vec![0u32; complex.vertex_count as usize];
            for v in 0..complex.vertex_count {
                if v == *basepoint {
                    relabel[v as usize] = 0;
                } else {
                    relabel[v as usize] = next_vertex;
                    next_vertex += 1;
                }
            }
            for facet in &complex.facets {
                let mut mapped: Vec<u32> = facet.iter().map(|&v| relabel[v as usize]).collect();
                mapped.sort_unstable();
                facets.push(mapped);
            }
        }
        // Distinct summands share only the wedge point, so the only possible
        // domination is a bare basepoint facet inside a larger one.
        let base_in_larger = facets.iter().any(|f| f.len() >= 2 && f[0] == 0);
        if base_in_larger {
            facets.retain(|f| f.as_slice() != [0]);
        } else {
            let mut seen_base = false;
            facets.retain(|f| {
                if f.as_slice() == [0] {
                    let keep = !seen_base;
                    seen_base = true;
                    keep
                } else {
                    true
                }
            });
        }
        facets.sort_unstable();
        Ok(SimplicialComplex::from_facets_trusted(next_vertex, facets))
    }

    /// The simplicial chain complex with integer coefficients. When
    /// `reduced` is set, degree -1 carries a single generator and the
    /// boundary out of degree 0 is the augmentation.
    pub fn chain_complex(&self, reduced: bool) -> ChainComplex {
        let by_dim = self.simplices_by_dim();
        let mut index: Vec<HashMap<&[u32], usize>> = Vec::with_capacity(by_dim.len());
        for simplices in &by_dim {
            let mut map = HashMap::with_capacity(simplices.len());
            for (i, s) in simplices.iter().enumerate() {
                map.insert(s.as_slice(), i);
            }
            index.push(map);
        }
        let mut boundaries = Vec::with_capacity(by_dim.len());
        for (d, simplices) in by_dim.iter().enumerate() {
            if d == 0 {
                let rows = usize::from(reduced);
                let mut aug = Vec::new();
                if reduced {
                    for c in 0..simplices.len() {
                        aug.push((0, c, 1i64));
                    }
                }
                boundaries.push(IntMatrix::from_triplets(rows, simplices.len(), aug));
                continue;
            }
            let mut entries = Vec::new();
            for (col, simplex) in simplices.iter().enumerate() {
                let mut sign = 1i64;
                let mut face = Vec::with_capacity(simplex.len() - 1);
                for omit in 0..simplex.len() {
                    face.clear();
                    face.extend(simplex.iter().take(omit));
                    face.extend(simplex.iter().skip(omit + 1));
                    let row = index[d - 1][face.as_slice()];
                    entries.push((row, col, sign));
                    sign = -sign;
                }
            }
            boundaries.push(IntMatrix::from_triplets(
                by_dim[d - 1].len(),
                simplices.len(),
                entries,
            ));
        }
        ChainComplex {
            reduced,
            dims: by_dim.iter().map(|s| s.len()).collect(),
            boundaries,
        }
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            vertex_count: u32,
            facets: Vec<Vec<u32>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        SimplicialComplex::new(raw.vertex_count, raw.facets).map_err(D::Error::custom)
    }
}

fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    'outer: for &v in small {
        for &w in it.by_ref() {
            if w == v {
                continue 'outer;
            }
            if w > v {
                return false;
            }
        }
        return false;
    }
    true
}

fn nonempty_subsets(facet: &[u32]) -> Vec<Vec<u32>> {
    let n = facet.len();
    assert!(n < 64, "facet too large to enumerate subsets");
    let mut out = Vec::with_capacity((1usize << n) - 1);
    for mask in 1u64..(1 << n) {
        let mut subset = Vec::with_capacity(mask.count_ones() as usize);
        for (i, &v) in facet.iter().enumerate() {
            if mask >> i & 1 == 1 {
                subset.push(v);
            }
        }
        out.push(subset);
    }
    out
}

/// A bounded chain complex of free abelian groups, `boundaries[d]` mapping
/// degree `d` to degree `d - 1`. For reduced complexes, degree -1 is a copy
/// of the integers and `boundaries[0]` is the augmentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainComplex {
    reduced: bool,
    dims: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn reduced(&self) -> bool {
        self.reduced
    }

    /// Largest degree carrying chains; -1 when there are none.
    pub fn top_dim(&self) -> i64 {
        self.dims.len() as i64 - 1
    }

    /// Rank of the chain group in degree `d`.
    pub fn dim_count(&self, d: i64) -> usize {
        if d == -1 {
            return usize::from(self.reduced);
        }
        if d < 0 {
            return 0;
        }
        self.dims.get(d as usize).copied().unwrap_or(0)
    }

    /// The boundary map out of degree `d`, when `0 <= d <= top_dim()`.
    pub fn boundary(&self, d: i64) -> Option<&IntMatrix> {
        if d < 0 {
            return None;
        }
        self.boundaries.get(d as usize)
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// Checks that consecutive boundary maps compose to zero.
    pub fn composes_to_zero(&self) -> bool {
        for d in 1..self.boundaries.len() {
            if !IntMatrix::compose_is_zero(&self.boundaries[d - 1], &self.boundaries[d]) {
                return false;
            }
        }
        true
    }
}

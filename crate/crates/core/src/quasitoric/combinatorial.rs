//! Oriented combinatorial data of a simple polytope: facet incidences of the
//! vertices with an ordering (and sign) recording the orientation at each
//! vertex.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::lattice::sort_parity;

/// A vertex as an ordered tuple of the `n` facets containing it. The
/// orientation at the vertex is `sign` times the orientation of the tuple.
/// For `n >= 2` the constructor normalizes `sign` to `+1` by swapping the
/// first two facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeVertex {
    pub facets: Vec<usize>,
    pub sign: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialPolytope {
    n: usize,
    m: usize,
    vertices: Vec<PolytopeVertex>,
    neighbors: Vec<Vec<usize>>,
}

impl CombinatorialPolytope {
    /// Validates facet incidences, the `n`-valent connected 1-skeleton and
    /// the consistency of orientations along every edge.
    pub fn new(n: usize, m: usize, mut vertices: Vec<PolytopeVertex>) -> Result<Self> {
        let bad = |s: String| Err(Error::MalformedPolytope(s));
        if n == 0 {
            if m != 0 || vertices.len() != 1 || !vertices[0].facets.is_empty() {
                return bad("a 0-dimensional polytope is a single point".into());
            }
            if vertices[0].sign != 1 && vertices[0].sign != -1 {
                return bad("vertex sign must be ±1".into());
            }
            return Ok(CombinatorialPolytope {
                n,
                m,
                vertices,
                neighbors: vec![Vec::new()],
            });
        }
        let mut seen = BTreeSet::new();
        for (i, v) in vertices.iter_mut().enumerate() {
            if v.facets.len() != n {
                return bad(format!(
                    "vertex {i} lies on {} facets, expected {n}",
                    v.facets.len()
                ));
            }
            if v.facets.iter().any(|&f| f >= m) {
                return bad(format!("vertex {i} refers to an unknown facet"));
            }
            if v.sign != 1 && v.sign != -1 {
                return bad(format!("vertex {i} has sign {}", v.sign));
            }
            let set: BTreeSet<usize> = v.facets.iter().copied().collect();
            if set.len() != n {
                return bad(format!("vertex {i} repeats a facet"));
            }
            if !seen.insert(set) {
                return bad(format!("vertex {i} duplicates another vertex"));
            }
            if n >= 2 && v.sign == -1 {
                v.facets.swap(0, 1);
                v.sign = 1;
            }
        }
        for f in 0..m {
            if !vertices.iter().any(|v| v.facets.contains(&f)) {
                return bad(format!("facet {f} contains no vertex"));
            }
        }

        let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            for k in 0..n {
                ridges.entry(ridge(&v.facets, k)).or_default().push(i);
            }
        }
        let mut neighbors = vec![vec![0; n]; vertices.len()];
        for (i, v) in vertices.iter().enumerate() {
            for k in 0..n {
                let r = &ridges[&ridge(&v.facets, k)];
                if r.len() != 2 {
                    return bad(format!(
                        "edge leaving vertex {i} off facet {} has {} endpoints",
                        v.facets[k],
                        r.len()
                    ));
                }
                neighbors[i][k] = if r[0] == i { r[1] } else { r[0] };
            }
        }

        let mut reached = vec![false; vertices.len()];
        reached[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for &j in &neighbors[i] {
                if !reached[j] {
                    reached[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return bad("1-skeleton is not connected".into());
        }

        let p = CombinatorialPolytope {
            n,
            m,
            vertices,
            neighbors,
        };
        for i in 0..p.vertices.len() {
            for k in 0..n {
                if !p.edge_consistent(i, k) {
                    return bad(format!(
                        "orientations at vertices {i} and {} disagree",
                        p.neighbors[i][k]
                    ));
                }
            }
        }
        Ok(p)
    }

    /// The 0-dimensional polytope.
    pub fn point() -> Self {
        CombinatorialPolytope {
            n: 0,
            m: 0,
            vertices: vec![PolytopeVertex {
                facets: Vec::new(),
                sign: 1,
            }],
            neighbors: vec![Vec::new()],
        }
    }

    // Moving from v off facet k to w replaces that facet by the one facet of
    // w not at v; the substituted tuple must have orientation opposite to w.
    fn edge_consistent(&self, i: usize, k: usize) -> bool {
        let v = &self.vertices[i];
        let w = &self.vertices[self.neighbors[i][k]];
        let Some(&g) = w.facets.iter().find(|f| !v.facets.contains(f)) else {
            return false;
        };
        let mut sub = v.facets.clone();
        sub[k] = g;
        let positions: Vec<usize> = sub
            .iter()
            .map(|f| w.facets.iter().position(|x| x == f).unwrap())
            .collect();
        sort_parity(&positions).is_some_and(|p| p * w.sign == -v.sign)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn num_facets(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &PolytopeVertex {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[PolytopeVertex] {
        &self.vertices
    }

    /// The vertex reached from `v` along the edge that leaves facet
    /// `vertex(v).facets[k]`.
    pub fn neighbor(&self, v: usize, k: usize) -> usize {
        self.neighbors[v][k]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = BTreeSet::new();
        for (i, nb) in self.neighbors.iter().enumerate() {
            for &j in nb {
                out.insert((i.min(j), i.max(j)));
            }
        }
        out.into_iter().collect()
    }

    pub fn vertex_on(&self, facets: &[usize]) -> Option<usize> {
        let want: BTreeSet<usize> = facets.iter().copied().collect();
        self.vertices
            .iter()
            .position(|v| v.facets.iter().copied().collect::<BTreeSet<_>>() == want)
    }

    /// Product polytope: facets of `self` first, vertices are pairs in
    /// row-major order, orientations multiply.
    pub fn product(&self, other: &CombinatorialPolytope) -> Self {
        let mut vertices = Vec::with_capacity(self.num_vertices() * other.num_vertices());
        for v in &self.vertices {
            for w in &other.vertices {
                let mut facets = v.facets.clone();
                facets.extend(w.facets.iter().map(|f| f + self.m));
                vertices.push(PolytopeVertex {
                    facets,
                    sign: v.sign * w.sign,
                });
            }
        }
        Self::new(self.n + other.n, self.m + other.m, vertices)
            .expect("product of valid polytopes is valid")
    }

    /// Renames facet `f` to `perm[f]`.
    pub fn permute_facets(&self, perm: &[usize]) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| PolytopeVertex {
                facets: v.facets.iter().map(|&f| perm[f]).collect(),
                sign: v.sign,
            })
            .collect();
        Self::new(self.n, self.m, vertices)
    }
}

fn ridge(facets: &[usize], k: usize) -> Vec<usize> {
    let mut r: Vec<usize> = facets
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &f)| f)
        .collect();
    r.sort_unstable();
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &[usize], sign: i64) -> PolytopeVertex {
        PolytopeVertex {
            facets: f.to_vec(),
            sign,
        }
    }

    #[test]
    fn abstract_triangle() {
        let t = CombinatorialPolytope::new(2, 3, vec![v(&[0, 1], 1), v(&[1, 2], 1), v(&[2, 0], 1)])
            .unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(t.neighbor(0, 0), 1);
    }

    #[test]
    fn inconsistent_orientation_rejected() {
        assert!(CombinatorialPolytope::new(
            2,
            3,
            vec![v(&[0, 1], 1), v(&[1, 2], 1), v(&[0, 2], 1)]
        )
        .is_err());
    }

    #[test]
    fn interval_needs_opposite_signs() {
        assert!(CombinatorialPolytope::new(1, 2, vec![v(&[0], 1), v(&[1], -1)]).is_ok());
        assert!(CombinatorialPolytope::new(1, 2, vec![v(&[0], 1), v(&[1], 1)]).is_err());
    }

    #[test]
    fn sign_normalized_by_swap() {
        let t =
            CombinatorialPolytope::new(2, 3, vec![v(&[1, 0], -1), v(&[1, 2], 1), v(&[2, 0], 1)])
                .unwrap();
        assert_eq!(t.vertex(0), &v(&[0, 1], 1));
    }

    #[test]
    fn product_of_intervals() {
        let i = CombinatorialPolytope::new(1, 2, vec![v(&[0], 1), v(&[1], -1)]).unwrap();
        let sq = i.product(&i);
        assert_eq!(sq.num_vertices(), 4);
        assert_eq!(sq.num_facets(), 4);
        assert_eq!(sq.edges().len(), 4);
        assert_eq!(CombinatorialPolytope::point().product(&i), i);
    }
}

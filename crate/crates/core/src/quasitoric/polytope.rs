//! Exact H-polytopes `{x : <a_i, x> >= b_i}` and brute-force vertex
//! enumeration over rational arithmetic.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::combinatorial::{CombinatorialPolytope, PolytopeVertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    n: usize,
    normals: Vec<Vec<BigRational>>,
    offsets: Vec<BigRational>,
}

/// Vertices of an [`HPolytope`] together with the oriented combinatorial data
/// they induce. `points[i]` is the coordinate vector of `data.vertex(i)`.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub data: CombinatorialPolytope,
    pub points: Vec<Vec<BigRational>>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl HPolytope {
    pub fn new(normals: Vec<Vec<BigRational>>, offsets: Vec<BigRational>) -> Result<Self> {
        let n = normals.first().map_or(0, |a| a.len());
        if n == 0 {
            return Err(Error::MalformedPolytope(
                "dimension must be at least 1".into(),
            ));
        }
        if normals.len() != offsets.len() {
            return Err(Error::MalformedPolytope(format!(
                "{} normals but {} offsets",
                normals.len(),
                offsets.len()
            )));
        }
        for (i, a) in normals.iter().enumerate() {
            if a.len() != n {
                return Err(Error::MalformedPolytope(format!(
                    "normal {i} has wrong length"
                )));
            }
            if a.iter().all(|x| x.is_zero()) {
                return Err(Error::MalformedPolytope(format!("normal {i} is zero")));
            }
        }
        Ok(HPolytope {
            n,
            normals,
            offsets,
        })
    }

    pub fn from_integers(normals: &[Vec<i64>], offsets: &[i64]) -> Result<Self> {
        Self::new(
            normals
                .iter()
                .map(|a| a.iter().map(|&x| rat(x)).collect())
                .collect(),
            offsets.iter().map(|&b| rat(b)).collect(),
        )
    }

    /// The standard simplex `x_i >= 0`, `-(x_1 + ... + x_n) >= -1`.
    pub fn simplex(n: usize) -> Self {
        let mut normals: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        normals.push(vec![-1; n]);
        let mut offsets = vec![0; n];
        offsets.push(-1);
        Self::from_integers(&normals, &offsets).expect("simplex is well formed")
    }

    /// A `k`-gon whose inward normals are rounded unit vectors at angles
    /// `2πi/k`, listed counterclockwise; every facet has offset `-1`.
    pub fn polygon(k: usize) -> Self {
        const DEN: i64 = 1_000_000;
        let normals = (0..k)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                [th.cos(), th.sin()]
                    .iter()
                    .map(|c| {
                        BigRational::new(
                            BigInt::from((-c * DEN as f64).round() as i64),
                            BigInt::from(DEN),
                        )
                    })
                    .collect()
            })
            .collect();
        Self::new(normals, vec![rat(-1); k]).expect("polygon is well formed")
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn num_facets(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<BigRational>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[BigRational] {
        &self.offsets
    }

    /// Cartesian product; facets of `self` come first.
    pub fn product(&self, other: &HPolytope) -> HPolytope {
        let n = self.n + other.n;
        let mut normals = Vec::with_capacity(self.num_facets() + other.num_facets());
        for a in &self.normals {
            let mut v = a.clone();
            v.resize(n, BigRational::zero());
            normals.push(v);
        }
        for a in &other.normals {
            let mut v = vec![BigRational::zero(); self.n];
            v.extend(a.iter().cloned());
            normals.push(v);
        }
        let offsets = self.offsets.iter().chain(&other.offsets).cloned().collect();
        HPolytope {
            n,
            normals,
            offsets,
        }
    }

    fn slack(&self, i: usize, x: &[BigRational]) -> BigRational {
        let mut s = -self.offsets[i].clone();
        for (a, xi) in self.normals[i].iter().zip(x) {
            s += a * xi;
        }
        s
    }

    /// Enumerates vertices over all `n`-subsets of facets, checks simplicity,
    /// irredundancy and boundedness, and orders the facets at each vertex so
    /// their inward normals form a positively oriented basis.
    pub fn enumerate_vertices(&self) -> Result<Enumeration> {
        let n = self.n;
        let m = self.num_facets();
        let mut found: BTreeMap<Vec<usize>, Vec<BigRational>> = BTreeMap::new();
        for subset in (0..m).combinations(n) {
            let rows: Vec<Vec<BigRational>> =
                subset.iter().map(|&i| self.normals[i].clone()).collect();
            let rhs: Vec<BigRational> = subset.iter().map(|&i| self.offsets[i].clone()).collect();
            let Some(x) = solve(rows, rhs) else { continue };
            let mut tight = Vec::new();
            let mut feasible = true;
            for i in 0..m {
                let s = self.slack(i, &x);
                if s.is_negative() {
                    feasible = false;
                    break;
                }
                if s.is_zero() {
                    tight.push(i);
                }
            }
            if !feasible {
                continue;
            }
            if tight.len() > n {
                return Err(Error::NonSimple(tight.len()));
            }
            found.insert(tight, x);
        }
        if found.is_empty() {
            return Err(Error::MalformedPolytope("no vertices".into()));
        }
        for f in 0..m {
            if !found.keys().any(|t| t.contains(&f)) {
                return Err(Error::RedundantFacet(f));
            }
        }
        for tight in found.keys() {
            let rows: Vec<Vec<BigRational>> =
                tight.iter().map(|&i| self.normals[i].clone()).collect();
            for j in 0..n {
                // edge direction d with <a_j, d> = 1 and <a_i, d> = 0 otherwise
                let mut rhs = vec![BigRational::zero(); n];
                rhs[j] = BigRational::one();
                let d =
                    solve(rows.clone(), rhs).ok_or(Error::Internal("singular vertex".into()))?;
                let bounded = (0..m).filter(|i| !tight.contains(i)).any(|i| {
                    let mut s = BigRational::zero();
                    for (a, di) in self.normals[i].iter().zip(&d) {
                        s += a * di;
                    }
                    s.is_negative()
                });
                if !bounded {
                    return Err(Error::Unbounded);
                }
            }
        }
        let mut vertices = Vec::with_capacity(found.len());
        let mut points = Vec::with_capacity(found.len());
        for (tight, x) in found {
            let rows: Vec<Vec<BigRational>> =
                tight.iter().map(|&i| self.normals[i].clone()).collect();
            let d = det(rows);
            vertices.push(PolytopeVertex {
                facets: tight,
                sign: if d.is_positive() { 1 } else { -1 },
            });
            points.push(x);
        }
        let data = CombinatorialPolytope::new(n, m, vertices)?;
        // the constructor may reorder facets to normalize signs, but keeps
        // the vertex order
        Ok(Enumeration { data, points })
    }
}

/// Solves `A x = b` for square `A` given by rows; `None` if singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, p);
        b.swap(k, p);
        let inv = a[k][k].recip();
        for x in a[k][k..].iter_mut() {
            *x *= &inv;
        }
        b[k] = &b[k] * &inv;
        let pivot_row = a[k].clone();
        let pivot_b = b[k].clone();
        for r in 0..n {
            if r != k && !a[r][k].is_zero() {
                let f = a[r][k].clone();
                for (x, p) in a[r][k..].iter_mut().zip(&pivot_row[k..]) {
                    *x -= &f * p;
                }
                b[r] -= &f * &pivot_b;
            }
        }
    }
    Some(b)
}

fn det(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut d = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(k, p);
            d = -d;
        }
        d *= &a[k][k];
        let pivot_row = a[k].clone();
        for row in a[k + 1..].iter_mut() {
            if !row[k].is_zero() {
                let f = &row[k] / &pivot_row[k];
                for (x, p) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_vertices() {
        let e = HPolytope::simplex(2).enumerate_vertices().unwrap();
        let pts: Vec<Vec<BigRational>> = [[0, 0], [0, 1], [1, 0]]
            .iter()
            .map(|p| p.iter().map(|&x| rat(x)).collect())
            .collect();
        let mut got = e.points.clone();
        got.sort();
        assert_eq!(got, pts);
        assert_eq!(e.data.num_vertices(), 3);
    }

    #[test]
    fn square_vertices_and_edges() {
        let sq = HPolytope::simplex(1).product(&HPolytope::simplex(1));
        let e = sq.enumerate_vertices().unwrap();
        assert_eq!(e.data.num_vertices(), 4);
        assert_eq!(e.data.edges().len(), 4);
    }

    #[test]
    fn pyramid_is_not_simple() {
        let p = HPolytope::from_integers(
            &[
                vec![0, 0, 1],
                vec![1, 0, -1],
                vec![-1, 0, -1],
                vec![0, 1, -1],
                vec![0, -1, -1],
            ],
            &[0, -1, -1, -1, -1],
        )
        .unwrap();
        assert_eq!(p.enumerate_vertices().unwrap_err(), Error::NonSimple(4));
    }

    #[test]
    fn unbounded_and_redundant() {
        let quadrant = HPolytope::from_integers(&[vec![1, 0], vec![0, 1]], &[0, 0]).unwrap();
        assert_eq!(quadrant.enumerate_vertices().unwrap_err(), Error::Unbounded);
        let extra = HPolytope::from_integers(
            &[vec![1, 0], vec![0, 1], vec![-1, -1], vec![-1, -1]],
            &[0, 0, -1, -3],
        )
        .unwrap();
        assert_eq!(
            extra.enumerate_vertices().unwrap_err(),
            Error::RedundantFacet(3)
        );
    }

    #[test]
    fn polygons_have_k_vertices() {
        for k in 3..12 {
            let e = HPolytope::polygon(k).enumerate_vertices().unwrap();
            assert_eq!(e.data.num_vertices(), k);
        }
    }
}

use crate::error::{Error, Result};
use crate::exterior::{ExteriorPolynomial, Monomial};
use crate::graph::{Dart, Sign, TorusGraph};
use crate::lattice::{self, LatticeVector, Side};

use super::combinatorial::{CombinatorialPolytope, PolytopeVertex};
use super::polytope::HPolytope;

/// A simple polytope (combinatorial, optionally with a geometric realization)
/// together with a characteristic vector `λ(F)` in the cocharacter lattice for
/// every facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasitoricPair {
    base: CombinatorialPolytope,
    polytope: Option<HPolytope>,
    lambda: Vec<LatticeVector>,
}

impl QuasitoricPair {
    /// Condition (★) is not required here; see [`QuasitoricPair::check_star`].
    pub fn new(base: CombinatorialPolytope, lambda: Vec<LatticeVector>) -> Result<Self> {
        if lambda.len() != base.num_facets() {
            return Err(Error::ColumnCount {
                expected: base.num_facets(),
                found: lambda.len(),
            });
        }
        for l in &lambda {
            if l.rank() != base.dimension() {
                return Err(Error::RankMismatch {
                    expected: base.dimension(),
                    found: l.rank(),
                });
            }
            if l.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        Ok(QuasitoricPair {
            base,
            polytope: None,
            lambda,
        })
    }

    pub fn from_polytope(p: HPolytope, lambda: Vec<LatticeVector>) -> Result<Self> {
        if lambda.len() != p.num_facets() {
            return Err(Error::ColumnCount {
                expected: p.num_facets(),
                found: lambda.len(),
            });
        }
        let e = p.enumerate_vertices()?;
        let mut q = Self::new(e.data, lambda)?;
        q.polytope = Some(p);
        Ok(q)
    }

    /// Attaches a geometric realization without re-deriving the
    /// combinatorial data; only the facet count is checked.
    pub fn with_polytope(mut self, p: HPolytope) -> Result<Self> {
        if p.num_facets() != self.base.num_facets() || p.dimension() != self.dimension() {
            return Err(Error::MalformedPolytope(
                "realization does not match the combinatorial data".into(),
            ));
        }
        self.polytope = Some(p);
        Ok(self)
    }

    /// The rank-0 pair: a point with no facets. Unit for products.
    pub fn point() -> Self {
        QuasitoricPair {
            base: CombinatorialPolytope::point(),
            polytope: None,
            lambda: Vec::new(),
        }
    }

    /// `(Δ^n, λ)` with `λ(D_i) = labels[i]`, facets `x_i >= 0` then
    /// `-(x_1 + ... + x_n) >= -1`.
    pub fn simplex(labels: Vec<LatticeVector>) -> Result<Self> {
        let n = labels.len().saturating_sub(1);
        Self::from_polytope(HPolytope::simplex(n), labels)
    }

    /// `(Δ^1, λ₊)`: `λ(D_1) = (1)`, `λ(D_2) = (-1)`.
    pub fn interval_plus() -> Self {
        Self::simplex(vec![
            LatticeVector::new(vec![1]),
            LatticeVector::new(vec![-1]),
        ])
        .unwrap()
    }

    /// `(Δ^1, λ₋)`: `λ(D_1) = (-1)`, `λ(D_2) = (1)`.
    pub fn interval_minus() -> Self {
        Self::simplex(vec![
            LatticeVector::new(vec![-1]),
            LatticeVector::new(vec![1]),
        ])
        .unwrap()
    }

    /// A polygon with facets labelled `labels` counterclockwise, so that the
    /// quasitoric polynomial is `Σ labels[i] ∧ labels[i+1]`.
    pub fn polygon(labels: Vec<LatticeVector>) -> Result<Self> {
        Self::from_polytope(HPolytope::polygon(labels.len()), labels)
    }

    pub fn dimension(&self) -> usize {
        self.base.dimension()
    }

    pub fn base(&self) -> &CombinatorialPolytope {
        &self.base
    }

    pub fn polytope(&self) -> Option<&HPolytope> {
        self.polytope.as_ref()
    }

    pub fn lambda(&self) -> &[LatticeVector] {
        &self.lambda
    }

    pub fn num_vertices(&self) -> usize {
        self.base.num_vertices()
    }

    pub fn num_facets(&self) -> usize {
        self.base.num_facets()
    }

    /// Characteristic vectors of the facets at `v`, in the vertex's order.
    pub fn vertex_matrix(&self, v: usize) -> Vec<LatticeVector> {
        self.base
            .vertex(v)
            .facets
            .iter()
            .map(|&f| self.lambda[f].clone())
            .collect()
    }

    pub fn vertex_det(&self, v: usize) -> Result<i64> {
        lattice::det(&self.vertex_matrix(v))
    }

    /// First vertex where (★) fails, with its determinant.
    pub fn star_failure(&self) -> Result<Option<(usize, i64)>> {
        for v in 0..self.num_vertices() {
            let d = self.vertex_det(v)?;
            if d.abs() != 1 {
                return Ok(Some((v, d)));
            }
        }
        Ok(None)
    }

    pub fn check_star(&self) -> Result<bool> {
        Ok(self.star_failure()?.is_none())
    }

    fn require_star(&self) -> Result<()> {
        match self.star_failure()? {
            None => Ok(()),
            Some((vertex, det)) => Err(Error::StarFails { vertex, det }),
        }
    }

    /// The canonical signed monomial `λ(F_{v_1}) ∧ … ∧ λ(F_{v_n})` of `v`.
    pub fn vertex_monomial(&self, v: usize) -> Monomial {
        Monomial::new(self.base.vertex(v).sign, self.vertex_matrix(v)).canonicalize()
    }

    /// The quasitoric polynomial `𝔤` (cocharacter side).
    pub fn quasitoric_polynomial(&self) -> Result<ExteriorPolynomial> {
        self.require_star()?;
        let terms = (0..self.num_vertices()).map(|v| {
            let m = self.vertex_monomial(v);
            (m.coefficient, m.generators)
        });
        ExteriorPolynomial::from_terms(self.dimension(), Side::Cocharacter, terms)
    }

    /// The oriented torus graph on the 1-skeleton. Vertex `v` keeps id `v`;
    /// the dart leaving `v` off facet `F_{v_i}` has id `v·n + i` and label the
    /// `i`-th column of the inverse transpose of the vertex matrix.
    pub fn torus_graph(&self) -> Result<TorusGraph> {
        self.require_star()?;
        let n = self.dimension();
        let mut vertices = Vec::with_capacity(self.num_vertices());
        let mut darts = Vec::with_capacity(self.num_vertices() * n);
        for v in 0..self.num_vertices() {
            let cols = self.vertex_matrix(v);
            let d = lattice::det(&cols)?;
            let sigma = Sign::from_value(self.base.vertex(v).sign * d)
                .ok_or(Error::Internal("vertex sign".into()))?;
            vertices.push((v as u64, Some(sigma)));
            let dual = lattice::dual_basis(&cols)?;
            for (i, label) in dual.into_iter().enumerate() {
                let w = self.base.neighbor(v, i);
                let j = (0..n)
                    .find(|&j| self.base.neighbor(w, j) == v)
                    .ok_or(Error::Internal("edge without reverse".into()))?;
                darts.push(Dart {
                    id: (v * n + i) as u64,
                    vertex: v as u64,
                    partner: (w * n + j) as u64,
                    label,
                });
            }
        }
        TorusGraph::new(n, vertices, darts)
    }

    /// Product pair with block-diagonal characteristic matrix.
    pub fn product(&self, other: &QuasitoricPair) -> Result<Self> {
        let (n1, n2) = (self.dimension(), other.dimension());
        let lambda = self
            .lambda
            .iter()
            .map(|l| l.embed(0, n2))
            .chain(other.lambda.iter().map(|l| l.embed(n1, 0)))
            .collect();
        let mut q = Self::new(self.base.product(&other.base), lambda)?;
        if let (Some(a), Some(b)) = (&self.polytope, &other.polytope) {
            q.polytope = Some(a.product(b));
        } else if n1 == 0 {
            q.polytope = other.polytope.clone();
        } else if n2 == 0 {
            q.polytope = self.polytope.clone();
        }
        Ok(q)
    }

    /// Connected sum at vertices with canceling monomials. Facets of the
    /// result are `C_v` (the facets of `q1` not at `v`, ascending), then the
    /// identified facets `G_1..G_n` in the order of `v`, then `C_w`. For
    /// `n = 1` there are no `G` facets. Vertices are those of `q1` other than
    /// `v` followed by those of `q2` other than `w`.
    pub fn connected_sum(q1: &Self, v: usize, q2: &Self, w: usize) -> Result<Self> {
        let n = q1.dimension();
        if q2.dimension() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: q2.dimension(),
            });
        }
        if n == 0 {
            return Err(Error::NoCancellation);
        }
        q1.require_star()?;
        q2.require_star()?;
        let (mv, mw) = (q1.vertex_monomial(v), q2.vertex_monomial(w));
        if mv.generators != mw.generators || mv.coefficient + mw.coefficient != 0 {
            return Err(Error::NoCancellation);
        }
        let ev = &q1.base.vertex(v).facets;
        let fw = &q2.base.vertex(w).facets;
        let cv: Vec<usize> = (0..q1.num_facets()).filter(|f| !ev.contains(f)).collect();
        let cw: Vec<usize> = (0..q2.num_facets()).filter(|f| !fw.contains(f)).collect();
        let g = if n == 1 { 0 } else { n };
        let map1 = |f: usize| -> usize {
            match ev.iter().position(|&e| e == f) {
                Some(i) => cv.len() + i,
                None => cv.iter().position(|&c| c == f).unwrap(),
            }
        };
        let mut gmap = vec![0; n];
        for (j, &f) in fw.iter().enumerate() {
            gmap[j] = ev
                .iter()
                .position(|&e| q1.lambda[e] == q2.lambda[f])
                .ok_or(Error::NoCancellation)?;
        }
        let map2 = |f: usize| -> usize {
            match fw.iter().position(|&e| e == f) {
                Some(j) => cv.len() + gmap[j],
                None => cv.len() + g + cw.iter().position(|&c| c == f).unwrap(),
            }
        };
        let mut lambda: Vec<LatticeVector> = cv.iter().map(|&f| q1.lambda[f].clone()).collect();
        if g > 0 {
            lambda.extend(ev.iter().map(|&f| q1.lambda[f].clone()));
        }
        lambda.extend(cw.iter().map(|&f| q2.lambda[f].clone()));

        let mut vertices = Vec::with_capacity(q1.num_vertices() + q2.num_vertices() - 2);
        for (i, x) in q1.base.vertices().iter().enumerate() {
            if i != v {
                vertices.push(PolytopeVertex {
                    facets: x.facets.iter().map(|&f| map1(f)).collect(),
                    sign: x.sign,
                });
            }
        }
        for (i, x) in q2.base.vertices().iter().enumerate() {
            if i != w {
                vertices.push(PolytopeVertex {
                    facets: x.facets.iter().map(|&f| map2(f)).collect(),
                    sign: x.sign,
                });
            }
        }
        let base = CombinatorialPolytope::new(n, lambda.len(), vertices)
            .map_err(|e| Error::Internal(format!("connected sum: {e}")))?;
        Self::new(base, lambda)
    }

    /// Least pair `(v, w)` of vertices with canceling monomials.
    pub fn find_cancelling(q1: &Self, q2: &Self) -> Option<(usize, usize)> {
        let m2: Vec<Monomial> = (0..q2.num_vertices())
            .map(|w| q2.vertex_monomial(w))
            .collect();
        (0..q1.num_vertices()).find_map(|v| {
            let mv = q1.vertex_monomial(v);
            m2.iter()
                .position(|mw| {
                    mw.generators == mv.generators && mw.coefficient + mv.coefficient == 0
                })
                .map(|w| (v, w))
        })
    }

    /// `(P, ΛΣ)`: facet `f` of the result carries `λ(perm[f])`, i.e. the
    /// facets are renamed by the inverse of `perm`.
    pub fn permute_facets(&self, perm: &[usize]) -> Result<Self> {
        let m = self.num_facets();
        let mut inv = vec![usize::MAX; m];
        for (f, &p) in perm.iter().enumerate() {
            if p >= m || inv[p] != usize::MAX {
                return Err(Error::Schema("not a permutation".into()));
            }
            inv[p] = f;
        }
        if perm.len() != m {
            return Err(Error::Schema("not a permutation".into()));
        }
        let base = self.base.permute_facets(&inv)?;
        let lambda = perm.iter().map(|&p| self.lambda[p].clone()).collect();
        Self::new(base, lambda)
    }

    /// Applies the lattice automorphism with columns `u` to every
    /// characteristic vector; (★) is preserved when `u` is unimodular.
    pub fn transform(&self, u: &[LatticeVector]) -> Result<Self> {
        let d = lattice::det(u)?;
        if d.abs() != 1 {
            return Err(Error::NonUnimodular { det: d });
        }
        let n = self.dimension();
        let lambda = self
            .lambda
            .iter()
            .map(|l| {
                let mut acc = LatticeVector::zero(n);
                for (c, x) in u.iter().zip(l.entries()) {
                    acc = acc.checked_add(&c.checked_scale(*x)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut q = Self::new(self.base.clone(), lambda)?;
        q.polytope = self.polytope.clone();
        Ok(q)
    }

    /// Negates `λ(F)`; (★) is preserved.
    pub fn negate_facet(&self, f: usize) -> Self {
        let mut q = self.clone();
        q.lambda[f] = q.lambda[f].neg();
        q
    }
}

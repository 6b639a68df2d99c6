//! Torus graphs: `n`-valent multigraphs stored as darts (oriented edges) with
//! a fixed-point-free reversal involution, an axial label on every dart, and
//! an optional vertex sign.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{ExteriorPolynomial, Monomial};
use crate::lattice::{self, LatticeVector, Side};

pub type VertexId = u64;
pub type DartId = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dart {
    pub id: DartId,
    pub vertex: VertexId,
    pub partner: DartId,
    pub label: LatticeVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct DartData {
    vertex: VertexId,
    partner: DartId,
    label: LatticeVector,
}

/// A (possibly disconnected, possibly empty) torus graph. Disjoint unions are
/// ordinary values of this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusGraph {
    n: usize,
    vertices: BTreeMap<VertexId, Option<Sign>>,
    darts: BTreeMap<DartId, DartData>,
    star: BTreeMap<VertexId, Vec<DartId>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Required,
    Allowed,
}

/// Outcome of checking the axial-function axioms and the orientation
/// relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxialReport {
    pub components: usize,
    /// `α(ē) = ±α(e)` for every dart.
    pub reversal: bool,
    /// Star labels form a basis of `Z^n` at every vertex.
    pub basis: bool,
    /// Star labels at both ends of every edge agree modulo the edge label.
    pub congruence: bool,
    /// `σ(i(e))α(e) = -σ(i(ē))α(ē)`; `None` for unoriented graphs.
    pub orientation: Option<bool>,
    pub failures: Vec<String>,
}

impl AxialReport {
    pub fn passed(&self) -> bool {
        self.reversal && self.basis && self.congruence && self.orientation != Some(false)
    }
}

impl TorusGraph {
    pub fn empty(n: usize) -> Self {
        TorusGraph {
            n,
            vertices: BTreeMap::new(),
            darts: BTreeMap::new(),
            star: BTreeMap::new(),
        }
    }

    /// Structural constructor: checks ids, the dart involution, loops, label
    /// ranks, and that signs are given for all vertices or none. The torus
    /// axioms are checked separately by [`TorusGraph::validate_axial`].
    pub fn new(
        n: usize,
        vertices: impl IntoIterator<Item = (VertexId, Option<Sign>)>,
        darts: impl IntoIterator<Item = Dart>,
    ) -> Result<Self> {
        let mut g = TorusGraph::empty(n);
        for (id, s) in vertices {
            if g.vertices.insert(id, s).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate vertex id {id}")));
            }
            g.star.insert(id, Vec::new());
        }
        let signed = g.vertices.values().filter(|s| s.is_some()).count();
        if signed != 0 && signed != g.vertices.len() {
            return Err(Error::MalformedGraph(
                "signs must be given for all vertices or none".into(),
            ));
        }
        for d in darts {
            if d.label.rank() != n {
                return Err(Error::MalformedGraph(format!(
                    "dart {} label has rank {}, expected {n}",
                    d.id,
                    d.label.rank()
                )));
            }
            if d.label.is_zero() {
                return Err(Error::MalformedGraph(format!(
                    "dart {} has zero label",
                    d.id
                )));
            }
            let Some(star) = g.star.get_mut(&d.vertex) else {
                return Err(Error::MalformedGraph(format!(
                    "dart {} at unknown vertex {}",
                    d.id, d.vertex
                )));
            };
            star.push(d.id);
            let data = DartData {
                vertex: d.vertex,
                partner: d.partner,
                label: d.label,
            };
            if g.darts.insert(d.id, data).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate dart id {}", d.id)));
            }
        }
        for (&id, d) in &g.darts {
            let Some(p) = g.darts.get(&d.partner) else {
                return Err(Error::MalformedGraph(format!(
                    "dart {id} has unknown partner {}",
                    d.partner
                )));
            };
            if d.partner == id || p.partner != id {
                return Err(Error::MalformedGraph(format!(
                    "dart {id}: partner map is not a fixed-point-free involution"
                )));
            }
            if p.vertex == d.vertex {
                return Err(Error::MalformedGraph(format!("dart {id} is a loop")));
            }
        }
        for s in g.star.values_mut() {
            s.sort_unstable();
        }
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_darts(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn sigma(&self, v: VertexId) -> Option<Sign> {
        self.vertices.get(&v).copied().flatten()
    }

    pub fn is_oriented(&self) -> bool {
        self.vertices.values().all(|s| s.is_some())
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.darts.iter().map(|(&id, d)| Dart {
            id,
            vertex: d.vertex,
            partner: d.partner,
            label: d.label.clone(),
        })
    }

    /// Outgoing darts at `v`, ascending by id.
    pub fn star(&self, v: VertexId) -> &[DartId] {
        self.star.get(&v).map_or(&[], |s| s.as_slice())
    }

    pub fn label(&self, e: DartId) -> &LatticeVector {
        &self.darts[&e].label
    }

    pub fn partner(&self, e: DartId) -> DartId {
        self.darts[&e].partner
    }

    pub fn origin(&self, e: DartId) -> VertexId {
        self.darts[&e].vertex
    }

    pub fn target(&self, e: DartId) -> VertexId {
        self.origin(self.partner(e))
    }

    pub fn star_labels(&self, v: VertexId) -> Vec<LatticeVector> {
        self.star(v)
            .iter()
            .map(|e| self.label(*e).clone())
            .collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, Option<Sign>)> + '_ {
        self.vertices.iter().map(|(&v, &s)| (v, s))
    }

    /// Same graph with the given signs (missing vertices keep none).
    pub fn with_orientation(&self, sigma: &BTreeMap<VertexId, Sign>) -> Result<Self> {
        let mut g = self.clone();
        for (v, s) in g.vertices.iter_mut() {
            *s = sigma.get(v).copied();
        }
        if !g.is_oriented() {
            return Err(Error::MalformedGraph("incomplete orientation".into()));
        }
        Ok(g)
    }

    pub fn without_orientation(&self) -> Self {
        let mut g = self.clone();
        for s in g.vertices.values_mut() {
            *s = None;
        }
        g
    }

    /// Negates every vertex sign.
    pub fn reversed(&self) -> Self {
        let mut g = self.clone();
        for s in g.vertices.values_mut() {
            *s = s.map(Sign::flip);
        }
        g
    }

    /// Vertex sets of the connected components, each sorted, ordered by their
    /// least vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.vertices.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in self.star(v) {
                    let w = self.target(e);
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn max_ids(&self) -> (VertexId, DartId) {
        let v = self.vertices.keys().next_back().map_or(0, |&v| v + 1);
        let d = self.darts.keys().next_back().map_or(0, |&d| d + 1);
        (v, d)
    }

    /// Copy of `self` with every vertex id shifted by `dv` and dart id by `dd`.
    pub fn shifted(&self, dv: VertexId, dd: DartId) -> Self {
        TorusGraph {
            n: self.n,
            vertices: self.vertices.iter().map(|(&v, &s)| (v + dv, s)).collect(),
            darts: self
                .darts
                .iter()
                .map(|(&id, d)| {
                    (
                        id + dd,
                        DartData {
                            vertex: d.vertex + dv,
                            partner: d.partner + dd,
                            label: d.label.clone(),
                        },
                    )
                })
                .collect(),
            star: self
                .star
                .iter()
                .map(|(&v, s)| (v + dv, s.iter().map(|e| e + dd).collect()))
                .collect(),
        }
    }

    /// Disjoint union; `other`'s ids are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &TorusGraph) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let (dv, dd) = self.max_ids();
        let other = other.shifted(dv, dd);
        let mut g = self.clone();
        g.vertices.extend(other.vertices);
        g.darts.extend(other.darts);
        g.star.extend(other.star);
        if g.vertices.values().any(|s| s.is_some()) && !g.is_oriented() {
            return Err(Error::MalformedGraph(
                "cannot unite oriented and unoriented graphs".into(),
            ));
        }
        Ok(g)
    }

    fn check_valence(&self) -> Result<()> {
        for (&v, s) in &self.star {
            if s.len() != self.n {
                return Err(Error::Valence {
                    vertex: v,
                    found: s.len(),
                    expected: self.n,
                });
            }
        }
        Ok(())
    }

    /// Checks the torus axial-function axioms and, when signs are present,
    /// the orientation relation.
    pub fn validate_axial(&self, connectivity: Connectivity) -> Result<AxialReport> {
        self.check_valence()?;
        let components = self.components().len();
        if connectivity == Connectivity::Required && components > 1 {
            return Err(Error::Disconnected);
        }
        let mut report = AxialReport {
            components,
            reversal: true,
            basis: true,
            congruence: true,
            orientation: if self.is_oriented() { Some(true) } else { None },
            failures: Vec::new(),
        };

        for v in self.vertex_ids() {
            let d = lattice::det(&self.star_labels(v))?;
            if d.abs() != 1 {
                report.basis = false;
                report
                    .failures
                    .push(format!("vertex {v}: star labels have determinant {d}"));
            }
        }

        for (&e, d) in &self.darts {
            let rev = &self.darts[&d.partner];
            let sign = if rev.label == d.label {
                Some(Sign::Plus)
            } else if rev.label == d.label.neg() {
                Some(Sign::Minus)
            } else {
                None
            };
            let Some(sign) = sign else {
                report.reversal = false;
                report
                    .failures
                    .push(format!("dart {e}: reversal label is not ±label"));
                continue;
            };

            let mut here: Vec<LatticeVector> = self
                .star_labels(d.vertex)
                .iter()
                .map(|x| x.reduce_mod(&d.label))
                .collect::<Result<_>>()?;
            let mut there: Vec<LatticeVector> = self
                .star_labels(rev.vertex)
                .iter()
                .map(|x| x.reduce_mod(&d.label))
                .collect::<Result<_>>()?;
            here.sort();
            there.sort();
            if here != there {
                report.congruence = false;
                report.failures.push(format!(
                    "dart {e}: stars at {} and {} differ modulo {}",
                    d.vertex, rev.vertex, d.label
                ));
            }

            if let (Some(sp), Some(sq)) = (self.sigma(d.vertex), self.sigma(rev.vertex)) {
                // σ(p)α(e) = -σ(q)α(ē) with α(ē) = ε α(e) means σ(p) = -ε σ(q)
                if sp != (sign * sq).flip() {
                    report.orientation = Some(false);
                    report
                        .failures
                        .push(format!("dart {e}: orientation relation fails"));
                }
            }
        }
        Ok(report)
    }

    /// Solves for a vertex sign function satisfying the orientation relation,
    /// ignoring any signs already present. The least vertex of every
    /// component is normalized to `+1`.
    pub fn find_orientation(&self) -> Result<BTreeMap<VertexId, Sign>> {
        let mut sigma: BTreeMap<VertexId, Sign> = BTreeMap::new();
        for comp in self.components() {
            let root = comp[0];
            sigma.insert(root, Sign::Plus);
            let mut queue = VecDeque::from([root]);
            while let Some(p) = queue.pop_front() {
                let sp = sigma[&p];
                for &e in self.star(p) {
                    let d = &self.darts[&e];
                    let rev = &self.darts[&d.partner];
                    let eps = if rev.label == d.label {
                        Sign::Plus
                    } else if rev.label == d.label.neg() {
                        Sign::Minus
                    } else {
                        return Err(Error::InvalidAxial(format!(
                            "dart {e}: reversal label is not ±label"
                        )));
                    };
                    let forced = (eps * sp).flip();
                    match sigma.get(&rev.vertex) {
                        None => {
                            sigma.insert(rev.vertex, forced);
                            queue.push_back(rev.vertex);
                        }
                        Some(&s) if s != forced => return Err(Error::NonOrientable),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(sigma)
    }

    /// The graph with the orientation found by [`TorusGraph::find_orientation`].
    pub fn orient(&self) -> Result<Self> {
        let sigma = self.find_orientation()?;
        self.with_orientation(&sigma)
    }

    /// The canonical monomial `μ_p`: generators sorted, coefficient
    /// `σ(p) · det[sorted star labels]`. For `n = 1` this is `±α(e)` as in the
    /// one-dimensional sign rule.
    pub fn vertex_monomial(&self, v: VertexId) -> Result<Monomial> {
        let sigma = self.sigma(v).ok_or(Error::Unoriented)?;
        let mut labels = self.star_labels(v);
        if labels.len() != self.n {
            return Err(Error::Valence {
                vertex: v,
                found: labels.len(),
                expected: self.n,
            });
        }
        labels.sort();
        let d = lattice::det(&labels)?;
        if d.abs() != 1 {
            return Err(Error::NonUnimodular { det: d });
        }
        Ok(Monomial::new(sigma.value() * d, labels))
    }

    /// The torus polynomial `Σ_p μ_p` on the character side.
    pub fn torus_polynomial(&self) -> Result<ExteriorPolynomial> {
        if !self.is_oriented() {
            return Err(Error::Unoriented);
        }
        let mut terms = Vec::with_capacity(self.vertices.len());
        for v in self.vertex_ids() {
            let m = self.vertex_monomial(v)?;
            terms.push((m.coefficient, m.generators));
        }
        ExteriorPolynomial::from_terms(self.n, Side::Character, terms)
    }

    /// Removes the canceling vertices `p`, `q` and glues the dangling edge
    /// stubs by equal labels.
    fn cancel_vertices(&mut self, p: VertexId, q: VertexId) -> Result<()> {
        let star_q = self.star(q).to_vec();
        let star_p = self.star(p).to_vec();
        let mut glue = Vec::with_capacity(star_p.len());
        for &e in &star_p {
            let f = *star_q
                .iter()
                .find(|&&f| self.label(f) == self.label(e))
                .ok_or(Error::NoCancellation)?;
            glue.push((e, f));
        }
        let mut new_partner = Vec::new();
        for &(e, f) in &glue {
            let x = self.partner(e);
            let y = self.partner(f);
            if x == f {
                // edge between p and q disappears with them
                continue;
            }
            let (vx, vy) = (self.origin(x), self.origin(y));
            if vx == vy {
                return Err(Error::LoopCreated(vx));
            }
            new_partner.push((x, y));
        }
        for (x, y) in new_partner {
            self.darts.get_mut(&x).unwrap().partner = y;
            self.darts.get_mut(&y).unwrap().partner = x;
        }
        for &e in star_p.iter().chain(&star_q) {
            self.darts.remove(&e);
        }
        for v in [p, q] {
            self.vertices.remove(&v);
            self.star.remove(&v);
        }
        Ok(())
    }

    /// Repeatedly removes the lexicographically least pair of vertices whose
    /// monomials cancel, until none remain.
    pub fn prime_reduce(&self) -> Result<Self> {
        let mut g = self.clone();
        loop {
            let mut monos: BTreeMap<Vec<LatticeVector>, Vec<(VertexId, i64)>> = BTreeMap::new();
            for v in g.vertex_ids() {
                let m = g.vertex_monomial(v)?;
                monos
                    .entry(m.generators)
                    .or_default()
                    .push((v, m.coefficient));
            }
            let mut best: Option<(VertexId, VertexId)> = None;
            for group in monos.values() {
                for (i, &(p, cp)) in group.iter().enumerate() {
                    for &(q, cq) in &group[i + 1..] {
                        if cp + cq == 0 {
                            let pair = (p.min(q), p.max(q));
                            if best.is_none_or(|b| pair < b) {
                                best = Some(pair);
                            }
                        }
                    }
                }
            }
            match best {
                None => return Ok(g),
                Some((p, q)) => g.cancel_vertices(p, q)?,
            }
        }
    }

    /// Whether the number of vertices equals the number of monomials of the
    /// torus polynomial counted with multiplicity (and the polynomial is
    /// nonzero).
    pub fn is_prime(&self) -> Result<bool> {
        let h = self.torus_polynomial()?;
        let count: u64 = h.terms().map(|(_, c)| c.unsigned_abs()).sum();
        Ok(!h.is_zero() && count == self.num_vertices() as u64)
    }

    /// Connected sum at vertices `p1 ∈ g1`, `p2 ∈ g2` with `μ_{p1} + μ_{p2} = 0`.
    /// Ids of `g2` are shifted past those of `g1`; the returned map sends old
    /// `g2` vertex ids to new ones.
    pub fn connected_sum(
        g1: &TorusGraph,
        p1: VertexId,
        g2: &TorusGraph,
        p2: VertexId,
    ) -> Result<(TorusGraph, BTreeMap<VertexId, VertexId>)> {
        let m1 = g1.vertex_monomial(p1)?;
        let m2 = g2.vertex_monomial(p2)?;
        if m1.generators != m2.generators || m1.coefficient + m2.coefficient != 0 {
            return Err(Error::NoCancellation);
        }
        let (dv, _) = g1.max_ids();
        let mut g = g1.disjoint_union(g2)?;
        g.cancel_vertices(p1, p2 + dv)?;
        let map = g2
            .vertex_ids()
            .filter(|&v| v != p2)
            .map(|v| (v, v + dv))
            .collect();
        Ok((g, map))
    }

    /// Rebuilds an oriented torus graph from an element of `K_n`: one vertex
    /// per unit of coefficient, darts labelled by the monomial's generators,
    /// and edges obtained by pairing the faces of the dual monomials that
    /// cancel in `d(h^*)`.
    pub fn from_polynomial(h: &ExteriorPolynomial) -> Result<TorusGraph> {
        if !h.in_kn()? {
            return Err(Error::NotInKernel("d(h*) ≠ 0 or h not faithful".into()));
        }
        let n = h.rank();
        struct Stub {
            vertex: usize,
            slot: usize,
        }
        let mut vertices: Vec<(Sign, Vec<LatticeVector>)> = Vec::new();
        // face key -> (positive stubs, negative stubs)
        let mut faces: BTreeMap<Vec<LatticeVector>, (Vec<Stub>, Vec<Stub>)> = BTreeMap::new();
        for (gens, c) in h.terms() {
            let eps = c.signum();
            let d = lattice::det(gens)?;
            let dual = lattice::dual_basis(gens)?;
            let sigma = Sign::from_value(eps * d).ok_or(Error::Internal("bad sign".into()))?;
            for _ in 0..c.unsigned_abs() {
                let vid = vertices.len();
                vertices.push((sigma, gens.to_vec()));
                for j in 0..n {
                    let face: Vec<LatticeVector> = dual
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .map(|(_, s)| s.clone())
                        .collect();
                    let m = Monomial::new(if j % 2 == 0 { eps } else { -eps }, face).canonicalize();
                    let entry = faces.entry(m.generators).or_default();
                    let stub = Stub {
                        vertex: vid,
                        slot: j,
                    };
                    if m.coefficient > 0 {
                        entry.0.push(stub);
                    } else {
                        entry.1.push(stub);
                    }
                }
            }
        }
        let dart_id = |s: &Stub| (s.vertex * n + s.slot) as DartId;
        let mut darts = Vec::with_capacity(vertices.len() * n);
        for (pos, neg) in faces.values() {
            if pos.len() != neg.len() {
                return Err(Error::Internal(
                    "unmatched boundary faces despite d(h*) = 0".into(),
                ));
            }
            // stubs are generated in vertex order, so this is the
            // lexicographically least pairing
            for (a, b) in pos.iter().zip(neg) {
                let (ia, ib) = (dart_id(a), dart_id(b));
                darts.push(Dart {
                    id: ia,
                    vertex: a.vertex as VertexId,
                    partner: ib,
                    label: vertices[a.vertex].1[a.slot].clone(),
                });
                darts.push(Dart {
                    id: ib,
                    vertex: b.vertex as VertexId,
                    partner: ia,
                    label: vertices[b.vertex].1[b.slot].clone(),
                });
            }
        }
        TorusGraph::new(
            n,
            vertices
                .iter()
                .enumerate()
                .map(|(i, (s, _))| (i as VertexId, Some(*s))),
            darts,
        )
    }

    /// The suspended-sphere graph: two vertices joined by `n` parallel edges
    /// labelled by the standard basis in both directions, signs `(+1, -1)`.
    pub fn sphere(n: usize) -> TorusGraph {
        let mut darts = Vec::with_capacity(2 * n);
        for i in 0..n {
            let t = LatticeVector::basis(n, i);
            let (a, b) = (2 * i as DartId, 2 * i as DartId + 1);
            darts.push(Dart {
                id: a,
                vertex: 0,
                partner: b,
                label: t.clone(),
            });
            darts.push(Dart {
                id: b,
                vertex: 1,
                partner: a,
                label: t,
            });
        }
        TorusGraph::new(n, [(0, Some(Sign::Plus)), (1, Some(Sign::Minus))], darts)
            .expect("sphere graph is well formed")
    }

    /// The complete graph on four vertices with `α(v1v2) = α(v3v4) = t1`,
    /// `α(v1v3) = α(v2v4) = t2`, `α(v1v4) = α(v2v3) = t3` and `α(ē) = α(e)`.
    /// Unoriented (it admits no orientation).
    pub fn k4() -> TorusGraph {
        let edges = [
            (0, 1, 0),
            (2, 3, 0),
            (0, 2, 1),
            (1, 3, 1),
            (0, 3, 2),
            (1, 2, 2),
        ];
        let mut darts = Vec::new();
        for (k, &(a, b, t)) in edges.iter().enumerate() {
            let label = LatticeVector::basis(3, t);
            let (da, db) = (2 * k as DartId, 2 * k as DartId + 1);
            darts.push(Dart {
                id: da,
                vertex: a,
                partner: db,
                label: label.clone(),
            });
            darts.push(Dart {
                id: db,
                vertex: b,
                partner: da,
                label,
            });
        }
        TorusGraph::new(3, (0..4).map(|v| (v, None)), darts).expect("K4 is well formed")
    }

    pub fn fixture(name: &str, n: usize) -> Result<TorusGraph> {
        match name {
            "sphere" if n >= 1 => Ok(Self::sphere(n)),
            "k4" if n == 3 => Ok(Self::k4()),
            "sphere" | "k4" => Err(Error::UnknownFixture(format!("{name} in rank {n}"))),
            _ => Err(Error::UnknownFixture(name.to_string())),
        }
    }

    /// Isomorphism preserving labels and signs (or absence of signs).
    pub fn is_isomorphic(&self, other: &TorusGraph) -> bool {
        if self.n != other.n
            || self.num_vertices() != other.num_vertices()
            || self.num_darts() != other.num_darts()
        {
            return false;
        }
        let invariant = |g: &TorusGraph, v: VertexId| {
            let mut l = g.star_labels(v);
            l.sort();
            (g.sigma(v), l)
        };
        let mut used: BTreeSet<VertexId> = BTreeSet::new();
        for comp in self.components() {
            let root = comp[0];
            let inv = invariant(self, root);
            let mut matched = None;
            for cand in other.vertex_ids() {
                if used.contains(&cand) || invariant(other, cand) != inv {
                    continue;
                }
                if let Some(map) = self.extend_isomorphism(other, root, cand, &used) {
                    matched = Some(map);
                    break;
                }
            }
            match matched {
                Some(map) => used.extend(map.values().copied()),
                None => return false,
            }
        }
        true
    }

    fn extend_isomorphism(
        &self,
        other: &TorusGraph,
        root: VertexId,
        image: VertexId,
        used: &BTreeSet<VertexId>,
    ) -> Option<BTreeMap<VertexId, VertexId>> {
        let mut map = BTreeMap::from([(root, image)]);
        let mut taken: BTreeSet<VertexId> = BTreeSet::from([image]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let w = map[&v];
            if self.sigma(v) != other.sigma(w) || self.star(v).len() != other.star(w).len() {
                return None;
            }
            for &e in self.star(v) {
                // labels at a vertex form a basis, so they identify the dart
                let f = *other
                    .star(w)
                    .iter()
                    .find(|&&f| other.label(f) == self.label(e))?;
                let (pe, pf) = (self.partner(e), other.partner(f));
                if self.label(pe) != other.label(pf) {
                    return None;
                }
                let (x, y) = (self.origin(pe), other.origin(pf));
                match map.get(&x) {
                    Some(&y0) if y0 != y => return None,
                    Some(_) => {}
                    None => {
                        if used.contains(&y) || !taken.insert(y) {
                            return None;
                        }
                        map.insert(x, y);
                        queue.push_back(x);
                    }
                }
            }
        }
        Some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::new(x.to_vec())
    }

    /// Triangle graph of the projective plane: vertices 0,1,2, each pair of
    /// vertices joined by one edge; labels are the dual bases of the facet
    /// normals (1,0),(0,1),(-1,-1).
    fn triangle() -> TorusGraph {
        let h = ExteriorPolynomial::from_terms(
            2,
            Side::Cocharacter,
            [
                (1, vec![v(&[1, 0]), v(&[0, 1])]),
                (1, vec![v(&[0, 1]), v(&[-1, -1])]),
                (1, vec![v(&[-1, -1]), v(&[1, 0])]),
            ],
        )
        .unwrap();
        TorusGraph::from_polynomial(&h.dual().unwrap()).unwrap()
    }

    #[test]
    fn sphere_is_valid_and_vanishes() {
        for n in 1..=4 {
            let g = TorusGraph::sphere(n);
            let r = g.validate_axial(Connectivity::Required).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(g.torus_polynomial().unwrap().is_zero());
            let s = g.find_orientation().unwrap();
            assert_eq!(s[&0], Sign::Plus);
            assert_eq!(s[&1], Sign::Minus);
        }
    }

    #[test]
    fn k4_axial_but_not_orientable() {
        let g = TorusGraph::k4();
        let r = g.validate_axial(Connectivity::Required).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.orientation, None);
        assert_eq!(g.find_orientation(), Err(Error::NonOrientable));
    }

    #[test]
    fn basis_failure_is_reported() {
        let darts = vec![
            Dart {
                id: 0,
                vertex: 0,
                partner: 1,
                label: v(&[1, 0]),
            },
            Dart {
                id: 1,
                vertex: 1,
                partner: 0,
                label: v(&[1, 0]),
            },
            Dart {
                id: 2,
                vertex: 0,
                partner: 3,
                label: v(&[2, 0]),
            },
            Dart {
                id: 3,
                vertex: 1,
                partner: 2,
                label: v(&[2, 0]),
            },
        ];
        let g = TorusGraph::new(2, [(0, None), (1, None)], darts).unwrap();
        let r = g.validate_axial(Connectivity::Required).unwrap();
        assert!(!r.basis);
        assert!(!r.passed());
    }

    #[test]
    fn antisymmetric_labels_orient_positively() {
        // the projective line: α(ē) = -α(e)
        let darts = vec![
            Dart {
                id: 0,
                vertex: 0,
                partner: 1,
                label: v(&[1]),
            },
            Dart {
                id: 1,
                vertex: 1,
                partner: 0,
                label: v(&[-1]),
            },
        ];
        let g = TorusGraph::new(1, [(0, None), (1, None)], darts).unwrap();
        let s = g.find_orientation().unwrap();
        assert!(s.values().all(|&x| x == Sign::Plus));
        let h = g.orient().unwrap().torus_polynomial().unwrap();
        assert_eq!(h.num_terms(), 2);
        assert!(h.in_kn().unwrap());
    }

    #[test]
    fn one_dimensional_sign_rule() {
        // α(e) = α(ē) = (1), σ = (+1, -1): μ = +(1) and -(1)
        let g = TorusGraph::sphere(1);
        assert_eq!(
            g.vertex_monomial(0).unwrap(),
            Monomial::new(1, vec![v(&[1])])
        );
        assert_eq!(
            g.vertex_monomial(1).unwrap(),
            Monomial::new(-1, vec![v(&[1])])
        );
        assert!(g.torus_polynomial().unwrap().is_zero());
    }

    #[test]
    fn malformed_graphs() {
        let loop_dart = vec![
            Dart {
                id: 0,
                vertex: 0,
                partner: 1,
                label: v(&[1]),
            },
            Dart {
                id: 1,
                vertex: 0,
                partner: 0,
                label: v(&[1]),
            },
        ];
        assert!(TorusGraph::new(1, [(0, None)], loop_dart).is_err());
        let dangling = vec![Dart {
            id: 0,
            vertex: 0,
            partner: 7,
            label: v(&[1]),
        }];
        assert!(TorusGraph::new(1, [(0, None), (1, None)], dangling).is_err());
        assert!(TorusGraph::new(1, [(0, Some(Sign::Plus)), (1, None)], []).is_err());
        let g = TorusGraph::new(1, [(0, None), (1, None)], []).unwrap();
        assert!(matches!(
            g.validate_axial(Connectivity::Allowed),
            Err(Error::Valence { .. })
        ));
    }

    #[test]
    fn triangle_round_trip() {
        let g = triangle();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_darts(), 6);
        let r = g.validate_axial(Connectivity::Required).unwrap();
        assert!(r.passed(), "{r:?}");
        let h = g.torus_polynomial().unwrap();
        assert!(h.in_kn().unwrap());
        assert_eq!(
            TorusGraph::from_polynomial(&h)
                .unwrap()
                .torus_polynomial()
                .unwrap(),
            h
        );
        assert!(g.is_prime().unwrap());
        assert_eq!(g.prime_reduce().unwrap(), g);
    }

    #[test]
    fn from_polynomial_multiplicity() {
        let h = triangle()
            .torus_polynomial()
            .unwrap()
            .checked_scale(2)
            .unwrap();
        let g = TorusGraph::from_polynomial(&h).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert!(g.validate_axial(Connectivity::Allowed).unwrap().passed());
        assert_eq!(g.torus_polynomial().unwrap(), h);
        assert!(
            TorusGraph::from_polynomial(&ExteriorPolynomial::zero(2, Side::Character))
                .unwrap()
                .is_empty()
        );
        let bad =
            ExteriorPolynomial::from_terms(2, Side::Character, [(1, vec![v(&[1, 0]), v(&[0, 1])])])
                .unwrap();
        assert!(matches!(
            TorusGraph::from_polynomial(&bad),
            Err(Error::NotInKernel(_))
        ));
    }

    #[test]
    fn prime_reduction() {
        assert!(TorusGraph::sphere(3).prime_reduce().unwrap().is_empty());
        let u = TorusGraph::sphere(2).disjoint_union(&triangle()).unwrap();
        let r = u.prime_reduce().unwrap();
        assert!(r.is_isomorphic(&triangle()));
        assert_eq!(r.torus_polynomial().unwrap(), u.torus_polynomial().unwrap());
    }

    #[test]
    fn connected_sums() {
        let t = triangle();
        let mirror = t.reversed();
        let (s, _) = TorusGraph::connected_sum(&t, 0, &mirror, 0).unwrap();
        assert!(s.torus_polynomial().unwrap().is_zero());
        assert!(s.validate_axial(Connectivity::Allowed).unwrap().passed());
        assert_eq!(
            TorusGraph::connected_sum(&t, 0, &t, 0).unwrap_err(),
            Error::NoCancellation
        );
    }

    #[test]
    fn isomorphism_respects_signs() {
        let t = triangle();
        assert!(t.is_isomorphic(&t.shifted(10, 100)));
        assert!(!t.is_isomorphic(&t.reversed()));
        let s = TorusGraph::sphere(2);
        assert!(s.is_isomorphic(&s.reversed()));
        assert!(!s.is_isomorphic(&s.without_orientation()));
    }
}

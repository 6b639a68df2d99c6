//! JSON wire formats and canonical printing.
//!
//! Canonical output has sorted object keys, no insignificant whitespace, and
//! terms, vertices and darts in their canonical orders, so equal values print
//! to identical bytes.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::exterior::ExteriorPolynomial;
use crate::graph::{AxialReport, Dart, Sign, TorusGraph};
use crate::lattice::{LatticeVector, Side};
use crate::localization::{GenusCertificate, LaurentPoly};
use crate::quasitoric::{CombinatorialPolytope, HPolytope, PolytopeVertex, QuasitoricPair};

fn schema<E: std::fmt::Display>(e: E) -> Error {
    Error::Schema(e.to_string())
}

/// Rebuilds every object with its keys in sorted order.
pub fn canonicalize(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, x) in entries {
                out.insert(k, canonicalize(x));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(canonicalize).collect()),
        x => x,
    }
}

pub fn to_canonical_string<T: Serialize>(x: &T) -> Result<String> {
    let v = serde_json::to_value(x).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(canonicalize(v).to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: i64,
    pub gens: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialJson {
    pub n: usize,
    pub side: Side,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn from_polynomial(h: &ExteriorPolynomial) -> Self {
        PolynomialJson {
            n: h.rank(),
            side: h.side(),
            terms: h
                .terms()
                .map(|(g, c)| TermJson {
                    coeff: c,
                    gens: g.iter().map(|v| v.entries().to_vec()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<ExteriorPolynomial> {
        for t in &self.terms {
            if let Some(g) = t.gens.iter().find(|g| g.len() != self.n) {
                return Err(Error::Schema(format!(
                    "generator {g:?} has length {}, expected {}",
                    g.len(),
                    self.n
                )));
            }
        }
        ExteriorPolynomial::from_terms(
            self.n,
            self.side,
            self.terms.iter().map(|t| {
                (
                    t.coeff,
                    t.gens
                        .iter()
                        .map(|g| LatticeVector::new(g.clone()))
                        .collect(),
                )
            }),
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DartJson {
    pub id: u64,
    pub vertex: u64,
    pub partner: u64,
    pub label: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub vertices: Vec<VertexJson>,
    pub darts: Vec<DartJson>,
}

impl GraphJson {
    pub fn from_graph(g: &TorusGraph) -> Self {
        GraphJson {
            n: g.rank(),
            vertices: g
                .vertices()
                .map(|(id, s)| VertexJson {
                    id,
                    sigma: s.map(Sign::value),
                })
                .collect(),
            darts: g
                .darts()
                .map(|d| DartJson {
                    id: d.id,
                    vertex: d.vertex,
                    partner: d.partner,
                    label: d.label.into_entries(),
                })
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<TorusGraph> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| match v.sigma {
                None => Ok((v.id, None)),
                Some(s) => Sign::from_value(s).map(|s| (v.id, Some(s))).ok_or_else(|| {
                    Error::Schema(format!("vertex {} has sigma {s}, expected ±1", v.id))
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        let darts = self.darts.iter().map(|d| Dart {
            id: d.id,
            vertex: d.vertex,
            partner: d.partner,
            label: LatticeVector::new(d.label.clone()),
        });
        TorusGraph::new(self.n, vertices, darts)
    }
}

/// A rational written as `"p/q"`, `"p"`, or a bare JSON integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalJson {
    Int(i64),
    Text(String),
}

impl RationalJson {
    pub fn from_rational(x: &BigRational) -> Self {
        RationalJson::Text(x.to_string())
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            RationalJson::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            RationalJson::Text(s) => {
                let r = BigRational::from_str(s.trim())
                    .map_err(|_| Error::Schema(format!("cannot parse rational {s:?}")))?;
                Ok(r)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HPolytopeJson {
    pub normals: Vec<Vec<RationalJson>>,
    pub offsets: Vec<RationalJson>,
}

impl HPolytopeJson {
    pub fn from_polytope(p: &HPolytope) -> Self {
        HPolytopeJson {
            normals: p
                .normals()
                .iter()
                .map(|a| a.iter().map(RationalJson::from_rational).collect())
                .collect(),
            offsets: p
                .offsets()
                .iter()
                .map(RationalJson::from_rational)
                .collect(),
        }
    }

    pub fn to_polytope(&self) -> Result<HPolytope> {
        let normals = self
            .normals
            .iter()
            .map(|a| a.iter().map(RationalJson::to_rational).collect())
            .collect::<Result<Vec<Vec<BigRational>>>>()?;
        let offsets = self
            .offsets
            .iter()
            .map(RationalJson::to_rational)
            .collect::<Result<Vec<_>>>()?;
        HPolytope::new(normals, offsets)
    }
}

/// Facet incidences (`vertices`, as sorted sets) and positively oriented
/// facet orderings at each vertex. `signs` is needed only in dimension 1,
/// where an ordering of one facet cannot carry an orientation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CombinatorialJson {
    pub facets: usize,
    pub vertices: Vec<Vec<usize>>,
    pub orderings: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i64>>,
}

impl CombinatorialJson {
    pub fn from_base(p: &CombinatorialPolytope) -> Self {
        let signs: Vec<i64> = p.vertices().iter().map(|v| v.sign).collect();
        CombinatorialJson {
            facets: p.num_facets(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| {
                    let mut s = v.facets.clone();
                    s.sort_unstable();
                    s
                })
                .collect(),
            orderings: p.vertices().iter().map(|v| v.facets.clone()).collect(),
            signs: signs.iter().any(|&s| s != 1).then_some(signs),
        }
    }

    pub fn to_base(&self, n: usize) -> Result<CombinatorialPolytope> {
        if self.vertices.len() != self.orderings.len() {
            return Err(Error::Schema(
                "vertices and orderings differ in length".into(),
            ));
        }
        if let Some(s) = &self.signs {
            if s.len() != self.vertices.len() {
                return Err(Error::Schema("signs and vertices differ in length".into()));
            }
        }
        let mut out = Vec::with_capacity(self.vertices.len());
        for (i, (set, ord)) in self.vertices.iter().zip(&self.orderings).enumerate() {
            let mut a = set.clone();
            let mut b = ord.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::Schema(format!(
                    "ordering {i} is not an ordering of vertex {i}"
                )));
            }
            out.push(PolytopeVertex {
                facets: ord.clone(),
                sign: self.signs.as_ref().map_or(1, |s| s[i]),
            });
        }
        if n == 0 {
            return Ok(CombinatorialPolytope::point());
        }
        CombinatorialPolytope::new(n, self.facets, out)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polytope: Option<HPolytopeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combinatorial: Option<CombinatorialJson>,
    pub lambda: Vec<Vec<i64>>,
}

impl PairJson {
    pub fn from_pair(q: &QuasitoricPair) -> Self {
        PairJson {
            n: q.dimension(),
            polytope: q.polytope().map(HPolytopeJson::from_polytope),
            combinatorial: Some(CombinatorialJson::from_base(q.base())),
            lambda: q.lambda().iter().map(|l| l.entries().to_vec()).collect(),
        }
    }

    pub fn to_pair(&self) -> Result<QuasitoricPair> {
        if let Some(l) = self.lambda.iter().find(|l| l.len() != self.n) {
            return Err(Error::Schema(format!(
                "characteristic vector {l:?} has length {}, expected {}",
                l.len(),
                self.n
            )));
        }
        let lambda: Vec<LatticeVector> = self
            .lambda
            .iter()
            .map(|l| LatticeVector::new(l.clone()))
            .collect();
        let polytope = self
            .polytope
            .as_ref()
            .map(HPolytopeJson::to_polytope)
            .transpose()?;
        if let Some(p) = &polytope {
            if p.dimension() != self.n {
                return Err(Error::Schema(format!(
                    "polytope has dimension {}, expected {}",
                    p.dimension(),
                    self.n
                )));
            }
        }
        match (&self.combinatorial, polytope) {
            (Some(c), None) => QuasitoricPair::new(c.to_base(self.n)?, lambda),
            (Some(c), Some(p)) => QuasitoricPair::new(c.to_base(self.n)?, lambda)?.with_polytope(p),
            (None, Some(p)) => QuasitoricPair::from_polytope(p, lambda),
            (None, None) if self.n == 0 => {
                QuasitoricPair::new(CombinatorialPolytope::point(), lambda)
            }
            (None, None) => Err(Error::Schema(
                "a pair needs a polytope or combinatorial data".into(),
            )),
        }
    }
}

pub fn parse_polynomial(s: &str) -> Result<ExteriorPolynomial> {
    serde_json::from_str::<PolynomialJson>(s)
        .map_err(schema)?
        .to_polynomial()
}

pub fn parse_graph(s: &str) -> Result<TorusGraph> {
    serde_json::from_str::<GraphJson>(s)
        .map_err(schema)?
        .to_graph()
}

pub fn parse_pair(s: &str) -> Result<QuasitoricPair> {
    serde_json::from_str::<PairJson>(s)
        .map_err(schema)?
        .to_pair()
}

pub fn parse_hpolytope(s: &str) -> Result<HPolytope> {
    serde_json::from_str::<HPolytopeJson>(s)
        .map_err(schema)?
        .to_polytope()
}

pub fn polynomial_to_json(h: &ExteriorPolynomial) -> String {
    to_canonical_string(&PolynomialJson::from_polynomial(h)).expect("polynomial serializes")
}

pub fn graph_to_json(g: &TorusGraph) -> String {
    to_canonical_string(&GraphJson::from_graph(g)).expect("graph serializes")
}

pub fn pair_to_json(q: &QuasitoricPair) -> String {
    to_canonical_string(&PairJson::from_pair(q)).expect("pair serializes")
}

pub fn hpolytope_to_json(p: &HPolytope) -> String {
    to_canonical_string(&HPolytopeJson::from_polytope(p)).expect("polytope serializes")
}

fn bigint_value(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => Value::from(x),
        None => Value::from(c.to_string()),
    }
}

/// `{"low": e, "coeffs": [...]}`; coefficients beyond `i64` print as strings.
pub fn laurent_to_value(p: &LaurentPoly) -> Value {
    serde_json::json!({
        "low": p.low(),
        "coeffs": p.coeffs().iter().map(bigint_value).collect::<Vec<_>>(),
    })
}

pub fn certificate_to_value(c: &GenusCertificate) -> Value {
    let specs: Vec<Value> = c
        .specializations
        .iter()
        .map(|s| {
            serde_json::json!({
                "xi": s.xi.entries(),
                "passed": s.passed(),
                "orders": s.orders.iter().map(|o| serde_json::json!({
                    "order": o.order,
                    "laurent": o.is_laurent(),
                    "numerator": laurent_to_value(o.value.numerator()),
                    "denominator": laurent_to_value(o.value.denominator()),
                })).collect::<Vec<_>>(),
                "cancellations": s.cancellations.iter().map(|p| serde_json::json!({
                    "order": p.order,
                    "cyclotomic": p.cyclotomic,
                    "weights": p.weights,
                    "before": p.before,
                    "after": p.after,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    canonicalize(serde_json::json!({
        "order": c.order,
        "passed": c.passed(),
        "certifies": "sampled specializations",
        "specializations": specs,
    }))
}

pub fn axial_report_to_value(r: &AxialReport) -> Value {
    canonicalize(serde_json::json!({
        "passed": r.passed(),
        "components": r.components,
        "reversal": r.reversal,
        "basis": r.basis,
        "congruence": r.congruence,
        "orientable": r.orientation,
        "failures": r.failures,
    }))
}

//! The localized genus series along one-parameter subgroups.
//!
//! At a vertex with sign `σ` and weights `w_1, …, w_n` (pairings of the star
//! labels with `ξ`) the order-`k` term of the truncated series is
//! `σ · e_k(z^w_1 − 1, …, z^w_n − 1) / Π (1 − z^w_i)`. Every denominator
//! factors into cyclotomic polynomials, so the sum is formed over the least
//! common multiple of those factors and then reduced by trial division.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::laurent::{divisors, Cyclotomics, LaurentPoly, LaurentRational};
use crate::error::{Error, Result};
use crate::exterior::ExteriorPolynomial;
use crate::graph::TorusGraph;
use crate::lattice::{self, LatticeVector, Side};

pub const DEFAULT_ORDER: usize = 2;
pub const XI_RANGE: i64 = 7;
pub const MAX_XI_DRAWS: usize = 100;

/// Fixed-point data at one vertex: a signed multiplicity and the labels of
/// its star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub sigma: i64,
    pub labels: Vec<LatticeVector>,
}

/// Vertex data of an oriented graph.
pub fn vertex_data(g: &TorusGraph) -> Result<Vec<VertexData>> {
    g.vertex_ids()
        .map(|v| {
            let sigma = g.sigma(v).ok_or(Error::Unoriented)?;
            Ok(VertexData {
                sigma: sigma.value(),
                labels: g.star_labels(v),
            })
        })
        .collect()
}

/// Reads each monomial `c · s_1 ∧ … ∧ s_n` of a character-side polynomial as
/// a vertex with labels `s_i` and multiplicity `c · det[s_1 … s_n]`.
pub fn vertex_data_from_polynomial(h: &ExteriorPolynomial) -> Result<Vec<VertexData>> {
    if h.side() != Side::Character {
        return Err(Error::WrongSide {
            expected: Side::Character.name(),
        });
    }
    let f = h.fixed_point_map()?;
    Ok(f.terms()
        .map(|(labels, c)| VertexData {
            sigma: c,
            labels: labels.to_vec(),
        })
        .collect())
}

/// Pairs every label with `xi`.
pub fn specialize(data: &[VertexData], xi: &LatticeVector) -> Result<Vec<(i64, Vec<i64>)>> {
    data.iter()
        .map(|d| {
            let weights = d
                .labels
                .iter()
                .map(|a| {
                    let w = xi.dot(a)?;
                    if w == 0 {
                        return Err(Error::NonGeneric {
                            label: a.entries().to_vec(),
                        });
                    }
                    Ok(w)
                })
                .collect::<Result<Vec<i64>>>()?;
            Ok((d.sigma, weights))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderValue {
    pub order: usize,
    pub value: LaurentRational,
}

impl OrderValue {
    pub fn is_laurent(&self) -> bool {
        self.value.is_laurent()
    }
}

/// How often `Φ_d` divides the common denominator of one order before and
/// after reduction, with the edge weights `|w|` that contribute it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleCancellation {
    pub order: usize,
    pub cyclotomic: u64,
    pub weights: Vec<u64>,
    pub before: u32,
    pub after: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub xi: LatticeVector,
    pub orders: Vec<OrderValue>,
    pub cancellations: Vec<PoleCancellation>,
}

impl Specialization {
    pub fn passed(&self) -> bool {
        self.orders.iter().all(OrderValue::is_laurent)
    }
}

/// Evidence, one specialization at a time, that the genus series is a Laurent
/// polynomial. A pass certifies the sampled specializations only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusCertificate {
    pub order: usize,
    pub specializations: Vec<Specialization>,
}

impl GenusCertificate {
    pub fn passed(&self) -> bool {
        self.specializations.iter().all(Specialization::passed)
    }
}

fn elementary_symmetric(xs: &[LaurentPoly], k: usize) -> LaurentPoly {
    let mut e = vec![LaurentPoly::zero(); k + 1];
    e[0] = LaurentPoly::one();
    for x in xs {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * x;
            e[j] = &e[j] + &t;
        }
    }
    e[k].clone()
}

struct Term {
    num: LaurentPoly,
    poles: BTreeMap<u64, u32>,
}

fn vertex_term(sigma: i64, weights: &[i64], k: usize) -> Term {
    let xs: Vec<LaurentPoly> = weights
        .iter()
        .map(|&w| LaurentPoly::z_pow_minus_one(w))
        .collect();
    let mut num = elementary_symmetric(&xs, k).scale(&BigInt::from(sigma));
    let mut poles = BTreeMap::new();
    for &w in weights {
        // 1/(1 - z^w) = -1/Π Φ_d for w > 0 and z^|w|/Π Φ_d for w < 0
        num = if w > 0 { -num } else { num.shift(-w) };
        for d in divisors(w.unsigned_abs()) {
            *poles.entry(d).or_insert(0) += 1;
        }
    }
    Term { num, poles }
}

fn series_order(
    spec: &[(i64, Vec<i64>)],
    k: usize,
    cyc: &mut Cyclotomics,
) -> (OrderValue, Vec<PoleCancellation>) {
    let terms: Vec<Term> = spec.iter().map(|(s, w)| vertex_term(*s, w, k)).collect();
    let mut common: BTreeMap<u64, u32> = BTreeMap::new();
    for t in &terms {
        for (&d, &e) in &t.poles {
            let c = common.entry(d).or_insert(0);
            *c = (*c).max(e);
        }
    }
    let mut num = LaurentPoly::zero();
    for t in &terms {
        let mut x = t.num.clone();
        for (&d, &e) in &common {
            let missing = e - t.poles.get(&d).copied().unwrap_or(0);
            if missing > 0 {
                x = &x * &cyc.get(d).pow(missing);
            }
        }
        num = &num + &x;
    }
    let mut remaining = common.clone();
    let mut den = LaurentPoly::one();
    for (&d, e) in remaining.iter_mut() {
        let phi = cyc.get(d).clone();
        while *e > 0 {
            match num.div_exact(&phi) {
                Some(q) if !num.is_zero() => {
                    num = q;
                    *e -= 1;
                }
                _ => break,
            }
        }
        if num.is_zero() {
            *e = 0;
        }
        den = &den * &phi.pow(*e);
    }
    let weights: BTreeSet<u64> = spec
        .iter()
        .flat_map(|(_, w)| w.iter().map(|x| x.unsigned_abs()))
        .collect();
    let log = common
        .iter()
        .map(|(&d, &before)| PoleCancellation {
            order: k,
            cyclotomic: d,
            weights: weights.iter().copied().filter(|w| w % d == 0).collect(),
            before,
            after: remaining[&d],
        })
        .collect();
    let value = if num.is_zero() {
        LaurentRational::zero()
    } else {
        LaurentRational::from_reduced(num, den)
    };
    (OrderValue { order: k, value }, log)
}

/// The truncated genus series at one specialization, orders `0..=order`.
pub fn genus_series(
    data: &[VertexData],
    order: usize,
    xi: &LatticeVector,
) -> Result<GenusCertificate> {
    let spec = specialize(data, xi)?;
    let mut cyc = Cyclotomics::new();
    let mut orders = Vec::with_capacity(order + 1);
    let mut cancellations = Vec::new();
    for k in 0..=order {
        let (v, log) = series_order(&spec, k, &mut cyc);
        orders.push(v);
        cancellations.extend(log);
    }
    Ok(GenusCertificate {
        order,
        specializations: vec![Specialization {
            xi: xi.clone(),
            orders,
            cancellations,
        }],
    })
}

/// The same series summed term by term through general gcd reduction.
pub fn genus_series_by_gcd(
    data: &[VertexData],
    order: usize,
    xi: &LatticeVector,
) -> Result<Vec<LaurentRational>> {
    let spec = specialize(data, xi)?;
    (0..=order)
        .map(|k| {
            let mut acc = LaurentRational::zero();
            for (sigma, weights) in &spec {
                let xs: Vec<LaurentPoly> = weights
                    .iter()
                    .map(|&w| LaurentPoly::z_pow_minus_one(w))
                    .collect();
                let mut den = LaurentPoly::one();
                for &w in weights {
                    den = &den * &(LaurentPoly::one() - LaurentPoly::monomial(BigInt::one(), w));
                }
                let num = elementary_symmetric(&xs, k).scale(&BigInt::from(*sigma));
                acc = acc.checked_add(&LaurentRational::new(num, den)?);
            }
            Ok(acc)
        })
        .collect()
}

/// Draws `xi` with entries in `[-7, 7]` until no label pairs to zero.
pub fn draw_generic_xi<R: Rng>(
    n: usize,
    data: &[VertexData],
    rng: &mut R,
) -> Result<LatticeVector> {
    let labels: BTreeSet<&LatticeVector> = data.iter().flat_map(|d| d.labels.iter()).collect();
    for _ in 0..MAX_XI_DRAWS {
        let xi = LatticeVector::new(
            (0..n)
                .map(|_| rng.gen_range(-XI_RANGE..=XI_RANGE))
                .collect(),
        );
        if labels.iter().all(|a| xi.dot(a).is_ok_and(|w| w != 0)) {
            return Ok(xi);
        }
    }
    Err(Error::NoGenericSpecialization(MAX_XI_DRAWS))
}

/// Runs [`genus_series`] at `trials` independently drawn generic
/// specializations; the result is sorted by `xi`.
pub fn laurent_check(
    n: usize,
    data: &[VertexData],
    trials: usize,
    order: usize,
    seed: u64,
) -> Result<GenusCertificate> {
    for d in data {
        if d.labels.len() != n || d.labels.iter().any(|a| a.rank() != n) {
            return Err(Error::RankMismatch {
                expected: n,
                found: d.labels.first().map_or(0, LatticeVector::rank),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specializations = Vec::with_capacity(trials);
    for _ in 0..trials {
        let xi = draw_generic_xi(n, data, &mut rng)?;
        specializations.extend(genus_series(data, order, &xi)?.specializations);
    }
    specializations.sort_by(|a, b| a.xi.cmp(&b.xi));
    Ok(GenusCertificate {
        order,
        specializations,
    })
}

/// Value at `z = 1` of the order-0 series, checked to agree across `trials`
/// specializations.
pub fn genus_at_one(n: usize, data: &[VertexData], trials: usize, seed: u64) -> Result<i64> {
    let cert = laurent_check(n, data, trials.max(1), 0, seed)?;
    let mut value: Option<BigInt> = None;
    for s in &cert.specializations {
        let v = &s.orders[0].value;
        if !v.is_laurent() {
            return Err(Error::NotLaurent);
        }
        let x = v.numerator().eval_at_one();
        match &value {
            Some(y) if *y != x => {
                return Err(Error::Internal(format!(
                    "genus at one depends on the specialization ({y} vs {x})"
                )))
            }
            _ => value = Some(x),
        }
    }
    value
        .unwrap_or_else(BigInt::zero)
        .to_i64()
        .ok_or(Error::Overflow)
}

/// Vertex data of a graph after checking that every vertex has a
/// unimodular star.
pub fn graph_vertex_data_checked(g: &TorusGraph) -> Result<Vec<VertexData>> {
    let data = vertex_data(g)?;
    for d in &data {
        let det = lattice::det(&d.labels)?;
        if det.abs() != 1 {
            return Err(Error::NonUnimodular { det });
        }
    }
    Ok(data)
}

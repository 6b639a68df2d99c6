//! Seeded generators of random valid pairs, graphs and polynomials.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::ExteriorPolynomial;
use crate::graph::TorusGraph;
use crate::lattice::{self, LatticeVector};
use crate::quasitoric::QuasitoricPair;

fn v(x: &[i64]) -> LatticeVector {
    LatticeVector::new(x.to_vec())
}

/// A unimodular matrix (as columns) with entries in `[-3, 3]`, built from
/// random elementary column operations.
pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> Vec<LatticeVector> {
    loop {
        let mut cols: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for _ in 0..2 * n {
            if n < 2 {
                break;
            }
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let k = if rng.gen_bool(0.5) { 1 } else { -1 };
            let src = cols[j].clone();
            for (a, b) in cols[i].iter_mut().zip(src) {
                *a += k * b;
            }
        }
        cols.shuffle(rng);
        for c in cols.iter_mut() {
            if rng.gen_bool(0.5) {
                c.iter_mut().for_each(|x| *x = -*x);
            }
        }
        if cols.iter().flatten().all(|x| x.abs() <= 3) {
            return cols.into_iter().map(LatticeVector::new).collect();
        }
    }
}

/// `U · x` for `U` given by columns.
pub fn apply(u: &[LatticeVector], x: &LatticeVector) -> LatticeVector {
    let n = x.rank();
    let mut out = vec![0; u.first().map_or(n, LatticeVector::rank)];
    for (c, &k) in u.iter().zip(x.entries()) {
        for (o, &e) in out.iter_mut().zip(c.entries()) {
            *o += k * e;
        }
    }
    LatticeVector::new(out)
}

fn negate_randomly<R: Rng>(q: QuasitoricPair, rng: &mut R) -> QuasitoricPair {
    (0..q.num_facets()).fold(q, |q, f| {
        if rng.gen_bool(0.5) {
            q.negate_facet(f)
        } else {
            q
        }
    })
}

/// `(Δ^n, λ)` with the standard labels moved by a random unimodular matrix
/// and each facet negated with probability 1/2.
pub fn random_simplex_pair<R: Rng>(n: usize, rng: &mut R) -> QuasitoricPair {
    let mut labels: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::basis(n, i)).collect();
    labels.push(LatticeVector::new(vec![-1; n]));
    let u = random_unimodular(n, rng);
    let labels = labels.iter().map(|l| apply(&u, l)).collect();
    let q = QuasitoricPair::simplex(labels).expect("simplex labels satisfy (★)");
    negate_randomly(q, rng)
}

/// Labels of a polygon with `k` sides: a random triangle refined by inserting
/// `a ± b` between neighbours `a`, `b`, which keeps consecutive labels a basis.
pub fn random_polygon_labels<R: Rng>(k: usize, rng: &mut R) -> Vec<LatticeVector> {
    let u = random_unimodular(2, rng);
    let mut labels: Vec<LatticeVector> = [v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])]
        .iter()
        .map(|l| apply(&u, l))
        .collect();
    while labels.len() < k.max(3) {
        let i = rng.gen_range(0..labels.len());
        let a = &labels[i];
        let b = &labels[(i + 1) % labels.len()];
        let c = if rng.gen_bool(0.5) {
            a.checked_add(b)
        } else {
            a.checked_add(&b.neg())
        }
        .expect("small entries");
        if c.entries().iter().any(|x| x.abs() > 6) {
            continue;
        }
        labels.insert(i + 1, c);
    }
    for l in labels.iter_mut() {
        if rng.gen_bool(0.3) {
            *l = l.neg();
        }
    }
    labels
}

pub fn random_polygon_pair<R: Rng>(max_sides: usize, rng: &mut R) -> QuasitoricPair {
    let k = rng.gen_range(3..=max_sides.max(3));
    QuasitoricPair::polygon(random_polygon_labels(k, rng)).expect("polygon labels satisfy (★)")
}

/// The hexagon with labels `(1,0), (1,1), (0,1), (-1,0), (-1,-1), (0,-1)`.
pub fn hexagon_pair() -> QuasitoricPair {
    QuasitoricPair::polygon(vec![
        v(&[1, 0]),
        v(&[1, 1]),
        v(&[0, 1]),
        v(&[-1, 0]),
        v(&[-1, -1]),
        v(&[0, -1]),
    ])
    .expect("hexagon satisfies (★)")
}

/// A random valid pair of dimension `n` in `1..=3`: simplices, polygons,
/// and products of lower-dimensional pairs.
pub fn random_pair<R: Rng>(n: usize, rng: &mut R) -> QuasitoricPair {
    match n {
        0 => QuasitoricPair::point(),
        1 => random_simplex_pair(1, rng),
        2 => match rng.gen_range(0..3) {
            0 => random_simplex_pair(2, rng),
            1 => random_polygon_pair(7, rng),
            _ => random_simplex_pair(1, rng)
                .product(&random_simplex_pair(1, rng))
                .expect("product of valid pairs"),
        },
        _ => match rng.gen_range(0..3) {
            0 => random_simplex_pair(n, rng),
            1 => random_pair(1, rng)
                .product(&random_pair(n - 1, rng))
                .expect("product of valid pairs"),
            _ => random_pair(n - 1, rng)
                .product(&random_pair(1, rng))
                .expect("product of valid pairs"),
        },
    }
}

/// Factors with dimensions `n1 + n2 <= 4`, both positive.
pub fn random_product_instance<R: Rng>(rng: &mut R) -> (QuasitoricPair, QuasitoricPair) {
    let n1 = rng.gen_range(1..=2);
    let n2 = rng.gen_range(1..=(4 - n1).min(2));
    (random_pair(n1, rng), random_pair(n2, rng))
}

/// Inverse of a unimodular matrix given by columns, again as columns.
pub fn unimodular_inverse(cols: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let dual = lattice::dual_basis(cols)?;
    let n = cols.len();
    Ok((0..n)
        .map(|j| LatticeVector::new(dual.iter().map(|d| d.entries()[j]).collect()))
        .collect())
}

/// An admissible connected-sum instance `(q1, v, q2, w)`: `q2` is a random
/// pair moved by a lattice automorphism so that its monomial at `w` cancels
/// the monomial of `q1` at `v`.
pub fn random_connected_sum_instance<R: Rng>(
    n: usize,
    rng: &mut R,
) -> Result<(QuasitoricPair, usize, QuasitoricPair, usize)> {
    let q1 = random_pair(n, rng);
    let q2 = random_pair(n, rng);
    let v = rng.gen_range(0..q1.num_vertices());
    let sv = q1.base().vertex(v).sign;
    let ws: Vec<usize> = (0..q2.num_vertices())
        .filter(|&w| n >= 2 || q2.base().vertex(w).sign == -sv)
        .collect();
    let w = *ws.choose(rng).ok_or(Error::NoCancellation)?;
    let mut target = q1.vertex_matrix(v);
    if n >= 2 {
        target.swap(0, 1);
    }
    let inv = unimodular_inverse(&q2.vertex_matrix(w))?;
    let u: Vec<LatticeVector> = inv.iter().map(|c| apply(&target, c)).collect();
    let q2 = q2.transform(&u)?;
    let (mv, mw) = (q1.vertex_monomial(v), q2.vertex_monomial(w));
    if mv.generators != mw.generators || mv.coefficient + mw.coefficient != 0 {
        return Err(Error::Internal(
            "connected-sum instance does not cancel".into(),
        ));
    }
    Ok((q1, v, q2, w))
}

/// A `K_2` element as a signed sum of one to three polygon polynomials.
pub fn random_k2_element<R: Rng>(rng: &mut R) -> Result<ExteriorPolynomial> {
    let mut h = ExteriorPolynomial::zero(2, crate::lattice::Side::Cocharacter);
    for _ in 0..rng.gen_range(1..=3) {
        let q = random_polygon_pair(6, rng);
        let c = *[-2, -1, 1, 2].choose(rng).unwrap();
        h = h.checked_add(&q.quasitoric_polynomial()?.checked_scale(c)?)?;
    }
    Ok(h)
}

/// A `K_1` element `Σ c_i (a_i) ∧` differences of intervals.
pub fn random_k1_element<R: Rng>(rng: &mut R) -> Result<ExteriorPolynomial> {
    let mut h = ExteriorPolynomial::zero(1, crate::lattice::Side::Cocharacter);
    for _ in 0..rng.gen_range(1..=3) {
        let q = random_simplex_pair(1, rng);
        let c = *[-2, -1, 1, 2].choose(rng).unwrap();
        h = h.checked_add(&q.quasitoric_polynomial()?.checked_scale(c)?)?;
    }
    Ok(h)
}

/// A character-side `K_n` element: a signed sum of duals of random pair
/// polynomials.
pub fn random_kn_element<R: Rng>(n: usize, rng: &mut R) -> Result<ExteriorPolynomial> {
    let mut h = ExteriorPolynomial::zero(n, crate::lattice::Side::Character);
    for _ in 0..rng.gen_range(1..=3) {
        let q = random_pair(n, rng);
        let c = *[-1, 1, 2].choose(rng).unwrap();
        h = h.checked_add(&q.quasitoric_polynomial()?.dual()?.checked_scale(c)?)?;
    }
    Ok(h)
}

/// A faithful character-side polynomial of degree `n` that is not in `K_n`.
pub fn random_faithful_non_kn<R: Rng>(n: usize, rng: &mut R) -> Result<ExteriorPolynomial> {
    loop {
        let terms: Vec<(i64, Vec<LatticeVector>)> = (0..rng.gen_range(1..=n + 2))
            .map(|_| {
                let c = *[-2, -1, 1, 2].choose(rng).unwrap();
                (c, random_unimodular(n, rng))
            })
            .collect();
        let h = ExteriorPolynomial::from_terms(n, crate::lattice::Side::Character, terms)?;
        if !h.is_zero() && !h.in_kn()? {
            return Ok(h);
        }
    }
}

/// Where a corpus graph came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Pair,
    Product,
    ConnectedSum,
    Polynomial,
}

/// `count` oriented valid graphs of rank `1..=3`, cycling through graphs of
/// pairs, products, connected sums and graphs of random `K_n` elements.
pub fn graph_corpus<R: Rng>(count: usize, rng: &mut R) -> Result<Vec<(Provenance, TorusGraph)>> {
    let mut out = Vec::with_capacity(count);
    let mut i = 0usize;
    while out.len() < count {
        let n = 1 + i % 3;
        let item = match (i / 3) % 4 {
            0 => (Provenance::Pair, random_pair(n, rng).torus_graph()?),
            1 => {
                let (a, b) = random_product_instance(rng);
                (Provenance::Product, a.product(&b)?.torus_graph()?)
            }
            2 => {
                let (q1, v, q2, w) = random_connected_sum_instance(n, rng)?;
                let q = QuasitoricPair::connected_sum(&q1, v, &q2, w)?;
                (Provenance::ConnectedSum, q.torus_graph()?)
            }
            _ => {
                let h = random_kn_element(n, rng)?;
                (Provenance::Polynomial, TorusGraph::from_polynomial(&h)?)
            }
        };
        out.push(item);
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            for _ in 0..20 {
                let u = random_unimodular(n, &mut rng);
                assert_eq!(lattice::det(&u).unwrap().abs(), 1);
                let inv = unimodular_inverse(&u).unwrap();
                for i in 0..n {
                    assert_eq!(
                        apply(&u, &apply(&inv, &LatticeVector::basis(n, i))),
                        LatticeVector::basis(n, i)
                    );
                }
            }
        }
    }

    #[test]
    fn random_pairs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=3 {
            for _ in 0..10 {
                let q = random_pair(n, &mut rng);
                assert_eq!(q.dimension(), n);
                assert!(q.check_star().unwrap());
            }
        }
    }

    #[test]
    fn connected_sum_instances_cancel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            for _ in 0..5 {
                let (q1, v, q2, w) = random_connected_sum_instance(n, &mut rng).unwrap();
                assert!(QuasitoricPair::connected_sum(&q1, v, &q2, w).is_ok());
            }
        }
    }

    #[test]
    fn generated_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=3 {
            assert!(random_kn_element(n, &mut rng).unwrap().in_kn().unwrap());
            assert!(!random_faithful_non_kn(n, &mut rng)
                .unwrap()
                .in_kn()
                .unwrap());
        }
        assert!(random_k2_element(&mut rng)
            .unwrap()
            .boundary()
            .unwrap()
            .is_zero());
        assert!(hexagon_pair().check_star().unwrap());
    }

    #[test]
    fn corpus_graphs_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (_, g) in graph_corpus(24, &mut rng).unwrap() {
            assert!(g.is_oriented());
            assert!(g
                .validate_axial(crate::graph::Connectivity::Allowed)
                .unwrap()
                .passed());
        }
    }
}

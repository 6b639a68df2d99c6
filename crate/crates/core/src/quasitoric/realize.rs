//! Realizing kernel polynomials by quasitoric pairs: the interval and polygon
//! constructions and addition of pairs through bounding prism bridges.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::{ExteriorPolynomial, Monomial};
use crate::lattice::{self, LatticeVector, Side};

use super::pair::QuasitoricPair;
use super::polytope::HPolytope;

/// How [`add_pairs`] combined its inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AddCase {
    /// A vertex of each pair had canceling monomials.
    Cancelling,
    /// A chain of bridges was inserted; `shared` is the number of
    /// indeterminates the chosen monomials had in common.
    Bridged { shared: usize, steps: usize },
}

#[derive(Debug, Clone)]
pub struct AddOutcome {
    pub pair: QuasitoricPair,
    pub case: AddCase,
    /// Every bounding pair `(W, β)` used, in order.
    pub bridges: Vec<QuasitoricPair>,
}

/// `h = c((1) - (-1))` in rank 1 is realized by `|c|` copies of `(Δ¹, λ₊)`
/// (or `(Δ¹, λ₋)` when `c < 0`).
pub fn realize_dim1(h: &ExteriorPolynomial) -> Result<Vec<QuasitoricPair>> {
    if h.rank() != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            found: h.rank(),
        });
    }
    if !h.in_fkn()? {
        return Err(Error::NotInKernel("d(h) ≠ 0 or h not faithful".into()));
    }
    let c = h.coefficient(&[LatticeVector::new(vec![1])]);
    let q = if c >= 0 {
        QuasitoricPair::interval_plus()
    } else {
        QuasitoricPair::interval_minus()
    };
    Ok(vec![q; c.unsigned_abs() as usize])
}

/// Decomposes a rank-2 kernel polynomial into directed cycles, realizes each
/// by a polygon and merges the polygons with [`add_pairs`].
pub fn realize_dim2(h: &ExteriorPolynomial) -> Result<QuasitoricPair> {
    if h.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: h.rank(),
        });
    }
    if !h.in_fkn()? {
        return Err(Error::NotInKernel("d(h) ≠ 0 or h not faithful".into()));
    }
    if h.is_zero() {
        return Err(Error::NotInKernel(
            "the zero polynomial has no connected realization".into(),
        ));
    }
    let mut pairs = Vec::new();
    for cycle in circulation_cycles(h) {
        let q = QuasitoricPair::polygon(cycle.clone())?;
        let g = q.quasitoric_polynomial()?;
        let want = cycle_polynomial(&cycle)?;
        let q = if g == want {
            q
        } else if g == want.neg() {
            let mut rev = cycle;
            rev.reverse();
            QuasitoricPair::polygon(rev)?
        } else {
            return Err(Error::Internal("polygon does not realize its cycle".into()));
        };
        pairs.push(q);
    }
    let mut iter = pairs.into_iter();
    let mut acc = iter.next().ok_or(Error::Internal("no cycles".into()))?;
    for q in iter {
        acc = add_pairs(&acc, &q)?;
    }
    if acc.quasitoric_polynomial()? != *h {
        return Err(Error::Internal("realization does not reproduce h".into()));
    }
    Ok(acc)
}

fn cycle_polynomial(cycle: &[LatticeVector]) -> Result<ExteriorPolynomial> {
    let k = cycle.len();
    ExteriorPolynomial::from_terms(
        2,
        Side::Cocharacter,
        (0..k).map(|i| (1, vec![cycle[i].clone(), cycle[(i + 1) % k].clone()])),
    )
}

/// Peels simple directed cycles off the circulation with one arc `a → b` per
/// unit of positive coefficient on `a ∧ b` (and `b → a` for negative ones).
/// Walks always follow the least available arc.
fn circulation_cycles(h: &ExteriorPolynomial) -> Vec<Vec<LatticeVector>> {
    let mut arcs: BTreeMap<LatticeVector, Vec<LatticeVector>> = BTreeMap::new();
    for (gens, c) in h.terms() {
        let (a, b) = if c > 0 {
            (&gens[0], &gens[1])
        } else {
            (&gens[1], &gens[0])
        };
        let out = arcs.entry(a.clone()).or_default();
        out.extend(std::iter::repeat_n(b.clone(), c.unsigned_abs() as usize));
    }
    for out in arcs.values_mut() {
        out.sort();
    }
    let mut cycles = Vec::new();
    while let Some(start) = arcs
        .iter()
        .find(|(_, o)| !o.is_empty())
        .map(|(k, _)| k.clone())
    {
        let mut path = vec![start.clone()];
        let mut cur = start;
        let cycle = loop {
            let next = arcs[&cur][0].clone();
            if let Some(i) = path.iter().position(|x| *x == next) {
                break path.split_off(i);
            }
            path.push(next.clone());
            cur = next;
        };
        for (i, a) in cycle.iter().enumerate() {
            let b = &cycle[(i + 1) % cycle.len()];
            let out = arcs.get_mut(a).unwrap();
            let pos = out.iter().position(|x| x == b).unwrap();
            out.remove(pos);
        }
        cycles.push(cycle);
    }
    cycles
}

/// The bounding pair `(W, β) = (Q, η) # (Q, η̃)` with `Q = Δ¹ × Δ^{n-1}`
/// that trades `remove` for `add` in the basis `basis`. `W` has vertices
/// carrying both signs of the monomials of `basis` and of the new basis.
pub fn bridge_pair(
    basis: &[LatticeVector],
    remove: &LatticeVector,
    add: &LatticeVector,
) -> Result<QuasitoricPair> {
    let n = basis.len();
    if n < 2 {
        return Err(Error::BridgeFailed("bridges need rank at least 2".into()));
    }
    let rest: Vec<LatticeVector> = basis.iter().filter(|s| *s != remove).cloned().collect();
    if rest.len() != n - 1 {
        return Err(Error::BridgeFailed(format!("{remove} is not in the basis")));
    }
    let mut frak = LatticeVector::zero(n);
    for s in &rest {
        frak = frak.checked_add(s)?;
    }
    let q = HPolytope::simplex(1).product(&HPolytope::simplex(n - 1));
    let labels = |bottom: &LatticeVector, top: &LatticeVector| {
        let mut l = vec![bottom.clone(), top.clone()];
        l.extend(rest.iter().cloned());
        l.push(frak.clone());
        l
    };
    let eta = QuasitoricPair::from_polytope(q.clone(), labels(add, remove))?;
    let eta_t = QuasitoricPair::from_polytope(q, labels(remove, add))?;
    for (name, p) in [("η", &eta), ("η̃", &eta_t)] {
        if let Some((v, d)) = p.star_failure()? {
            return Err(Error::BridgeFailed(format!(
                "prism {name} replacing {remove} by {add}: vertex {v} has determinant {d}"
            )));
        }
    }
    let g = eta.quasitoric_polynomial()?;
    if !g.checked_add(&eta_t.quasitoric_polynomial()?)?.is_zero() {
        return Err(Error::BridgeFailed(
            "prisms do not have opposite polynomials".into(),
        ));
    }
    // the vertex on the top facet and the sides D_2..D_n
    let top: Vec<usize> = std::iter::once(1).chain(3..n + 2).collect();
    let qv = eta
        .base()
        .vertex_on(&top)
        .ok_or(Error::Internal("prism vertex missing".into()))?;
    let mq = eta.vertex_monomial(qv);
    let qt = (0..eta_t.num_vertices())
        .find(|&u| is_negation(&eta_t.vertex_monomial(u), &mq))
        .ok_or(Error::BridgeFailed("no canceling prism vertex".into()))?;
    let w = QuasitoricPair::connected_sum(&eta, qv, &eta_t, qt)?;
    if !w.check_star()? || !w.quasitoric_polynomial()?.is_zero() {
        return Err(Error::BridgeFailed("bridge is not a bounding pair".into()));
    }
    Ok(w)
}

fn is_negation(a: &Monomial, b: &Monomial) -> bool {
    a.generators == b.generators && a.coefficient + b.coefficient == 0
}

type Path = Vec<(LatticeVector, LatticeVector)>;

/// Paths of single-element exchanges through bases, preferring direct swaps
/// of target vectors and falling back to elementary column operations.
fn exchange_paths(from: &[LatticeVector], to: &[LatticeVector]) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    if from == to {
        let a = from[0].clone();
        let b = a.checked_add(&from[1])?;
        out.push(vec![(a.clone(), b.clone()), (b, a)]);
        return Ok(out);
    }
    let mut path = Vec::new();
    if swap_path(from.to_vec(), to, &mut path)? {
        out.push(path);
    }
    let e = elementary_path(from, to)?;
    if !out.contains(&e) {
        out.push(e);
    }
    Ok(out)
}

fn swap_path(cur: Vec<LatticeVector>, to: &[LatticeVector], path: &mut Path) -> Result<bool> {
    let missing: Vec<&LatticeVector> = to.iter().filter(|b| !cur.contains(b)).collect();
    if missing.is_empty() {
        return Ok(true);
    }
    let extra: Vec<LatticeVector> = cur.iter().filter(|a| !to.contains(a)).cloned().collect();
    for a in &extra {
        for &b in &missing {
            let mut next: Vec<LatticeVector> = cur
                .iter()
                .map(|x| if x == a { b.clone() } else { x.clone() })
                .collect();
            if lattice::det(&next)?.abs() != 1 {
                continue;
            }
            next.sort();
            path.push((a.clone(), b.clone()));
            if swap_path(next, to, path)? {
                return Ok(true);
            }
            path.pop();
        }
    }
    Ok(false)
}

/// Column-reduces the coordinates of `from` in the basis `to` to a signed
/// permutation; each column operation replaces one basis vector.
fn elementary_path(from: &[LatticeVector], to: &[LatticeVector]) -> Result<Path> {
    let n = from.len();
    let dual = lattice::dual_basis(to)?;
    let mut cur: Vec<LatticeVector> = from.to_vec();
    let mut m: Vec<Vec<i64>> = cur
        .iter()
        .map(|c| dual.iter().map(|d| d.dot(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut path = Vec::new();
    let mut op = |cur: &mut Vec<LatticeVector>,
                  m: &mut Vec<Vec<i64>>,
                  i: usize,
                  j: usize,
                  k: i64|
     -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        let new = cur[i].checked_add(&cur[j].checked_scale(k)?)?;
        path.push((cur[i].clone(), new.clone()));
        cur[i] = new;
        let mj = m[j].clone();
        for (x, y) in m[i].iter_mut().zip(&mj) {
            *x += k * y;
        }
        Ok(())
    };
    let mut free: Vec<usize> = (0..n).collect();
    let mut pivot = vec![0; n];
    for r in 0..n {
        loop {
            let nz: Vec<usize> = free.iter().copied().filter(|&c| m[c][r] != 0).collect();
            let p = *nz
                .iter()
                .min_by_key(|&&c| (m[c][r].abs(), c))
                .ok_or(Error::Internal("singular basis change".into()))?;
            if nz.len() == 1 {
                pivot[r] = p;
                free.retain(|&c| c != p);
                break;
            }
            for &c in &nz {
                if c != p {
                    let q = m[c][r] / m[p][r];
                    op(&mut cur, &mut m, c, p, -q)?;
                }
            }
        }
    }
    for r in 0..n {
        let pr = pivot[r];
        for &pk in &pivot[..r] {
            let k = -m[pk][r] * m[pr][r];
            op(&mut cur, &mut m, pk, pr, k)?;
        }
    }
    for &p in &pivot {
        if m[p].iter().sum::<i64>() < 0 {
            let new = cur[p].neg();
            path.push((cur[p].clone(), new.clone()));
            cur[p] = new;
        }
    }
    Ok(path)
}

/// Merges two pairs into one whose quasitoric polynomial is the sum.
pub fn add_pairs(q1: &QuasitoricPair, q2: &QuasitoricPair) -> Result<QuasitoricPair> {
    add_pairs_traced(q1, q2).map(|o| o.pair)
}

pub fn add_pairs_traced(q1: &QuasitoricPair, q2: &QuasitoricPair) -> Result<AddOutcome> {
    let n = q1.dimension();
    if q2.dimension() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: q2.dimension(),
        });
    }
    let target = q1
        .quasitoric_polynomial()?
        .checked_add(&q2.quasitoric_polynomial()?)?;
    let finish = |pair: QuasitoricPair, case: AddCase, bridges: Vec<QuasitoricPair>| {
        if pair.quasitoric_polynomial()? != target {
            return Err(Error::Internal(
                "sum of pairs changed the polynomial".into(),
            ));
        }
        Ok(AddOutcome {
            pair,
            case,
            bridges,
        })
    };
    if let Some((v, w)) = QuasitoricPair::find_cancelling(q1, q2) {
        let pair = QuasitoricPair::connected_sum(q1, v, q2, w)?;
        return finish(pair, AddCase::Cancelling, Vec::new());
    }
    if n < 2 {
        return Err(Error::BridgeFailed(
            "rank-1 pairs can only be summed at canceling vertices".into(),
        ));
    }
    let mut candidates = Vec::new();
    for v1 in 0..q1.num_vertices() {
        let a = q1.vertex_monomial(v1).generators;
        for v2 in 0..q2.num_vertices() {
            let b = q2.vertex_monomial(v2).generators;
            let shared = a.iter().filter(|x| b.contains(x)).count();
            let rank = if shared == n { usize::MAX } else { n - shared };
            candidates.push((rank, v1, v2, shared));
        }
    }
    candidates.sort();
    let mut last_err = Error::Internal("no vertex pairs".into());
    for (_, v1, v2, shared) in candidates {
        let a = q1.vertex_monomial(v1).generators;
        let mb = q2.vertex_monomial(v2);
        for path in exchange_paths(&a, &mb.generators)? {
            match bridge_chain(q1, v1, q2, v2, &path) {
                Ok((pair, bridges)) => {
                    let case = AddCase::Bridged {
                        shared,
                        steps: path.len(),
                    };
                    return finish(pair, case, bridges);
                }
                Err(e @ Error::BridgeFailed(_)) => last_err = e,
                Err(e) => return Err(e),
            }
        }
    }
    Err(last_err)
}

fn bridge_chain(
    q1: &QuasitoricPair,
    v1: usize,
    q2: &QuasitoricPair,
    v2: usize,
    path: &Path,
) -> Result<(QuasitoricPair, Vec<QuasitoricPair>)> {
    let want = q2.vertex_monomial(v2);
    let mut cur = q1.clone();
    let mut p = v1;
    let mut bridges = Vec::with_capacity(path.len());
    for (step, (a, b)) in path.iter().enumerate() {
        let mp = cur.vertex_monomial(p);
        let w = bridge_pair(&mp.generators, a, b)?;
        let u = (0..w.num_vertices())
            .find(|&u| is_negation(&w.vertex_monomial(u), &mp))
            .ok_or(Error::BridgeFailed(
                "bridge lacks a canceling vertex".into(),
            ))?;
        let tail = cur.num_vertices() - 1;
        cur = QuasitoricPair::connected_sum(&cur, p, &w, u)?;
        bridges.push(w);
        let mut gens: Vec<LatticeVector> = mp
            .generators
            .iter()
            .map(|x| if x == a { b.clone() } else { x.clone() })
            .collect();
        gens.sort();
        let last = step + 1 == path.len();
        p = (tail..cur.num_vertices())
            .find(|&x| {
                let m = cur.vertex_monomial(x);
                m.generators == gens && (!last || is_negation(&m, &want))
            })
            .ok_or(Error::BridgeFailed(
                "bridge lacks the exchanged monomial".into(),
            ))?;
    }
    let pair = QuasitoricPair::connected_sum(&cur, p, q2, v2)?;
    Ok((pair, bridges))
}

/// The standard labels `s_0 = e_1`, `s_1 = e_2`, `s_2 = e_3`,
/// `s_3 = -(e_1 + e_2 + e_3)` of the tetrahedron.
pub fn tetrahedron_labels() -> Vec<LatticeVector> {
    vec![
        LatticeVector::new(vec![1, 0, 0]),
        LatticeVector::new(vec![0, 1, 0]),
        LatticeVector::new(vec![0, 0, 1]),
        LatticeVector::new(vec![-1, -1, -1]),
    ]
}

/// The polynomial of the four-vertex torus triangulation,
/// `2(s0∧s1∧s2 + s1∧s3∧s2 + s0∧s3∧s1 + s0∧s2∧s3)`, and `(Δ³, δ)` with
/// `δ(D_i) = s_i`.
pub fn tetrahedron_fixture() -> Result<(ExteriorPolynomial, QuasitoricPair)> {
    let s = tetrahedron_labels();
    let tri = [[0, 1, 2], [1, 3, 2], [0, 3, 1], [0, 2, 3]];
    let h = ExteriorPolynomial::from_terms(
        3,
        Side::Cocharacter,
        tri.iter()
            .map(|t| (2, t.iter().map(|&i| s[i].clone()).collect())),
    )?;
    Ok((h, QuasitoricPair::simplex(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::new(x.to_vec())
    }

    fn cp2(a: &[i64], b: &[i64], c: &[i64]) -> QuasitoricPair {
        QuasitoricPair::simplex(vec![v(a), v(b), v(c)]).unwrap()
    }

    #[test]
    fn dim1() {
        let t = ExteriorPolynomial::from_terms(
            1,
            Side::Cocharacter,
            [(1, vec![v(&[1])]), (-1, vec![v(&[-1])])],
        )
        .unwrap();
        let r = realize_dim1(&t.checked_scale(3).unwrap()).unwrap();
        assert_eq!(r, vec![QuasitoricPair::interval_plus(); 3]);
        let r = realize_dim1(&t.checked_scale(-2).unwrap()).unwrap();
        assert_eq!(r, vec![QuasitoricPair::interval_minus(); 2]);
        assert!(
            realize_dim1(&ExteriorPolynomial::zero(1, Side::Cocharacter))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn dim2_triangle_and_sum() {
        let q = cp2(&[1, 0], &[0, 1], &[-1, -1]);
        let h = q.quasitoric_polynomial().unwrap();
        let r = realize_dim2(&h).unwrap();
        assert_eq!(r.num_vertices(), 3);
        let h2 = cp2(&[2, 1], &[1, 1], &[-3, -2])
            .quasitoric_polynomial()
            .unwrap();
        let sum = h.checked_add(&h2).unwrap();
        assert_eq!(
            realize_dim2(&sum).unwrap().quasitoric_polynomial().unwrap(),
            sum
        );
        assert!(realize_dim2(&ExteriorPolynomial::zero(2, Side::Cocharacter)).is_err());
    }

    #[test]
    fn bridges_are_bounding() {
        let basis = vec![v(&[0, 1]), v(&[1, 0])];
        let w = bridge_pair(&basis, &v(&[1, 0]), &v(&[1, 1])).unwrap();
        assert!(w.quasitoric_polynomial().unwrap().is_zero());
        let basis3 = tetrahedron_labels()[..3].to_vec();
        let w = bridge_pair(&basis3, &v(&[1, 0, 0]), &v(&[-1, -1, -1])).unwrap();
        assert!(w.quasitoric_polynomial().unwrap().is_zero());
        assert_eq!(w.num_vertices(), 4 * 3 - 2);
    }

    #[test]
    fn add_cases() {
        let a = cp2(&[1, 0], &[0, 1], &[-1, -1]);
        let b = cp2(&[0, 1], &[1, 0], &[-1, -1]);
        assert_eq!(add_pairs_traced(&a, &b).unwrap().case, AddCase::Cancelling);
        let c = cp2(&[1, 0], &[1, 1], &[-2, -1]);
        let o = add_pairs_traced(&a, &c).unwrap();
        assert!(matches!(o.case, AddCase::Bridged { .. }));
        let d = cp2(&[2, 1], &[1, 1], &[-3, -2]);
        let o = add_pairs_traced(&a, &d).unwrap();
        assert!(matches!(o.case, AddCase::Bridged { .. }));
        let o = add_pairs_traced(&a, &a).unwrap();
        assert!(matches!(o.case, AddCase::Bridged { .. }));
    }

    #[test]
    fn tetrahedron() {
        let (h, q) = tetrahedron_fixture().unwrap();
        assert!(h.in_fkn().unwrap());
        let g = q.quasitoric_polynomial().unwrap();
        assert_eq!(h, g.checked_scale(2).unwrap());
        let s = add_pairs(&q, &q).unwrap();
        assert_eq!(s.quasitoric_polynomial().unwrap(), h);
    }

    #[test]
    fn elementary_paths_reach_target() {
        let from = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        let to = vec![v(&[1, 2, 3]), v(&[0, 1, 4]), v(&[0, 0, -1])];
        let path = elementary_path(&from, &to).unwrap();
        let mut cur = from.clone();
        for (a, b) in &path {
            let i = cur.iter().position(|x| x == a).unwrap();
            cur[i] = b.clone();
            assert_eq!(lattice::det(&cur).unwrap().abs(), 1);
        }
        cur.sort();
        let mut t = to.clone();
        t.sort();
        assert_eq!(cur, t);
    }
}

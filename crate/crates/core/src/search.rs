//! Exhaustive search for small elements of `K_n`.
//!
//! A faithful polynomial `h = Σ c_i m_i` lies in `K_n` exactly when
//! `Σ c_i d(m_i*) = 0`, so a nonzero element supported on a set `S` of
//! monomials exists iff the boundary vectors of `S` are linearly dependent.
//! The search enumerates every unimodular monomial with generator entries in
//! `[-B, B]` and tests every subset of bounded size, which covers all integer
//! coefficient choices at once.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exterior::ExteriorPolynomial;
use crate::lattice::{self, LatticeVector, Side};

/// Outcome of [`min_support_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinSupportReport {
    pub n: usize,
    pub bound: i64,
    /// Number of faithful monomials (up to sign) in the search space.
    pub monomials: usize,
    /// Subsets of size at most `n` whose boundary vectors were tested.
    pub subsets_checked: u64,
    /// A nonzero `K_n` element with at most `n` monomials, if one exists.
    pub counterexample: Option<ExteriorPolynomial>,
    /// The first nonzero `K_n` element found with exactly `n + 1` monomials.
    pub witness: Option<ExteriorPolynomial>,
}

impl MinSupportReport {
    pub fn confirmed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// All sorted `n`-tuples of distinct nonzero vectors with entries in
/// `[-bound, bound]` forming a lattice basis.
pub fn faithful_monomials(n: usize, bound: i64) -> Result<Vec<Vec<LatticeVector>>> {
    if bound < 1 {
        return Err(Error::Schema("bound must be positive".into()));
    }
    let vectors: Vec<LatticeVector> = (0..n)
        .map(|_| -bound..=bound)
        .multi_cartesian_product()
        .map(LatticeVector::new)
        .filter(|x| !x.is_zero())
        .sorted()
        .collect();
    let mut out = Vec::new();
    for c in vectors.into_iter().combinations(n) {
        if lattice::det(&c)?.abs() == 1 {
            out.push(c);
        }
    }
    Ok(out)
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Kernel of the matrix with the given columns, as integer vectors.
fn kernel(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = cols.len();
    let rows = cols.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| cols.iter().map(|c| rat(c[r])).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); k];
            x[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -a[i][f].clone();
            }
            let l = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            x.iter()
                .map(|q| {
                    (q * BigRational::from_integer(l.clone()))
                        .to_integer()
                        .to_i64()
                        .unwrap_or(0)
                })
                .collect()
        })
        .collect()
}

fn boundary_vectors(monos: &[Vec<LatticeVector>], n: usize) -> Result<Vec<Vec<i64>>> {
    let mut index: BTreeMap<Vec<LatticeVector>, usize> = BTreeMap::new();
    let mut sparse = Vec::with_capacity(monos.len());
    for m in monos {
        let h = ExteriorPolynomial::from_terms(n, Side::Character, [(1, m.clone())])?;
        let d = h.dual()?.boundary()?;
        let entries: Vec<(usize, i64)> = d
            .terms()
            .map(|(g, c)| {
                let next = index.len();
                (*index.entry(g.to_vec()).or_insert(next), c)
            })
            .collect();
        sparse.push(entries);
    }
    let dim = index.len();
    Ok(sparse
        .into_iter()
        .map(|e| {
            let mut v = vec![0; dim];
            for (i, c) in e {
                v[i] = c;
            }
            v
        })
        .collect())
}

/// Checks that no nonzero `K_n` element with at most `n` faithful monomials
/// (generator entries in `[-bound, bound]`) exists, and exhibits one with
/// `n + 1` monomials.
pub fn min_support_search(n: usize, bound: i64) -> Result<MinSupportReport> {
    if n == 0 {
        return Err(Error::Schema("rank must be positive".into()));
    }
    let monos = faithful_monomials(n, bound)?;
    let vecs = boundary_vectors(&monos, n)?;
    let build = |subset: &[usize], coeffs: &[i64]| -> Result<ExteriorPolynomial> {
        ExteriorPolynomial::from_terms(
            n,
            Side::Character,
            subset
                .iter()
                .zip(coeffs)
                .map(|(&i, &c)| (c, monos[i].clone())),
        )
    };
    let mut checked = 0u64;
    let mut counterexample = None;
    'outer: for size in 1..=n {
        for subset in (0..monos.len()).combinations(size) {
            checked += 1;
            let cols: Vec<Vec<i64>> = subset.iter().map(|&i| vecs[i].clone()).collect();
            if let Some(k) = kernel(&cols).into_iter().next() {
                counterexample = Some(build(&subset, &k)?);
                break 'outer;
            }
        }
    }
    let mut witness = None;
    for subset in (0..monos.len()).combinations(n + 1) {
        let cols: Vec<Vec<i64>> = subset.iter().map(|&i| vecs[i].clone()).collect();
        let ker = kernel(&cols);
        if let [k] = ker.as_slice() {
            if k.iter().all(|c| *c != 0) {
                let k: Vec<i64> = if k[0].is_negative() {
                    k.iter().map(|c| -c).collect()
                } else {
                    k.clone()
                };
                let h = build(&subset, &k)?;
                if !h.in_kn()? {
                    return Err(Error::Internal("search witness is not in K_n".into()));
                }
                witness = Some(h);
                break;
            }
        }
    }
    Ok(MinSupportReport {
        n,
        bound,
        monomials: monos.len(),
        subsets_checked: checked,
        counterexample,
        witness,
    })
}

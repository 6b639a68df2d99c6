//! Integer lattice vectors and the small dense integer matrices built from
//! them. Matrices are always given as a list of columns.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which lattice a vector lives in: characters `Hom(T^n, S^1)` or
/// cocharacters `Hom(S^1, T^n)`. Both are `Z^n`; the tag keeps the two
/// exterior algebras from being mixed by accident.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "char")]
    Character,
    #[serde(rename = "cochar")]
    Cocharacter,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Character => Side::Cocharacter,
            Side::Cocharacter => Side::Character,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Character => "char",
            Side::Cocharacter => "cochar",
        }
    }
}

/// An integer vector. Ordering is lexicographic on the entries, which is the
/// order used to canonicalize exterior monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(entries: Vec<i64>) -> Self {
        LatticeVector(entries)
    }

    /// The `i`-th standard basis vector of `Z^n`.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        LatticeVector(v)
    }

    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// True when the entries have gcd one.
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
    }

    pub fn dot(&self, other: &LatticeVector) -> Result<i64> {
        let mut acc: i64 = 0;
        for (a, b) in self.0.iter().zip(&other.0) {
            let p = a.checked_mul(*b).ok_or(Error::Overflow)?;
            acc = acc.checked_add(p).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    pub fn checked_add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn checked_scale(&self, k: i64) -> Result<LatticeVector> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()
            .map(LatticeVector)
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| -x).collect())
    }

    /// Pads with `before` leading and `after` trailing zeros.
    pub fn embed(&self, before: usize, after: usize) -> LatticeVector {
        let mut v = vec![0; before];
        v.extend_from_slice(&self.0);
        v.extend(std::iter::repeat_n(0, after));
        LatticeVector(v)
    }

    /// Canonical representative of the class of `self` in `Z^n / <modulus>`.
    /// Two vectors are congruent modulo `modulus` iff their representatives
    /// agree. `modulus` must be nonzero.
    pub fn reduce_mod(&self, modulus: &LatticeVector) -> Result<LatticeVector> {
        let j = modulus
            .0
            .iter()
            .position(|&x| x != 0)
            .ok_or(Error::ZeroGenerator)?;
        let a = modulus.0[j];
        let x = self.0[j];
        let r = x.rem_euclid(a.abs());
        let k = (r - x) / a;
        self.checked_add(&modulus.checked_scale(k)?)
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// Determinant of the square matrix whose columns are `cols`, by fraction-free
/// (Bareiss) elimination in `i128`.
pub fn det(cols: &[LatticeVector]) -> Result<i64> {
    let n = cols.len();
    if n == 0 {
        return Ok(1);
    }
    if cols.iter().any(|c| c.rank() != n) {
        return Err(Error::RankMismatch {
            expected: n,
            found: cols.iter().map(|c| c.rank()).find(|&r| r != n).unwrap_or(n),
        });
    }
    // rows of the transposed matrix; det(A^T) = det(A)
    let mut m: Vec<Vec<i128>> = cols
        .iter()
        .map(|c| c.entries().iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return Ok(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k]).ok_or(Error::Overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(Error::Overflow)?;
                m[i][j] = a.checked_sub(b).ok_or(Error::Overflow)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    i64::try_from(sign * m[n - 1][n - 1]).map_err(|_| Error::Overflow)
}

/// Columns of `(A^{-1})^T` for a unimodular `A` given by columns. Column `j`
/// of the result is the dual basis vector of `cols[j]`.
pub fn dual_basis(cols: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let n = cols.len();
    let d = det(cols)?;
    if d != 1 && d != -1 {
        return Err(Error::NonUnimodular { det: d });
    }
    // (A^{-T})_{ij} = C_{ij} / det with C the cofactor matrix of A,
    // where A_{ij} = cols[j][i].
    let mut out = vec![vec![0i64; n]; n];
    for (j, col) in out.iter_mut().enumerate() {
        for (i, entry) in col.iter_mut().enumerate() {
            let minor: Vec<LatticeVector> = cols
                .iter()
                .enumerate()
                .filter(|&(c, _)| c != j)
                .map(|(_, v)| {
                    LatticeVector(
                        v.entries()
                            .iter()
                            .enumerate()
                            .filter(|&(r, _)| r != i)
                            .map(|(_, &x)| x)
                            .collect(),
                    )
                })
                .collect();
            let m = det(&minor)?;
            let c = if (i + j) % 2 == 0 { m } else { -m };
            *entry = c * d;
        }
    }
    Ok(out.into_iter().map(LatticeVector).collect())
}

/// Sign of the permutation that sorts `items` ascending, or `None` if two
/// items are equal.
pub fn sort_parity<T: Ord>(items: &[T]) -> Option<i64> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&a, &b| items[a].cmp(&items[b]));
    if idx.windows(2).any(|w| items[w[0]] == items[w[1]]) {
        return None;
    }
    // parity from cycle decomposition
    let mut seen = vec![false; idx.len()];
    let mut sign = 1;
    for start in 0..idx.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = idx[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    Some(sign)
}

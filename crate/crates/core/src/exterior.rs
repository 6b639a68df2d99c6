//! The free exterior algebra `Λ(J_n)` / `Λ(J_n^*)` over `Z` on the nonzero
//! vectors of the rank-`n` lattice.
//!
//! Every polynomial is kept in canonical form: each monomial stores its
//! generators strictly increasing in lexicographic order, with the sign of the
//! sorting permutation folded into the coefficient, and zero coefficients are
//! never stored.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{self, sort_parity, LatticeVector, Side};

/// A single signed exterior monomial `c · g_1 ∧ … ∧ g_k`, generators in the
/// order given (not necessarily canonical).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: i64,
    pub generators: Vec<LatticeVector>,
}

impl Monomial {
    pub fn new(coefficient: i64, generators: Vec<LatticeVector>) -> Self {
        Monomial {
            coefficient,
            generators,
        }
    }

    /// Sorts the generators, folding the permutation sign into the
    /// coefficient. A repeated generator yields the zero monomial.
    pub fn canonicalize(mut self) -> Monomial {
        match sort_parity(&self.generators) {
            None => Monomial::new(0, Vec::new()),
            Some(sign) => {
                self.generators.sort();
                self.coefficient *= sign;
                self
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.generators.len()
    }
}

/// A canonical exterior polynomial of rank `n` on one side of the duality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExteriorPolynomial {
    n: usize,
    side: Side,
    terms: BTreeMap<Vec<LatticeVector>, i64>,
}

impl ExteriorPolynomial {
    pub fn zero(n: usize, side: Side) -> Self {
        ExteriorPolynomial {
            n,
            side,
            terms: BTreeMap::new(),
        }
    }

    /// The empty monomial with coefficient 1. In rank 0 this is the class of
    /// a point, the unit of the product.
    pub fn one(n: usize, side: Side) -> Self {
        let mut p = Self::zero(n, side);
        p.terms.insert(Vec::new(), 1);
        p
    }

    pub fn generator(side: Side, v: LatticeVector) -> Result<Self> {
        let n = v.rank();
        Self::from_terms(n, side, [(1, vec![v])])
    }

    /// Builds a polynomial from arbitrary (coefficient, generators) pairs.
    /// Generators are checked to be nonzero rank-`n` vectors.
    pub fn from_terms<I>(n: usize, side: Side, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Vec<LatticeVector>)>,
    {
        let mut p = Self::zero(n, side);
        for (c, gens) in terms {
            for g in &gens {
                if g.rank() != n {
                    return Err(Error::RankMismatch {
                        expected: n,
                        found: g.rank(),
                    });
                }
                if g.is_zero() {
                    return Err(Error::ZeroGenerator);
                }
            }
            p.add_monomial(Monomial::new(c, gens))?;
        }
        Ok(p)
    }

    pub fn from_monomial(n: usize, side: Side, m: Monomial) -> Result<Self> {
        Self::from_terms(n, side, [(m.coefficient, m.generators)])
    }

    fn add_monomial(&mut self, m: Monomial) -> Result<()> {
        let m = m.canonicalize();
        if m.coefficient == 0 {
            return Ok(());
        }
        self.add_canonical(m.generators, m.coefficient)
    }

    fn add_canonical(&mut self, gens: Vec<LatticeVector>, c: i64) -> Result<()> {
        use std::collections::btree_map::Entry;
        match self.terms.entry(gens) {
            Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get().checked_add(c).ok_or(Error::Overflow)?;
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Canonical terms in ascending generator order.
    pub fn terms(&self) -> impl Iterator<Item = (&[LatticeVector], i64)> + '_ {
        self.terms.iter().map(|(g, &c)| (g.as_slice(), c))
    }

    pub fn coefficient(&self, gens: &[LatticeVector]) -> i64 {
        self.terms.get(gens).copied().unwrap_or(0)
    }

    /// Whether every term has degree `k` (the zero polynomial qualifies).
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.terms.keys().all(|g| g.len() == k)
    }

    /// All generators appearing in some term.
    pub fn generators(&self) -> impl Iterator<Item = &LatticeVector> + '_ {
        self.terms.keys().flatten()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        Ok(())
    }

    fn require_side(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::WrongSide {
                expected: side.name(),
            });
        }
        Ok(())
    }

    fn require_top_degree(&self) -> Result<()> {
        if !self.is_homogeneous_of(self.n) {
            return Err(Error::NotHomogeneous { expected: self.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (g, &c) in &other.terms {
            out.add_canonical(g.clone(), c)?;
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero(self.n, self.side);
        if k == 0 {
            return Ok(out);
        }
        for (g, &c) in &self.terms {
            out.terms
                .insert(g.clone(), c.checked_mul(k).ok_or(Error::Overflow)?);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        ExteriorPolynomial {
            n: self.n,
            side: self.side,
            terms: self.terms.iter().map(|(g, &c)| (g.clone(), -c)).collect(),
        }
    }

    /// Exact integer combination `Σ coeffs[i] · polys[i]`.
    pub fn linear_combine(coeffs: &[i64], polys: &[ExteriorPolynomial]) -> Result<Self> {
        if coeffs.len() != polys.len() {
            return Err(Error::Schema(format!(
                "{} coefficients for {} polynomials",
                coeffs.len(),
                polys.len()
            )));
        }
        let Some(first) = polys.first() else {
            return Err(Error::Schema("empty linear combination".into()));
        };
        let mut acc = Self::zero(first.n, first.side);
        for (&k, p) in coeffs.iter().zip(polys) {
            acc = acc.checked_add(&p.checked_scale(k)?)?;
        }
        Ok(acc)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.n, self.side);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let mut gens = a.clone();
                gens.extend(b.iter().cloned());
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                out.add_monomial(Monomial::new(c, gens))?;
            }
        }
        Ok(out)
    }

    /// Whether every monomial's generators form a basis of `Z^n`.
    pub fn is_faithful(&self) -> Result<bool> {
        self.require_top_degree()?;
        for gens in self.terms.keys() {
            let d = lattice::det(gens)?;
            if d != 1 && d != -1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Monomial-wise dual basis: each basis is replaced by the columns of the
    /// inverse transpose of its matrix, and the side flips.
    pub fn dual(&self) -> Result<Self> {
        self.require_top_degree()?;
        let mut out = Self::zero(self.n, self.side.flip());
        for (gens, &c) in &self.terms {
            let dual = lattice::dual_basis(gens)?;
            out.add_monomial(Monomial::new(c, dual))?;
        }
        Ok(out)
    }

    /// The boundary `d(s_1 ∧ … ∧ s_k) = Σ_i (-1)^{i+1} s_1 ∧ … ŝ_i … ∧ s_k`,
    /// with `d(s) = 1` and `d(1) = 0`. Defined on cocharacter polynomials.
    pub fn boundary(&self) -> Result<Self> {
        self.require_side(Side::Cocharacter)?;
        let mut out = Self::zero(self.n, self.side);
        for (gens, &c) in &self.terms {
            for i in 0..gens.len() {
                let face: Vec<LatticeVector> = gens
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                let sign = if i % 2 == 0 { c } else { -c };
                // `face` inherits strict order from `gens`
                out.add_canonical(face, sign)?;
            }
        }
        Ok(out)
    }

    /// Membership in `𝔎_n`: cocharacter side, faithful, and `d(h) = 0`.
    pub fn in_fkn(&self) -> Result<bool> {
        self.require_side(Side::Cocharacter)?;
        self.require_top_degree()?;
        Ok(self.is_faithful()? && self.boundary()?.is_zero())
    }

    /// Membership in `K_n`: character side, faithful, and `d(h^*) = 0`.
    pub fn in_kn(&self) -> Result<bool> {
        self.require_side(Side::Character)?;
        self.require_top_degree()?;
        if !self.is_faithful()? {
            return Ok(false);
        }
        Ok(self.dual()?.boundary()?.is_zero())
    }

    /// The exactness witness `t ∧ h` of a cycle `h`; its boundary is `h`.
    pub fn cone(&self, t: &LatticeVector) -> Result<Self> {
        self.require_side(Side::Cocharacter)?;
        if t.rank() != self.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                found: t.rank(),
            });
        }
        if t.is_zero() {
            return Err(Error::ZeroGenerator);
        }
        if self.generators().any(|g| g == t) {
            return Err(Error::ConeGeneratorOccurs);
        }
        if !self.boundary()?.is_zero() {
            return Err(Error::NotACycle);
        }
        Self::generator(self.side, t.clone())?.wedge(self)
    }

    /// The map `f(s_1 ∧ … ∧ s_n) = det[s_1 … s_n] · s_1 ⋯ s_n` into the
    /// commutative group ring.
    pub fn fixed_point_map(&self) -> Result<CommutativeFixedPointData> {
        self.require_side(Side::Character)?;
        self.require_top_degree()?;
        let mut out = CommutativeFixedPointData::zero(self.n);
        for (gens, &c) in &self.terms {
            let d = lattice::det(gens)?;
            if d != 1 && d != -1 {
                return Err(Error::NonUnimodular { det: d });
            }
            out.add(gens.to_vec(), c * d)?;
        }
        Ok(out)
    }

    /// Embeds `self` into the first `n₁` coordinates and `other` into the last
    /// `n₂`, then wedges. Non-commutative.
    pub fn external_product(&self, other: &Self) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        let (n1, n2) = (self.n, other.n);
        let left = self.embed(0, n2);
        let right = other.embed(n1, 0);
        left.wedge(&right)
    }

    /// Re-expresses every generator in rank `before + n + after` by padding
    /// with zeros.
    pub fn embed(&self, before: usize, after: usize) -> Self {
        ExteriorPolynomial {
            n: before + self.n + after,
            side: self.side,
            terms: self
                .terms
                .iter()
                .map(|(g, &c)| (g.iter().map(|v| v.embed(before, after)).collect(), c))
                .collect(),
        }
    }
}

impl fmt::Debug for ExteriorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} n={}] {}", self.side.name(), self.n, self)
    }
}

impl fmt::Display for ExteriorPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (gens, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.unsigned_abs();
            if a != 1 || gens.is_empty() {
                write!(f, "{a}")?;
            }
            for (j, g) in gens.iter().enumerate() {
                if j > 0 {
                    write!(f, "∧")?;
                }
                write!(f, "{g}")?;
            }
        }
        Ok(())
    }
}

/// Element of the commutative group ring `Z[J_n]`: a sum of products of
/// characters, keyed by the sorted multiset of factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeFixedPointData {
    n: usize,
    terms: BTreeMap<Vec<LatticeVector>, i64>,
}

impl CommutativeFixedPointData {
    pub fn zero(n: usize) -> Self {
        CommutativeFixedPointData {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, mut factors: Vec<LatticeVector>, c: i64) -> Result<()> {
        factors.sort();
        let e = self.terms.entry(factors).or_insert(0);
        *e = e.checked_add(c).ok_or(Error::Overflow)?;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[LatticeVector], i64)> + '_ {
        self.terms.iter().map(|(g, &c)| (g.as_slice(), c))
    }
}

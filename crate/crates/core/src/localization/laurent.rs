//! Univariate Laurent polynomials with big-integer coefficients, and reduced
//! quotients of them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `Σ coeffs[i] z^(low + i)`. Normalized: no leading or trailing zero
/// coefficients, and `low = 0` for the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// `z^e - 1`.
    pub fn z_pow_minus_one(e: i64) -> Self {
        Self::monomial(BigInt::one(), e) - Self::one()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Least exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        let i = e - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by `d`, if `d` divides `self` in `Z[z, z^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = poly_divrem(&self.coeffs, &d.coeffs)?;
        if !r.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(Self::new(self.low - d.low, q))
    }

    /// Divides coefficients by the integer `c`, which must divide them all.
    pub fn div_integer(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Greatest common divisor in `Z[z, z^-1]` by primitive pseudo-remainder
    /// sequences, normalized to `low = 0` and positive leading coefficient.
    pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        if a.is_zero() {
            return b.normalized_associate();
        }
        if b.is_zero() {
            return a.normalized_associate();
        }
        let content = a.content().gcd(&b.content());
        let mut x = a.primitive_part().coeffs;
        let mut y = b.primitive_part().coeffs;
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive(r);
        }
        LaurentPoly::new(0, x)
            .scale(&content)
            .normalized_associate()
    }

    fn primitive_part(&self) -> LaurentPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.div_integer(&c)
    }

    fn normalized_associate(&self) -> LaurentPoly {
        let p = LaurentPoly {
            low: 0,
            coeffs: self.coeffs.clone(),
        };
        if p.leading().is_negative() {
            -p
        } else {
            p
        }
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let v = trim(v);
    let c = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if c.is_zero() || c.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &c).collect()
}

/// Division of ordinary polynomials (ascending coefficients) over `Z`;
/// `None` if some quotient coefficient is not an integer.
fn poly_divrem(a: &[BigInt], d: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut r: Vec<BigInt> = a.to_vec();
    if r.len() < d.len() {
        return Some((Vec::new(), r));
    }
    let lead = d.last()?;
    let mut q = vec![BigInt::zero(); r.len() - d.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + d.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (j, dj) in d.iter().enumerate() {
            r[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    Some((q, trim(r)))
}

fn pseudo_rem(a: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lead = d.last().unwrap().clone();
    while r.len() >= d.len() {
        let top = r.last().unwrap().clone();
        let shift = r.len() - d.len();
        for x in r.iter_mut() {
            *x *= &lead;
        }
        for (j, dj) in d.iter().enumerate() {
            r[shift + j] -= &top * dj;
        }
        r = trim(r);
    }
    r
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let coeffs = (low..=high)
            .map(|e| self.coefficient(e) + rhs.coefficient(e))
            .collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.low + rhs.low, out)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{a}z")?,
                (_, true) => write!(f, "z^{e}")?,
                (_, false) => write!(f, "{a}z^{e}")?,
            }
        }
        Ok(())
    }
}

/// A quotient of Laurent polynomials kept in reduced form: the gcd is
/// cancelled, the integer contents are coprime, and the denominator has least
/// exponent 0 and positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentRational {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl LaurentRational {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Internal("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    /// Wraps a pair already known to be in reduced form.
    pub(crate) fn from_reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        LaurentRational { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        LaurentRational {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = LaurentPoly::gcd(&num, &den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_integer(&c);
            den = den.div_integer(&c);
        }
        let s = -den.low();
        num = num.shift(s);
        den = den.shift(s);
        if den.leading().is_negative() {
            num = -num;
            den = -den;
        }
        LaurentRational { num, den }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// True when the reduced denominator is the constant 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn checked_add(&self, other: &Self) -> Self {
        Self::reduce(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }
}

impl fmt::Display for LaurentRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Cyclotomic polynomials `Φ_1, Φ_2, …`, computed on demand from
/// `z^d - 1 = Π_{e | d} Φ_e`.
#[derive(Debug, Default)]
pub struct Cyclotomics {
    cache: Vec<LaurentPoly>,
}

impl Cyclotomics {
    pub fn new() -> Self {
        Cyclotomics::default()
    }

    pub fn get(&mut self, d: u64) -> &LaurentPoly {
        assert!(d >= 1);
        while (self.cache.len() as u64) < d {
            let k = self.cache.len() as u64 + 1;
            let mut p = LaurentPoly::z_pow_minus_one(k as i64);
            for e in 1..k {
                if k.is_multiple_of(e) {
                    p = p
                        .div_exact(&self.cache[(e - 1) as usize])
                        .expect("cyclotomic factor divides");
                }
            }
            self.cache.push(p);
        }
        &self.cache[(d - 1) as usize]
    }
}

/// Divisors of `w` in increasing order.
pub fn divisors(w: u64) -> Vec<u64> {
    (1..=w).filter(|d| w.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64(low, c)
    }

    #[test]
    fn arithmetic() {
        let a = p(-1, &[1, 0, 1]);
        let b = p(0, &[1, -1]);
        assert_eq!(&a * &b, p(-1, &[1, -1, 1, -1]));
        assert!((&a - &a).is_zero());
        assert_eq!(p(0, &[0, 0, 3, 0]), p(2, &[3]));
        assert_eq!(a.eval_at_one(), BigInt::from(2));
        assert_eq!(format!("{}", p(-1, &[2, 0, -1])), "-z + 2z^-1");
    }

    #[test]
    fn exact_division() {
        let a = p(0, &[-1, 0, 0, 1]);
        let b = p(0, &[-1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), p(0, &[1, 1, 1]));
        assert!(p(0, &[1, 0, 1]).div_exact(&b).is_none());
        assert!(p(0, &[1, 1]).div_exact(&p(0, &[2])).is_none());
    }

    #[test]
    fn gcds() {
        let x1 = p(0, &[-1, 1]);
        let x2 = p(0, &[1, 1]);
        let g = LaurentPoly::gcd(&(&x1 * &x2).shift(-3), &(&x1 * &x1).scale(&BigInt::from(2)));
        assert_eq!(g, x1);
        assert!(LaurentPoly::gcd(&p(0, &[2]), &p(0, &[3])).is_one());
    }

    #[test]
    fn cp1_sum_is_one() {
        // 1/(1 - z) + 1/(1 - z^-1) = 1
        let a = LaurentRational::new(LaurentPoly::one(), p(0, &[1, -1])).unwrap();
        let b = LaurentRational::new(LaurentPoly::one(), p(-1, &[-1, 1])).unwrap();
        let s = a.checked_add(&b);
        assert!(s.is_laurent());
        assert!(s.numerator().is_one());
    }

    #[test]
    fn reduced_form() {
        let r = LaurentRational::new(p(0, &[2]), p(2, &[-4, 4])).unwrap();
        assert_eq!(r.numerator(), &p(-2, &[1]));
        assert_eq!(r.denominator(), &p(0, &[-2, 2]));
        assert!(!r.is_laurent());
    }

    #[test]
    fn cyclotomic_table() {
        let mut c = Cyclotomics::new();
        assert_eq!(c.get(1), &p(0, &[-1, 1]));
        assert_eq!(c.get(2), &p(0, &[1, 1]));
        assert_eq!(c.get(6), &p(0, &[1, -1, 1]));
        assert_eq!(c.get(12), &p(0, &[1, 0, -1, 0, 1]));
        let mut prod = LaurentPoly::one();
        for d in divisors(12) {
            prod = &prod * c.get(d);
        }
        assert_eq!(prod, LaurentPoly::z_pow_minus_one(12));
    }
}

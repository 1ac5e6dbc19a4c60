//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Two variable families exist: the coefficient variables `a0, a1, ...` of a
//! binary form and the root variables `L1, L2, ...` (the λ's). Every polynomial
//! carries its family and arithmetic refuses to mix them.
//!
//! Monomials are ordered graded-lexicographically: higher total degree first,
//! then larger exponent of the lowest-indexed variable first. This is the order
//! used for iteration, printing and serialization.

mod json;
mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which indexed variable family a polynomial lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `a0, a1, a2, ...`, indexed from 0.
    A,
    /// `L1, L2, ...` standing for λ₁, λ₂, ..., indexed from 1.
    L,
}

impl Family {
    pub fn prefix(self) -> &'static str {
        match self {
            Family::A => "a",
            Family::L => "L",
        }
    }

    pub fn first_index(self) -> usize {
        match self {
            Family::A => 0,
            Family::L => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

/// Exponents indexed by variable index, stored densely with trailing zeros
/// trimmed so that equal monomials have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        ExponentVector(exps)
    }

    pub fn one() -> Self {
        ExponentVector(Vec::new())
    }

    /// The monomial `x_index^exp`.
    pub fn var(index: usize, exp: u32) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = exp;
        ExponentVector::new(v)
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut v: Vec<u32> = Vec::new();
        for (i, e) in pairs {
            if v.len() <= i {
                v.resize(i + 1, 0);
            }
            v[i] += e;
        }
        ExponentVector::new(v)
    }

    pub fn get(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Highest variable index with a nonzero exponent.
    pub fn max_index(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// `(index, exponent)` pairs with nonzero exponent, by increasing index.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| (i, *e))
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Σ index·exponent. Meaningful for the `a` family.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &e)| i as u64 * e as u64)
            .sum()
    }

    /// Exponents of variables `start, start+1, ..., start+len-1`.
    pub fn dense(&self, start: usize, len: usize) -> Vec<u32> {
        (start..start + len).map(|i| self.get(i)).collect()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut v = long.clone();
        for (x, y) in v.iter_mut().zip(short) {
            *x += y;
        }
        ExponentVector(v)
    }

    /// `self - other` when componentwise nonnegative.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = self.0.clone();
        for (x, y) in v.iter_mut().zip(&other.0) {
            *x = x.checked_sub(*y)?;
        }
        Some(ExponentVector::new(v))
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &ExponentVector) -> bool {
        other.0.iter().enumerate().all(|(i, &e)| self.get(i) >= e)
    }

    /// Pure lexicographic comparison: the first differing index decides.
    pub fn lex_cmp(&self, other: &ExponentVector) -> Ordering {
        // Trailing zeros are trimmed, so slice order is zero-padded lex order.
        self.0.cmp(&other.0)
    }

    fn with(&self, index: usize, exp: u32) -> ExponentVector {
        let mut v = self.0.clone();
        if v.len() <= index {
            v.resize(index + 1, 0);
        }
        v[index] = exp;
        ExponentVector::new(v)
    }
}

/// Graded lexicographic order. Canonical term order is the *descending* one.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiDegree {
    pub degree: u64,
    pub weight: u64,
}

impl BiDegree {
    pub fn new(degree: u64, weight: u64) -> Self {
        BiDegree { degree, weight }
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.degree, self.weight)
    }
}

/// Sparse polynomial over ℚ. Zero coefficients are never stored; the zero
/// polynomial is the empty term map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    family: Family,
    terms: BTreeMap<ExponentVector, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly {
    pub fn zero(family: Family) -> Self {
        Poly {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(family: Family) -> Self {
        Poly::constant(family, BigRational::one())
    }

    pub fn constant(family: Family, c: BigRational) -> Self {
        Poly::monomial(family, ExponentVector::one(), c)
    }

    pub fn monomial(family: Family, e: ExponentVector, c: BigRational) -> Self {
        let mut p = Poly::zero(family);
        p.add_term(e, c);
        p
    }

    pub fn var(family: Family, index: usize) -> Self {
        debug_assert!(index >= family.first_index());
        Poly::monomial(family, ExponentVector::var(index, 1), BigRational::one())
    }

    /// The coefficient variable `a_i`.
    pub fn a(i: usize) -> Self {
        Poly::var(Family::A, i)
    }

    /// The root variable `λ_i`, `i >= 1`.
    pub fn lambda(i: usize) -> Self {
        Poly::var(Family::L, i)
    }

    pub fn from_terms<I>(family: Family, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut p = Poly::zero(family);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_one)
    }

    /// Terms in canonical order (graded lex, descending).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, e: &ExponentVector) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, e: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_family(&self, other: &Poly) -> Result<()> {
        if self.family == other.family {
            Ok(())
        } else {
            Err(Error::FamilyMismatch(self.family, other.family))
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_family(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_family(other)?;
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.add_term(e.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_family(other)?;
        let mut r = Poly::zero(self.family);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                r.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.family);
        }
        Poly {
            family: self.family,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&rat(c))
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, e: &ExponentVector, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.family);
        }
        Poly {
            family: self.family,
            terms: self.terms.iter().map(|(f, x)| (f.add(e), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::one(self.family);
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// The common (degree, weight) of all terms.
    pub fn bidegree(&self) -> Result<BiDegree> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        for e in it {
            if e.degree() != first.degree() {
                return Err(Error::Inhomogeneous {
                    what: "degree",
                    first: first.clone(),
                    second: e.clone(),
                });
            }
            if e.weight() != first.weight() {
                return Err(Error::Inhomogeneous {
                    what: "weight",
                    first: first.clone(),
                    second: e.clone(),
                });
            }
        }
        Ok(BiDegree::new(first.degree(), first.weight()))
    }

    /// Replaces variable `index` by `replacement` and expands. A constant
    /// replacement is accepted from either family.
    pub fn substitute(&self, index: usize, replacement: &Poly) -> Result<Poly> {
        if !replacement.is_constant() {
            self.check_family(replacement)?;
        }
        let replacement = Poly {
            family: self.family,
            terms: replacement.terms.clone(),
        };
        let mut powers: Vec<Poly> = vec![Poly::one(self.family)];
        let mut result = Poly::zero(self.family);
        for (e, c) in &self.terms {
            let k = e.get(index) as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * &replacement;
                powers.push(next);
            }
            let rest = e.with(index, 0);
            for (f, d) in &powers[k].terms {
                result.add_term(rest.add(f), c * d);
            }
        }
        Ok(result)
    }

    /// ∂/∂x_index.
    pub fn partial(&self, index: usize) -> Poly {
        let mut r = Poly::zero(self.family);
        for (e, c) in &self.terms {
            let k = e.get(index);
            if k > 0 {
                r.add_term(e.with(index, k - 1), c * rat(k as i64));
            }
        }
        r
    }

    /// Lexicographically greatest exponent with nonzero coefficient.
    pub fn leading_exponent(&self) -> Result<ExponentVector> {
        self.leading_monomial().map(|(e, _)| e)
    }

    pub fn leading_monomial(&self) -> Result<(ExponentVector, BigRational)> {
        self.terms
            .iter()
            .max_by(|x, y| x.0.lex_cmp(y.0))
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(BigRational::is_integer)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(ExponentVector::max_index)
            .max()
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    pub fn primitive_part(&self) -> Poly {
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Exact quotient by `x_index^k`, if every term is divisible.
    pub fn div_var_pow(&self, index: usize, k: u32) -> Option<Poly> {
        let divisor = ExponentVector::var(index, k);
        let mut r = Poly::zero(self.family);
        for (e, c) in &self.terms {
            r.add_term(e.checked_sub(&divisor)?, c.clone());
        }
        Some(r)
    }

    /// Renames variable `i` to `f(i)` for every variable present. Distinct
    /// variables may be merged.
    pub fn map_indices<F: Fn(usize) -> usize>(&self, f: F) -> Poly {
        let terms = self.terms.iter().map(|(e, c)| {
            (
                ExponentVector::from_pairs(e.iter().map(|(i, k)| (f(i), k))),
                c.clone(),
            )
        });
        Poly::from_terms(self.family, terms)
    }

    /// Renumbers every variable `i` to `i + offset`.
    pub fn shift_indices(&self, offset: usize) -> Poly {
        self.map_indices(|i| i + offset)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            family: self.family,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

//! Bases of the spaces `S_{n,g}` of U-invariants of degree `n` and weight `g`.
//!
//! [`u_basis`] reads the elements `U_{k₂,…,kₙ}` off the e-development of the
//! potenziante. [`kernel_oracle`] computes the same spaces from scratch as
//! the null space of Cayley's derivation on the monomials of bidegree
//! `(n, g)`; the two share no code beyond polynomial arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::poly::{BiDegree, ExponentVector, Family, Poly};
use crate::symfunc::{partitions, partitions_with_parts_between};
use crate::umbral::tilde_u;

/// `U_{k₂,…,kₙ}`, a basis element of `S_{n,g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantElement {
    /// `(k₂,…,kₙ)`; `k₁ = 0` is implicit.
    pub k: Vec<u32>,
    pub degree: usize,
    pub weight: u32,
    pub value: Poly,
}

impl InvariantElement {
    /// The same element with its coefficients divided by their gcd.
    pub fn primitive(&self) -> InvariantElement {
        InvariantElement {
            value: self.value.primitive_part(),
            ..self.clone()
        }
    }

    /// `U_(0,1)`-style label.
    pub fn label(&self) -> String {
        let k: Vec<String> = self.k.iter().map(u32::to_string).collect();
        format!("U_({})", k.join(","))
    }
}

impl Serialize for InvariantElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("InvariantElement", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("poly", &self.value)?;
        st.end()
    }
}

/// The basis `U_k`, `k = (0,k₂,…,kₙ)`, of `S_{n,g}` in canonical e-index order.
pub fn u_basis(n: usize, g: u32) -> Result<Vec<InvariantElement>> {
    if n == 0 {
        return Err(Error::OutOfRange("u_basis needs degree n >= 1".into()));
    }
    Ok(tilde_u(n, g)?
        .into_iter()
        .filter(|(k, _)| k.k()[0] == 0)
        .map(|(k, value)| InvariantElement {
            k: k.tail().to_vec(),
            degree: n,
            weight: g,
            value,
        })
        .collect())
}

/// Monomials `a_{h₁}⋯a_{hₙ}` of bidegree `(n, g)` with every index at most
/// `max_index`, in canonical order.
fn monomials(n: usize, g: u32, max_index: Option<u32>) -> Vec<ExponentVector> {
    partitions(g, n, 1)
        .into_iter()
        .filter(|h| max_index.is_none_or(|m| h.parts().iter().all(|&x| x <= m)))
        .map(|h| ExponentVector::from_pairs(h.padded(n).into_iter().map(|x| (x as usize, 1))))
        .collect()
}

fn kernel_of_d(n: usize, g: u32, max_index: Option<u32>) -> Vec<Poly> {
    let source = monomials(n, g, max_index);
    if g == 0 {
        return source
            .into_iter()
            .map(|e| Poly::monomial(Family::A, e, BigRational::one()))
            .collect();
    }
    let target: BTreeMap<ExponentVector, usize> = monomials(n, g - 1, max_index)
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect();
    let mut m: IntMatrix = vec![vec![BigInt::zero(); source.len()]; target.len()];
    for (col, e) in source.iter().enumerate() {
        // D(a_i^k ⋯) = k a_{i−1} a_i^{k−1} ⋯
        for (i, k) in e.iter().filter(|&(i, _)| i > 0) {
            let image = e
                .checked_sub(&ExponentVector::var(i, 1))
                .expect("variable present")
                .add(&ExponentVector::var(i - 1, 1));
            let row = target[&image];
            m[row][col] += BigInt::from(k);
        }
    }
    linalg::nullspace(&m, source.len())
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                Family::A,
                source
                    .iter()
                    .zip(v)
                    .map(|(e, c)| (e.clone(), BigRational::from_integer(c))),
            )
        })
        .collect()
}

/// A basis of `ker D` on the polynomials of bidegree `(n, g)`, by exact null
/// space of the matrix of `D`.
pub fn kernel_oracle(n: usize, g: u32) -> Vec<Poly> {
    kernel_of_d(n, g, None)
}

/// [`kernel_oracle`] inside `ℚ[a₀,…,a_m]`, the U-invariants of the binary
/// form of degree `m`.
pub fn kernel_oracle_bounded(n: usize, g: u32, max_index: u32) -> Vec<Poly> {
    kernel_of_d(n, g, Some(max_index))
}

/// Coefficients of a power series in `x`, indexed by weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionSeries {
    pub n: usize,
    pub coefficients: Vec<u64>,
}

impl DimensionSeries {
    pub fn at(&self, g: u32) -> u64 {
        self.coefficients.get(g as usize).copied().unwrap_or(0)
    }
}

/// `numerator / ((1−x²)(1−x³)⋯(1−xⁿ))` up to `x^{g_max}`, by dividing out
/// one factor at a time.
pub(crate) fn divide_by_denominator(mut coeffs: Vec<u64>, n: usize) -> Vec<u64> {
    for i in 2..=n {
        for g in i..coeffs.len() {
            coeffs[g] += coeffs[g - i];
        }
    }
    coeffs
}

/// `N_{n,g}` for `0 ≤ g ≤ g_max` from `1/((1−x²)(1−x³)⋯(1−xⁿ))`.
pub fn dim_series(n: usize, g_max: u32) -> Result<DimensionSeries> {
    if n == 0 {
        return Err(Error::OutOfRange("dim_series needs degree n >= 1".into()));
    }
    let mut coeffs = vec![0u64; g_max as usize + 1];
    coeffs[0] = 1;
    let coefficients = divide_by_denominator(coeffs, n);
    for (g, &c) in coefficients.iter().enumerate() {
        let counted = dim_by_partitions(n, g as u32);
        if counted != c {
            return Err(Error::Internal(format!(
                "series gives N({n},{g}) = {c} but partition count gives {counted}"
            )));
        }
    }
    Ok(DimensionSeries { n, coefficients })
}

/// `N_{n,g}` as the number of partitions of `g` with parts in `[2, n]`.
pub fn dim_by_partitions(n: usize, g: u32) -> u64 {
    if n < 2 {
        return u64::from(g == 0);
    }
    partitions_with_parts_between(g, 2, n as u32).len() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub equal: bool,
    pub rank_a: usize,
    pub rank_b: usize,
    pub rank_union: usize,
}

fn common_bidegree<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Result<Option<BiDegree>> {
    let mut seen: Option<BiDegree> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let b = p.bidegree()?;
        match seen {
            None => seen = Some(b),
            Some(s) if s != b => return Err(Error::MixedBidegree),
            Some(_) => {}
        }
    }
    Ok(seen)
}

/// Integer coefficient rows of `polys` over a shared column index.
fn coefficient_rows(polys: &[&Poly], columns: &mut BTreeMap<ExponentVector, usize>) -> IntMatrix {
    for p in polys {
        for (e, _) in p.terms() {
            let next = columns.len();
            columns.entry(e.clone()).or_insert(next);
        }
    }
    polys
        .iter()
        .map(|p| {
            let den = p
                .terms()
                .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
            let mut row = vec![BigInt::zero(); columns.len()];
            for (e, c) in p.terms() {
                row[columns[e]] = (c * BigRational::from_integer(den.clone())).to_integer();
            }
            row
        })
        .collect()
}

/// Exact dimension of the span of a list of polynomials.
pub fn rank_of(polys: &[&Poly]) -> usize {
    let mut columns = BTreeMap::new();
    let rows = coefficient_rows(polys, &mut columns);
    linalg::rank(&rows, columns.len())
}

/// Compares the spans of `a` and `b` by exact ranks of stacked coefficient
/// matrices. Every nonzero polynomial must have the same bidegree.
pub fn span_equal(a: &[Poly], b: &[Poly]) -> Result<SpanReport> {
    common_bidegree(a.iter().chain(b))?;
    let ra: Vec<&Poly> = a.iter().collect();
    let rb: Vec<&Poly> = b.iter().collect();
    let union: Vec<&Poly> = a.iter().chain(b).collect();
    let rank_a = rank_of(&ra);
    let rank_b = rank_of(&rb);
    let rank_union = rank_of(&union);
    Ok(SpanReport {
        equal: rank_a == rank_union && rank_b == rank_union,
        rank_a,
        rank_b,
        rank_union,
    })
}

/// True when `p` lies in the span of `basis`.
pub fn in_span(p: &Poly, basis: &[Poly]) -> Result<bool> {
    let r = span_equal(basis, std::slice::from_ref(p))?;
    Ok(r.rank_union == r.rank_a)
}

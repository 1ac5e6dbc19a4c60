//! Umbral calculus for U-invariants.
//!
//! An umbral monomial `α₁^{[r₁]}⋯αₙ^{[rₙ]}` uses divided powers
//! (`α^{[r]} = α^r / r!`) and evaluates to `a_{r₁}⋯a_{rₙ}`. Cayley's
//! derivation `D = Σ a_{i−1} ∂/∂aᵢ` is the image of `Σ ∂/∂αᵢ` under this
//! evaluation, and the potenziante `π_{n,g} = E((Σ λⱼαⱼ)^{[g]})` pairs
//! symmetric functions in the λ's with polynomials in the a's.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::poly::{rat, ExponentVector, Family, Poly};
use crate::symfunc::{e_monomial, monomial_sum, partitions, transition_alpha, EIndex, Partition};

/// `α₁^{[r₁]}⋯αₙ^{[rₙ]}` over `n = r.len()` umbrae.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UmbralMonomial {
    pub r: Vec<u32>,
}

impl UmbralMonomial {
    pub fn new(r: Vec<u32>) -> Self {
        UmbralMonomial { r }
    }

    pub fn ambient(&self) -> usize {
        self.r.len()
    }
}

/// The a-monomial `a_{r₁}⋯a_{rₙ}` as an exponent vector.
fn a_monomial(r: &[u32]) -> ExponentVector {
    ExponentVector::from_pairs(r.iter().map(|&x| (x as usize, 1)))
}

/// `E(α₁^{[r₁]}⋯αₙ^{[rₙ]}) = a_{r₁}⋯a_{rₙ}`.
pub fn umbral_e(m: &UmbralMonomial) -> Poly {
    Poly::monomial(Family::A, a_monomial(&m.r), BigRational::one())
}

/// A polynomial in the umbrae, stored in the divided-power basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UmbralPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl UmbralPoly {
    pub fn zero(n: usize) -> Self {
        UmbralPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, r: Vec<u32>, c: BigRational) {
        assert_eq!(r.len(), self.n, "umbral exponent length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(r) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The linear extension of [`umbral_e`].
    pub fn evaluate(&self) -> Poly {
        Poly::from_terms(
            Family::A,
            self.terms.iter().map(|(r, c)| (a_monomial(r), c.clone())),
        )
    }

    /// `∂/∂αᵢ` (0-based `i`); lowers one divided power.
    pub fn partial(&self, i: usize) -> UmbralPoly {
        let mut out = UmbralPoly::zero(self.n);
        for (r, c) in &self.terms {
            if r[i] > 0 {
                let mut s = r.clone();
                s[i] -= 1;
                out.add_term(s, c.clone());
            }
        }
        out
    }

    /// `Σᵢ ∂/∂αᵢ`.
    pub fn total_partial(&self) -> UmbralPoly {
        let mut out = UmbralPoly::zero(self.n);
        for i in 0..self.n {
            for (r, c) in self.partial(i).terms {
                out.add_term(r, c);
            }
        }
        out
    }

    /// Product in the same umbrae: `α^{[r]}α^{[s]} = C(r+s, r) α^{[r+s]}`.
    pub fn mul(&self, other: &UmbralPoly) -> UmbralPoly {
        assert_eq!(self.n, other.n);
        let mut out = UmbralPoly::zero(self.n);
        for (r, c) in &self.terms {
            for (s, d) in &other.terms {
                let mut coeff = c * d;
                let sum: Vec<u32> = r
                    .iter()
                    .zip(s)
                    .map(|(&x, &y)| {
                        coeff *= BigRational::from_integer(binomial(x + y, x));
                        x + y
                    })
                    .collect();
                out.add_term(sum, coeff);
            }
        }
        out
    }

    /// `f(α₁..α_h)·g(α_{h+1}..α_{h+k})` on disjoint umbrae.
    pub fn concat(&self, other: &UmbralPoly) -> UmbralPoly {
        let mut out = UmbralPoly::zero(self.n + other.n);
        for (r, c) in &self.terms {
            for (s, d) in &other.terms {
                let mut t = r.clone();
                t.extend_from_slice(s);
                out.add_term(t, c * d);
            }
        }
        out
    }

    /// Embeds into `n + extra` umbrae, placing the existing ones at `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> UmbralPoly {
        let mut out = UmbralPoly::zero(total);
        for (r, c) in &self.terms {
            let mut t = vec![0; total];
            t[offset..offset + self.n].copy_from_slice(r);
            out.add_term(t, c.clone());
        }
        out
    }
}

/// Cayley's derivation `D = Σ_{i≥1} a_{i−1} ∂/∂aᵢ`.
pub fn derivation_d(p: &Poly) -> Poly {
    let mut out = Poly::zero(p.family());
    for (e, c) in p.terms() {
        for (i, k) in e.iter() {
            if i == 0 {
                continue;
            }
            let lowered = e
                .checked_sub(&ExponentVector::var(i, 1))
                .expect("exponent present")
                .add(&ExponentVector::var(i - 1, 1));
            out.add_term(lowered, c * rat(k as i64));
        }
    }
    out
}

/// A polynomial in the a's and one formal parameter `t`, stored by powers of
/// `t`: `coeffs[j]` is the coefficient of `t^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Translated {
    pub coeffs: Vec<Poly>,
}

impl Translated {
    fn constant(p: Poly) -> Self {
        Translated { coeffs: vec![p] }
    }

    fn mul(&self, other: &Translated) -> Translated {
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![Poly::zero(Family::A); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
        Translated { coeffs }.trimmed()
    }

    fn add_assign(&mut self, other: Translated) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs
                .resize(other.coeffs.len(), Poly::zero(Family::A));
        }
        for (i, y) in other.coeffs.into_iter().enumerate() {
            self.coeffs[i] = &self.coeffs[i] + &y;
        }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(Poly::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    /// Coefficient of `t^j`.
    pub fn coeff(&self, j: usize) -> Poly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(Family::A))
    }

    /// True when no positive power of `t` survives.
    pub fn is_t_free(&self) -> bool {
        self.coeffs.iter().skip(1).all(Poly::is_zero)
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// The translated coefficient `a_k ↦ Σ_{j≤k} a_j t^{k−j}/(k−j)!`.
fn translated_var(k: usize) -> Translated {
    let coeffs = (0..=k)
        .map(|d| {
            let c = BigRational::new(BigInt::one(), factorial(d as u32));
            Poly::a(k - d).scale(&c)
        })
        .collect();
    Translated { coeffs }
}

/// Applies the translation action to the coefficients, with `t` kept formal.
/// The coefficient of `t¹` is `D(p)`; U-invariants come back unchanged.
pub fn translate(p: &Poly) -> Translated {
    let mut cache: BTreeMap<(usize, u32), Translated> = BTreeMap::new();
    let mut total = Translated::constant(Poly::zero(Family::A));
    for (e, c) in p.terms() {
        let mut acc = Translated::constant(Poly::constant(Family::A, c.clone()));
        for (k, m) in e.iter() {
            let power = cache
                .entry((k, m))
                .or_insert_with(|| {
                    let base = translated_var(k);
                    (1..m).fold(base.clone(), |x, _| x.mul(&base))
                })
                .clone();
            acc = acc.mul(&power);
        }
        total.add_assign(acc);
    }
    total.trimmed()
}

/// `a_{h₁}⋯a_{hₙ}` for a partition padded with zeros to `n` parts.
pub fn a_of_partition(h: &Partition, n: usize) -> Poly {
    Poly::monomial(Family::A, a_monomial(&h.padded(n)), BigRational::one())
}

/// The elements `Ũ_k = Σ_h α[k][h]·a_h` for every e-index `k` of weight `g`
/// with `n` entries, in canonical e-index order.
pub fn tilde_u(n: usize, g: u32) -> Result<Vec<(EIndex, Poly)>> {
    let alpha = transition_alpha(n, g)?;
    let a_h: Vec<Poly> = alpha
        .partitions
        .iter()
        .map(|h| a_of_partition(h, n))
        .collect();
    Ok(alpha
        .e_indices
        .iter()
        .enumerate()
        .map(|(ki, k)| {
            let mut u = Poly::zero(Family::A);
            for (hi, ah) in a_h.iter().enumerate() {
                let c = &alpha.entries[ki][hi];
                if !c.is_zero() {
                    u = &u + &ah.scale(&BigRational::from_integer(c.clone()));
                }
            }
            (k.clone(), u)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotenziantRow {
    pub h: Partition,
    pub m: Poly,
    pub a: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotenziantERow {
    pub k: EIndex,
    pub u: Poly,
}

/// `π_{n,g}` in both the `m_h ⊗ a_h` and the `e^k ⊗ Ũ_k` developments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotenziantExpansion {
    pub n: usize,
    pub g: u32,
    pub rows: Vec<PotenziantRow>,
    pub e_rows: Vec<PotenziantERow>,
}

pub fn potenziante(n: usize, g: u32) -> Result<PotenziantExpansion> {
    let rows = partitions(g, n, 1)
        .into_iter()
        .map(|h| {
            Ok(PotenziantRow {
                m: monomial_sum(&h, n)?,
                a: a_of_partition(&h, n),
                h,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let e_rows = tilde_u(n, g)?
        .into_iter()
        .map(|(k, u)| PotenziantERow { k, u })
        .collect();
    Ok(PotenziantExpansion { n, g, rows, e_rows })
}

impl PotenziantExpansion {
    /// `m_{3,0,0}(λ) a0^2*a3 + m_{2,1,0}(λ) a0*a1*a2 + …`
    pub fn display_m_basis(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                let idx: Vec<String> = r.h.padded(self.n).iter().map(u32::to_string).collect();
                format!("m_{{{}}}(λ) {}", idx.join(","), r.a)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `Σ_h m_h ⊗ a_h`.
    pub fn tensor_from_rows(&self) -> Tensor {
        let mut t = Tensor::zero();
        for r in &self.rows {
            t.add_product(&r.m, &r.a);
        }
        t
    }

    /// `Σ_k e^k ⊗ Ũ_k`.
    pub fn tensor_from_e_rows(&self) -> Tensor {
        let mut t = Tensor::zero();
        for r in &self.e_rows {
            t.add_product(&e_monomial(&r.k, self.n), &r.u);
        }
        t
    }
}

#[derive(Serialize)]
struct RowJson {
    h: Vec<u32>,
    a: String,
}

#[derive(Serialize)]
struct ERowJson<'a> {
    k: &'a [u32],
    #[serde(rename = "U")]
    u: String,
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    n: usize,
    g: u32,
    rows: Vec<RowJson>,
    e_rows: Vec<ERowJson<'a>>,
}

impl Serialize for PotenziantExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            n: self.n,
            g: self.g,
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    h: r.h.padded(self.n),
                    a: r.a.to_string(),
                })
                .collect(),
            e_rows: self
                .e_rows
                .iter()
                .map(|r| ERowJson {
                    k: r.k.k(),
                    u: r.u.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

/// An element of `ℚ[λ] ⊗ ℚ[a]`, stored as a map from a-monomial to its
/// λ-polynomial coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tensor {
    parts: BTreeMap<ExponentVector, Poly>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// The λ-coefficient of an a-monomial.
    pub fn coefficient(&self, a: &ExponentVector) -> Poly {
        self.parts
            .get(a)
            .cloned()
            .unwrap_or_else(|| Poly::zero(Family::L))
    }

    pub fn a_monomials(&self) -> impl Iterator<Item = &ExponentVector> {
        self.parts.keys()
    }

    fn add_part(&mut self, a: ExponentVector, lam: Poly) {
        if lam.is_zero() {
            return;
        }
        let entry = self
            .parts
            .entry(a.clone())
            .or_insert_with(|| Poly::zero(Family::L));
        *entry = &*entry + &lam;
        if entry.is_zero() {
            self.parts.remove(&a);
        }
    }

    /// Adds `lam ⊗ a_poly`.
    pub fn add_product(&mut self, lam: &Poly, a_poly: &Poly) {
        for (e, c) in a_poly.terms() {
            self.add_part(e.clone(), lam.scale(c));
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        for (a, lam) in &other.parts {
            out.add_part(a.clone(), lam.clone());
        }
        out
    }

    /// Applies a linear map to the a-side.
    pub fn map_a<F: Fn(&Poly) -> Poly>(&self, f: F) -> Tensor {
        let mut out = Tensor::zero();
        for (a, lam) in &self.parts {
            let image = f(&Poly::monomial(Family::A, a.clone(), BigRational::one()));
            out.add_product(lam, &image);
        }
        out
    }

    pub fn mul_lambda(&self, p: &Poly) -> Tensor {
        let mut out = Tensor::zero();
        for (a, lam) in &self.parts {
            out.add_part(a.clone(), lam * p);
        }
        out
    }

    /// Renumbers λᵢ to λ_{i+offset}.
    pub fn shift_lambda(&self, offset: usize) -> Tensor {
        Tensor {
            parts: self
                .parts
                .iter()
                .map(|(a, lam)| (a.clone(), lam.shift_indices(offset)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero();
        for (a, x) in &self.parts {
            for (b, y) in &other.parts {
                out.add_part(a.add(b), x * y);
            }
        }
        out
    }
}

/// `π_{n,g}` straight from its defining sum over compositions:
/// `Σ_{r₁+⋯+rₙ=g} λ^r ⊗ a_{r₁}⋯a_{rₙ}`.
pub fn potenziante_by_compositions(n: usize, g: u32) -> Tensor {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Tensor) {
        if i + 1 == n {
            cur.push(left);
            let lam = ExponentVector::from_pairs(cur.iter().enumerate().map(|(j, &x)| (j + 1, x)));
            out.add_part(
                a_monomial(cur),
                Poly::monomial(Family::L, lam, BigRational::one()),
            );
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(i + 1, n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Tensor::zero();
    if n == 0 {
        if g == 0 {
            out.add_part(ExponentVector::one(), Poly::one(Family::L));
        }
        return out;
    }
    rec(0, n, g, &mut Vec::new(), &mut out);
    out
}

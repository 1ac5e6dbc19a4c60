//! Symmetric functions in λ₁..λₙ: partitions, the monomial sums `m_h`, the
//! elementary monomials `e^k`, the transition matrices between them, and the
//! reduction modulo λ₁+⋯+λₙ used for leading-exponent arguments.

mod reduce;
mod transition;

pub use reduce::{
    bar_reduce, e_bar_leading_exponent_formula, e_bar_monomial, lambda_bar_subset_sum,
    leading_exponent, leading_exponent_dense, p_h, q_n,
};
pub use transition::{
    beta_by_expansion, transition_alpha, transition_alpha_uncached, transition_beta, Direction,
    TransitionMatrix,
};

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Family, Poly};

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Parts padded with zeros to length `n` (`n >= len`).
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|i| self.0.iter().filter(|&&p| p >= i).count() as u32)
                .collect(),
        )
    }

    /// `4+2+0` style, padded to `n` parts.
    pub fn display_padded(&self, n: usize) -> String {
        join_plus(&self.padded(n))
    }
}

fn join_plus(v: &[u32]) -> String {
    if v.is_empty() {
        return "0".to_string();
    }
    v.iter().map(u32::to_string).collect::<Vec<_>>().join("+")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_plus(&self.0))
    }
}

/// All partitions of `g` with at most `max_parts` parts, every part at least
/// `min_part`, in reverse-lexicographic order (largest first).
pub fn partitions(g: u32, max_parts: usize, min_part: u32) -> Vec<Partition> {
    let min_part = min_part.max(1);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    partitions_rec(g, g, max_parts, min_part, &mut cur, &mut out);
    out
}

fn partitions_rec(
    remaining: u32,
    largest: u32,
    slots: usize,
    min_part: u32,
    cur: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (min_part..=largest.min(remaining)).rev() {
        cur.push(p);
        partitions_rec(remaining - p, p, slots - 1, min_part, cur, out);
        cur.pop();
    }
}

/// All partitions of `g` whose parts lie in `lo..=hi`, reverse-lexicographic.
/// With `lo = 2, hi = n` their number is `N_{n,g}`.
pub fn partitions_with_parts_between(g: u32, lo: u32, hi: u32) -> Vec<Partition> {
    let lo = lo.max(1);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    if hi >= lo || g == 0 {
        partitions_rec(g, hi.min(g), usize::MAX, lo, &mut cur, &mut out);
    }
    out
}

/// Exponents `(k₁,…,kₙ)` of an elementary monomial `e₁^{k₁}⋯eₙ^{kₙ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EIndex(Vec<u32>);

impl EIndex {
    pub fn new(k: Vec<u32>) -> Self {
        EIndex(k)
    }

    /// The index whose elementary monomial has leading exponent `mu`:
    /// `k_i = mu_i − mu_{i+1}`.
    pub fn from_leading_partition(mu: &Partition, n: usize) -> Self {
        let p = mu.padded(n);
        EIndex(
            (0..n)
                .map(|i| p[i] - p.get(i + 1).copied().unwrap_or(0))
                .collect(),
        )
    }

    pub fn k(&self) -> &[u32] {
        &self.0
    }

    /// `(k₂,…,kₙ)`.
    pub fn tail(&self) -> &[u32] {
        self.0.get(1..).unwrap_or(&[])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Σ i·kᵢ.
    pub fn weight(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &k)| (i as u64 + 1) * k as u64)
            .sum()
    }

    /// Exponent of the lex-leading monomial of `e^k`: `(Σ_{i≥1} kᵢ, Σ_{i≥2} kᵢ, …)`.
    pub fn leading_partition(&self) -> Partition {
        let mut acc = 0;
        let mut v: Vec<u32> = self
            .0
            .iter()
            .rev()
            .map(|&k| {
                acc += k;
                acc
            })
            .collect();
        v.reverse();
        Partition::new(v)
    }
}

impl fmt::Display for EIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All `EIndex` of length `n` and weight `g`, in reverse-lexicographic order
/// of their leading partitions.
pub fn e_indices(n: usize, g: u32) -> Vec<EIndex> {
    partitions(g, n, 1)
        .iter()
        .map(|mu| EIndex::from_leading_partition(mu, n))
        .collect()
}

/// Rearrangements of `v` in lexicographically decreasing order, without repeats.
fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // previous permutation in lex order
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] > cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] < cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `m_h(λ₁,…,λₙ)`: the sum over the Sₙ-orbit of `λ^h`.
pub fn monomial_sum(h: &Partition, n: usize) -> Result<Poly> {
    if h.len() > n {
        return Err(Error::TooManyParts {
            parts: h.len(),
            vars: n,
        });
    }
    let terms = distinct_permutations(&h.padded(n)).into_iter().map(|perm| {
        let e = ExponentVector::from_pairs(perm.into_iter().enumerate().map(|(i, k)| (i + 1, k)));
        (e, BigRational::one())
    });
    Ok(Poly::from_terms(Family::L, terms))
}

/// Strictly increasing `size`-subsets of `0..n`, in lexicographic order.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        rec(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// The elementary symmetric polynomial `e_i(λ₁,…,λₙ)`; zero when `i > n`.
pub fn elementary(i: usize, n: usize) -> Poly {
    let terms = subsets(n, i).into_iter().map(|s| {
        (
            ExponentVector::from_pairs(s.into_iter().map(|j| (j + 1, 1))),
            BigRational::one(),
        )
    });
    Poly::from_terms(Family::L, terms)
}

/// `e₁^{k₁}⋯e_m^{k_m}` expanded in λ₁..λₙ. Factors `e_i` with `i > n` vanish.
pub fn e_monomial(k: &EIndex, n: usize) -> Poly {
    let mut p = Poly::one(Family::L);
    for (i, &ki) in k.k().iter().enumerate() {
        if ki > 0 {
            p = &p * &elementary(i + 1, n).pow(ki);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn lam(s: &str) -> Poly {
        s.parse().unwrap()
    }

    /// Every weakly decreasing sequence of parts, by brute force over all
    /// vectors in `[0, g]^max_parts`.
    fn brute_partitions(g: u32, max_parts: usize, min_part: u32) -> Vec<Vec<u32>> {
        let mut out = std::collections::BTreeSet::new();
        let total = (g as usize + 1).pow(max_parts as u32);
        for mut code in 0..total {
            let mut v = Vec::new();
            for _ in 0..max_parts {
                v.push((code % (g as usize + 1)) as u32);
                code /= g as usize + 1;
            }
            if v.iter().sum::<u32>() != g {
                continue;
            }
            let mut parts: Vec<u32> = v.into_iter().filter(|&x| x > 0).collect();
            if parts.iter().any(|&x| x < min_part) {
                continue;
            }
            parts.sort_unstable_by(|a, b| b.cmp(a));
            out.insert(parts);
        }
        let mut out: Vec<_> = out.into_iter().collect();
        out.reverse();
        out
    }

    #[test]
    fn partitions_match_enumeration() {
        for g in 0..9 {
            for n in 1..5 {
                for min in 1..3 {
                    let got: Vec<Vec<u32>> = partitions(g, n, min)
                        .into_iter()
                        .map(|p| p.parts().to_vec())
                        .collect();
                    assert_eq!(got, brute_partitions(g, n, min), "g={g} n={n} min={min}");
                }
            }
        }
    }

    #[test]
    fn partition_examples() {
        assert_eq!(
            partitions_with_parts_between(6, 2, 4),
            vec![pp(&[4, 2]), pp(&[3, 3]), pp(&[2, 2, 2])]
        );
        assert_eq!(partitions(0, 3, 1), vec![Partition::empty()]);
        assert!(partitions(1, 3, 2).is_empty());
        assert_eq!(
            partitions_with_parts_between(0, 2, 1),
            vec![Partition::empty()]
        );
        // at most 4 parts, each >= 2
        assert_eq!(
            partitions(6, 4, 2),
            vec![pp(&[6]), pp(&[4, 2]), pp(&[3, 3]), pp(&[2, 2, 2])]
        );
    }

    #[test]
    fn partition_printing() {
        assert_eq!(pp(&[4, 2]).to_string(), "4+2");
        assert_eq!(pp(&[4, 2]).display_padded(3), "4+2+0");
        assert_eq!(Partition::empty().to_string(), "0");
        assert_eq!(pp(&[3, 1, 1]).conjugate(), pp(&[3, 1, 1]));
        assert_eq!(pp(&[4, 2]).conjugate(), pp(&[2, 2, 1, 1]));
    }

    #[test]
    fn monomial_sum_examples() {
        assert_eq!(
            monomial_sum(&pp(&[2, 1]), 3).unwrap(),
            lam("L1^2*L2 + L1^2*L3 + L2^2*L1 + L2^2*L3 + L3^2*L1 + L3^2*L2")
        );
        assert_eq!(monomial_sum(&pp(&[1, 1, 1]), 3).unwrap(), lam("L1*L2*L3"));
        assert_eq!(monomial_sum(&pp(&[3]), 2).unwrap(), lam("L1^3 + L2^3"));
        assert_eq!(
            monomial_sum(&pp(&[1, 1, 1]), 2),
            Err(Error::TooManyParts { parts: 3, vars: 2 })
        );
    }

    #[test]
    fn e_monomial_examples() {
        let m = |parts: &[u32]| monomial_sum(&pp(parts), 3).unwrap();
        assert_eq!(e_monomial(&EIndex::new(vec![0, 0, 1]), 3), lam("L1*L2*L3"));
        assert_eq!(
            e_monomial(&EIndex::new(vec![1, 1, 0]), 3),
            &m(&[2, 1]) + &m(&[1, 1, 1]).scale_int(3)
        );
        assert_eq!(
            e_monomial(&EIndex::new(vec![3, 0, 0]), 3),
            &(&m(&[3]) + &m(&[2, 1]).scale_int(3)) + &m(&[1, 1, 1]).scale_int(6)
        );
        assert!(e_monomial(&EIndex::new(vec![0, 0, 1]), 2).is_zero());
    }

    #[test]
    fn e_indices_order_follows_leading_partitions() {
        let ks: Vec<Vec<u32>> = e_indices(3, 3).iter().map(|k| k.k().to_vec()).collect();
        assert_eq!(ks, vec![vec![3, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        for n in 1..6 {
            for g in 0..10 {
                let ks = e_indices(n, g);
                assert_eq!(ks.len(), partitions(g, n, 1).len());
                for k in &ks {
                    assert_eq!(k.weight(), g as u64);
                    assert_eq!(k.n(), n);
                }
            }
        }
    }

    #[test]
    fn distinct_permutation_counts() {
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }
}

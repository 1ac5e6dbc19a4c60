//! Transition matrices between the monomial-sum basis `m_h` and the
//! elementary monomial basis `e^k` of symmetric polynomials of degree `g` in
//! `n` variables.
//!
//! β has rows indexed by partitions and columns by e-indices: column `k` holds
//! the expansion of `e^k` in the `m_h`. α is its inverse, rows indexed by
//! e-indices and columns by partitions: column `h` holds the expansion of
//! `m_h` in the `e^k`. Both are composable as plain matrices, so `α·β = I`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{e_indices, e_monomial, partitions, subsets, EIndex, Partition};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::poly::ExponentVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// e-monomials expanded in monomial sums.
    Beta,
    /// monomial sums expanded in e-monomials.
    Alpha,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub n: usize,
    pub g: u32,
    pub direction: Direction,
    pub partitions: Vec<Partition>,
    pub e_indices: Vec<EIndex>,
    /// `Beta`: `entries[h][k]`. `Alpha`: `entries[k][h]`.
    pub entries: IntMatrix,
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.partitions.len()
    }

    /// Entry pairing the `h`-th partition with the `k`-th e-index, whatever
    /// the storage orientation.
    pub fn at(&self, h: usize, k: usize) -> &BigInt {
        match self.direction {
            Direction::Beta => &self.entries[h][k],
            Direction::Alpha => &self.entries[k][h],
        }
    }

    pub fn compose(&self, other: &TransitionMatrix) -> IntMatrix {
        linalg::mat_mul(&self.entries, &other.entries)
    }

    /// True when every diagonal entry is 1 and every entry above the
    /// diagonal is 0, with rows and columns in their canonical order.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, x)| match j.cmp(&i) {
                std::cmp::Ordering::Equal => x.is_one(),
                std::cmp::Ordering::Greater => x.is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
    }
}

impl Serialize for TransitionMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<Vec<u32>> = self.partitions.iter().map(|p| p.padded(self.n)).collect();
        let ks: Vec<&[u32]> = self.e_indices.iter().map(|k| k.k()).collect();
        let entries: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(BigInt::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("TransitionMatrix", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("g", &self.g)?;
        match self.direction {
            Direction::Beta => {
                st.serialize_field("direction", "beta")?;
                st.serialize_field("rows", &parts)?;
                st.serialize_field("cols", &ks)?;
            }
            Direction::Alpha => {
                st.serialize_field("direction", "alpha")?;
                st.serialize_field("rows", &ks)?;
                st.serialize_field("cols", &parts)?;
            }
        }
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// A symmetric polynomial stored by its coefficients on sorted exponents,
/// i.e. in the monomial-sum basis. Keys are padded to `n`.
type MBasis = BTreeMap<Vec<u32>, BigInt>;

/// Multiplies a symmetric polynomial by `e_i`: the coefficient of `λ^μ` in
/// `P·e_i` is the sum over `i`-subsets `S` of the coefficient of `λ^{μ−1_S}`
/// in `P`, and `P` is symmetric so unsorted exponents can be sorted.
fn times_elementary(p: &MBasis, i: usize, n: usize, degree: u32) -> MBasis {
    let subs = subsets(n, i);
    let mut out = MBasis::new();
    for mu in partitions(degree + i as u32, n, 1) {
        let mu = mu.padded(n);
        let mut acc = BigInt::zero();
        for s in &subs {
            if s.iter().any(|&j| mu[j] == 0) {
                continue;
            }
            let mut nu = mu.clone();
            for &j in s {
                nu[j] -= 1;
            }
            nu.sort_unstable_by(|a, b| b.cmp(a));
            if let Some(c) = p.get(&nu) {
                acc += c;
            }
        }
        if !acc.is_zero() {
            out.insert(mu, acc);
        }
    }
    out
}

struct EProducts {
    n: usize,
    memo: HashMap<Vec<u32>, MBasis>,
}

impl EProducts {
    fn new(n: usize) -> Self {
        let mut memo = HashMap::new();
        let mut one = MBasis::new();
        one.insert(vec![0; n], BigInt::one());
        memo.insert(vec![0; n], one);
        EProducts { n, memo }
    }

    fn get(&mut self, k: &[u32]) -> MBasis {
        if let Some(p) = self.memo.get(k) {
            return p.clone();
        }
        let j = k
            .iter()
            .rposition(|&x| x > 0)
            .expect("zero index is memoized");
        let mut smaller = k.to_vec();
        smaller[j] -= 1;
        let base = self.get(&smaller);
        let weight: u32 = smaller
            .iter()
            .enumerate()
            .map(|(i, &x)| (i as u32 + 1) * x)
            .sum();
        let p = times_elementary(&base, j + 1, self.n, weight);
        self.memo.insert(k.to_vec(), p.clone());
        p
    }
}

/// β for `(n, g)`: `β[h][k]` is the coefficient of `λ^h` in `e^k`.
pub fn transition_beta(n: usize, g: u32) -> TransitionMatrix {
    let parts = partitions(g, n, 1);
    let ks = e_indices(n, g);
    let mut products = EProducts::new(n);
    let columns: Vec<MBasis> = ks.iter().map(|k| products.get(k.k())).collect();
    let entries = parts
        .iter()
        .map(|h| {
            let key = h.padded(n);
            columns
                .iter()
                .map(|col| col.get(&key).cloned().unwrap_or_else(BigInt::zero))
                .collect()
        })
        .collect();
    TransitionMatrix {
        n,
        g,
        direction: Direction::Beta,
        partitions: parts,
        e_indices: ks,
        entries,
    }
}

/// β computed by expanding every `e^k` as a λ-polynomial and reading off
/// coefficients. Slow; kept as a cross-check of [`transition_beta`].
pub fn beta_by_expansion(n: usize, g: u32) -> TransitionMatrix {
    let parts = partitions(g, n, 1);
    let ks = e_indices(n, g);
    let expanded: Vec<_> = ks.iter().map(|k| e_monomial(k, n)).collect();
    let entries = parts
        .iter()
        .map(|h| {
            let e =
                ExponentVector::from_pairs(h.parts().iter().enumerate().map(|(i, &x)| (i + 1, x)));
            expanded.iter().map(|p| p.coeff(&e).to_integer()).collect()
        })
        .collect();
    TransitionMatrix {
        n,
        g,
        direction: Direction::Beta,
        partitions: parts,
        e_indices: ks,
        entries,
    }
}

/// α for `(n, g)` computed from β by fraction-free inversion, bypassing the cache.
pub fn transition_alpha_uncached(n: usize, g: u32) -> Result<TransitionMatrix> {
    let beta = transition_beta(n, g);
    let (num, d) = linalg::inverse_scaled(&beta.entries)
        .ok_or_else(|| Error::Internal(format!("transition matrix β({n},{g}) is singular")))?;
    let mut entries = num;
    for row in entries.iter_mut() {
        for x in row.iter_mut() {
            let (q, r) = x.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "transition matrix α({n},{g}) has a non-integral entry"
                )));
            }
            *x = q;
        }
    }
    Ok(TransitionMatrix {
        n,
        g,
        direction: Direction::Alpha,
        partitions: beta.partitions,
        e_indices: beta.e_indices,
        entries,
    })
}

type AlphaCache = RwLock<HashMap<(usize, u32), Arc<TransitionMatrix>>>;

fn alpha_cache() -> &'static AlphaCache {
    static CACHE: OnceLock<AlphaCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// α for `(n, g)`, memoized process-wide.
pub fn transition_alpha(n: usize, g: u32) -> Result<Arc<TransitionMatrix>> {
    if let Some(m) = alpha_cache().read().unwrap().get(&(n, g)) {
        return Ok(Arc::clone(m));
    }
    let m = Arc::new(transition_alpha_uncached(n, g)?);
    let mut cache = alpha_cache().write().unwrap();
    Ok(Arc::clone(cache.entry((n, g)).or_insert(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_matrix, is_identity};

    #[test]
    fn beta_examples() {
        let b = transition_beta(3, 3);
        assert_eq!(b.entries, int_matrix(&[&[1, 0, 0], &[3, 1, 0], &[6, 3, 1]]));
        assert_eq!(transition_beta(1, 2).entries, int_matrix(&[&[1]]));
        assert_eq!(
            transition_beta(2, 2).entries,
            int_matrix(&[&[1, 0], &[2, 1]])
        );
    }

    #[test]
    fn alpha_examples() {
        // m3 = e1^3 - 3e1e2 + 3e3; m21 = e1e2 - 3e3; m111 = e3
        let a = transition_alpha(3, 3).unwrap();
        assert_eq!(
            a.entries,
            int_matrix(&[&[1, 0, 0], &[-3, 1, 0], &[3, -3, 1]])
        );
        // m2 = e1^2 - 2e2; m11 = e2
        let a = transition_alpha(2, 2).unwrap();
        assert_eq!(a.entries, int_matrix(&[&[1, 0], &[-2, 1]]));
        assert_eq!(*a.at(0, 1), BigInt::from(-2));
    }

    #[test]
    fn fast_beta_agrees_with_expansion() {
        for n in 1..=4 {
            for g in 0..=7 {
                assert_eq!(
                    transition_beta(n, g),
                    beta_by_expansion(n, g),
                    "n={n} g={g}"
                );
            }
        }
    }

    #[test]
    fn alpha_beta_identity_and_triangularity() {
        for n in 1..=5 {
            for g in 0..=12 {
                let b = transition_beta(n, g);
                let a = transition_alpha(n, g).unwrap();
                assert!(is_identity(&a.compose(&b)), "n={n} g={g}");
                assert!(is_identity(&b.compose(&a)), "n={n} g={g}");
                assert!(b.entries.iter().flatten().all(|x| *x >= BigInt::zero()));
                // unitriangular under reverse-lex rows and leading-partition columns
                assert!(b.is_lower_unitriangular(), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn cache_is_transparent() {
        for (n, g) in [(3, 6), (4, 9), (5, 4)] {
            let cached = transition_alpha(n, g).unwrap();
            let again = transition_alpha(n, g).unwrap();
            assert!(Arc::ptr_eq(&cached, &again));
            assert_eq!(*cached, transition_alpha_uncached(n, g).unwrap());
        }
    }

    #[test]
    fn json_layout() {
        let s = serde_json::to_string(&transition_beta(2, 2)).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"g":2,"direction":"beta","rows":[[2,0],[1,1]],"cols":[[2,0],[0,1]],"entries":[["1","0"],["2","1"]]}"#
        );
    }
}

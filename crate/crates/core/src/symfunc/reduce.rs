//! Reduction modulo λ₁+⋯+λₙ, the products `p_h` and `q_n`, and leading
//! exponents in the reduced variables λ̄₁..λ̄_{n−1}.

use num_rational::BigRational;
use num_traits::One;

use super::{elementary, subsets};
use crate::error::{Error, Result};
use crate::poly::{ExponentVector, Family, Poly};

fn minus_sum_of_first(n: usize) -> Poly {
    let terms = (1..n).map(|i| (ExponentVector::var(i, 1), -BigRational::one()));
    Poly::from_terms(Family::L, terms)
}

/// Substitutes `λₙ := −(λ₁+⋯+λ_{n−1})`.
pub fn bar_reduce(p: &Poly, n: usize) -> Result<Poly> {
    if p.family() != Family::L {
        return Err(Error::FamilyMismatch(p.family(), Family::L));
    }
    if n == 0 || p.max_index().is_some_and(|m| m > n) {
        return Err(Error::OutOfRange(format!(
            "polynomial uses variables beyond λ{n}"
        )));
    }
    p.substitute(n, &minus_sum_of_first(n))
}

/// `λ̄_T = Σ_{i∈T} λ̄ᵢ` for a set of 1-based indices, with λ̄ₙ eliminated.
pub fn lambda_bar_subset_sum(t: &[usize], n: usize) -> Poly {
    let mut p = Poly::zero(Family::L);
    for &i in t {
        let v = if i == n {
            minus_sum_of_first(n)
        } else {
            Poly::lambda(i)
        };
        p = &p + &v;
    }
    p
}

/// `p_h` for `n` variables: the product of `λ̄_T` over `h`-subsets `T`, or over
/// those containing 1 when `n = 2h`. Factors are multiplied in lexicographic
/// order of `T` with no sign normalization.
pub fn p_h(n: usize, h: usize) -> Result<Poly> {
    if h == 0 || 2 * h > n {
        return Err(Error::OutOfRange(format!(
            "p_h needs 1 <= h <= n/2, got h={h} for n={n}"
        )));
    }
    let mut p = Poly::one(Family::L);
    for s in subsets(n, h) {
        if 2 * h == n && s[0] != 0 {
            continue;
        }
        let t: Vec<usize> = s.into_iter().map(|i| i + 1).collect();
        p = &p * &lambda_bar_subset_sum(&t, n);
    }
    Ok(p)
}

/// `q_n = p₁p₂⋯p_m`, `m = ⌊n/2⌋`, of degree `2^{n−1}−1`.
pub fn q_n(n: usize) -> Result<Poly> {
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "q_n is defined for n >= 3, got {n}"
        )));
    }
    let mut q = Poly::one(Family::L);
    for h in 1..=n / 2 {
        q = &q * &p_h(n, h)?;
    }
    Ok(q)
}

/// Lexicographic leading exponent.
pub fn leading_exponent(p: &Poly) -> Result<ExponentVector> {
    p.leading_exponent()
}

/// Leading exponent as the dense vector `(r₁,…,r_{n−1})` over λ̄₁..λ̄_{n−1}.
pub fn leading_exponent_dense(p: &Poly, n: usize) -> Result<Vec<u32>> {
    Ok(p.leading_exponent()?.dense(1, n.saturating_sub(1)))
}

/// `ē₂^{h₂}⋯ēₙ^{hₙ}` in λ̄₁..λ̄_{n−1}; `h` is the tail `(h₂,…,hₙ)`.
pub fn e_bar_monomial(h: &[u32], n: usize) -> Result<Poly> {
    let mut p = Poly::one(Family::L);
    for (j, &hj) in h.iter().enumerate() {
        if hj == 0 {
            continue;
        }
        let i = j + 2;
        let ei = bar_reduce(&elementary(i, n), n)?;
        p = &p * &ei.pow(hj);
    }
    Ok(p)
}

/// `(2(h₂+⋯+hₙ), h₃+⋯+hₙ, …, hₙ)`, the predicted leading exponent of `ē^h`.
pub fn e_bar_leading_exponent_formula(h: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = (0..h.len()).map(|i| h[i..].iter().sum()).collect();
    if let Some(first) = out.first_mut() {
        *first *= 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::{e_indices, EIndex};

    fn lam(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn bar_reduce_examples() {
        assert!(bar_reduce(&elementary(1, 3), 3).unwrap().is_zero());
        assert_eq!(bar_reduce(&elementary(2, 2), 2).unwrap(), lam("-L1^2"));
        assert_eq!(
            bar_reduce(&lam("L1*L2*L3"), 3).unwrap(),
            lam("-L1^2*L2 - L1*L2^2")
        );
        assert!(bar_reduce(&lam("L4"), 3).is_err());
        assert!(bar_reduce(&Poly::a(1), 3).is_err());
    }

    #[test]
    fn p_h_examples() {
        assert_eq!(p_h(3, 1).unwrap(), lam("-L1^2*L2 - L1*L2^2"));
        assert_eq!(p_h(4, 2).unwrap().bidegree_l(), 3);
        assert_eq!(p_h(5, 2).unwrap().bidegree_l(), 10);
        assert_eq!(p_h(5, 1).unwrap().bidegree_l(), 5);
        assert_eq!(p_h(6, 3).unwrap().bidegree_l(), 10);
        assert!(p_h(4, 3).is_err());
        assert!(p_h(4, 0).is_err());
    }

    #[test]
    fn q_n_examples() {
        let q3 = q_n(3).unwrap();
        assert_eq!(q3, lam("-L1^2*L2 - L1*L2^2"));
        assert_eq!(leading_exponent_dense(&q3, 3).unwrap(), vec![2, 1]);
        assert_eq!(q_n(4).unwrap().bidegree_l(), 7);
        assert_eq!(q_n(5).unwrap().bidegree_l(), 15);
        assert_eq!(
            leading_exponent_dense(&q_n(4).unwrap(), 4).unwrap(),
            vec![4, 2, 1]
        );
        assert!(q_n(2).is_err());
    }

    #[test]
    fn e_bar_leading_exponents() {
        for n in 2..=5 {
            let e2 = bar_reduce(&elementary(2, n), n).unwrap();
            let mut want = vec![0; n - 1];
            want[0] = 2;
            assert_eq!(leading_exponent_dense(&e2, n).unwrap(), want);
        }
        for n in 3..=5 {
            for g in 0..=9 {
                let mut seen = std::collections::HashSet::new();
                for k in e_indices(n, g).into_iter().filter(|k| k.k()[0] == 0) {
                    let e = e_bar_monomial(k.tail(), n).unwrap();
                    let le = leading_exponent_dense(&e, n).unwrap();
                    assert_eq!(le, e_bar_leading_exponent_formula(k.tail()), "n={n} k={k}");
                    assert!(seen.insert(le), "repeated leading exponent n={n} g={g}");
                }
            }
        }
    }

    #[test]
    fn leading_exponent_is_additive() {
        let a = e_bar_monomial(&[1, 0, 1], 4).unwrap();
        let b = p_h(4, 1).unwrap();
        let la = a.leading_exponent().unwrap();
        let lb = b.leading_exponent().unwrap();
        assert_eq!((&a * &b).leading_exponent().unwrap(), la.add(&lb));
        assert_eq!(
            leading_exponent(&Poly::zero(Family::L)),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn middle_p_is_symmetric() {
        // p_m for n = 2m, written over λ₁..λₙ before elimination
        for m in 2..=3 {
            let n = 2 * m;
            let mut unreduced = Poly::one(Family::L);
            for s in subsets(n, m).into_iter().filter(|s| s[0] == 0) {
                let t: Poly = s
                    .iter()
                    .fold(Poly::zero(Family::L), |acc, &i| &acc + &Poly::lambda(i + 1));
                unreduced = &unreduced * &t;
            }
            let base = bar_reduce(&unreduced, n).unwrap();
            assert_eq!(base, p_h(n, m).unwrap());
            for i in 1..=n {
                for j in i + 1..=n {
                    let swapped = unreduced.map_indices(|x| {
                        if x == i {
                            j
                        } else if x == j {
                            i
                        } else {
                            x
                        }
                    });
                    assert_eq!(bar_reduce(&swapped, n).unwrap(), base, "n={n} ({i} {j})");
                }
            }
        }
    }

    #[test]
    fn threshold_e_monomial_shares_q_leading_exponent() {
        assert_eq!(
            leading_exponent_dense(&e_bar_monomial(&[0, 1], 3).unwrap(), 3).unwrap(),
            vec![2, 1]
        );
        let k = EIndex::new(vec![0, 0, 1, 1]);
        assert_eq!(
            leading_exponent_dense(&e_bar_monomial(k.tail(), 4).unwrap(), 4).unwrap(),
            vec![4, 2, 1]
        );
    }

    trait TotalDegree {
        fn bidegree_l(&self) -> u64;
    }

    impl TotalDegree for Poly {
        fn bidegree_l(&self) -> u64 {
            let d = self.terms().next().unwrap().0.degree();
            assert!(self.terms().all(|(e, _)| e.degree() == d));
            d
        }
    }
}

//! Perpetuants: Stroh's series, the threshold filter on the `U_k`, the
//! decomposable U-invariants and the certificate that the two are
//! complementary.

use std::fmt;

use serde::Serialize;

use crate::basis::{
    dim_by_partitions, divide_by_denominator, kernel_oracle, rank_of, span_equal, u_basis,
    DimensionSeries, InvariantElement,
};
use crate::error::{Error, Result};
use crate::poly::{rat, Poly};
use crate::symfunc::e_indices;

/// Coefficients of `x^{2^{n−1}−1}/((1−x²)⋯(1−xⁿ))` for `n ≥ 3`,
/// `x²/(1−x²)` for `n = 2` and `1` for `n = 1`, up to `x^{g_max}`.
pub fn stroh_series(n: usize, g_max: u32) -> Result<DimensionSeries> {
    let len = g_max as usize + 1;
    let mut coeffs = vec![0u64; len];
    let coefficients = match n {
        0 => return Err(Error::OutOfRange("stroh_series needs degree n >= 1".into())),
        1 => {
            coeffs[0] = 1;
            coeffs
        }
        2 => {
            if len > 2 {
                coeffs[2] = 1;
            }
            divide_by_denominator(coeffs, 2)
        }
        _ => {
            let shift = threshold_weight(n);
            if shift < len as u64 {
                coeffs[shift as usize] = 1;
            }
            divide_by_denominator(coeffs, n)
        }
    };
    Ok(DimensionSeries { n, coefficients })
}

fn threshold_weight(n: usize) -> u64 {
    (1u64 << (n - 1)) - 1
}

/// The vector `𝐧` of the tail `(k₂,…,kₙ)` above which the `U_k` are perpetuants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdVector {
    pub n: usize,
    pub k: Vec<u32>,
}

impl ThresholdVector {
    pub fn weight(&self) -> u64 {
        weight_of_tail(&self.k)
    }

    /// `k ⪰ 𝐧` componentwise.
    pub fn is_dominated_by(&self, k: &[u32]) -> bool {
        k.len() == self.k.len() && k.iter().zip(&self.k).all(|(a, b)| a >= b)
    }

    /// `𝐧 + eᵢ` for `2 ≤ i ≤ n`.
    pub fn bumped(&self, i: usize) -> ThresholdVector {
        let mut k = self.k.clone();
        k[i - 2] += 1;
        ThresholdVector { n: self.n, k }
    }
}

impl fmt::Display for ThresholdVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.k.iter().map(u32::to_string).collect();
        write!(f, "({})", k.join(","))
    }
}

fn weight_of_tail(k: &[u32]) -> u64 {
    k.iter()
        .enumerate()
        .map(|(i, &x)| (i as u64 + 2) * u64::from(x))
        .sum()
}

fn require_perpetuant_degree(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::OutOfRange(format!(
            "perpetuants of degree {n} are special cases: degree 1 has only a0 in weight 0, \
             degree 2 has one perpetuant in each even weight (see degree2_perpetuant)"
        )));
    }
    Ok(())
}

/// `(0,1)` for `n = 3`; `(0,2^{n−4},…,2,1,1)` for `n ≥ 4`.
pub fn threshold(n: usize) -> Result<ThresholdVector> {
    require_perpetuant_degree(n)?;
    let k = if n == 3 {
        vec![0, 1]
    } else {
        let mut k = vec![0];
        k.extend((3..n).map(|j| 1u32 << (n - j - 1)));
        k.push(1);
        k
    };
    let t = ThresholdVector { n, k };
    if t.weight() != threshold_weight(n) {
        return Err(Error::Internal(format!(
            "threshold {t} has weight {} instead of {}",
            t.weight(),
            threshold_weight(n)
        )));
    }
    Ok(t)
}

/// The `U_k` of `S_{n,g}` with `k ⪰ 𝐧`.
pub fn perpetuant_basis(n: usize, g: u32) -> Result<Vec<InvariantElement>> {
    perpetuant_basis_with_threshold(n, g, &threshold(n)?)
}

/// [`perpetuant_basis`] with an arbitrary threshold.
pub fn perpetuant_basis_with_threshold(
    n: usize,
    g: u32,
    t: &ThresholdVector,
) -> Result<Vec<InvariantElement>> {
    require_perpetuant_degree(n)?;
    Ok(u_basis(n, g)?
        .into_iter()
        .filter(|e| t.is_dominated_by(&e.k))
        .collect())
}

/// Number of tails `k ⪰ t` of weight `g`, read off the index set alone.
pub fn count_dominating(t: &ThresholdVector, g: u32) -> u64 {
    e_indices(t.n, g)
        .into_iter()
        .filter(|k| k.k()[0] == 0 && t.is_dominated_by(k.tail()))
        .count() as u64
}

/// `Σ_{j<h} 2(−1)^j a_j a_{g−j} + (−1)^h a_h²` for `g = 2h`, the perpetuant
/// of degree 2 and weight `g`.
pub fn degree2_perpetuant(g: u32) -> Result<Poly> {
    if g == 0 || g % 2 == 1 {
        return Err(Error::OutOfRange(format!(
            "degree-2 perpetuants exist only in positive even weight, got {g}"
        )));
    }
    let h = g / 2;
    let sign = |j: u32| if j.is_multiple_of(2) { 1 } else { -1 };
    let mut p = Poly::a(h as usize).pow(2).scale_int(sign(h));
    for j in 0..h {
        let term = &Poly::a(j as usize) * &Poly::a((g - j) as usize);
        p = &p + &term.scale(&rat(2 * sign(j)));
    }
    Ok(p)
}

/// Products `u·v` with `u ∈ S_{h,j}`, `v ∈ S_{n−h,g−j}`, `1 ≤ h ≤ n/2`, over
/// basis elements of both factors. Their span is the decomposable part of
/// `S_{n,g}`.
pub fn decomposable_span(n: usize, g: u32) -> Result<Vec<Poly>> {
    decomposable_span_from(n, g, |d, w| {
        Ok(u_basis(d, w)?.into_iter().map(|e| e.value).collect())
    })
}

/// [`decomposable_span`] with the factor spaces supplied by `basis(degree, weight)`.
pub fn decomposable_span_from<F>(n: usize, g: u32, mut basis: F) -> Result<Vec<Poly>>
where
    F: FnMut(usize, u32) -> Result<Vec<Poly>>,
{
    if n < 2 {
        return Err(Error::OutOfRange(format!(
            "decomposable span needs degree n >= 2, got {n}"
        )));
    }
    let mut out = Vec::new();
    for h in 1..=n / 2 {
        for j in 0..=g {
            if dim_by_partitions(h, j) == 0 || dim_by_partitions(n - h, g - j) == 0 {
                continue;
            }
            let left = basis(h, j)?;
            let right = basis(n - h, g - j)?;
            for u in &left {
                for v in &right {
                    out.push(u * v);
                }
            }
        }
    }
    Ok(out)
}

/// Result of checking `Dec_{n,g} ⊕ span(perpetuant basis) = S_{n,g}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementCertificate {
    pub n: usize,
    pub g: u32,
    pub dim_total: usize,
    pub dim_dec: usize,
    pub dim_perp: usize,
    pub stroh: u64,
    pub ok: bool,
    /// Rank of the selected perpetuant elements.
    #[serde(skip)]
    pub rank_perp: usize,
    /// Rank of decomposables and perpetuants together.
    #[serde(skip)]
    pub rank_union: usize,
}

impl fmt::Display for ComplementCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} g={} dim S={} dim Dec={} perpetuants={} stroh={} {}",
            self.n,
            self.g,
            self.dim_total,
            self.dim_dec,
            self.dim_perp,
            self.stroh,
            if self.ok { "ok" } else { "FAILED" }
        )?;
        if !self.ok {
            write!(
                f,
                " (rank perp={}, rank Dec+perp={})",
                self.rank_perp, self.rank_union
            )?;
        }
        Ok(())
    }
}

pub fn verify_complement(n: usize, g: u32) -> Result<ComplementCertificate> {
    verify_complement_with_threshold(n, g, &threshold(n)?)
}

/// Certificate for the perpetuant basis selected by `t`.
pub fn verify_complement_with_threshold(
    n: usize,
    g: u32,
    t: &ThresholdVector,
) -> Result<ComplementCertificate> {
    require_perpetuant_degree(n)?;
    let total = kernel_oracle(n, g);
    let dec = decomposable_span(n, g)?;
    let perp: Vec<Poly> = perpetuant_basis_with_threshold(n, g, t)?
        .into_iter()
        .map(|e| e.value)
        .collect();
    let stroh = stroh_series(n, g)?.at(g);

    let dec_refs: Vec<&Poly> = dec.iter().collect();
    let perp_refs: Vec<&Poly> = perp.iter().collect();
    let dim_dec = rank_of(&dec_refs);
    let rank_perp = rank_of(&perp_refs);
    let both: Vec<Poly> = dec.iter().chain(&perp).cloned().collect();
    let report = span_equal(&both, &total)?;

    let dim_total = total.len();
    let dim_perp = perp.len();
    let ok = report.equal
        && report.rank_b == dim_total
        && rank_perp == dim_perp
        && dim_dec + dim_perp == dim_total
        && dim_perp as u64 == stroh;
    Ok(ComplementCertificate {
        n,
        g,
        dim_total,
        dim_dec,
        dim_perp,
        stroh,
        ok,
        rank_perp,
        rank_union: report.rank_a,
    })
}

/// Whether some subset of the `U_k` of `S_{n,g}` spans `Dec_{n,g}`: true
/// exactly when the `U_k` lying in `Dec_{n,g}` already span it.
pub fn u_subset_spans_decomposables(n: usize, g: u32) -> Result<bool> {
    let dec = decomposable_span(n, g)?;
    let dec_refs: Vec<&Poly> = dec.iter().collect();
    let dim_dec = rank_of(&dec_refs);
    let inside: Vec<Poly> = u_basis(n, g)?
        .into_iter()
        .map(|e| e.value)
        .filter(|u| {
            let mut with = dec_refs.clone();
            with.push(u);
            rank_of(&with) == dim_dec
        })
        .collect();
    let inside_refs: Vec<&Poly> = inside.iter().collect();
    Ok(rank_of(&inside_refs) == dim_dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::dim_series;
    use crate::umbral::derivation_d;

    fn a(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn stroh_examples() {
        assert_eq!(
            stroh_series(3, 9).unwrap().coefficients[3..],
            [1, 0, 1, 1, 1, 1, 2]
        );
        assert_eq!(
            stroh_series(4, 11).unwrap().coefficients[7..],
            [1, 0, 1, 1, 2]
        );
        let s2 = stroh_series(2, 12).unwrap();
        for g in 0..=12 {
            assert_eq!(s2.at(g), u64::from(g >= 2 && g % 2 == 0), "g={g}");
        }
        assert_eq!(stroh_series(1, 3).unwrap().coefficients, vec![1, 0, 0, 0]);
        assert_eq!(stroh_series(5, 14).unwrap().coefficients, vec![0; 15]);
        assert!(stroh_series(0, 3).is_err());
    }

    #[test]
    fn stroh_is_shifted_dimension_series() {
        for n in 3..=6 {
            let shift = threshold_weight(n) as u32;
            let s = stroh_series(n, shift + 20).unwrap();
            let d = dim_series(n, 20).unwrap();
            for g in 0..=20 {
                assert_eq!(s.at(g + shift), d.at(g));
            }
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold(3).unwrap().k, vec![0, 1]);
        assert_eq!(threshold(3).unwrap().weight(), 3);
        assert_eq!(threshold(4).unwrap().k, vec![0, 1, 1]);
        assert_eq!(threshold(4).unwrap().weight(), 7);
        assert_eq!(threshold(5).unwrap().k, vec![0, 2, 1, 1]);
        assert_eq!(threshold(5).unwrap().weight(), 15);
        assert_eq!(threshold(7).unwrap().weight(), 63);
        assert!(threshold(2).is_err());
    }

    #[test]
    fn counting_identity() {
        for n in 3..=5 {
            let t = threshold(n).unwrap();
            let s = stroh_series(n, 20).unwrap();
            for g in 0..=20 {
                assert_eq!(count_dominating(&t, g), s.at(g), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn perpetuant_basis_examples() {
        let p = perpetuant_basis(3, 5).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].k, vec![1, 1]);
        assert!(perpetuant_basis(4, 8).unwrap().is_empty());
        assert!(perpetuant_basis(3, 2).unwrap().is_empty());
        assert!(perpetuant_basis(2, 2).is_err());
    }

    #[test]
    fn degree2_examples() {
        assert_eq!(degree2_perpetuant(2).unwrap(), a("2*a0*a2 - a1^2"));
        assert_eq!(
            degree2_perpetuant(4).unwrap(),
            a("2*a0*a4 - 2*a1*a3 + a2^2")
        );
        assert_eq!(
            degree2_perpetuant(6).unwrap(),
            a("2*a0*a6 - 2*a1*a5 + 2*a2*a4 - a3^2")
        );
        for g in (2..=20).step_by(2) {
            assert!(derivation_d(&degree2_perpetuant(g).unwrap()).is_zero());
        }
        assert!(degree2_perpetuant(0).is_err());
        assert!(degree2_perpetuant(5).is_err());
    }

    #[test]
    fn decomposable_examples() {
        let rank = |n, g| {
            let d = decomposable_span(n, g).unwrap();
            rank_of(&d.iter().collect::<Vec<_>>())
        };
        assert_eq!(rank(3, 7), 0);
        assert_eq!(rank(4, 6), 3);
        assert_eq!(rank(2, 2), 0);
        assert_eq!(rank(2, 0), 1);
    }

    #[test]
    fn certificate_examples() {
        let c = verify_complement(3, 7).unwrap();
        assert_eq!(
            (c.dim_total, c.dim_dec, c.dim_perp, c.stroh, c.ok),
            (1, 0, 1, 1, true)
        );
        let c = verify_complement(4, 6).unwrap();
        assert_eq!(
            (c.dim_total, c.dim_dec, c.dim_perp, c.stroh, c.ok),
            (3, 3, 0, 0, true)
        );
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"n":4,"g":6,"dim_total":3,"dim_dec":3,"dim_perp":0,"stroh":0,"ok":true}"#
        );
        let c = verify_complement(3, 3).unwrap();
        assert_eq!(
            (c.dim_total, c.dim_dec, c.dim_perp, c.stroh, c.ok),
            (1, 0, 1, 1, true)
        );
        assert!(verify_complement(2, 4).is_err());
    }

    #[test]
    fn certificates_hold_for_cubic_and_quartic_degrees() {
        for n in 3..=4 {
            for g in 0..=10 {
                let c = verify_complement(n, g).unwrap();
                assert!(c.ok, "{c}");
                assert_eq!(c.dim_total as u64, dim_series(n, g).unwrap().at(g));
            }
        }
    }

    #[test]
    fn bumped_threshold_breaks_the_complement() {
        let t = threshold(3).unwrap().bumped(3);
        let c = verify_complement_with_threshold(3, 3, &t).unwrap();
        assert!(!c.ok);
        assert_eq!(c.dim_perp, 0);
        let failing = verify_complement_with_threshold(3, 3, &t).unwrap();
        assert!(failing.to_string().contains("FAILED"));
    }
}

//! The generators `c_k` of `S(n)[a₀⁻¹]`, the order of a covariant, and the
//! explicit relations in `S(3)` and `S(4)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::basis::{in_span, kernel_oracle_bounded, rank_of};
use crate::error::{Error, Result};
use crate::perpetua::{decomposable_span, decomposable_span_from};
use crate::poly::{BiDegree, Family, Poly};
use crate::umbral::derivation_d;

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn sign(e: u32) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(−1)^k(1−k)a₁^{[k]} + Σ_{j=2}^{k} (−1)^{k−j} a₀^{j−1} a_j a₁^{[k−j]}`,
/// a U-invariant of degree and weight `k`.
pub fn c_k(k: u32) -> Result<Poly> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("c_k needs k >= 2, got {k}")));
    }
    let divided = |e: u32| {
        Poly::a(1)
            .pow(e)
            .scale(&BigRational::new(BigInt::one(), factorial(e)))
    };
    let lead = sign(k) * (1 - i64::from(k));
    let mut p = divided(k).scale_int(lead);
    for j in 2..=k {
        let term = &(&Poly::a(0).pow(j - 1) * &Poly::a(j as usize)) * &divided(k - j);
        p = &p + &term.scale_int(sign(k - j));
    }
    Ok(p)
}

/// `c_k` written with divided powers of `a₁`, e.g.
/// `-3*a1^[4] + a0*a1^[2]*a2 - a0^2*a1*a3 + a0^3*a4`.
pub fn c_k_divided_form(k: u32) -> Result<String> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("c_k needs k >= 2, got {k}")));
    }
    let a1 = |e: u32| match e {
        0 => None,
        1 => Some("a1".to_string()),
        _ => Some(format!("a1^[{e}]")),
    };
    let mut terms: Vec<(i64, Vec<String>)> =
        vec![(sign(k) * (1 - i64::from(k)), a1(k).into_iter().collect())];
    for j in 2..=k {
        let mut factors = Vec::new();
        match j - 1 {
            1 => factors.push("a0".to_string()),
            e => factors.push(format!("a0^{e}")),
        }
        factors.extend(a1(k - j));
        factors.push(format!("a{j}"));
        terms.push((sign(k - j), factors));
    }
    let mut out = String::new();
    for (i, (c, factors)) in terms.iter().enumerate() {
        let body = factors.join("*");
        let mag = c.abs();
        let text = if mag == 1 {
            body
        } else {
            format!("{mag}*{body}")
        };
        match (i, *c < 0) {
            (0, true) => out.push_str(&format!("-{text}")),
            (0, false) => out.push_str(&text),
            (_, true) => out.push_str(&format!(" - {text}")),
            (_, false) => out.push_str(&format!(" + {text}")),
        }
    }
    Ok(out)
}

/// Degree `k`, weight `g` and order `p = nk − 2g` of a covariant source of
/// the binary form of degree `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CovariantProfile {
    pub n: u32,
    pub k: u32,
    pub g: u32,
    pub p: u32,
}

impl CovariantProfile {
    /// Order 0: an invariant of the full group.
    pub fn is_invariant(&self) -> bool {
        self.p == 0
    }
}

pub fn covariant_order(n: u32, k: u32, g: u32) -> Result<CovariantProfile> {
    let nk = u64::from(n) * u64::from(k);
    let twice_g = 2 * u64::from(g);
    if twice_g > nk {
        return Err(Error::OutOfRange(format!(
            "no covariant of degree {k} and weight {g} for forms of degree {n}: nk - 2g < 0"
        )));
    }
    Ok(CovariantProfile {
        n,
        k,
        g,
        p: (nk - twice_g) as u32,
    })
}

fn parse(s: &str) -> Poly {
    s.parse().expect("well-formed polynomial literal")
}

/// The discriminant as usually printed.
pub fn printed_discriminant() -> Poly {
    parse("9*a0^2*a3^2 - 18*a0*a1*a2*a3 + 8*a0*a2^3 + 6*a1^3*a3 - 3*a1^2*a2^2")
}

pub fn printed_b() -> Poly {
    parse("2*a0*a4 - 2*a1*a3 + a2^2")
}

pub fn printed_c() -> Poly {
    parse("2*a2^3 - 6*a1*a2*a3 + 9*a0*a3^2 + 6*a1^2*a4 - 12*a0*a2*a4")
}

fn divide_by_a0(p: &Poly, k: u32, what: &str) -> Result<Poly> {
    p.div_var_pow(0, k)
        .ok_or_else(|| Error::Internal(format!("{what} is not divisible by a0^{k}")))
}

/// `D = (8c₂³ + 9c₃²)/a₀²`.
pub fn verify_s3() -> Result<Poly> {
    let c2 = c_k(2)?;
    let c3 = c_k(3)?;
    let lhs = &c2.pow(3).scale_int(8) + &c3.pow(2).scale_int(9);
    divide_by_a0(&lhs, 2, "8c2^3 + 9c3^2")
}

/// `B = (2c₄ + c₂²)/a₀²` and `C = −(6c₂B − D)/a₀`, checked against
/// `6a₀²c₂B + a₀³C − 8c₂³ − 9c₃² = 0`.
pub fn verify_s4() -> Result<(Poly, Poly)> {
    let c2 = c_k(2)?;
    let c3 = c_k(3)?;
    let c4 = c_k(4)?;
    let d = verify_s3()?;
    let b = divide_by_a0(&(&c4.scale_int(2) + &c2.pow(2)), 2, "2c4 + c2^2")?;
    let c = -divide_by_a0(&(&(&c2 * &b).scale_int(6) - &d), 1, "6c2B - D")?;
    let a0 = Poly::a(0);
    let closing = &(&(&(&a0.pow(2) * &c2) * &b).scale_int(6) + &(&a0.pow(3) * &c))
        - &(&c2.pow(3).scale_int(8) + &c3.pow(2).scale_int(9));
    if !closing.is_zero() {
        return Err(Error::Internal(format!(
            "closing relation in S(4) leaves {closing}"
        )));
    }
    Ok((b, c))
}

/// Where the discriminant sits with respect to decomposable U-invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscriminantReport {
    /// `D = 6c₂B + a₀C` exactly.
    pub identity_in_s4: bool,
    /// `D` lies in the decomposable span of bidegree `(4, 6)` of the limit algebra.
    pub decomposable_in_limit: bool,
    /// `D` lies outside the decomposables of bidegree `(4, 6)` built from
    /// U-invariants of the cubic alone.
    pub indecomposable_in_s3: bool,
}

impl DiscriminantReport {
    pub fn all_hold(&self) -> bool {
        self.identity_in_s4 && self.decomposable_in_limit && self.indecomposable_in_s3
    }
}

pub fn discriminant_decomposable_check() -> Result<DiscriminantReport> {
    let d = verify_s3()?;
    let (b, c) = verify_s4()?;
    let c2 = c_k(2)?;
    let rebuilt = &(&c2 * &b).scale_int(6) + &(&Poly::a(0) * &c);
    let limit = decomposable_span(4, 6)?;
    let cubic = decomposable_span_from(4, 6, |deg, w| Ok(kernel_oracle_bounded(deg, w, 3)))?;
    Ok(DiscriminantReport {
        identity_in_s4: rebuilt == d,
        decomposable_in_limit: in_span(&d, &limit)?,
        indecomposable_in_s3: !in_span(&d, &cubic)?,
    })
}

/// Checks that the monomials of generator-degree at most `max_total` in
/// `a₀, c₂, …, c_n` are linearly independent, bidegree by bidegree.
pub fn generators_independent(n: u32, max_total: u32) -> Result<bool> {
    let mut gens = vec![Poly::a(0)];
    for k in 2..=n {
        gens.push(c_k(k)?);
    }
    let mut by_bidegree: BTreeMap<BiDegree, Vec<Poly>> = BTreeMap::new();
    let mut stack: Vec<(usize, u32, Poly)> = vec![(0, 0, Poly::one(Family::A))];
    while let Some((start, used, p)) = stack.pop() {
        if used > 0 {
            by_bidegree
                .entry(p.bidegree()?)
                .or_default()
                .push(p.clone());
        }
        if used == max_total {
            continue;
        }
        for (i, gen) in gens.iter().enumerate().skip(start) {
            stack.push((i, used + 1, &p * gen));
        }
    }
    Ok(by_bidegree
        .values()
        .all(|ps| rank_of(&ps.iter().collect::<Vec<_>>()) == ps.len()))
}

/// One identity with its outcome and the polynomials involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    pub polys: Vec<(String, Poly)>,
}

impl fmt::Display for RelationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}",
            if self.holds { "PASS" } else { "FAIL" },
            self.name
        )?;
        for (label, p) in &self.polys {
            write!(f, "\n    {label} = {p}")?;
        }
        Ok(())
    }
}

/// The relations among `a₀, c₂, c₃, c₄, B, C, D`, each checked exactly.
pub fn relations() -> Result<Vec<RelationCheck>> {
    let c2 = c_k(2)?;
    let c3 = c_k(3)?;
    let c4 = c_k(4)?;
    let d = verify_s3()?;
    let (b, c) = verify_s4()?;
    let a0 = Poly::a(0);
    let disc = discriminant_decomposable_check()?;
    let check = |name: &str, holds: bool, polys: Vec<(&str, &Poly)>| RelationCheck {
        name: name.to_string(),
        holds,
        polys: polys
            .into_iter()
            .map(|(l, p)| (l.to_string(), p.clone()))
            .collect(),
    };
    let s3 = &c2.pow(3).scale_int(8) + &c3.pow(2).scale_int(9);
    let s4 = &c4.scale_int(2) + &c2.pow(2);
    let third = &(&c2 * &b).scale_int(6) - &d;
    Ok(vec![
        check(
            "D c2 = D c3 = D c4 = 0",
            [&c2, &c3, &c4].iter().all(|c| derivation_d(c).is_zero()),
            vec![("c2", &c2), ("c3", &c3), ("c4", &c4)],
        ),
        check(
            "8c2^3 + 9c3^2 = a0^2 D",
            s3 == &a0.pow(2) * &printed_discriminant() && d == printed_discriminant(),
            vec![("D", &d)],
        ),
        check(
            "2c4 + c2^2 = a0^2 B",
            s4 == &a0.pow(2) * &printed_b() && b == printed_b(),
            vec![("B", &b)],
        ),
        check(
            "6c2 B - D = -a0 C",
            third == -(&a0 * &printed_c()) && c == printed_c(),
            vec![("C", &c)],
        ),
        check(
            "6a0^2 c2 B + a0^3 C - 8c2^3 - 9c3^2 = 0",
            (&(&(&(&a0.pow(2) * &c2) * &b).scale_int(6) + &(&a0.pow(3) * &c)) - &s3).is_zero(),
            vec![],
        ),
        check("D = 6c2 B + a0 C", disc.identity_in_s4, vec![]),
        check(
            "D is decomposable in degree 4, weight 6",
            disc.decomposable_in_limit,
            vec![],
        ),
        check(
            "D is not decomposable among invariants of the cubic",
            disc.indecomposable_in_s3,
            vec![],
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perpetua::degree2_perpetuant;
    use crate::poly::ratio;
    use crate::umbral::translate;

    fn a(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn c_k_examples() {
        assert_eq!(c_k(2).unwrap(), a("-1/2*a1^2 + a0*a2"));
        assert_eq!(c_k(3).unwrap(), a("1/3*a1^3 - a0*a1*a2 + a0^2*a3"));
        assert_eq!(
            c_k(4).unwrap(),
            a("-1/8*a1^4 + 1/2*a0*a1^2*a2 - a0^2*a1*a3 + a0^3*a4")
        );
        assert!(c_k(1).is_err());
    }

    #[test]
    fn c_k_divided_forms() {
        let printed = [
            "-a1^[2] + a0*a2",
            "2*a1^[3] - a0*a1*a2 + a0^2*a3",
            "-3*a1^[4] + a0*a1^[2]*a2 - a0^2*a1*a3 + a0^3*a4",
            "4*a1^[5] - a0*a1^[3]*a2 + a0^2*a1^[2]*a3 - a0^3*a1*a4 + a0^4*a5",
            "-5*a1^[6] + a0*a1^[4]*a2 - a0^2*a1^[3]*a3 + a0^3*a1^[2]*a4 - a0^4*a1*a5 + a0^5*a6",
        ];
        for (k, want) in (2..).zip(printed) {
            assert_eq!(c_k_divided_form(k).unwrap(), want);
        }
    }

    /// Expands a divided-power form term by term: `(coeff, a0 power, a1
    /// divided power, j)` stands for `coeff·a0^p·a1^[q]·a_j`.
    fn expand(terms: &[(i64, u32, u32, usize)]) -> Poly {
        let mut p = Poly::zero(Family::A);
        for &(c, p0, q, j) in terms {
            let fact: i64 = (1..=i64::from(q)).product();
            let mut t = Poly::a(0).pow(p0) * Poly::a(1).pow(q);
            if j > 0 {
                t = t * Poly::a(j);
            }
            p = p + t.scale(&ratio(c, fact));
        }
        p
    }

    #[test]
    fn c_k_match_divided_power_tables() {
        let c5 = [
            (4, 0, 5, 0),
            (-1, 1, 3, 2),
            (1, 2, 2, 3),
            (-1, 3, 1, 4),
            (1, 4, 0, 5),
        ];
        assert_eq!(c_k(5).unwrap(), expand(&c5));
        let c6 = [
            (-5, 0, 6, 0),
            (1, 1, 4, 2),
            (-1, 2, 3, 3),
            (1, 3, 2, 4),
            (-1, 4, 1, 5),
            (1, 5, 0, 6),
        ];
        assert_eq!(c_k(6).unwrap(), expand(&c6));
    }

    #[test]
    fn c_k_are_invariants_of_degree_and_weight_k() {
        for k in 2..=8 {
            let c = c_k(k).unwrap();
            assert!(derivation_d(&c).is_zero(), "k={k}");
            let t = translate(&c);
            assert!(t.is_t_free());
            assert_eq!(t.coeff(0), c);
            assert_eq!(c.bidegree().unwrap(), BiDegree::new(k as u64, k as u64));
        }
    }

    #[test]
    fn covariant_order_examples() {
        let b = covariant_order(4, 2, 4).unwrap();
        assert!(b.is_invariant());
        assert!(covariant_order(3, 4, 6).unwrap().is_invariant());
        assert_eq!(covariant_order(3, 1, 0).unwrap().p, 3);
        assert!(covariant_order(3, 1, 2).is_err());
    }

    #[test]
    fn cubic_relation() {
        let d = verify_s3().unwrap();
        assert_eq!(d, printed_discriminant());
        assert!(derivation_d(&d).is_zero());
        assert_eq!(d.bidegree().unwrap(), BiDegree::new(4, 6));
        assert!(covariant_order(3, 4, 6).unwrap().is_invariant());
    }

    #[test]
    fn quartic_relations() {
        let (b, c) = verify_s4().unwrap();
        assert_eq!(b, printed_b());
        assert_eq!(c, printed_c());
        assert_eq!(b, degree2_perpetuant(4).unwrap());
        assert!(derivation_d(&c).is_zero());
        assert!(covariant_order(4, 3, 6).unwrap().is_invariant());
    }

    #[test]
    fn discriminant_report() {
        let r = discriminant_decomposable_check().unwrap();
        assert_eq!(
            r,
            DiscriminantReport {
                identity_in_s4: true,
                decomposable_in_limit: true,
                indecomposable_in_s3: true
            }
        );
    }

    #[test]
    fn generators_are_independent() {
        assert!(generators_independent(5, 4).unwrap());
        // a0^2 D and 8c2^3 + 9c3^2 coincide, so adding D breaks independence
        let d = verify_s3().unwrap();
        let lhs = &(&c_k(2).unwrap().pow(3).scale_int(8) + &c_k(3).unwrap().pow(2).scale_int(9))
            - &(&Poly::a(0).pow(2) * &d);
        assert!(lhs.is_zero());
    }

    #[test]
    fn relations_all_pass() {
        let rs = relations().unwrap();
        assert!(rs.iter().all(|r| r.holds), "{rs:?}");
        assert!(rs[1].to_string().starts_with("PASS 8c2^3 + 9c3^2 = a0^2 D"));
    }
}

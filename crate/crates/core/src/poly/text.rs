//! Text encoding, e.g. `3*a0^2*a3 - 3*a0*a1*a2 + a1^3`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{ExponentVector, Family, Poly};
use crate::error::Error;

fn write_monomial(f: &mut fmt::Formatter<'_>, family: Family, e: &ExponentVector) -> fmt::Result {
    let mut first = true;
    for (i, k) in e.iter() {
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "{}{}", family.prefix(), i)?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if e.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, self.family, e)?;
            }
        }
        Ok(())
    }
}

fn parse_number(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("bad number {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(
    body: &str,
    family: &mut Option<Family>,
) -> Result<(ExponentVector, BigRational), Error> {
    let mut coeff = BigRational::one();
    let mut exps: Vec<(usize, u32)> = Vec::new();
    for factor in body.split('*') {
        let fam = match factor.chars().next() {
            Some('a') => Some(Family::A),
            Some('L') => Some(Family::L),
            Some(c) if c.is_ascii_digit() => None,
            _ => return Err(Error::Parse(format!("bad factor {factor:?}"))),
        };
        let Some(fam) = fam else {
            coeff *= parse_number(factor)?;
            continue;
        };
        if family.is_some_and(|f| f != fam) {
            return Err(Error::Parse("mixed variable families".into()));
        }
        *family = Some(fam);
        let rest = &factor[1..];
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, e),
            None => (rest, "1"),
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
        let exp: u32 = exp
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {factor:?}")))?;
        if idx < fam.first_index() {
            return Err(Error::Parse(format!("no variable {factor}")));
        }
        exps.push((idx, exp));
    }
    Ok((ExponentVector::from_pairs(exps), coeff))
}

/// Parses the text encoding. The family is inferred from the variable names
/// and defaults to `a` for constants.
impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        for (i, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if i > 0 {
                    if current.is_empty() {
                        return Err(Error::Parse("dangling sign".into()));
                    }
                    pieces.push((negative, std::mem::take(&mut current)));
                }
                negative = ch == '-';
            } else {
                current.push(ch);
            }
        }
        if current.is_empty() {
            return Err(Error::Parse("dangling sign".into()));
        }
        pieces.push((negative, current));

        let mut family = None;
        let mut terms = Vec::with_capacity(pieces.len());
        for (neg, body) in pieces {
            let (e, c) = parse_term(&body, &mut family)?;
            terms.push((e, if neg { -c } else { c }));
        }
        Ok(Poly::from_terms(family.unwrap_or(Family::A), terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn prints_canonical_text() {
        let p: Poly = "a1^3 - 3*a0*a1*a2 + 3*a0^2*a3".parse().unwrap();
        assert_eq!(p.to_string(), "3*a0^2*a3 - 3*a0*a1*a2 + a1^3");
        let q: Poly = "a0*a2 - 1/2*a1^2".parse().unwrap();
        assert_eq!(q.to_string(), "a0*a2 - 1/2*a1^2");
        assert_eq!(Poly::zero(Family::A).to_string(), "0");
        let c: Poly = "-7/3".parse().unwrap();
        assert_eq!(c, Poly::constant(Family::A, ratio(-7, 3)));
        assert_eq!(c.to_string(), "-7/3");
    }

    #[test]
    fn lambda_text() {
        let p: Poly = "-L1^2*L2 - L1*L2^2".parse().unwrap();
        assert_eq!(p.family(), Family::L);
        assert_eq!(p.to_string(), "-L1^2*L2 - L1*L2^2");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "a0 +", "a0*x1", "a1 + L1", "L0", "1/0", "a^2", "--a1"] {
            assert!(bad.parse::<Poly>().is_err(), "{bad}");
        }
    }

    #[test]
    fn tolerates_spacing_and_repeats() {
        let p: Poly = " 2 * a1 *a1 +a0*a2-a0 * a2 ".parse().unwrap();
        assert_eq!(p.to_string(), "2*a1^2");
    }
}

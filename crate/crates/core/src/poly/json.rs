//! JSON encoding:
//! `{"family":"a","terms":[{"c":"-1/2","e":{"1":2}},...]}` with terms in
//! canonical order and exponent keys in increasing index order.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExponentVector, Family, Poly};

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.prefix())
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "a" => Ok(Family::A),
            "L" => Ok(Family::L),
            other => Err(de::Error::custom(format!("unknown family {other:?}"))),
        }
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, u32)> = self.iter().collect();
        let mut map = s.serialize_map(Some(pairs.len()))?;
        for (i, e) in pairs {
            map.serialize_entry(&i.to_string(), &e)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExponentVector;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from variable index to exponent")
            }
            fn visit_map<M: MapAccess<'de>>(self, mut m: M) -> Result<ExponentVector, M::Error> {
                let mut pairs = BTreeMap::new();
                while let Some((k, v)) = m.next_entry::<String, u32>()? {
                    let i: usize = k.parse().map_err(de::Error::custom)?;
                    if v == 0 {
                        return Err(de::Error::custom("zero exponent stored"));
                    }
                    if pairs.insert(i, v).is_some() {
                        return Err(de::Error::custom("repeated variable index"));
                    }
                }
                Ok(ExponentVector::from_pairs(pairs))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Serialize, Deserialize)]
struct Term {
    c: String,
    e: ExponentVector,
}

#[derive(Serialize, Deserialize)]
struct Encoded {
    family: Family,
    terms: Vec<Term>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Encoded {
            family: self.family,
            terms: self
                .terms()
                .map(|(e, c)| Term {
                    c: c.to_string(),
                    e: e.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let enc = Encoded::deserialize(d)?;
        let mut p = Poly::zero(enc.family);
        for t in enc.terms {
            let c: BigRational = t.c.parse().map_err(de::Error::custom)?;
            if p.terms.contains_key(&t.e) {
                return Err(de::Error::custom("repeated monomial"));
            }
            p.add_term(t.e, c);
        }
        Ok(p)
    }
}

//! Serialize rationals as `"num/den"` (or `"num"`) decimal strings so that
//! consumers never hit integer size limits.

use rug::Rational;
use serde::{de, Deserialize, Deserializer, Serializer};

pub fn to_string(v: &Rational) -> String {
    if *v.denom() == 1 {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_string(v))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    super::parse_rational(&s).ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
}

/// Same encoding for a list of rationals.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&to_string(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| {
                crate::exact_arith::parse_rational(s)
                    .ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
            })
            .collect()
    }
}

/// Same encoding for an optional rational.
pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&to_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| {
            crate::exact_arith::parse_rational(&s)
                .ok_or_else(|| de::Error::custom(format!("invalid rational `{s}`")))
        })
        .transpose()
    }
}

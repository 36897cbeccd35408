//! JSON shapes shared by the library and the CLI. Rationals travel as
//! `[num, den]`; plain integers are accepted on input.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::Q;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational(pub Q);

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Int(i64),
    Pair([i64; 2]),
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RationalRepr::deserialize(d)? {
            RationalRepr::Int(n) => Ok(Rational(Q::from_integer(BigInt::from(n)))),
            RationalRepr::Pair([_, 0]) => Err(serde::de::Error::custom("zero denominator")),
            RationalRepr::Pair([n, den]) => Ok(Rational(Q::new(BigInt::from(n), BigInt::from(den)))),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let num = i64::try_from(self.0.numer()).map_err(serde::ser::Error::custom)?;
        let den = i64::try_from(self.0.denom()).map_err(serde::ser::Error::custom)?;
        [num, den].serialize(s)
    }
}

pub fn to_json_rows(rows: &[Vec<Q>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().cloned().map(Rational).collect()).collect()
}

pub fn from_json_rows(rows: &[Vec<Rational>], width: usize) -> Result<Vec<Vec<Q>>> {
    rows.iter()
        .map(|r| {
            if r.len() != width {
                return Err(Error::InvalidInput(format!("basis row has {} entries, expected {width}", r.len())));
            }
            Ok(r.iter().map(|x| x.0.clone()).collect())
        })
        .collect()
}

pub fn check_schema(schema: Option<u32>) -> Result<()> {
    match schema {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(Error::InvalidInput(format!("unsupported schema version {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;

    #[test]
    fn rational_round_trip() {
        let v: Vec<Rational> = serde_json::from_str("[3, [1, 2], [-4, 6]]").unwrap();
        assert_eq!(v[1].0, q_frac(1, 2));
        assert_eq!(v[2].0, q_frac(-2, 3));
        assert_eq!(serde_json::to_string(&v).unwrap(), "[[3,1],[1,2],[-2,3]]");
        assert!(serde_json::from_str::<Rational>("[1, 0]").is_err());
    }
}

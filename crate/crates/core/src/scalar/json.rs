//! `{"n": int, "m": int, "terms": [{"q": [int,...], "cyclo": [["num","den"],...]}]}`

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::CycloNumber;
use super::rational::Rational;
use super::{QExponent, Scalar, ScalarContext};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarJson {
    pub n: u32,
    pub m: usize,
    pub terms: Vec<ScalarTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarTermJson {
    pub q: Vec<i32>,
    pub cyclo: Vec<(String, String)>,
}

impl From<&Scalar> for ScalarJson {
    fn from(s: &Scalar) -> Self {
        ScalarJson {
            n: s.ctx().order(),
            m: s.ctx().arity(),
            terms: s
                .terms()
                .iter()
                .map(|(q, c)| ScalarTermJson {
                    q: q.as_slice().to_vec(),
                    cyclo: c
                        .coeffs()
                        .iter()
                        .map(|r| (r.numer().to_string(), r.denom().to_string()))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ScalarJson> for Scalar {
    type Error = Error;

    fn try_from(j: &ScalarJson) -> Result<Scalar> {
        let ctx = ScalarContext::new(j.n, j.m)?;
        let degree = ctx.field().degree();
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.q.len() != j.m {
                return Err(Error::Json(format!(
                    "q exponent of length {} for m = {}",
                    t.q.len(),
                    j.m
                )));
            }
            if t.cyclo.len() != degree {
                return Err(Error::Json(format!(
                    "cyclotomic coefficient vector of length {} for φ({}) = {degree}",
                    t.cyclo.len(),
                    j.n
                )));
            }
            let coeffs = t
                .cyclo
                .iter()
                .map(|(num, den)| Rational::from_decimal_strs(num, den))
                .collect::<Result<Vec<_>>>()?;
            terms.push((
                QExponent::from_slice(&t.q),
                CycloNumber::from_coeffs(ctx.field(), coeffs)?,
            ));
        }
        Scalar::from_terms(&ctx, terms)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = ScalarJson::deserialize(deserializer)?;
        Scalar::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let ctx = ScalarContext::new(3, 1).unwrap();
        let s = Scalar::root_monomial(&ctx, &Rational::new(-1, 2).unwrap(), 1, &[2]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"n":3,"m":1,"terms":[{"q":[2],"cyclo":[["0","1"],["-1","2"]]}]}"#
        );
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_wrong_lengths() {
        let bad = r#"{"n":3,"m":1,"terms":[{"q":[2],"cyclo":[["0","1"]]}]}"#;
        assert!(serde_json::from_str::<Scalar>(bad).is_err());
        let bad = r#"{"n":3,"m":1,"terms":[{"q":[],"cyclo":[["0","1"],["1","1"]]}]}"#;
        assert!(serde_json::from_str::<Scalar>(bad).is_err());
    }
}

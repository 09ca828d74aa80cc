//! JSON forms.
//!
//! A scalar is a list of `{"pi_deg", "num", "den"}` objects. On input a bare
//! `"p/q"` string (or integer) is also accepted as a Π-degree-0 scalar. A
//! series is `{"denom", "prec", "coeffs": [[e, scalar], ...]}` where `e` counts
//! units of `q^{1/denom}` and `prec` is the truncation order in powers of q
//! (`null` for an exact series).

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{QSeries, Scalar};

pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|e| format!("bad numerator {n:?}: {e}"))?;
    let d = BigInt::from_str(d).map_err(|e| format!("bad denominator {d:?}: {e}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct Term {
    pi_deg: i32,
    num: NumText,
    den: NumText,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumText {
    Int(i64),
    Text(String),
}

impl NumText {
    fn big(&self) -> Result<BigInt, String> {
        match self {
            NumText::Int(i) => Ok(BigInt::from(*i)),
            NumText::Text(s) => BigInt::from_str(s.trim()).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Terms(Vec<Term>),
    Text(String),
    Int(i64),
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<Term> = self
            .terms()
            .map(|(d, c)| Term {
                pi_deg: d,
                num: NumText::Text(c.numer().to_string()),
                den: NumText::Text(c.denom().to_string()),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(d)? {
            ScalarRepr::Terms(terms) => {
                let mut out = Scalar::zero();
                for t in terms {
                    let n = t.num.big().map_err(D::Error::custom)?;
                    let den = t.den.big().map_err(D::Error::custom)?;
                    if den.is_zero() {
                        return Err(D::Error::custom("zero denominator"));
                    }
                    out += &Scalar::monomial(t.pi_deg, BigRational::new(n, den));
                }
                Ok(out)
            }
            ScalarRepr::Text(s) => parse_rational(&s).map(Scalar::from_rational).map_err(D::Error::custom),
            ScalarRepr::Int(i) => Ok(Scalar::from_int(i)),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    denom: i64,
    prec: Option<i64>,
    coeffs: Vec<(i64, Scalar)>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // The known range is reported in whole powers of q.
        let prec = self.order().map(|o| o.div_euclid(self.denom()));
        let bound = prec.map(|p| p * self.denom());
        let coeffs = self
            .terms()
            .filter(|(e, _)| bound.is_none_or(|b| *e < b))
            .map(|(e, c)| (e, c.clone()))
            .collect();
        SeriesRepr { denom: self.denom(), prec, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(d)?;
        if r.denom <= 0 {
            return Err(D::Error::custom("denom must be positive"));
        }
        let mut map: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (e, c) in r.coeffs {
            *map.entry(e).or_default() += &c;
        }
        Ok(QSeries::from_parts(r.denom, map, r.prec.map(|p| p * r.denom)))
    }
}

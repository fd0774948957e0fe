//! JSON encodings for exact numbers: big integers as decimal strings and
//! rationals as `{"num": "...", "den": "..."}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn biguint_str<S: Serializer>(value: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn biguint_from_str<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(serde::de::Error::custom)
}

pub fn biguint_vec_str<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

pub fn biguint_vec_from_str<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
    Vec::<String>::deserialize(d)?
        .iter()
        .map(|t| t.parse().map_err(serde::de::Error::custom))
        .collect()
}

/// Wire form of an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<RationalJson> for BigRational {
    type Error = String;

    fn try_from(r: RationalJson) -> Result<Self, Self::Error> {
        let num: BigInt = r.num.parse().map_err(|e| format!("bad numerator: {e}"))?;
        let den: BigInt = r.den.parse().map_err(|e| format!("bad denominator: {e}"))?;
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    }
}

pub fn rational<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    RationalJson::from(value).serialize(s)
}

pub fn rational_from<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    BigRational::try_from(RationalJson::deserialize(d)?).map_err(serde::de::Error::custom)
}

pub fn rational_vec<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&RationalJson::from(v))?;
    }
    seq.end()
}

pub fn rational_vec_from<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
    Vec::<RationalJson>::deserialize(d)?
        .into_iter()
        .map(|r| BigRational::try_from(r).map_err(serde::de::Error::custom))
        .collect()
}

/// `"num/den"`, or just `"num"` for integers.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Natural logarithm of a positive big integer, accurate to f64 precision.
pub fn ln_biguint(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(value).map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top = num_traits::ToPrimitive::to_f64(&(value >> shift)).unwrap_or(f64::NAN);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(r: &BigRational) -> f64 {
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    ln_biguint(num) - ln_biguint(den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_wire_format() {
        let r = BigRational::new(BigInt::from(2), BigInt::from(6));
        let json = serde_json::to_string(&RationalJson::from(&r)).unwrap();
        assert_eq!(json, r#"{"num":"1","den":"3"}"#);
        let back: RationalJson = serde_json::from_str(&json).unwrap();
        assert_eq!(BigRational::try_from(back).unwrap(), r);
        assert_eq!(rational_string(&r), "1/3");
        assert_eq!(rational_string(&BigRational::from_integer(BigInt::from(5))), "5");
    }

    #[test]
    fn logs_of_huge_values() {
        let big = BigUint::from(3u32).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_biguint(&big) - expected).abs() < 1e-9 * expected);
        assert!((ln_biguint(&BigUint::from(10u32)) - 10f64.ln()).abs() < 1e-12);
    }
}

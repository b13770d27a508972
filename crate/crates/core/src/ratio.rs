//! Exact rational objective values.

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Ratio = Rational64;

pub fn int(v: i64) -> Ratio {
    Ratio::from_integer(v)
}

/// Parses `7`, `-3`, `5/2` or a finite decimal such as `0.25`.
pub fn parse_ratio(text: &str) -> Result<Ratio> {
    let t = text.trim();
    let bad = || Error::invalid(format!("not a rational number: `{t}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 12 {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let w: i64 = if whole_abs.is_empty() {
            0
        } else {
            whole_abs.parse().map_err(|_| bad())?
        };
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let scale = 10i64.pow(frac.len() as u32);
        let mut r = Ratio::new(w.checked_mul(scale).ok_or_else(bad)? + f, scale);
        if negative {
            r = -r;
        }
        return Ok(r);
    }
    t.parse::<i64>().map(Ratio::from_integer).map_err(|_| bad())
}

pub fn format_ratio(r: &Ratio) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn is_nonnegative(r: &Ratio) -> bool {
    !r.is_negative()
}

pub fn floor_to_i64(r: &Ratio) -> i64 {
    r.floor().to_integer()
}

pub fn ceil_to_i64(r: &Ratio) -> i64 {
    r.ceil().to_integer()
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Ratio>) -> Ratio {
    values.into_iter().fold(Ratio::zero(), |acc, v| acc + v)
}

/// Serde adapter: integers are written as JSON numbers, fractions as `"p/q"`.
/// Reading accepts either form.
pub mod serde_ratio {
    use std::fmt;

    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};

    use super::{format_ratio, parse_ratio, Ratio};

    pub fn serialize<S: Serializer>(r: &Ratio, s: S) -> Result<S::Ok, S::Error> {
        if r.is_integer() {
            s.serialize_i64(*r.numer())
        } else {
            s.serialize_str(&format_ratio(r))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio, D::Error> {
        d.deserialize_any(RatioVisitor)
    }

    pub(crate) struct RatioVisitor;

    impl<'de> Visitor<'de> for RatioVisitor {
        type Value = Ratio;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an integer or a \"p/q\" string")
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Ratio, E> {
            Ok(Ratio::from_integer(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Ratio, E> {
            i64::try_from(v)
                .map(Ratio::from_integer)
                .map_err(|_| E::custom("integer out of range"))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Ratio, E> {
            parse_ratio(v).map_err(E::custom)
        }
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::Ratio;

        #[derive(Deserialize)]
        struct Wrapped(#[serde(with = "super")] Ratio);

        pub fn serialize<S: Serializer>(v: &[Ratio], s: S) -> Result<S::Ok, S::Error> {
            struct One<'a>(&'a Ratio);
            impl serde::Serialize for One<'_> {
                fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                    super::serialize(self.0, s)
                }
            }
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&One(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Ratio>, D::Error> {
            let items: Vec<Wrapped> = Vec::deserialize(d)?;
            Ok(items.into_iter().map(|w| w.0).collect())
        }
    }

    pub mod option_vec {
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        use super::Ratio;

        #[derive(Serialize, Deserialize)]
        struct W(#[serde(with = "super::vec")] Vec<Ratio>);

        pub fn serialize<S: Serializer>(v: &Option<Vec<Ratio>>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref().map(|x| W(x.clone())).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Ratio>>, D::Error> {
            Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_ratio("7").unwrap(), int(7));
        assert_eq!(parse_ratio("5/2").unwrap(), Ratio::new(5, 2));
        assert_eq!(parse_ratio("0.25").unwrap(), Ratio::new(1, 4));
        assert_eq!(parse_ratio("-1.5").unwrap(), Ratio::new(-3, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("abc").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_ratio(&Ratio::new(4, 2)), "2");
        assert_eq!(format_ratio(&Ratio::new(3, 6)), "1/2");
    }
}

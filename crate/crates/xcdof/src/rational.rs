//! Exact rational arithmetic helpers.

use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Exact reduced fraction with a positive denominator.
pub type Rational = num_rational::Ratio<i128>;

/// Builds `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// Builds the integer `n` as a rational.
pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

/// `[x]_+`.
pub fn pos_part(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else {
        x
    }
}

/// Smallest common positive multiple of two positive rationals.
///
/// For reduced `a/b` and `c/d` this is `lcm(a, c) / gcd(b, d)`.
pub fn lcm_rational(x: Rational, y: Rational) -> Rational {
    assert!(x.is_positive() && y.is_positive(), "lcm of non-positive rationals");
    rat(
        x.numer().lcm(y.numer()),
        x.denom().gcd(y.denom()),
    )
}

/// Renders as `p/q`, or `p` for integers.
pub fn fmt(x: &Rational) -> String {
    x.to_string()
}

/// Approximate decimal value, for display only.
pub fn to_f64(x: &Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Parses `p/q` or `p`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            if d == 0 {
                None
            } else {
                Some(rat(n, d))
            }
        }
        None => s.parse::<i128>().ok().map(int),
    }
}

/// Serde adapter storing a rational as a `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Serde adapter for `[Rational; 2]`.
pub mod serde_pair {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[Rational; 2], s: S) -> Result<S::Ok, S::Error> {
        [x[0].to_string(), x[1].to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rational; 2], D::Error> {
        let v = <[String; 2]>::deserialize(d)?;
        let p = |s: &String| {
            super::parse(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
        };
        Ok([p(&v[0])?, p(&v[1])?])
    }
}

/// Serde adapter for `[Option<Rational>; 2]`, with `null` for `None`.
pub mod serde_opt_pair {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[Option<Rational>; 2], s: S) -> Result<S::Ok, S::Error> {
        x.map(|v| v.map(|r| r.to_string())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<[Option<Rational>; 2], D::Error> {
        let v = <[Option<String>; 2]>::deserialize(d)?;
        let p = |s: &Option<String>| match s {
            None => Ok(None),
            Some(s) => super::parse(s)
                .map(Some)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))),
        };
        Ok([p(&v[0])?, p(&v[1])?])
    }
}

/// Serde adapter for a single `[Rational; 4]`.
pub mod serde_quad {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[Rational; 4], s: S) -> Result<S::Ok, S::Error> {
        x.map(|r| r.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rational; 4], D::Error> {
        let v = <[String; 4]>::deserialize(d)?;
        let mut out = [Rational::from_integer(0); 4];
        for (o, s) in out.iter_mut().zip(&v) {
            *o = super::parse(s)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))?;
        }
        Ok(out)
    }
}

/// Serde adapter for `Vec<[Rational; 4]>` and similar nested lists.
pub mod serde_vec4 {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &[[Rational; 4]], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[String; 4]> = x
            .iter()
            .map(|t| [t[0].to_string(), t[1].to_string(), t[2].to_string(), t[3].to_string()])
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<[Rational; 4]>, D::Error> {
        let v = Vec::<[String; 4]>::deserialize(d)?;
        v.iter()
            .map(|t| {
                let mut out = [Rational::from_integer(0); 4];
                for (o, s) in out.iter_mut().zip(t) {
                    *o = super::parse(s)
                        .ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))?;
                }
                Ok(out)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_of_fractions() {
        assert_eq!(lcm_rational(rat(1, 3), rat(10, 3)), rat(10, 3));
        assert_eq!(lcm_rational(rat(8, 2), rat(8, 2)), int(4));
        assert_eq!(lcm_rational(rat(1, 2), rat(1, 3)), int(1));
        assert_eq!(lcm_rational(rat(2, 3), rat(3, 4)), int(6));
    }

    #[test]
    fn parse_round_trip() {
        for x in [rat(18, 7), int(3), rat(-5, 2), int(0)] {
            assert_eq!(parse(&fmt(&x)), Some(x));
        }
        assert_eq!(parse("1/0"), None);
        assert_eq!(fmt(&rat(6, 4)), "3/2");
    }
}

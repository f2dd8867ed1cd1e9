//! Exact rational scalars and small helpers shared across the crate.
//!
//! All arithmetic in this crate is exact: scalars are `BigRational`
//! (arbitrary-precision rationals, always kept in lowest terms with the sign
//! on the numerator, which is what `num_rational::Ratio` guarantees).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Q = BigRational;

/// Rational from an integer.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(x: &Q) -> i8 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Renders a rational in lowest terms as `"p"` or `"p/q"` (q > 1).
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` into a rational. The denominator must be nonzero.
pub fn q_from_string(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer =
        BigInt::from_str(num_str).map_err(|_| format!("invalid rational numerator in {s:?}"))?;
    let denom =
        BigInt::from_str(den_str).map_err(|_| format!("invalid rational denominator in {s:?}"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(numer, denom))
}

/// Serde adapter serializing a rational as its exact `"p"`/`"p/q"` string.
/// Use with `#[serde(with = "crate::rat::qstr")]`.
pub mod qstr {
    use super::{q_from_string, q_to_string, Q};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        q_from_string(&s).map_err(D::Error::custom)
    }
}

/// Same adapter for optional rationals (pair with `skip_serializing_if`).
pub mod qstr_opt {
    use super::{q_from_string, q_to_string, Q};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&q_to_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| q_from_string(&s).map_err(D::Error::custom))
            .transpose()
    }
}

/// Same adapter for optional vectors of rationals.
pub mod qstr_vec_opt {
    use super::{q_from_string, q_to_string, Q};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &Option<Vec<Q>>, s: S) -> Result<S::Ok, S::Error> {
        match xs {
            Some(v) => v.iter().map(|x| q_to_string(x)).collect::<Vec<_>>().serialize(s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Q>>, D::Error> {
        Option::<Vec<String>>::deserialize(d)?
            .map(|v| v.iter().map(|s| q_from_string(s).map_err(D::Error::custom)).collect())
            .transpose()
    }
}

/// Same adapter for vectors of rationals.
pub mod qstr_vec {
    use super::{q_from_string, q_to_string, Q};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(|x| q_to_string(x)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| q_from_string(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Binomial coefficient C(n, k) as a big integer; 0 when k > n.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// x^n for non-negative n.
pub fn q_pow(x: &Q, n: usize) -> Q {
    let mut acc = Q::one();
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// 2^-bits as an exact rational.
pub fn q_pow2_neg(bits: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << bits)
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn denominator_lcm(xs: &[Q]) -> BigInt {
    let mut acc = BigInt::one();
    for x in xs {
        acc = acc.lcm(x.denom());
    }
    acc
}

/// Clears denominators and divides out the integer content, preserving sign:
/// returns the unique primitive integer vector that is a positive rational
/// multiple of the input. The zero vector maps to itself.
pub fn primitive_integer_vector(xs: &[Q]) -> Vec<BigInt> {
    let lcm = denominator_lcm(xs);
    let ints: Vec<BigInt> = xs
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &content).collect()
}

/// Primitive integer vector scaled so its first nonzero entry is positive.
pub fn normalized_integer_vector(xs: &[Q]) -> Vec<BigInt> {
    let mut ints = primitive_integer_vector(xs);
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in ints.iter_mut() {
                *v = -std::mem::take(v);
            }
        }
    }
    ints
}

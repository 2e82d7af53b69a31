//! Coefficient rings.
//!
//! Every ring here is a Q-algebra presented with a distinguished integral
//! structure: elements carry rational coordinates and integrality is a
//! checked property rather than a type distinction.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use crate::error::{Error, Result};

/// Homological weight of a ring element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Zero,
    Homogeneous(usize),
    Mixed,
}

impl Weight {
    /// Weight of a sum of two homogeneous pieces.
    pub fn join(self, other: Weight) -> Weight {
        match (self, other) {
            (Weight::Zero, w) | (w, Weight::Zero) => w,
            (Weight::Homogeneous(a), Weight::Homogeneous(b)) if a == b => Weight::Homogeneous(a),
            _ => Weight::Mixed,
        }
    }

    pub fn shift(self, by: usize) -> Weight {
        match self {
            Weight::Homogeneous(w) => Weight::Homogeneous(w + by),
            w => w,
        }
    }
}

pub trait CoeffRing: Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, q: &BigRational) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn weight(&self, a: &Self::Elem) -> Weight;

    /// Coordinates of `a` against the ring's integral basis, in a fixed order.
    fn integral_coordinates(&self, a: &Self::Elem) -> Vec<BigRational>;

    /// Whether two ring handles describe the same ring (same truncation).
    fn compatible(&self, other: &Self) -> bool;

    fn format(&self, a: &Self::Elem) -> String;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem>;

    /// Weight above which everything is zero, if the ring is truncated.
    fn truncation(&self) -> Option<usize> {
        None
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_integral(&self, a: &Self::Elem) -> bool {
        self.integral_coordinates(a).iter().all(BigRational::is_integer)
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

pub(crate) fn ensure_compatible<R: CoeffRing>(a: &R, b: &R) -> Result<()> {
    if a.compatible(b) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// `"3"` for integers, `"-1/2"` otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub(crate) fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "-7", "3/2", "-1/3", "123456789012345678901234567890"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn weight_join() {
        use Weight::*;
        assert_eq!(Zero.join(Homogeneous(2)), Homogeneous(2));
        assert_eq!(Homogeneous(2).join(Homogeneous(3)), Mixed);
        assert_eq!(Homogeneous(1).shift(2), Homogeneous(3));
    }
}

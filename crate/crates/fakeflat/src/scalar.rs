//! Exact scalars of the form `r * sqrt(B)^s` with `r` rational, `s` in {0,1}
//! and `B` the order of the edge-colour group.
//!
//! Invariants of surfaces with an odd number of boundary circles pick up a
//! half-integral power of `|G|`, so the square root is kept symbolic rather
//! than approximated. Everything in this crate is computed without floating
//! point; `approx` exists only for eyeballing values.

use std::fmt;
use std::ops::{Add, Mul};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rat = Ratio<i128>;

pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

/// `base^exp` as an exact rational, for any integer exponent.
pub fn rat_ipow(base: i128, exp: i64) -> Rat {
    assert!(base > 0, "rat_ipow needs a positive base");
    let mut acc = Rat::from_integer(1);
    let step = if exp >= 0 {
        Rat::from_integer(base)
    } else {
        Ratio::new(1, base)
    };
    for _ in 0..exp.unsigned_abs() {
        acc *= &step;
    }
    acc
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<i128> {
        t.trim()
            .parse::<i128>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den == 0 {
                return Err(Error::Parse(format!(
                    "bad rational {s:?}: zero denominator"
                )));
            }
            Ok(Ratio::new(parse_int(p)?, den))
        }
    }
}

/// An exact value `coeff * sqrt(base)^half_power`.
///
/// Canonical form: even powers of `sqrt(base)` are folded into `coeff`, so
/// `half_power` is 0 or 1; a zero coefficient and a base of 1 both force
/// `half_power = 0`. Two scalars are equal iff their canonical forms agree
/// field by field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactScalar {
    coeff: Rat,
    half_power: u8,
    base: u64,
}

impl ExactScalar {
    /// Builds `coeff * sqrt(base)^halves` and canonicalizes.
    pub fn with_half_powers(coeff: Rat, halves: i64, base: u64) -> Self {
        assert!(base >= 1, "scalar base must be a positive group order");
        if coeff.is_zero() || base == 1 {
            return ExactScalar {
                coeff,
                half_power: 0,
                base,
            };
        }
        let s = halves.rem_euclid(2);
        let whole = (halves - s) / 2;
        ExactScalar {
            coeff: coeff * rat_ipow(base as i128, whole),
            half_power: s as u8,
            base,
        }
    }

    pub fn new(coeff: Rat, base: u64) -> Self {
        Self::with_half_powers(coeff, 0, base)
    }

    pub fn from_int(n: i128, base: u64) -> Self {
        Self::new(Rat::from_integer(n), base)
    }

    pub fn zero(base: u64) -> Self {
        Self::from_int(0, base)
    }

    pub fn one(base: u64) -> Self {
        Self::from_int(1, base)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn half_power(&self) -> u8 {
        self.half_power
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    /// Multiplies by a plain integer (e.g. a colouring count).
    pub fn scaled(&self, n: i128) -> Self {
        Self::with_half_powers(
            self.coeff * Rat::from_integer(n),
            self.half_power as i64,
            self.base,
        )
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        let c = self.coeff.to_f64().unwrap_or(f64::NAN);
        if self.half_power == 1 {
            c * (self.base as f64).sqrt()
        } else {
            c
        }
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;

    fn add(self, other: &ExactScalar) -> ExactScalar {
        assert_eq!(self.base, other.base, "adding scalars over different bases");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(
            self.half_power, other.half_power,
            "adding scalars of different sqrt parity"
        );
        ExactScalar::with_half_powers(self.coeff + other.coeff, self.half_power as i64, self.base)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;

    fn mul(self, other: &ExactScalar) -> ExactScalar {
        assert_eq!(
            self.base, other.base,
            "multiplying scalars over different bases"
        );
        ExactScalar::with_half_powers(
            self.coeff * other.coeff,
            (self.half_power + other.half_power) as i64,
            self.base,
        )
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, other: ExactScalar) -> ExactScalar {
        &self + &other
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, other: ExactScalar) -> ExactScalar {
        &self * &other
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_power == 0 {
            write!(f, "{}", format_rat(&self.coeff))
        } else if self.coeff.is_negative() {
            write!(
                f,
                "-{}·√{}",
                format_rat(&self.coeff.clone().abs()),
                self.base
            )
        } else {
            write!(f, "{}·√{}", format_rat(&self.coeff), self.base)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    coeff: String,
    half_power: u8,
    base: u64,
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarJson {
            coeff: format_rat(&self.coeff),
            half_power: self.half_power,
            base: self.base,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(de)?;
        let coeff = parse_rat(&raw.coeff).map_err(|e| D::Error::custom(e.to_string()))?;
        if raw.half_power > 1 {
            return Err(D::Error::custom("half_power must be 0 or 1"));
        }
        Ok(ExactScalar::with_half_powers(
            coeff,
            raw.half_power as i64,
            raw.base,
        ))
    }
}

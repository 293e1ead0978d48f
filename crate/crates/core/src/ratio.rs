//! Exact rational thresholds for minimum support and confidence.
//!
//! Thresholds such as `0.45%` are not representable in binary floating point,
//! so comparing `count / n >= 0.0045` in `f64` can flip at the boundary. A
//! [`Fraction`] keeps the decimal the user wrote as an exact ratio and all
//! comparisons are done by integer cross-multiplication.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FractionError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as a fraction (expected e.g. 0.5, 45%, 1/3)")]
    Parse(String),
    #[error("{0} is not a finite non-negative number")]
    NotFinite(String),
    #[error("{name} must satisfy 0 < {name} <= 1, got {value}")]
    OutOfRange { name: &'static str, value: Fraction },
}

/// A non-negative rational number `num / den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FractionRepr", into = "FractionRepr")]
pub struct Fraction {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Fraction {
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self, FractionError> {
        if den == 0 {
            return Err(FractionError::ZeroDenominator);
        }
        let g = gcd(num, den).max(1);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    /// Converts a float through its shortest round-trip decimal rendering, so
    /// `0.0045` becomes exactly `45/10000`.
    pub fn from_f64(value: f64) -> Result<Self, FractionError> {
        if !value.is_finite() || value < 0.0 {
            return Err(FractionError::NotFinite(value.to_string()));
        }
        format!("{value}").parse()
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Checks `0 < self <= 1`; `name` labels the error.
    pub fn check_unit(self, name: &'static str) -> Result<Self, FractionError> {
        if self.num == 0 || self.num > self.den {
            Err(FractionError::OutOfRange { name, value: self })
        } else {
            Ok(self)
        }
    }

    /// Smallest integer count `c` with `c / total >= self`, i.e. `ceil(self * total)`.
    pub fn min_count(&self, total: usize) -> u64 {
        let prod = self.num as u128 * total as u128;
        prod.div_ceil(self.den as u128) as u64
    }

    /// Whether `numer / denom >= self`. A zero `denom` never satisfies.
    pub fn is_met_by(&self, numer: u64, denom: u64) -> bool {
        denom != 0 && numer as u128 * self.den as u128 >= self.num as u128 * denom as u128
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn parse_decimal(s: &str) -> Option<(u64, u64)> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.len() > 18 {
        return None;
    }
    let den = 10u64.checked_pow(frac_part.len() as u32)?;
    let int_val: u64 = if int_part.is_empty() { 0 } else { int_part.parse().ok()? };
    let frac_val: u64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    let num = int_val.checked_mul(den)?.checked_add(frac_val)?;
    Some((num, den))
}

impl FromStr for Fraction {
    type Err = FractionError;

    /// Accepts decimals (`0.0045`), percentages (`0.45%`) and ratios (`1/3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || FractionError::Parse(s.to_string());
        if let Some((n, d)) = t.split_once('/') {
            let n: u64 = n.trim().parse().map_err(|_| err())?;
            let d: u64 = d.trim().parse().map_err(|_| err())?;
            return Fraction::new(n, d);
        }
        if let Some(pct) = t.strip_suffix('%') {
            let (n, d) = parse_decimal(pct.trim()).ok_or_else(err)?;
            return Fraction::new(n, d.checked_mul(100).ok_or_else(err)?);
        }
        let (n, d) = parse_decimal(t).ok_or_else(err)?;
        Fraction::new(n, d)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FractionRepr {
    Number(f64),
    Text(String),
}

impl TryFrom<FractionRepr> for Fraction {
    type Error = FractionError;

    fn try_from(r: FractionRepr) -> Result<Self, Self::Error> {
        match r {
            FractionRepr::Number(v) => Fraction::from_f64(v),
            FractionRepr::Text(s) => s.parse(),
        }
    }
}

impl From<Fraction> for FractionRepr {
    fn from(f: Fraction) -> Self {
        FractionRepr::Text(f.to_string())
    }
}

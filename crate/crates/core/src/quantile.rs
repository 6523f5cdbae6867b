//! Exact rational quantiles and the order-statistic index they select.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A quantile `p/q` in `[0, 1]`, always held in lowest terms (`0` is `0/1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quantile {
    num: u32,
    den: u32,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Quantile {
    pub const ZERO: Quantile = Quantile { num: 0, den: 1 };
    pub const ONE: Quantile = Quantile { num: 1, den: 1 };

    /// Builds `num/den`, reducing to lowest terms.
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidQuantile(format!("{num}/{den}")));
        }
        if num == 0 {
            return Ok(Self::ZERO);
        }
        let g = gcd(num as u64, den as u64) as u32;
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(self) -> u32 {
        self.num
    }

    pub fn denominator(self) -> u32 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_one(self) -> bool {
        self.num == self.den
    }

    /// 1-based position, among `size` ascending values, that the quantile reads:
    /// `ceil(p * size / q)` for `p > 0`, and `1` for the zero quantile.
    ///
    /// Returns 0 only for an empty bundle.
    pub fn index(self, size: usize) -> usize {
        if size == 0 {
            return 0;
        }
        if self.num == 0 {
            return 1;
        }
        let s = size as u64;
        let (p, q) = (self.num as u64, self.den as u64);
        (p * s).div_ceil(q) as usize
    }

    /// `Some(t)` when the quantile equals `t/(t+1)` for a positive integer `t`.
    pub fn as_t_over_t_plus_one(self) -> Option<u32> {
        (self.num >= 1 && self.den == self.num + 1).then_some(self.num)
    }
}

/// Free-function form of [`Quantile::index`].
pub fn quantile_index(tau: Quantile, size: usize) -> usize {
    tau.index(size)
}

impl Ord for Quantile {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u64 * other.den as u64).cmp(&(other.num as u64 * self.den as u64))
    }
}

impl PartialOrd for Quantile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Quantile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Parses the strict `p/q` form. Fractions not in lowest terms (`3/3`, `0/5`)
/// are rejected rather than silently reduced.
impl FromStr for Quantile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidQuantile(s.to_string());
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let is_digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !is_digits(p) || !is_digits(q) {
            return Err(bad());
        }
        let num: u32 = p.parse().map_err(|_| bad())?;
        let den: u32 = q.parse().map_err(|_| bad())?;
        let tau = Quantile::new(num, den).map_err(|_| bad())?;
        if tau.num != num || tau.den != den {
            return Err(bad());
        }
        Ok(tau)
    }
}

impl Serialize for Quantile {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

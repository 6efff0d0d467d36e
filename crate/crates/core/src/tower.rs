//! Magnitudes stored as towers of exponentials.
//!
//! A [`TowerReal`] with level `k` and mantissa `m` stands for `exp^k(m)`, the
//! exponential applied `k` times. Orbit magnitudes of `e^z + a` and the iterated
//! maximum modulus `M^n(R)` both grow at this rate, so after two or three steps
//! neither fits in an `f64`; in tower form they stay comparable forever.
//!
//! Normal form:
//! - level 0: any finite mantissa strictly below [`PROMOTION_THRESHOLD`];
//! - level k >= 1: mantissa in `[ln H, H)` with `H` the promotion threshold.
//!
//! With these ranges every positive value has exactly one representation and
//! ordering is lexicographic on `(level, mantissa)`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::fmt::sig17;

/// Values at or above this are promoted to the next level.
pub const PROMOTION_THRESHOLD: f64 = 1e15;

/// `ln(PROMOTION_THRESHOLD)`, the mantissa floor for levels >= 1.
pub fn mantissa_floor() -> f64 {
    PROMOTION_THRESHOLD.ln()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TowerReal {
    level: u32,
    mantissa: f64,
}

impl TowerReal {
    pub const ZERO: TowerReal = TowerReal {
        level: 0,
        mantissa: 0.0,
    };

    /// Normalized tower for an ordinary finite real.
    pub fn from_real(x: f64) -> Self {
        debug_assert!(x.is_finite(), "tower from non-finite value {x}");
        Self::normalize(0, x)
    }

    /// Builds a tower from raw parts and brings it into normal form.
    ///
    /// Level >= 1 mantissas below `ln H` are demoted; mantissas at or above
    /// `H` are promoted. A non-finite mantissa is rejected.
    pub fn from_parts(level: u32, mantissa: f64) -> Result<Self> {
        if !mantissa.is_finite() {
            return Err(Error::Domain(format!(
                "tower mantissa must be finite, got {mantissa}"
            )));
        }
        Ok(Self::normalize(level, mantissa))
    }

    fn normalize(mut level: u32, mut mantissa: f64) -> Self {
        let floor = mantissa_floor();
        // Demote while the mantissa is too small for its level.
        while level > 0 && mantissa < floor {
            mantissa = mantissa.exp();
            level -= 1;
        }
        while mantissa >= PROMOTION_THRESHOLD {
            mantissa = mantissa.ln();
            level += 1;
        }
        // ln of a value just above H can round below the floor.
        if level > 0 && mantissa < floor {
            mantissa = floor;
        }
        TowerReal { level, mantissa }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    /// The represented value as an `f64`, saturating to `+inf` when it does
    /// not fit.
    pub fn to_f64(&self) -> f64 {
        let mut v = self.mantissa;
        for _ in 0..self.level {
            v = v.exp();
            if v.is_infinite() {
                return v;
            }
        }
        v
    }

    /// `e^t`. Crossing the threshold moves up one level and keeps the
    /// mantissa.
    pub fn exp(&self) -> Self {
        if self.level > 0 {
            return TowerReal {
                level: self.level + 1,
                mantissa: self.mantissa,
            };
        }
        let x = self.mantissa;
        if x >= mantissa_floor() {
            return TowerReal {
                level: 1,
                mantissa: x,
            };
        }
        let y = x.exp();
        if y >= PROMOTION_THRESHOLD {
            TowerReal {
                level: 1,
                mantissa: mantissa_floor(),
            }
        } else {
            TowerReal {
                level: 0,
                mantissa: y,
            }
        }
    }

    /// Natural logarithm; fails for represented values `<= 0`.
    pub fn ln(&self) -> Result<Self> {
        match self.level {
            0 if self.mantissa <= 0.0 => Err(Error::Domain(format!(
                "logarithm of non-positive value {}",
                self.mantissa
            ))),
            0 => Ok(TowerReal {
                level: 0,
                mantissa: self.mantissa.ln(),
            }),
            l => Ok(TowerReal {
                level: l - 1,
                mantissa: self.mantissa,
            }),
        }
    }

    /// `scale * t + offset` for `scale >= 1` and `offset >= 0`.
    ///
    /// Used for the right-hand side `2|w| + kappa` of the domination test.
    pub fn affine(&self, scale: f64, offset: f64) -> Self {
        debug_assert!(scale >= 1.0 && offset >= 0.0);
        match self.level {
            0 => Self::normalize(0, scale * self.mantissa + offset),
            1 => {
                let m = self.mantissa;
                let rest = (offset * (-m).exp() / scale).ln_1p();
                Self::normalize(1, m + scale.ln() + rest)
            }
            // ln ln(scale * X) = m + ln(scale) e^{-m} with m >= ln H: below resolution.
            _ => *self,
        }
    }
}

impl Default for TowerReal {
    fn default() -> Self {
        TowerReal::ZERO
    }
}

impl PartialOrd for TowerReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_tower(other))
    }
}

impl TowerReal {
    /// Total order of represented values: level first, then mantissa.
    pub fn cmp_tower(&self, other: &Self) -> Ordering {
        self.level
            .cmp(&other.level)
            .then_with(|| self.mantissa.total_cmp(&other.mantissa))
    }
}

impl fmt::Display for TowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({};{})", self.level, sig17(self.mantissa))
    }
}

impl std::str::FromStr for TowerReal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid tower literal {s:?}"));
        let inner = s
            .trim()
            .strip_prefix("T(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (level, mantissa) = inner.split_once(';').ok_or_else(bad)?;
        let level: u32 = level.trim().parse().map_err(|_| bad())?;
        let mantissa: f64 = mantissa.trim().parse().map_err(|_| bad())?;
        TowerReal::from_parts(level, mantissa)
    }
}

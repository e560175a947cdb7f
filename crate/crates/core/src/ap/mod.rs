//! Arbitrary-precision scalars.
//!
//! `ApReal` wraps an `astro_float::BigFloat` together with the decimal
//! precision it was produced at; binary operations run at the larger of the
//! two operand precisions. `ApComplex` is a plain pair of `ApReal`s.
//! Precision is always explicit: there is no ambient working precision.

mod complex;
pub(crate) mod gamma;
mod phase;
pub(crate) mod rational;
mod real;

pub use complex::ApComplex;
pub use gamma::{gamma_ap, ln_gamma, ln_gamma_real, rgamma, rgamma_q};
pub use phase::Phased;
pub use rational::{parse_rational, q_to_f64, Rational};
pub use real::ApReal;

pub(crate) use gamma::ln_sin_pi;

use crate::error::{Error, Result};
use astro_float::{Consts, RoundingMode};
use serde::{Deserialize, Serialize};
use std::cell::RefCell;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

thread_local! {
    // Memoized pi / ln 2 / e used by astro-float's transcendental functions.
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Working precision in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_DIGITS: u32 = 20;
    pub const DEFAULT: Precision = Precision(50);

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidPrecision(digits));
        }
        Ok(Precision(digits))
    }

    /// Internal constructor for working precisions derived from a validated one.
    pub(crate) fn raw(digits: u32) -> Self {
        Precision(digits.max(1))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    pub fn bits(self) -> usize {
        (self.0 as f64 * LOG2_10).ceil() as usize + 8
    }

    pub fn plus(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    pub fn max(self, other: Self) -> Self {
        Precision(self.0.max(other.0))
    }

    /// `10^-digits` as an `ApReal`, the relative resolution at this precision.
    pub fn epsilon(self) -> ApReal {
        ApReal::ten_pow(-(self.0 as i64), self)
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

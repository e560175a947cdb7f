//! Sector classification in the `zeta = z^2/4` plane.
//!
//! The exponential expansion is large in `|arg zeta| < pi kappa / 2`,
//! becomes exponentially small beyond that anti-Stokes ray, and for
//! `kappa < 1` is switched off entirely past the Stokes ray
//! `|arg zeta| = pi kappa`.

use crate::ap::rational::{q_half, q_int};
use crate::wright::WrightParams;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default half-width, in radians, of the band treated as lying on a
/// Stokes or anti-Stokes ray.
pub const DEFAULT_ANGLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    ExponentiallyLarge,
    ExponentiallySmallPlusAlgebraic,
    AlgebraicOnly,
    StokesLine,
    AntiStokesLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dominance {
    Exponential,
    Algebraic,
    Comparable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Regime {
    pub sector: Sector,
    pub dominant: Dominance,
    /// `N` of the rotated-copy sum, stored for every `kappa`.
    pub n_range: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyConfig {
    pub angle_tol: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { angle_tol: DEFAULT_ANGLE_TOL }
    }
}

/// Smallest `N >= 0` with `2N + 1 > kappa/2`.
pub fn n_rule(wp: &WrightParams) -> u32 {
    // 2N + 1 > kappa/2  <=>  N > kappa/4 - 1/2.
    let t = &wp.kappa / q_int(4) - q_half();
    let f = t.numer().div_floor(t.denom());
    let n = f + num_bigint::BigInt::from(1);
    if n.is_negative() {
        0
    } else {
        n.to_u32().unwrap_or(u32::MAX)
    }
}

pub fn classify(wp: &WrightParams, arg_zeta: f64) -> Regime {
    classify_with(wp, arg_zeta, &ClassifyConfig::default())
}

pub fn classify_with(wp: &WrightParams, arg_zeta: f64, cfg: &ClassifyConfig) -> Regime {
    let phi = arg_zeta.abs();
    let kappa = wp.kappa_f64();
    let anti = PI * kappa / 2.0;
    let stokes = PI * kappa;
    let tol = cfg.angle_tol;
    let sector = if anti <= PI + tol && (phi - anti).abs() <= tol {
        Sector::AntiStokesLine
    } else if kappa < 1.0 && (phi - stokes).abs() <= tol {
        Sector::StokesLine
    } else if phi < anti {
        Sector::ExponentiallyLarge
    } else if phi < stokes.min(PI) || (kappa >= 1.0 && phi <= PI) {
        Sector::ExponentiallySmallPlusAlgebraic
    } else {
        Sector::AlgebraicOnly
    };
    let dominant = match sector {
        Sector::ExponentiallyLarge => Dominance::Exponential,
        Sector::AntiStokesLine => Dominance::Comparable,
        _ => Dominance::Algebraic,
    };
    Regime { sector, dominant, n_range: n_rule(wp) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wright::{derive_params, StruveParams};

    fn wp(a: &str) -> WrightParams {
        derive_params(&StruveParams::parse(a, "1/3").unwrap()).unwrap()
    }

    #[test]
    fn sector_examples() {
        let r = classify(&wp("-1/2"), PI);
        assert_eq!(r.sector, Sector::AlgebraicOnly);
        assert_eq!(classify(&wp("-1/2"), PI / 2.0).sector, Sector::StokesLine);
        assert_eq!(classify(&wp("-1/2"), -PI / 2.0).sector, Sector::StokesLine);
        let r = classify(&wp("-1/3"), PI / 3.0);
        assert_eq!(r.sector, Sector::AntiStokesLine);
        assert_eq!(r.dominant, Dominance::Comparable);
        let r = classify(&wp("1/2"), 0.0);
        assert_eq!(r.sector, Sector::ExponentiallyLarge);
        assert_eq!(r.dominant, Dominance::Exponential);
        assert_eq!(classify(&wp("1/2"), PI).sector, Sector::ExponentiallySmallPlusAlgebraic);
        assert_eq!(classify(&wp("3"), PI).sector, Sector::ExponentiallyLarge);
    }

    #[test]
    fn n_rule_values() {
        assert_eq!(n_rule(&wp("1/2")), 0);
        assert_eq!(n_rule(&wp("1")), 1);
        assert_eq!(n_rule(&wp("3")), 1);
        assert_eq!(n_rule(&wp("4")), 1);
        assert_eq!(n_rule(&wp("5")), 2);
        assert_eq!(n_rule(&wp("6")), 2);
        assert_eq!(n_rule(&wp("-1/2")), 0);
    }

    #[test]
    fn tolerance_is_configurable() {
        let w = wp("-1/3");
        let off = PI / 3.0 + 1e-9;
        assert_ne!(classify(&w, off).sector, Sector::AntiStokesLine);
        let cfg = ClassifyConfig { angle_tol: 1e-6 };
        assert_eq!(classify_with(&w, off, &cfg).sector, Sector::AntiStokesLine);
    }
}

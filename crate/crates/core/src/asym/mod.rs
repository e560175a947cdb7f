//! Large-`|z|` expansions of the normalized function and their assembly.

mod components;
mod trunc;

pub use components::{alg_expansion_h12, alg_hat_h21, alg_imag, exp_expansion_e, exp_hat_e21, tilde_e_n};
pub use trunc::{TruncMode, TruncationPolicy};

use crate::ap::rational::{is_nonpositive_integer, q_half};
use crate::ap::{ApComplex, ApReal, Phased, Precision, Rational};
use crate::coeffs::{CoeffCache, CoeffTable};
use crate::error::{Error, Result};
use crate::regime::{classify_with, ClassifyConfig, Dominance, Regime, Sector};
use crate::wright::{derive_params, Case, StruveParams, WrightParams};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

/// Which expansion a component came from. Components are summed in the
/// order of this enum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    /// `E(zeta e^{2 pi i turns})`.
    E {
        turns: i64,
    },
    /// `H(zeta e^{-+ pi i})`.
    H,
    TildeE {
        n: u32,
    },
    HatE21,
    HatH21K,
    HatH21Ks,
    /// The algebraic expansion for `a < 0` on the imaginary axis.
    ImagAlg,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::E { turns: 0 } => write!(f, "E(zeta)"),
            Label::E { turns } => write!(f, "E(zeta e^({turns}*2pi i))"),
            Label::H => write!(f, "H"),
            Label::TildeE { n } => write!(f, "E~_{n}"),
            Label::HatE21 => write!(f, "E^21"),
            Label::HatH21K => write!(f, "H^21[k]"),
            Label::HatH21Ks => write!(f, "H^21[k_s]"),
            Label::ImagAlg => write!(f, "H_imag"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub label: Label,
    pub value: ApComplex,
    /// `Exponential` or `Algebraic`: the family of the expansion.
    pub dominance: Dominance,
    /// Number of terms kept.
    pub terms: usize,
    /// Magnitude of the first omitted term, prefactor included.
    pub error_estimate: ApReal,
    /// Set on the components within a factor of ten of the largest.
    pub dominant: bool,
}

#[derive(Clone, Debug)]
pub struct AsymptoticEstimate {
    pub value: ApComplex,
    pub components: Vec<Component>,
    /// Sum of the component error estimates.
    pub error_estimate: ApReal,
    pub regime: Regime,
    pub stokes_warning: bool,
    pub notes: Vec<String>,
}

impl AsymptoticEstimate {
    fn build(mut components: Vec<Component>, regime: Regime, stokes_warning: bool, prec: Precision) -> Self {
        components.sort_by_key(|c| c.label);
        let mut value = ApComplex::zero(prec);
        let mut err = ApReal::zero(prec);
        for c in &components {
            value = &value + &c.value;
            err = &err + &c.error_estimate;
        }
        let top = components.iter().map(|c| c.value.log2_abs()).fold(f64::NEG_INFINITY, f64::max);
        for c in &mut components {
            c.dominant = c.value.log2_abs() >= top - 10f64.log2();
        }
        AsymptoticEstimate { value, components, error_estimate: err, regime, stokes_warning, notes: Vec::new() }
    }

    pub fn truncations(&self) -> Vec<(Label, usize)> {
        self.components.iter().map(|c| (c.label, c.terms)).collect()
    }

    pub fn component(&self, label: Label) -> Option<&Component> {
        self.components.iter().find(|c| c.label == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct AsymConfig {
    pub policy: TruncationPolicy,
    pub classify: ClassifyConfig,
}

fn zeta_of(z: &ApComplex) -> Phased {
    let p = Phased::from_complex(z);
    let four = ApReal::from_i64(4, z.prec());
    Phased::new(&p.modulus.sqr() / &four, p.phase.mul_i64(2))
}

/// Assembly for `a > 0` in `|arg z| <= pi/2`.
pub fn assemble_pos(z: &ApComplex, p: &StruveParams, ct: &CoeffTable, cfg: &AsymConfig) -> Result<AsymptoticEstimate> {
    let wp = derive_params(p)?;
    if !matches!(wp.case, Case::PositiveA) {
        return Err(Error::DegenerateParameter("assemble_pos requires a > 0".into()));
    }
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let prec = z.prec();
    let tol = cfg.classify.angle_tol;
    let arg_z = z.arg().to_f64();
    if arg_z.abs() > PI / 2.0 + tol {
        return Err(Error::SectorUnsupported(format!("|arg z| = {} exceeds pi/2", arg_z.abs())));
    }
    let tp = &cfg.policy;
    let zeta = zeta_of(z);
    let regime = classify_with(&wp, 2.0 * arg_z, &cfg.classify);
    let n = regime.n_range as i64;
    let kappa = wp.kappa_f64();
    let mut comps = Vec::new();
    let mut warn = false;

    let e_at = |turns: i64| -> Result<Component> {
        let mut c = exp_expansion_e(&zeta.rotate_pi(2 * turns), &wp, ct, tp)?;
        c.label = Label::E { turns };
        Ok(c)
    };

    if z.im.is_zero() {
        // The algebraic part is maximally subdominant on the positive axis.
        if kappa <= 2.0 {
            comps.push(e_at(0)?);
        } else {
            for t in -n..=n {
                comps.push(e_at(t)?);
            }
        }
    } else if z.re.is_zero() {
        let x = zeta.modulus.clone();
        let big_x = wp.big_x(&x);
        for k in 1..=n.max(1) as u32 {
            comps.push(tilde_e_n(&big_x, k, &wp, ct, tp)?);
        }
        comps.push(alg_expansion_h12(&Phased::new(x, ApReal::zero(prec)), &wp, tp)?);
    } else {
        let s: i64 = if arg_z > 0.0 { 1 } else { -1 };
        let phi = zeta.phase.to_f64().abs();
        if kappa <= 2.0 {
            comps.push(e_at(0)?);
            let threshold = PI * (1.0 - kappa / 2.0);
            if phi > threshold {
                comps.push(e_at(-s)?);
            }
            warn = (phi - threshold).abs() <= tol;
        } else {
            for t in -n..=n {
                comps.push(e_at(t)?);
            }
        }
        comps.push(alg_expansion_h12(&zeta.rotate_pi(-s), &wp, tp)?);
    }
    warn |= regime.sector == Sector::StokesLine;
    Ok(AsymptoticEstimate::build(comps, regime, warn, prec))
}

fn sigma_wp(sigma: &Rational, nu: &Rational) -> Result<WrightParams> {
    derive_params(&StruveParams::new(-sigma.clone(), nu.clone())?)
}

/// `Gamma(sigma n - nu - 1/2)` is singular for some `n = 0, 1, 2`.
pub fn hat_parameters_singular(sigma: &Rational, nu: &Rational) -> bool {
    (0..3).any(|n| is_nonpositive_integer(&(sigma * Rational::from_integer(BigInt::from(n)) - nu - q_half())))
}

/// Assembly for `a = -sigma` at real `z > 0`. The exponential part is kept
/// for `sigma < 1/2` only.
pub fn assemble_neg_real(
    z: &ApReal,
    sigma: &Rational,
    nu: &Rational,
    ct: &CoeffTable,
    cfg: &AsymConfig,
) -> Result<AsymptoticEstimate> {
    let wp = sigma_wp(sigma, nu)?;
    if !z.is_positive() {
        return Err(Error::ZeroArgument);
    }
    let prec = z.prec();
    let x = &z.sqr() / &ApReal::from_i64(4, prec);
    let tp = &cfg.policy;
    let (k, ks) = alg_hat_h21(&x, &wp, tp)?;
    let mut comps = vec![k, ks];
    if sigma < &q_half() {
        comps.push(exp_hat_e21(&x, &wp, ct, tp)?);
    }
    // The exponential factor behaves like that of an expansion at
    // arg = pi sigma, which places sigma = 1/3 on an anti-Stokes ray and
    // sigma = 1/2 on a Stokes ray.
    let regime = classify_with(&wp, PI * crate::ap::q_to_f64(sigma), &cfg.classify);
    let warn = regime.sector == Sector::StokesLine;
    let mut est = AsymptoticEstimate::build(comps, regime, warn, prec);
    if hat_parameters_singular(sigma, nu) {
        est.notes.push("Gamma(sigma n - nu - 1/2) is singular for some n <= 2".into());
    }
    Ok(est)
}

/// Assembly for `a = -sigma` at `z = i |z|`.
pub fn assemble_neg_imag(
    abs_z: &ApReal,
    sigma: &Rational,
    nu: &Rational,
    cfg: &AsymConfig,
) -> Result<AsymptoticEstimate> {
    let wp = sigma_wp(sigma, nu)?;
    if !abs_z.is_positive() {
        return Err(Error::ZeroArgument);
    }
    let prec = abs_z.prec();
    let x = &abs_z.sqr() / &ApReal::from_i64(4, prec);
    let c = alg_imag(&x, &wp, &cfg.policy)?;
    let regime = classify_with(&wp, PI * (1.0 - crate::ap::q_to_f64(sigma)), &cfg.classify);
    let warn = regime.sector == Sector::StokesLine;
    Ok(AsymptoticEstimate::build(vec![c], regime, warn, prec))
}

/// Coefficient tables shared by every evaluation in the process.
pub fn coeff_cache() -> &'static CoeffCache {
    static CACHE: OnceLock<CoeffCache> = OnceLock::new();
    CACHE.get_or_init(CoeffCache::new)
}

const FIRST_TABLE: usize = 48;
const LAST_TABLE: usize = 768;

/// Asymptotic estimate of the normalized function at any nonzero `z` the
/// expansions cover. The function is even in `z`, so the left half-plane
/// is reflected first. Coefficient tables grow until the optimal
/// truncation point fits.
pub fn asymptotic(z: &ApComplex, p: &StruveParams, prec: Precision, cfg: &AsymConfig) -> Result<AsymptoticEstimate> {
    let z = z.with_prec(prec);
    let z = if z.re.is_negative() || (z.re.is_zero() && z.im.is_negative()) { -z } else { z };
    if z.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let wp = derive_params(p)?;
    match wp.case {
        Case::PositiveA => with_table(p, prec, cfg, |ct| assemble_pos(&z, p, ct, cfg)),
        Case::NegativeA { sigma } => {
            if z.im.is_zero() {
                with_table(p, prec, cfg, |ct| assemble_neg_real(&z.re, &sigma, p.nu(), ct, cfg))
            } else if z.re.is_zero() {
                assemble_neg_imag(&z.im, &sigma, p.nu(), cfg)
            } else {
                Err(Error::SectorUnsupported("for a < 0 only real or imaginary z are covered".into()))
            }
        }
    }
}

fn with_table(
    p: &StruveParams,
    prec: Precision,
    cfg: &AsymConfig,
    f: impl Fn(&CoeffTable) -> Result<AsymptoticEstimate>,
) -> Result<AsymptoticEstimate> {
    let mut m = cfg.policy.coeffs_needed().unwrap_or(FIRST_TABLE).max(FIRST_TABLE);
    loop {
        let ct = coeff_cache().formal(p, m, prec.plus(5))?;
        match f(&ct) {
            Err(Error::TruncationUnstable { cap, .. }) if cap == m && m < LAST_TABLE.min(cfg.policy.cap) => {
                m = (2 * m).min(LAST_TABLE);
            }
            r => return r,
        }
    }
}

#[cfg(test)]
mod tests;

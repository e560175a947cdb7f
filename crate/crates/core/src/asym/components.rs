//! The individual exponential and algebraic expansions.

use super::trunc::{exp2, truncate, Shortfall, Term, Truncated, TruncationPolicy};
use super::{Component, Label};
use crate::ap::gamma::{log2_rgamma_envelope, RgammaSeq};
use crate::ap::rational::{q_half, q_int};
use crate::ap::{ApComplex, ApReal, Phased, Precision, Rational};
use crate::coeffs::CoeffTable;
use crate::error::{Error, Result};
use crate::regime::Dominance;
use crate::wright::{Case, WrightParams};
use num_bigint::BigInt;
use num_traits::One;

const GUARD: u32 = 10;

fn finish(label: Label, r: std::result::Result<Truncated, Shortfall>, ct_len: Option<usize>) -> Result<Truncated> {
    match r {
        Ok(t) => Ok(t),
        Err(Shortfall::Failed(e)) => Err(e),
        Err(Shortfall::Exhausted) => {
            Err(Error::TruncationUnstable { label: label.to_string(), cap: ct_len.unwrap_or(0) })
        }
    }
}

fn component(label: Label, dominance: Dominance, pre: &ApComplex, t: &Truncated, prec: Precision) -> Component {
    let work = t.sum.prec();
    let value = (pre * &t.sum).with_prec(prec);
    let error_estimate = (&exp2(t.err_log2, work) * &pre.abs()).with_prec(prec);
    Component { label, value, dominance, terms: t.terms, error_estimate, dominant: false }
}

/// `c_j` at `work`, with `log2 |c_j|`.
fn coeff(ct: &CoeffTable, j: usize, work: Precision) -> Option<(ApReal, f64)> {
    ct.get(j).map(|c| {
        let c = c.with_prec(work);
        let l = c.log2_abs();
        (c, l)
    })
}

/// `E(zeta) = A0 Z^theta e^Z sum_j c_j Z^{-j}` with `Z = kappa (h zeta)^{1/kappa}`
/// on the branch fixed by the phase of `zeta`.
pub fn exp_expansion_e(zeta: &Phased, wp: &WrightParams, ct: &CoeffTable, tp: &TruncationPolicy) -> Result<Component> {
    if zeta.modulus.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let prec = zeta.prec();
    let work = prec.plus(GUARD);
    let kap = ApReal::from_rational(&wp.kappa, work);
    let zeta_w = Phased::new(zeta.modulus.with_prec(work), zeta.phase.with_prec(work));
    let zp = zeta_w.scale(&wp.h(work)).powr(&kap.recip()).scale(&kap);
    let big_z = zp.to_complex();
    let pre = &(&zp.powr(&ApReal::from_rational(&wp.theta, work)).to_complex() * &big_z.exp()).scale(&wp.a0(work));
    let w = big_z.recip();
    let lw = w.log2_abs();
    let mut wj = ApComplex::one(work);
    let label = Label::E { turns: 0 };
    let r = truncate(&label.to_string(), tp, work, |j| {
        let Some((c, lc)) = coeff(ct, j, work) else { return Ok(None) };
        let value = wj.scale(&c);
        wj = &wj * &w;
        Ok(Some(Term { value, env_log2: lc + j as f64 * lw, last: false }))
    });
    let t = finish(label, r, Some(ct.m))?;
    Ok(component(label, Dominance::Exponential, pre, &t, prec))
}

/// `H(zeta) = (1/pi) sum_k Gamma(k+1/2) zeta^{-k-1} / Gamma(nu + 3/2 - a(1+k))`.
///
/// The residues are all simple; where the reciprocal gamma vanishes the
/// term is exactly zero.
pub fn alg_expansion_h12(zeta: &Phased, wp: &WrightParams, tp: &TruncationPolicy) -> Result<Component> {
    if zeta.modulus.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let prec = zeta.prec();
    let work = prec.plus(GUARD);
    let w = Phased::new(zeta.modulus.with_prec(work).recip(), zeta.phase.with_prec(work).neg()).to_complex();
    let a = wp.params.a().clone();
    let seq = RgammaSeq::new(wp.params.nu32() - &a, -a, work);
    let label = Label::H;
    let r = algebraic_sum(&label.to_string(), &w, seq, tp, work);
    let t = finish(label, r, None)?;
    let pre = ApComplex::from_real(ApReal::pi(work).recip());
    Ok(component(label, Dominance::Algebraic, &pre, &t, prec))
}

/// `sum_k Gamma(k+1/2) w^{k+1} / Gamma(y_k)` with `1/Gamma(y_k)` from `seq`.
fn algebraic_sum(
    label: &str,
    w: &ApComplex,
    mut seq: RgammaSeq,
    tp: &TruncationPolicy,
    work: Precision,
) -> std::result::Result<Truncated, Shortfall> {
    let lw = w.log2_abs();
    let mut g = ApReal::pi(work).sqrt();
    let mut wk = w.clone();
    truncate(label, tp, work, |k| {
        let y = seq.arg();
        let rg = seq.next_value();
        let last = seq.vanishes_from(&y);
        let env = g.log2_abs() + (k + 1) as f64 * lw + log2_rgamma_envelope(&y, &rg);
        let value = wk.scale(&(&g * &rg));
        g = &g * &(&ApReal::from_i64(k as i64, work) + &ApReal::from_f64(0.5, work));
        wk = &wk * w;
        Ok(Some(Term { value, env_log2: if rg.is_zero() { f64::NEG_INFINITY } else { env }, last }))
    })
}

/// `E~_n(X) = 2 A0 X^theta e^{X cos t_n} sum_j c_j X^{-j} cos[X sin t_n + t_n (theta - j)]`
/// with `t_n = (2n-1) pi / kappa`: the sum of `E` at `x e^{(2n-1) pi i}` and at
/// its conjugate point.
pub fn tilde_e_n(
    big_x: &ApReal,
    n: u32,
    wp: &WrightParams,
    ct: &CoeffTable,
    tp: &TruncationPolicy,
) -> Result<Component> {
    if !big_x.is_positive() {
        return Err(Error::ZeroArgument);
    }
    let prec = big_x.prec();
    let work = prec.plus(GUARD);
    let x = big_x.with_prec(work);
    let kap = ApReal::from_rational(&wp.kappa, work);
    let th = ApReal::from_rational(&wp.theta, work);
    let tn = &ApReal::pi(work).mul_i64(2 * n as i64 - 1) / &kap;
    let pre = (&(&x.pow(&th) * &(&x * &tn.cos()).exp()) * &wp.a0(work)).mul_i64(2);
    let phase0 = &(&x * &tn.sin()) + &(&tn * &th);
    let xi = x.recip();
    let lxi = xi.log2_abs();
    let mut xj = ApReal::one(work);
    let label = Label::TildeE { n };
    let r = truncate(&label.to_string(), tp, work, |j| {
        let Some((c, lc)) = coeff(ct, j, work) else { return Ok(None) };
        let osc = (&phase0 - &tn.mul_i64(j as i64)).cos();
        let value = ApComplex::from_real(&(&c * &xj) * &osc);
        xj = &xj * &xi;
        Ok(Some(Term { value, env_log2: lc + j as f64 * lxi, last: false }))
    });
    let t = finish(label, r, Some(ct.m))?;
    Ok(component(label, Dominance::Exponential, &ApComplex::from_real(pre), &t, prec))
}

fn sigma_of(wp: &WrightParams) -> Result<Rational> {
    match &wp.case {
        Case::NegativeA { sigma } => Ok(sigma.clone()),
        Case::PositiveA => Err(Error::DegenerateParameter("expansion requires a < 0".into())),
    }
}

/// `E^(x) = (A0/pi) X^theta e^{X cos phi} sum_j (-1)^{j-1} c_j X^{-j} sin[X sin phi + (pi/kappa)(theta - j)]`
/// with `phi = pi sigma / kappa`, for `a = -sigma`.
pub fn exp_hat_e21(x: &ApReal, wp: &WrightParams, ct: &CoeffTable, tp: &TruncationPolicy) -> Result<Component> {
    let sigma = sigma_of(wp)?;
    if !x.is_positive() {
        return Err(Error::ZeroArgument);
    }
    let prec = x.prec();
    let work = prec.plus(GUARD);
    let big_x = wp.big_x(&x.with_prec(work));
    let kap = ApReal::from_rational(&wp.kappa, work);
    let th = ApReal::from_rational(&wp.theta, work);
    let step = &ApReal::pi(work) / &kap;
    let phi = &step * &ApReal::from_rational(&sigma, work);
    let pre = &(&(&big_x.pow(&th) * &(&big_x * &phi.cos()).exp()) * &wp.a0(work)) / &ApReal::pi(work);
    let phase0 = &(&big_x * &phi.sin()) + &(&step * &th);
    let xi = big_x.recip();
    let lxi = xi.log2_abs();
    let mut xj = ApReal::one(work);
    let label = Label::HatE21;
    let r = truncate(&label.to_string(), tp, work, |j| {
        let Some((c, lc)) = coeff(ct, j, work) else { return Ok(None) };
        let osc = (&phase0 - &step.mul_i64(j as i64)).sin();
        let mut v = &(&c * &xj) * &osc;
        if j % 2 == 0 {
            v = v.neg();
        }
        xj = &xj * &xi;
        Ok(Some(Term { value: ApComplex::from_real(v), env_log2: lc + j as f64 * lxi, last: false }))
    });
    let t = finish(label, r, Some(ct.m))?;
    Ok(component(label, Dominance::Exponential, &ApComplex::from_real(pre), &t, prec))
}

/// The two algebraic sums for `a = -sigma` on the positive real axis:
/// `(1/pi) sum_k (-x)^{-k-1} Gamma(k+1/2) / Gamma(nu + 3/2 + sigma(k+1))` and
/// `(1/sigma) sum_k x^{-k_s} / (k! Gamma(3/2 - k_s))`, `k_s = (k - nu - 1/2)/sigma`.
/// Each is truncated on its own.
pub fn alg_hat_h21(x: &ApReal, wp: &WrightParams, tp: &TruncationPolicy) -> Result<(Component, Component)> {
    let sigma = sigma_of(wp)?;
    if !x.is_positive() {
        return Err(Error::ZeroArgument);
    }
    let prec = x.prec();
    let work = prec.plus(GUARD);
    let xw = x.with_prec(work);
    let inv_pi = ApComplex::from_real(ApReal::pi(work).recip());

    let w = ApComplex::from_real(xw.recip().neg());
    let seq = RgammaSeq::new(wp.params.nu32() + &sigma, sigma.clone(), work);
    let k_label = Label::HatH21K;
    let t1 = finish(k_label, algebraic_sum(&k_label.to_string(), &w, seq, tp, work), None)?;
    let first = component(k_label, Dominance::Algebraic, &inv_pi, &t1, prec);

    let nu_half = wp.params.nu() + q_half();
    let mut seq = RgammaSeq::new(q_int(3) * q_half() + &nu_half / &sigma, -(Rational::one() / &sigma), work);
    let ln_x = xw.ln();
    let mut inv_fact = ApReal::one(work);
    let mut log2_fact = 0.0f64;
    let log2_sigma = crate::ap::q_to_f64(&sigma).log2();
    let ks_label = Label::HatH21Ks;
    let r = truncate(&ks_label.to_string(), tp, work, |k| {
        let ks = (Rational::from_integer(BigInt::from(k)) - &nu_half) / &sigma;
        if ks.is_integer() {
            return Err(Shortfall::Failed(Error::DoublePole(k)));
        }
        if k > 0 {
            inv_fact = inv_fact.div_i64(k as i64);
            log2_fact += (k as f64).log2();
        }
        let y = seq.arg();
        let rg = seq.next_value();
        let last = seq.vanishes_from(&y);
        let pw = (&ApReal::from_rational(&ks, work).neg() * &ln_x).exp();
        let value = ApComplex::from_real(&(&pw * &inv_fact) * &rg);
        let env = pw.log2_abs() - log2_fact + log2_rgamma_envelope(&y, &rg) - log2_sigma;
        Ok(Some(Term { value, env_log2: if rg.is_zero() { f64::NEG_INFINITY } else { env }, last }))
    });
    let t2 = finish(ks_label, r, None)?;
    let inv_sigma = ApComplex::from_real(ApReal::from_rational(&(Rational::one() / &sigma), work));
    let second = component(ks_label, Dominance::Algebraic, &inv_sigma, &t2, prec);
    Ok((first, second))
}

/// `(1/pi) sum_k Gamma(k+1/2) x^{-k-1} / Gamma(nu + 3/2 + sigma(k+1))`, the
/// expansion for `a = -sigma` on the imaginary axis, `x = |z|^2/4`.
pub fn alg_imag(x: &ApReal, wp: &WrightParams, tp: &TruncationPolicy) -> Result<Component> {
    let sigma = sigma_of(wp)?;
    if !x.is_positive() {
        return Err(Error::ZeroArgument);
    }
    let prec = x.prec();
    let work = prec.plus(GUARD);
    let w = ApComplex::from_real(x.with_prec(work).recip());
    let seq = RgammaSeq::new(wp.params.nu32() + &sigma, sigma, work);
    let label = Label::ImagAlg;
    let t = finish(label, algebraic_sum(&label.to_string(), &w, seq, tp, work), None)?;
    let pre = ApComplex::from_real(ApReal::pi(work).recip());
    Ok(component(label, Dominance::Algebraic, &pre, &t, prec))
}

//! Reference values of `L_nu(z; a)` by direct summation of its power series.
//!
//! The engine returns the normalized function
//! `calL = (z/2)^{-nu-1} L_nu(z; a) = sum_n zeta^n / (Gamma(n+3/2) Gamma(a n + nu + 3/2))`
//! with `zeta = z^2/4`. Terms are summed at a working precision that is
//! raised automatically until the requested number of digits survives the
//! cancellation between terms.

use crate::ap::gamma::RgammaSeq;
use crate::ap::rational::q_int;
use crate::ap::{rgamma_q, ApComplex, ApReal, Precision, Rational};
use crate::error::{Error, Result};
use crate::regime::Regime;
use crate::wright::StruveParams;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Default ceiling, in decimal digits, for automatic precision escalation.
pub const DEFAULT_PREC_CAP: u32 = 400;

/// Extra digits carried beyond the requested precision.
const GUARD: u32 = 10;

/// Hard cap on the number of series terms.
const MAX_TERMS: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Series,
    AsymptoticExp,
    AsymptoticAlg,
    AsymptoticCombined,
}

/// Outcome of an evaluation: the normalized value with bookkeeping.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: ApComplex,
    pub terms_used: usize,
    /// Magnitude of the first omitted term plus a geometric tail bound and
    /// the rounding floor of the working precision.
    pub error_estimate: ApReal,
    pub regime: Option<Regime>,
    pub method: Method,
    /// Working precision the accepted pass ran at.
    pub working_digits: u32,
    /// Decimal digits lost to cancellation between terms.
    pub cancellation_digits: f64,
}

impl EvalResult {
    /// Multiplies the normalized value back by `(z/2)^{nu+1}` (principal
    /// branch) to obtain `L_nu(z; a)` itself.
    pub fn unnormalized(&self, z: &ApComplex, nu: &Rational) -> ApComplex {
        let prec = self.value.prec();
        let e = ApReal::from_rational(&(nu + Rational::one()), prec);
        let half_z = z.with_prec(prec).scale(&ApReal::from_f64(0.5, prec));
        &half_z.powr(&e) * &self.value
    }
}

/// Escalation policy for the series engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesConfig {
    pub prec_cap: u32,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig { prec_cap: DEFAULT_PREC_CAP }
    }
}

impl SeriesConfig {
    /// Default policy with the cap overridden by `STRUVE_PREC_CAP` if set.
    pub fn from_env() -> Self {
        let cap = std::env::var("STRUVE_PREC_CAP")
            .ok()
            .and_then(|s| s.trim().parse::<u32>().ok())
            .unwrap_or(DEFAULT_PREC_CAP);
        SeriesConfig { prec_cap: cap }
    }
}

/// The real coefficients `1/(Gamma(n+3/2) Gamma(a n + nu + 3/2))` in order.
pub(crate) struct CoeffGen {
    prec: Precision,
    n: usize,
    u: ApReal,
    second: RgammaSeq,
}

impl CoeffGen {
    pub(crate) fn new(p: &StruveParams, prec: Precision) -> Self {
        let u = rgamma_q(&(q_int(3) / q_int(2)), prec);
        CoeffGen { prec, n: 0, u, second: RgammaSeq::new(p.nu32(), p.a().clone(), prec) }
    }

    /// Coefficient of `zeta^n` for the current `n`, then advances.
    pub(crate) fn next_coeff(&mut self) -> ApReal {
        let v = self.second.next_value();
        let c = &self.u * &v;
        let k = &ApReal::from_i64(self.n as i64, self.prec) + &ApReal::from_f64(1.5, self.prec);
        self.u = &self.u / &k;
        self.n += 1;
        c
    }
}

/// Arithmetic the summation loop needs from its scalar type.
trait SumScalar: Clone {
    fn one_at(prec: Precision) -> Self;
    fn zero_at(prec: Precision) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scale(&self, k: &ApReal) -> Self;
    fn log2_mag(&self) -> f64;
}

impl SumScalar for ApReal {
    fn one_at(prec: Precision) -> Self {
        ApReal::one(prec)
    }
    fn zero_at(prec: Precision) -> Self {
        ApReal::zero(prec)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, k: &ApReal) -> Self {
        self * k
    }
    fn log2_mag(&self) -> f64 {
        self.log2_abs()
    }
}

impl SumScalar for ApComplex {
    fn one_at(prec: Precision) -> Self {
        ApComplex::one(prec)
    }
    fn zero_at(prec: Precision) -> Self {
        ApComplex::zero(prec)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, k: &ApReal) -> Self {
        ApComplex::scale(self, k)
    }
    fn log2_mag(&self) -> f64 {
        self.log2_abs()
    }
}

struct Pass<S> {
    sum: S,
    terms: usize,
    log2_err: f64,
    cancellation: f64,
}

/// One summation pass at fixed working precision `work`.
///
/// Stops once the terms are past their peak, shrinking, and below the
/// working resolution relative to the largest partial sum seen.
fn sum_once<S: SumScalar>(zeta: &S, p: &StruveParams, work: Precision) -> Result<Pass<S>> {
    let mut gen = CoeffGen::new(p, work);
    let mut power = S::one_at(work);
    let mut sum = S::zero_at(work);
    let mut max_partial = f64::NEG_INFINITY;
    let mut prev_term = f64::INFINITY;
    let resolution = work.digits() as f64 * std::f64::consts::LOG2_10;
    let zeta_zero = zeta.log2_mag() == f64::NEG_INFINITY;
    for n in 0..MAX_TERMS {
        let c = gen.next_coeff();
        let term = power.scale(&c);
        power = power.times(zeta);
        sum = sum.plus(&term);
        let lt = term.log2_mag();
        let ls = sum.log2_mag();
        max_partial = max_partial.max(ls);
        if zeta_zero {
            return Ok(Pass { sum, terms: 1, log2_err: f64::NEG_INFINITY, cancellation: 0.0 });
        }
        if lt == f64::NEG_INFINITY {
            // Zero coefficient at a reciprocal-gamma pole.
            continue;
        }
        let ratio = lt - prev_term;
        prev_term = lt;
        if n > 0 && ratio < -0.5 && lt < max_partial - resolution - 4.0 {
            let r = 2f64.powf(ratio);
            let tail = lt + (r / (1.0 - r)).log2();
            let floor = max_partial - resolution + (n as f64).log2();
            let cancellation = if ls == f64::NEG_INFINITY {
                f64::INFINITY
            } else {
                (max_partial - ls).max(0.0) / std::f64::consts::LOG2_10
            };
            return Ok(Pass { sum, terms: n + 1, log2_err: log2_add(tail, floor), cancellation });
        }
    }
    Err(Error::TruncationUnstable { label: "series".into(), cap: MAX_TERMS })
}

fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + 2f64.powf(lo - hi)).log2()
}

fn pow2(l: f64, prec: Precision) -> ApReal {
    if l == f64::NEG_INFINITY {
        return ApReal::zero(prec);
    }
    let e = l.floor();
    let two = ApReal::from_i64(2, prec);
    let m = ApReal::from_f64(2f64.powf(l - e), prec);
    &m * &two.powi_signed(e as i64)
}

/// Runs passes at increasing working precision until at least `prec`
/// digits survive cancellation, or the cap is reached.
fn sum_escalating<S: SumScalar>(
    zeta_at: impl Fn(Precision) -> S,
    p: &StruveParams,
    prec: Precision,
    cfg: &SeriesConfig,
) -> Result<(Pass<S>, Precision)> {
    let mut work = prec.plus(GUARD);
    loop {
        let pass = sum_once(&zeta_at(work), p, work)?;
        let survive = work.digits() as f64 - pass.cancellation;
        if survive >= prec.digits() as f64 + 2.0 {
            return Ok((pass, work));
        }
        let lost = if pass.cancellation.is_finite() { pass.cancellation.ceil() as u32 } else { work.digits() };
        let next = (2 * work.digits()).max(prec.digits() + lost + GUARD + 5);
        if next > cfg.prec_cap.max(prec.digits() + GUARD) {
            return Err(Error::PrecisionExhausted { consumed: lost.min(work.digits()), available: work.digits() });
        }
        work = Precision::raw(next);
    }
}

/// Normalized value `calL_nu(z; a)` by direct summation.
pub fn eval_series(z: &ApComplex, p: &StruveParams, prec: Precision) -> Result<EvalResult> {
    eval_series_with(z, p, prec, &SeriesConfig::from_env())
}

pub fn eval_series_with(z: &ApComplex, p: &StruveParams, prec: Precision, cfg: &SeriesConfig) -> Result<EvalResult> {
    let zeta_at = |w: Precision| {
        let zw = z.with_prec(w);
        zw.sqr().scale(&ApReal::from_f64(0.25, w))
    };
    let (pass, work) = sum_escalating(zeta_at, p, prec, cfg)?;
    Ok(EvalResult {
        value: pass.sum.with_prec(prec),
        terms_used: pass.terms,
        error_estimate: pow2(pass.log2_err, prec),
        regime: None,
        method: Method::Series,
        working_digits: work.digits(),
        cancellation_digits: pass.cancellation,
    })
}

/// The alternating series `sum_n (-1)^n (x/2)^{2n} / (Gamma(n+3/2) Gamma(a n + nu + 3/2))`,
/// i.e. the normalized function on the imaginary axis `z = i x`,
/// summed entirely in real arithmetic.
pub fn eval_alternating(x: &ApReal, p: &StruveParams, prec: Precision) -> Result<EvalResult> {
    eval_alternating_with(x, p, prec, &SeriesConfig::from_env())
}

pub fn eval_alternating_with(x: &ApReal, p: &StruveParams, prec: Precision, cfg: &SeriesConfig) -> Result<EvalResult> {
    if x.is_negative() {
        return Err(Error::DegenerateParameter("alternating series needs x >= 0".into()));
    }
    let zeta_at = |w: Precision| x.with_prec(w).sqr().div_i64(4).neg();
    let (pass, work) = sum_escalating(zeta_at, p, prec, cfg)?;
    Ok(EvalResult {
        value: ApComplex::from_real(pass.sum.with_prec(prec)),
        terms_used: pass.terms,
        error_estimate: pow2(pass.log2_err, prec),
        regime: None,
        method: Method::Series,
        working_digits: work.digits(),
        cancellation_digits: pass.cancellation,
    })
}

/// `L_nu(z; a)` itself (principal branch of `(z/2)^{nu+1}`).
pub fn struve_l(z: &ApComplex, p: &StruveParams, prec: Precision) -> Result<ApComplex> {
    let r = eval_series(z, p, prec)?;
    Ok(r.unnormalized(z, p.nu()))
}

//! Normalized coefficients `c_j = A_j / A0` of the exponential expansion.
//!
//! Three independent routes are provided:
//!
//! * [`solve_coeffs`]: least-squares matching of sampled gamma ratios
//!   (the reference method; cost grows quickly with `M`).
//! * [`formal_series_coeffs`]: exact Stirling tails, exponentiated and
//!   re-expanded; cheap for a hundred or more coefficients.
//! * [`closed_form_c123`]: the explicit polynomials for `c_1, c_2, c_3`.

mod formal;
mod linsolve;
mod ratrec;

pub use ratrec::rational_reconstruct;

use crate::ap::rational::{q_half, q_int};
use crate::ap::{ApComplex, ApReal, Precision, Rational};
use crate::error::{Error, Result};
use crate::wright::{derive_params, Case, ParamsRecord, StruveParams, WrightParams};
use formal::{formal_coeffs, GammaFactor};
use linsolve::{fit, sample_points, Layout, RatioParams};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffMethod {
    LinearSolve,
    ClosedForm,
    FormalSeries,
}

/// `c_0 .. c_{M-1}` for one parameter pair.
///
/// For `a > 0` these belong to the `1Psi2` function; for `a = -sigma` they
/// are the `2Psi1` coefficients `d_j`.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    pub params: StruveParams,
    pub m: usize,
    pub c: Vec<ApReal>,
    pub method: CoeffMethod,
    pub residual: ApReal,
    pub precision: Precision,
}

/// JSON form of a [`CoeffTable`]; numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffRecord {
    pub a: String,
    pub nu: String,
    #[serde(rename = "M")]
    pub m: usize,
    pub precision: u32,
    pub method: CoeffMethod,
    pub c: Vec<String>,
    pub residual: String,
}

impl CoeffTable {
    pub fn get(&self, j: usize) -> Option<&ApReal> {
        self.c.get(j)
    }

    pub fn to_record(&self) -> CoeffRecord {
        let ParamsRecord { a, nu } = ParamsRecord::from(&self.params);
        let d = self.precision.digits() as usize;
        CoeffRecord {
            a,
            nu,
            m: self.m,
            precision: self.precision.digits(),
            method: self.method,
            c: self.c.iter().map(|x| x.to_sci_string(d)).collect(),
            residual: self.residual.to_sci_string(6),
        }
    }

    pub fn from_record(r: &CoeffRecord) -> Result<Self> {
        let params = StruveParams::parse(&r.a, &r.nu)?;
        let precision = Precision::new(r.precision)?;
        let c = r.c.iter().map(|s| ApReal::from_decimal_str(s, precision)).collect::<Result<Vec<_>>>()?;
        if c.len() != r.m {
            return Err(Error::Parse(format!("expected {} coefficients, found {}", r.m, c.len())));
        }
        let residual = ApReal::from_decimal_str(&r.residual, precision)?;
        Ok(CoeffTable { params, m: r.m, c, method: r.method, residual, precision })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("coefficient record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: CoeffRecord = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&r)
    }

    /// Exact rationals for each coefficient, when a convergent with
    /// denominator below `max_den` matches to `tol_digits`.
    pub fn rationals(&self, tol_digits: u32, max_den: &BigInt) -> Vec<Option<Rational>> {
        self.c.iter().map(|x| rational_reconstruct(x, tol_digits, max_den)).collect()
    }

    /// Copy restricted to the first `m` coefficients.
    pub fn truncated(&self, m: usize) -> CoeffTable {
        let m = m.min(self.m);
        CoeffTable { c: self.c[..m].to_vec(), m, ..self.clone() }
    }
}

fn q(s: i64) -> Rational {
    q_int(s)
}

fn poly(coeffs: &[i64], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + q(*c))
}

/// The explicit `c_1, c_2, c_3` polynomials in `(a, nu)`, evaluated exactly.
/// Valid for either sign of `a`.
pub fn closed_form_c123(p: &StruveParams) -> Result<[Rational; 3]> {
    let a = p.a();
    if a.is_zero() {
        return Err(Error::DegenerateParameter("a = 0".into()));
    }
    let nu = p.nu();
    let a2 = a * a;
    let a3 = &a2 * a;
    let c1_brace = poly(&[11, 24, 12], nu) - a * poly(&[25, 24], nu) + q(11) * &a2;
    let c1 = -c1_brace / (q(24) * a);
    let c2_brace = poly(&[265, 1056, 1416, 768, 144], nu) - q(2) * a * poly(&[791, 2040, 1596, 384], nu)
        + q(3) * &a2 * poly(&[905, 1360, 472], nu)
        - q(2) * &a3 * poly(&[791, 528], nu)
        + q(265) * &a2 * &a2;
    let c2 = c2_brace / (q(1152) * &a2);
    let a4 = &a2 * &a2;
    let a5 = &a4 * a;
    let a6 = &a3 * &a3;
    let c3_brace = poly(&[48703, 286200, 617940, 636480, 334800, 86400, 8640], nu)
        - q(3) * a * poly(&[189797, 791400, 1179240, 797760, 248400, 28800], nu)
        + q(6) * &a2 * poly(&[355459, 1019700, 996570, 398880, 55800], nu)
        - &a3 * poly(&[3254507, 6118200, 3537720, 636480], nu)
        + q(6) * &a4 * poly(&[355459, 395700, 102990], nu)
        - q(3) * &a5 * poly(&[189797, 95400], nu)
        + q(48703) * &a6;
    let c3 = -c3_brace / (q(414720) * &a3);
    Ok([c1, c2, c3])
}

/// `c_0..c_3` from the closed forms, as a table.
pub fn closed_form_table(p: &StruveParams, prec: Precision) -> Result<CoeffTable> {
    let c123 = closed_form_c123(p)?;
    let mut c = vec![ApReal::one(prec)];
    c.extend(c123.iter().map(|x| ApReal::from_rational(x, prec)));
    Ok(CoeffTable {
        params: p.clone(),
        m: 4,
        c,
        method: CoeffMethod::ClosedForm,
        residual: ApReal::zero(prec),
        precision: prec,
    })
}

fn ratio_params(wp: &WrightParams, work: Precision, continued: bool) -> RatioParams {
    let kappa = wp.kappa.clone();
    let k = ApReal::from_rational(&kappa, work);
    let mut ln_scale = ApComplex::from_real((&k * &wp.a0(work)).ln());
    let mut ln_growth = ApComplex::from_real(&wp.h(work).ln() + &(&k * &k.ln()));
    if continued {
        // h = sigma^sigma e^{i pi sigma}, A0 = (2pi)^{-1/2} (kappa/sigma)^{nu+1} e^{-i pi (nu+1)}
        // relative to the 2Psi1 values sigma^sigma and (2pi)^{1/2}(kappa/sigma)^{nu+1}.
        let pi = ApReal::pi(work);
        let sigma = ApReal::from_rational(&-wp.params.a().clone(), work);
        let nu1 = ApReal::from_rational(&(wp.params.nu() + Rational::one()), work);
        ln_growth = &ln_growth + &ApComplex::new(ApReal::zero(work), &pi * &sigma);
        let ln2pi = pi.mul_i64(2).ln();
        ln_scale = &ln_scale - &ApComplex::new(ln2pi, &pi * &nu1);
    }
    RatioParams { kappa, theta_prime: wp.theta_prime.clone(), nu: wp.params.nu().clone(), ln_scale, ln_growth }
}

fn check_gate(residual: &ApReal, prec: Precision) -> Result<()> {
    let gate = ApReal::ten_pow(-(prec.digits() as i64) / 2, prec);
    if !residual.is_finite() || residual >= &gate {
        return Err(Error::IllConditioned { residual: residual.to_sci_string(6), gate: gate.to_sci_string(3) });
    }
    Ok(())
}

/// Sample-ladder options for [`solve_coeffs_with`].
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Multiplies every sample point; used to confirm that the fit does not
    /// depend on where the ratio is sampled.
    pub shift: Rational,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { shift: Rational::one() }
    }
}

/// Least-squares coefficients `c_0..c_{M-1}` (see module docs).
///
/// `a > 0` fits the `1Psi2` ratio on the positive real axis; `a = -sigma`
/// fits the `2Psi1` ratio `Gamma(1+s) Gamma(sigma s - nu - 1/2) / Gamma(s + 3/2)`.
pub fn solve_coeffs(p: &StruveParams, m: usize, prec: Precision) -> Result<CoeffTable> {
    solve_coeffs_with(p, m, prec, &SolveOptions::default())
}

pub fn solve_coeffs_with(p: &StruveParams, m: usize, prec: Precision, opt: &SolveOptions) -> Result<CoeffTable> {
    if m == 0 {
        return Err(Error::DegenerateParameter("M must be at least 1".into()));
    }
    let wp = derive_params(p)?;
    let lay = Layout::for_target(m, prec.digits());
    let rp = ratio_params(&wp, lay.work, false);
    let pts = sample_points(&lay, &wp.kappa, None, &opt.shift);
    let (c, residual) = match &wp.case {
        Case::PositiveA => fit(&lay, &wp.kappa, &wp.theta_prime, &pts, |s| linsolve::ratio_pos(&rp, p.a(), s))?,
        Case::NegativeA { sigma } => {
            fit(&lay, &wp.kappa, &wp.theta_prime, &pts, |s| linsolve::ratio_two_one(&rp, sigma, s))?
        }
    };
    finish(p, m, c, residual, prec, CoeffMethod::LinearSolve)
}

/// Least-squares `c_j(-sigma, nu)`: the `1Psi2` ratio continued to
/// `a = -sigma`, sampled on the ray `arg s = -pi/5` where it has no poles.
pub fn solve_coeffs_continued(sigma: &Rational, nu: &Rational, m: usize, prec: Precision) -> Result<CoeffTable> {
    if m == 0 {
        return Err(Error::DegenerateParameter("M must be at least 1".into()));
    }
    let p = StruveParams::new(-sigma.clone(), nu.clone())?;
    let wp = derive_params(&p)?;
    if !matches!(wp.case, Case::NegativeA { .. }) {
        return Err(Error::DegenerateParameter("sigma must lie in (0, 1)".into()));
    }
    let lay = Layout::for_target(m, prec.digits());
    let rp = ratio_params(&wp, lay.work, true);
    let ray = -Rational::new(BigInt::one(), BigInt::from(5));
    let pts = sample_points(&lay, &wp.kappa, Some(&ray), &Rational::one());
    let (c, residual) = fit(&lay, &wp.kappa, &wp.theta_prime, &pts, |s| linsolve::ratio_continued(&rp, sigma, s))?;
    finish(&p, m, c, residual, prec, CoeffMethod::LinearSolve)
}

fn finish(
    p: &StruveParams,
    m: usize,
    c: Vec<ApReal>,
    residual: ApReal,
    prec: Precision,
    method: CoeffMethod,
) -> Result<CoeffTable> {
    check_gate(&residual, prec)?;
    let mut c: Vec<ApReal> = c.into_iter().map(|x| x.with_prec(prec)).collect();
    // c_0 is 1 by construction; pin it exactly.
    c[0] = ApReal::one(prec);
    Ok(CoeffTable { params: p.clone(), m, c, method, residual: residual.with_prec(prec), precision: prec })
}

fn gamma_factors(p: &StruveParams, wp: &WrightParams) -> Vec<GammaFactor> {
    let three_half = q(3) * q_half();
    let mut f = vec![
        GammaFactor { sign: 1, alpha: wp.kappa.clone(), b: wp.theta_prime.clone() },
        GammaFactor { sign: -1, alpha: Rational::one(), b: three_half },
    ];
    match &wp.case {
        Case::PositiveA => f.push(GammaFactor { sign: -1, alpha: p.a().clone(), b: p.nu32() }),
        Case::NegativeA { sigma } => f.push(GammaFactor { sign: 1, alpha: sigma.clone(), b: -(p.nu() + q_half()) }),
    }
    f
}

/// Coefficients from the formal Stirling expansion. Same meaning as
/// [`solve_coeffs`] (`1Psi2` for `a > 0`, `2Psi1` for `a < 0`).
pub fn formal_series_coeffs(p: &StruveParams, m: usize, prec: Precision) -> Result<CoeffTable> {
    if m == 0 {
        return Err(Error::DegenerateParameter("M must be at least 1".into()));
    }
    let wp = derive_params(p)?;
    let c = formal_coeffs(&gamma_factors(p, &wp), &wp.kappa, &wp.theta_prime, m, prec);
    Ok(CoeffTable {
        params: p.clone(),
        m,
        c,
        method: CoeffMethod::FormalSeries,
        residual: ApReal::zero(prec),
        precision: prec,
    })
}

/// Outcome of comparing the two routes to the `a < 0` coefficients.
#[derive(Clone, Debug)]
pub struct AppendixReport {
    pub sigma: Rational,
    pub nu: Rational,
    pub m: usize,
    /// `d_j` from the `2Psi1` ratio.
    pub d: CoeffTable,
    /// `c_j(-sigma, nu)` from the continued `1Psi2` ratio.
    pub c: CoeffTable,
    pub max_discrepancy: ApReal,
}

/// Computes `d_j` and `c_j(-sigma, nu)` by two independent least-squares
/// solves and reports `max_j |d_j - c_j(-sigma, nu)|`.
pub fn verify_appendix_identity(sigma: &Rational, nu: &Rational, m: usize, prec: Precision) -> Result<AppendixReport> {
    if sigma <= &Rational::zero() || sigma >= &Rational::one() {
        return Err(Error::DegenerateParameter(format!("sigma = {sigma} must lie in (0, 1)")));
    }
    let p = StruveParams::new(-sigma.clone(), nu.clone())?;
    let d = solve_coeffs(&p, m, prec)?;
    let c = solve_coeffs_continued(sigma, nu, m, prec)?;
    let mut max = ApReal::zero(prec);
    for (x, y) in d.c.iter().zip(&c.c) {
        max = max.max(&(x - y).abs());
    }
    Ok(AppendixReport { sigma: sigma.clone(), nu: nu.clone(), m, d, c, max_discrepancy: max })
}

type CacheKey = (String, String, usize, u32);

/// Process-wide memo of coefficient tables keyed by `(a, nu, M, P)`.
#[derive(Default)]
pub struct CoeffCache {
    map: Mutex<HashMap<CacheKey, Arc<CoeffTable>>>,
}

impl CoeffCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Formal-series table for `(p, m, prec)`, computed once.
    pub fn formal(&self, p: &StruveParams, m: usize, prec: Precision) -> Result<Arc<CoeffTable>> {
        let key = (p.a().to_string(), p.nu().to_string(), m, prec.digits());
        if let Some(t) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(formal_series_coeffs(p, m, prec)?);
        self.map.lock().expect("cache lock").insert(key, t.clone());
        Ok(t)
    }

    pub fn insert(&self, t: CoeffTable) -> Arc<CoeffTable> {
        let key = (t.params.a().to_string(), t.params.nu().to_string(), t.m, t.precision.digits());
        let t = Arc::new(t);
        self.map.lock().expect("cache lock").insert(key, t.clone());
        t
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

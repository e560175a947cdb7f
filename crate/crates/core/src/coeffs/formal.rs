//! Coefficients from the formal large-`s` expansion of the gamma ratio.
//!
//! Each factor `Gamma(alpha s + b)^{±1}` contributes the Stirling tail
//! `sum_k (-1)^{k+1} B_{k+1}(b) / (k (k+1) (alpha s)^k)`; the leading
//! Stirling parts of all factors cancel against `kappa A0 (h kappa^kappa)^s`.
//! Exponentiating the tail gives `F` as a power series in `u = 1/s`, which
//! is then rewritten in the inverse factorial basis `1/(w)_j`.

use crate::ap::gamma::bernoulli_all;
use crate::ap::{ApReal, Precision, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// One gamma factor `Gamma(alpha s + b)^{sign}`.
#[derive(Clone, Debug)]
pub(crate) struct GammaFactor {
    pub sign: i32,
    pub alpha: Rational,
    pub b: Rational,
}

/// Coefficients `e_1..e_{K-1}` of the log of the ratio in powers of `u`.
/// Exact rational arithmetic is avoided because the powers of `b` grow
/// without bound when `nu` carries a long decimal denominator.
pub(crate) fn log_series(factors: &[GammaFactor], k_max: usize, work: Precision) -> Vec<ApReal> {
    let bern = bernoulli_all(k_max + 1);
    // beta_i = B_i / i!
    let mut fact = ApReal::one(work);
    let mut beta = Vec::with_capacity(k_max + 2);
    for (i, b) in bern.iter().enumerate() {
        if i > 0 {
            fact = fact.mul_i64(i as i64);
        }
        beta.push(&ApReal::from_rational(b, work) / &fact);
    }
    let mut e = vec![ApReal::zero(work); k_max];
    for f in factors {
        let b = ApReal::from_rational(&f.b, work);
        // gamma_k = b^k / k!
        let mut g = vec![ApReal::one(work)];
        for k in 1..=k_max + 1 {
            let next = (&g[k - 1] * &b).div_i64(k as i64);
            g.push(next);
        }
        let alpha = ApReal::from_rational(&f.alpha, work);
        let mut alpha_k = ApReal::one(work);
        // (k+1)! / (k (k+1)) = (k-1)!
        let mut fact_km1 = ApReal::one(work);
        for (k, ek) in e.iter_mut().enumerate().skip(1) {
            alpha_k = &alpha_k * &alpha;
            if k > 1 {
                fact_km1 = fact_km1.mul_i64(k as i64 - 1);
            }
            let n = k + 1;
            let mut conv = ApReal::zero(work);
            for i in (0..=n).filter(|&i| i < 2 || i % 2 == 0) {
                conv = &conv + &(&beta[i] * &g[n - i]);
            }
            let mut t = &(&conv * &fact_km1) / &alpha_k;
            if (k % 2 == 0) != (f.sign < 0) {
                t = t.neg();
            }
            *ek = &*ek + &t;
        }
    }
    e
}

/// `c_0..c_{M-1}` at precision `prec`.
pub(crate) fn formal_coeffs(
    factors: &[GammaFactor],
    kappa: &Rational,
    theta_prime: &Rational,
    m: usize,
    prec: Precision,
) -> Vec<ApReal> {
    // Converting between the two bases loses about M/2 digits.
    let work = prec.plus(m as u32 / 2 + 20);
    // B_n(b) loses about 2 pi |b| / ln 10 digits to cancellation.
    let spread: f64 = factors.iter().map(|f| f.b.abs().to_f64().unwrap_or(0.0)).fold(0.0f64, f64::max);
    let guard = (3.0 * spread).ceil() as u32 + 10;
    let e: Vec<ApReal> = log_series(factors, m, work.plus(guard)).into_iter().map(|x| x.with_prec(work)).collect();
    // f = exp(sum e_k u^k):  k f_k = sum_{j=1..k} j e_j f_{k-j}
    let mut f = vec![ApReal::zero(work); m];
    f[0] = ApReal::one(work);
    for k in 1..m {
        let mut acc = ApReal::zero(work);
        for j in 1..=k {
            acc = &acc + &(&e[j].mul_i64(j as i64) * &f[k - j]);
        }
        f[k] = acc.div_i64(k as i64);
    }
    // 1/(w)_{j+1} = 1/(w)_j * (u/kappa) / (1 + t_j u), t_j = (theta' + j)/kappa,
    // applied as a first-order recurrence on the coefficient vector.
    let kap = ApReal::from_rational(kappa, work);
    let inv_k = kap.recip();
    let mut basis = vec![ApReal::zero(work); m];
    basis[0] = ApReal::one(work);
    let mut rem = f;
    let mut c = Vec::with_capacity(m);
    let mut kap_j = ApReal::one(work);
    for j in 0..m {
        // basis_j has leading coefficient kappa^{-j} at u^j.
        let cj = &rem[j] * &kap_j;
        for (r, b) in rem.iter_mut().zip(&basis).skip(j) {
            *r = &*r - &(&cj * b);
        }
        c.push(cj.with_prec(prec));
        if j + 1 == m {
            break;
        }
        let t = ApReal::from_rational(&((theta_prime + Rational::from_integer(BigInt::from(j))) / kappa), work);
        let mut next = vec![ApReal::zero(work); m];
        for i in 1..m {
            next[i] = &(&basis[i - 1] * &inv_k) - &(&t * &next[i - 1]);
        }
        basis = next;
        kap_j = &kap_j * &kap;
    }
    c
}

//! Truncation of divergent asymptotic sums.

use crate::ap::{ApComplex, ApReal, Precision};
use crate::error::Error;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TruncMode {
    /// Keep terms `0..=j_max`.
    Fixed(usize),
    /// Stop at the smallest term of the scan.
    Optimal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub mode: TruncMode,
    /// Most terms any single sum may examine.
    pub cap: usize,
}

impl TruncationPolicy {
    pub const DEFAULT_CAP: usize = 2000;

    pub fn optimal() -> Self {
        TruncationPolicy { mode: TruncMode::Optimal, cap: Self::DEFAULT_CAP }
    }

    pub fn fixed(j_max: usize) -> Self {
        TruncationPolicy { mode: TruncMode::Fixed(j_max), cap: Self::DEFAULT_CAP.max(j_max + 2) }
    }

    /// Terms a coefficient table must hold to serve this policy without
    /// running dry, when that is known in advance.
    pub(crate) fn coeffs_needed(&self) -> Option<usize> {
        match self.mode {
            TruncMode::Fixed(j) => Some(j + 2),
            TruncMode::Optimal => None,
        }
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self::optimal()
    }
}

/// A term of an asymptotic sum and `log2` of its envelope. The envelope is
/// what the truncation rule compares; it ignores oscillating factors that
/// can make an individual term accidentally small.
pub(crate) struct Term {
    pub value: ApComplex,
    pub env_log2: f64,
    /// Every later term is exactly zero.
    pub last: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Truncated {
    pub sum: ApComplex,
    /// Number of terms kept.
    pub terms: usize,
    /// `log2` envelope of the first omitted term.
    pub err_log2: f64,
}

/// Why a scan ended without a result.
pub(crate) enum Shortfall {
    /// The term source ran out: a coefficient table too short.
    Exhausted,
    Failed(Error),
}

impl From<Error> for Shortfall {
    fn from(e: Error) -> Self {
        Shortfall::Failed(e)
    }
}

/// Sums terms from `next` under `policy`.
///
/// In optimal mode the scan tracks the smallest envelope and stops once the
/// envelope has risen twice in a row; the terms before the smallest are
/// kept and the smallest is reported as the error. A scan also stops early,
/// keeping everything, once a term falls below the working resolution.
/// Terms with a zero envelope (exact zeros) take no part in the comparisons.
pub(crate) fn truncate(
    label: &str,
    policy: &TruncationPolicy,
    prec: Precision,
    mut next: impl FnMut(usize) -> std::result::Result<Option<Term>, Shortfall>,
) -> std::result::Result<Truncated, Shortfall> {
    let negligible = prec.bits() as f64 + 10.0;
    let mut terms: Vec<ApComplex> = Vec::new();
    let mut envs: Vec<f64> = Vec::new();
    match policy.mode {
        TruncMode::Fixed(j_max) => {
            let mut sum = ApComplex::zero(prec);
            for j in 0..=j_max {
                let t = next(j)?.ok_or(Shortfall::Exhausted)?;
                sum = &sum + &t.value;
                envs.push(t.env_log2);
            }
            let err_log2 = match next(j_max + 1) {
                Ok(Some(t)) => t.env_log2,
                _ => envs[j_max],
            };
            Ok(Truncated { sum, terms: j_max + 1, err_log2 })
        }
        TruncMode::Optimal => {
            let mut best: Option<usize> = None;
            let mut finite: Vec<usize> = Vec::new();
            let mut running = ApComplex::zero(prec);
            for j in 0..policy.cap {
                let t = next(j)?.ok_or(Shortfall::Exhausted)?;
                running = &running + &t.value;
                terms.push(t.value);
                envs.push(t.env_log2);
                if t.last {
                    return Ok(Truncated { sum: running, terms: j + 1, err_log2: f64::NEG_INFINITY });
                }
                if !t.env_log2.is_finite() {
                    continue;
                }
                if best.is_none_or(|b| t.env_log2 < envs[b]) {
                    best = Some(j);
                }
                finite.push(j);
                if j > 0 && t.env_log2 < running.log2_abs() - negligible {
                    return Ok(Truncated { sum: running, terms: j + 1, err_log2: t.env_log2 });
                }
                if let [.., i0, i1, i2] = finite[..] {
                    if envs[i2] > envs[i1] && envs[i1] > envs[i0] {
                        let b = best.unwrap_or(0);
                        let mut sum = ApComplex::zero(prec);
                        for v in &terms[..b] {
                            sum = &sum + v;
                        }
                        return Ok(Truncated { sum, terms: b, err_log2: envs[b] });
                    }
                }
            }
            Err(Shortfall::Failed(Error::TruncationUnstable { label: label.to_string(), cap: policy.cap }))
        }
    }
}

/// `2^l` as an `ApReal`, zero for `l = -inf`.
pub(crate) fn exp2(l: f64, prec: Precision) -> ApReal {
    if !l.is_finite() {
        return ApReal::zero(prec);
    }
    ApReal::from_f64(l * std::f64::consts::LN_2, prec).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::new(30).unwrap()
    }

    /// Terms `j! / x^j` with `x = num/den`, smallest near `j = x`.
    fn factorial_series(num: i64, den: i64) -> impl FnMut(usize) -> std::result::Result<Option<Term>, Shortfall> {
        let mut t = ApReal::one(p());
        move |j| {
            if j > 0 {
                t = t.mul_i64(j as i64 * den).div_i64(num);
            }
            Ok(Some(Term { value: ApComplex::from_real(t.clone()), env_log2: t.log2_abs(), last: false }))
        }
    }

    fn run(policy: TruncationPolicy, num: i64, den: i64) -> Truncated {
        match truncate("t", &policy, p(), factorial_series(num, den)) {
            Ok(t) => t,
            Err(_) => panic!("truncation failed"),
        }
    }

    #[test]
    fn optimal_stops_before_the_smallest_term() {
        // x = 10.5: the terms fall until j = 10 and rise afterwards.
        let t = run(TruncationPolicy::optimal(), 21, 2);
        assert_eq!(t.terms, 10);
        let smallest = (1..=10).fold(1.0f64, |a, k| a * k as f64) / 10.5f64.powi(10);
        assert!((t.err_log2 - smallest.log2()).abs() < 1e-9);
        let kept: f64 = (0..10).map(|j| (1..=j).fold(1.0f64, |a, k| a * k as f64) / 10.5f64.powi(j)).sum();
        assert!((t.sum.re.to_f64() - kept).abs() < 1e-13);
    }

    #[test]
    fn fixed_keeps_j_max_plus_one_terms() {
        let t = run(TruncationPolicy::fixed(3), 10, 1);
        assert_eq!(t.terms, 4);
        let s = t.sum.re.to_f64();
        assert!((s - (1.0 + 0.1 + 0.02 + 0.006)).abs() < 1e-15);
        assert!((t.err_log2 - 0.0024f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn convergent_input_stops_when_negligible() {
        let mut t = ApReal::one(p());
        let r = truncate("c", &TruncationPolicy::optimal(), p(), move |j| {
            if j > 0 {
                t = t.div_i64(1000);
            }
            Ok(Some(Term { value: ApComplex::from_real(t.clone()), env_log2: t.log2_abs(), last: false }))
        });
        let r = r.ok().expect("converges");
        assert!(r.terms > 10 && r.terms < 20);
    }

    #[test]
    fn cap_without_minimum_is_unstable() {
        let policy = TruncationPolicy { mode: TruncMode::Optimal, cap: 5 };
        let mut t = ApReal::one(p());
        let r = truncate("u", &policy, p(), move |j| {
            if j > 0 {
                t = t.div_i64(2);
            }
            Ok(Some(Term { value: ApComplex::from_real(t.clone()), env_log2: t.log2_abs(), last: false }))
        });
        assert!(matches!(r, Err(Shortfall::Failed(Error::TruncationUnstable { cap: 5, .. }))));
    }
}

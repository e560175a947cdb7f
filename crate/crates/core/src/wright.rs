//! Parameters of the Wright function attached to `L_nu(z; a)`.
//!
//! For `a > 0` the series is a `1Psi2` function of `zeta = z^2/4`; for
//! `a = -sigma` with `0 < sigma < 1` it is (after a reflection of the
//! second gamma function) a `2Psi1` function. Both share the same exponent
//! `theta = -nu - 3/2`; they differ in `kappa`, `h` and the amplitude `A0`.

use crate::ap::rational::{q_half, q_int};
use crate::ap::{parse_rational, q_to_f64, ApReal, Precision, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The pair `(a, nu)`, stored exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StruveParams {
    a: Rational,
    nu: Rational,
}

/// Which Wright function governs the large-`|z|` behaviour.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    PositiveA,
    NegativeA { sigma: Rational },
}

impl StruveParams {
    /// Accepts any `a > -1`, the range where the defining series converges.
    /// `a = 0` is accepted here (the series is fine) but has no asymptotic
    /// description, see [`StruveParams::case`].
    pub fn new(a: Rational, nu: Rational) -> Result<Self> {
        if a <= -Rational::one() {
            return Err(Error::DegenerateParameter(format!("a = {a} must exceed -1")));
        }
        Ok(StruveParams { a, nu })
    }

    pub fn parse(a: &str, nu: &str) -> Result<Self> {
        Self::new(parse_rational(a)?, parse_rational(nu)?)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn a_f64(&self) -> f64 {
        q_to_f64(&self.a)
    }

    pub fn nu_f64(&self) -> f64 {
        q_to_f64(&self.nu)
    }

    pub fn case(&self) -> Result<Case> {
        if self.a.is_zero() {
            Err(Error::DegenerateParameter("a = 0 has no associated Wright expansion".into()))
        } else if self.a.is_positive() {
            Ok(Case::PositiveA)
        } else {
            Ok(Case::NegativeA { sigma: -self.a.clone() })
        }
    }

    /// `nu + 3/2`, the offset of the second gamma argument.
    pub(crate) fn nu32(&self) -> Rational {
        &self.nu + q_int(3) * q_half()
    }
}

impl fmt::Display for StruveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = {}, nu = {}", self.a, self.nu)
    }
}

/// Serializable view of a parameter pair (exact rationals as strings).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub a: String,
    pub nu: String,
}

impl From<&StruveParams> for ParamsRecord {
    fn from(p: &StruveParams) -> Self {
        ParamsRecord { a: p.a.to_string(), nu: p.nu.to_string() }
    }
}

/// `kappa`, `h`, `theta`, `theta'`, `A0` of the associated Wright function.
/// The rational ones are exact; `h` and `A0` are produced on demand at the
/// requested precision.
#[derive(Clone, Debug, PartialEq)]
pub struct WrightParams {
    pub params: StruveParams,
    pub case: Case,
    pub kappa: Rational,
    pub theta: Rational,
    pub theta_prime: Rational,
}

impl WrightParams {
    pub fn kappa_f64(&self) -> f64 {
        q_to_f64(&self.kappa)
    }

    pub fn theta_f64(&self) -> f64 {
        q_to_f64(&self.theta)
    }

    /// `a^-a` for `a > 0`, `sigma^sigma` for `a = -sigma`. Both are `|a|^{-a}`.
    pub fn h(&self, prec: Precision) -> ApReal {
        let a = ApReal::from_rational(&self.params.a, prec);
        a.abs().pow(&a.neg())
    }

    /// `A0 = (2 pi)^{-1/2} (kappa/a)^{nu+1}` for `a > 0` and
    /// `A0 = (2 pi)^{1/2} (kappa/sigma)^{nu+1}` for `a = -sigma`.
    pub fn a0(&self, prec: Precision) -> ApReal {
        let work = prec.plus(5);
        let two_pi = ApReal::pi(work).mul_i64(2);
        let ratio = ApReal::from_rational(&(&self.kappa / self.params.a.abs()), work);
        let e = ApReal::from_rational(&(&self.params.nu + Rational::one()), work);
        let amp = ratio.pow(&e);
        let r = match self.case {
            Case::PositiveA => &amp / &two_pi.sqrt(),
            Case::NegativeA { .. } => &amp * &two_pi.sqrt(),
        };
        r.with_prec(prec)
    }

    /// `X = kappa (h x)^{1/kappa}` for a positive real `x`.
    pub fn big_x(&self, x: &ApReal) -> ApReal {
        let prec = x.prec();
        let inv = ApReal::from_rational(&(Rational::one() / &self.kappa), prec);
        let k = ApReal::from_rational(&self.kappa, prec);
        &k * &(&self.h(prec) * x).pow(&inv)
    }
}

/// Derives the Wright-function parameters for `(a, nu)`.
pub fn derive_params(p: &StruveParams) -> Result<WrightParams> {
    let case = p.case()?;
    let one = Rational::one();
    let kappa = match &case {
        Case::PositiveA => &one + &p.a,
        Case::NegativeA { sigma } => &one - sigma,
    };
    let theta = -p.nu32();
    let theta_prime = &one - &theta;
    Ok(WrightParams { params: p.clone(), case, kappa, theta, theta_prime })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr() -> Precision {
        Precision::new(40).unwrap()
    }

    fn close(a: &ApReal, b: f64) -> bool {
        (a.to_f64() - b).abs() <= 1e-14 * b.abs().max(1.0)
    }

    #[test]
    fn half_quarter() {
        let wp = derive_params(&StruveParams::parse("1/2", "1/4").unwrap()).unwrap();
        assert_eq!(wp.kappa, parse_rational("3/2").unwrap());
        assert_eq!(wp.theta, parse_rational("-7/4").unwrap());
        assert_eq!(wp.theta_prime, parse_rational("11/4").unwrap());
        assert!(close(&wp.h(pr()), std::f64::consts::SQRT_2));
        let want = 3f64.powf(1.25) / (2.0 * std::f64::consts::PI).sqrt();
        assert!(close(&wp.a0(pr()), want));
    }

    #[test]
    fn classical_and_symmetric_cases() {
        let wp = derive_params(&StruveParams::parse("1", "0.3").unwrap()).unwrap();
        assert_eq!(wp.kappa, q_int(2));
        assert!(close(&wp.h(pr()), 1.0));
        let wp = derive_params(&StruveParams::parse("-1/2", "1/3").unwrap()).unwrap();
        assert_eq!(wp.kappa, q_half());
        assert!(close(&wp.h(pr()), 0.5f64.sqrt()));
        assert!(close(&wp.a0(pr()), (2.0 * std::f64::consts::PI).sqrt()));
        assert!(matches!(wp.case, Case::NegativeA { .. }));
    }

    #[test]
    fn rejects_degenerate() {
        assert!(StruveParams::parse("-1", "0").is_err());
        assert!(StruveParams::parse("-1.5", "0").is_err());
        let p0 = StruveParams::parse("0", "0").unwrap();
        assert!(matches!(derive_params(&p0), Err(Error::DegenerateParameter(_))));
    }
}

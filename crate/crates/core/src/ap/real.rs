use super::{with_consts, Precision, RM};
use crate::error::{Error, Result};
use astro_float::{BigFloat, Radix, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision real number tagged with the decimal precision it
/// was computed at.
#[derive(Clone, Debug)]
pub struct ApReal {
    v: BigFloat,
    prec: Precision,
}

impl ApReal {
    pub fn raw(&self) -> &BigFloat {
        &self.v
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    /// Rounds (or widens) the value to a new precision.
    pub fn with_prec(&self, prec: Precision) -> Self {
        let mut v = self.v.clone();
        // Widening never fails; narrowing rounds to nearest.
        let _ = v.set_precision(prec.bits(), RM);
        ApReal { v, prec }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(i: i64, prec: Precision) -> Self {
        ApReal { v: BigFloat::from_i64(i, prec.bits()), prec }
    }

    pub fn from_f64(f: f64, prec: Precision) -> Self {
        ApReal { v: BigFloat::from_f64(f, prec.bits()), prec }
    }

    pub fn from_bigint(i: &BigInt, prec: Precision) -> Self {
        // Decimal parsing is exact for integers once the mantissa is wide
        // enough, so widen temporarily for huge integers.
        let s = i.to_string();
        let need = ((s.len() as f64) * std::f64::consts::LOG2_10) as usize + 64;
        let bits = need.max(prec.bits());
        let v = with_consts(|cc| BigFloat::parse(&s, Radix::Dec, bits, RM, cc));
        ApReal { v, prec }.with_prec(prec)
    }

    pub fn from_rational(q: &BigRational, prec: Precision) -> Self {
        let n = Self::from_bigint(q.numer(), prec);
        let d = Self::from_bigint(q.denom(), prec);
        &n / &d
    }

    /// Parses a decimal literal (`1.25`, `-3e-7`) or a ratio `p/q`.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let q = super::parse_rational(s)?;
        Ok(Self::from_rational(&q, prec))
    }

    pub fn pi(prec: Precision) -> Self {
        let v = with_consts(|cc| cc.pi(prec.bits(), RM));
        ApReal { v, prec }
    }

    /// `10^e` for any integer exponent.
    pub fn ten_pow(e: i64, prec: Precision) -> Self {
        let ten = Self::from_i64(10, prec);
        let p = ten.powi(e.unsigned_abs());
        if e < 0 {
            p.recip()
        } else {
            p
        }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn is_int(&self) -> bool {
        self.v.is_int()
    }

    pub fn neg(&self) -> Self {
        ApReal { v: BigFloat::neg(&self.v), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        ApReal { v: self.v.abs(), prec: self.prec }
    }

    pub fn recip(&self) -> Self {
        ApReal { v: self.v.reciprocal(self.prec.bits(), RM), prec: self.prec }
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn sqrt(&self) -> Self {
        ApReal { v: self.v.sqrt(self.prec.bits(), RM), prec: self.prec }
    }

    pub fn exp(&self) -> Self {
        let v = with_consts(|cc| self.v.exp(self.prec.bits(), RM, cc));
        ApReal { v, prec: self.prec }
    }

    pub fn ln(&self) -> Self {
        let v = with_consts(|cc| self.v.ln(self.prec.bits(), RM, cc));
        ApReal { v, prec: self.prec }
    }

    pub fn sin(&self) -> Self {
        let v = with_consts(|cc| self.v.sin(self.prec.bits(), RM, cc));
        ApReal { v, prec: self.prec }
    }

    pub fn cos(&self) -> Self {
        let v = with_consts(|cc| self.v.cos(self.prec.bits(), RM, cc));
        ApReal { v, prec: self.prec }
    }

    pub fn sinh(&self) -> Self {
        let v = with_consts(|cc| self.v.sinh(self.prec.bits(), RM, cc));
        ApReal { v, prec: self.prec }
    }

    pub fn cosh(&self) -> Self {
        let v = with_consts(|cc| self.v.cosh(self.prec.bits(), RM, cc));
        ApReal { v, prec: self.prec }
    }

    pub fn atan(&self) -> Self {
        let v = with_consts(|cc| self.v.atan(self.prec.bits(), RM, cc));
        ApReal { v, prec: self.prec }
    }

    /// Angle of the point `(x, y)` in `(-pi, pi]`.
    pub fn atan2(y: &ApReal, x: &ApReal) -> Self {
        let prec = y.prec.max(x.prec);
        if x.is_zero() {
            let half_pi = &Self::pi(prec) / &Self::from_i64(2, prec);
            return if y.is_negative() {
                half_pi.neg()
            } else if y.is_zero() {
                Self::zero(prec)
            } else {
                half_pi
            };
        }
        let base = (y / x).atan();
        if x.is_positive() {
            base
        } else if y.is_negative() {
            &base - &Self::pi(prec)
        } else {
            &base + &Self::pi(prec)
        }
    }

    /// `self^e` for `self > 0` (or any sign when `e` is an integer).
    ///
    /// Computed as `exp(e ln self)` with guard digits; astro-float's own
    /// `pow` can fail to terminate when the exact result is representable.
    pub fn pow(&self, e: &ApReal) -> Self {
        let prec = self.prec.max(e.prec);
        if e.is_int() && e.log2_abs() < 62.0 {
            return self.with_prec(prec).powi_signed(e.to_f64() as i64);
        }
        if self.is_zero() {
            return Self::zero(prec);
        }
        let l = self.with_prec(prec).ln();
        let guard = ((&l * e).log10_abs().max(0.0).ceil() as u32) + 5;
        let work = prec.plus(guard);
        let y = &self.with_prec(work).ln() * &e.with_prec(work);
        y.exp().with_prec(prec)
    }

    pub fn powi(&self, n: u64) -> Self {
        ApReal { v: self.v.powi(n as usize, self.prec.bits(), RM), prec: self.prec }
    }

    pub fn powi_signed(&self, n: i64) -> Self {
        let p = self.powi(n.unsigned_abs());
        if n < 0 {
            p.recip()
        } else {
            p
        }
    }

    pub fn floor(&self) -> Self {
        ApReal { v: self.v.floor(), prec: self.prec }
    }

    /// Nearest integer, ties away from zero.
    pub fn round_int(&self) -> Self {
        let half = Self::from_f64(0.5, self.prec);
        if self.is_negative() {
            (&self.abs() + &half).floor().neg()
        } else {
            (self + &half).floor()
        }
    }

    pub fn max(&self, other: &ApReal) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &ApReal) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Self::from_i64(k, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self / &Self::from_i64(k, self.prec)
    }

    /// `log2 |self|` as a double; `-inf` for zero. Valid far outside the
    /// `f64` exponent range.
    pub fn log2_abs(&self) -> f64 {
        match self.v.as_raw_parts() {
            Some((words, _, _, exp, _)) if !self.v.is_zero() => {
                let n = words.len();
                let top = words[n - 1] as f64;
                let next = if n > 1 { words[n - 2] as f64 } else { 0.0 };
                let frac = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
                exp as f64 + frac.log2()
            }
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() / std::f64::consts::LOG2_10
    }

    /// Nearest double, saturating to `±inf` / `0`.
    pub fn to_f64(&self) -> f64 {
        let l = self.log2_abs();
        if l == f64::NEG_INFINITY || l < -1080.0 {
            return 0.0;
        }
        let sign = if self.is_negative() { -1.0 } else { 1.0 };
        if l > 1030.0 {
            return sign * f64::INFINITY;
        }
        if let Some((words, _, _, exp, _)) = self.v.as_raw_parts() {
            let n = words.len();
            let top = words[n - 1] as f64;
            let next = if n > 1 { words[n - 2] as f64 } else { 0.0 };
            let frac = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
            // Split the scaling so neither factor overflows on its own.
            let e = exp;
            let half = e / 2;
            sign * frac * 2f64.powi(half) * 2f64.powi(e - half)
        } else {
            f64::NAN
        }
    }

    /// Scientific notation with `digits` significant digits, e.g.
    /// `-4.572292174e-6`. Rounds half away from zero on the decimal digits.
    pub fn to_sci_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.v.is_nan() {
            return "NaN".into();
        }
        if self.v.is_inf() {
            return if self.v.is_negative() { "-inf".into() } else { "inf".into() };
        }
        if self.is_zero() {
            return format!("0.{}e+0", "0".repeat(digits - 1)).replace(".e", "e");
        }
        let s = with_consts(|cc| self.v.format(Radix::Dec, RM, cc)).unwrap_or_default();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.as_str()),
        };
        let (mant, exp) = match body.split_once('e') {
            Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
            None => (body, 0),
        };
        let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
        let mut all: Vec<u8> = ip.bytes().chain(fp.bytes()).map(|b| b - b'0').collect();
        // Leading zeros can only appear in an unnormalized mantissa.
        let mut exp10 = exp + ip.len() as i64 - 1;
        while all.len() > 1 && all[0] == 0 {
            all.remove(0);
            exp10 -= 1;
        }
        let round_up = all.len() > digits && all[digits] >= 5;
        all.resize(digits, 0);
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    all.insert(0, 1);
                    all.pop();
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if all[i] == 9 {
                    all[i] = 0;
                } else {
                    all[i] += 1;
                    break;
                }
            }
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push((b'0' + all[0]) as char);
        if digits > 1 {
            out.push('.');
            out.extend(all[1..].iter().map(|d| (b'0' + d) as char));
        }
        out.push('e');
        if exp10 >= 0 {
            out.push('+');
        }
        out.push_str(&exp10.to_string());
        out
    }

    /// Parses the output of [`ApReal::to_sci_string`] back.
    pub fn from_decimal_str(s: &str, prec: Precision) -> Result<Self> {
        let v = with_consts(|cc| BigFloat::parse(s.trim(), Radix::Dec, prec.bits(), RM, cc));
        if v.is_nan() {
            return Err(Error::Parse(s.to_string()));
        }
        Ok(ApReal { v, prec })
    }

    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.v.sign() == Some(Sign::Neg) {
            -1
        } else {
            1
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<'a, 'b> $tr<&'b ApReal> for &'a ApReal {
            type Output = ApReal;
            fn $m(self, rhs: &'b ApReal) -> ApReal {
                let prec = self.prec.max(rhs.prec);
                ApReal { v: self.v.$f(&rhs.v, prec.bits(), RM), prec }
            }
        }
        impl $tr<ApReal> for ApReal {
            type Output = ApReal;
            fn $m(self, rhs: ApReal) -> ApReal {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b ApReal> for ApReal {
            type Output = ApReal;
            fn $m(self, rhs: &'b ApReal) -> ApReal {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ApReal> for &'a ApReal {
            type Output = ApReal;
            fn $m(self, rhs: ApReal) -> ApReal {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &ApReal {
    type Output = ApReal;
    fn neg(self) -> ApReal {
        ApReal::neg(self)
    }
}

impl PartialEq for ApReal {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for ApReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for ApReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(self.prec.digits() as usize);
        f.write_str(&self.to_sci_string(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::new(40).unwrap()
    }

    #[test]
    fn arithmetic_and_formatting() {
        let a = ApReal::parse("1/3", p()).unwrap();
        assert_eq!(a.to_sci_string(5), "3.3333e-1");
        let b = &a * &ApReal::from_i64(3, p());
        assert!((&b - &ApReal::one(p())).abs() < p().epsilon());
        assert_eq!(ApReal::from_f64(-0.000999996, p()).to_sci_string(4), "-1.000e-3");
        assert_eq!(ApReal::from_i64(99999, p()).to_sci_string(3), "1.00e+5");
        assert_eq!(ApReal::zero(p()).to_sci_string(3), "0.00e+0");
    }

    #[test]
    fn transcendental_identities() {
        let x = ApReal::parse("0.7", p()).unwrap();
        let one = &x.sin().sqr() + &x.cos().sqr();
        assert!((&one - &ApReal::one(p())).abs() < p().epsilon().mul_i64(10));
        let back = x.exp().ln();
        assert!((&back - &x).abs() < p().epsilon().mul_i64(10));
        let th = ApReal::atan2(&ApReal::from_i64(-1, p()), &ApReal::from_i64(-1, p()));
        let want = (ApReal::pi(p()).mul_i64(3).div_i64(4)).neg();
        assert!((&th - &want).abs() < p().epsilon().mul_i64(10));
    }

    #[test]
    fn magnitudes_outside_double_range() {
        let big = ApReal::ten_pow(5000, p());
        assert!((big.log10_abs() - 5000.0).abs() < 1e-9);
        assert_eq!(big.to_f64(), f64::INFINITY);
        assert!((ApReal::from_f64(0.1, p()).to_f64() - 0.1).abs() < 1e-17);
        assert_eq!(ApReal::ten_pow(-5000, p()).to_f64(), 0.0);
    }

    #[test]
    fn rounding_to_integers() {
        assert_eq!(ApReal::from_f64(-2.5, p()).round_int().to_f64(), -3.0);
        assert_eq!(ApReal::from_f64(2.49, p()).round_int().to_f64(), 2.0);
        assert_eq!(ApReal::from_f64(-2.1, p()).floor().to_f64(), -3.0);
    }
}

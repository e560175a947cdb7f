use super::{ApReal, Precision};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arbitrary-precision complex number in rectangular form.
#[derive(Clone, Debug, PartialEq)]
pub struct ApComplex {
    pub re: ApReal,
    pub im: ApReal,
}

impl ApComplex {
    pub fn new(re: ApReal, im: ApReal) -> Self {
        ApComplex { re, im }
    }

    pub fn from_real(re: ApReal) -> Self {
        let im = ApReal::zero(re.prec());
        ApComplex { re, im }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_real(ApReal::zero(prec))
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_real(ApReal::one(prec))
    }

    pub fn i(prec: Precision) -> Self {
        ApComplex { re: ApReal::zero(prec), im: ApReal::one(prec) }
    }

    pub fn from_polar(r: &ApReal, theta: &ApReal) -> Self {
        ApComplex { re: r * &theta.cos(), im: r * &theta.sin() }
    }

    /// `e^{i theta}`.
    pub fn cis(theta: &ApReal) -> Self {
        ApComplex { re: theta.cos(), im: theta.sin() }
    }

    pub fn prec(&self) -> Precision {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: Precision) -> Self {
        ApComplex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ApComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> ApReal {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> ApReal {
        if self.im.is_zero() {
            return self.re.abs();
        }
        if self.re.is_zero() {
            return self.im.abs();
        }
        self.norm_sqr().sqrt()
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> ApReal {
        ApReal::atan2(&self.im, &self.re)
    }

    pub fn scale(&self, k: &ApReal) -> Self {
        ApComplex { re: &self.re * k, im: &self.im * k }
    }

    pub fn mul_i(&self) -> Self {
        ApComplex { re: self.im.neg(), im: self.re.clone() }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        ApComplex { re: &self.re / &d, im: (&self.im / &d).neg() }
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        ApComplex { re: &m * &self.im.cos(), im: &m * &self.im.sin() }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Self {
        let m = if self.im.is_zero() { self.re.abs().ln() } else { self.norm_sqr().ln().div_i64(2) };
        ApComplex { re: m, im: self.arg() }
    }

    /// Principal power `self^e` for real `e`; `0^e = 0` for `e > 0`.
    pub fn powr(&self, e: &ApReal) -> Self {
        if self.is_zero() {
            return Self::zero(self.prec());
        }
        let r = self.abs().pow(e);
        let th = &self.arg() * e;
        Self::from_polar(&r, &th)
    }

    /// Principal power with complex exponent.
    pub fn powc(&self, e: &ApComplex) -> Self {
        if self.is_zero() {
            return Self::zero(self.prec());
        }
        (&self.ln() * e).exp()
    }

    pub fn powi(&self, n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn sin(&self) -> Self {
        ApComplex { re: &self.re.sin() * &self.im.cosh(), im: &self.re.cos() * &self.im.sinh() }
    }

    pub fn cos(&self) -> Self {
        ApComplex { re: &self.re.cos() * &self.im.cosh(), im: (&self.re.sin() * &self.im.sinh()).neg() }
    }

    /// `log2 |self|` as a double, robust to huge or tiny magnitudes.
    pub fn log2_abs(&self) -> f64 {
        let a = self.re.log2_abs();
        let b = self.im.log2_abs();
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        if hi == f64::NEG_INFINITY {
            return hi;
        }
        hi + 0.5 * (1.0 + 2f64.powf(2.0 * (lo - hi))).log2()
    }

    pub fn log10_abs(&self) -> f64 {
        self.log2_abs() / std::f64::consts::LOG2_10
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

macro_rules! forward {
    ($tr:ident, $m:ident) => {
        impl $tr<ApComplex> for ApComplex {
            type Output = ApComplex;
            fn $m(self, rhs: ApComplex) -> ApComplex {
                (&self).$m(&rhs)
            }
        }
        impl<'b> $tr<&'b ApComplex> for ApComplex {
            type Output = ApComplex;
            fn $m(self, rhs: &'b ApComplex) -> ApComplex {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ApComplex> for &'a ApComplex {
            type Output = ApComplex;
            fn $m(self, rhs: ApComplex) -> ApComplex {
                self.$m(&rhs)
            }
        }
    };
}

impl<'b> Add<&'b ApComplex> for &ApComplex {
    type Output = ApComplex;
    fn add(self, rhs: &'b ApComplex) -> ApComplex {
        ApComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'b> Sub<&'b ApComplex> for &ApComplex {
    type Output = ApComplex;
    fn sub(self, rhs: &'b ApComplex) -> ApComplex {
        ApComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'b> Mul<&'b ApComplex> for &ApComplex {
    type Output = ApComplex;
    fn mul(self, rhs: &'b ApComplex) -> ApComplex {
        if rhs.im.is_zero() {
            return self.scale(&rhs.re);
        }
        if self.im.is_zero() {
            return rhs.scale(&self.re);
        }
        ApComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'b> Div<&'b ApComplex> for &ApComplex {
    type Output = ApComplex;
    fn div(self, rhs: &'b ApComplex) -> ApComplex {
        if rhs.im.is_zero() {
            return ApComplex { re: &self.re / &rhs.re, im: &self.im / &rhs.re };
        }
        self * &rhs.recip()
    }
}

forward!(Add, add);
forward!(Sub, sub);
forward!(Mul, mul);
forward!(Div, div);

impl Neg for &ApComplex {
    type Output = ApComplex;
    fn neg(self) -> ApComplex {
        ApComplex { re: self.re.neg(), im: self.im.neg() }
    }
}

impl Neg for ApComplex {
    type Output = ApComplex;
    fn neg(self) -> ApComplex {
        -&self
    }
}

impl fmt::Display for ApComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = f.precision().unwrap_or(self.prec().digits() as usize);
        if self.im.is_zero() {
            return f.write_str(&self.re.to_sci_string(d));
        }
        let im = self.im.to_sci_string(d);
        let sep = if im.starts_with('-') { "" } else { "+" };
        write!(f, "{}{}{}i", self.re.to_sci_string(d), sep, im)
    }
}

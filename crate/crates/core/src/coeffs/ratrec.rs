//! Rational reconstruction by continued fractions.

use crate::ap::{ApReal, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Returns the first continued-fraction convergent `p/q` of `x` with
/// `|x - p/q| <= 10^{-tol_digits} max(1, |x|)` and `q <= max_den`, if any.
pub fn rational_reconstruct(x: &ApReal, tol_digits: u32, max_den: &BigInt) -> Option<Rational> {
    let prec = x.prec();
    let tol = &ApReal::ten_pow(-(tol_digits as i64), prec) * &x.abs().max(&ApReal::one(prec));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    for _ in 0..400 {
        let a_real = rest.floor();
        let a = to_bigint(&a_real)?;
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if &k2 > max_den {
            return None;
        }
        let cand = Rational::new(h2.clone(), k2.clone());
        if (x - &ApReal::from_rational(&cand, prec)).abs() <= tol {
            return Some(cand);
        }
        let frac = &rest - &a_real;
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip();
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    None
}

/// Exact integer value of an integral `ApReal` via its decimal expansion.
fn to_bigint(v: &ApReal) -> Option<BigInt> {
    let digits = (v.log10_abs().max(0.0) as usize) + 2;
    let s = v.to_sci_string(digits + 2);
    let (mant, exp) = s.split_once('e')?;
    let exp: i64 = exp.parse().ok()?;
    let neg = mant.starts_with('-');
    let body: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    // body = d0 d1 d2 ... with value d0.d1d2... * 10^exp
    let keep = (exp + 1).max(0) as usize;
    let int_part: String = if keep == 0 {
        "0".into()
    } else if keep <= body.len() {
        body[..keep].to_string()
    } else {
        format!("{}{}", body, "0".repeat(keep - body.len()))
    };
    let n: BigInt = int_part.parse().ok()?;
    Some(if neg { -n } else { n })
}

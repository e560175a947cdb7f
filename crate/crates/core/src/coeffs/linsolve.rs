//! Coefficients by least-squares matching of the inverse factorial expansion.
//!
//! With `w = kappa s + theta'` the normalized ratio
//! `F(s) = Gamma(w) g(s) / (Gamma(1+s) kappa A0 (h kappa^kappa)^s)`
//! behaves like `sum_j c_j / (w)_j` for large `s`. Sampling `F` on a
//! geometric ladder of large `s` and fitting the first `M + E` terms by
//! Householder QR recovers `c_0 .. c_{M-1}`; the `E` extra columns soak up
//! the truncation error of the expansion.

use crate::ap::{ln_gamma, ln_gamma_real, ln_sin_pi, ApComplex, ApReal, Precision, Rational};
use crate::error::Result;
use num_bigint::BigInt;

/// Sampling geometry for one solve.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub m: usize,
    pub extra: usize,
    /// `log10` of the scale `W`: samples start at `s = W / kappa`.
    pub log10_w: u32,
    pub samples: usize,
    pub work: Precision,
}

impl Layout {
    /// Chooses the basis size, scale and working precision so that the
    /// neglected terms `O(s^{-(M+E)})` sit below `10^{-(digits+20)}`.
    pub fn for_target(m: usize, digits: u32) -> Self {
        let extra = m + 4;
        let n = (m + extra) as u32;
        let log10_w = ((digits + 20) / (extra as u32 + 1) + 1).max(3);
        let work = digits + 20 + n * log10_w + (n * n).div_ceil(10);
        Layout { m, extra, log10_w, samples: m + extra + 6, work: Precision::raw(work) }
    }

    pub fn unknowns(&self) -> usize {
        self.m + self.extra
    }
}

/// Ratio of the sample spacing.
fn ladder_ratio() -> Rational {
    Rational::new(BigInt::from(8), BigInt::from(5))
}

/// Sample points `s_k = (W/kappa) r^k e^{i phase}` (phase in units of pi).
pub(crate) fn sample_points(
    lay: &Layout,
    kappa: &Rational,
    phase_over_pi: Option<&Rational>,
    shift: &Rational,
) -> Vec<ApComplex> {
    let w = lay.work;
    let base = ApReal::ten_pow(lay.log10_w as i64, w) / ApReal::from_rational(kappa, w);
    let base = &base * &ApReal::from_rational(shift, w);
    let r = ApReal::from_rational(&ladder_ratio(), w);
    let rot = phase_over_pi.map(|t| ApComplex::cis(&(&ApReal::pi(w) * &ApReal::from_rational(t, w))));
    let mut out = Vec::with_capacity(lay.samples);
    let mut s = base;
    for _ in 0..lay.samples {
        out.push(match &rot {
            Some(c) => c.scale(&s),
            None => ApComplex::from_real(s.clone()),
        });
        s = &s * &r;
    }
    out
}

/// Dense real matrix stored row-major.
pub(crate) struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<ApReal>,
}

impl Matrix {
    fn at(&self, i: usize, j: usize) -> &ApReal {
        &self.a[i * self.cols + j]
    }
}

/// Least-squares solution of `A x = y` by Householder QR. Returns `x` and
/// the residual norm `||A x - y||`.
pub(crate) fn householder_lstsq(mut m: Matrix, mut y: Vec<ApReal>) -> (Vec<ApReal>, ApReal) {
    let (rows, cols) = (m.rows, m.cols);
    assert!(rows >= cols && y.len() == rows);
    let prec = y[0].prec();
    for j in 0..cols {
        let mut norm2 = ApReal::zero(prec);
        for i in j..rows {
            norm2 = &norm2 + &m.at(i, j).sqr();
        }
        if norm2.is_zero() {
            continue;
        }
        let norm = norm2.sqrt();
        let ajj = m.at(j, j).clone();
        // alpha = -sign(a_jj) ||col||, v = col - alpha e_j
        let alpha = if ajj.is_negative() { norm.clone() } else { norm.neg() };
        let mut v: Vec<ApReal> = (j..rows).map(|i| m.at(i, j).clone()).collect();
        v[0] = &v[0] - &alpha;
        let vnorm2 = &(&norm2 - &ajj.sqr()) + &v[0].sqr();
        if vnorm2.is_zero() {
            continue;
        }
        let two_over = ApReal::from_i64(2, prec) / vnorm2;
        for k in j..cols {
            let mut dot = ApReal::zero(prec);
            for (t, vi) in v.iter().enumerate() {
                dot = &dot + &(vi * m.at(j + t, k));
            }
            let f = &dot * &two_over;
            for (t, vi) in v.iter().enumerate() {
                let idx = (j + t) * cols + k;
                m.a[idx] = &m.a[idx] - &(vi * &f);
            }
        }
        let mut dot = ApReal::zero(prec);
        for (t, vi) in v.iter().enumerate() {
            dot = &dot + &(vi * &y[j + t]);
        }
        let f = &dot * &two_over;
        for (t, vi) in v.iter().enumerate() {
            y[j + t] = &y[j + t] - &(vi * &f);
        }
    }
    let mut x = vec![ApReal::zero(prec); cols];
    for j in (0..cols).rev() {
        let mut acc = y[j].clone();
        for (k, xk) in x.iter().enumerate().skip(j + 1) {
            acc = &acc - &(m.at(j, k) * xk);
        }
        x[j] = &acc / m.at(j, j);
    }
    let mut res2 = ApReal::zero(prec);
    for yi in &y[cols..] {
        res2 = &res2 + &yi.sqr();
    }
    (x, res2.sqrt())
}

/// Fits `F(s_k) = sum_j c_j / (w_k)_j` and returns `(c_0..c_{M-1}, residual)`.
///
/// Columns are scaled by `W^j` so that every column has entries of order one.
pub(crate) fn fit(
    lay: &Layout,
    kappa: &Rational,
    theta_prime: &Rational,
    points: &[ApComplex],
    f: impl Fn(&ApComplex) -> Result<ApComplex>,
) -> Result<(Vec<ApReal>, ApReal)> {
    let wp = lay.work;
    let n = lay.unknowns();
    let k = ApReal::from_rational(kappa, wp);
    let tp = ApReal::from_rational(theta_prime, wp);
    let big_w = ApReal::ten_pow(lay.log10_w as i64, wp);
    let complex = points.iter().any(|s| !s.im.is_zero());
    let mut rows: Vec<Vec<ApReal>> = Vec::new();
    let mut rhs: Vec<ApReal> = Vec::new();
    for s in points {
        let w = &s.scale(&k) + &ApComplex::from_real(tp.clone());
        let mut cur = ApComplex::one(wp);
        let mut basis = Vec::with_capacity(n);
        let mut wj = ApReal::one(wp);
        for j in 0..n {
            basis.push(cur.scale(&wj));
            cur = &cur / &(&w + &ApComplex::from_real(ApReal::from_i64(j as i64, wp)));
            wj = &wj * &big_w;
        }
        let fv = f(s)?;
        rows.push(basis.iter().map(|b| b.re.clone()).collect());
        rhs.push(fv.re.clone());
        if complex {
            rows.push(basis.iter().map(|b| b.im.clone()).collect());
            rhs.push(fv.im.clone());
        }
    }
    let mat = Matrix { rows: rows.len(), cols: n, a: rows.into_iter().flatten().collect() };
    let (x, res) = householder_lstsq(mat, rhs);
    let mut c = Vec::with_capacity(lay.m);
    let mut wj = ApReal::one(wp);
    for xj in x.iter().take(lay.m) {
        c.push(xj * &wj);
        wj = &wj * &big_w;
    }
    Ok((c, res))
}

/// Parameters shared by the three sampled ratios.
pub(crate) struct RatioParams {
    pub kappa: Rational,
    pub theta_prime: Rational,
    pub nu: Rational,
    /// `ln(kappa A0)` and `ln(h kappa^kappa)`, possibly complex.
    pub ln_scale: ApComplex,
    pub ln_growth: ApComplex,
}

fn q(r: &Rational, p: Precision) -> ApReal {
    ApReal::from_rational(r, p)
}

/// `1Psi2` ratio for `a > 0`: `Gamma(w) / (Gamma(s+3/2) Gamma(a s + nu + 3/2))`.
pub(crate) fn ratio_pos(rp: &RatioParams, a: &Rational, s: &ApComplex) -> Result<ApComplex> {
    let p = s.prec();
    let sr = &s.re;
    let w = &(sr * &q(&rp.kappa, p)) + &q(&rp.theta_prime, p);
    let b1 = sr + &ApReal::from_f64(1.5, p);
    let b2 = &(sr * &q(a, p)) + &(&q(&rp.nu, p) + &ApReal::from_f64(1.5, p));
    let l = &(&ln_gamma_real(&w) - &ln_gamma_real(&b1)) - &ln_gamma_real(&b2);
    let l = &(&ApComplex::from_real(l) - &rp.ln_scale) - &rp.ln_growth.scale(sr);
    Ok(l.exp())
}

/// `2Psi1` ratio for `a = -sigma`: `Gamma(w) Gamma(sigma s - nu - 1/2) / Gamma(s + 3/2)`.
pub(crate) fn ratio_two_one(rp: &RatioParams, sigma: &Rational, s: &ApComplex) -> Result<ApComplex> {
    let p = s.prec();
    let sr = &s.re;
    let w = &(sr * &q(&rp.kappa, p)) + &q(&rp.theta_prime, p);
    let b1 = sr + &ApReal::from_f64(1.5, p);
    let b2 = &(sr * &q(sigma, p)) - &(&q(&rp.nu, p) + &ApReal::from_f64(0.5, p));
    let l = &(&ln_gamma_real(&w) + &ln_gamma_real(&b2)) - &ln_gamma_real(&b1);
    let l = &(&ApComplex::from_real(l) - &rp.ln_scale) - &rp.ln_growth.scale(sr);
    Ok(l.exp())
}

/// The `1Psi2` ratio continued to `a = -sigma` at complex `s`:
/// `Gamma(w) / (Gamma(s+3/2) Gamma(-sigma s + nu + 3/2))`, where the
/// reciprocal gamma of the large negative argument is taken through the
/// reflection formula.
pub(crate) fn ratio_continued(rp: &RatioParams, sigma: &Rational, s: &ApComplex) -> Result<ApComplex> {
    let p = s.prec();
    let kq = ApComplex::from_real(q(&rp.kappa, p));
    let w = &(&kq * s) + &ApComplex::from_real(q(&rp.theta_prime, p));
    let b1 = s + &ApComplex::from_real(ApReal::from_f64(1.5, p));
    let u = &s.scale(&q(sigma, p).neg()) + &ApComplex::from_real(&q(&rp.nu, p) + &ApReal::from_f64(1.5, p));
    // ln(1/Gamma(u)) = ln Gamma(1-u) + ln sin(pi u) - ln pi
    let one_minus_u = &ApComplex::one(p) - &u;
    let ln_rg = &(&ln_gamma(&one_minus_u) + &ln_sin_pi(&u)) - &ApComplex::from_real(ApReal::pi(p).ln());
    let l = &(&(&ln_gamma(&w) + &ln_rg) - &ln_gamma(&b1)) - &rp.ln_scale;
    let l = &l - &(&rp.ln_growth * s);
    Ok(l.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_recovers_exact_solution() {
        let p = Precision::new(40).unwrap();
        let vals = [[2.0, -1.0, 0.5], [1.0, 3.0, -2.0], [0.0, 1.0, 4.0], [1.5, 0.25, 1.0]];
        let x_true = [1.25, -0.5, 2.0];
        let mut a = Vec::new();
        let mut y = Vec::new();
        for row in vals {
            let mut acc = 0.0;
            for (j, v) in row.iter().enumerate() {
                a.push(ApReal::from_f64(*v, p));
                acc += v * x_true[j];
            }
            y.push(ApReal::from_f64(acc, p));
        }
        let (x, res) = householder_lstsq(Matrix { rows: 4, cols: 3, a }, y);
        for (xi, want) in x.iter().zip(x_true) {
            assert!((xi.to_f64() - want).abs() < 1e-30);
        }
        assert!(res.log10_abs() < -30.0);
    }

    #[test]
    fn layout_grows_with_target() {
        let l = Layout::for_target(11, 60);
        assert_eq!(l.unknowns(), 26);
        assert_eq!(l.log10_w, 6);
        assert_eq!(l.samples, 32);
        assert!(l.work.digits() > 200);
    }
}

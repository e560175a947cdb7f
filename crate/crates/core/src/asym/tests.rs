use super::*;
use crate::ap::parse_rational;
use crate::series::eval_series;

fn pr() -> Precision {
    Precision::new(40).unwrap()
}

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn params(a: &str, nu: &str) -> StruveParams {
    StruveParams::parse(a, nu).unwrap()
}

fn real(x: f64) -> ApComplex {
    ApComplex::from_real(ApReal::from_f64(x, pr()))
}

fn imag(y: f64) -> ApComplex {
    ApComplex::new(ApReal::zero(pr()), ApReal::from_f64(y, pr()))
}

/// Within one unit of the tenth significant digit of `want`.
fn agrees(got: f64, want: f64) -> bool {
    let unit = 10f64.powf(want.abs().log10().floor() - 9.0);
    (got - want).abs() <= 1.5 * unit
}

fn fixed10() -> AsymConfig {
    AsymConfig { policy: TruncationPolicy::fixed(10), ..Default::default() }
}

#[test]
fn table2_real_axis_with_eleven_coefficients() {
    let p = params("1/2", "1/4");
    for (z, want) in [(15.0, 5.1826249375083e9), (12.0, 6.877617204e6), (5.0, 3.461544352e1)] {
        let est = asymptotic(&real(z), &p, pr(), &fixed10()).unwrap();
        assert_eq!(est.components.len(), 1);
        assert_eq!(est.components[0].terms, 11);
        assert!(agrees(est.value.re.to_f64(), want), "z = {z}: {}", est.value);
    }
}

#[test]
fn table2_imaginary_axis() {
    let p = params("1/2", "1/4");
    let cfg = AsymConfig::default();
    for (y, e1, l_minus_h) in
        [(15.0, 4.021543491e-10, 4.0215300983495e-10), (20.0, 6.82766632499e-12, 6.8276663249861e-12)]
    {
        let est = asymptotic(&imag(y), &p, pr(), &cfg).unwrap();
        let e = est.component(Label::TildeE { n: 1 }).unwrap();
        assert!(agrees(e.value.re.to_f64(), e1), "E~1 at {y}i: {}", e.value);
        let h = est.component(Label::H).unwrap();
        let series = eval_series(&imag(y), &p, pr()).unwrap().value;
        let diff = (&series - &h.value).re.to_f64();
        assert!(agrees(diff, l_minus_h), "L - H at {y}i: {diff:e}");
        assert!(est.value.im.is_zero() || est.value.im.abs().log2_abs() < est.value.log2_abs() - 60.0);
    }
}

#[test]
fn table3_negative_a_real_axis() {
    let cfg = AsymConfig::default();
    for (sigma, z, want) in [
        ("1/2", 8.0, 8.747082153e1),
        ("3/5", 5.0, 1.276299496e1),
        ("1/5", 15.0, -2.287676991e22),
        ("1/3", 10.0, 1.563077837e3),
    ] {
        let p = params(&format!("-{sigma}"), "1/3");
        let est = asymptotic(&real(z), &p, pr(), &cfg).unwrap();
        assert!(agrees(est.value.re.to_f64(), want), "sigma = {sigma}, z = {z}: {}", est.value);
        let n_exp = est.components.iter().filter(|c| c.label == Label::HatE21).count();
        assert_eq!(n_exp, usize::from(q(sigma) < q("1/2")));
    }
}

#[test]
fn table4_negative_a_imaginary_axis() {
    let cfg = AsymConfig::default();
    for (sigma, y, want) in [("1/4", 6.0, 0.0304465359639), ("1/4", 8.0, 1.673275565e-2), ("1/2", 5.0, 3.420993479e-2)]
    {
        let p = params(&format!("-{sigma}"), "4/3");
        let est = asymptotic(&imag(y), &p, pr(), &cfg).unwrap();
        assert!(agrees(est.value.re.to_f64(), want), "sigma = {sigma}, z = {y}i: {}", est.value);
        assert_eq!(est.components.len(), 1);
    }
}

#[test]
fn single_coefficient_gives_the_bare_prefactor() {
    let p = params("1/2", "1/4");
    let wp = derive_params(&p).unwrap();
    let ct = coeff_cache().formal(&p, 1, pr()).unwrap();
    let zeta = Phased::new(ApReal::from_i64(25, pr()), ApReal::zero(pr()));
    let c = exp_expansion_e(&zeta, &wp, &ct, &TruncationPolicy::fixed(0)).unwrap();
    let big_x = wp.big_x(&ApReal::from_i64(25, pr()));
    let want = &(&big_x.pow(&ApReal::from_rational(&wp.theta, pr())) * &big_x.exp()) * &wp.a0(pr());
    let d = (&c.value.re - &want).abs();
    assert!(d.log2_abs() < want.log2_abs() - 120.0);
}

#[test]
fn leading_algebraic_term() {
    let p = params("1/2", "1/4");
    let wp = derive_params(&p).unwrap();
    let x = ApReal::from_i64(100, pr());
    let c = alg_expansion_h12(&Phased::new(x, ApReal::zero(pr())), &wp, &TruncationPolicy::fixed(0)).unwrap();
    // Gamma(1/2) / (100 pi Gamma(5/4)), Gamma(5/4) = 0.9064024770554770779...
    let want = 1.0 / (100.0 * std::f64::consts::PI.sqrt() * 0.906_402_477_055_477);
    assert!((c.value.re.to_f64() - want).abs() < 1e-16);
}

#[test]
fn kappa_above_two_uses_rotated_copies() {
    let p = params("3", "1/4");
    let est = asymptotic(&real(60.0), &p, pr(), &AsymConfig::default()).unwrap();
    let labels: Vec<Label> = est.components.iter().map(|c| c.label).collect();
    assert_eq!(labels, vec![Label::E { turns: -1 }, Label::E { turns: 0 }, Label::E { turns: 1 }]);
    let series = eval_series(&real(60.0), &p, pr()).unwrap().value;
    let rel = |v: &ApComplex| ((v - &series).abs() / series.abs()).to_f64();
    let with_copies = rel(&est.value);
    let without = rel(&est.component(Label::E { turns: 0 }).unwrap().value);
    assert!(with_copies < 1e-5 && with_copies * 20.0 < without, "{with_copies:e} {without:e}");
}

#[test]
fn general_complex_argument_matches_series() {
    let p = params("1/2", "1/4");
    let z = ApComplex::from_polar(&ApReal::from_i64(14, pr()), &ApReal::from_f64(1.2, pr()));
    let est = asymptotic(&z, &p, pr(), &AsymConfig::default()).unwrap();
    // arg zeta = 2.4 > pi/4, so the rotated copy is present.
    assert!(est.component(Label::E { turns: -1 }).is_some());
    assert!(est.component(Label::H).is_some());
    let series = eval_series(&z, &p, pr()).unwrap().value;
    let rel = ((&est.value - &series).abs() / series.abs()).to_f64();
    assert!(rel < 1e-8, "rel = {rel:e}");
}

#[test]
fn value_is_the_sum_of_components() {
    let p = params("1/2", "1/4");
    let z = ApComplex::from_polar(&ApReal::from_i64(9, pr()), &ApReal::from_f64(0.9, pr()));
    let est = asymptotic(&z, &p, pr(), &AsymConfig::default()).unwrap();
    let mut s = ApComplex::zero(pr());
    for c in &est.components {
        s = &s + &c.value;
    }
    assert_eq!(s, est.value);
}

#[test]
fn sector_and_argument_errors() {
    let p = params("1/2", "1/4");
    let ct = coeff_cache().formal(&p, 12, pr()).unwrap();
    let z = ApComplex::new(ApReal::from_i64(-3, pr()), ApReal::from_i64(1, pr()));
    assert!(matches!(assemble_pos(&z, &p, &ct, &AsymConfig::default()), Err(Error::SectorUnsupported(_))));
    assert!(matches!(asymptotic(&real(0.0), &p, pr(), &AsymConfig::default()), Err(Error::ZeroArgument)));
    let n = params("-1/2", "1/3");
    let z = ApComplex::new(ApReal::from_i64(3, pr()), ApReal::from_i64(1, pr()));
    assert!(matches!(asymptotic(&z, &n, pr(), &AsymConfig::default()), Err(Error::SectorUnsupported(_))));
}

#[test]
fn integer_k_s_is_a_double_pole() {
    // sigma = 1/2, nu = 1/2: k_s = 2k - 2 is an integer at k = 0.
    let wp = derive_params(&params("-1/2", "1/2")).unwrap();
    let r = alg_hat_h21(&ApReal::from_i64(16, pr()), &wp, &TruncationPolicy::optimal());
    assert!(matches!(r, Err(Error::DoublePole(0))));
}

#[test]
fn ladder_of_the_negative_case() {
    let cfg = AsymConfig::default();
    for (sigma, sector) in [
        ("1/5", Sector::ExponentiallyLarge),
        ("1/3", Sector::AntiStokesLine),
        ("2/5", Sector::ExponentiallySmallPlusAlgebraic),
        ("1/2", Sector::StokesLine),
        ("3/5", Sector::AlgebraicOnly),
    ] {
        let s = q(sigma);
        let est = asymptotic(&real(12.0), &params(&format!("-{sigma}"), "1/3"), pr(), &cfg).unwrap();
        assert_eq!(est.regime.sector, sector, "sigma = {sigma}");
        if s > q("1/2") {
            continue;
        }
        let k = 1.0 - crate::ap::q_to_f64(&s);
        let c = (PI * crate::ap::q_to_f64(&s) / k).cos();
        let sign = if c.abs() < 1e-12 {
            0
        } else if c > 0.0 {
            1
        } else {
            -1
        };
        let expected = match sector {
            Sector::ExponentiallyLarge => 1,
            Sector::AntiStokesLine => 0,
            _ => -1,
        };
        assert_eq!(sign, expected, "sigma = {sigma}");
    }
}

#[test]
fn singular_hat_parameters_are_flagged() {
    assert!(hat_parameters_singular(&q("1/2"), &q("1/2")));
    assert!(!hat_parameters_singular(&q("1/3"), &q("1/3")));
}

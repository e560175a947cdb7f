//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

use gstruve::ap::{parse_rational, ApComplex, ApReal, Precision, Rational};
use gstruve::asym::{asymptotic, AsymConfig};
use gstruve::coeffs::{closed_form_c123, solve_coeffs, verify_appendix_identity};
use gstruve::regime::{classify, n_rule};
use gstruve::report::{self, Document, ReportRow, TableReport};
use gstruve::series::eval_series;
use gstruve::wright::{derive_params, StruveParams};
use num_bigint::BigInt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

fn prec() -> Precision {
    Precision::new(50).unwrap()
}

fn verdict(n: u32, ok: bool, detail: &str) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn rows_table(id: u32) -> &'static (Document<ReportRow>, Duration) {
    static T: [OnceLock<(Document<ReportRow>, Duration)>; 5] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    T[id as usize].get_or_init(|| {
        let t0 = Instant::now();
        match report::table(id, prec()).unwrap() {
            TableReport::Rows(d) => (d, t0.elapsed()),
            TableReport::Coeffs(_) => unreachable!("table {id} has value rows"),
        }
    })
}

fn misses(rows: &[ReportRow], left: bool, right: bool) -> Vec<String> {
    let mut out = Vec::new();
    for r in rows {
        for (use_it, c, col) in [(left, &r.series_check, 0), (right, &r.asym_check, 1)] {
            if !use_it {
                continue;
            }
            match c {
                Some(c) if c.within_last_digit => {}
                Some(c) => {
                    let got = if col == 0 { &r.series_value } else { &r.asym_value };
                    let got = got.as_ref().map(|v| v.re.chars().take(14).collect::<String>()).unwrap_or_default();
                    out.push(format!(
                        "[a={} z={} {}: printed {} got {}]",
                        r.params.a,
                        z_text(r),
                        r.columns[col],
                        c.printed,
                        got
                    ));
                }
                None => out.push(format!(
                    "[a={} z={} {}: not computed {:?}]",
                    r.params.a,
                    z_text(r),
                    r.columns[col],
                    r.errors
                )),
            }
        }
    }
    out
}

fn z_text(r: &ReportRow) -> String {
    let f = |s: &str| ApReal::from_decimal_str(s, prec()).unwrap().to_f64();
    if f(&r.z.im) == 0.0 {
        format!("{}", f(&r.z.re))
    } else {
        format!("{}i", f(&r.z.im))
    }
}

#[test]
fn criterion_1_table1_coefficients() {
    let p = StruveParams::parse("1/2", "1/4").unwrap();
    let t0 = Instant::now();
    let ct = solve_coeffs(&p, 11, Precision::new(60).unwrap()).unwrap();
    let rats = ct.rationals(45, &BigInt::from(10u64).pow(20));
    let elapsed = t0.elapsed();
    let mut bad = Vec::new();
    for (j, printed) in report::published::TABLE1 {
        let want = parse_rational(printed).unwrap();
        let digits = report::matched_digits(
            &ApComplex::from_real(ct.c[j].clone()),
            &ApComplex::from_real(ApReal::from_rational(&want, ct.precision)),
            60,
        );
        if digits < 20 || rats[j].as_ref() != Some(&want) {
            bad.push(format!("c{j} ({digits} digits)"));
        }
    }
    let ok = bad.is_empty() && elapsed < Duration::from_secs(10);
    verdict(1, ok, &format!("10 rationals, exact reconstruction, {:.2?}; misses {bad:?}", elapsed));
}

#[test]
fn criterion_2_closed_form_consistency() {
    let a_grid = ["-9/10", "-3/4", "-3/5", "-1/2", "-1/3", "-1/5", "-1/10", "1/4", "1/2", "1", "3/2", "2", "5/2", "3"];
    let nu_grid = ["1/4", "4/3"];
    let mut worst = u32::MAX;
    let mut bad = Vec::new();
    let mut n = 0;
    for a in a_grid {
        for nu in nu_grid {
            let p = StruveParams::parse(a, nu).unwrap();
            n += 1;
            let ct = match solve_coeffs(&p, 8, Precision::new(50).unwrap()) {
                Ok(ct) => ct,
                Err(e) => {
                    bad.push(format!("({a},{nu}): {e}"));
                    continue;
                }
            };
            let exact = closed_form_c123(&p).unwrap();
            for (j, q) in exact.iter().enumerate() {
                let d = report::matched_digits(
                    &ApComplex::from_real(ct.c[j + 1].clone()),
                    &ApComplex::from_real(ApReal::from_rational(q, ct.precision)),
                    50,
                );
                worst = worst.min(d);
                if d < 20 {
                    bad.push(format!("({a},{nu}) c{}: {d} digits", j + 1));
                }
            }
        }
    }
    verdict(2, bad.is_empty() && n >= 20, &format!("{n} pairs, worst agreement {worst} digits; misses {bad:?}"));
}

#[test]
fn criterion_3_table2() {
    let (doc, elapsed) = rows_table(2);
    let upper = misses(&doc.rows[..4], true, true);
    let lower = misses(&doc.rows[4..], true, false);
    let ok = upper.is_empty() && lower.is_empty() && *elapsed < Duration::from_secs(120);
    verdict(3, ok, &format!("upper misses {upper:?}, lower misses {lower:?}, {:.1?}", elapsed));
}

#[test]
fn criterion_4_table3() {
    let (doc, _) = rows_table(3);
    let m = misses(&doc.rows, true, true);
    verdict(4, m.is_empty(), &format!("{} of 24 printed values within one unit; misses {}", 24 - m.len(), m.join(" ")));
}

#[test]
fn criterion_5_table4() {
    let (doc, _) = rows_table(4);
    let m = misses(&doc.rows, true, true);
    verdict(5, m.is_empty(), &format!("{} of 16 printed values within one unit; misses {}", 16 - m.len(), m.join(" ")));
}

#[test]
fn criterion_6_appendix_identity() {
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    for (s, nu) in [("1/5", "1/3"), ("1/3", "1/3"), ("1/2", "4/3")] {
        let r = verify_appendix_identity(
            &parse_rational(s).unwrap(),
            &parse_rational(nu).unwrap(),
            6,
            Precision::new(60).unwrap(),
        )
        .unwrap();
        let l = if r.max_discrepancy.is_zero() { f64::NEG_INFINITY } else { r.max_discrepancy.log10_abs() };
        worst = worst.max(l);
        ok &= l < -25.0;
    }
    verdict(6, ok, &format!("max discrepancy 10^{worst:.1}"));
}

/// A small deterministic generator so the sampled points are reproducible.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn rel(a: &ApComplex, b: &ApComplex) -> f64 {
    let d = (a - b).abs();
    if d.is_zero() {
        return f64::NEG_INFINITY;
    }
    d.log10_abs() - b.abs().log10_abs()
}

#[test]
fn criterion_7_property_suite() {
    let p30 = Precision::new(30).unwrap();
    let tol = -(p30.digits() as f64) + 5.0;
    let mut rng = Lcg(0x5eed);
    let mut fails: Vec<String> = Vec::new();
    let params = StruveParams::parse("1/2", "1/4").unwrap();
    for _ in 0..30 {
        let r = 1.0 + 19.0 * rng.next();
        let t = (rng.next() - 0.5) * std::f64::consts::PI;
        let z = ApComplex::from_polar(&ApReal::from_f64(r, p30), &ApReal::from_f64(t, p30));
        let v = eval_series(&z, &params, p30).unwrap().value;
        let w = eval_series(&-z.clone(), &params, p30).unwrap().value;
        if rel(&w, &v) > tol {
            fails.push(format!("rotation at {r:.3}e^{t:.3}i"));
        }
        let c = eval_series(&z.conj(), &params, p30).unwrap().value;
        if rel(&c, &v.conj()) > tol {
            fails.push(format!("conjugation at {r:.3}e^{t:.3}i"));
        }
    }
    let a1 = StruveParams::parse("1", "1/2").unwrap();
    for _ in 0..30 {
        let x = ApReal::from_f64(1.0 + 19.0 * rng.next(), p30);
        let z = ApComplex::from_real(x.clone());
        let got = eval_series(&z, &a1, p30).unwrap().unnormalized(&z, a1.nu());
        let two_over_pi_x = &ApReal::from_i64(2, p30) / &(&ApReal::pi(p30) * &x);
        let want = &two_over_pi_x.sqrt() * &(&x.cosh() - &ApReal::one(p30));
        if rel(&got, &ApComplex::from_real(want)) > tol {
            fails.push(format!("a = 1 reduction at {}", x.to_f64()));
        }
    }
    for a in ["1/2", "1", "3", "6", "-1/5", "-1/2", "-4/5"] {
        let wp = derive_params(&StruveParams::parse(a, "1/3").unwrap()).unwrap();
        for k in 0..30 {
            let phi = std::f64::consts::PI * k as f64 / 29.0;
            if classify(&wp, phi) != classify(&wp, -phi) {
                fails.push(format!("classify evenness a = {a}"));
            }
        }
        if wp.kappa > Rational::from_integer(0.into()) {
            let n = n_rule(&wp) as f64;
            let k = wp.kappa_f64();
            if !(2.0 * n + 1.0 > k / 2.0 && (n == 0.0 || 2.0 * n - 1.0 <= k / 2.0)) {
                fails.push(format!("N rule a = {a}"));
            }
        }
    }
    for _ in 0..30 {
        let r = 6.0 + 10.0 * rng.next();
        let t = (rng.next() - 0.5) * std::f64::consts::PI * 0.98;
        let z = ApComplex::from_polar(&ApReal::from_f64(r, p30), &ApReal::from_f64(t, p30));
        let est = asymptotic(&z, &params, p30, &AsymConfig::default()).unwrap();
        let mut s = ApComplex::zero(p30);
        for c in &est.components {
            s = &s + &c.value;
        }
        if s != est.value {
            fails.push(format!("component sum at {r:.3}e^{t:.3}i"));
        }
    }
    verdict(
        7,
        fails.is_empty(),
        &format!(
            "rotation, conjugation, a = 1 reduction, classify evenness, N rule, component sums; failures {fails:?}"
        ),
    );
}

/// Column name, `(|z|, matched digits)` pairs, and whether the column
/// carries the uncertain row.
type Column = (String, Vec<(f64, u32)>, bool);

#[test]
fn criterion_8_convergence_trend() {
    let mut columns: Vec<Column> = Vec::new();
    let t2 = &rows_table(2).0;
    let digits = |r: &ReportRow| r.matched_digits.unwrap_or(0);
    let abs_z = |r: &ReportRow| {
        let f = |s: &str| ApReal::from_decimal_str(s, prec()).unwrap().to_f64();
        f(&r.z.re).hypot(f(&r.z.im))
    };
    columns.push(("table 2 upper".into(), t2.rows[..4].iter().map(|r| (abs_z(r), digits(r))).collect(), false));
    columns.push(("table 2 lower".into(), t2.rows[4..].iter().map(|r| (abs_z(r), digits(r))).collect(), true));
    for id in [3, 4] {
        let doc = &rows_table(id).0;
        for p in &doc.params {
            let col: Vec<(f64, u32)> =
                doc.rows.iter().filter(|r| &r.params == p).map(|r| (abs_z(r), digits(r))).collect();
            columns.push((format!("table {id} a = {}", p.a), col, false));
        }
    }
    let mut bad = Vec::new();
    let mut summary = Vec::new();
    for (name, mut col, uncertain_row) in columns {
        col.sort_by(|a, b| a.0.total_cmp(&b.0));
        let inversions = col.windows(2).filter(|w| w[1].1 < w[0].1).count();
        let allowed = usize::from(uncertain_row);
        summary.push(format!("{name}: {:?}", col.iter().map(|c| c.1).collect::<Vec<_>>()));
        if inversions > allowed {
            bad.push(name);
        }
    }
    verdict(8, bad.is_empty(), &format!("{}; non-monotone {bad:?}", summary.join(", ")));
}

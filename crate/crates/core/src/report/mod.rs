//! Rows comparing series values with asymptotic estimates, the reference
//! tables, and their text, CSV and JSON renderings.

pub mod published;

use crate::ap::{parse_rational, ApComplex, ApReal, Precision};
use crate::asym::{asymptotic, AsymConfig, AsymptoticEstimate, Label, TruncationPolicy};
use crate::coeffs::{solve_coeffs, CoeffTable};
use crate::error::{Error, Result};
use crate::series::eval_series;
use crate::wright::{ParamsRecord, StruveParams};
use num_bigint::BigInt;
use published::{Printed, PublishedRow};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Parses `re`, `re,im`, `<r>i` or `-<r>i`.
pub fn parse_z(s: &str, prec: Precision) -> Result<ApComplex> {
    let t = s.trim();
    if let Some(r) = t.strip_suffix('i') {
        let r = match r {
            "" | "+" => "1",
            "-" => "-1",
            r => r,
        };
        return Ok(ApComplex::new(ApReal::zero(prec), ApReal::parse(r, prec)?));
    }
    match t.split_once(',') {
        Some((re, im)) => Ok(ApComplex::new(ApReal::parse(re, prec)?, ApReal::parse(im, prec)?)),
        None => Ok(ApComplex::from_real(ApReal::parse(t, prec)?)),
    }
}

/// `v` rounded to the printed number of significant digits lies within one
/// unit of the last printed digit.
pub fn within_last_digit(v: &ApReal, printed: &Printed) -> bool {
    let Ok(want) = parse_rational(printed.text) else { return false };
    let Ok(got) = parse_rational(&v.to_sci_string(printed.digits as usize)) else { return false };
    let e = ApReal::from_rational(&want, Precision::raw(30)).abs().log10_abs().floor() as i64;
    let unit = crate::ap::q_to_f64(&(got - want)).abs() / 10f64.powi((e - printed.digits as i64 + 1) as i32);
    unit <= 1.0 + 1e-9
}

/// `floor(-log10(|a - b| / |b|))`, at least 0 and at most `cap`.
pub fn matched_digits(a: &ApComplex, b: &ApComplex, cap: u32) -> u32 {
    let d = (a - b).abs();
    if d.is_zero() {
        return cap;
    }
    let rel = d.log10_abs() - b.abs().log10_abs();
    (-rel).floor().clamp(0.0, cap as f64) as u32
}

/// Digits of agreement with a printed value.
pub fn digits_vs_printed(v: &ApReal, printed: &Printed) -> u32 {
    let prec = v.prec();
    match ApReal::parse(printed.text, prec) {
        Ok(p) => matched_digits(&ApComplex::from_real(v.clone()), &ApComplex::from_real(p), printed.digits + 5),
        Err(_) => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CValue {
    pub re: String,
    pub im: String,
}

impl CValue {
    pub fn new(z: &ApComplex, digits: usize) -> Self {
        CValue { re: z.re.to_sci_string(digits), im: z.im.to_sci_string(digits) }
    }

    fn display(&self, digits: usize) -> String {
        let short = |s: &str| match ApReal::from_decimal_str(s, Precision::raw(digits as u32 + 30)) {
            Ok(v) => v.to_sci_string(digits),
            Err(_) => s.to_string(),
        };
        if self.im.starts_with("0.") || self.im.starts_with("0e") {
            short(&self.re)
        } else {
            format!("{} + {}i", short(&self.re), short(&self.im))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub label: String,
    pub value: CValue,
    pub terms: usize,
    pub error_estimate: String,
    pub dominant: bool,
}

/// A computed value set beside a printed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCheck {
    pub printed: String,
    pub matched_digits: u32,
    pub within_last_digit: bool,
}

impl CellCheck {
    fn new(v: &ApReal, p: &Printed) -> Self {
        CellCheck {
            printed: p.text.to_string(),
            matched_digits: digits_vs_printed(v, p),
            within_last_digit: within_last_digit(v, p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub index: usize,
    pub z: CValue,
    pub params: ParamsRecord,
    /// What the two value columns hold.
    pub columns: [String; 2],
    pub series_value: Option<CValue>,
    pub asym_value: Option<CValue>,
    pub matched_digits: Option<u32>,
    pub components: Vec<ComponentSummary>,
    pub warnings: Vec<String>,
    /// Failures of either evaluation path.
    pub errors: Vec<String>,
    pub series_check: Option<CellCheck>,
    pub asym_check: Option<CellCheck>,
}

impl ReportRow {
    /// A failure `--strict` turns into a nonzero exit.
    pub fn has_strict_failure(&self) -> bool {
        self.errors.iter().any(|e| e.starts_with("truncation unstable") || e.starts_with("precision exhausted"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffRow {
    pub j: usize,
    pub value: String,
    pub rational: Option<String>,
    pub published: Option<String>,
    pub exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub precision: u32,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub title: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document<R> {
    pub params: Vec<ParamsRecord>,
    pub rows: Vec<R>,
    pub meta: Meta,
}

impl<R> Document<R> {
    pub fn new(params: Vec<ParamsRecord>, rows: Vec<R>, prec: Precision, title: Option<String>) -> Self {
        let meta =
            Meta { precision: prec.digits(), version: env!("CARGO_PKG_VERSION").to_string(), title, notes: Vec::new() };
        Document { params, rows, meta }
    }
}

fn summarize(est: &AsymptoticEstimate, digits: usize) -> Vec<ComponentSummary> {
    est.components
        .iter()
        .map(|c| ComponentSummary {
            label: c.label.to_string(),
            value: CValue::new(&c.value, digits),
            terms: c.terms,
            error_estimate: c.error_estimate.to_sci_string(6),
            dominant: c.dominant,
        })
        .collect()
}

fn estimate_warnings(est: &AsymptoticEstimate) -> Vec<String> {
    let mut w = Vec::new();
    if est.stokes_warning {
        w.push(format!("on or near a Stokes line ({:?})", est.regime.sector));
    }
    w.extend(est.notes.iter().cloned());
    w
}

/// Series value and, when `asym` is given, the matching asymptotic estimate.
pub fn eval_row(
    index: usize,
    z: &ApComplex,
    p: &StruveParams,
    prec: Precision,
    asym: Option<&AsymConfig>,
) -> ReportRow {
    let digits = prec.digits() as usize;
    let mut row = ReportRow {
        index,
        z: CValue::new(z, digits),
        params: p.into(),
        columns: ["series".into(), "asymptotic".into()],
        series_value: None,
        asym_value: None,
        matched_digits: None,
        components: Vec::new(),
        warnings: Vec::new(),
        errors: Vec::new(),
        series_check: None,
        asym_check: None,
    };
    let series = match eval_series(z, p, prec) {
        Ok(r) => Some(r.value),
        Err(e) => {
            row.errors.push(e.to_string());
            None
        }
    };
    row.series_value = series.as_ref().map(|v| CValue::new(v, digits));
    if let Some(cfg) = asym {
        if z.is_zero() {
            row.warnings.push("asymptotic expansions need z != 0".into());
        } else {
            match asymptotic(z, p, prec, cfg) {
                Ok(est) => {
                    row.asym_value = Some(CValue::new(&est.value, digits));
                    row.components = summarize(&est, digits);
                    row.warnings.extend(estimate_warnings(&est));
                    if let Some(s) = &series {
                        row.matched_digits = Some(matched_digits(&est.value, s, prec.digits()));
                    }
                }
                Err(e) => row.errors.push(e.to_string()),
            }
        }
    }
    row
}

/// Which pair of quantities a reference row compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layout {
    /// Function against `E(zeta)` with `j <= 10`.
    ExpFixed,
    /// Function minus `H` against `E~_1`.
    MinusH,
    /// Function against the assembled estimate.
    Assembled,
}

fn reference_row(index: usize, r: &PublishedRow, layout: Layout, prec: Precision) -> ReportRow {
    let p = StruveParams::parse(r.a, r.nu).expect("published parameters are valid");
    let z = parse_z(r.z, prec).expect("published points are valid");
    let cfg = match layout {
        Layout::ExpFixed => AsymConfig { policy: TruncationPolicy::fixed(10), ..Default::default() },
        _ => AsymConfig::default(),
    };
    let mut row = eval_row(index, &z, &p, prec, Some(&cfg));
    if layout == Layout::ExpFixed {
        row.columns = ["L".into(), "E(zeta), j <= 10".into()];
    } else if layout == Layout::Assembled {
        row.columns = ["L".into(), "asymptotic".into()];
    }
    if layout == Layout::MinusH {
        row.columns = ["L - H".into(), "E~_1".into()];
        let digits = prec.digits() as usize;
        let series = row.series_value.as_ref().and_then(|v| ApReal::from_decimal_str(&v.re, prec).ok());
        let est = asymptotic(&z, &p, prec, &cfg).ok();
        let pick = |l: Label| est.as_ref().and_then(|e| e.component(l)).map(|c| c.value.re.clone());
        let left = match (series, pick(Label::H)) {
            (Some(s), Some(h)) => Some(&s - &h),
            _ => None,
        };
        let right = pick(Label::TildeE { n: 1 });
        row.series_value = left.as_ref().map(|v| CValue::new(&ApComplex::from_real(v.clone()), digits));
        row.asym_value = right.as_ref().map(|v| CValue::new(&ApComplex::from_real(v.clone()), digits));
        row.matched_digits = match (&left, &right) {
            (Some(l), Some(r)) => {
                Some(matched_digits(&ApComplex::from_real(r.clone()), &ApComplex::from_real(l.clone()), prec.digits()))
            }
            _ => None,
        };
    }
    let re = |v: &Option<CValue>| v.as_ref().and_then(|c| ApReal::from_decimal_str(&c.re, prec).ok());
    row.series_check = re(&row.series_value).map(|v| CellCheck::new(&v, &r.left));
    row.asym_check = re(&row.asym_value).map(|v| CellCheck::new(&v, &r.right));
    row
}

pub enum TableReport {
    Coeffs(Document<CoeffRow>),
    Rows(Document<ReportRow>),
}

pub const TABLE_TITLES: [&str; 4] = [
    "normalized coefficients c_j, a = 1/2, nu = 1/4",
    "a = 1/2, nu = 1/4: L against E(zeta) (j <= 10); L - H against E~_1",
    "a = -sigma, nu = 1/3, z > 0: L against the asymptotic estimate",
    "a = -sigma, nu = 4/3, z = i|z|: L against the algebraic estimate",
];

/// Coefficient table 1 by least squares, with rational reconstruction.
pub fn table1(prec: Precision) -> Result<Document<CoeffRow>> {
    let p = StruveParams::parse("1/2", "1/4")?;
    let prec = prec.max(Precision::new(60)?);
    let ct = solve_coeffs(&p, 11, prec)?;
    let rows = coeff_rows(&ct, true, &published::TABLE1.iter().map(|(j, s)| (*j, *s)).collect::<Vec<_>>());
    Ok(Document::new(vec![(&p).into()], rows, prec, Some(TABLE_TITLES[0].into())))
}

/// One row per coefficient, optionally reconstructed as a rational and
/// compared with `published`.
pub fn coeff_rows(ct: &CoeffTable, rational: bool, published: &[(usize, &str)]) -> Vec<CoeffRow> {
    let digits = ct.precision.digits() as usize;
    let tol = (ct.precision.digits() * 3 / 4).max(15);
    let max_den = BigInt::from(10u32).pow(ct.precision.digits() / 3);
    let rats = if rational { ct.rationals(tol, &max_den) } else { vec![None; ct.m] };
    ct.c.iter()
        .enumerate()
        .map(|(j, c)| {
            let pubd = published.iter().find(|(k, _)| *k == j).map(|(_, s)| s.to_string());
            let rat = rats.get(j).cloned().flatten();
            let exact = match (&pubd, &rat) {
                (Some(s), Some(r)) => Some(parse_rational(s).map(|q| &q == r).unwrap_or(false)),
                (Some(_), None) if rational => Some(false),
                _ => None,
            };
            CoeffRow { j, value: c.to_sci_string(digits), rational: rat.map(|r| r.to_string()), published: pubd, exact }
        })
        .collect()
}

/// Regenerates reference table `id` (1 to 4). Rows are computed in
/// parallel and emitted in table order.
pub fn table(id: u32, prec: Precision) -> Result<TableReport> {
    let (rows, layout): (&[PublishedRow], fn(usize) -> Layout) = match id {
        1 => return Ok(TableReport::Coeffs(table1(prec)?)),
        2 => (&published::TABLE2, |i| if i < 4 { Layout::ExpFixed } else { Layout::MinusH }),
        3 => (&published::TABLE3, |_| Layout::Assembled),
        4 => (&published::TABLE4, |_| Layout::Assembled),
        _ => return Err(Error::Parse(format!("table {id}"))),
    };
    let mut out: Vec<ReportRow> =
        rows.par_iter().enumerate().map(|(i, r)| reference_row(i, r, layout(i), prec)).collect();
    out.sort_by_key(|r| r.index);
    let mut params: Vec<ParamsRecord> = Vec::new();
    for r in &out {
        if !params.contains(&r.params) {
            params.push(r.params.clone());
        }
    }
    Ok(TableReport::Rows(Document::new(params, out, prec, Some(TABLE_TITLES[id as usize - 1].into()))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

fn opt_digits(d: Option<u32>) -> String {
    d.map(|d| d.to_string()).unwrap_or_else(|| "-".into())
}

fn check_cell(c: &Option<CellCheck>) -> String {
    match c {
        Some(c) => {
            format!("{} [{}{}]", c.printed, c.matched_digits, if c.within_last_digit { ", ok" } else { ", MISS" })
        }
        None => String::new(),
    }
}

fn z_label(z: &CValue) -> String {
    let f = |s: &str| ApReal::from_decimal_str(s, Precision::raw(30)).map(|v| v.to_f64()).unwrap_or(f64::NAN);
    let (re, im) = (f(&z.re), f(&z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) => format!("{re}{im:+}i"),
    }
}

const ROW_HEADERS: [&str; 9] =
    ["z", "a", "nu", "first", "second", "matched_digits", "first_published", "second_published", "notes"];

fn row_cells(r: &ReportRow, digits: usize) -> [String; 9] {
    let v = |c: &Option<CValue>| c.as_ref().map(|c| c.display(digits)).unwrap_or_else(|| "-".into());
    let mut notes: Vec<String> = r.warnings.clone();
    notes.extend(r.errors.iter().map(|e| format!("error: {e}")));
    [
        z_label(&r.z),
        r.params.a.clone(),
        r.params.nu.clone(),
        v(&r.series_value),
        v(&r.asym_value),
        opt_digits(r.matched_digits),
        check_cell(&r.series_check),
        check_cell(&r.asym_check),
        notes.join("; "),
    ]
}

fn text_grid(headers: &[&str], rows: &[Vec<String>]) -> String {
    let n = headers.len();
    let mut w: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let s: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{c:<width$}", width = w[i])).collect();
        let _ = writeln!(out, "{}", s.join("  ").trim_end());
    };
    line(headers.to_vec(), &mut out);
    line(w.iter().take(n).map(|k| "-".repeat(*k)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect(), &mut out);
    for r in rows {
        line(r.iter().map(|s| s.as_str()).collect(), &mut out);
    }
    out
}

fn csv_of(headers: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(headers).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn json_of<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("report documents serialize")
}

pub fn render_rows(doc: &Document<ReportRow>, format: Format) -> Result<String> {
    let digits = 10;
    match format {
        Format::Json => Ok(json_of(doc)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = doc
                .rows
                .iter()
                .map(|r| {
                    let full = |c: &Option<CValue>| c.as_ref().map(|c| c.re.clone()).unwrap_or_default();
                    let mut cells = row_cells(r, digits).to_vec();
                    cells[3] = full(&r.series_value);
                    cells[4] = full(&r.asym_value);
                    cells
                })
                .collect();
            csv_of(&ROW_HEADERS, &rows)
        }
        Format::Text => {
            let mut out = String::new();
            if let Some(t) = &doc.meta.title {
                let _ = writeln!(out, "{t}");
            }
            if let Some(r) = doc.rows.first() {
                let _ = writeln!(out, "first = {}, second = {}", r.columns[0], r.columns[1]);
            }
            let rows: Vec<Vec<String>> = doc.rows.iter().map(|r| row_cells(r, digits).to_vec()).collect();
            out.push_str(&text_grid(&ROW_HEADERS, &rows));
            for n in &doc.meta.notes {
                let _ = writeln!(out, "{n}");
            }
            Ok(out)
        }
    }
}

const COEFF_HEADERS: [&str; 5] = ["j", "c_j", "rational", "published", "exact"];

pub fn render_coeffs(doc: &Document<CoeffRow>, format: Format) -> Result<String> {
    let cells = |r: &CoeffRow, short: bool| {
        let v = if short {
            ApReal::from_decimal_str(&r.value, Precision::raw(60))
                .map(|x| x.to_sci_string(20))
                .unwrap_or(r.value.clone())
        } else {
            r.value.clone()
        };
        vec![
            r.j.to_string(),
            v,
            r.rational.clone().unwrap_or_default(),
            r.published.clone().unwrap_or_default(),
            r.exact.map(|b| b.to_string()).unwrap_or_default(),
        ]
    };
    match format {
        Format::Json => Ok(json_of(doc)),
        Format::Csv => csv_of(&COEFF_HEADERS, &doc.rows.iter().map(|r| cells(r, false)).collect::<Vec<_>>()),
        Format::Text => {
            let mut out = String::new();
            if let Some(t) = &doc.meta.title {
                let _ = writeln!(out, "{t}");
            }
            out.push_str(&text_grid(&COEFF_HEADERS, &doc.rows.iter().map(|r| cells(r, true)).collect::<Vec<_>>()));
            for n in &doc.meta.notes {
                let _ = writeln!(out, "{n}");
            }
            Ok(out)
        }
    }
}

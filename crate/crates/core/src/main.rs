use clap::{Args, Parser, Subcommand};
use gstruve::ap::{parse_rational, ApReal, Precision};
use gstruve::asym::{AsymConfig, TruncationPolicy};
use gstruve::coeffs::{closed_form_c123, formal_series_coeffs, solve_coeffs, verify_appendix_identity};
use gstruve::report::{self, coeff_rows, render_coeffs, render_rows, Document, Format, TableReport};
use gstruve::wright::StruveParams;
use serde::Serialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(version, about = "Generalized Struve function: series, asymptotics and reference tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Working precision in decimal digits
    #[arg(long, default_value_t = 50)]
    prec: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Exit nonzero when a truncation or precision failure is reported
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate at one point
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// `re`, `re,im` or `<r>i`
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Also evaluate the asymptotic expansion
        #[arg(long)]
        asym: bool,
        /// Number of terms kept (`j <= n`) or `opt`
        #[arg(long, default_value = "opt")]
        trunc: String,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate reference table 1, 2, 3 or 4
    Table {
        #[arg(value_parser = clap::value_parser!(u32).range(1..=4))]
        id: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Dump the normalized coefficients c_j
    Coeffs {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Number of coefficients
        #[arg(long, default_value_t = 11)]
        m: usize,
        /// Use the formal Stirling-series method instead of the linear solve
        #[arg(long)]
        formal: bool,
        /// Reconstruct exact rationals
        #[arg(long)]
        rational: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compare d_j with the continued c_j(-sigma, nu)
    VerifyAppendix {
        #[arg(long)]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_trunc(s: &str) -> Result<TruncationPolicy, String> {
    match s.trim() {
        "opt" | "optimal" => Ok(TruncationPolicy::optimal()),
        n => n
            .parse::<usize>()
            .map(TruncationPolicy::fixed)
            .map_err(|_| format!("--trunc expects a count or `opt`, got {n:?}")),
    }
}

#[derive(Serialize)]
struct AppendixDoc {
    sigma: String,
    nu: String,
    m: usize,
    d: Vec<String>,
    c: Vec<String>,
    max_discrepancy: String,
    precision: u32,
    version: &'static str,
}

fn run(cli: Cli) -> Result<bool, String> {
    let err = |e: gstruve::Error| e.to_string();
    match cli.command {
        Command::Eval { a, nu, z, asym, trunc, common } => {
            let prec = Precision::new(common.prec).map_err(err)?;
            let p = StruveParams::parse(&a, &nu).map_err(err)?;
            let z = report::parse_z(&z, prec).map_err(err)?;
            let cfg = AsymConfig { policy: parse_trunc(&trunc)?, ..Default::default() };
            let row = report::eval_row(0, &z, &p, prec, asym.then_some(&cfg));
            let failed = row.has_strict_failure() || row.series_value.is_none();
            let doc = Document::new(vec![(&p).into()], vec![row], prec, None);
            print!("{}", render_rows(&doc, common.format).map_err(err)?);
            Ok(!(common.strict && failed))
        }
        Command::Table { id, common } => {
            let prec = Precision::new(common.prec).map_err(err)?;
            match report::table(id, prec).map_err(err)? {
                TableReport::Coeffs(doc) => {
                    print!("{}", render_coeffs(&doc, common.format).map_err(err)?);
                    Ok(true)
                }
                TableReport::Rows(doc) => {
                    print!("{}", render_rows(&doc, common.format).map_err(err)?);
                    Ok(!(common.strict && doc.rows.iter().any(|r| r.has_strict_failure())))
                }
            }
        }
        Command::Coeffs { a, nu, m, formal, rational, common } => {
            let prec = Precision::new(common.prec).map_err(err)?;
            let p = StruveParams::parse(&a, &nu).map_err(err)?;
            let ct = if formal { formal_series_coeffs(&p, m, prec) } else { solve_coeffs(&p, m, prec) }.map_err(err)?;
            let mut doc = Document::new(vec![(&p).into()], coeff_rows(&ct, rational, &[]), prec, None);
            doc.meta.notes.push(format!("method: {:?}", ct.method));
            if let Ok(c123) = closed_form_c123(&p) {
                let mut worst = u32::MAX;
                for (j, q) in c123.iter().enumerate() {
                    if let Some(v) = ct.get(j + 1) {
                        let exact = ApReal::from_rational(q, prec);
                        let d = report::matched_digits(
                            &gstruve::ap::ApComplex::from_real(v.clone()),
                            &gstruve::ap::ApComplex::from_real(exact),
                            prec.digits(),
                        );
                        worst = worst.min(d);
                    }
                }
                if worst != u32::MAX {
                    doc.meta.notes.push(format!("closed-form c1..c3 agreement: {worst} digits"));
                }
            }
            print!("{}", render_coeffs(&doc, common.format).map_err(err)?);
            Ok(true)
        }
        Command::VerifyAppendix { sigma, nu, m, common } => {
            let prec = Precision::new(common.prec).map_err(err)?;
            let s = parse_rational(&sigma).map_err(err)?;
            let n = parse_rational(&nu).map_err(err)?;
            let r = verify_appendix_identity(&s, &n, m, prec).map_err(err)?;
            let digits = prec.digits() as usize;
            let doc = AppendixDoc {
                sigma: s.to_string(),
                nu: n.to_string(),
                m,
                d: r.d.c.iter().map(|x| x.to_sci_string(digits)).collect(),
                c: r.c.c.iter().map(|x| x.to_sci_string(digits)).collect(),
                max_discrepancy: r.max_discrepancy.to_sci_string(3),
                precision: prec.digits(),
                version: env!("CARGO_PKG_VERSION"),
            };
            match common.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&doc).expect("serializable")),
                _ => {
                    println!("sigma = {}, nu = {}, M = {m}", doc.sigma, doc.nu);
                    for (j, (d, c)) in doc.d.iter().zip(&doc.c).enumerate() {
                        println!("{j:>3}  d_j = {d}");
                        println!("     c_j = {c}");
                    }
                    println!("max |d_j - c_j| = {}", doc.max_discrepancy);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

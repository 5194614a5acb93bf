//! Command-line interface.
//!
//! One subcommand per operation family, with JSON for scripting, CSV for
//! figure data, and a terse human format otherwise. Output is
//! deterministic: human and CSV floats are printed with at most 12
//! significant digits, JSON floats with their full round-trip
//! representation.
//!
//! Exit codes: 0 success, 1 internal fault, 2 domain error (with a
//! machine-readable error object on stdout), 64 usage error.

use clap::error::ErrorKind as ClapErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::compare;
use crate::composer;
use crate::multiplier::{self, MultiplierCertificate, Optimality, Provenance};
use crate::optimality;
use crate::poly::{PolarQuadratic, Polynomial};
use crate::tmatrix;
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "poincare",
    version,
    about = "Poincaré multipliers for positive polynomials"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a multiplier certificate for a quadratic (or --compose for any positive polynomial)
    Multiplier(MultiplierArgs),
    /// Re-check a certificate document and report failing invariants
    Verify(VerifyArgs),
    /// Print the optimal multiplier degree s = ceil(pi/theta) - 2
    OptimalDegree(OptimalDegreeArgs),
    /// Emit the T-matrix of a quadratic as CSV
    Tmatrix(TmatrixArgs),
    /// Compare the Riggs and monic Meissner multipliers
    Compare(CompareArgs),
    /// Emit the coefficient-ratio table for a given degree as CSV
    RatioTable(RatioTableArgs),
    /// Factor a monic polynomial into real linear and quadratic factors
    Factor(FactorArgs),
}

/// Quadratic input, as either a coefficient list or a polar root pair.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("quadratic").required(true).args(["f", "polar"])))]
pub struct QuadraticInput {
    /// Polynomial as comma-separated ascending coefficients, e.g. "2,-2,1"
    #[arg(long, value_name = "COEFFS", allow_hyphen_values = true)]
    pub f: Option<String>,
    /// Root pair r·e^{±iθ}: radius and angle (radians unless --degrees)
    #[arg(long, num_args = 2, value_names = ["R", "THETA"], allow_negative_numbers = true)]
    pub polar: Option<Vec<f64>>,
    /// Interpret the polar angle in degrees
    #[arg(long)]
    pub degrees: bool,
}

impl QuadraticInput {
    fn polynomial(&self) -> Result<Polynomial, Error> {
        match (&self.f, &self.polar) {
            (Some(text), None) => text.parse(),
            (None, Some(_)) => Ok(self.quadratic()?.to_polynomial()),
            _ => Err(Error::Domain("supply exactly one of --f / --polar".into())),
        }
    }

    fn quadratic(&self) -> Result<PolarQuadratic, Error> {
        match (&self.f, &self.polar) {
            (Some(text), None) => text.parse::<Polynomial>()?.to_polar(),
            (None, Some(pair)) => {
                let theta = if self.degrees {
                    pair[1].to_radians()
                } else {
                    pair[1]
                };
                PolarQuadratic::new(pair[0], theta)
            }
            _ => Err(Error::Domain("supply exactly one of --f / --polar".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Backward coefficient recurrence
    Riggs,
    /// Banded determinant via cofactor expansion
    RiggsDet,
    /// Closed trigonometric form
    RiggsClosed,
    /// Meissner's classical multiplier (not monic)
    Meissner,
    /// Meissner's multiplier normalized to be monic
    MeissnerMonic,
}

#[derive(Debug, Args)]
pub struct MultiplierArgs {
    #[command(flatten)]
    pub input: QuadraticInput,
    #[arg(long, value_enum, default_value = "riggs")]
    pub method: Method,
    /// Factor the polynomial and compose per-factor multipliers
    #[arg(long)]
    pub compose: bool,
    /// Override the certificate tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Certificate JSON document; pass "-" to read standard input
    #[arg(long, value_name = "PATH")]
    pub cert: String,
}

#[derive(Debug, Args)]
pub struct OptimalDegreeArgs {
    #[command(flatten)]
    pub input: QuadraticInput,
    /// Also search degrees 0..=T_MAX with the cone oracle
    #[arg(long, value_name = "T_MAX")]
    pub search: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TmatrixArgs {
    #[command(flatten)]
    pub input: QuadraticInput,
    /// Degree bound (defaults to the optimal degree)
    #[arg(long)]
    pub s: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: QuadraticInput,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RatioTableArgs {
    /// Multiplier degree (>= 1)
    #[arg(long)]
    pub s: usize,
    /// Emit CSV (the default)
    #[arg(long)]
    pub csv: bool,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    /// Polynomial as comma-separated ascending coefficients
    #[arg(long, value_name = "COEFFS", allow_hyphen_values = true)]
    pub f: String,
    #[arg(long)]
    pub json: bool,
}

/// The certificate document emitted and re-read by the CLI.
#[derive(Debug, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub f: Polynomial,
    pub g: Polynomial,
    pub s: usize,
    pub c: Vec<f64>,
    pub product: Polynomial,
    pub provenance: Provenance,
    pub tol: f64,
    pub composed: bool,
    pub optimality: Optimality,
    pub verified: bool,
}

impl CertificateDocument {
    fn new(cert: MultiplierCertificate, verified: bool) -> Self {
        Self {
            f: cert.f,
            g: cert.g,
            s: cert.s,
            c: cert.c,
            product: cert.product,
            provenance: cert.provenance,
            tol: cert.tol,
            composed: cert.composed,
            optimality: cert.optimality,
            verified,
        }
    }

    fn certificate(&self) -> MultiplierCertificate {
        MultiplierCertificate {
            f: self.f.clone(),
            g: self.g.clone(),
            s: self.s,
            c: self.c.clone(),
            product: self.product.clone(),
            provenance: self.provenance,
            tol: self.tol,
            composed: self.composed,
            optimality: self.optimality,
        }
    }
}

/// Parse arguments, run, print the document, and return the exit code.
pub fn run() -> i32 {
    let config = match RunConfig::try_parse() {
        Ok(config) => config,
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let (document, code) = execute(&config.command);
    print!("{document}");
    code
}

/// Run one subcommand; returns the emitted document and exit code.
pub fn execute(command: &Command) -> (String, i32) {
    let result = match command {
        Command::Multiplier(args) => run_multiplier(args),
        Command::Verify(args) => return run_verify(args),
        Command::OptimalDegree(args) => run_optimal_degree(args),
        Command::Tmatrix(args) => run_tmatrix(args),
        Command::Compare(args) => run_compare(args),
        Command::RatioTable(args) => run_ratio_table(args),
        Command::Factor(args) => run_factor(args),
    };
    match result {
        Ok(document) => (document, EXIT_OK),
        Err(e) => {
            let code = if e.is_domain() { EXIT_DOMAIN } else { EXIT_INTERNAL };
            (error_object(&e), code)
        }
    }
}

fn error_object(e: &Error) -> String {
    let value = serde_json::json!({
        "error": { "kind": e.kind(), "message": e.to_string() }
    });
    to_pretty(&value)
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable document");
    text.push('\n');
    text
}

/// Shortest representation capped at 12 significant digits.
fn fmt12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("round-trip");
    format!("{rounded}")
}

fn fmt12_list(values: &[f64]) -> String {
    values.iter().map(|&v| fmt12(v)).collect::<Vec<_>>().join(",")
}

fn run_multiplier(args: &MultiplierArgs) -> Result<String, Error> {
    let cert = if args.compose {
        let f = args.input.polynomial()?;
        if !f.is_monic() {
            return Err(Error::Domain(
                "composed multipliers need a monic polynomial".into(),
            ));
        }
        composer::compose_multiplier(&f)?
    } else {
        let pq = args.input.quadratic()?;
        match args.method {
            Method::Riggs => multiplier::riggs_recurrence(&pq)?,
            Method::RiggsDet => multiplier::riggs_determinant(&pq)?,
            Method::RiggsClosed => multiplier::riggs_closed_form(&pq)?,
            Method::Meissner => multiplier::meissner(&pq)?,
            Method::MeissnerMonic => multiplier::meissner_monic(&pq)?,
        }
    };
    // When f was given textually, certify against those exact coefficients
    // rather than the polar round trip; ditto for a tolerance override.
    let cert = if (args.input.f.is_some() && !args.compose) || args.tol.is_some() {
        let f = match &args.input.f {
            Some(text) => text.parse()?,
            None => cert.f,
        };
        multiplier::certify(
            f,
            cert.g,
            cert.provenance,
            cert.composed,
            cert.optimality,
            args.tol,
        )?
    } else {
        cert
    };
    let verified = multiplier::verify(&cert).passed;
    let doc = CertificateDocument::new(cert, verified);
    if args.json {
        Ok(to_pretty(&doc))
    } else {
        Ok(format_certificate(&doc))
    }
}

fn format_certificate(doc: &CertificateDocument) -> String {
    let provenance = serde_plain(&doc.provenance);
    let optimality = serde_plain(&doc.optimality);
    format!(
        "f: {}\ng: {}\ns: {}\nc: {}\nproduct: {}\nprovenance: {}\ncomposed: {}\noptimality: {}\nverified: {}\n",
        fmt12_list(doc.f.coeffs()),
        fmt12_list(doc.g.coeffs()),
        doc.s,
        fmt12_list(&doc.c),
        fmt12_list(doc.product.coeffs()),
        provenance,
        doc.composed,
        optimality,
        doc.verified,
    )
}

/// Render a unit enum through its serde name.
fn serde_plain<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("serializable enum") {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

fn run_verify(args: &VerifyArgs) -> (String, i32) {
    let read = || -> Result<CertificateDocument, Error> {
        let text = if args.cert == "-" {
            use std::io::Read;
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Domain(format!("cannot read stdin: {e}")))?;
            buf
        } else {
            std::fs::read_to_string(&args.cert)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", args.cert)))?
        };
        serde_json::from_str(&text)
            .map_err(|e| Error::Domain(format!("invalid certificate document: {e}")))
    };
    let doc = match read() {
        Ok(doc) => doc,
        Err(e) => return (error_object(&e), EXIT_DOMAIN),
    };
    let report = multiplier::verify(&doc.certificate());
    if report.passed {
        let doc = CertificateDocument { verified: true, ..doc };
        (to_pretty(&doc), EXIT_OK)
    } else {
        let value = serde_json::json!({
            "error": {
                "kind": "verification-failed",
                "message": format!("certificate failed {} invariant(s)", report.failures.len()),
                "failures": report.failures,
            }
        });
        (to_pretty(&value), EXIT_DOMAIN)
    }
}

#[derive(Debug, Serialize)]
struct SearchDocument {
    t_max: usize,
    empirical_minimum: Option<usize>,
    table: Vec<SearchRow>,
}

#[derive(Debug, Serialize)]
struct SearchRow {
    t: usize,
    feasible: bool,
}

#[derive(Debug, Serialize)]
struct OptimalDegreeDocument {
    r: f64,
    theta: f64,
    s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<SearchDocument>,
}

fn run_optimal_degree(args: &OptimalDegreeArgs) -> Result<String, Error> {
    let pq = args.input.quadratic()?;
    let s = multiplier::optimal_degree(pq.theta())?;
    let search = args.search.map(|t_max| {
        let table: Vec<SearchRow> = optimality::feasibility_table(&pq, t_max)
            .into_iter()
            .map(|(t, feasible)| SearchRow { t, feasible })
            .collect();
        SearchDocument {
            t_max,
            empirical_minimum: table.iter().find(|row| row.feasible).map(|row| row.t),
            table,
        }
    });
    if args.json {
        return Ok(to_pretty(&OptimalDegreeDocument {
            r: pq.r(),
            theta: pq.theta(),
            s,
            search,
        }));
    }
    let mut out = format!("s = {s}\n");
    if let Some(search) = search {
        match search.empirical_minimum {
            Some(t) => out.push_str(&format!("empirical minimum: {t}\n")),
            None => out.push_str(&format!("empirical minimum: none up to {}\n", search.t_max)),
        }
        out.push_str("t,feasible\n");
        for row in search.table {
            out.push_str(&format!("{},{}\n", row.t, row.feasible));
        }
    }
    Ok(out)
}

fn run_tmatrix(args: &TmatrixArgs) -> Result<String, Error> {
    let pq = args.input.quadratic()?;
    let s = match args.s {
        Some(s) => s,
        None => multiplier::optimal_degree(pq.theta())?,
    };
    let t = tmatrix::t_matrix(&pq, s);
    if let Err(diag) = t.consistency() {
        eprintln!("warning: {diag}");
    }
    let mut out = String::from("k,T_k0,T_k1\n");
    for (k, row) in t.rows().iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", k, fmt12(row[0]), fmt12(row[1])));
    }
    Ok(out)
}

fn run_compare(args: &CompareArgs) -> Result<String, Error> {
    let pq = args.input.quadratic()?;
    let report = compare::report(&pq)?;
    if args.json {
        return Ok(to_pretty(&report));
    }
    Ok(format!(
        "r: {}\ntheta: {}\ns: {}\nc_R: {}\nc_M: {}\ncoeff_ratios: {}\nequal: {}\nordering_holds: {}\n",
        fmt12(report.pq.r()),
        fmt12(report.pq.theta()),
        report.s,
        fmt12_list(&report.c_r),
        fmt12_list(&report.c_m),
        fmt12_list(&report.coeff_ratios),
        report.equal,
        report.ordering_holds,
    ))
}

fn run_ratio_table(args: &RatioTableArgs) -> Result<String, Error> {
    if args.s == 0 {
        return Err(Error::Domain("ratio-table needs --s >= 1".into()));
    }
    let table = compare::ratio_table(args.s);
    if args.json {
        return Ok(to_pretty(&table));
    }
    let header: Vec<String> = (0..args.s).map(|i| format!("i{i}")).collect();
    let mut out = format!("theta,{}\n", header.join(","));
    for row in &table.rows {
        out.push_str(&format!("{},{}\n", fmt12(row.theta), fmt12_list(&row.ratios)));
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct FactorDocument {
    f: Polynomial,
    positivity: crate::poly::Positivity,
    #[serde(flatten)]
    factorization: composer::Factorization,
}

fn run_factor(args: &FactorArgs) -> Result<String, Error> {
    let f: Polynomial = args.f.parse()?;
    let factorization = composer::factor(&f)?;
    let positivity = f.classify_positivity()?;
    if args.json {
        return Ok(to_pretty(&FactorDocument {
            f,
            positivity,
            factorization,
        }));
    }
    let mut out = format!("f: {}\npositivity: {}\n", fmt12_list(f.coeffs()), serde_plain(&positivity));
    for lf in &factorization.linear_factors {
        out.push_str(&format!(
            "linear: root {} multiplicity {}\n",
            fmt12(lf.root),
            lf.multiplicity
        ));
    }
    for qf in &factorization.quadratic_factors {
        out.push_str(&format!(
            "quadratic: r {} theta {} multiplicity {}\n",
            fmt12(qf.quadratic.r()),
            fmt12(qf.quadratic.theta()),
            qf.multiplicity
        ));
    }
    out.push_str(&format!(
        "residual_error: {}\n",
        fmt12(factorization.residual_error)
    ));
    Ok(out)
}

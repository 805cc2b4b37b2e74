//! Command-line front end: every experiment of the library as a subcommand
//! emitting CSV or JSON.
//!
//! Exit codes: 0 on success, 1 when a certification or assertion fails,
//! 2 on usage or parameter errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use lagmp::laguerre::{monic_coeffs, LaguerreParams};
use lagmp::lattice_paths::path_table_recursion;
use lagmp::marchenko_pastur::{
    f_c_minus, fixed_point_residual, generating_fn, mgf_domain_sup, moment, quadrature_moment,
};
use lagmp::power_sums::{certify_theorem2, newton_power_sums};
use lagmp::random_matrix::{
    esd_moment_mc, exact_rademacher_expectation, mc_expected_charpoly, EntryLaw, Normalization,
};
use lagmp::rational::{approx_rational, parse_rational, rat_int, to_f64};
use lagmp::spectral::{convergence_table, roots};

/// Denominator cap for `--alpha-real`: the float is replaced by the last
/// continued-fraction convergent with denominator at most this value.
const REAL_ALPHA_MAX_DENOMINATOR: u64 = 1_000_000;

/// Default cap on `k` for the symbolic certification (term count grows fast).
const DEFAULT_K_LIMIT: u32 = 10;

#[derive(Parser)]
#[command(name = "lagmp", version, about = "Laguerre root power sums and the Marchenko-Pastur law")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct AlphaArg {
    /// Parameter alpha as an exact rational, e.g. `-1/2` or `3`.
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    alpha: Option<BigRational>,
    /// Parameter alpha as a float, converted through a continued-fraction
    /// approximation with denominator at most 10^6.
    #[arg(long, conflicts_with = "alpha", allow_hyphen_values = true)]
    alpha_real: Option<f64>,
}

impl AlphaArg {
    fn resolve(&self) -> Result<BigRational, CliError> {
        match (&self.alpha, self.alpha_real) {
            (Some(a), _) => Ok(a.clone()),
            (None, Some(x)) => approx_rational(x, REAL_ALPHA_MAX_DENOMINATOR)
                .map_err(|e| CliError::Usage(e.to_string())),
            (None, None) => Err(CliError::Usage(
                "either --alpha or --alpha-real is required".into(),
            )),
        }
    }
}

fn parse_rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Numeric roots of one Laguerre polynomial (zero multiplicities and
    /// complex pairs included).
    Roots {
        /// Degree p >= 1.
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        alpha: AlphaArg,
    },
    /// Exact root power sums M(1..k_max) via Newton's identities.
    PowerSums {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        alpha: AlphaArg,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
    /// Certify the homogeneous leading terms of the symbolic power sum
    /// against the Narayana closed form.
    CertifyTheorem2 {
        /// Power-sum order to certify.
        #[arg(long)]
        k: u32,
        /// Cap on k (symbolic term count grows quickly).
        #[arg(long, default_value_t = DEFAULT_K_LIMIT)]
        k_limit: u32,
    },
    /// Legal lattice-path counts b_j(k,l) from the splitting recursion.
    Paths {
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        #[arg(long, default_value_t = 3)]
        l_max: u32,
    },
    /// Marchenko-Pastur moments: exact closed form against quadrature.
    MpMoments {
        /// Ratio parameter c > -1, as an exact rational.
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        c: BigRational,
        #[arg(long, default_value_t = 8)]
        k_max: u32,
    },
    /// Empirical moments of normalized Laguerre roots against the MP
    /// moments, for alpha_p = round(c p).
    Converge {
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        c: BigRational,
        /// Degrees to evaluate, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
        p_list: Vec<u64>,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
    },
    /// Fixed-point diagnostics of the moment generating function.
    FixedPoint {
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        c: BigRational,
        /// Number of grid points on [0, sup).
        #[arg(long, default_value_t = 100)]
        grid: u32,
    },
    /// Empirical spectral moments of XX^T under both normalizations.
    WishartEsd {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "gaussian")]
        law: EntryLaw,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Expected characteristic polynomial of XX^T against the monic
    /// Laguerre polynomial with parameter n - p.
    FgIdentity {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// Average exactly over all sign matrices (needs p*n <= 16).
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value = "gaussian")]
        law: EntryLaw,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CliError {
    /// Bad parameters: exit code 2.
    Usage(String),
    /// A checked identity failed or a computation lost accuracy: exit 1.
    Assertion(String),
    /// Output could not be written: exit 1.
    Io(std::io::Error),
}

impl From<lagmp::Error> for CliError {
    fn from(e: lagmp::Error) -> Self {
        match e {
            lagmp::Error::CertificationFailed { .. } => CliError::Assertion(e.to_string()),
            lagmp::Error::QuadratureAccuracy { .. } => CliError::Assertion(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli.command, cli.format) {
        Ok(report) => report,
        Err(e) => return fail(e),
    };
    match emit(&cli.out, &report) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    match e {
        CliError::Usage(msg) => {
            eprintln!("parameter error: {msg}");
            ExitCode::from(2)
        }
        CliError::Assertion(msg) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        CliError::Io(e) => {
            eprintln!("io error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, report: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, report)?,
        None => print!("{report}"),
    }
    Ok(())
}

fn json_line(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
    s.push('\n');
    s
}

fn run(command: &Command, format: Format) -> Result<String, CliError> {
    match command {
        Command::Roots { p, alpha } => {
            if *p < 1 {
                return Err(CliError::Usage("roots need p >= 1".into()));
            }
            let alpha = alpha.resolve()?;
            let spectrum = roots(&LaguerreParams::new(*p, alpha.clone()));
            match format {
                Format::Csv => {
                    let mut out = String::from("kind,re,im\n");
                    for _ in 0..spectrum.zero_multiplicity {
                        out.push_str("zero,0,0\n");
                    }
                    for r in &spectrum.real_roots {
                        let _ = writeln!(out, "real,{r},0");
                    }
                    for (re, im) in &spectrum.complex_roots {
                        let _ = writeln!(out, "complex,{re},{im}");
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(json!({
                    "p": p,
                    "alpha": alpha.to_string(),
                    "zero_multiplicity": spectrum.zero_multiplicity,
                    "real_roots": spectrum.real_roots,
                    "complex_roots": spectrum.complex_roots,
                }))),
            }
        }
        Command::PowerSums { p, alpha, k_max } => {
            if *p < 1 || *k_max < 1 {
                return Err(CliError::Usage("power sums need p >= 1 and k_max >= 1".into()));
            }
            let alpha = alpha.resolve()?;
            let table = newton_power_sums(&LaguerreParams::new(*p, alpha.clone()), *k_max as usize);
            match format {
                Format::Csv => {
                    let mut out = String::from("k,power_sum\n");
                    for k in 1..=*k_max as usize {
                        let _ = writeln!(out, "{k},{}", table.m(k));
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(json!({
                    "p": p,
                    "alpha": alpha.to_string(),
                    "power_sums": table.values().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                }))),
            }
        }
        Command::CertifyTheorem2 { k, k_limit } => {
            if *k < 1 || k > k_limit {
                return Err(CliError::Usage(format!(
                    "certification needs 1 <= k <= {k_limit} (raise --k-limit to go further)"
                )));
            }
            let cert = certify_theorem2(*k)?;
            match format {
                Format::Csv => {
                    let mut out = String::from("part,p_exp,q_exp,coeff\n");
                    for t in &cert.leading_terms {
                        let _ = writeln!(out, "leading,{},{},{}", t.p_exp, t.q_exp, t.coeff);
                    }
                    for t in &cert.remainder_terms {
                        let _ = writeln!(out, "remainder,{},{},{}", t.p_exp, t.q_exp, t.coeff);
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(
                    serde_json::to_value(&cert).expect("certificate serializes"),
                )),
            }
        }
        Command::Paths { k_max, l_max } => {
            if *k_max < 1 || *l_max < 1 {
                return Err(CliError::Usage("paths need k_max >= 1 and l_max >= 1".into()));
            }
            let table = path_table_recursion(*k_max, *l_max);
            match format {
                Format::Csv => Ok(table.to_csv()),
                Format::Json => {
                    let mut rows = Vec::new();
                    for k in 1..=*k_max {
                        for l in 1..=*l_max {
                            for j in 1..=k {
                                rows.push(json!({
                                    "k": k, "l": l, "j": j,
                                    "count": table.count(k, l, j).to_string(),
                                }));
                            }
                        }
                    }
                    Ok(json_line(json!({ "counts": rows })))
                }
            }
        }
        Command::MpMoments { c, k_max } => {
            if *c <= rat_int(-1) {
                return Err(CliError::Usage(format!("mp moments need c > -1, got {c}")));
            }
            let c_f = to_f64(c);
            let law = lagmp::marchenko_pastur::mp_law(c_f)?;
            let mut rows = Vec::new();
            for k in 0..=*k_max {
                let closed = moment(c, k);
                let quad = quadrature_moment(c_f, k)?;
                rows.push((k, closed.to_string(), quad, (to_f64(&closed) - quad).abs()));
            }
            match format {
                Format::Csv => {
                    let mut out = String::from("k,closed_form,quadrature,abs_diff\n");
                    for (k, closed, quad, diff) in &rows {
                        let _ = writeln!(out, "{k},{closed},{quad},{diff}");
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(json!({
                    "c": c.to_string(),
                    "law": law,
                    "moments": rows.iter().map(|(k, closed, quad, diff)| json!({
                        "k": k, "closed_form": closed, "quadrature": quad, "abs_diff": diff,
                    })).collect::<Vec<_>>(),
                }))),
            }
        }
        Command::Converge { c, p_list, k_max } => {
            if p_list.is_empty() {
                return Err(CliError::Usage("converge needs at least one degree".into()));
            }
            let rows = convergence_table(c, p_list, *k_max)?;
            match format {
                Format::Csv => {
                    let mut out =
                        String::from("p,alpha,k,empirical_moment,mp_moment,abs_error\n");
                    for r in &rows {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{},{}",
                            r.p, r.alpha, r.k, r.empirical_moment, r.mp_moment, r.abs_error
                        );
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(json!({
                    "c": c.to_string(),
                    "rows": rows,
                }))),
            }
        }
        Command::FixedPoint { c, grid } => {
            if *grid < 2 {
                return Err(CliError::Usage("fixed point needs at least 2 grid points".into()));
            }
            let c_f = to_f64(c);
            if c_f <= -1.0 {
                return Err(CliError::Usage(format!("fixed point needs c > -1, got {c}")));
            }
            let sup = mgf_domain_sup(c_f);
            let mut rows = Vec::new();
            for i in 0..*grid {
                let z = 0.99 * sup * i as f64 / (*grid - 1) as f64;
                let xi = f_c_minus(c_f, z)?;
                let residual = fixed_point_residual(c_f, z, xi);
                let mgf = generating_fn(c_f, z)?;
                let identity_residual = mgf - ((c_f + 1.0) * z * xi + 1.0);
                rows.push((z, xi, residual, mgf, identity_residual));
            }
            match format {
                Format::Csv => {
                    let mut out =
                        String::from("z,f_c_minus,residual,mgf,identity_residual\n");
                    for (z, xi, res, mgf, idres) in &rows {
                        let _ = writeln!(out, "{z},{xi},{res},{mgf},{idres}");
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(json!({
                    "c": c.to_string(),
                    "rows": rows.iter().map(|(z, xi, res, mgf, idres)| json!({
                        "z": z, "f_c_minus": xi, "residual": res,
                        "mgf": mgf, "identity_residual": idres,
                    })).collect::<Vec<_>>(),
                }))),
            }
        }
        Command::WishartEsd {
            p,
            n,
            law,
            trials,
            k_max,
            seed,
        } => {
            if *p < 1 || *n < 1 || *trials < 1 || *k_max < 1 {
                return Err(CliError::Usage(
                    "wishart esd needs p, n, trials, k_max >= 1".into(),
                ));
            }
            let by_p = esd_moment_mc(*p, *n, *law, *trials, *k_max, *seed, Normalization::ByP);
            let by_n = esd_moment_mc(*p, *n, *law, *trials, *k_max, *seed, Normalization::ByN);
            let c = (*n as f64 - *p as f64) / *p as f64;
            let a = *p as f64 / *n as f64;
            let reference = |norm: Normalization, k: u32| match norm {
                Normalization::ByP => lagmp::marchenko_pastur::moment_f64(c, k),
                Normalization::ByN => lagmp::marchenko_pastur::moment_tilde_f64(a, k),
            };
            match format {
                Format::Csv => {
                    let mut out = String::from("normalization,k,mean,stderr,reference,rel_error\n");
                    for (name, norm, rows) in
                        [("p", Normalization::ByP, &by_p), ("n", Normalization::ByN, &by_n)]
                    {
                        for r in rows {
                            let reference = reference(norm, r.k);
                            let _ = writeln!(
                                out,
                                "{name},{},{},{},{reference},{}",
                                r.k,
                                r.mean,
                                r.stderr,
                                (r.mean - reference).abs() / reference.abs()
                            );
                        }
                    }
                    Ok(out)
                }
                Format::Json => Ok(json_line(json!({
                    "p": p, "n": n, "law": law.to_string(),
                    "trials": trials, "seed": seed,
                    "by_p": by_p, "by_n": by_n,
                }))),
            }
        }
        Command::FgIdentity {
            p,
            n,
            exact,
            law,
            trials,
            seed,
        } => {
            if *n < *p || *p < 1 {
                return Err(CliError::Usage("fg identity needs n >= p >= 1".into()));
            }
            let reference = monic_coeffs(&LaguerreParams::new(
                *p as u64,
                rat_int(*n as i64 - *p as i64),
            ));
            if *exact {
                let expectation = exact_rademacher_expectation(*p, *n)?;
                let matches = expectation == reference;
                let report = match format {
                    Format::Csv => {
                        let mut out = String::from("degree,expected,computed,match\n");
                        for i in 0..=*p {
                            let e = reference.coeff(i);
                            let g = expectation.coeff(i);
                            let _ = writeln!(out, "{i},{e},{g},{}", e == g);
                        }
                        out
                    }
                    Format::Json => json_line(json!({
                        "p": p, "n": n, "match": matches,
                        "expected": (0..=*p).map(|i| reference.coeff(i).to_string()).collect::<Vec<_>>(),
                        "computed": (0..=*p).map(|i| expectation.coeff(i).to_string()).collect::<Vec<_>>(),
                    })),
                };
                if !matches {
                    // still emit the evidence on stdout before failing
                    print!("{report}");
                    return Err(CliError::Assertion(format!(
                        "exact expectation differs from the monic Laguerre polynomial at (p, n) = ({p}, {n})"
                    )));
                }
                Ok(report)
            } else {
                if *trials < 100 {
                    return Err(CliError::Usage("monte carlo needs at least 100 trials".into()));
                }
                let estimate = mc_expected_charpoly(*p, *n, *law, *trials, *seed);
                match format {
                    Format::Csv => {
                        let z = estimate.z_scores();
                        let mut out = String::from("degree,mean,stderr,reference,z_score\n");
                        for (i, z_i) in z.iter().enumerate() {
                            let _ = writeln!(
                                out,
                                "{i},{},{},{},{z_i}",
                                estimate.coeff_means[i],
                                estimate.coeff_stderrs[i],
                                reference.coeff(i),
                            );
                        }
                        Ok(out)
                    }
                    Format::Json => Ok(json_line(estimate.to_json())),
                }
            }
        }
    }
}

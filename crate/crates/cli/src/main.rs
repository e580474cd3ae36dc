use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use ramanujan::derive::{derive, verify_certificate, CertificateFile, Class, SeriesCertificate};
use ramanujan::identify::{identify_decimal, IdentifyError, DEFAULT_HEIGHT};
use ramanujan::modeq::{builtin, registry_scan, ModularEquation, RegistryError};
use ramanujan::piengine::{convergence_report, format_digits, pi_from_certificate};

/// Digits checked before `pi` trusts a certificate.
const PRECHECK_DIGITS: usize = 100;
const LINE_WIDTH: usize = 64;

#[derive(Parser)]
#[command(name = "ramanujan", version, about = "Derive and check Ramanujan-type series for 1/π from modular equations")]
struct Cli {
    /// Directory of .modeq files; the built-in equations are used when unset.
    #[arg(long, global = true, env = "RAMANUJAN_REGISTRY")]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive a series certificate from a registry equation.
    Derive {
        name: String,
        #[arg(long, default_value = "alternating")]
        class: Class,
        /// Defaults to NAME-CLASS.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every identity in a certificate and sum its series.
    Verify {
        cert: PathBuf,
        #[arg(long, default_value_t = 1000)]
        digits: usize,
    },
    /// Compute digits of π from a certificate.
    Pi {
        cert: PathBuf,
        #[arg(long, default_value_t = 1000)]
        digits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the verification step.
        #[arg(long)]
        force: bool,
    },
    /// Recognise a decimal value as an element of a quadratic tower.
    Identify {
        #[arg(long, allow_hyphen_values = true)]
        re: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        im: String,
        /// Comma-separated radicands, e.g. "3,89".
        #[arg(long, default_value = "")]
        radicands: String,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
    },
    /// List the registry equations.
    List,
    /// Compare convergence rates of every derivable series.
    Report {
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    /// A check or computation failed.
    Check(String),
    /// Bad input, missing equation, unreadable file.
    Usage(String),
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let registry = cli.registry.as_deref();
    let result = match cli.command {
        Command::Derive { name, class, out } => cmd_derive(registry, &name, class, out),
        Command::Verify { cert, digits } => cmd_verify(&cert, digits),
        Command::Pi { cert, digits, out, force } => cmd_pi(&cert, digits, out.as_deref(), force),
        Command::Identify { re, im, radicands, height } => cmd_identify(&re, &im, &radicands, height),
        Command::List => cmd_list(registry),
        Command::Report { json } => cmd_report(registry, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_equations(registry: Option<&Path>) -> Result<(Vec<ModularEquation>, Vec<RegistryError>), Failure> {
    match registry {
        None => Ok((builtin(), Vec::new())),
        Some(dir) => registry_scan(dir).map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn timestamp() -> u64 {
    if let Some(t) = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok()) {
        return t;
    }
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn read_certificate(path: &Path) -> Result<SeriesCertificate, Failure> {
    let src = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let file = CertificateFile::from_json(&src).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(file.certificate)
}

fn write(path: &Path, contents: &str) -> CmdResult {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_derive(registry: Option<&Path>, name: &str, class: Class, out: Option<PathBuf>) -> CmdResult {
    let (eqs, _) = load_equations(registry)?;
    let eq = eqs.into_iter().find(|e| e.name == name).ok_or_else(|| Failure::Usage(format!("equation not found: {name}")))?;
    let cert = derive(&eq, class).map_err(|e| Failure::Check(format!("{}: {e}", e.name())))?;
    let out = out.unwrap_or_else(|| PathBuf::from(format!("{name}-{class}.json")));
    write(&out, &CertificateFile::new(cert.clone(), timestamp()).to_json())?;
    println!("{}", cert.identity());
    if cert.rational_form.is_none() {
        eprintln!("note: NonRationalSeries: z is irrational, so the series has no rational normal form");
    }
    eprintln!("wrote {}", out.display());
    Ok(())
}

fn cmd_verify(path: &Path, digits: usize) -> CmdResult {
    let cert = read_certificate(path)?;
    let report = verify_certificate(&cert, digits);
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed checks: {}", report.failed().join(", "))))
    }
}

fn cmd_pi(path: &Path, digits: usize, out: Option<&Path>, force: bool) -> CmdResult {
    let cert = read_certificate(path)?;
    if !force {
        let report = verify_certificate(&cert, PRECHECK_DIGITS.min(digits.max(1)));
        if !report.passed() {
            return Err(Failure::Check(format!("certificate fails {} (use --force to sum it anyway)", report.failed().join(", "))));
        }
    }
    let pi = pi_from_certificate(&cert, digits).map_err(|e| Failure::Check(e.to_string()))?;
    let text = format_digits(&pi.text, LINE_WIDTH);
    match out {
        Some(p) => {
            write(p, &text)?;
            eprintln!("wrote {} digits from {} terms to {}", pi.certified, pi.terms, p.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_radicands(s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| Failure::Usage(format!("bad radicand {t:?}"))))
        .collect()
}

fn cmd_identify(re: &str, im: &str, radicands: &str, height: u64) -> CmdResult {
    let radicands = parse_radicands(radicands)?;
    match identify_decimal(re, im, &radicands, height) {
        Ok(x) => {
            println!("{x}");
            Ok(())
        }
        Err(IdentifyError::NoMatch { .. }) => {
            println!("no match");
            Err(Failure::Check(format!("no match of height ≤ {height} over {radicands:?}")))
        }
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn cmd_list(registry: Option<&Path>) -> CmdResult {
    let (eqs, errors) = load_equations(registry)?;
    println!("{:<20} {:>3} {:>3} {:>4} {:>3} {:>6}", "name", "l", "s", "d", "k", "terms");
    for e in &eqs {
        println!("{:<20} {:>3} {:>3} {:>4} {:>3} {:>6}", e.name, e.level, e.s, e.degree, e.k, e.poly.num_terms());
    }
    if !errors.is_empty() {
        println!("\nerrors:");
        for e in &errors {
            println!("  {e}");
        }
    }
    Ok(())
}

fn cmd_report(registry: Option<&Path>, json: bool) -> CmdResult {
    let (eqs, _) = load_equations(registry)?;
    let certs: Vec<SeriesCertificate> = eqs.iter().flat_map(|eq| [Class::Alternating, Class::Positive].map(|c| derive(eq, c).ok())).flatten().collect();
    let report = convergence_report(&certs);
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(())
}

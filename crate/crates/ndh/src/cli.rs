//! Command-line surface.
//!
//! Exit codes: 0 success, 1 usage or internal error, 2 classification came
//! back unknown, 3 a certificate failed verification.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::cache::Cache;
use crate::cert::chain::{shipped_chains, verify_order_chain};
use crate::cert::{Classification, Classifier};
use crate::config::Config;
use crate::document::{decode, decode_chain, document_from_analysis, encode, verify_document};
use crate::error::{Error, Result};
use crate::families::{
    abc_audit, family_x41, fermat_report, mersenne_report, ndh_scan, primes_48k41, sum_scan,
    AbcExtensions, MERSENNE_EXPONENTS,
};
use crate::smooth::enumerate_smooth;
use crate::table::{abc_csv, enumerate_csv, scan_csv, scan_json, sums_csv};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Environment variable overriding the configured cache path.
pub const CACHE_ENV_VAR: &str = "NDH_CACHE_PATH";

#[derive(Debug, Parser)]
#[command(
    name = "ndh",
    version,
    about = "Decide which integers are differences of 3-smooth numbers, with machine-checkable certificates"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Path to a key = value configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Comma-separated modulus pool override.
    #[arg(long, global = true, value_delimiter = ',', value_name = "M,M,...")]
    pool: Vec<u64>,
    /// Power-value bit bound for bounded searches.
    #[arg(long, global = true, value_name = "BITS")]
    bound: Option<u32>,
    /// Worker threads for scans.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Classification cache file.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List 3-smooth numbers up to a value limit.
    Enumerate {
        #[arg(long, value_name = "VALUE")]
        limit: String,
        /// Output format: text or csv.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print every representation of n as a difference of 3-smooth numbers.
    Represent {
        n: String,
    },
    /// Classify n and report the per-case certificates.
    Classify {
        n: String,
        /// Write the certificate document to this path.
        #[arg(long, value_name = "PATH")]
        emit_cert: Option<PathBuf>,
    },
    /// Re-check a certificate document from scratch.
    Verify {
        path: PathBuf,
    },
    /// Classify a whole range and emit a table.
    Scan {
        #[arg(long)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        /// Output format: csv or json.
        #[arg(long, default_value = "csv")]
        format: String,
        /// Write the table here instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Censuses over structured families.
    Families {
        #[command(subcommand)]
        family: FamilyCommand,
    },
    /// Audit abc triples over 3-smooth members plus optional extensions.
    Abc {
        /// Largest member value to consider.
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        /// Extensions: any of ndh, p48k41, fermat, mersenne.
        #[arg(long, value_delimiter = ',', value_name = "SET,...")]
        extend: Vec<String>,
        /// Write the table here instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Verify order chains: the shipped fixtures, or one from a file.
    ChainVerify {
        path: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum FamilyCommand {
    /// Classify the five Fermat primes.
    Fermat,
    /// Classify 2^p - 1 for prime-yielding exponents.
    Mersenne {
        /// Comma-separated exponents; default is the full desk-scale list.
        #[arg(long, value_delimiter = ',', value_name = "P,P,...")]
        exponents: Vec<u32>,
    },
    /// Classify 2^e * 41 or 3^e * 41 for e up to a limit.
    #[command(name = "x41")]
    X41 {
        /// pow2 or pow3.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
    },
    /// Classify the first primes congruent to 41 mod 48.
    #[command(name = "p48k41")]
    P48k41 {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Pairwise sums over a prime family, with smoothness verdicts.
    Sums {
        /// fermat or mersenne.
        #[arg(long)]
        family: String,
    },
}

/// Parse argv and dispatch; never panics, never exits by itself.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}

fn resolve_config(g: &GlobalOpts) -> Result<Config> {
    let mut cfg = match &g.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    if let Ok(path) = std::env::var(CACHE_ENV_VAR) {
        if !path.is_empty() {
            cfg.cache_path = Some(PathBuf::from(path));
        }
    }
    if !g.pool.is_empty() {
        cfg.modulus_pool = g.pool.clone();
    }
    if let Some(bound) = g.bound {
        cfg.exponent_bound = bound;
    }
    if let Some(jobs) = g.jobs {
        cfg.jobs = jobs;
    }
    if let Some(cache) = &g.cache {
        cfg.cache_path = Some(cache.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_n(s: &str) -> Result<BigUint> {
    let n: BigUint = s
        .parse()
        .map_err(|_| Error::Config(format!("not a positive decimal integer: {s:?}")))?;
    if n == BigUint::from(0u32) {
        return Err(Error::Config("n must be positive".into()));
    }
    Ok(n)
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Document(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let cfg = resolve_config(&cli.global)?;
    match cli.command {
        Command::Enumerate { limit, format } => {
            let limit = parse_n(&limit)?;
            let values = enumerate_smooth(&limit);
            match format.as_str() {
                "text" => {
                    for s in &values {
                        println!("{} = 2^{} * 3^{}", s.value(), s.two_exp(), s.three_exp());
                    }
                }
                "csv" => print!("{}", enumerate_csv(&values)?),
                other => {
                    return Err(Error::Config(format!(
                        "unknown format {other:?}, expected text or csv"
                    )))
                }
            }
            Ok(EXIT_OK)
        }
        Command::Represent { n } => {
            let n = parse_n(&n)?;
            let analysis = Classifier::new(cfg)?.analyze(&n)?;
            match &analysis.classification {
                Classification::Representable { reps, completeness } => {
                    for rep in reps {
                        println!("{n} = {} - {}", rep.minuend().value(), rep.subtrahend().value());
                    }
                    println!("{}", completeness_line(completeness));
                    Ok(EXIT_OK)
                }
                Classification::Ndh { .. } => {
                    println!("{n} has no representation: certified non-difference");
                    Ok(EXIT_OK)
                }
                Classification::Unknown { searched_bound } => {
                    println!("{n}: no representation found up to 2^{searched_bound}; undecided");
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Classify { n, emit_cert } => {
            let n = parse_n(&n)?;
            let doc = classify_with_cache(&n, &cfg)?;
            println!("{}: {}", doc.n, status_line(&doc.status));
            for case in &doc.cases {
                let sols: Vec<String> = case
                    .solutions
                    .iter()
                    .map(|[m, s]| format!("{m}-{s}"))
                    .collect();
                println!(
                    "  divisor {} form {} [{}] {}",
                    case.divisor,
                    case.form,
                    case.kind,
                    if sols.is_empty() {
                        "no solutions".to_string()
                    } else {
                        sols.join(" ")
                    }
                );
            }
            if let Some(path) = emit_cert {
                std::fs::write(&path, encode(&doc))
                    .map_err(|e| Error::Document(format!("cannot write {}: {e}", path.display())))?;
            }
            if doc.status.kind == "unknown" {
                Ok(EXIT_UNKNOWN)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Verify { path } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))?;
            let doc = decode(&text)?;
            if verify_document(&doc)? {
                println!("OK: {} is {}", doc.n, status_line(&doc.status));
                Ok(EXIT_OK)
            } else {
                eprintln!("verification failed: {}", path.display());
                Ok(EXIT_VERIFY_FAILED)
            }
        }
        Command::Scan {
            lo,
            hi,
            format,
            out,
        } => {
            let rows = ndh_scan(lo, hi, &cfg)?;
            let text = match format.as_str() {
                "csv" => scan_csv(&rows)?,
                "json" => scan_json(&rows),
                other => {
                    return Err(Error::Config(format!(
                        "unknown format {other:?}, expected csv or json"
                    )))
                }
            };
            write_or_print(&text, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Families { family } => run_family(family, &cfg),
        Command::Abc { limit, extend, out } => {
            let mut ext = AbcExtensions::default();
            for token in &extend {
                match token.as_str() {
                    "ndh" => ext.ndh_numbers = true,
                    "p48k41" => ext.primes_48k41 = 10,
                    "fermat" => ext.fermat = true,
                    "mersenne" => ext.mersenne = true,
                    other => {
                        return Err(Error::Config(format!(
                            "unknown extension {other:?}, expected ndh, p48k41, fermat, or mersenne"
                        )))
                    }
                }
            }
            let triples = abc_audit(&ext, limit)?;
            write_or_print(&abc_csv(&triples)?, out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::ChainVerify { path } => match path {
            None => {
                for chain in shipped_chains() {
                    if !verify_order_chain(&chain) {
                        eprintln!("shipped chain for target {} failed", chain.t);
                        return Ok(EXIT_VERIFY_FAILED);
                    }
                    println!(
                        "chain for target {} anchored at ({}, {}): OK",
                        chain.t, chain.anchor.0, chain.anchor.1
                    );
                }
                Ok(EXIT_OK)
            }
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))?;
                let chain = decode_chain(&text)?;
                if verify_order_chain(&chain) {
                    println!(
                        "chain for target {} anchored at ({}, {}): OK",
                        chain.t, chain.anchor.0, chain.anchor.1
                    );
                    Ok(EXIT_OK)
                } else {
                    eprintln!("chain verification failed: {}", path.display());
                    Ok(EXIT_VERIFY_FAILED)
                }
            }
        },
    }
}

fn completeness_line(c: &crate::repr::CompletenessStatus) -> String {
    match c {
        crate::repr::CompletenessStatus::Proven => "complete (certified)".to_string(),
        crate::repr::CompletenessStatus::UpToBound(b) => format!("complete up to 2^{b}"),
    }
}

fn status_line(status: &crate::document::StatusDoc) -> String {
    match (status.kind.as_str(), status.proven, status.bound.as_deref()) {
        ("representable", Some(true), _) => "representable (complete, certified)".to_string(),
        ("representable", _, Some(b)) => format!("representable (complete up to 2^{b})"),
        ("unknown", _, Some(b)) => format!("unknown (searched to 2^{b})"),
        (kind, _, _) => kind.to_string(),
    }
}

fn classify_with_cache(n: &BigUint, cfg: &Config) -> Result<crate::document::CertificateDocument> {
    let fresh = |cfg: &Config| -> Result<crate::document::CertificateDocument> {
        let analysis = Classifier::new(cfg.clone())?.analyze(n)?;
        Ok(document_from_analysis(&analysis, cfg))
    };
    match &cfg.cache_path {
        None => fresh(cfg),
        Some(path) => {
            let mut cache = Cache::load(path)?;
            let key_n = n.to_string();
            let hash = cfg.hash();
            if let Some(hit) = cache.get(&key_n, &hash) {
                return Ok(hit.clone());
            }
            let doc = fresh(cfg)?;
            cache.put(doc.clone());
            cache.save(path)?;
            Ok(doc)
        }
    }
}

fn run_family(family: FamilyCommand, cfg: &Config) -> Result<i32> {
    match family {
        FamilyCommand::Fermat => {
            println!("member,status,reps");
            for (p, c) in fermat_report(cfg)? {
                println!("{p},{},{}", c.status_str(), reps_cell(&c));
            }
        }
        FamilyCommand::Mersenne { exponents } => {
            let exponents = if exponents.is_empty() {
                MERSENNE_EXPONENTS.to_vec()
            } else {
                exponents
            };
            println!("p,member,status,reps");
            for (p, value, c) in mersenne_report(&exponents, cfg)? {
                println!("{p},{value},{},{}", c.status_str(), reps_cell(&c));
            }
        }
        FamilyCommand::X41 { kind, max_exp } => {
            let kind = kind.parse()?;
            println!("n,status,reps");
            for (n, c) in family_x41(kind, max_exp, cfg)? {
                println!("{n},{},{}", c.status_str(), reps_cell(&c));
            }
        }
        FamilyCommand::P48k41 { count } => {
            println!("p,status,reps");
            for (p, c) in primes_48k41(count, cfg)? {
                println!("{p},{},{}", c.status_str(), reps_cell(&c));
            }
        }
        FamilyCommand::Sums { family } => {
            print!("{}", sums_csv(&sum_scan(family.parse()?))?);
        }
    }
    Ok(EXIT_OK)
}

fn reps_cell(c: &Classification) -> String {
    match c {
        Classification::Representable { reps, .. } => reps
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(";"),
        _ => String::new(),
    }
}

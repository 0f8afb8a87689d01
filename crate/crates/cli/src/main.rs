use std::num::ParseIntError;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::arith::primes_up_to;
use hecke_core::dimformulas::{dim_cusp_forms, CharKind, SpaceLabel};
use hecke_core::ffpoly::{count_split_polys, split_probability};
use hecke_core::scan::{build_table, format_table, scan_level, validate_level, Cache, LPolicy, ScanConfig, ScanReport};
use hecke_core::{Error, IntPoly};
use num_traits::ToPrimitive;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Hecke polynomials modulo small primes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of S_k(Gamma_0(N), chi).
    Dim(SpaceArgs),
    /// Characteristic polynomial of T_l on S_k(Gamma_0(N), chi).
    Charpoly {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Scan weights 2..=kmax at one level for complete splitting mod p.
    Scan {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        common: Common,
    },
    /// For each level, the primes p modulo which every T_(l,k) splits.
    Table {
        /// Comma-separated levels [default: 1 and the primes below 20]
        #[arg(long)]
        levels: Option<List>,
        #[arg(long, default_value = "2,3,5,7,11")]
        primes: List,
        #[command(flatten)]
        scan: ScanArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Number and proportion of monic degree-d polynomials over F_p that split.
    Heuristic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dmax: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct SpaceArgs {
    #[arg(long)]
    level: u64,
    #[arg(long)]
    weight: u32,
    #[arg(long, value_enum, default_value_t = Character::Trivial)]
    character: Character,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value_t = 30)]
    kmax: u32,
    /// Hecke primes: "sturm" or a comma-separated list
    #[arg(long, default_value = "sturm")]
    ell_policy: LPolicy,
    #[arg(long, value_enum, default_value_t = Character::Trivial)]
    character: Character,
    /// Worker threads (0 = all cores)
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Time budget in seconds for each (N, p) scan
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct Common {
    /// Directory of cached characteristic polynomials
    #[arg(long, env = "HECKE_CACHE_DIR")]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Comma-separated integers; the empty string is the empty list.
#[derive(Clone, Debug)]
struct List(Vec<u64>);

impl FromStr for List {
    type Err = ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect::<Result<_, _>>().map(List)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Character {
    Trivial,
    Legendre,
}

impl From<Character> for CharKind {
    fn from(c: Character) -> Self {
        match c {
            Character::Trivial => CharKind::Trivial,
            Character::Legendre => CharKind::Legendre,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_internal() => 2,
            _ => 1,
        }
    }
}

#[derive(Serialize)]
struct CharpolyReport {
    level: u64,
    chi: CharKind,
    weight: u32,
    ell: u64,
    coeffs: Vec<String>,
    poly: String,
}

#[derive(Serialize)]
struct HeuristicRow {
    d: u64,
    count: String,
    probability: String,
    approx: f64,
}

fn open_cache(common: &Common) -> Result<Cache, CliError> {
    Ok(match &common.cache {
        Some(dir) => Cache::with_dir(dir)?,
        None => Cache::in_memory(),
    })
}

fn scan_config(p: u64, args: &ScanArgs) -> Result<ScanConfig, CliError> {
    if args.kmax < 2 {
        return Err(CliError::Usage(format!("--kmax must be at least 2, got {}", args.kmax)));
    }
    let budget = match args.budget {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(CliError::Usage(format!("--budget must be a nonnegative number of seconds, got {s}")))
        }
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    Ok(ScanConfig {
        l_policy: args.ell_policy.clone(),
        workers: args.workers,
        budget,
        seed: args.seed,
        ..ScanConfig::new(p, args.kmax)
    })
}

fn emit<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value).map_err(Error::from)?)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Dim(space) => {
            let label = SpaceLabel::with_kind(space.level, space.weight, space.character.into())?;
            Ok(dim_cusp_forms(&label)?.to_string())
        }
        Command::Charpoly { space, ell, common } => {
            let label = SpaceLabel::with_kind(space.level, space.weight, space.character.into())?;
            let cache = open_cache(&common)?;
            let f: IntPoly = cache.charpoly(label, ell)?;
            let coeffs = f.to_decimal_strings();
            match common.format {
                Format::Text => Ok(format!("{f}\ncoeffs: [{}]", coeffs.join(", "))),
                Format::Json => emit(&CharpolyReport {
                    level: space.level,
                    chi: space.character.into(),
                    weight: space.weight,
                    ell,
                    coeffs,
                    poly: f.to_string(),
                }),
            }
        }
        Command::Scan { level, p, scan, common } => {
            let config = scan_config(p, &scan)?;
            let chi: CharKind = scan.character.into();
            validate_level(level, chi, p)?;
            let cache = open_cache(&common)?;
            let report = ScanReport::from(&scan_level(level, chi, &config, &cache)?);
            match common.format {
                Format::Json => emit(&report),
                Format::Text => Ok(scan_text(&report)),
            }
        }
        Command::Table { levels, primes, scan, common } => {
            let config = scan_config(0, &scan)?;
            let chi: CharKind = scan.character.into();
            let levels = levels.map(|l| l.0).unwrap_or_else(|| {
                let mut v = vec![1];
                v.extend(primes_up_to(20));
                v
            });
            let cache = open_cache(&common)?;
            let rows = build_table(&levels, &primes.0, chi, &config, &cache)?;
            match common.format {
                Format::Json => emit(&rows),
                Format::Text => Ok(format_table(&rows, chi, config.k_max).trim_end().to_string()),
            }
        }
        Command::Heuristic { p, dmax, format } => {
            let mut rows = Vec::new();
            for d in 0..=dmax {
                let prob = split_probability(p, d)?;
                rows.push(HeuristicRow {
                    d,
                    count: count_split_polys(p, d)?.to_string(),
                    probability: prob.to_string(),
                    approx: prob.to_f64().unwrap_or(0.0),
                });
            }
            match format {
                Format::Json => emit(&rows),
                Format::Text => {
                    let mut out = format!("d | split monic polynomials over F_{p} | proportion");
                    for r in &rows {
                        out.push_str(&format!("\n{} | {} | {} ({:.6})", r.d, r.count, r.probability, r.approx));
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn scan_text(r: &ScanReport) -> String {
    let mut out = format!(
        "level {} chi {} p {} l {} k <= {}\nall_split: {}\n",
        r.level, r.chi, r.p, r.l_policy, r.k_max, r.all_split
    );
    match &r.witness {
        Some(w) => out.push_str(&format!("witness: k = {}, l = {}, factor coeffs {:?}\n", w.k, w.l, w.factor_coeffs)),
        None => out.push_str("witness: none\n"),
    }
    for (ladder, period) in &r.periods {
        match period {
            Some(s) => out.push_str(&format!("period {ladder}: {s}\n")),
            None => out.push_str(&format!("period {ladder}: none detected\n")),
        }
    }
    for e in &r.ladder_exceptions {
        out.push_str(&format!("ladder restart: l = {}, k = {} ({:?})\n", e.ell, e.k, e.reason));
    }
    out.push_str(&format!("assertions checked: {}", r.assertions_checked));
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gasket_core::asymptotics::{
    level_weight_ratio, mean_moves, mean_moves_table, mean_moves_within, reference_table,
    renewal_exact, renewal_mc, MonteCarlo,
};
use gasket_core::decimal::{parts, ratio, round_significant};
use gasket_core::distance::{
    all_pairs_summary_with, bfs_distance, in_pool, sampled_apl_with, DistanceSummary, SampledApl,
    SummaryOptions, DEFAULT_ALL_PAIRS_CAP,
};
use gasket_core::network::{build_with_cap, export, ExportFormat, DEFAULT_BUILD_CAP};
use gasket_core::verify::{run_suite, Suite};
use gasket_core::word::coarsen_steps;
use gasket_core::Word;
use num_rational::BigRational;
use serde::Serialize;

use config::{FileConfig, Overrides, RunConfig, THREADS_ENV};

#[derive(Parser)]
#[command(
    name = "gasket",
    version,
    about = "Word-coded Sierpinski gasket networks"
)]
struct Cli {
    /// Worker threads (default: config file, then GASKET_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for sampled computations.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Plain key=value file with defaults for threads, seed, output and meta.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Write the run metadata JSON here (default: <output>.meta.json when --output is set).
    #[arg(long, global = true)]
    meta: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build G_t and export it.
    Generate {
        #[arg(long)]
        t: u32,
        #[arg(long, default_value = "edge-list-tsv")]
        format: String,
        #[arg(long, default_value_t = DEFAULT_BUILD_CAP)]
        max_t: u32,
    },
    /// Geodesic distance between two words of G_t; the root is spelled "-".
    Distance {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = Method::Bfs)]
        method: Method,
    },
    /// Average path length of G_t.
    Apl {
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Pairs drawn in sampled mode.
        #[arg(long, default_value_t = 100_000)]
        pairs: u64,
        /// Largest t allowed in exact mode.
        #[arg(long, default_value_t = DEFAULT_ALL_PAIRS_CAP)]
        max_t: u32,
        /// Also check pi_t = 3 pi_(t-1) + lambda_t + nu_t against G_(t-1).
        #[arg(long)]
        check_identity: bool,
    },
    /// Exact mean-move statistics as t,value_num,value_den,value_decimal.
    Alpha {
        #[arg(long, conflicts_with_all = ["from", "to"])]
        t: Option<usize>,
        #[arg(long, requires = "to")]
        from: Option<usize>,
        #[arg(long, requires = "from")]
        to: Option<usize>,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, value_enum, default_value_t = Quantity::Alpha)]
        quantity: Quantity,
    },
    /// Expected renewal count E(Y_t), divided by t unless --raw.
    Renewal {
        #[arg(long)]
        t: usize,
        #[arg(long, conflicts_with = "samples")]
        exact: bool,
        /// Monte Carlo sample count.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        raw: bool,
    },
    /// Mean moves per level, truncated to four decimals.
    Table {
        /// The reference levels t = 300..800, step 100.
        #[arg(long, conflicts_with_all = ["from", "to"])]
        paper: bool,
        #[arg(long, required_unless_present = "paper")]
        from: Option<usize>,
        #[arg(long, required_unless_present = "paper")]
        to: Option<usize>,
        #[arg(long, default_value_t = 1)]
        step: usize,
    },
    /// Run oracle suites; exit 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        tmax: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Generate { .. } => "generate",
            Command::Distance { .. } => "distance",
            Command::Apl { .. } => "apl",
            Command::Alpha { .. } => "alpha",
            Command::Renewal { .. } => "renewal",
            Command::Table { .. } => "table",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bfs,
    Symbolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    /// Mean of L over words of length t.
    Alpha,
    /// The same divided by t.
    PerLevel,
    /// Mean of L over all vertices of G_t.
    Kappa,
    /// Mean vertex level of G_t divided by t.
    Chi,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<gasket_core::Error> for Failure {
    fn from(e: gasket_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
struct Meta<'a> {
    command: &'a str,
    version: &'a str,
    seed: u64,
    threads: usize,
    elapsed_ms: u128,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let cfg = match resolve(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };

    let result = open_output(&cfg).and_then(|mut out| {
        let r = in_pool(Some(cfg.threads), || dispatch(&cli.command, &cfg, &mut out));
        out.flush()?;
        r
    });

    if let Some(path) = cfg.meta_path() {
        let meta = Meta {
            command: cli.command.name(),
            version: env!("CARGO_PKG_VERSION"),
            seed: cfg.seed,
            threads: cfg.threads,
            elapsed_ms: started.elapsed().as_millis(),
        };
        let json = serde_json::to_string(&meta).expect("plain struct");
        if let Err(e) = std::fs::write(&path, json + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn resolve(cli: &Cli) -> Result<RunConfig, String> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = Overrides {
        threads: cli.threads,
        seed: cli.seed,
        output: cli.output.clone(),
        meta: cli.meta.clone(),
    };
    RunConfig::resolve(flags, &file, std::env::var(THREADS_ENV).ok())
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write + Send>, Failure> {
    Ok(match &cfg.output {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn dispatch(cmd: &Command, cfg: &RunConfig, out: &mut dyn Write) -> Outcome {
    match *cmd {
        Command::Generate {
            t,
            ref format,
            max_t,
        } => generate(t, format, max_t, out),
        Command::Distance {
            t,
            ref from,
            ref to,
            method,
        } => distance(t, from, to, method, out),
        Command::Apl {
            t,
            mode,
            pairs,
            max_t,
            check_identity,
        } => match mode {
            Mode::Exact => apl_exact(t, max_t, check_identity, cfg, out),
            Mode::Sampled => {
                let net = build_with_cap(t, DEFAULT_BUILD_CAP)?;
                let s = sampled_apl_with(&net, pairs, cfg.seed, Some(cfg.threads))?;
                writeln!(out, "{}\n{}", SampledApl::CSV_HEADER, s.csv_row())?;
                Ok(())
            }
        },
        Command::Alpha {
            t,
            from,
            to,
            step,
            quantity,
        } => {
            let levels: Vec<usize> = match (t, from, to) {
                (Some(t), _, _) => vec![t],
                (None, Some(a), Some(b)) if a <= b && step >= 1 => (a..=b).step_by(step).collect(),
                _ => {
                    return Err(Failure::Usage(
                        "give --t, or --from <= --to with --step >= 1".into(),
                    ))
                }
            };
            alpha(&levels, quantity, out)
        }
        Command::Renewal {
            t,
            exact: _,
            samples,
            raw,
        } => renewal(t, samples, raw, cfg, out),
        Command::Table {
            paper,
            from,
            to,
            step,
        } => {
            let rows = if paper {
                reference_table()
            } else {
                mean_moves_table(from.unwrap_or(1), to.unwrap_or(1), step)?
            };
            writeln!(out, "t,alpha_bar_over_t")?;
            for r in rows {
                writeln!(out, "{},{}", r.t, r.truncated)?;
            }
            Ok(())
        }
        Command::Verify { ref suite, tmax } => {
            let suite: Suite = suite
                .parse()
                .map_err(|_| Failure::Usage(format!("unknown suite {suite:?}")))?;
            let results = run_suite(suite, tmax);
            for r in &results {
                writeln!(out, "{r}")?;
            }
            match results.iter().find(|r| !r.passed) {
                None => Ok(()),
                Some(r) => {
                    out.flush()?;
                    Err(Failure::Check(format!(
                        "verification failed: {}: {}",
                        r.name,
                        r.counterexample.as_deref().unwrap_or("")
                    )))
                }
            }
        }
    }
}

fn generate(t: u32, format: &str, max_t: u32, out: &mut dyn Write) -> Outcome {
    let format: ExportFormat = format.parse()?;
    let net = build_with_cap(t, max_t)?;
    export(&net, format, out)?;
    Ok(())
}

fn distance(t: u32, from: &str, to: &str, method: Method, out: &mut dyn Write) -> Outcome {
    let a = Word::parse(from)?;
    let b = Word::parse(to)?;
    for w in [&a, &b] {
        if w.len() > t as usize {
            return Err(gasket_core::Error::NotInNetwork {
                word: w.to_string(),
                t,
            }
            .into());
        }
    }
    let d = match method {
        Method::Symbolic => {
            if !b.is_empty() {
                return Err(Failure::Usage(
                    "symbolic method needs --to - (the root)".into(),
                ));
            }
            coarsen_steps(&a)
        }
        Method::Bfs => bfs_distance(&build_with_cap(t, DEFAULT_BUILD_CAP)?, &a, &b)?,
    };
    writeln!(out, "{d}")?;
    Ok(())
}

fn summary(t: u32, max_t: u32, cfg: &RunConfig) -> Result<DistanceSummary, Failure> {
    let net = build_with_cap(t, DEFAULT_BUILD_CAP)?;
    Ok(all_pairs_summary_with(
        &net,
        &SummaryOptions {
            threads: Some(cfg.threads),
            cap: max_t,
        },
    )?)
}

fn apl_exact(
    t: u32,
    max_t: u32,
    check_identity: bool,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Outcome {
    if t > max_t {
        return Err(Failure::Usage(format!(
            "t = {t} exceeds the exact all-pairs cap of {max_t}; use --mode sampled for larger networks"
        )));
    }
    let cur = summary(t, max_t, cfg)?;
    writeln!(out, "{}\n{}", DistanceSummary::CSV_HEADER, cur.csv_row())?;
    if check_identity {
        if t < 2 {
            return Err(Failure::Usage("--check-identity needs t >= 2".into()));
        }
        let prev = summary(t - 1, max_t, cfg)?;
        let rhs = &prev.total * 3u32 + &cur.to_root + &cur.cross_branch;
        if cur.total != rhs {
            out.flush()?;
            return Err(Failure::Check(format!(
                "identity failed at t = {t}: pi = {}, 3 pi(t-1) + lambda + nu = {rhs}",
                cur.total
            )));
        }
        eprintln!("identity holds at t = {t}: pi = 3 pi(t-1) + lambda + nu = {rhs}");
    }
    Ok(())
}

fn exact_row(out: &mut dyn Write, t: usize, v: &BigRational) -> io::Result<()> {
    let (n, d) = parts(v);
    writeln!(out, "{t},{n},{d},{}", round_significant(v, 12))
}

fn alpha(levels: &[usize], quantity: Quantity, out: &mut dyn Write) -> Outcome {
    writeln!(out, "t,value_num,value_den,value_decimal")?;
    for &t in levels {
        let v = match quantity {
            Quantity::Alpha => mean_moves(t),
            Quantity::PerLevel => {
                if t == 0 {
                    return Err(Failure::Usage("per-level value needs t >= 1".into()));
                }
                mean_moves(t) / ratio(t as i64, 1)
            }
            Quantity::Kappa => mean_moves_within(t),
            Quantity::Chi => level_weight_ratio(t)?,
        };
        exact_row(out, t, &v)?;
    }
    Ok(())
}

fn renewal(
    t: usize,
    samples: Option<u64>,
    raw: bool,
    cfg: &RunConfig,
    out: &mut dyn Write,
) -> Outcome {
    if !raw && t == 0 {
        return Err(Failure::Usage(
            "E(Y_t)/t needs t >= 1; use --raw for t = 0".into(),
        ));
    }
    match samples {
        Some(n) => {
            let mut mc = renewal_mc(t, n, cfg.seed, Some(cfg.threads))?;
            if !raw {
                mc.estimate /= t as f64;
                mc.std_err /= t as f64;
            }
            writeln!(out, "{}\n{}", MonteCarlo::CSV_HEADER, mc.csv_row())?;
        }
        None => {
            let model = renewal_exact(t);
            let v = if raw {
                model.ey(t)
            } else {
                model.ey_over_t(t)?
            };
            writeln!(out, "t,value_num,value_den,value_decimal")?;
            exact_row(out, t, &v)?;
        }
    }
    Ok(())
}

//! `mwt` command line: each pipeline stage behind a subcommand.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2 on
//! data errors (unreadable or malformed input, failed stages).

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mwt::config::{validate_config, PipelineConfig};
use mwt::eval::ReferenceList;
use mwt::measures::MeasureId;
use mwt::pipeline::{self, PipelineData};

#[derive(Parser)]
#[command(
    name = "mwt",
    version,
    about = "Multi-word term extraction and ranking for POS-tagged Arabic corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Pipeline configuration file (TOML).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Extract candidate occurrences and print them as TSV.
    Extract {
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Read words from stdin (one per line) and print their stems.
    Stem,
    /// Print per-candidate counts (f, nesting, context size) as TSV.
    Stats {
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Rank candidates under one measure and print the table as TSV.
    Rank {
        #[command(flatten)]
        config: ConfigArg,
        /// Measure: llr, c, nc, ntc, llr_c or nlc.
        #[arg(long)]
        measure: String,
        /// Only print the best K rows.
        #[arg(long, value_name = "K")]
        top: Option<usize>,
    },
    /// Score rankings against reference lists and print the precision
    /// matrix.
    Evaluate {
        #[command(flatten)]
        config: ConfigArg,
        /// Override the configured reference lists: `path:label,...`.
        #[arg(long, value_name = "PATH:LABEL,...")]
        refs: Option<String>,
        /// Override the configured cutoffs: `100,200,300`.
        #[arg(long, value_name = "K,...")]
        k: Option<String>,
        /// Print the report as JSON instead of TSV.
        #[arg(long)]
        json: bool,
    },
    /// Run every stage and write all artifacts to the output directory.
    Pipeline {
        #[command(flatten)]
        config: ConfigArg,
        /// Write artifacts here instead of the configured output dir.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version requests are not usage errors
            let code = if err.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Data(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_DATA)
        }
    }
}

enum CliError {
    Usage(String),
    Data(String),
}

impl From<mwt::Error> for CliError {
    fn from(err: mwt::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

fn load_config(arg: &ConfigArg) -> Result<PipelineConfig, CliError> {
    let config = PipelineConfig::load(&arg.config)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let violations = validate_config(&config);
    if !violations.is_empty() {
        return Err(CliError::Usage(format!(
            "invalid config {}:\n  {}",
            arg.config.display(),
            violations.join("\n  ")
        )));
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Extract { config } => {
            let config = load_config(&config)?;
            let corpus = pipeline::load_corpus(&config)?;
            let occurrences = mwt::extract_candidates(&corpus, config.extract.l_max);
            print!("{}", pipeline::candidates_tsv(&occurrences));
            Ok(())
        }
        Command::Stem => {
            let stdin = std::io::stdin().lock();
            let mut stdout = std::io::stdout().lock();
            for line in stdin.lines() {
                let line = line.map_err(|e| CliError::Data(e.to_string()))?;
                let stems: Vec<String> =
                    line.split_whitespace().map(mwt::stem_word).collect();
                writeln!(stdout, "{}", stems.join(" "))
                    .map_err(|e| CliError::Data(e.to_string()))?;
            }
            Ok(())
        }
        Command::Stats { config } => {
            let config = load_config(&config)?;
            let data = PipelineData::prepare(&config)?;
            print!(
                "{}",
                pipeline::stats_tsv(&data.terms, &data.nesting, &data.profiles)
            );
            Ok(())
        }
        Command::Rank {
            config,
            measure,
            top,
        } => {
            let config = load_config(&config)?;
            let measure: MeasureId = measure
                .parse()
                .map_err(|e: mwt::Error| CliError::Usage(e.to_string()))?;
            let data = PipelineData::prepare(&config)?;
            let table = pipeline::rank_one(&data, &config, measure);
            print!("{}", pipeline::rank_tsv(&table, &data.terms, top));
            Ok(())
        }
        Command::Evaluate {
            config,
            refs,
            k,
            json,
        } => {
            let mut config = load_config(&config)?;
            if let Some(spec) = refs {
                config.evaluate.reference = parse_ref_specs(&spec)?;
            }
            if let Some(ks) = k {
                config.evaluate.k = parse_ks(&ks)?;
            }
            if config.evaluate.reference.is_empty() {
                return Err(CliError::Usage(
                    "no reference lists configured; pass --refs or add [[evaluate.reference]]"
                        .into(),
                ));
            }
            let data = PipelineData::prepare(&config)?;
            let scorer = data.scorer(&config);
            let tables: Vec<_> = config
                .rank
                .measures
                .iter()
                .map(|&m| scorer.rank(m))
                .collect();
            let references: Vec<ReferenceList> = pipeline::load_references(&config)?;
            let report =
                mwt::evaluate_all(&tables, &data.terms, &references, &config.evaluate.k)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report)
                        .map_err(|e| CliError::Data(e.to_string()))?
                );
            } else {
                print!("{}", pipeline::eval_tsv(&report));
            }
            Ok(())
        }
        Command::Pipeline { config, out } => {
            let config = load_config(&config)?;
            let manifest = pipeline::run_pipeline(&config, out.as_deref())?;
            eprintln!(
                "pipeline done: {} tokens, {} occurrences, {} terms",
                manifest.token_count, manifest.occurrence_count, manifest.term_count
            );
            for (stage, duration) in &manifest.stage_timings {
                eprintln!("  {stage}: {duration:?}");
            }
            Ok(())
        }
    }
}

fn parse_ref_specs(spec: &str) -> Result<Vec<mwt::config::ReferenceSpec>, CliError> {
    spec.split(',')
        .map(|item| {
            let (path, label) = item.rsplit_once(':').ok_or_else(|| {
                CliError::Usage(format!("--refs item `{item}` is not `path:label`"))
            })?;
            Ok(mwt::config::ReferenceSpec {
                path: PathBuf::from(path),
                label: label.to_string(),
            })
        })
        .collect()
}

fn parse_ks(ks: &str) -> Result<Vec<usize>, CliError> {
    let parsed: Result<Vec<usize>, _> = ks.split(',').map(|k| k.trim().parse()).collect();
    let parsed =
        parsed.map_err(|e| CliError::Usage(format!("--k values must be integers: {e}")))?;
    if parsed.is_empty() || parsed.contains(&0) {
        return Err(CliError::Usage("--k values must be positive".into()));
    }
    Ok(parsed)
}

//! `semlex`: coverage statistics, concept tagging and relation extraction
//! over a lexical semantic net.

mod commands;
mod config;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use semlex::compound::SplitConfig;
use semlex::corpus::SectionKind;
use semlex::coverage::ReportParts;
use semlex::relations::DEFAULT_REFINE_DEPTH;

use crate::config::{FileConfig, Format, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "semlex",
    version,
    about = "Lexical semantic net analysis of sectioned documents"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML config file; relative paths in it are taken from its directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    #[arg(long, global = true)]
    stoplist: Option<PathBuf>,
    /// Known proper names, one per line.
    #[arg(long, global = true)]
    gazetteer: Option<PathBuf>,
    /// Section field profile (JSON) used to order senses when tagging.
    #[arg(long, global = true)]
    profile: Option<PathBuf>,
    /// Section classification spec (JSON).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    /// Compound compatibility rules.
    #[arg(long, global = true)]
    rules: Option<PathBuf>,
    /// Look up inflection-stripped stems.
    #[arg(long, global = true, conflicts_with = "no_morph")]
    morph: bool,
    #[arg(long, global = true)]
    no_morph: bool,
    /// Match ae/oe/ue spellings against umlauts.
    #[arg(long, global = true, conflicts_with = "no_umlauts")]
    umlauts: bool,
    #[arg(long, global = true)]
    no_umlauts: bool,
    /// Hypernym levels shown per sense when tagging.
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load and validate a lexicon, printing its size.
    Check { lexicon: Option<PathBuf> },
    /// Coverage of the candidate word types of each section.
    Coverage {
        corpus: PathBuf,
        /// Matches per word class.
        #[arg(long)]
        by_class: bool,
        /// Word-class and sense ambiguity.
        #[arg(long)]
        ambiguity: bool,
        /// Classify the types without a match.
        #[arg(long)]
        uncovered: bool,
    },
    /// Word-class and sense ambiguity of the matched types of each section.
    Ambiguity { corpus: PathBuf },
    /// Annotate a POS-tagged file with concept elements.
    Tag {
        input: PathBuf,
        /// Section whose profile weights order the senses.
        #[arg(long, default_value = "Other")]
        section: SectionKind,
    },
    /// Extract relations from a noun phrase.
    Np {
        phrase: String,
        /// Holonym steps searched when refining genitive attributes.
        #[arg(long, default_value_t = DEFAULT_REFINE_DEPTH)]
        max_depth: usize,
    },
    /// Match clauses (JSON lines) against the frames of their verbs.
    Frames {
        clauses: PathBuf,
        /// Ignore frame enrichments.
        #[arg(long)]
        no_enrichment: bool,
        /// Instead of matching, count slot fillers of this verb.
        #[arg(long, requires = "frame")]
        learn: Option<String>,
        /// Frame code used with --learn.
        #[arg(long)]
        frame: Option<String>,
    },
    /// Split compounds, scoring candidates with evidence from a corpus.
    Split {
        corpus: PathBuf,
        #[arg(required = true)]
        words: Vec<String>,
        #[arg(long)]
        min_part: Option<usize>,
        #[arg(long)]
        max_parts: Option<usize>,
        #[arg(long)]
        threshold: Option<f64>,
        /// List every scored candidate.
        #[arg(long)]
        all: bool,
    },
    /// Guess the section kind of each section of the given files.
    ClassifySection {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Learn a section field profile from a corpus.
    Profile { corpus: PathBuf },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let file = match &cli.global.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let mut cfg = RunConfig::merge(file, &cli.global)?;
    if cfg.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    match cli.command {
        Command::Check { lexicon } => {
            if lexicon.is_some() {
                cfg.lexicon = lexicon;
            }
            commands::check(&cfg)
        }
        Command::Coverage {
            corpus,
            by_class,
            ambiguity,
            uncovered,
        } => commands::coverage(
            &cfg,
            commands::CoverageArgs {
                corpus: &corpus,
                parts: ReportParts {
                    by_class,
                    ambiguity,
                    uncovered,
                },
            },
        ),
        Command::Ambiguity { corpus } => commands::coverage(
            &cfg,
            commands::CoverageArgs {
                corpus: &corpus,
                parts: ReportParts {
                    ambiguity: true,
                    ..ReportParts::default()
                },
            },
        ),
        Command::Tag { input, section } => commands::tag(&cfg, commands::TagArgs { input: &input, section }),
        Command::Np { phrase, max_depth } => commands::np(&cfg, &phrase, max_depth),
        Command::Frames {
            clauses,
            no_enrichment,
            learn,
            frame,
        } => match (learn, frame) {
            (Some(verb), Some(frame)) => commands::learn_frames(&cfg, &clauses, &verb, &frame),
            _ => commands::frames(&cfg, &clauses, !no_enrichment),
        },
        Command::Split {
            corpus,
            words,
            min_part,
            max_parts,
            threshold,
            all,
        } => {
            let d = SplitConfig::default();
            let config = SplitConfig {
                min_part: min_part.unwrap_or(d.min_part),
                max_parts: max_parts.unwrap_or(d.max_parts),
                threshold: threshold.unwrap_or(d.threshold),
                ..d
            };
            commands::split(
                &cfg,
                commands::SplitArgs {
                    corpus: &corpus,
                    words: &words,
                    config,
                    all,
                },
            )
        }
        Command::ClassifySection { files } => commands::classify(&cfg, &files),
        Command::Profile { corpus } => commands::profile(&cfg, &corpus),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.global.output.clone();
    let result = run(cli).and_then(|text| match &output {
        Some(path) => std::fs::write(path, text).map_err(CliError::Write),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::Write),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use xre_core::oracles::{backtrack_rewb_match, brute_ov, derivative_match, has_3k_clique};
use xre_core::reductions::{clique_to_ere, ov_to_onerewb, ov_to_semiere, Construction, ReductionOutput};
use xre_core::syntax::parse_unchecked;
use xre_core::{classify, parse, render, Alphabet, Ast, Dialect};

use crate::bench::{bench, Family};
use crate::engine::Engine;
use crate::formats::{parse_graph, parse_ov, read_single, write_graph, write_ov};
use crate::gen::{gen_graph, gen_ov, ovc_dimension, random_pattern, rng};
use crate::verify::{verify, Schedule};

#[derive(Debug, Parser)]
#[command(name = "xre", version, about = "Extended regular expression matching and reductions")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Declared alphabet as a string of symbols, e.g. `01#$@`. Inferred from
    /// the pattern and text when omitted.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    /// Wall-clock budget for `bench`.
    #[arg(long, global = true)]
    pub budget_seconds: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance or pattern.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Turn an instance file into a text file and a pattern file.
    Reduce(ReduceArgs),
    /// Match a pattern against a whole text.
    Match(MatchArgs),
    /// Brute-force answers.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Compare engine and oracle verdicts over many instances.
    Verify(VerifyArgs),
    /// Time an engine on a pattern family; prints CSV.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Ov {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "c")]
        d: Option<usize>,
        /// Use d = c * ceil(log2 n).
        #[arg(long)]
        c: Option<usize>,
        /// Force one orthogonal pair.
        #[arg(long)]
        plant: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Make a random subset of this size complete.
        #[arg(long, default_value_t = 0)]
        plant_clique: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Pattern {
        #[arg(long, value_enum, default_value_t = PatternDialect::Plain)]
        dialect: PatternDialect,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        max_groups: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PatternDialect {
    Plain,
    Ere,
    Rewb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConstructionArg {
    OvSemiere,
    OvRewb,
    CliqueEre,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::OvSemiere => Construction::OvSemiEre,
            ConstructionArg::OvRewb => Construction::OvRewb,
            ConstructionArg::CliqueEre => Construction::CliqueEre,
        }
    }
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(value_enum)]
    pub construction: ConstructionArg,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out_text: PathBuf,
    #[arg(long)]
    pub out_pattern: PathBuf,
    /// Clique size is 3k.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct PatternSource {
    #[arg(long, required_unless_present = "pattern_file", conflicts_with = "pattern_file")]
    pub pattern: Option<String>,
    #[arg(long)]
    pub pattern_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TextSource {
    #[arg(long, required_unless_present = "text_file", conflicts_with = "text_file", allow_hyphen_values = true)]
    pub text: Option<String>,
    #[arg(long)]
    pub text_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    #[arg(long)]
    pub engine: Engine,
    #[command(flatten)]
    pub pattern: PatternSource,
    #[command(flatten)]
    pub text: TextSource,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Is there an orthogonal pair?
    Ov {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Is there a clique on 3k vertices?
    Clique {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Reference matcher: derivatives, or backtracking for backreferences.
    Match {
        #[command(flatten)]
        pattern: PatternSource,
        #[command(flatten)]
        text: TextSource,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub construction: ConstructionArg,
    /// Defaults to ere for ov-semiere and clique-ere, rewb for ov-rewb.
    #[arg(long)]
    pub engine: Option<Engine>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Largest n (OV) or vertex count (clique) for random trials.
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    #[arg(long, default_value_t = 4)]
    pub max_d: usize,
    /// Clique sizes 3k for these k.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub k: Vec<usize>,
    /// Also run every instance up to this n (or vertex count).
    #[arg(long)]
    pub exhaustive_n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub exhaustive_d: usize,
    /// Random ov-rewb trials also checked by the backtracking matcher.
    #[arg(long, default_value_t = 0)]
    pub spot_checks: usize,
    /// Run only this trial of the campaign.
    #[arg(long)]
    pub trial: Option<usize>,
    /// Write one CSV row per trial here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub engine: Engine,
    #[arg(long)]
    pub family: Family,
    #[arg(long, value_delimiter = ',', default_value = "64,128,256,512")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, content).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(content.as_bytes()).context("writing output"),
    }
}

fn declared_alphabet(cli_alphabet: &Option<String>) -> Result<Option<Alphabet>> {
    cli_alphabet.as_deref().map(|s| Alphabet::from_chars(s).context("--alphabet")).transpose()
}

/// Pattern, text and the alphabet to match them over.
fn load_pair(alphabet: &Option<String>, p: &PatternSource, t: &TextSource) -> Result<(Ast, String, Alphabet)> {
    let pattern = match (&p.pattern, &p.pattern_file) {
        (Some(s), _) => s.clone(),
        (None, Some(f)) => read_single(&read(f)?).to_string(),
        (None, None) => bail!("no pattern given"),
    };
    let text = match (&t.text, &t.text_file) {
        (Some(s), _) => s.clone(),
        (None, Some(f)) => read_single(&read(f)?).to_string(),
        (None, None) => bail!("no text given"),
    };
    match declared_alphabet(alphabet)? {
        Some(sigma) => {
            let ast = parse(&pattern, &sigma).context("parsing pattern")?;
            sigma.encode(&text).context("text")?;
            Ok((ast, text, sigma))
        }
        None => {
            let ast = parse_unchecked(&pattern).context("parsing pattern")?;
            let sigma = Alphabet::infer(&ast, &text).context("inferring the alphabet; pass --alphabet")?;
            Ok((ast, text, sigma))
        }
    }
}

fn reduce(args: &ReduceArgs) -> Result<ReductionOutput> {
    let src = read(&args.input)?;
    Ok(match args.construction.into() {
        Construction::OvSemiEre => ov_to_semiere(&parse_ov(&src)?),
        Construction::OvRewb => ov_to_onerewb(&parse_ov(&src)?),
        Construction::CliqueEre => clique_to_ere(&parse_graph(&src)?, args.k)?,
    })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<ExitCode> {
    let budget = match cli.budget_seconds {
        Some(s) if !(s.is_finite() && s >= 0.0) => bail!("--budget-seconds must be a non-negative number"),
        s => s.map(Duration::from_secs_f64),
    };
    match cli.command {
        Command::Gen(GenCommand::Ov { n, d, c, plant, out: path }) => {
            let d = match (d, c) {
                (Some(d), _) => d,
                (None, Some(c)) => ovc_dimension(n, c),
                (None, None) => bail!("pass --d or --c"),
            };
            emit(out, path.as_deref(), &write_ov(&gen_ov(n, d, cli.seed, plant)?))?;
        }
        Command::Gen(GenCommand::Graph { n, p, plant_clique, out: path }) => {
            emit(out, path.as_deref(), &write_graph(&gen_graph(n, p, cli.seed, plant_clique)?))?;
        }
        Command::Gen(GenCommand::Pattern { dialect, depth, max_groups, out: path }) => {
            let symbols: Vec<char> = match &cli.alphabet {
                Some(s) => Alphabet::from_chars(s)?.iter().map(|s| s.as_char()).collect(),
                None => vec!['a', 'b'],
            };
            let dialect = match dialect {
                PatternDialect::Plain => Dialect::Plain,
                PatternDialect::Ere => Dialect::Ere,
                PatternDialect::Rewb => Dialect::Rewb,
            };
            let ast = random_pattern(&mut rng(cli.seed), dialect, &symbols, depth.max(1), max_groups);
            emit(out, path.as_deref(), &format!("{}\n", render(&ast)))?;
        }
        Command::Reduce(args) => {
            let r = reduce(&args)?;
            fs::write(&args.out_text, format!("{}\n", r.text))
                .with_context(|| format!("writing {}", args.out_text.display()))?;
            fs::write(&args.out_pattern, format!("{}\n", render(&r.pattern)))
                .with_context(|| format!("writing {}", args.out_pattern.display()))?;
            let sigma: String = r.alphabet.iter().map(|s| s.as_char()).collect();
            writeln!(
                out,
                "construction={} text_len={} pattern_len={} alphabet={}",
                r.meta.construction, r.meta.text_len, r.meta.pattern_len, sigma
            )?;
        }
        Command::Match(args) => {
            let (ast, text, sigma) = load_pair(&cli.alphabet, &args.pattern, &args.text)?;
            let dialect = classify(&ast)?;
            if !args.engine.accepts(dialect) {
                bail!("engine {} cannot run {} patterns", args.engine, dialect);
            }
            writeln!(out, "{}", args.engine.run(&ast, &text, &sigma)?)?;
        }
        Command::Oracle(OracleCommand::Ov { input }) => {
            writeln!(out, "{}", brute_ov(&parse_ov(&read(&input)?)?))?;
        }
        Command::Oracle(OracleCommand::Clique { input, k }) => {
            if k == 0 {
                bail!("k must be at least 1");
            }
            writeln!(out, "{}", has_3k_clique(&parse_graph(&read(&input)?)?, k))?;
        }
        Command::Oracle(OracleCommand::Match { pattern, text }) => {
            let (ast, text, sigma) = load_pair(&cli.alphabet, &pattern, &text)?;
            let verdict = match classify(&ast)? {
                Dialect::Rewb => backtrack_rewb_match(&ast, &text)?,
                _ => derivative_match(&ast, &text, &sigma)?,
            };
            writeln!(out, "{verdict}")?;
        }
        Command::Verify(args) => return verify_command(cli.seed, args, out),
        Command::Bench(args) => {
            let outcome = bench(args.engine, args.family, &args.sizes, args.reps, cli.seed, budget)?;
            emit(out, args.out.as_deref(), &outcome.to_csv())?;
            if let Some(s) = outcome.slope() {
                eprintln!("fitted log-log slope: {s:.3}");
            }
            if let Some(n) = outcome.truncated_at {
                eprintln!("budget exhausted before n={n}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_command(seed: u64, args: VerifyArgs, out: &mut dyn Write) -> Result<ExitCode> {
    if args.k.is_empty() || args.k.contains(&0) {
        bail!("--k values must be at least 1");
    }
    let construction: Construction = args.construction.into();
    let schedule = Schedule {
        exhaustive: args.exhaustive_n.map(|n| (n, args.exhaustive_d)),
        random_trials: args.trials,
        max_n: args.max_n,
        max_d: args.max_d,
        ks: args.k.clone(),
        spot_checks: args.spot_checks,
        seed,
    };
    let report = verify(construction, args.engine, &schedule, args.trial)?;
    if let Some(path) = &args.report {
        fs::write(path, report.to_csv(true)).with_context(|| format!("writing {}", path.display()))?;
    }
    writeln!(out, "{}", report.summary)?;
    let mut failed = false;
    for t in report.disagreements() {
        failed = true;
        writeln!(
            out,
            "DISAGREE trial {} ({}): oracle={} engine={} spot_check={:?}; replay with: xre --seed {} verify {} {} --trial {}",
            t.index,
            t.params,
            t.oracle_verdict,
            t.engine_verdict,
            t.spot_check,
            seed,
            construction,
            replay_flags(&args),
            t.index
        )?;
    }
    Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn replay_flags(a: &VerifyArgs) -> String {
    let mut s = format!("--trials {} --max-n {} --max-d {} --k {}", a.trials, a.max_n, a.max_d, join(&a.k));
    if let Some(e) = a.engine {
        s += &format!(" --engine {e}");
    }
    if let Some(n) = a.exhaustive_n {
        s += &format!(" --exhaustive-n {n} --exhaustive-d {}", a.exhaustive_d);
    }
    if a.spot_checks > 0 {
        s += &format!(" --spot-checks {}", a.spot_checks);
    }
    s
}

fn join(ks: &[usize]) -> String {
    ks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

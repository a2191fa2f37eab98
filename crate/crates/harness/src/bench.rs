//! Wall-clock scaling runs over fixed pattern families.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;
use xre_core::reductions::{clique_alphabet, clique_to_ere, Graph};
use xre_core::{classify, parse, pattern_length, Alphabet, Ast, Dialect};

use crate::engine::Engine;
use crate::gen::{random_text, rng};

pub const CSV_HEADER: &str = "engine,construction,n,m,reps,median_ns,slope_hint";
pub const MIN_REPS: usize = 3;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("at least {MIN_REPS} repetitions are required, got {0}")]
    Reps(usize),
    #[error("no sizes given")]
    NoSizes,
    #[error("engine {engine} cannot run the {family} family ({dialect} pattern)")]
    Dialect { engine: Engine, family: Family, dialect: Dialect },
    #[error(transparent)]
    Core(#[from] xre_core::Error),
}

/// A fixed pattern with random texts of growing length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `[ab]*a[ab]*b[ab]*` over `{a, b}`.
    Plain,
    /// `~(a)~(b)` over `{a, b}`: both operands match almost every span.
    Complement,
    /// The pattern emitted for 3k-Clique on K4 with k = 1.
    Clique,
    /// `(?<1>[ab]*)\1\1` over `{a, b}`.
    Www,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Plain, Family::Complement, Family::Clique, Family::Www];

    pub fn name(self) -> &'static str {
        match self {
            Family::Plain => "plain",
            Family::Complement => "complement",
            Family::Clique => "clique",
            Family::Www => "www",
        }
    }

    pub fn pattern(self) -> (Ast, Alphabet) {
        let ab = Alphabet::from_chars("ab").expect("distinct");
        let src = match self {
            Family::Plain => "[ab]*a[ab]*b[ab]*",
            Family::Complement => "~(a)~(b)",
            Family::Www => "(?<1>[ab]*)\\1\\1",
            Family::Clique => {
                let out = clique_to_ere(&Graph::complete(4), 1).expect("valid graph");
                return (out.pattern, clique_alphabet());
            }
        };
        (parse(src, &ab).expect("family patterns parse"), ab)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?} (expected plain, complement, clique or www)"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub engine: Engine,
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub reps: usize,
    pub median: Duration,
}

#[derive(Clone, Debug)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    /// First size skipped because of the time budget.
    pub truncated_at: Option<usize>,
}

impl BenchOutcome {
    /// Fitted log-log slope over all rows, when there are at least 3.
    pub fn slope(&self) -> Option<f64> {
        slope_of(&self.rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("{CSV_HEADER}\n");
        for (i, r) in self.rows.iter().enumerate() {
            let hint = slope_of(&self.rows[..=i]).map(|s| format!("{s:.3}")).unwrap_or_default();
            writeln!(out, "{},{},{},{},{},{},{}", r.engine, r.family, r.n, r.m, r.reps, r.median.as_nanos(), hint)
                .unwrap();
        }
        if let (Some(n), Some(first)) = (self.truncated_at, self.rows.first()) {
            writeln!(out, "{},{},{},{},0,,truncated", first.engine, first.family, n, first.m).unwrap();
        }
        out
    }
}

fn slope_of(rows: &[BenchRow]) -> Option<f64> {
    if rows.len() < 3 {
        return None;
    }
    let pts: Vec<(f64, f64)> =
        rows.iter().map(|r| ((r.n as f64).log2(), (r.median.as_nanos().max(1) as f64).log2())).collect();
    fit_slope(&pts)
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

/// Times `engine` on the family pattern against one random text per size.
/// Sizes are run in the given order and sequentially. A size is skipped
/// (and the run truncated) once the elapsed time reaches `budget`, or when
/// the previous size, scaled cubically, would overrun it.
pub fn bench(
    engine: Engine,
    family: Family,
    sizes: &[usize],
    reps: usize,
    seed: u64,
    budget: Option<Duration>,
) -> Result<BenchOutcome, BenchError> {
    if reps < MIN_REPS {
        return Err(BenchError::Reps(reps));
    }
    if sizes.is_empty() {
        return Err(BenchError::NoSizes);
    }
    let (pattern, alphabet) = family.pattern();
    let dialect = classify(&pattern)?;
    if !engine.accepts(dialect) {
        return Err(BenchError::Dialect { engine, family, dialect });
    }
    let symbols: Vec<char> = alphabet.iter().map(|s| s.as_char()).collect();
    let m = pattern_length(&pattern);
    let mut r = rng(seed);
    let start = Instant::now();
    let mut rows: Vec<BenchRow> = Vec::new();
    for &n in sizes {
        if let (Some(b), Some(last)) = (budget, rows.last()) {
            let grow = (n as f64 / last.n.max(1) as f64).powi(3);
            let predicted = last.median.mul_f64(grow * reps as f64);
            if start.elapsed() >= b || start.elapsed() + predicted > b {
                return Ok(BenchOutcome { rows, truncated_at: Some(n) });
            }
        }
        let text = random_text(&mut r, &symbols, n);
        let mut times = Vec::with_capacity(reps);
        for _ in 0..reps {
            let t = Instant::now();
            let verdict = engine.run(&pattern, &text, &alphabet)?;
            times.push(t.elapsed());
            std::hint::black_box(verdict);
        }
        rows.push(BenchRow { engine, family, n, m, reps, median: median(times) });
    }
    Ok(BenchOutcome { rows, truncated_at: None })
}

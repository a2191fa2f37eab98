//! Verification campaigns: reduce an instance, run an engine on the emitted
//! pair, and compare with the brute-force verdict on the instance.

use std::fmt::{self, Write as _};
use std::thread;
use std::time::{Duration, Instant};

use rand::Rng;
use thiserror::Error;
use xre_core::oracles::{backtrack_rewb_match, brute_ov, has_3k_clique};
use xre_core::reductions::{clique_to_ere, ov_to_onerewb, ov_to_semiere, BitVector, Construction, Graph, OvInstance};
use xre_core::{classify, Dialect};

use crate::engine::Engine;
use crate::gen::{gen_graph, gen_ov, rng, trial_seed};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("engine {engine} cannot run {dialect} patterns emitted by {construction}")]
    Dialect { engine: Engine, dialect: Dialect, construction: Construction },
    #[error("trial {index}: {source}")]
    Core { index: usize, source: xre_core::Error },
    #[error("trial {0} is outside the campaign")]
    NoSuchTrial(usize),
}

pub fn default_engine(c: Construction) -> Engine {
    match c {
        Construction::OvRewb => Engine::Rewb,
        Construction::OvSemiEre | Construction::CliqueEre => Engine::Ere,
    }
}

#[derive(Clone, Debug)]
pub struct Schedule {
    /// Every OV instance with `n <= .0`, `d <= .1`, or every graph on at most
    /// `.0` vertices (`.1` unused).
    pub exhaustive: Option<(usize, usize)>,
    pub random_trials: usize,
    /// Upper bound on `n` (OV) or on the vertex count (clique).
    pub max_n: usize,
    pub max_d: usize,
    /// Clique sizes are `3k` for `k` drawn from this list.
    pub ks: Vec<usize>,
    /// Random trials (the first ones) that also run the backtracking oracle
    /// on the emitted pair. Only used for `ov-rewb`.
    pub spot_checks: usize,
    pub seed: u64,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { exhaustive: None, random_trials: 100, max_n: 4, max_d: 4, ks: vec![1], spot_checks: 0, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Params {
    Ov { n: usize, d: usize },
    Clique { n: usize, k: usize },
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Ov { n, d } => write!(f, "n={n} d={d}"),
            Params::Clique { n, k } => write!(f, "n={n} k={k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrialReport {
    pub index: usize,
    /// Seed of a random trial; exhaustive trials have none.
    pub seed: Option<u64>,
    pub construction: Construction,
    pub params: Params,
    pub planted: bool,
    pub oracle_verdict: bool,
    pub engine_verdict: bool,
    /// Backtracking verdict on the emitted pair, when spot-checked.
    pub spot_check: Option<bool>,
    pub text_len: usize,
    pub pattern_len: usize,
    pub engine_time: Duration,
    pub agree: bool,
}

#[derive(Clone, Debug)]
pub struct Summary {
    pub construction: Construction,
    pub engine: Engine,
    pub trials: usize,
    pub agreements: usize,
    pub spot_checks: usize,
    pub elapsed: Duration,
}

impl Summary {
    pub fn agreement_rate(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.agreements as f64 / self.trials as f64
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} via {}: {}/{} agree ({:.2}%), {} spot checks, {:.2?}",
            self.construction,
            self.engine,
            self.agreements,
            self.trials,
            100.0 * self.agreement_rate(),
            self.spot_checks,
            self.elapsed
        )
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub trials: Vec<TrialReport>,
    pub summary: Summary,
}

impl Report {
    pub fn disagreements(&self) -> impl Iterator<Item = &TrialReport> {
        self.trials.iter().filter(|t| !t.agree)
    }

    pub fn all_agree(&self) -> bool {
        self.summary.agreements == self.summary.trials
    }

    /// One CSV line per trial, without timings, so that reruns with the same
    /// seed compare byte for byte.
    pub fn to_csv(&self, with_time: bool) -> String {
        let mut out =
            String::from("index,seed,construction,params,planted,oracle,engine,spot_check,text_len,pattern_len,agree");
        if with_time {
            out.push_str(",engine_ns");
        }
        out.push('\n');
        for t in &self.trials {
            write!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                t.index,
                t.seed.map(|s| s.to_string()).unwrap_or_default(),
                t.construction,
                t.params,
                t.planted,
                t.oracle_verdict,
                t.engine_verdict,
                t.spot_check.map(|b| b.to_string()).unwrap_or_default(),
                t.text_len,
                t.pattern_len,
                t.agree
            )
            .unwrap();
            if with_time {
                write!(out, ",{}", t.engine_time.as_nanos()).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Instance {
    Ov(OvInstance),
    Graph(Graph, usize),
}

#[derive(Clone, Debug)]
enum Spec {
    Fixed(Instance),
    Random(usize),
}

fn exhaustive_ov(max_n: usize, max_d: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for d in 1..=max_d {
            let total = 2 * n * d;
            for bits in 0u64..1 << total {
                let mut vecs: Vec<BitVector> = (0..2 * n)
                    .map(|i| BitVector::new((0..d).map(|p| bits >> (i * d + p) & 1 == 1).collect()))
                    .collect();
                let b = vecs.split_off(n);
                out.push(Instance::Ov(OvInstance::new(vecs, b).expect("well-formed")));
            }
        }
    }
    out
}

fn exhaustive_graphs(max_n: usize, ks: &[usize]) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..1 << pairs.len() {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .expect("valid edges");
            for &k in ks {
                out.push(Instance::Graph(g.clone(), k));
            }
        }
    }
    out
}

fn specs(c: Construction, s: &Schedule) -> Vec<Spec> {
    let fixed = match (c, s.exhaustive) {
        (_, None) => Vec::new(),
        (Construction::CliqueEre, Some((n, _))) => exhaustive_graphs(n, &s.ks),
        (_, Some((n, d))) => exhaustive_ov(n, d),
    };
    fixed.into_iter().map(Spec::Fixed).chain((0..s.random_trials).map(Spec::Random)).collect()
}

/// Graph and `k` of random trial `r` in a `clique-ere` campaign.
pub fn clique_trial(s: &Schedule, r: usize) -> (Graph, usize) {
    match random_instance(Construction::CliqueEre, s, r, trial_seed(s.seed, r as u64)).0 {
        Instance::Graph(g, k) => (g, k),
        Instance::Ov(_) => unreachable!("clique campaigns generate graphs"),
    }
}

/// The instance of random trial `r`; even-numbered trials are planted.
fn random_instance(c: Construction, s: &Schedule, r: usize, seed: u64) -> (Instance, bool) {
    let mut rng = rng(seed);
    let planted = r.is_multiple_of(2);
    match c {
        Construction::CliqueEre => {
            let k = s.ks[rng.gen_range(0..s.ks.len())];
            let mut n = rng.gen_range(1..=s.max_n.max(1));
            if planted && 3 * k > n && 3 * k <= s.max_n {
                n = rng.gen_range(3 * k..=s.max_n);
            }
            let p = rng.gen_range(0.2..0.8);
            let plant = if planted && 3 * k <= n { 3 * k } else { 0 };
            let g = gen_graph(n, p, rng.gen(), plant).expect("parameters in range");
            (Instance::Graph(g, k), plant > 0)
        }
        _ => {
            let n = rng.gen_range(1..=s.max_n.max(1));
            let d = rng.gen_range(1..=s.max_d.max(1));
            (Instance::Ov(gen_ov(n, d, rng.gen(), planted).expect("n, d >= 1")), planted)
        }
    }
}

fn run_trial(
    c: Construction,
    engine: Engine,
    s: &Schedule,
    index: usize,
    spec: &Spec,
) -> Result<TrialReport, VerifyError> {
    let core = |source| VerifyError::Core { index, source };
    let (inst, seed, planted, spot) = match spec {
        Spec::Fixed(inst) => (inst.clone(), None, false, false),
        Spec::Random(r) => {
            let seed = trial_seed(s.seed, *r as u64);
            let (inst, planted) = random_instance(c, s, *r, seed);
            (inst, Some(seed), planted, *r < s.spot_checks && c == Construction::OvRewb)
        }
    };
    let (out, oracle_verdict, params) = match (&inst, c) {
        (Instance::Ov(i), Construction::OvSemiEre) => {
            (ov_to_semiere(i), brute_ov(i), Params::Ov { n: i.n(), d: i.d() })
        }
        (Instance::Ov(i), _) => (ov_to_onerewb(i), brute_ov(i), Params::Ov { n: i.n(), d: i.d() }),
        (Instance::Graph(g, k), _) => {
            (clique_to_ere(g, *k).map_err(core)?, has_3k_clique(g, *k), Params::Clique { n: g.vertex_count(), k: *k })
        }
    };
    let start = Instant::now();
    let engine_verdict = engine.run(&out.pattern, &out.text, &out.alphabet).map_err(core)?;
    let engine_time = start.elapsed();
    let spot_check = if spot { Some(backtrack_rewb_match(&out.pattern, &out.text).map_err(core)?) } else { None };
    let agree = engine_verdict == oracle_verdict && spot_check.is_none_or(|v| v == oracle_verdict);
    Ok(TrialReport {
        index,
        seed,
        construction: c,
        params,
        planted,
        oracle_verdict,
        engine_verdict,
        spot_check,
        text_len: out.meta.text_len,
        pattern_len: out.meta.pattern_len,
        engine_time,
        agree,
    })
}

fn check_dialect(c: Construction, engine: Engine) -> Result<(), VerifyError> {
    let probe = match c {
        Construction::CliqueEre => clique_to_ere(&Graph::new(1), 1).expect("valid"),
        // d = 1 would collapse the intersection to a plain pattern.
        Construction::OvSemiEre => ov_to_semiere(&OvInstance::from_strs(&["00"], &["00"]).expect("valid")),
        Construction::OvRewb => ov_to_onerewb(&OvInstance::from_strs(&["00"], &["00"]).expect("valid")),
    };
    let dialect = classify(&probe.pattern).expect("emitted patterns are well-formed");
    if engine.accepts(dialect) {
        Ok(())
    } else {
        Err(VerifyError::Dialect { engine, dialect, construction: c })
    }
}

/// Runs the whole campaign, or only trial `only` when given. Trials run on
/// all available cores; the report is in trial order.
pub fn verify(
    c: Construction,
    engine: Option<Engine>,
    s: &Schedule,
    only: Option<usize>,
) -> Result<Report, VerifyError> {
    let engine = engine.unwrap_or(default_engine(c));
    check_dialect(c, engine)?;
    let all = specs(c, s);
    let selected: Vec<(usize, &Spec)> = match only {
        Some(i) => vec![(i, all.get(i).ok_or(VerifyError::NoSuchTrial(i))?)],
        None => all.iter().enumerate().collect(),
    };
    let start = Instant::now();
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(selected.len().max(1));
    let mut results: Vec<Result<TrialReport, VerifyError>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let selected = &selected;
                scope.spawn(move || {
                    selected
                        .iter()
                        .skip(w)
                        .step_by(workers)
                        .map(|&(i, spec)| run_trial(c, engine, s, i, spec))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("trial thread panicked")).collect()
    });
    results.sort_by_key(|r| match r {
        Ok(t) => t.index,
        Err(VerifyError::Core { index, .. }) => *index,
        Err(_) => usize::MAX,
    });
    let trials = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let summary = Summary {
        construction: c,
        engine,
        trials: trials.len(),
        agreements: trials.iter().filter(|t| t.agree).count(),
        spot_checks: trials.iter().filter(|t| t.spot_check.is_some()).count(),
        elapsed: start.elapsed(),
    };
    Ok(Report { trials, summary })
}

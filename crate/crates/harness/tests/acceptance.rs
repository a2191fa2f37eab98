//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use xre_core::oracles::{backtrack_rewb_match, derivative_match, enumerate_k_cliques};
use xre_core::reductions::{
    build_disconn, clique_alphabet, clique_to_ere, code_width, list_gadget, vertex_gadget, Construction, Graph,
};
use xre_core::{compile_nfa, ere_match, nfa_match, parse, rewb_match, Alphabet, Dialect};
use xre_harness::bench::{bench, Family};
use xre_harness::gen::{random_pattern, random_text, rng, trial_seed};
use xre_harness::verify::{clique_trial, verify, Params, Report, Schedule};
use xre_harness::Engine;

const SEED: u64 = 20240611;
const GOLDEN: &str = include_str!("../../core/tests/golden/sizes.txt");

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn ov_schedule() -> Schedule {
    Schedule {
        exhaustive: Some((2, 2)),
        random_trials: 1000,
        max_n: 6,
        max_d: 5,
        ks: vec![1],
        spot_checks: 0,
        seed: SEED,
    }
}

fn clique_schedule() -> Schedule {
    Schedule { exhaustive: Some((4, 0)), random_trials: 300, max_n: 9, ks: vec![1, 2], ..ov_schedule() }
}

fn campaign(report: &Report, limit: Duration) -> Outcome {
    let s = &report.summary;
    let mut detail = s.to_string();
    for t in report.disagreements().take(5) {
        detail += &format!("\n    disagreement at trial {} ({}), seed {:?}", t.index, t.params, t.seed);
    }
    if s.elapsed > limit {
        detail += &format!("\n    over the {limit:?} limit");
    }
    outcome(report.all_agree() && s.elapsed <= limit, detail)
}

fn a1(reports: &mut Vec<Report>) -> Outcome {
    let r = verify(Construction::OvSemiEre, None, &ov_schedule(), None).expect("campaign runs");
    let planted = r.trials.iter().filter(|t| t.planted).count();
    let mut o = campaign(&r, Duration::from_secs(120));
    o.ok &= r.trials.len() >= 292 + 1000 && planted == 500;
    reports.push(r);
    o
}

fn a2(reports: &mut Vec<Report>) -> Outcome {
    let s = Schedule { spot_checks: 50, ..ov_schedule() };
    let r = verify(Construction::OvRewb, None, &s, None).expect("campaign runs");
    let mut o = campaign(&r, Duration::from_secs(300));
    o.ok &= r.summary.spot_checks == 50 && r.trials.len() >= 1292;
    reports.push(r);
    o
}

fn a3() -> Outcome {
    let r = verify(Construction::CliqueEre, None, &clique_schedule(), None).expect("campaign runs");
    let random = r.trials.iter().filter(|t| t.seed.is_some());
    let (planted, k2) = random.fold((0, 0), |(p, k), t| {
        (p + t.planted as usize, k + matches!(t.params, Params::Clique { k: 2, .. }) as usize)
    });
    let mut o = campaign(&r, Duration::from_secs(600));
    o.detail += &format!(", {planted} planted, {k2} with k=2");
    o.ok &= planted > 0 && planted < 300 && k2 > 0;
    o
}

fn a4() -> Outcome {
    let s = clique_schedule();
    let sigma = clique_alphabet();
    let mut r = rng(trial_seed(SEED, u64::MAX));
    let (mut checked, mut failures, mut positives) = (0, 0, 0);
    for trial in 0..s.random_trials {
        let (g, k) = clique_trial(&s, trial);
        let cliques = enumerate_k_cliques(&g, k);
        if cliques.is_empty() {
            continue;
        }
        let d = code_width(g.vertex_count());
        let disconn = build_disconn(d, &sigma).unwrap();
        for _ in 0..2 {
            let t = &cliques[r.gen_range(0..cliques.len())];
            let u = &cliques[r.gen_range(0..cliques.len())];
            let filler_len = r.gen_range(0..8);
            let filler = random_text(&mut r, &['0', '1', '%', '#', '$', '@'], filler_len);
            let text = format!("{}#{}#{}", vertex_gadget(t, d), filler, list_gadget(&g, u, d));
            let joined: Vec<usize> = t.iter().chain(u).copied().collect();
            let is_clique = joined.iter().enumerate().all(|(i, &a)| joined[i + 1..].iter().all(|&b| g.adjacent(a, b)));
            let verdict = ere_match(&disconn, &text, &sigma).unwrap();
            checked += 1;
            positives += verdict as usize;
            failures += (verdict == is_clique) as usize;
        }
    }
    outcome(
        checked >= 200 && failures == 0 && positives > 0 && positives < checked,
        format!("{checked} triples, {positives} disconnected, {failures} mismatches"),
    )
}

fn a5(reports: &[Report]) -> Outcome {
    let mut bad = 0;
    let mut checked = 0;
    for t in reports.iter().flat_map(|r| &r.trials) {
        let Params::Ov { n, d } = t.params else { continue };
        let expected = match t.construction {
            Construction::OvSemiEre => 2 * n * (d + 1) + 1,
            _ => (2 * n * (d + 1) + 2) * (d + 1),
        };
        checked += 1;
        bad += (t.text_len != expected) as usize;
    }
    let c: f64 = GOLDEN
        .lines()
        .find_map(|l| l.strip_prefix("clique-c "))
        .and_then(|v| v.trim().parse().ok())
        .expect("pinned constant");
    let s = clique_schedule();
    let mut worst: f64 = 0.0;
    let mut graphs: Vec<(Graph, usize)> = (0..s.random_trials).map(|i| clique_trial(&s, i)).collect();
    graphs.extend((1..=9).flat_map(|n| [(Graph::new(n), 1), (Graph::complete(n), 1), (Graph::complete(n), 2)]));
    for (g, k) in &graphs {
        let n = g.vertex_count();
        let w = clique_to_ere(g, *k).unwrap().meta.text_len as f64;
        let bound = (k * k) as f64 * (n as f64).powi(*k as i32 + 1) * code_width(n) as f64;
        worst = worst.max(w / bound);
    }
    outcome(
        bad == 0 && checked >= 2 * 1292 && worst <= c,
        format!(
            "{checked} OV texts checked, {bad} off-formula; clique |w| ratio max {worst:.3} <= C = {c} over {} graphs",
            graphs.len()
        ),
    )
}

fn a6() -> Outcome {
    let start = Instant::now();
    let thompson = bench(Engine::Thompson, Family::Plain, &[4096, 8192, 16384, 32768, 65536], 3, SEED, None).unwrap();
    let ere = bench(Engine::Ere, Family::Complement, &[1024, 2048, 4096, 8192], 3, SEED, None).unwrap();
    let (ts, es) = (thompson.slope().unwrap(), ere.slope().unwrap());
    let elapsed = start.elapsed();
    outcome(
        (0.7..=1.4).contains(&ts) && (2.2..=3.5).contains(&es) && elapsed < Duration::from_secs(300),
        format!("thompson slope {ts:.3}, ere slope {es:.3}, {elapsed:.2?}"),
    )
}

fn a7() -> Outcome {
    let ab = Alphabet::from_chars("ab").unwrap();
    let mut r = rng(SEED);
    let (mut plain, mut plain_bad) = (0, 0);
    while plain < 10_000 {
        let ast = random_pattern(&mut r, Dialect::Plain, &['a', 'b'], 5, 0);
        let nfa = compile_nfa(&ast).unwrap();
        for _ in 0..10 {
            let len = r.gen_range(0..=7);
            let text = random_text(&mut r, &['a', 'b'], len);
            let t = nfa_match(&nfa, &text, &ab).unwrap();
            let e = ere_match(&ast, &text, &ab).unwrap();
            let d = derivative_match(&ast, &text, &ab).unwrap();
            plain += 1;
            plain_bad += !(t == e && e == d) as usize;
        }
    }
    let (mut rewb, mut rewb_bad) = (0, 0);
    while rewb < 5_000 {
        let ast = random_pattern(&mut r, Dialect::Rewb, &['a', 'b'], 5, 2);
        for _ in 0..10 {
            let len = r.gen_range(0..=7);
            let text = random_text(&mut r, &['a', 'b'], len);
            rewb += 1;
            rewb_bad += (rewb_match(&ast, &text).unwrap() != backtrack_rewb_match(&ast, &text).unwrap()) as usize;
        }
    }
    outcome(
        plain_bad == 0 && rewb_bad == 0,
        format!("{plain} plain cases ({plain_bad} mismatches), {rewb} backreference cases ({rewb_bad} mismatches)"),
    )
}

fn a8() -> Outcome {
    let a = Alphabet::from_chars("a").unwrap();
    let ab = Alphabet::from_chars("ab").unwrap();
    let six = parse("(aa)*&(aaa)*", &a).unwrap();
    let odd = parse("~((aa)*)", &a).unwrap();
    let www = parse("(?<1>[ab]*)\\1\\1", &ab).unwrap();
    let mut bad = Vec::new();
    for len in 0..=12 {
        let s = "a".repeat(len);
        if ere_match(&six, &s, &a).unwrap() != (len % 6 == 0) {
            bad.push(format!("(aa)*&(aaa)* on a^{len}"));
        }
        if len <= 9 && ere_match(&odd, &s, &a).unwrap() != (len % 2 == 1) {
            bad.push(format!("~((aa)*) on a^{len}"));
        }
    }
    let mut texts = 0;
    for len in 0..=9usize {
        for bits in 0..1u32 << len {
            let s: String = (0..len).map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' }).collect();
            let third = len / 3;
            let expected = len % 3 == 0 && s[..third] == s[third..2 * third] && s[..third] == s[2 * third..];
            if rewb_match(&www, &s).unwrap() != expected {
                bad.push(format!("www on {s:?}"));
            }
            texts += 1;
        }
    }
    outcome(bad.is_empty(), format!("{texts} www texts, 13 + 10 unary texts, failures: {bad:?}"))
}

fn main() -> ExitCode {
    let mut reports = Vec::new();
    let mut all_ok = true;
    let mut report = |id: &str, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        all_ok &= o.ok;
        println!("{id} {} {name} ({:.2?}): {}", if o.ok { "PASS" } else { "FAIL" }, start.elapsed(), o.detail);
    };
    report("A1", "intersection reduction from OV", &mut || a1(&mut reports));
    report("A2", "one-group backreference reduction from OV", &mut || a2(&mut reports));
    report("A3", "complement reduction from 3k-clique", &mut a3);
    report("A4", "disconnection subpattern", &mut a4);
    report("A5", "text and pattern sizes", &mut || a5(&reports));
    report("A6", "scaling slopes", &mut a6);
    report("A7", "cross-engine equivalence", &mut a7);
    report("A8", "worked examples", &mut a8);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

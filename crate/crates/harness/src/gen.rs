//! Seeded instance, pattern and text generators.
//!
//! Everything is driven by `ChaCha8Rng`, so a seed reproduces the same output
//! on every platform.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use xre_core::reductions::{BitVector, Graph, OvInstance};
use xre_core::{Ast, Dialect};

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("{what} must be at least 1")]
    Zero { what: &'static str },
    #[error("edge probability {0} is outside [0, 1]")]
    Probability(f64),
    #[error("cannot plant a {plant}-clique in a graph on {n} vertices")]
    PlantTooLarge { plant: usize, n: usize },
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of trial `index` in a campaign started from `base` (splitmix64).
pub fn trial_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `c * ceil(log2 n)`, at least 1.
pub fn ovc_dimension(n: usize, c: usize) -> usize {
    (c * xre_core::reductions::code_width(n)).max(1)
}

fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> BitVector {
    BitVector::new((0..d).map(|_| rng.gen()).collect())
}

/// Uniform random bits. With `plant`, one random pair `(a_i, b_j)` is made
/// orthogonal by clearing, at every coordinate where both are 1, one of the
/// two bits.
pub fn gen_ov(n: usize, d: usize, seed: u64, plant: bool) -> Result<OvInstance, GenError> {
    if n == 0 {
        return Err(GenError::Zero { what: "n" });
    }
    if d == 0 {
        return Err(GenError::Zero { what: "d" });
    }
    let mut rng = rng(seed);
    let mut a: Vec<BitVector> = (0..n).map(|_| random_vector(&mut rng, d)).collect();
    let mut b: Vec<BitVector> = (0..n).map(|_| random_vector(&mut rng, d)).collect();
    if plant {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut x = a[i].bits().to_vec();
        let mut y = b[j].bits().to_vec();
        for p in 0..d {
            if x[p] && y[p] {
                if rng.gen() {
                    x[p] = false;
                } else {
                    y[p] = false;
                }
            }
        }
        a[i] = BitVector::new(x);
        b[j] = BitVector::new(y);
    }
    Ok(OvInstance::new(a, b).expect("generated vectors share n and d"))
}

/// Erdős–Rényi graph; a `plant`-subset of the vertices is then made complete.
pub fn gen_graph(n: usize, p: f64, seed: u64, plant: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::Zero { what: "n" });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Probability(p));
    }
    if plant > n {
        return Err(GenError::PlantTooLarge { plant, n });
    }
    let mut rng = rng(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    let chosen = sample(&mut rng, n, plant).into_vec();
    for (i, &u) in chosen.iter().enumerate() {
        for &v in &chosen[i + 1..] {
            g.add_edge(u, v).expect("distinct and in range");
        }
    }
    Ok(g)
}

pub fn random_text(rng: &mut ChaCha8Rng, symbols: &[char], len: usize) -> String {
    (0..len).map(|_| symbols[rng.gen_range(0..symbols.len())]).collect()
}

/// Random pattern tree of depth at most `depth` over `symbols`.
///
/// `Plain` uses the base operators and classes; `Ere` adds `&` and `~`;
/// `Rewb` adds up to `max_groups` captures (numbered in pre-order) and
/// backreferences to them. Other dialects are treated as `Ere`.
pub fn random_pattern(rng: &mut ChaCha8Rng, dialect: Dialect, symbols: &[char], depth: usize, max_groups: u32) -> Ast {
    let mut groups = 0;
    let ast = node(rng, dialect, symbols, depth, max_groups, &mut groups);
    if dialect == Dialect::Rewb {
        fix_refs(ast, groups)
    } else {
        ast
    }
}

fn leaf(rng: &mut ChaCha8Rng, dialect: Dialect, symbols: &[char], max_groups: u32) -> Ast {
    match rng.gen_range(0..10) {
        0..=4 => Ast::sym(symbols[rng.gen_range(0..symbols.len())]),
        5 | 6 => {
            let mut members: Vec<char> = symbols.iter().copied().filter(|_| rng.gen()).collect();
            if members.is_empty() {
                members.push(symbols[0]);
            }
            Ast::class(members)
        }
        7 => Ast::Epsilon,
        8 => Ast::Empty,
        _ if dialect == Dialect::Rewb && max_groups > 0 => Ast::Backref(rng.gen_range(1..=max_groups)),
        _ => Ast::sym(symbols[rng.gen_range(0..symbols.len())]),
    }
}

fn node(
    rng: &mut ChaCha8Rng,
    dialect: Dialect,
    symbols: &[char],
    depth: usize,
    max_groups: u32,
    groups: &mut u32,
) -> Ast {
    if depth <= 1 || rng.gen_ratio(1, 4) {
        return leaf(rng, dialect, symbols, max_groups);
    }
    let extended = match dialect {
        Dialect::Plain => 0,
        _ => 2,
    };
    let list = |rng: &mut ChaCha8Rng, groups: &mut u32| -> Vec<Ast> {
        let len = rng.gen_range(2..=3);
        (0..len).map(|_| node(rng, dialect, symbols, depth - 1, max_groups, groups)).collect()
    };
    match rng.gen_range(0..7 + extended) {
        0..=2 => Ast::Concat(list(rng, groups)),
        3 | 4 => Ast::Union(list(rng, groups)),
        5 | 6 => Ast::star(node(rng, dialect, symbols, depth - 1, max_groups, groups)),
        7 if dialect == Dialect::Rewb => {
            if *groups < max_groups {
                *groups += 1;
                let index = *groups;
                Ast::capture(index, node(rng, dialect, symbols, depth - 1, max_groups, groups))
            } else {
                Ast::star(node(rng, dialect, symbols, depth - 1, max_groups, groups))
            }
        }
        7 => Ast::Intersect(list(rng, groups)),
        _ if dialect == Dialect::Rewb => Ast::Concat(list(rng, groups)),
        _ => Ast::complement(node(rng, dialect, symbols, depth - 1, max_groups, groups)),
    }
}

fn fix_refs(ast: Ast, groups: u32) -> Ast {
    let rec = |xs: Vec<Ast>| xs.into_iter().map(|x| fix_refs(x, groups)).collect();
    match ast {
        Ast::Backref(_) if groups == 0 => Ast::Epsilon,
        Ast::Backref(i) => Ast::Backref((i - 1) % groups + 1),
        Ast::Capture(i, b) => Ast::capture(i, fix_refs(*b, groups)),
        Ast::Concat(xs) => Ast::Concat(rec(xs)),
        Ast::Union(xs) => Ast::Union(rec(xs)),
        Ast::Star(b) => Ast::star(fix_refs(*b, groups)),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use xre_core::oracles::{brute_ov, has_clique_direct};
    use xre_core::{capture_count, classify};

    #[test]
    fn planted_ov_is_positive() {
        for seed in 0..200 {
            let inst = gen_ov(1 + seed as usize % 5, 1 + seed as usize % 7, seed, true).unwrap();
            assert!(brute_ov(&inst), "seed {seed}");
        }
        assert!(brute_ov(&gen_ov(1, 1, 3, true).unwrap()));
    }

    #[test]
    fn ov_is_deterministic() {
        assert_eq!(gen_ov(2, 2, 9, false).unwrap(), gen_ov(2, 2, 9, false).unwrap());
        assert_ne!(gen_ov(6, 6, 1, false).unwrap(), gen_ov(6, 6, 2, false).unwrap());
        assert_eq!(gen_ov(0, 2, 0, false), Err(GenError::Zero { what: "n" }));
    }

    #[test]
    fn graphs() {
        assert_eq!(gen_graph(3, 1.0, 0, 0).unwrap(), Graph::complete(3));
        assert_eq!(gen_graph(6, 0.0, 4, 6).unwrap(), Graph::complete(6));
        assert_eq!(gen_graph(5, 0.5, 11, 0).unwrap(), gen_graph(5, 0.5, 11, 0).unwrap());
        assert_eq!(gen_graph(3, 0.5, 0, 4), Err(GenError::PlantTooLarge { plant: 4, n: 3 }));
        assert!(gen_graph(3, 1.5, 0, 0).is_err());
        for seed in 0..50 {
            assert!(has_clique_direct(&gen_graph(8, 0.2, seed, 5).unwrap(), 5));
        }
    }

    #[test]
    fn patterns_have_the_requested_dialect() {
        let mut r = rng(5);
        for _ in 0..500 {
            let p = random_pattern(&mut r, Dialect::Plain, &['a', 'b'], 5, 0);
            assert_eq!(classify(&p).unwrap(), Dialect::Plain);
            assert!(p.depth() <= 5);
            let p = random_pattern(&mut r, Dialect::Rewb, &['a', 'b'], 5, 2);
            assert!(matches!(classify(&p).unwrap(), Dialect::Plain | Dialect::Rewb));
            assert!(capture_count(&p) <= 2);
            let p = random_pattern(&mut r, Dialect::Ere, &['a', 'b'], 4, 0);
            assert_ne!(classify(&p).unwrap(), Dialect::Rewb);
        }
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| trial_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}

#![allow(dead_code)]

use proptest::prelude::*;
use xre_core::{Alphabet, Ast};

#[derive(Clone, Copy, Debug)]
pub enum Flavor {
    Plain,
    Ere,
    Rewb,
}

/// Raw tree of depth at most `depth + 1`; captures and backreferences get
/// real indices in `fix_groups`.
fn raw(flavor: Flavor, symbols: &'static [char], depth: u32) -> impl Strategy<Value = Ast> {
    let sym = proptest::sample::select(symbols).prop_map(Ast::sym);
    let class = proptest::sample::subsequence(symbols, 1..=symbols.len()).prop_map(Ast::class);
    let mut leaf = prop_oneof![
        4 => sym,
        2 => class,
        1 => Just(Ast::Epsilon),
        1 => Just(Ast::Empty),
    ]
    .boxed();
    if let Flavor::Rewb = flavor {
        leaf = prop_oneof![4 => leaf, 1 => (1u32..3).prop_map(Ast::Backref)].boxed();
    }
    leaf.prop_recursive(depth, 48, 3, move |inner| {
        let list = proptest::collection::vec(inner.clone(), 2..=3);
        let mut arms = vec![
            (3, list.clone().prop_map(Ast::Concat).boxed()),
            (2, list.clone().prop_map(Ast::Union).boxed()),
            (2, inner.clone().prop_map(Ast::star).boxed()),
        ];
        match flavor {
            Flavor::Plain => {}
            Flavor::Ere => {
                arms.push((2, list.prop_map(Ast::Intersect).boxed()));
                arms.push((2, inner.clone().prop_map(Ast::complement).boxed()));
            }
            Flavor::Rewb => {
                arms.push((2, inner.clone().prop_map(|b| Ast::capture(1, b)).boxed()));
            }
        }
        proptest::strategy::Union::new_weighted(arms)
    })
}

/// Numbers captures 1, 2 in pre-order (dropping any beyond `max`) and points
/// every backreference at an existing group, or replaces it with ε.
pub fn fix_groups(ast: Ast, max: u32) -> Ast {
    fn number(ast: Ast, next: &mut u32, max: u32) -> Ast {
        match ast {
            Ast::Capture(_, b) => {
                if *next <= max {
                    let i = *next;
                    *next += 1;
                    Ast::capture(i, number(*b, next, max))
                } else {
                    number(*b, next, max)
                }
            }
            Ast::Concat(xs) => Ast::Concat(xs.into_iter().map(|x| number(x, next, max)).collect()),
            Ast::Union(xs) => Ast::Union(xs.into_iter().map(|x| number(x, next, max)).collect()),
            Ast::Star(b) => Ast::star(number(*b, next, max)),
            other => other,
        }
    }
    fn refs(ast: Ast, groups: u32) -> Ast {
        match ast {
            Ast::Backref(_) if groups == 0 => Ast::Epsilon,
            Ast::Backref(i) => Ast::Backref((i - 1) % groups + 1),
            Ast::Capture(i, b) => Ast::capture(i, refs(*b, groups)),
            Ast::Concat(xs) => Ast::Concat(xs.into_iter().map(|x| refs(x, groups)).collect()),
            Ast::Union(xs) => Ast::Union(xs.into_iter().map(|x| refs(x, groups)).collect()),
            Ast::Star(b) => Ast::star(refs(*b, groups)),
            other => other,
        }
    }
    let mut next = 1;
    let numbered = number(ast, &mut next, max);
    refs(numbered, next - 1)
}

pub fn plain_ast(symbols: &'static [char], depth: u32) -> impl Strategy<Value = Ast> {
    raw(Flavor::Plain, symbols, depth)
}

pub fn ere_ast(symbols: &'static [char], depth: u32) -> impl Strategy<Value = Ast> {
    raw(Flavor::Ere, symbols, depth)
}

pub fn rewb_ast(symbols: &'static [char], depth: u32) -> impl Strategy<Value = Ast> {
    raw(Flavor::Rewb, symbols, depth).prop_map(|a| fix_groups(a, 2))
}

/// Every string over `alphabet` of length at most `max_len`.
pub fn all_strings(alphabet: &Alphabet, max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|s| alphabet.iter().map(move |c| format!("{s}{c}"))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

pub const AB: &[char] = &['a', 'b'];
pub const ABC: &[char] = &['a', 'b', 'c'];

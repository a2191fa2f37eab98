//! Bottom-up substring-relation dynamic program for patterns with `&` and `~`.
//!
//! Every subpattern is mapped to the set of spans `(i, j)` of the subject it
//! matches. Literals and classes give single-symbol spans, concatenation
//! composes, union and intersection are set operations, star is the
//! reflexive-transitive closure and complement is the difference from the full
//! upper triangle. With `n` the subject length and `m` the pattern length this
//! is `O(n³ m)` bit operations, divided by the word size.

use crate::relation::PositionRelation;
use crate::syntax::{classify, Alphabet, Ast, Dialect, Symbol};
use crate::{Error, Result};

/// Relation-level operations performed by one evaluation; leaves are not
/// counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCount {
    pub compose: usize,
    pub closure: usize,
    pub union: usize,
    pub intersect: usize,
    pub complement: usize,
}

impl OpCount {
    pub fn total(&self) -> usize {
        self.compose + self.closure + self.union + self.intersect + self.complement
    }
}

/// All spans of `text` matched by `ast`, relative to `alphabet`.
pub fn match_relation(ast: &Ast, text: &str, alphabet: &Alphabet) -> Result<PositionRelation> {
    match_relation_counted(ast, text, alphabet).map(|(r, _)| r)
}

pub fn match_relation_counted(ast: &Ast, text: &str, alphabet: &Alphabet) -> Result<(PositionRelation, OpCount)> {
    let dialect = classify(ast)?;
    if dialect == Dialect::Rewb {
        return Err(Error::Dialect { engine: "ere", found: dialect });
    }
    ast.check_alphabet(alphabet)?;
    let text = alphabet.encode(text)?;
    let mut ops = OpCount::default();
    let rel = eval(ast, &text, &mut ops)?;
    Ok((rel, ops))
}

/// Whether `ast` matches the whole of `text`.
pub fn ere_match(ast: &Ast, text: &str, alphabet: &Alphabet) -> Result<bool> {
    let rel = match_relation(ast, text, alphabet)?;
    Ok(rel.contains(0, rel.n()))
}

fn symbol_spans(text: &[Symbol], accept: impl Fn(Symbol) -> bool) -> PositionRelation {
    let mut r = PositionRelation::empty(text.len());
    for (i, &s) in text.iter().enumerate() {
        if accept(s) {
            r.insert(i, i + 1);
        }
    }
    r
}

fn fold(
    xs: &[Ast],
    text: &[Symbol],
    ops: &mut OpCount,
    step: impl Fn(&PositionRelation, &PositionRelation) -> Result<PositionRelation>,
    counter: impl Fn(&mut OpCount) -> &mut usize,
) -> Result<PositionRelation> {
    let (first, rest) = xs.split_first().ok_or(Error::Malformed("empty list node"))?;
    let mut acc = eval(first, text, ops)?;
    for x in rest {
        let r = eval(x, text, ops)?;
        acc = step(&acc, &r)?;
        *counter(ops) += 1;
    }
    Ok(acc)
}

fn eval(ast: &Ast, text: &[Symbol], ops: &mut OpCount) -> Result<PositionRelation> {
    let n = text.len();
    Ok(match ast {
        Ast::Literal(a) => symbol_spans(text, |s| s == *a),
        Ast::Class(set) => symbol_spans(text, |s| set.contains(&s)),
        Ast::Empty => PositionRelation::empty(n),
        Ast::Epsilon => PositionRelation::diagonal(n),
        Ast::Concat(xs) => fold(xs, text, ops, PositionRelation::compose, |o| &mut o.compose)?,
        Ast::Union(xs) => fold(xs, text, ops, PositionRelation::union, |o| &mut o.union)?,
        Ast::Intersect(xs) => fold(xs, text, ops, PositionRelation::intersect, |o| &mut o.intersect)?,
        Ast::Star(b) => {
            let r = eval(b, text, ops)?.closure();
            ops.closure += 1;
            r
        }
        Ast::Complement(b) => {
            let r = eval(b, text, ops)?.complement();
            ops.complement += 1;
            r
        }
        Ast::Capture(..) | Ast::Backref(_) => return Err(Error::Dialect { engine: "ere", found: Dialect::Rewb }),
    })
}

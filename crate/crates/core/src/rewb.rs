//! Matching with capturing groups and backreferences by exploring the space
//! of configurations `(control state, input position, capture slots)`, in
//! the manner of a memory-automaton simulation.
//!
//! Capture semantics:
//!
//! * a slot holds a span of the subject, never a copied string, so each
//!   slot takes `O((n + 1)^2)` values;
//! * a reference to a group that has not been set, or that is still open,
//!   matches the empty string;
//! * re-entering a group (under a star) overwrites the slot.
//!
//! Configurations are explored in order of input position. All moves either
//! stay at the current position or advance, so the visited set for a
//! position can be dropped once that position is finished. Every
//! configuration is expanded at most once, which also cuts ε-cycles.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::syntax::{classify, Ast, Dialect, Symbol};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaptureSlot {
    Unset,
    Open(u32),
    Set(u32, u32),
}

impl CaptureSlot {
    pub fn span(self) -> Option<(usize, usize)> {
        match self {
            CaptureSlot::Set(i, j) => Some((i as usize, j as usize)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
enum Action {
    Epsilon,
    Symbol(Symbol),
    Class(Vec<Symbol>),
    Open(usize),
    Close(usize),
    Backref(usize),
}

/// Control graph compiled from a pattern.
#[derive(Clone, Debug)]
pub struct Program {
    edges: Vec<Vec<(Action, u32)>>,
    start: u32,
    accept: u32,
    /// Capture index for each slot, ascending.
    groups: Vec<u32>,
}

impl Program {
    pub fn compile(ast: &Ast) -> Result<Program> {
        let dialect = classify(ast)?;
        if !matches!(dialect, Dialect::Plain | Dialect::Rewb) {
            return Err(Error::Dialect { engine: "rewb", found: dialect });
        }
        ast.validate()?;
        let groups = capture_indices(ast);
        let slot_of: BTreeMap<u32, usize> = groups.iter().enumerate().map(|(s, &g)| (g, s)).collect();
        let mut prog = Program { edges: Vec::new(), start: 0, accept: 0, groups };
        let (s, t) = prog.fragment(ast, &slot_of);
        prog.start = s;
        prog.accept = t;
        Ok(prog)
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn capture_count(&self) -> usize {
        self.groups.len()
    }

    fn state(&mut self) -> u32 {
        self.edges.push(Vec::new());
        (self.edges.len() - 1) as u32
    }

    fn edge(&mut self, from: u32, action: Action, to: u32) {
        self.edges[from as usize].push((action, to));
    }

    fn fragment(&mut self, ast: &Ast, slot_of: &BTreeMap<u32, usize>) -> (u32, u32) {
        let (s, t) = (self.state(), self.state());
        match ast {
            Ast::Literal(a) => self.edge(s, Action::Symbol(*a), t),
            Ast::Class(set) => self.edge(s, Action::Class(set.iter().copied().collect()), t),
            Ast::Empty => {}
            Ast::Epsilon => self.edge(s, Action::Epsilon, t),
            Ast::Concat(xs) => {
                let mut at = s;
                for x in xs {
                    let (xs_, xt) = self.fragment(x, slot_of);
                    self.edge(at, Action::Epsilon, xs_);
                    at = xt;
                }
                self.edge(at, Action::Epsilon, t);
            }
            Ast::Union(xs) => {
                for x in xs {
                    let (xs_, xt) = self.fragment(x, slot_of);
                    self.edge(s, Action::Epsilon, xs_);
                    self.edge(xt, Action::Epsilon, t);
                }
            }
            Ast::Star(b) => {
                let (bs, bt) = self.fragment(b, slot_of);
                self.edge(s, Action::Epsilon, t);
                self.edge(s, Action::Epsilon, bs);
                self.edge(bt, Action::Epsilon, s);
            }
            Ast::Capture(i, b) => {
                let slot = slot_of[i];
                let (bs, bt) = self.fragment(b, slot_of);
                self.edge(s, Action::Open(slot), bs);
                self.edge(bt, Action::Close(slot), t);
            }
            Ast::Backref(i) => self.edge(s, Action::Backref(slot_of[i]), t),
            Ast::Intersect(_) | Ast::Complement(_) => unreachable!("rejected by classify"),
        }
        (s, t)
    }
}

fn capture_indices(ast: &Ast) -> Vec<u32> {
    fn walk(ast: &Ast, out: &mut Vec<u32>) {
        if let Ast::Capture(i, _) = ast {
            out.push(*i);
        }
        ast.children().iter().for_each(|c| walk(c, out));
    }
    let mut out = Vec::new();
    walk(ast, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of distinct capture indices; a 1-rewb has exactly one.
pub fn capture_count(ast: &Ast) -> usize {
    capture_indices(ast).len()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Configuration {
    control: u32,
    slots: Vec<CaptureSlot>,
}

/// Outcome of one search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Search {
    /// Slot contents of the first accepting configuration found.
    pub accepting: Option<Vec<CaptureSlot>>,
    pub expansions: usize,
    pub distinct: usize,
}

/// Explores configurations of `prog` on `text`. With `exhaustive` the search
/// continues past the first accepting configuration.
pub fn search(prog: &Program, text: &[char], exhaustive: bool) -> Search {
    let n = text.len();
    let mut pending: Vec<Vec<Configuration>> = vec![Vec::new(); n + 1];
    let mut seen: Vec<HashSet<Configuration>> = (0..=n).map(|_| HashSet::new()).collect();
    let mut out = Search { accepting: None, expansions: 0, distinct: 0 };

    let push = |pending: &mut Vec<Vec<Configuration>>,
                seen: &mut Vec<HashSet<Configuration>>,
                pos: usize,
                cfg: Configuration| {
        if seen[pos].insert(cfg.clone()) {
            pending[pos].push(cfg);
        }
    };

    let initial = Configuration { control: prog.start, slots: vec![CaptureSlot::Unset; prog.groups.len()] };
    push(&mut pending, &mut seen, 0, initial);

    for pos in 0..=n {
        while let Some(cfg) = pending[pos].pop() {
            out.expansions += 1;
            if pos == n && cfg.control == prog.accept {
                if out.accepting.is_none() {
                    out.accepting = Some(cfg.slots.clone());
                }
                if !exhaustive {
                    out.distinct += seen.iter().map(HashSet::len).sum::<usize>();
                    return out;
                }
            }
            for (action, to) in &prog.edges[cfg.control as usize] {
                let to = *to;
                match action {
                    Action::Epsilon => push(&mut pending, &mut seen, pos, Configuration { control: to, ..cfg.clone() }),
                    Action::Symbol(a) => {
                        if pos < n && text[pos] == a.0 {
                            push(&mut pending, &mut seen, pos + 1, Configuration { control: to, ..cfg.clone() });
                        }
                    }
                    Action::Class(set) => {
                        if pos < n && set.iter().any(|a| a.0 == text[pos]) {
                            push(&mut pending, &mut seen, pos + 1, Configuration { control: to, ..cfg.clone() });
                        }
                    }
                    Action::Open(slot) => {
                        let mut slots = cfg.slots.clone();
                        slots[*slot] = CaptureSlot::Open(pos as u32);
                        push(&mut pending, &mut seen, pos, Configuration { control: to, slots });
                    }
                    Action::Close(slot) => {
                        if let CaptureSlot::Open(start) = cfg.slots[*slot] {
                            let mut slots = cfg.slots.clone();
                            slots[*slot] = CaptureSlot::Set(start, pos as u32);
                            push(&mut pending, &mut seen, pos, Configuration { control: to, slots });
                        }
                    }
                    Action::Backref(slot) => match cfg.slots[*slot] {
                        CaptureSlot::Unset | CaptureSlot::Open(_) => {
                            push(&mut pending, &mut seen, pos, Configuration { control: to, ..cfg.clone() })
                        }
                        CaptureSlot::Set(i, j) => {
                            let (i, j) = (i as usize, j as usize);
                            let end = pos + (j - i);
                            if end <= n && text[pos..end] == text[i..j] {
                                push(&mut pending, &mut seen, end, Configuration { control: to, ..cfg.clone() });
                            }
                        }
                    },
                }
            }
        }
        out.distinct += seen[pos].len();
        seen[pos] = HashSet::new();
    }
    out
}

/// Whether `ast` matches all of `text`.
pub fn rewb_match(ast: &Ast, text: &str) -> Result<bool> {
    Ok(rewb_captures(ast, text)?.is_some())
}

/// Group index with its final span, if it was set.
pub type Captures = Vec<(u32, Option<(usize, usize)>)>;

/// Capture spans of one accepting run, keyed by ascending capture index.
pub fn rewb_captures(ast: &Ast, text: &str) -> Result<Option<Captures>> {
    let prog = Program::compile(ast)?;
    let text: Vec<char> = text.chars().collect();
    let result = search(&prog, &text, false);
    Ok(result.accepting.map(|slots| prog.groups.iter().zip(slots).map(|(&g, s)| (g, s.span())).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Alphabet};

    fn www() -> Ast {
        parse("(?<1>[ab]*)\\1\\1", &Alphabet::from_chars("ab").unwrap()).unwrap()
    }

    #[test]
    fn triple_repetition() {
        let ast = www();
        assert_eq!(rewb_captures(&ast, "ababab").unwrap(), Some(vec![(1, Some((0, 2)))]));
        assert!(!rewb_match(&ast, "abab").unwrap());
        assert!(rewb_match(&ast, "").unwrap());
        assert!(rewb_match(&ast, "aaa").unwrap());
        assert!(!rewb_match(&ast, "ab").unwrap());
    }

    #[test]
    fn capture_counts() {
        let ab = Alphabet::from_chars("ab").unwrap();
        assert_eq!(capture_count(&parse("a*b", &ab).unwrap()), 0);
        assert_eq!(capture_count(&www()), 1);
        assert_eq!(capture_count(&parse("(?<1>a)(?<2>b)\\1\\2", &ab).unwrap()), 2);
    }

    #[test]
    fn unset_and_open_references_match_empty() {
        let ab = Alphabet::from_chars("ab").unwrap();
        // The group is skipped, so \1 is unset.
        let ast = parse("((?<1>a)|b)\\1", &ab).unwrap();
        assert!(rewb_match(&ast, "b").unwrap());
        assert!(rewb_match(&ast, "aa").unwrap());
        assert!(!rewb_match(&ast, "a").unwrap());
        // A reference inside its own group sees an open slot.
        let own = parse("(?<1>a\\1)\\1", &ab).unwrap();
        assert!(rewb_match(&own, "aa").unwrap());
    }

    #[test]
    fn recapture_under_star_overwrites() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let ast = parse("((?<1>[ab])b)*\\1", &ab).unwrap();
        assert!(!rewb_match(&ast, "abbba").unwrap());
        assert!(rewb_match(&ast, "abbbb").unwrap());
        assert!(!rewb_match(&ast, "abba").unwrap());
        assert!(!rewb_match(&ast, "bbabb").unwrap());
        assert!(rewb_match(&ast, "bbaba").unwrap());
    }

    #[test]
    fn rejects_intersection() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let ast = parse("a&b", &ab).unwrap();
        assert_eq!(rewb_match(&ast, "a"), Err(Error::Dialect { engine: "rewb", found: Dialect::SemiEre }));
    }

    #[test]
    fn every_configuration_expanded_once() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let ast = parse("(?<1>(a|b)*)*(?<2>a*)\\2\\1(()*)*", &ab).unwrap();
        let prog = Program::compile(&ast).unwrap();
        let text: Vec<char> = "abaabab".chars().collect();
        let s = search(&prog, &text, true);
        assert_eq!(s.expansions, s.distinct);
        let n = text.len() as u64;
        let bound = prog.state_count() as u64 * (n + 1) * (n + 2).pow(2 * prog.capture_count() as u32);
        assert!((s.expansions as u64) <= bound);
    }
}

//! Thompson construction and state-set simulation for plain patterns.

use alloc::vec;
use alloc::vec::Vec;

use crate::syntax::{classify, Alphabet, Ast, Dialect, Symbol};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Epsilon,
    Symbol(Symbol),
}

#[derive(Clone, Debug)]
pub struct Nfa {
    transitions: Vec<Vec<(Label, usize)>>,
    start: usize,
    accept: usize,
}

impl Nfa {
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Label, usize)> + '_ {
        self.transitions.iter().enumerate().flat_map(|(from, ts)| ts.iter().map(move |&(label, to)| (from, label, to)))
    }

    fn new_state(&mut self) -> usize {
        self.transitions.push(Vec::new());
        self.transitions.len() - 1
    }

    fn edge(&mut self, from: usize, label: Label, to: usize) {
        self.transitions[from].push((label, to));
    }

    /// Adds the fragment for `ast`, returning its (entry, exit) states.
    fn fragment(&mut self, ast: &Ast) -> (usize, usize) {
        match ast {
            Ast::Concat(xs) => {
                let mut parts = xs.iter().map(|x| self.fragment(x)).collect::<Vec<_>>().into_iter();
                let (entry, mut exit) = parts.next().expect("validated list node");
                for (s, t) in parts {
                    self.edge(exit, Label::Epsilon, s);
                    exit = t;
                }
                (entry, exit)
            }
            Ast::Union(xs) => {
                let parts: Vec<_> = xs.iter().map(|x| self.fragment(x)).collect();
                let (s, t) = (self.new_state(), self.new_state());
                for (ps, pt) in parts {
                    self.edge(s, Label::Epsilon, ps);
                    self.edge(pt, Label::Epsilon, t);
                }
                (s, t)
            }
            Ast::Star(b) => {
                let (bs, bt) = self.fragment(b);
                let (s, t) = (self.new_state(), self.new_state());
                self.edge(s, Label::Epsilon, bs);
                self.edge(s, Label::Epsilon, t);
                self.edge(bt, Label::Epsilon, bs);
                self.edge(bt, Label::Epsilon, t);
                (s, t)
            }
            leaf => {
                let (s, t) = (self.new_state(), self.new_state());
                match leaf {
                    Ast::Literal(a) => self.edge(s, Label::Symbol(*a), t),
                    Ast::Class(set) => set.iter().for_each(|a| self.edge(s, Label::Symbol(*a), t)),
                    Ast::Epsilon => self.edge(s, Label::Epsilon, t),
                    Ast::Empty => {}
                    _ => unreachable!("extension nodes rejected before construction"),
                }
                (s, t)
            }
        }
    }
}

/// Thompson construction; at most two states per AST node.
pub fn compile_nfa(ast: &Ast) -> Result<Nfa> {
    let dialect = classify(ast)?;
    if dialect != Dialect::Plain {
        return Err(Error::Dialect { engine: "thompson", found: dialect });
    }
    let mut nfa = Nfa { transitions: Vec::new(), start: 0, accept: 0 };
    let (start, accept) = nfa.fragment(ast);
    nfa.start = start;
    nfa.accept = accept;
    Ok(nfa)
}

/// Reusable state set: membership flags plus the member list.
struct StateSet {
    member: Vec<bool>,
    list: Vec<usize>,
}

impl StateSet {
    fn new(size: usize) -> Self {
        StateSet { member: vec![false; size], list: Vec::with_capacity(size) }
    }

    fn clear(&mut self) {
        for &s in &self.list {
            self.member[s] = false;
        }
        self.list.clear();
    }

    /// Inserts `state` and everything reachable from it by ε-moves.
    fn add_closure(&mut self, nfa: &Nfa, state: usize, stack: &mut Vec<usize>) {
        stack.push(state);
        while let Some(s) = stack.pop() {
            if self.member[s] {
                continue;
            }
            self.member[s] = true;
            self.list.push(s);
            for &(label, to) in &nfa.transitions[s] {
                if label == Label::Epsilon && !self.member[to] {
                    stack.push(to);
                }
            }
        }
    }
}

/// Simulation result with the largest state set seen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Simulation {
    pub accepted: bool,
    pub max_active: usize,
}

pub fn simulate(nfa: &Nfa, text: &[Symbol]) -> Simulation {
    let size = nfa.state_count();
    let mut current = StateSet::new(size);
    let mut next = StateSet::new(size);
    let mut stack = Vec::new();
    current.add_closure(nfa, nfa.start, &mut stack);
    let mut max_active = current.list.len();
    for &c in text {
        next.clear();
        for &s in &current.list {
            for &(label, to) in &nfa.transitions[s] {
                if label == Label::Symbol(c) {
                    next.add_closure(nfa, to, &mut stack);
                }
            }
        }
        core::mem::swap(&mut current, &mut next);
        max_active = max_active.max(current.list.len());
        if current.list.is_empty() {
            break;
        }
    }
    Simulation { accepted: current.member[nfa.accept], max_active }
}

pub fn nfa_match(nfa: &Nfa, text: &str, alphabet: &Alphabet) -> Result<bool> {
    let text = alphabet.encode(text)?;
    Ok(simulate(nfa, &text).accepted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use alloc::string::String;

    fn a() -> Alphabet {
        Alphabet::from_chars("a").unwrap()
    }

    fn matches(pattern: &str, text: &str) -> bool {
        let nfa = compile_nfa(&parse(pattern, &a()).unwrap()).unwrap();
        nfa_match(&nfa, text, &a()).unwrap()
    }

    #[test]
    fn literal_is_two_states() {
        let nfa = compile_nfa(&Ast::sym('a')).unwrap();
        assert_eq!(nfa.state_count(), 2);
        let ts: Vec<_> = nfa.transitions().collect();
        assert_eq!(ts, [(nfa.start(), Label::Symbol(Symbol('a')), nfa.accept())]);
    }

    #[test]
    fn even_and_multiple_of_six() {
        assert!(matches("(aa)*", "aaaa"));
        assert!(!matches("(aa)*", "aaa"));
        assert!(matches("(aa)*", ""));
        for k in 0..20 {
            let text: String = core::iter::repeat_n('a', k).collect();
            assert_eq!(matches("(aaaaaa)*", &text), k % 6 == 0, "length {k}");
        }
    }

    #[test]
    fn accept_has_no_outgoing_transitions() {
        let ab = Alphabet::from_chars("ab").unwrap();
        for p in ["a", "(a|b)*ab", "[ab]*|()", "(a*b*)*", "[]a"] {
            let nfa = compile_nfa(&parse(p, &ab).unwrap()).unwrap();
            assert!(nfa.transitions().all(|(from, _, _)| from != nfa.accept()), "{p}");
            assert!(nfa.state_count() <= 2 * parse(p, &ab).unwrap().size());
        }
    }

    #[test]
    fn rejects_extensions_and_unknown_symbols() {
        let ast = parse("a&a", &a()).unwrap();
        assert_eq!(compile_nfa(&ast).unwrap_err(), Error::Dialect { engine: "thompson", found: Dialect::SemiEre });
        let nfa = compile_nfa(&Ast::sym('a')).unwrap();
        assert_eq!(nfa_match(&nfa, "b", &a()), Err(Error::UnknownSymbol { symbol: 'b', pos: 0 }));
    }

    #[test]
    fn active_set_never_exceeds_state_count() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let nfa = compile_nfa(&parse("((a|b)*(ab|ba)*)*b", &ab).unwrap()).unwrap();
        let text = ab.encode("abbabababbbaab").unwrap();
        let sim = simulate(&nfa, &text);
        assert!(sim.max_active <= nfa.state_count());
        assert!(sim.accepted);
    }
}

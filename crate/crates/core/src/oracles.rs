//! Brute-force solvers and reference matchers.
//!
//! Nothing here calls into [`crate::thompson`], [`crate::ere`] or
//! [`crate::rewb`]; the matchers are separate implementations so that they
//! can be used to check those engines.

use alloc::collections::BTreeSet;
use alloc::rc::Rc;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::reductions::{Graph, OvInstance};
use crate::syntax::{classify, Alphabet, Ast, Dialect};
use crate::{Error, Result};

/// Whether some `a ∈ A`, `b ∈ B` have zero dot product; `O(n² d)`.
pub fn brute_ov(inst: &OvInstance) -> bool {
    inst.a().iter().any(|a| inst.b().iter().any(|b| a.bits().iter().zip(b.bits()).all(|(&x, &y)| !(x && y))))
}

/// Sorted vertex lists, in lexicographic order.
pub type CliqueList = Vec<Vec<usize>>;

/// Every `k`-subset of pairwise adjacent vertices, lexicographically.
pub fn enumerate_k_cliques(g: &Graph, k: usize) -> CliqueList {
    fn extend(g: &Graph, k: usize, current: &mut Vec<usize>, out: &mut CliqueList) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let from = current.last().map_or(0, |&v| v + 1);
        for v in from..g.vertex_count() {
            if current.iter().all(|&u| g.adjacent(u, v)) {
                current.push(v);
                extend(g, k, current, out);
                current.pop();
            }
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        extend(g, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Tries every `size`-subset of the vertices.
pub fn has_clique_direct(g: &Graph, size: usize) -> bool {
    let n = g.vertex_count();
    if size > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let is_clique = idx.iter().enumerate().all(|(p, &u)| idx[p + 1..].iter().all(|&v| g.adjacent(u, v)));
        if is_clique {
            return true;
        }
        // Next combination in lexicographic order.
        let Some(p) = (0..size).rev().find(|&p| idx[p] < n - size + p) else {
            return false;
        };
        idx[p] += 1;
        for q in p + 1..size {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Three disjoint `k`-cliques that are pairwise fully connected.
pub fn has_3k_clique_by_triples(g: &Graph, k: usize) -> bool {
    let cliques = enumerate_k_cliques(g, k);
    let joined = |s: &[usize], t: &[usize]| s.iter().all(|&u| t.iter().all(|&v| g.adjacent(u, v)));
    cliques.iter().enumerate().any(|(i, t1)| {
        cliques[i + 1..]
            .iter()
            .enumerate()
            .any(|(j, t2)| joined(t1, t2) && cliques[i + j + 2..].iter().any(|t3| joined(t1, t3) && joined(t2, t3)))
    })
}

/// Whether `g` has a clique on `3k` vertices. Both the direct subset search
/// and the three-`k`-clique decomposition are run and must agree.
pub fn has_3k_clique(g: &Graph, k: usize) -> bool {
    let direct = has_clique_direct(g, 3 * k);
    let triples = has_3k_clique_by_triples(g, k);
    assert_eq!(direct, triples, "3k-clique oracles disagree on k = {k}, graph {g:?}");
    direct
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Re {
    Empty,
    Eps,
    Set(BTreeSet<char>),
    Cat(Rc<Re>, Rc<Re>),
    Or(BTreeSet<Rc<Re>>),
    And(BTreeSet<Rc<Re>>),
    Star(Rc<Re>),
    Not(Rc<Re>),
}

struct Derivatives {
    memo: HashMap<(Rc<Re>, char), Rc<Re>>,
    empty: Rc<Re>,
    eps: Rc<Re>,
}

impl Derivatives {
    fn new() -> Self {
        Derivatives { memo: HashMap::new(), empty: Rc::new(Re::Empty), eps: Rc::new(Re::Eps) }
    }

    fn cat(&self, a: Rc<Re>, b: Rc<Re>) -> Rc<Re> {
        match (&*a, &*b) {
            (Re::Empty, _) | (_, Re::Empty) => self.empty.clone(),
            (Re::Eps, _) => b,
            (_, Re::Eps) => a,
            (Re::Cat(x, y), _) => {
                let tail = self.cat(y.clone(), b);
                self.cat(x.clone(), tail)
            }
            _ => Rc::new(Re::Cat(a, b)),
        }
    }

    fn or(&self, items: impl IntoIterator<Item = Rc<Re>>) -> Rc<Re> {
        let mut set = BTreeSet::new();
        for r in items {
            match &*r {
                Re::Empty => {}
                Re::Or(xs) => set.extend(xs.iter().cloned()),
                _ => {
                    set.insert(r);
                }
            }
        }
        match set.len() {
            0 => self.empty.clone(),
            1 => set.pop_first().unwrap(),
            _ => Rc::new(Re::Or(set)),
        }
    }

    fn and(&self, items: impl IntoIterator<Item = Rc<Re>>) -> Rc<Re> {
        let mut set = BTreeSet::new();
        for r in items {
            match &*r {
                Re::Empty => return self.empty.clone(),
                Re::And(xs) => set.extend(xs.iter().cloned()),
                _ => {
                    set.insert(r);
                }
            }
        }
        match set.len() {
            0 => Rc::new(Re::Not(self.empty.clone())),
            1 => set.pop_first().unwrap(),
            _ => Rc::new(Re::And(set)),
        }
    }

    fn star(&self, a: Rc<Re>) -> Rc<Re> {
        match &*a {
            Re::Empty | Re::Eps => self.eps.clone(),
            Re::Star(_) => a,
            _ => Rc::new(Re::Star(a)),
        }
    }

    fn not(&self, a: Rc<Re>) -> Rc<Re> {
        match &*a {
            Re::Not(x) => x.clone(),
            _ => Rc::new(Re::Not(a)),
        }
    }

    fn lower(&self, ast: &Ast) -> Rc<Re> {
        match ast {
            Ast::Literal(s) => Rc::new(Re::Set([s.0].into())),
            Ast::Class(set) => Rc::new(Re::Set(set.iter().map(|s| s.0).collect())),
            Ast::Empty => self.empty.clone(),
            Ast::Epsilon => self.eps.clone(),
            Ast::Concat(xs) => xs.iter().rev().fold(self.eps.clone(), |acc, x| self.cat(self.lower(x), acc)),
            Ast::Union(xs) => self.or(xs.iter().map(|x| self.lower(x))),
            Ast::Intersect(xs) => self.and(xs.iter().map(|x| self.lower(x))),
            Ast::Star(b) => self.star(self.lower(b)),
            Ast::Complement(b) => self.not(self.lower(b)),
            Ast::Capture(..) | Ast::Backref(_) => unreachable!("rejected before conversion"),
        }
    }

    fn nullable(r: &Re) -> bool {
        match r {
            Re::Empty | Re::Set(_) => false,
            Re::Eps | Re::Star(_) => true,
            Re::Cat(a, b) => Self::nullable(a) && Self::nullable(b),
            Re::Or(xs) => xs.iter().any(|x| Self::nullable(x)),
            Re::And(xs) => xs.iter().all(|x| Self::nullable(x)),
            Re::Not(a) => !Self::nullable(a),
        }
    }

    fn derive(&mut self, r: &Rc<Re>, c: char) -> Rc<Re> {
        let key = (r.clone(), c);
        if let Some(d) = self.memo.get(&key) {
            return d.clone();
        }
        let d = match &**r {
            Re::Empty | Re::Eps => self.empty.clone(),
            Re::Set(set) => {
                if set.contains(&c) {
                    self.eps.clone()
                } else {
                    self.empty.clone()
                }
            }
            Re::Cat(a, b) => {
                let da = self.derive(a, c);
                let left = self.cat(da, b.clone());
                if Self::nullable(a) {
                    let db = self.derive(b, c);
                    self.or([left, db])
                } else {
                    left
                }
            }
            Re::Or(xs) => {
                let ds: Vec<_> = xs.iter().map(|x| self.derive(x, c)).collect();
                self.or(ds)
            }
            Re::And(xs) => {
                let ds: Vec<_> = xs.iter().map(|x| self.derive(x, c)).collect();
                self.and(ds)
            }
            Re::Star(a) => {
                let da = self.derive(a, c);
                self.cat(da, r.clone())
            }
            Re::Not(a) => {
                let da = self.derive(a, c);
                self.not(da)
            }
        };
        self.memo.insert(key, d.clone());
        d
    }
}

/// Membership by Brzozowski derivatives. Complement commutes with
/// derivation and flips nullability.
pub fn derivative_match(ast: &Ast, text: &str, alphabet: &Alphabet) -> Result<bool> {
    let dialect = classify(ast)?;
    if dialect == Dialect::Rewb {
        return Err(Error::Dialect { engine: "derivative", found: dialect });
    }
    ast.check_alphabet(alphabet)?;
    let text = alphabet.encode(text)?;
    let mut ders = Derivatives::new();
    let mut r = ders.lower(ast);
    for s in text {
        r = ders.derive(&r, s.0);
        if *r == Re::Empty {
            return Ok(false);
        }
    }
    Ok(Derivatives::nullable(&r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Slot {
    Unset,
    Open,
    Set(u32, u32),
}

type Env = Vec<Slot>;
type Outcomes = BTreeSet<(usize, Env)>;

/// Flattened AST so nodes can be memo keys.
enum Node {
    Sym(Vec<char>),
    Empty,
    Eps,
    Cat(Vec<usize>),
    Alt(Vec<usize>),
    Star(usize),
    Group(usize, usize),
    Ref(usize),
}

struct Backtracker<'t> {
    nodes: Vec<Node>,
    text: &'t [char],
    memo: HashMap<(usize, usize, Env), Rc<Outcomes>>,
}

impl Backtracker<'_> {
    fn add(&mut self, ast: &Ast, groups: &[u32]) -> usize {
        let slot = |i: &u32| groups.iter().position(|g| g == i).expect("validated capture");
        let node = match ast {
            Ast::Literal(s) => Node::Sym(vec![s.0]),
            Ast::Class(set) => Node::Sym(set.iter().map(|s| s.0).collect()),
            Ast::Empty => Node::Empty,
            Ast::Epsilon => Node::Eps,
            Ast::Concat(xs) => Node::Cat(xs.iter().map(|x| self.add(x, groups)).collect()),
            Ast::Union(xs) => Node::Alt(xs.iter().map(|x| self.add(x, groups)).collect()),
            Ast::Star(b) => Node::Star(self.add(b, groups)),
            Ast::Capture(i, b) => Node::Group(slot(i), self.add(b, groups)),
            Ast::Backref(i) => Node::Ref(slot(i)),
            Ast::Intersect(_) | Ast::Complement(_) => unreachable!("rejected by classify"),
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    /// Every `(end, env)` reachable by matching `node` from `pos`.
    fn outcomes(&mut self, node: usize, pos: usize, env: &Env) -> Rc<Outcomes> {
        let key = (node, pos, env.clone());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let mut out = Outcomes::new();
        match &self.nodes[node] {
            Node::Sym(set) => {
                if self.text.get(pos).is_some_and(|c| set.contains(c)) {
                    out.insert((pos + 1, env.clone()));
                }
            }
            Node::Empty => {}
            Node::Eps => {
                out.insert((pos, env.clone()));
            }
            Node::Cat(xs) => {
                let xs = xs.clone();
                out.insert((pos, env.clone()));
                for x in xs {
                    let mut next = Outcomes::new();
                    for (p, e) in &out {
                        next.extend(self.outcomes(x, *p, e).iter().cloned());
                    }
                    out = next;
                }
            }
            Node::Alt(xs) => {
                for x in xs.clone() {
                    out.extend(self.outcomes(x, pos, env).iter().cloned());
                }
            }
            &Node::Star(body) => {
                out.insert((pos, env.clone()));
                let mut frontier = vec![(pos, env.clone())];
                while let Some((p, e)) = frontier.pop() {
                    for r in self.outcomes(body, p, &e).iter() {
                        if out.insert(r.clone()) {
                            frontier.push(r.clone());
                        }
                    }
                }
            }
            &Node::Group(slot, body) => {
                let mut inner = env.clone();
                inner[slot] = Slot::Open;
                for (p, e) in self.outcomes(body, pos, &inner).iter() {
                    let mut e = e.clone();
                    e[slot] = Slot::Set(pos as u32, *p as u32);
                    out.insert((*p, e));
                }
            }
            &Node::Ref(slot) => match env[slot] {
                Slot::Unset | Slot::Open => {
                    out.insert((pos, env.clone()));
                }
                Slot::Set(i, j) => {
                    let w = &self.text[i as usize..j as usize];
                    if self.text[pos..].starts_with(w) {
                        out.insert((pos + w.len(), env.clone()));
                    }
                }
            },
        }
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }
}

/// Exhaustive matching over all ways to split the subject, memoized on
/// `(node, position, capture environment)`. Shares the capture conventions
/// of [`crate::rewb`]: unset or still-open references match ε and a repeated
/// capture overwrites.
pub fn backtrack_rewb_match(ast: &Ast, text: &str) -> Result<bool> {
    let dialect = classify(ast)?;
    if !matches!(dialect, Dialect::Plain | Dialect::Rewb) {
        return Err(Error::Dialect { engine: "backtrack", found: dialect });
    }
    ast.validate()?;
    let mut groups = Vec::new();
    fn collect(ast: &Ast, out: &mut Vec<u32>) {
        if let Ast::Capture(i, _) = ast {
            out.push(*i);
        }
        ast.children().iter().for_each(|c| collect(c, out));
    }
    collect(ast, &mut groups);
    let text: Vec<char> = text.chars().collect();
    let mut bt = Backtracker { nodes: Vec::new(), text: &text, memo: HashMap::new() };
    let root = bt.add(ast, &groups);
    let env = vec![Slot::Unset; groups.len()];
    let n = text.len();
    Ok(bt.outcomes(root, 0, &env).iter().any(|(p, _)| *p == n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn orthogonal_vectors() {
        assert!(brute_ov(&OvInstance::from_strs(&["01"], &["10"]).unwrap()));
        assert!(!brute_ov(&OvInstance::from_strs(&["11"], &["11"]).unwrap()));
        assert!(brute_ov(&OvInstance::from_strs(&["10"], &["01"]).unwrap()));
        assert!(!brute_ov(&OvInstance::from_strs(&["11", "10"], &["11", "11"]).unwrap()));
    }

    #[test]
    fn clique_enumeration() {
        assert_eq!(enumerate_k_cliques(&Graph::complete(3), 2), [[0, 1], [0, 2], [1, 2]]);
        assert_eq!(enumerate_k_cliques(&Graph::complete(3), 3), [[0, 1, 2]]);
        assert!(enumerate_k_cliques(&Graph::new(4), 2).is_empty());
        assert_eq!(enumerate_k_cliques(&Graph::new(2), 1), [[0], [1]]);
    }

    #[test]
    fn three_k_cliques() {
        assert!(has_3k_clique(&Graph::complete(3), 1));
        assert!(!has_3k_clique(&Graph::complete(5), 2));
        assert!(has_3k_clique(&Graph::complete(6), 2));
        assert!(!has_3k_clique(&Graph::path(3), 1));
    }

    #[test]
    fn derivative_examples() {
        let a = Alphabet::from_chars("a").unwrap();
        let odd = parse("~((aa)*)", &a).unwrap();
        assert!(derivative_match(&odd, "a", &a).unwrap());
        assert!(!derivative_match(&odd, "aa", &a).unwrap());
        let six = parse("(aa)*&(aaa)*", &a).unwrap();
        assert!(derivative_match(&six, "", &a).unwrap());
        assert!(!derivative_match(&six, "aa", &a).unwrap());
        assert!(derivative_match(&six, "aaaaaa", &a).unwrap());
    }

    #[test]
    fn derivative_rejects_backrefs() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let ast = parse("(?<1>a)\\1", &ab).unwrap();
        assert!(matches!(derivative_match(&ast, "aa", &ab), Err(Error::Dialect { .. })));
    }

    #[test]
    fn backtracking_examples() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let www = parse("(?<1>[ab]*)\\1\\1", &ab).unwrap();
        assert!(backtrack_rewb_match(&www, "aaa").unwrap());
        assert!(!backtrack_rewb_match(&www, "ab").unwrap());
        assert!(!backtrack_rewb_match(&www, "abaaba").unwrap());
        let alone = Ast::Concat(vec![Ast::Backref(1), Ast::capture(1, Ast::Epsilon)]);
        assert!(backtrack_rewb_match(&alone, "").unwrap());
        assert!(matches!(backtrack_rewb_match(&parse("a&a", &ab).unwrap(), "a"), Err(Error::Dialect { .. })));
    }
}

//! Executable reductions producing `(text, pattern)` pairs.
//!
//! * [`ov_to_semiere`]: Orthogonal Vectors to intersection-only matching.
//! * [`ov_to_onerewb`]: Orthogonal Vectors to matching with one capturing
//!   group.
//! * [`clique_to_ere`]: 3k-Clique to matching with complement.
//!
//! The delimiter written `¢` in the literature is the ASCII symbol [`CENT`]
//! (`@`) here, so emitted text and patterns are plain ASCII.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::oracles::enumerate_k_cliques;
use crate::syntax::{pattern_length, Alphabet, Ast};
use crate::{Error, Result};

pub const ZERO: char = '0';
pub const ONE: char = '1';
pub const HASH: char = '#';
pub const DOLLAR: char = '$';
pub const CENT: char = '@';
pub const PERCENT: char = '%';

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector(Vec<bool>);

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Self {
        BitVector(bits)
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidInstance("bit-vectors use only '0' and '1'")),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    fn push_to(&self, out: &mut String, reversed: bool) {
        let digit = |&b: &bool| if b { ONE } else { ZERO };
        if reversed {
            out.extend(self.0.iter().rev().map(digit));
        } else {
            out.extend(self.0.iter().map(digit));
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(self.len());
        self.push_to(&mut s, false);
        f.write_str(&s)
    }
}

/// Two equally sized lists of bit-vectors of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OvInstance {
    a: Vec<BitVector>,
    b: Vec<BitVector>,
}

impl OvInstance {
    pub fn new(a: Vec<BitVector>, b: Vec<BitVector>) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if a.len() != b.len() {
            return Err(Error::InvalidInstance("A and B must have the same size"));
        }
        let d = a[0].len();
        if d == 0 {
            return Err(Error::InvalidInstance("dimension must be positive"));
        }
        if a.iter().chain(&b).any(|v| v.len() != d) {
            return Err(Error::InvalidInstance("all vectors must have the same dimension"));
        }
        Ok(OvInstance { a, b })
    }

    /// Instance from bitstrings, e.g. `from_strs(&["01"], &["10"])`.
    pub fn from_strs(a: &[&str], b: &[&str]) -> Result<Self> {
        let conv = |xs: &[&str]| xs.iter().map(|s| BitVector::parse(s)).collect::<Result<Vec<_>>>();
        OvInstance::new(conv(a)?, conv(b)?)
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn d(&self) -> usize {
        self.a[0].len()
    }

    pub fn a(&self) -> &[BitVector] {
        &self.a
    }

    pub fn b(&self) -> &[BitVector] {
        &self.b
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n] }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    fn set(&mut self, u: usize, v: usize, value: bool) {
        self.adj[u * self.n + v] = value;
        self.adj[v * self.n + u] = value;
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::Range { what: "vertex", value: u.max(v) });
        }
        if u == v {
            return Err(Error::InvalidInstance("self-loops are not allowed"));
        }
        self.set(u, v, true);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Construction {
    OvSemiEre,
    OvRewb,
    CliqueEre,
}

impl Construction {
    pub const ALL: [Construction; 3] = [Construction::OvSemiEre, Construction::OvRewb, Construction::CliqueEre];

    pub fn name(self) -> &'static str {
        match self {
            Construction::OvSemiEre => "ov-semiere",
            Construction::OvRewb => "ov-rewb",
            Construction::CliqueEre => "clique-ere",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Construction::ALL.into_iter().find(|c| c.name() == name)
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMeta {
    pub text_len: usize,
    pub pattern_len: usize,
    pub construction: Construction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub text: String,
    pub pattern: Ast,
    pub alphabet: Alphabet,
    pub meta: ReductionMeta,
}

impl ReductionOutput {
    fn new(text: String, pattern: Ast, alphabet: Alphabet, construction: Construction) -> Self {
        let meta =
            ReductionMeta { text_len: text.chars().count(), pattern_len: pattern_length(&pattern), construction };
        ReductionOutput { text, pattern, alphabet, meta }
    }
}

fn bits_class() -> Ast {
    Ast::class([ZERO, ONE])
}

fn star_class(symbols: &[char]) -> Ast {
    Ast::star(Ast::class(symbols.iter().copied()))
}

/// `[01]^k body [01]^k`, flattened into one concatenation.
fn padded(body: Ast, k: usize) -> Ast {
    let mut items = vec![bits_class(); k];
    items.push(body);
    items.extend(core::iter::repeat_n(bits_class(), k));
    Ast::concat(items)
}

/// `body ∩ [01] body [01] ∩ ⋯ ∩ [01]^{d-1} body [01]^{d-1}`.
fn layered(body: &Ast, d: usize) -> Ast {
    Ast::intersect((0..d).map(|k| padded(body.clone(), k)).collect())
}

pub fn semiere_alphabet() -> Alphabet {
    Alphabet::new([ZERO, ONE, HASH, DOLLAR]).expect("distinct symbols")
}

pub fn rewb_alphabet() -> Alphabet {
    Alphabet::new([ZERO, ONE, HASH, DOLLAR, CENT]).expect("distinct symbols")
}

pub fn clique_alphabet() -> Alphabet {
    Alphabet::new([ZERO, ONE, PERCENT, HASH, DOLLAR, CENT]).expect("distinct symbols")
}

/// `0Σ*[01] | 1Σ*0`: the first and last symbols are bits that are not both 1.
pub fn build_e0(alphabet: &Alphabet) -> Ast {
    let sigma_star = Ast::star(alphabet.any());
    Ast::Union(vec![
        Ast::Concat(vec![Ast::sym(ZERO), sigma_star.clone(), bits_class()]),
        Ast::Concat(vec![Ast::sym(ONE), sigma_star, Ast::sym(ZERO)]),
    ])
}

/// Layer `k` of the intersection: `[01]^k E₀ [01]^k`, for `0 <= k < d`.
pub fn build_e0_layer(d: usize, k: usize, alphabet: &Alphabet) -> Result<Ast> {
    if d == 0 {
        return Err(Error::Range { what: "dimension", value: d });
    }
    if k >= d {
        return Err(Error::Range { what: "layer", value: k });
    }
    Ok(padded(build_e0(alphabet), k))
}

/// Block `k` (`1 <= k <= d`) of the one-group construction:
/// `[01#]*(0[01]^{k-1}\1[01]^{k-1}[01] | 1[01]^{k-1}\1[01]^{k-1}0)[01#]*`.
pub fn build_e0_backref(d: usize, k: usize) -> Result<Ast> {
    if d == 0 {
        return Err(Error::Range { what: "dimension", value: d });
    }
    if k == 0 || k > d {
        return Err(Error::Range { what: "block", value: k });
    }
    let branch = |first: char, last: Ast| {
        let mut items = vec![Ast::sym(first)];
        items.extend(core::iter::repeat_n(bits_class(), k - 1));
        items.push(Ast::Backref(1));
        items.extend(core::iter::repeat_n(bits_class(), k - 1));
        items.push(last);
        Ast::concat(items)
    };
    let filler = star_class(&[ZERO, ONE, HASH]);
    Ok(Ast::Concat(vec![
        filler.clone(),
        Ast::Union(vec![branch(ZERO, bits_class()), branch(ONE, Ast::sym(ZERO))]),
        filler,
    ]))
}

/// `0Σ*0 | 1Σ*1`: first and last symbols are equal bits.
pub fn build_eq(alphabet: &Alphabet) -> Ast {
    let sigma_star = Ast::star(alphabet.any());
    Ast::Union(vec![
        Ast::Concat(vec![Ast::sym(ZERO), sigma_star.clone(), Ast::sym(ZERO)]),
        Ast::Concat(vec![Ast::sym(ONE), sigma_star, Ast::sym(ONE)]),
    ])
}

/// `[01%]* (EQ ∩ [01]EQ[01] ∩ ⋯ ∩ [01]^{d-1}EQ[01]^{d-1}) [01%]*`: some
/// `d`-bit block inside the leading vertex gadget is mirrored by a block of
/// the trailing list gadget.
pub fn build_disconn(d: usize, alphabet: &Alphabet) -> Result<Ast> {
    if d == 0 {
        return Err(Error::Range { what: "dimension", value: d });
    }
    let filler = star_class(&[ZERO, ONE, PERCENT]);
    Ok(Ast::Concat(vec![filler.clone(), layered(&build_eq(alphabet), d), filler]))
}

/// `w = #a₁#a₂⋯#aₙ$ rev(b₁)#rev(b₂)#⋯rev(bₙ)#` and
/// `r = [01#]* # (E₀ ∩ [01]E₀[01] ∩ ⋯) # [01#]*`.
pub fn ov_to_semiere(inst: &OvInstance) -> ReductionOutput {
    let (n, d) = (inst.n(), inst.d());
    let mut text = String::with_capacity(2 * n * (d + 1) + 1);
    for a in inst.a() {
        text.push(HASH);
        a.push_to(&mut text, false);
    }
    text.push(DOLLAR);
    for b in inst.b() {
        b.push_to(&mut text, true);
        text.push(HASH);
    }

    let alphabet = semiere_alphabet();
    let filler = star_class(&[ZERO, ONE, HASH]);
    let pattern =
        Ast::Concat(vec![filler.clone(), Ast::sym(HASH), layered(&build_e0(&alphabet), d), Ast::sym(HASH), filler]);
    ReductionOutput::new(text, pattern, alphabet, Construction::OvSemiEre)
}

/// `s = a₁#a₂#⋯aₙ#$#rev(b₁)#rev(b₂)⋯#rev(bₙ)`, `w = (s¢)^{d+1}`, and
/// `r = [01#]*(#Σ*#)₁[01#]*¢ E₀⁽¹⁾ ¢ ⋯ ¢ E₀⁽ᵈ⁾ ¢`.
pub fn ov_to_onerewb(inst: &OvInstance) -> ReductionOutput {
    let (n, d) = (inst.n(), inst.d());
    let mut s = String::with_capacity(2 * n * (d + 1) + 1);
    for (i, a) in inst.a().iter().enumerate() {
        if i > 0 {
            s.push(HASH);
        }
        a.push_to(&mut s, false);
    }
    s.extend([HASH, DOLLAR, HASH]);
    for (i, b) in inst.b().iter().enumerate() {
        if i > 0 {
            s.push(HASH);
        }
        b.push_to(&mut s, true);
    }
    let mut text = String::with_capacity((s.len() + 1) * (d + 1));
    for _ in 0..=d {
        text.push_str(&s);
        text.push(CENT);
    }

    let alphabet = rewb_alphabet();
    let filler = star_class(&[ZERO, ONE, HASH]);
    let mut items = vec![
        filler.clone(),
        Ast::capture(1, Ast::Concat(vec![Ast::sym(HASH), Ast::star(alphabet.any()), Ast::sym(HASH)])),
        filler,
        Ast::sym(CENT),
    ];
    for k in 1..=d {
        items.push(build_e0_backref(d, k).expect("1 <= k <= d"));
        items.push(Ast::sym(CENT));
    }
    ReductionOutput::new(text, Ast::Concat(items), alphabet, Construction::OvRewb)
}

/// Bits per vertex code: `max(1, ⌈log₂ n⌉)`.
pub fn code_width(n: usize) -> usize {
    let mut d = 0;
    while (1usize << d) < n {
        d += 1;
    }
    d.max(1)
}

/// Big-endian binary code of `v`, `d` bits wide.
pub fn encode_vertex(v: usize, d: usize) -> String {
    (0..d).rev().map(|b| if v >> b & 1 == 1 { ONE } else { ZERO }).collect()
}

/// `VG(t) = enc(v₁)%enc(v₂)%⋯enc(v_k)%`.
pub fn vertex_gadget(clique: &[usize], d: usize) -> String {
    let mut out = String::new();
    for &v in clique {
        out.push_str(&encode_vertex(v, d));
        out.push(PERCENT);
    }
    out
}

/// `NG(v) = %rev(enc(u₁))%⋯%rev(enc(u_p))` over every `u` not adjacent to
/// `v`, ascending. Adjacency is irreflexive, so `v` itself is always listed.
pub fn non_adjacent_gadget(g: &Graph, v: usize, d: usize) -> String {
    let mut out = String::new();
    for u in (0..g.vertex_count()).filter(|&u| !g.adjacent(v, u)) {
        out.push(PERCENT);
        out.extend(encode_vertex(u, d).chars().rev());
    }
    out
}

/// `LG(t) = %NG(v₁)%NG(v₂)⋯%NG(v_k)`.
pub fn list_gadget(g: &Graph, clique: &[usize], d: usize) -> String {
    let mut out = String::new();
    for &v in clique {
        out.push(PERCENT);
        out.push_str(&non_adjacent_gadget(g, v, d));
    }
    out
}

/// Reduction from 3k-Clique: the pattern matches the text iff `g` has a
/// clique on `3k` vertices.
///
/// `r = [01%#]* # ((¬D ¢ ¬D) ∩ ¬D ∩ [01]Σ*[01]) # [01%#]*`. The last
/// conjunct pins the middle to start inside a vertex gadget and end inside a
/// list gadget; without it the middle may begin or end at one of the `$`
/// delimiters, where `¬D` holds vacuously.
pub fn clique_to_ere(g: &Graph, k: usize) -> Result<ReductionOutput> {
    if k == 0 {
        return Err(Error::Range { what: "k", value: k });
    }
    if g.vertex_count() == 0 {
        return Err(Error::InvalidInstance("graph has no vertices"));
    }
    let d = code_width(g.vertex_count());
    let cliques = enumerate_k_cliques(g, k);
    let vgs: Vec<String> = cliques.iter().map(|t| vertex_gadget(t, d)).collect();
    let lgs: Vec<String> = cliques.iter().map(|t| list_gadget(g, t, d)).collect();

    let mut text = String::new();
    for vg in &vgs {
        text.push(HASH);
        text.push_str(vg);
    }
    text.extend([HASH, DOLLAR]);
    for (vg, lg) in vgs.iter().zip(&lgs) {
        text.push(HASH);
        text.push_str(lg);
        text.push(CENT);
        text.push_str(vg);
    }
    text.extend([HASH, DOLLAR, HASH]);
    for lg in &lgs {
        text.push_str(lg);
        text.push(HASH);
    }

    let alphabet = clique_alphabet();
    let not_disconn = Ast::complement(build_disconn(d, &alphabet)?);
    let filler = star_class(&[ZERO, ONE, PERCENT, HASH]);
    let bit_ends = Ast::Concat(vec![bits_class(), Ast::star(alphabet.any()), bits_class()]);
    let middle = Ast::Intersect(vec![
        Ast::Concat(vec![not_disconn.clone(), Ast::sym(CENT), not_disconn.clone()]),
        not_disconn,
        bit_ends,
    ]);
    let pattern = Ast::Concat(vec![filler.clone(), Ast::sym(HASH), middle, Ast::sym(HASH), filler]);
    Ok(ReductionOutput::new(text, pattern, alphabet, Construction::CliqueEre))
}

//! Pattern AST, textual grammar, parser and renderer.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! union   := inter ( '|' inter )*
//! inter   := concat ( '&' concat )*
//! concat  := unary+
//! unary   := '~' unary | postfix
//! postfix := atom '*'*
//! atom    := '(' ')'                      epsilon
//!          | '(' union ')'                group
//!          | '(?<' digits '>' union ')'   capture
//!          | '[' item* ']'                class ("[]" is the empty language)
//!          | '\' digit | '\{' digits '}'  backreference
//!          | '\' meta                     escaped literal
//!          | symbol                       any character that is not meta
//! meta    := '|' '&' '~' '*' '(' ')' '[' ']' '\' '?'
//! ```

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::{Error, Result};

const META: &[char] = &['|', '&', '~', '*', '(', ')', '[', ']', '\\', '?'];

fn is_meta(c: char) -> bool {
    META.contains(&c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub char);

impl Symbol {
    pub fn as_char(self) -> char {
        self.0
    }
}

impl From<char> for Symbol {
    fn from(c: char) -> Self {
        Symbol(c)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char(self.0)
    }
}

/// Ordered set of symbols. Complement is always taken relative to this set,
/// never relative to whatever happens to occur in a subject string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let mut out: Vec<Symbol> = Vec::new();
        for s in symbols {
            let s = s.into();
            if out.contains(&s) {
                return Err(Error::InvalidAlphabet("duplicate symbol"));
            }
            out.push(s);
        }
        if out.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty"));
        }
        Ok(Alphabet { symbols: out })
    }

    /// Alphabet from the characters of `s`, in order.
    pub fn from_chars(s: &str) -> Result<Self> {
        Alphabet::new(s.chars())
    }

    /// Symbols of the pattern followed by any new symbols of the subject, in
    /// order of first appearance.
    pub fn infer(ast: &Ast, text: &str) -> Result<Self> {
        let mut out = ast.symbols();
        for c in text.chars() {
            let s = Symbol(c);
            if !out.contains(&s) {
                out.push(s);
            }
        }
        Alphabet::new(out)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.symbols.contains(&s)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.iter().copied()
    }

    /// Converts `text` to symbols, rejecting anything outside the alphabet.
    pub fn encode(&self, text: &str) -> Result<Vec<Symbol>> {
        text.chars()
            .enumerate()
            .map(|(pos, c)| {
                let s = Symbol(c);
                if self.contains(s) {
                    Ok(s)
                } else {
                    Err(Error::UnknownSymbol { symbol: c, pos })
                }
            })
            .collect()
    }

    /// The class `Σ` of all symbols.
    pub fn any(&self) -> Ast {
        Ast::Class(self.symbols.iter().copied().collect())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_char(s.0)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ast {
    Literal(Symbol),
    /// The empty language.
    Empty,
    Epsilon,
    Concat(Vec<Ast>),
    Union(Vec<Ast>),
    Star(Box<Ast>),
    Class(BTreeSet<Symbol>),
    Intersect(Vec<Ast>),
    Complement(Box<Ast>),
    Capture(u32, Box<Ast>),
    Backref(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dialect {
    Plain,
    SemiEre,
    Ere,
    Rewb,
}

impl Dialect {
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Plain => "plain",
            Dialect::SemiEre => "semi-ere",
            Dialect::Ere => "ere",
            Dialect::Rewb => "rewb",
        }
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Ast {
    pub fn sym(c: char) -> Ast {
        Ast::Literal(Symbol(c))
    }

    /// Concatenation of the characters of `s`.
    pub fn word(s: &str) -> Ast {
        Ast::concat(s.chars().map(Ast::sym).collect())
    }

    pub fn class<I, S>(symbols: I) -> Ast
    where
        I: IntoIterator<Item = S>,
        S: Into<Symbol>,
    {
        let set: BTreeSet<Symbol> = symbols.into_iter().map(Into::into).collect();
        if set.is_empty() {
            Ast::Empty
        } else {
            Ast::Class(set)
        }
    }

    pub fn concat(mut items: Vec<Ast>) -> Ast {
        match items.len() {
            0 => Ast::Epsilon,
            1 => items.pop().unwrap(),
            _ => Ast::Concat(items),
        }
    }

    pub fn union(mut items: Vec<Ast>) -> Ast {
        match items.len() {
            0 => Ast::Empty,
            1 => items.pop().unwrap(),
            _ => Ast::Union(items),
        }
    }

    /// The intersection of no operands is `~[]`, i.e. every string.
    pub fn intersect(mut items: Vec<Ast>) -> Ast {
        match items.len() {
            0 => Ast::complement(Ast::Empty),
            1 => items.pop().unwrap(),
            _ => Ast::Intersect(items),
        }
    }

    pub fn star(body: Ast) -> Ast {
        Ast::Star(Box::new(body))
    }

    pub fn complement(body: Ast) -> Ast {
        Ast::Complement(Box::new(body))
    }

    pub fn capture(index: u32, body: Ast) -> Ast {
        Ast::Capture(index, Box::new(body))
    }

    /// `self` concatenated `k` times.
    pub fn repeat(&self, k: usize) -> Ast {
        Ast::concat(core::iter::repeat_n(self.clone(), k).collect())
    }

    pub fn children(&self) -> &[Ast] {
        match self {
            Ast::Concat(xs) | Ast::Union(xs) | Ast::Intersect(xs) => xs,
            Ast::Star(b) | Ast::Complement(b) | Ast::Capture(_, b) => core::slice::from_ref(b),
            _ => &[],
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(Ast::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(Ast::depth).max().unwrap_or(0)
    }

    /// Literal and class symbols in order of first appearance.
    pub fn symbols(&self) -> Vec<Symbol> {
        fn walk(ast: &Ast, out: &mut Vec<Symbol>) {
            let mut push = |s: Symbol| {
                if !out.contains(&s) {
                    out.push(s);
                }
            };
            match ast {
                Ast::Literal(s) => push(*s),
                Ast::Class(set) => set.iter().for_each(|s| push(*s)),
                _ => {}
            }
            for c in ast.children() {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// Checks every literal and class member against `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for s in self.symbols() {
            if !alphabet.contains(s) {
                return Err(Error::UnknownSymbol { symbol: s.0, pos: 0 });
            }
        }
        Ok(())
    }

    /// Structural checks: list nodes have at least two operands, classes are
    /// non-empty, capture indices are positive and unique, every backreference
    /// has its group, and the dialect is not mixed.
    pub fn validate(&self) -> Result<Dialect> {
        let mut captures = BTreeSet::new();
        let mut backrefs = BTreeSet::new();
        self.validate_rec(&mut captures, &mut backrefs)?;
        if let Some(&i) = backrefs.difference(&captures).next() {
            return Err(Error::DanglingBackref(i));
        }
        classify(self)
    }

    fn validate_rec(&self, captures: &mut BTreeSet<u32>, backrefs: &mut BTreeSet<u32>) -> Result<()> {
        match self {
            Ast::Concat(xs) | Ast::Union(xs) | Ast::Intersect(xs) if xs.len() < 2 => {
                return Err(Error::Malformed("list node with fewer than two operands"));
            }
            Ast::Class(set) if set.is_empty() => {
                return Err(Error::Malformed("empty class (use Empty)"));
            }
            Ast::Capture(0, _) | Ast::Backref(0) => {
                return Err(Error::Malformed("capture indices start at 1"));
            }
            Ast::Capture(i, _) => {
                if !captures.insert(*i) {
                    return Err(Error::DuplicateCapture(*i));
                }
            }
            Ast::Backref(i) => {
                backrefs.insert(*i);
            }
            _ => {}
        }
        for c in self.children() {
            c.validate_rec(captures, backrefs)?;
        }
        Ok(())
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ast(self, f)
    }
}

/// Smallest dialect containing every node kind of `ast`.
pub fn classify(ast: &Ast) -> Result<Dialect> {
    #[derive(Default)]
    struct Flags {
        intersect: bool,
        complement: bool,
        backref: bool,
    }
    fn walk(ast: &Ast, flags: &mut Flags) {
        match ast {
            Ast::Intersect(_) => flags.intersect = true,
            Ast::Complement(_) => flags.complement = true,
            Ast::Capture(..) | Ast::Backref(_) => flags.backref = true,
            _ => {}
        }
        for c in ast.children() {
            walk(c, flags);
        }
    }
    let mut flags = Flags::default();
    walk(ast, &mut flags);
    match flags {
        Flags { backref: true, intersect, complement } if intersect || complement => Err(Error::MixedDialect),
        Flags { backref: true, .. } => Ok(Dialect::Rewb),
        Flags { complement: true, .. } => Ok(Dialect::Ere),
        Flags { intersect: true, .. } => Ok(Dialect::SemiEre),
        _ => Ok(Dialect::Plain),
    }
}

/// Parses `text`, checking every literal against `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Ast> {
    parse_with(text, Some(alphabet))
}

/// Parses `text` without an alphabet; used when the alphabet is inferred.
pub fn parse_unchecked(text: &str) -> Result<Ast> {
    parse_with(text, None)
}

fn parse_with(text: &str, alphabet: Option<&Alphabet>) -> Result<Ast> {
    let chars: Vec<char> = text.chars().collect();
    let mut p = Parser { chars: &chars, pos: 0, alphabet };
    let ast = p.union()?;
    if p.pos != chars.len() {
        return Err(p.error("unmatched ')'"));
    }
    ast.validate()?;
    Ok(ast)
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: Option<&'a Alphabet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &'static str) -> Error {
        Error::Syntax { pos: self.pos, msg }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, msg: &'static str) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(msg))
        }
    }

    fn union(&mut self) -> Result<Ast> {
        let mut items = alloc::vec![self.inter()?];
        while self.eat('|') {
            items.push(self.inter()?);
        }
        Ok(Ast::union(items))
    }

    fn inter(&mut self) -> Result<Ast> {
        let mut items = alloc::vec![self.concat()?];
        while self.eat('&') {
            items.push(self.concat()?);
        }
        Ok(Ast::intersect(items))
    }

    fn concat(&mut self) -> Result<Ast> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if matches!(c, '|' | '&' | ')') {
                break;
            }
            items.push(self.unary()?);
        }
        if items.is_empty() {
            return Err(self.error("expected an expression"));
        }
        Ok(Ast::concat(items))
    }

    fn unary(&mut self) -> Result<Ast> {
        if self.eat('~') {
            return Ok(Ast::complement(self.unary()?));
        }
        let mut ast = self.atom()?;
        while self.eat('*') {
            ast = Ast::star(ast);
        }
        Ok(ast)
    }

    fn atom(&mut self) -> Result<Ast> {
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of pattern"));
        };
        self.pos += 1;
        match c {
            '(' => {
                if self.eat(')') {
                    return Ok(Ast::Epsilon);
                }
                if self.eat('?') {
                    self.expect('<', "expected '<' after '(?'")?;
                    let index = self.number()?;
                    self.expect('>', "expected '>' after capture index")?;
                    let body = self.union()?;
                    self.expect(')', "unclosed capture group")?;
                    return Ok(Ast::capture(index, body));
                }
                let body = self.union()?;
                self.expect(')', "unclosed group")?;
                Ok(body)
            }
            '[' => {
                let mut set = BTreeSet::new();
                loop {
                    match self.peek() {
                        None => return Err(self.error("unclosed class")),
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        Some('\\') => {
                            self.pos += 1;
                            match self.peek() {
                                Some(m) if is_meta(m) => {
                                    self.pos += 1;
                                    set.insert(self.symbol(m, self.pos - 1)?);
                                }
                                _ => return Err(self.error("invalid escape in class")),
                            }
                        }
                        Some(m) if is_meta(m) => return Err(self.error("unescaped metacharacter in class")),
                        Some(m) => {
                            self.pos += 1;
                            set.insert(self.symbol(m, self.pos - 1)?);
                        }
                    }
                }
                Ok(if set.is_empty() { Ast::Empty } else { Ast::Class(set) })
            }
            '\\' => match self.peek() {
                Some(d @ '1'..='9') => {
                    self.pos += 1;
                    Ok(Ast::Backref(d as u32 - '0' as u32))
                }
                Some('{') => {
                    self.pos += 1;
                    let index = self.number()?;
                    self.expect('}', "expected '}' after backreference index")?;
                    Ok(Ast::Backref(index))
                }
                Some(m) if is_meta(m) => {
                    self.pos += 1;
                    Ok(Ast::Literal(self.symbol(m, start)?))
                }
                _ => Err(self.error("invalid escape")),
            },
            '*' => Err(Error::Syntax { pos: start, msg: "nothing to repeat" }),
            ')' | ']' | '|' | '&' | '?' => Err(Error::Syntax { pos: start, msg: "unexpected metacharacter" }),
            other => Ok(Ast::Literal(self.symbol(other, start)?)),
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d))
                .ok_or(Error::Syntax { pos: start, msg: "index too large" })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        if value == 0 {
            return Err(Error::Syntax { pos: start, msg: "capture indices start at 1" });
        }
        Ok(value)
    }

    fn symbol(&self, c: char, pos: usize) -> Result<Symbol> {
        let s = Symbol(c);
        match self.alphabet {
            Some(a) if !a.contains(s) => Err(Error::UnknownSymbol { symbol: c, pos }),
            _ => Ok(s),
        }
    }
}

/// Binding strength used by the renderer; larger binds tighter.
fn precedence(ast: &Ast) -> u8 {
    match ast {
        Ast::Union(_) => 0,
        Ast::Intersect(_) => 1,
        Ast::Concat(_) => 2,
        Ast::Complement(_) => 3,
        Ast::Star(_) => 4,
        _ => 5,
    }
}

pub fn render(ast: &Ast) -> String {
    let mut out = String::new();
    write_ast(ast, &mut out).expect("writing to a String cannot fail");
    out
}

fn write_symbol<W: fmt::Write>(s: Symbol, out: &mut W) -> fmt::Result {
    if is_meta(s.0) {
        out.write_char('\\')?;
    }
    out.write_char(s.0)
}

fn write_operand<W: fmt::Write>(ast: &Ast, min: u8, out: &mut W) -> fmt::Result {
    if precedence(ast) >= min {
        write_ast(ast, out)
    } else {
        out.write_char('(')?;
        write_ast(ast, out)?;
        out.write_char(')')
    }
}

fn write_ast<W: fmt::Write>(ast: &Ast, out: &mut W) -> fmt::Result {
    match ast {
        Ast::Literal(s) => write_symbol(*s, out),
        Ast::Empty => out.write_str("[]"),
        Ast::Epsilon => out.write_str("()"),
        Ast::Class(set) => {
            out.write_char('[')?;
            for s in set {
                write_symbol(*s, out)?;
            }
            out.write_char(']')
        }
        Ast::Concat(xs) => xs.iter().try_for_each(|x| write_operand(x, 3, out)),
        Ast::Union(xs) | Ast::Intersect(xs) => {
            let (sep, min) = if matches!(ast, Ast::Union(_)) { ('|', 1) } else { ('&', 2) };
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    out.write_char(sep)?;
                }
                write_operand(x, min, out)?;
            }
            Ok(())
        }
        Ast::Star(b) => {
            write_operand(b, 5, out)?;
            out.write_char('*')
        }
        Ast::Complement(b) => {
            out.write_char('~')?;
            if matches!(**b, Ast::Complement(_)) {
                write_ast(b, out)
            } else {
                write_operand(b, 5, out)
            }
        }
        Ast::Capture(i, b) => {
            write!(out, "(?<{i}>")?;
            write_ast(b, out)?;
            out.write_char(')')
        }
        Ast::Backref(i) if *i < 10 => write!(out, "\\{i}"),
        Ast::Backref(i) => write!(out, "\\{{{i}}}"),
    }
}

/// Pattern length `m`: grammar tokens of the rendered pattern. Every class
/// member, operator and parenthesis counts once; an escape, a backreference
/// and a capture opener `(?<k>` each count as one token.
pub fn pattern_length(ast: &Ast) -> usize {
    token_count(&render(ast))
}

fn token_count(text: &str) -> usize {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut count = 0;
    while i < chars.len() {
        match chars[i] {
            '\\' if chars.get(i + 1) == Some(&'{') => {
                while i < chars.len() && chars[i] != '}' {
                    i += 1;
                }
                i += 1;
            }
            '\\' => i += 2,
            '(' if chars.get(i + 1) == Some(&'?') => {
                while i < chars.len() && chars[i] != '>' {
                    i += 1;
                }
                i += 1;
            }
            _ => i += 1,
        }
        count += 1;
    }
    count
}

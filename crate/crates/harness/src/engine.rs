use std::fmt;
use std::str::FromStr;

use xre_core::{compile_nfa, ere_match, nfa_match, rewb_match, Alphabet, Ast, Dialect};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Thompson,
    Ere,
    Rewb,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Thompson, Engine::Ere, Engine::Rewb];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Thompson => "thompson",
            Engine::Ere => "ere",
            Engine::Rewb => "rewb",
        }
    }

    pub fn accepts(self, dialect: Dialect) -> bool {
        match self {
            Engine::Thompson => dialect == Dialect::Plain,
            Engine::Ere => dialect != Dialect::Rewb,
            Engine::Rewb => matches!(dialect, Dialect::Plain | Dialect::Rewb),
        }
    }

    /// Whole-text match. The alphabet matters only for complement.
    pub fn run(self, ast: &Ast, text: &str, alphabet: &Alphabet) -> xre_core::Result<bool> {
        match self {
            Engine::Thompson => nfa_match(&compile_nfa(ast)?, text, alphabet),
            Engine::Ere => ere_match(ast, text, alphabet),
            Engine::Rewb => {
                alphabet.encode(text)?;
                rewb_match(ast, text)
            }
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Engine::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine {s:?} (expected thompson, ere or rewb)"))
    }
}

//! Text syntax for permutations, values, propositions and atom sets.
//!
//! ```text
//! perm  := "()" | cycle+                  cycle := "(" atom* ")"
//! value := atom <a> | unit | nat <n> | inl <v> | inr <v> | pair <v> <v>
//!        | seq { <n>:<a>, .. } star | seq { .. } oracle(<name>, <a>)
//!        | abar <a> <prop> | subset <a> <prop> | ( <v> )
//! prop  := true | false | allzeros(<name>) | allzeros(<name>, {<n>, ..})
//!        | oracle:<name> | not <p> | and <p> <p> | or <p> <p> | ( <p> )
//! set   := { <a>, .. }
//! ```
//!
//! Juxtaposed cycles are read left to right: in `(a0 a1)(a1 a2)` the cycle
//! `(a0 a1)` acts first, so the product sends `a2` to `a1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::atoms::{Atom, AtomSet};
use crate::counterexamples::lookup_oracle;
use crate::nomset::{CondSet, NomValue, Tail};
use crate::perm::FinPerm;
use crate::prop::Prop;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Character offset into the input.
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at column {}: {}", self.pos + 1, self.message)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> Parser {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected `{c}`, found `{found}`")),
                None => self.error(format!("expected `{c}`, found end of input")),
            }
        }
    }

    fn finish(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected trailing `{c}`")),
        }
    }

    fn word(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '-')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.chars.get(self.pos) {
                Some(c) => self.error(format!("expected a word, found `{c}`")),
                None => self.error("expected a word, found end of input"),
            };
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> PResult<Atom> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word()?;
        w.parse().map_err(|_| ParseError {
            pos: start,
            message: format!("expected an atom like a0, found `{w}`"),
        })
    }

    fn number(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| ParseError {
            pos: start,
            message: "expected a natural number".into(),
        })
    }

    /// Reads up to the next `,` or `)` outside braces.
    fn oracle_name(&mut self) -> PResult<String> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0usize;
        while let Some(&c) = self.chars.get(self.pos) {
            match c {
                '{' => depth += 1,
                '}' => depth = depth.saturating_sub(1),
                ',' | ')' if depth == 0 => break,
                c if c.is_whitespace() && depth == 0 => break,
                _ => {}
            }
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an oracle name");
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn resolve(&self, name: &str, at: usize) -> PResult<crate::prop::BinSeqOracle> {
        lookup_oracle(name).map_err(|e| ParseError {
            pos: at,
            message: e.to_string(),
        })
    }

    fn perm(&mut self) -> PResult<FinPerm> {
        let mut acc = FinPerm::identity();
        if self.peek().is_none() {
            return self.error("expected a permutation such as (a0 a1) or ()");
        }
        while self.peek().is_some() {
            let open = self.pos;
            self.expect('(')?;
            let mut cycle = Vec::new();
            while !self.eat(')') {
                let at = self.pos;
                let a = self.atom()?;
                if cycle.contains(&a) {
                    return Err(ParseError {
                        pos: at,
                        message: format!("atom {a} repeated within one cycle"),
                    });
                }
                cycle.push(a);
            }
            let c = FinPerm::cycle(&cycle).map_err(|e| ParseError {
                pos: open,
                message: e.to_string(),
            })?;
            acc = c.compose(&acc);
        }
        Ok(acc)
    }

    fn value(&mut self) -> PResult<NomValue> {
        if self.eat('(') {
            let v = self.value()?;
            self.expect(')')?;
            return Ok(v);
        }
        let start = self.pos;
        let keyword = self.word()?;
        Ok(match keyword.as_str() {
            "atom" => NomValue::Atom(self.atom()?),
            "unit" => NomValue::Unit,
            "nat" => NomValue::Nat(self.number()?),
            "inl" => NomValue::inl(self.value()?),
            "inr" => NomValue::inr(self.value()?),
            "pair" => {
                let v = self.value()?;
                let w = self.value()?;
                NomValue::pair(v, w)
            }
            "seq" => self.seq()?,
            "abar" => {
                let a = self.atom()?;
                NomValue::CondSet(CondSet::abar(a, self.prop()?))
            }
            "subset" => {
                let a = self.atom()?;
                NomValue::CondSet(CondSet::subset(a, self.prop()?))
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unknown value form `{other}`"),
                })
            }
        })
    }

    fn seq(&mut self) -> PResult<NomValue> {
        self.expect('{')?;
        let mut entries = BTreeMap::new();
        while !self.eat('}') {
            let at = self.pos;
            let n = self.number()?;
            self.expect(':')?;
            let a = self.atom()?;
            if entries.insert(n, a).is_some() {
                return Err(ParseError {
                    pos: at,
                    message: format!("position {n} listed twice"),
                });
            }
            if !self.eat(',') && self.peek() != Some('}') {
                return self.error("expected `,` or `}`");
            }
        }
        let at = self.pos;
        let tail = match self.word()?.as_str() {
            "star" => Tail::Star,
            "oracle" => {
                self.expect('(')?;
                let name_at = self.pos;
                let name = self.oracle_name()?;
                let oracle = self.resolve(&name, name_at)?;
                self.expect(',')?;
                let atom = self.atom()?;
                self.expect(')')?;
                Tail::Oracle { oracle, atom }
            }
            other => {
                return Err(ParseError {
                    pos: at,
                    message: format!("expected `star` or `oracle(..)`, found `{other}`"),
                })
            }
        };
        Ok(NomValue::seq(entries, tail))
    }

    fn prop(&mut self) -> PResult<Prop> {
        if self.eat('(') {
            let p = self.prop()?;
            self.expect(')')?;
            return Ok(p);
        }
        let start = self.pos;
        let keyword = self.word()?;
        Ok(match keyword.as_str() {
            "true" => Prop::TRUE,
            "false" => Prop::FALSE,
            "not" => Prop::not(self.prop()?),
            "and" => {
                let p = self.prop()?;
                Prop::and(p, self.prop()?)
            }
            "or" => {
                let p = self.prop()?;
                Prop::or(p, self.prop()?)
            }
            "allzeros" => {
                self.expect('(')?;
                let at = self.pos;
                let name = self.oracle_name()?;
                let oracle = self.resolve(&name, at)?;
                let mut skip = BTreeSet::new();
                if self.eat(',') {
                    self.expect('{')?;
                    while !self.eat('}') {
                        skip.insert(self.number()?);
                        self.eat(',');
                    }
                }
                self.expect(')')?;
                Prop::all_zeros_except(oracle, skip)
            }
            "oracle" => {
                self.expect(':')?;
                let at = self.pos;
                let name = self.oracle_name()?;
                Prop::all_zeros(self.resolve(&name, at)?)
            }
            other => {
                return Err(ParseError {
                    pos: start,
                    message: format!("unknown proposition `{other}`"),
                })
            }
        })
    }

    fn atom_set(&mut self) -> PResult<AtomSet> {
        self.expect('{')?;
        let mut out = AtomSet::new();
        while !self.eat('}') {
            out.insert(self.atom()?);
            if !self.eat(',') && self.peek() != Some('}') {
                return self.error("expected `,` or `}`");
            }
        }
        Ok(out)
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(text);
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_perm(text: &str) -> Result<FinPerm, ParseError> {
    whole(text, Parser::perm)
}

pub fn parse_value(text: &str) -> Result<NomValue, ParseError> {
    whole(text, Parser::value)
}

pub fn parse_prop(text: &str) -> Result<Prop, ParseError> {
    whole(text, Parser::prop)
}

pub fn parse_atom_set(text: &str) -> Result<AtomSet, ParseError> {
    whole(text, Parser::atom_set)
}

pub fn parse_atom(text: &str) -> Result<Atom, ParseError> {
    whole(text, Parser::atom)
}

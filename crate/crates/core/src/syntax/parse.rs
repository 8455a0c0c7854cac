//! Recursive-descent parser for formulae, arrow terms and equations.
//!
//! Precedence, loosest first: `→` (right-associative), `⊔`, `⊓`, `∧`.
//! A chain of the same non-associative operator (`p ∧ q ∧ r`, `f . g . h`)
//! is rejected: reassociation is an arrow, not a parsing convention.

use std::sync::Arc;

use thiserror::Error;

use super::formula::{ArrowType, Formula};
use super::term::ArrowTerm;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token {found:?} at position {position}")]
    UnknownToken { position: usize, found: String },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(
        "arity error at position {position}: `{name}` takes {expected} argument(s), got {found}"
    )]
    Arity {
        position: usize,
        name: String,
        expected: usize,
        found: usize,
    },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::UnknownToken { position, .. }
            | ParseError::Syntax { position, .. }
            | ParseError::Arity { position, .. } => *position,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    AddUnit,
    And,
    Arrow,
    Meet,
    Join,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Star,
    Question,
    Turnstile,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::End => "end of input".to_string(),
            other => format!("{other:?}"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let next = chars.get(i + 1).copied();
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '.' | '∘' => Tok::Dot,
            '*' => Tok::Star,
            '?' => Tok::Question,
            '=' => Tok::Equals,
            '+' | '⊔' => Tok::Join,
            '⊓' => Tok::Meet,
            '∧' => Tok::And,
            '→' => Tok::Arrow,
            '⊢' => Tok::Turnstile,
            '⊤' => {
                if next == Some('ₐ') {
                    i += 1;
                    Tok::AddUnit
                } else {
                    Tok::Top
                }
            }
            '/' if next == Some('\\') => {
                i += 1;
                Tok::And
            }
            '-' if next == Some('>') => {
                i += 1;
                Tok::Arrow
            }
            '|' if next == Some('-') => {
                i += 1;
                Tok::Turnstile
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'')
                {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                i = j - 1;
                match word.as_str() {
                    "T" => Tok::Top,
                    "Ta" => Tok::AddUnit,
                    "x" => Tok::Meet,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(ParseError::UnknownToken {
                    position: start,
                    found: other.to_string(),
                });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            idx: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn pos(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", self.peek().describe()))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.peek().describe()))
        }
    }

    // formula := coprod ('→' formula)?
    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.coprod()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn binary_level(
        &mut self,
        op: Tok,
        symbol: &str,
        operand: fn(&mut Parser) -> Result<Formula, ParseError>,
        build: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula, ParseError> {
        let lhs = operand(self)?;
        if self.eat(&op) {
            let rhs = operand(self)?;
            if *self.peek() == op {
                return self.error(format!("ambiguous chain of `{symbol}`; add parentheses"));
            }
            return Ok(build(lhs, rhs));
        }
        Ok(lhs)
    }

    fn coprod(&mut self) -> Result<Formula, ParseError> {
        self.binary_level(Tok::Join, "⊔", Parser::prod, Formula::coprod)
    }

    fn prod(&mut self) -> Result<Formula, ParseError> {
        self.binary_level(Tok::Meet, "⊓", Parser::conj, Formula::prod)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        self.binary_level(Tok::And, "∧", Parser::formula_atom, Formula::conj)
    }

    fn formula_atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Letter(Arc::from(name.as_str())))
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::AddUnit => {
                self.bump();
                Ok(Formula::AddUnit)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(f)
            }
            other => self.error(format!("expected a formula, found {}", other.describe())),
        }
    }

    // term := tens ('.' tens)?
    fn term(&mut self) -> Result<ArrowTerm, ParseError> {
        let lhs = self.tens()?;
        if self.eat(&Tok::Dot) {
            let rhs = self.tens()?;
            if *self.peek() == Tok::Dot {
                return self.error("ambiguous chain of `.`; add parentheses");
            }
            return Ok(ArrowTerm::comp(lhs, rhs));
        }
        Ok(lhs)
    }

    // tens := term_atom ('*' term_atom)?
    fn tens(&mut self) -> Result<ArrowTerm, ParseError> {
        let lhs = self.term_atom()?;
        if self.eat(&Tok::Star) || self.eat(&Tok::And) {
            let rhs = self.term_atom()?;
            if matches!(self.peek(), Tok::Star | Tok::And) {
                return self.error("ambiguous chain of `*`; add parentheses");
            }
            return Ok(ArrowTerm::tens(lhs, rhs));
        }
        Ok(lhs)
    }

    fn term_atom(&mut self) -> Result<ArrowTerm, ParseError> {
        let start = self.pos();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let save = self.idx;
                if let Some(t) = self.try_hom_functor()? {
                    return Ok(t);
                }
                self.idx = save;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Question => {
                self.bump();
                let name = match self.bump() {
                    Tok::Ident(n) => n,
                    other => {
                        return Err(ParseError::Syntax {
                            position: start + 1,
                            message: format!("expected a hole name, found {}", other.describe()),
                        })
                    }
                };
                let args = self.formula_args()?;
                if args.len() != 2 {
                    return Err(ParseError::Arity {
                        position: start,
                        name: format!("?{name}"),
                        expected: 2,
                        found: args.len(),
                    });
                }
                let mut it = args.into_iter();
                let ty = ArrowType::new(it.next().unwrap(), it.next().unwrap());
                Ok(ArrowTerm::hole(&name, ty))
            }
            Tok::Ident(name) => {
                self.bump();
                self.primitive(&name, start)
            }
            other => self.error(format!(
                "expected an arrow term, found {}",
                other.describe()
            )),
        }
    }

    /// After an opening parenthesis: `A -> f )`. Returns `None` when the input
    /// is not of that shape so that the caller can backtrack.
    fn try_hom_functor(&mut self) -> Result<Option<ArrowTerm>, ParseError> {
        let a = match self.coprod() {
            Ok(a) => a,
            Err(_) => return Ok(None),
        };
        if !self.eat(&Tok::Arrow) {
            return Ok(None);
        }
        let f = self.term()?;
        self.expect(&Tok::RParen, "`)`")?;
        Ok(Some(ArrowTerm::hom(a, f)))
    }

    fn formula_args(&mut self) -> Result<Vec<Formula>, ParseError> {
        self.expect(&Tok::LBracket, "`[`")?;
        let mut args = vec![self.formula()?];
        while self.eat(&Tok::Comma) {
            args.push(self.formula()?);
        }
        self.expect(&Tok::RBracket, "`]`")?;
        Ok(args)
    }

    fn term_args(&mut self) -> Result<(ArrowTerm, ArrowTerm), ParseError> {
        self.expect(&Tok::LParen, "`(`")?;
        let f = self.term()?;
        self.expect(&Tok::Comma, "`,`")?;
        let g = self.term()?;
        self.expect(&Tok::RParen, "`)`")?;
        Ok((f, g))
    }

    fn primitive(&mut self, name: &str, start: usize) -> Result<ArrowTerm, ParseError> {
        use ArrowTerm::*;
        match name {
            "pair" => {
                let (f, g) = self.term_args()?;
                return Ok(ArrowTerm::pair(f, g));
            }
            "copair" => {
                let (f, g) = self.term_args()?;
                return Ok(ArrowTerm::copair(f, g));
            }
            _ => {}
        }
        let arity = match name {
            "id" | "dR" | "dL" | "w" | "term" | "init" => 1,
            "c" | "eps" | "eta" | "p1" | "p2" | "i1" | "i2" => 2,
            "bR" | "bL" => 3,
            _ => {
                return Err(ParseError::Syntax {
                    position: start,
                    message: format!("no such primitive `{name}`"),
                });
            }
        };
        let args = self.formula_args()?;
        if args.len() != arity {
            return Err(ParseError::Arity {
                position: start,
                name: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        let mut it = args.into_iter();
        let mut next = || it.next().unwrap();
        Ok(match name {
            "id" => Id(next()),
            "dR" => DUnitR(next()),
            "dL" => DUnitL(next()),
            "w" => WDiag(next()),
            "term" => ToTerminal(next()),
            "init" => FromInitial(next()),
            "c" => CSym(next(), next()),
            "eps" => Eps(next(), next()),
            "eta" => Eta(next(), next()),
            "p1" => Proj1(next(), next()),
            "p2" => Proj2(next(), next()),
            "i1" => Inj1(next(), next()),
            "i2" => Inj2(next(), next()),
            "bR" => BAssocR(next(), next(), next()),
            "bL" => BAssocL(next(), next(), next()),
            _ => unreachable!(),
        })
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_arrow_term(text: &str) -> Result<ArrowTerm, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Parses `A ⊢ B` (or `A |- B`).
pub fn parse_arrow_type(text: &str) -> Result<ArrowType, ParseError> {
    let mut p = Parser::new(text)?;
    let a = p.formula()?;
    p.expect(&Tok::Turnstile, "`⊢`")?;
    let b = p.formula()?;
    p.finish()?;
    Ok(ArrowType::new(a, b))
}

/// Parses `f = g`.
pub fn parse_equation(text: &str) -> Result<(ArrowTerm, ArrowTerm), ParseError> {
    let mut p = Parser::new(text)?;
    let lhs = p.term()?;
    p.expect(&Tok::Equals, "`=`")?;
    let rhs = p.term()?;
    p.finish()?;
    Ok((lhs, rhs))
}

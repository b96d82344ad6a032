//! Concrete syntax for BV formulas.
//!
//! ```text
//! formula := par
//! par     := seq ("||" seq)*
//! seq     := tens (";" tens)*
//! tens    := unary ("*" unary)*
//! unary   := "~" unary | "1" | ident | "(" formula ")"
//! ```
//!
//! Binary connectives associate to the left; `~` binds tightest, then
//! `*`, `;`, `||`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Unit,
    Neg(Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Seq(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Box::new(a))
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn seq(a: Formula, b: Formula) -> Formula {
        Formula::Seq(Box::new(a), Box::new(b))
    }

    /// Atom names, in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        fn go(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    if !out.contains(a) {
                        out.push(a.clone());
                    }
                }
                Formula::Unit => {}
                Formula::Neg(a) => go(a, out),
                Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::Seq(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Binding strength: higher binds tighter.
    fn level(&self) -> u8 {
        match self {
            Formula::Par(..) => 0,
            Formula::Seq(..) => 1,
            Formula::Tensor(..) => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for Formula {
    /// The canonical form: minimal parentheses, single spaces around
    /// binary connectives.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, g: &Formula, min: u8| {
            if g.level() < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Unit => write!(f, "1"),
            Formula::Neg(a) => {
                write!(f, "~")?;
                wrap(f, a, 3)
            }
            Formula::Tensor(a, b) | Formula::Seq(a, b) | Formula::Par(a, b) => {
                let lvl = self.level();
                let op = match self {
                    Formula::Tensor(..) => "*",
                    Formula::Seq(..) => ";",
                    _ => "||",
                };
                wrap(f, a, lvl)?;
                write!(f, " {op} ")?;
                wrap(f, b, lvl + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Tilde,
    One,
    Ident(String),
    LParen,
    RParen,
    Star,
    Semi,
    Bars,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Tilde => "`~`".into(),
        Tok::One => "`1`".into(),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Star => "`*`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Bars => "`||`".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '~' => Tok::Tilde,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '*' => Tok::Star,
            ';' => Tok::Semi,
            '|' => {
                chars.next();
                if chars.peek().map(|&(_, c)| c) != Some('|') {
                    return Err(Error::Syntax { pos: i + 1, expected: vec!["`|`".into()] });
                }
                Tok::Bars
            }
            '1' => Tok::One,
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push((i, Tok::Ident(name)));
                continue;
            }
            _ => {
                return Err(Error::Syntax {
                    pos: i,
                    expected: ["`~`", "`1`", "identifier", "`(`"].map(String::from).to_vec(),
                })
            }
        };
        chars.next();
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn error(&self, expected: &[&str]) -> Error {
        Error::Syntax { pos: self.pos(), expected: expected.iter().map(|s| s.to_string()).collect() }
    }

    fn binary(
        &mut self,
        op: Tok,
        next: fn(&mut Parser) -> Result<Formula>,
        build: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula> {
        let mut acc = next(self)?;
        while self.peek() == Some(&op) {
            self.at += 1;
            acc = build(acc, next(self)?);
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<Formula> {
        self.binary(Tok::Bars, Parser::seq, Formula::par)
    }

    fn seq(&mut self) -> Result<Formula> {
        self.binary(Tok::Semi, Parser::tens, Formula::seq)
    }

    fn tens(&mut self) -> Result<Formula> {
        self.binary(Tok::Star, Parser::unary, Formula::tensor)
    }

    fn unary(&mut self) -> Result<Formula> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Tilde) => {
                self.at += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::One) => {
                self.at += 1;
                Ok(Formula::Unit)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Formula::Atom(name))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.par()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error(&["`)`", "`*`", "`;`", "`||`"]));
                }
                self.at += 1;
                Ok(f)
            }
            _ => Err(self.error(&["`~`", "`1`", "identifier", "`(`"])),
        }
    }
}

pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, at: 0, end: text.len() };
    let f = p.par()?;
    if let Some(t) = p.peek() {
        let mut e = p.error(&["`*`", "`;`", "`||`", "end of input"]);
        if let Error::Syntax { expected, .. } = &mut e {
            expected.push(format!("(found {})", describe(t)));
        }
        return Err(e);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        let a = || Formula::atom("a");
        let b = || Formula::atom("b");
        let c = || Formula::atom("c");
        assert_eq!(parse("~(a * b)").unwrap(), Formula::neg(Formula::tensor(a(), b())));
        assert_eq!(parse("a ; b ; c").unwrap(), Formula::seq(Formula::seq(a(), b()), c()));
        assert_eq!(
            parse("a || b ; c * ~a").unwrap(),
            Formula::par(a(), Formula::seq(b(), Formula::tensor(c(), Formula::neg(a()))))
        );
        assert_eq!(parse("a * (b * c)").unwrap().to_string(), "a * (b * c)");
        assert_eq!(parse("(a * b) * c").unwrap().to_string(), "a * b * c");
        assert_eq!(parse("~~1").unwrap().to_string(), "~~1");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("a *") {
            Err(Error::Syntax { pos, expected }) => {
                assert_eq!(pos, 3);
                assert!(expected.contains(&"identifier".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(a"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("a | b"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("a b"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { pos: 0, .. })));
    }
}

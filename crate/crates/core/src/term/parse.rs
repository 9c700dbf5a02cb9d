//! Text syntax for terms and identities.
//!
//! ```text
//! identity := term ("=" | "<=") term
//! term     := factor { "|" factor }
//! factor   := atom { "&" atom }
//! atom     := IDENT | "(" term ")"
//! IDENT    := letter { letter | digit | "_" }
//! ```
//!
//! `&` (meet) binds tighter than `|` (join); both associate to the left.

use thiserror::Error;

use super::ast::{join, meet, Identity, LatticeTerm, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Meet,
    Join,
    LParen,
    RParen,
    Eq,
    Le,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '&' | '∧' => {
                out.push((pos, Tok::Meet));
                i += 1;
            }
            '|' | '∨' => {
                out.push((pos, Tok::Join));
                i += 1;
            }
            '(' => {
                out.push((pos, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::RParen));
                i += 1;
            }
            '=' => {
                out.push((pos, Tok::Eq));
                i += 1;
            }
            '<' if chars.get(i + 1).map(|c| c.1) == Some('=') => {
                out.push((pos, Tok::Le));
                i += 2;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().map(|c| c.1).collect();
                out.push((pos, Tok::Ident(name)));
            }
            other => {
                return Err(ParseError {
                    position: pos,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
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
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn term(&mut self) -> Result<LatticeTerm, ParseError> {
        let mut t = self.factor()?;
        while self.peek() == Some(&Tok::Join) {
            self.at += 1;
            t = join(t, self.factor()?);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<LatticeTerm, ParseError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Tok::Meet) {
            self.at += 1;
            t = meet(t, self.atom()?);
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<LatticeTerm, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(LatticeTerm::Var(name))
            }
            Some(Tok::LParen) => {
                let open = self.pos();
                self.at += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError {
                        position: self.pos(),
                        message: format!("unbalanced parenthesis opened at {open}"),
                    });
                }
                self.at += 1;
                Ok(t)
            }
            Some(Tok::RParen) => self.err("unbalanced closing parenthesis"),
            Some(_) => self.err("expected a variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(Tok::RParen) => self.err("unbalanced closing parenthesis"),
            Some(_) => self.err("unexpected trailing input"),
        }
    }
}

fn parser(text: &str) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.len(),
    })
}

pub fn parse_term(text: &str) -> Result<LatticeTerm, ParseError> {
    let mut p = parser(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut p = parser(text)?;
    let lhs = p.term()?;
    let mode = match p.peek() {
        Some(Tok::Eq) => Mode::Equation,
        Some(Tok::Le) => Mode::Inequation,
        _ => return p.err("expected '=' or '<='"),
    };
    p.at += 1;
    let rhs = p.term()?;
    p.finish()?;
    Ok(Identity::new(text.trim(), lhs, rhs, mode))
}

pub fn print_term(t: &LatticeTerm) -> String {
    match t {
        LatticeTerm::Var(v) => v.clone(),
        LatticeTerm::Join(a, b) => {
            let r = if matches!(**b, LatticeTerm::Join(..)) {
                format!("({})", print_term(b))
            } else {
                print_term(b)
            };
            format!("{} | {}", print_term(a), r)
        }
        LatticeTerm::Meet(a, b) => {
            let l = if matches!(**a, LatticeTerm::Join(..)) {
                format!("({})", print_term(a))
            } else {
                print_term(a)
            };
            let r = if matches!(**b, LatticeTerm::Var(_)) {
                print_term(b)
            } else {
                format!("({})", print_term(b))
            };
            format!("{l} & {r}")
        }
    }
}

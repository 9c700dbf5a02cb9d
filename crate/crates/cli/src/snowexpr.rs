//! Expressions over snowflake elements: literals `[a1,a2,a3]`, the pieces
//! `S1`, `S2`, `S3`, `&` (meet, binds tighter), `|` (join) and parentheses.

use anyhow::{anyhow, bail, Result};

use cvxlat::star::{snow_join, snow_meet, Snowflake};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expr(&mut self) -> Result<Snowflake> {
        let mut acc = self.factor()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            acc = snow_join(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Snowflake> {
        let mut acc = self.atom()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            acc = snow_meet(&acc, &self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Snowflake> {
        let at = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    bail!("position {}: expected ')'", self.pos);
                }
                self.pos += 1;
                Ok(e)
            }
            Some('[') => {
                let end = self.src[self.pos..]
                    .find(']')
                    .ok_or_else(|| anyhow!("position {}: unclosed '['", self.pos))?;
                let lit = &self.src[self.pos..=self.pos + end];
                self.pos += end + 1;
                Snowflake::parse(lit).map_err(|e| anyhow!("position {at}: {e}"))
            }
            Some('S') => {
                let piece = self.src[self.pos + 1..].chars().next();
                let i = match piece {
                    Some('1') => 0,
                    Some('2') => 1,
                    Some('3') => 2,
                    _ => bail!("position {}: expected S1, S2 or S3", self.pos),
                };
                self.pos += 2;
                Ok(Snowflake::piece(i))
            }
            Some(c) => bail!("position {}: unexpected {c:?}", self.pos),
            None => bail!("position {}: unexpected end of expression", self.pos),
        }
    }
}

pub fn evaluate(src: &str) -> Result<Snowflake> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        bail!("position {}: unexpected {c:?}", p.pos);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert_eq!(evaluate("[1,∞,∞] | [∞,1,∞]").unwrap().to_string(), "[1,1,2]");
        assert_eq!(evaluate("(S1 | S2) & S3").unwrap().to_string(), "[inf,inf,2]");
        assert_eq!(evaluate("(S1 | S2) & S3 | S2").unwrap().to_string(), "[3,1,2]");
        assert!(evaluate("[1,1,3]").is_err());
        assert!(evaluate("S1 |").is_err());
    }
}

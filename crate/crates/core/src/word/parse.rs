use super::WordTerm;
use crate::error::{Error, Result};

/// Parses a word. Grammar (whitespace ignored):
///
/// ```text
/// word    := factor+                         (left-associated product)
/// factor  := atom ('^-1')*
/// atom    := 'e' | 'x' digits | 'z' digits | '[' word ',' word ']' | '(' word ')'
/// ```
///
/// Indices start at 1 and must be contiguous.
pub fn parse_word(text: &str) -> Result<WordTerm> {
    let w = parse_tree(text)?;
    w.check_contiguous()?;
    Ok(w)
}

/// Parses without the contiguity check.
pub(crate) fn parse_tree(text: &str) -> Result<WordTerm> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        depth: 0,
        nodes: 0,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected input after word"));
    }
    Ok(w)
}

const MAX_NESTING: usize = 256;
/// Bounds tree size, and with it the recursion depth of printing and dropping.
const MAX_NODES: usize = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
    nodes: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn node(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return Err(self.error("word too long"));
        }
        Ok(())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn starts_atom(c: Option<u8>) -> bool {
        matches!(c, Some(b'e' | b'x' | b'z' | b'[' | b'('))
    }

    fn word(&mut self) -> Result<WordTerm> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error("nesting too deep"));
        }
        if !Self::starts_atom(self.peek()) {
            return Err(self.error("expected a term"));
        }
        let mut acc = self.factor()?;
        while Self::starts_atom(self.peek()) {
            let next = self.factor()?;
            self.node()?;
            acc = WordTerm::product(acc, next);
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WordTerm> {
        let mut t = self.atom()?;
        while self.peek() == Some(b'^') {
            let start = self.pos;
            if self.src[self.pos..].starts_with(b"^-1") {
                self.pos += 3;
                self.node()?;
                t = WordTerm::inverse(t);
            } else {
                return Err(Error::parse(start, "only the exponent ^-1 is supported"));
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<WordTerm> {
        self.node()?;
        match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                Ok(WordTerm::Identity)
            }
            Some(c @ (b'x' | b'z')) => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.src[self.pos..]
                    .iter()
                    .take_while(|b| b.is_ascii_digit())
                    .count();
                if digits == 0 {
                    return Err(self.error("expected an index"));
                }
                let text = std::str::from_utf8(&self.src[self.pos..self.pos + digits])
                    .expect("ascii digits");
                let index: usize = text
                    .parse()
                    .ok()
                    .filter(|&i| i <= u16::MAX as usize)
                    .ok_or_else(|| Error::parse(start, "index too large"))?;
                if index == 0 {
                    return Err(Error::parse(start, "indices start at 1"));
                }
                self.pos += digits;
                Ok(if c == b'x' {
                    WordTerm::Var(index)
                } else {
                    WordTerm::Param(index)
                })
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(WordTerm::commutator(a, b))
            }
            Some(b'(') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b')')?;
                Ok(a)
            }
            _ => Err(self.error("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err_pos(text: &str) -> usize {
        match parse_word(text) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn basic_forms() {
        assert_eq!(parse_word("e").unwrap(), WordTerm::Identity);
        assert_eq!(parse_word("e").unwrap().var_count(), 0);
        assert_eq!(
            parse_word(" x1  x1 ").unwrap(),
            WordTerm::product(WordTerm::var(1), WordTerm::var(1))
        );
        assert_eq!(
            parse_word("x1x2x3").unwrap(),
            WordTerm::product(
                WordTerm::product(WordTerm::var(1), WordTerm::var(2)),
                WordTerm::var(3)
            )
        );
        assert_eq!(
            parse_word("x1^-1^-1").unwrap(),
            WordTerm::inverse(WordTerm::inverse(WordTerm::var(1)))
        );
        assert_eq!(parse_word("(x1 x2)^-1").unwrap().to_string(), "(x1 x2)^-1");
        assert_eq!(parse_word("x1 (x2 z1)").unwrap().to_string(), "x1 (x2 z1)");
        assert_eq!(parse_word("(x1 x2) z1").unwrap().to_string(), "x1 x2 z1");
    }

    #[test]
    fn rejections() {
        assert_eq!(parse_err_pos("[[[x1,z1],z2],y]"), 14);
        assert_eq!(parse_err_pos("x0"), 0);
        assert_eq!(parse_err_pos("x1 z0"), 3);
        assert_eq!(parse_err_pos("x1^2"), 2);
        assert_eq!(parse_err_pos("[x1 x2]"), 6);
        assert_eq!(parse_err_pos(""), 0);
        assert_eq!(parse_err_pos("x"), 1);
        assert_eq!(parse_err_pos("x1)"), 2);
        assert_eq!(parse_err_pos("X1"), 0);
        assert!(parse_word("x99999999999999999999999").is_err());
        assert!(matches!(parse_word("x2"), Err(Error::Invalid(_))));
        assert!(matches!(parse_word("x1 z2"), Err(Error::Invalid(_))));
        let deep = "(".repeat(1000) + "x1" + &")".repeat(1000);
        assert!(parse_word(&deep).is_err());
        let long = "x1".to_string() + &"^-1".repeat(100_000);
        assert!(parse_word(&long).is_err());
        assert!(parse_word(&"x1 ".repeat(100_000)).is_err());
    }
}

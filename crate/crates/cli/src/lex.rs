//! Tokenizer for session scripts. Identifiers may contain primes (A') so
//! ring extensions read like the algebra they denote.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum TokKind {
    Ident(String),
    Int(i64),
    Sym(char),
}

impl fmt::Display for TokKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokKind::Ident(s) => write!(f, "`{s}`"),
            TokKind::Int(n) => write!(f, "`{n}`"),
            TokKind::Sym(c) => write!(f, "`{c}`"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tok {
    pub kind: TokKind,
    pub line: u32,
    pub col: u32,
}

/// A script problem with its position, 1-based.
#[derive(Clone, Debug)]
pub struct ScriptError {
    pub line: u32,
    pub col: u32,
    pub msg: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ScriptError {}

const SYMBOLS: &str = ";,=()[]^/*+-";

pub fn lex(src: &str) -> Result<Vec<Tok>, ScriptError> {
    let mut toks = Vec::new();
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            chars.next();
            col += 1;
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c.is_ascii_alphabetic() {
            let (l, co) = (line, col);
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                    s.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok { kind: TokKind::Ident(s), line: l, col: co });
        } else if c.is_ascii_digit() {
            let (l, co) = (line, col);
            let mut n: i64 = 0;
            while let Some(&c) = chars.peek() {
                if let Some(d) = c.to_digit(10) {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(i64::from(d)))
                        .ok_or_else(|| ScriptError {
                            line: l,
                            col: co,
                            msg: "integer literal too large".into(),
                        })?;
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            toks.push(Tok { kind: TokKind::Int(n), line: l, col: co });
        } else if SYMBOLS.contains(c) {
            toks.push(Tok { kind: TokKind::Sym(c), line, col });
            chars.next();
            col += 1;
        } else {
            return Err(ScriptError {
                line,
                col,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_comments() {
        let toks = lex("extend A' = A[z]; # to the quotient\ncheck").unwrap();
        assert_eq!(toks[1].kind, TokKind::Ident("A'".into()));
        let last = toks.last().unwrap();
        assert_eq!(last.kind, TokKind::Ident("check".into()));
        assert_eq!((last.line, last.col), (2, 1));
    }

    #[test]
    fn rejects_strays() {
        let err = lex("ring A = GF(2)[x]; $").unwrap_err();
        assert_eq!((err.line, err.col), (1, 20));
    }
}

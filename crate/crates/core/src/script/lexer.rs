use std::fmt;

use thiserror::Error;

/// Longest accepted script, in bytes.
pub const MAX_INPUT: usize = 64 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Name,
    Number,
    Pi,
    Star,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Minus,
    End,
}

impl TokenKind {
    pub fn describe(self) -> &'static str {
        match self {
            TokenKind::Name => "name",
            TokenKind::Number => "number",
            TokenKind::Pi => "'pi'",
            TokenKind::Star => "'*'",
            TokenKind::Slash => "'/'",
            TokenKind::LParen => "'('",
            TokenKind::RParen => "')'",
            TokenKind::LBracket => "'['",
            TokenKind::RBracket => "']'",
            TokenKind::Comma => "','",
            TokenKind::Minus => "'-'",
            TokenKind::End => "end of input",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset of the first character.
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct LexError {
    pub pos: usize,
    pub found: LexFault,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LexFault {
    Char(char),
    Word(String),
    TooLong(usize),
}

impl fmt::Display for LexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.found {
            LexFault::Char(c) => write!(f, "unexpected character {c:?} at offset {}", self.pos),
            LexFault::Word(w) => write!(f, "unknown name {w:?} at offset {}", self.pos),
            LexFault::TooLong(n) => {
                write!(
                    f,
                    "input is {n} bytes, limit is {MAX_INPUT} (offset {})",
                    self.pos
                )
            }
        }
    }
}

const NAMES: [&str; 6] = ["RX", "RY", "RZ", "R", "REF", "ID"];

/// Splits `text` into tokens, always ending with [`TokenKind::End`].
pub fn tokenize(text: &str) -> Result<Vec<Token>, LexError> {
    if text.len() > MAX_INPUT {
        return Err(LexError {
            pos: MAX_INPUT,
            found: LexFault::TooLong(text.len()),
        });
    }
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            b'[' => Some(TokenKind::LBracket),
            b']' => Some(TokenKind::RBracket),
            b',' => Some(TokenKind::Comma),
            b'-' => Some(TokenKind::Minus),
            _ => None,
        };
        if let Some(kind) = single {
            i += 1;
            out.push(Token {
                kind,
                text: text[start..i].to_string(),
                pos: start,
            });
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            out.push(Token {
                kind: TokenKind::Number,
                text: text[start..i].to_string(),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let upper = word.to_ascii_uppercase();
            let kind = if upper == "PI" {
                TokenKind::Pi
            } else if NAMES.contains(&upper.as_str()) {
                TokenKind::Name
            } else {
                return Err(LexError {
                    pos: start,
                    found: LexFault::Word(word.to_string()),
                });
            };
            out.push(Token {
                kind,
                text: word.to_string(),
                pos: start,
            });
        } else {
            let ch = text[start..]
                .chars()
                .next()
                .expect("index is on a char boundary");
            return Err(LexError {
                pos: start,
                found: LexFault::Char(ch),
            });
        }
    }
    out.push(Token {
        kind: TokenKind::End,
        text: String::new(),
        pos: text.len(),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use TokenKind::*;

    fn kinds(s: &str) -> Vec<TokenKind> {
        tokenize(s).unwrap().iter().map(|t| t.kind).collect()
    }

    #[test]
    fn gate_tokens() {
        assert_eq!(kinds("RX(pi)"), [Name, LParen, Pi, RParen, End]);
        assert_eq!(
            kinds("R([0,0,1], pi/2)"),
            [
                Name, LParen, LBracket, Number, Comma, Number, Comma, Number, RBracket, Comma, Pi,
                Slash, Number, RParen, End
            ]
        );
    }

    #[test]
    fn case_insensitive_names() {
        let t = tokenize("rx(Pi) * Ref([1,0,0]) * id").unwrap();
        assert_eq!(t[0].text, "rx");
        assert_eq!(t[2].kind, Pi);
        assert_eq!(t[5].kind, Name);
    }

    #[test]
    fn non_ascii_is_rejected_at_its_offset() {
        let e = tokenize("RX(π)").unwrap_err();
        assert_eq!(e.pos, 3);
        assert_eq!(e.found, LexFault::Char('π'));
    }

    #[test]
    fn unknown_name() {
        let e = tokenize("ID * RW(1)").unwrap_err();
        assert_eq!((e.pos, e.found), (5, LexFault::Word("RW".into())));
    }

    #[test]
    fn numbers() {
        let t = tokenize("12.50 3 0.25").unwrap();
        let texts: Vec<_> = t.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["12.50", "3", "0.25", ""]);
        // a dangling point is not part of the number
        assert_eq!(tokenize("1.").unwrap_err().pos, 1);
    }

    #[test]
    fn positions_increase() {
        let t = tokenize("  RX( - 3 / 4 * pi )*ID").unwrap();
        assert!(t.windows(2).all(|w| w[0].pos < w[1].pos));
        assert_eq!(t.last().unwrap().pos, "  RX( - 3 / 4 * pi )*ID".len());
    }

    #[test]
    fn length_limit() {
        let long = "ID*".repeat(MAX_INPUT / 3 + 1);
        let e = tokenize(&long).unwrap_err();
        assert!(matches!(e.found, LexFault::TooLong(_)));
        assert!(e.pos <= long.len());
    }
}

use std::fmt;

use thiserror::Error;

use super::ast::{Angle, Component, Literal, RotExpr, VecLit};
use super::lexer::{Token, TokenKind};

/// Parenthesis nesting accepted before giving up.
pub const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub pos: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected {}", self.expected.join(" or "))?;
        if self.found.is_empty() {
            write!(f, ", found end of input at offset {}", self.pos)
        } else {
            write!(f, ", found {:?} at offset {}", self.found, self.pos)
        }
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    depth: usize,
}

/// Parses a complete token stream (as produced by `tokenize`).
pub fn parse(tokens: &[Token]) -> Result<RotExpr, ParseError> {
    assert!(
        tokens.last().is_some_and(|t| t.kind == TokenKind::End),
        "token stream must end with End"
    );
    let mut p = Parser {
        tokens,
        at: 0,
        depth: 0,
    };
    let e = p.expr()?;
    p.expect(TokenKind::End, &["'*'", "end of input"])?;
    Ok(e)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &'a Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> &'a Token {
        let t = &self.tokens[self.at];
        if t.kind != TokenKind::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        let t = self.peek();
        ParseError {
            pos: t.pos,
            expected: expected.to_vec(),
            found: t.text.clone(),
        }
    }

    fn expect(
        &mut self,
        kind: TokenKind,
        expected: &[&'static str],
    ) -> Result<&'a Token, ParseError> {
        if self.peek().kind == kind {
            Ok(self.bump())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<RotExpr, ParseError> {
        let mut left = self.term()?;
        while self.eat(TokenKind::Star) {
            let right = self.term()?;
            left = RotExpr::product(left, right);
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<RotExpr, ParseError> {
        const TERM: &[&str] = &["RX", "RY", "RZ", "R", "REF", "ID", "'('"];
        let t = self.peek();
        match t.kind {
            TokenKind::LParen => {
                if self.depth >= MAX_DEPTH {
                    return Err(self.error(&["at most 64 nested parentheses"]));
                }
                self.bump();
                self.depth += 1;
                let e = self.expr()?;
                self.depth -= 1;
                self.expect(TokenKind::RParen, &["'*'", "')'"])?;
                Ok(e)
            }
            TokenKind::Name => {
                self.bump();
                match t.text.to_ascii_uppercase().as_str() {
                    "ID" => Ok(RotExpr::Identity),
                    "RX" => Ok(RotExpr::GateRX(self.call_angle()?)),
                    "RY" => Ok(RotExpr::GateRY(self.call_angle()?)),
                    "RZ" => Ok(RotExpr::GateRZ(self.call_angle()?)),
                    "REF" => {
                        self.expect(TokenKind::LParen, &["'('"])?;
                        let v = self.vec()?;
                        self.expect(TokenKind::RParen, &["')'"])?;
                        Ok(RotExpr::Reflect(v))
                    }
                    "R" => {
                        self.expect(TokenKind::LParen, &["'('"])?;
                        let v = self.vec()?;
                        self.expect(TokenKind::Comma, &["','"])?;
                        let a = self.angle()?;
                        self.expect(TokenKind::RParen, &["')'"])?;
                        Ok(RotExpr::AxisRot(v, a))
                    }
                    _ => unreachable!("lexer only emits known names"),
                }
            }
            _ => Err(self.error(TERM)),
        }
    }

    fn call_angle(&mut self) -> Result<Angle, ParseError> {
        self.expect(TokenKind::LParen, &["'('"])?;
        let a = self.angle()?;
        self.expect(TokenKind::RParen, &["')'"])?;
        Ok(a)
    }

    fn vec(&mut self) -> Result<VecLit, ParseError> {
        self.expect(TokenKind::LBracket, &["'['"])?;
        let x = self.component()?;
        self.expect(TokenKind::Comma, &["','"])?;
        let y = self.component()?;
        self.expect(TokenKind::Comma, &["','"])?;
        let z = self.component()?;
        self.expect(TokenKind::RBracket, &["']'"])?;
        Ok(VecLit([x, y, z]))
    }

    fn component(&mut self) -> Result<Component, ParseError> {
        let negative = self.eat(TokenKind::Minus);
        let expected: &[&str] = if negative {
            &["number"]
        } else {
            &["'-'", "number"]
        };
        let t = self.expect(TokenKind::Number, expected)?;
        Ok(Component {
            negative,
            lit: Literal::new(&t.text),
        })
    }

    fn angle(&mut self) -> Result<Angle, ParseError> {
        let negative = self.eat(TokenKind::Minus);
        if self.eat(TokenKind::Pi) {
            let den = if self.eat(TokenKind::Slash) {
                Some(self.number()?)
            } else {
                None
            };
            return Ok(Angle {
                negative,
                num: None,
                den,
                pi: true,
            });
        }
        if self.peek().kind != TokenKind::Number {
            let expected: &[&str] = if negative {
                &["number", "'pi'"]
            } else {
                &["'-'", "number", "'pi'"]
            };
            return Err(self.error(expected));
        }
        let num = Some(self.number()?);
        let den = if self.eat(TokenKind::Slash) {
            Some(self.number()?)
        } else {
            None
        };
        let pi = if self.eat(TokenKind::Star) {
            self.expect(TokenKind::Pi, &["'pi'"])?;
            true
        } else {
            false
        };
        Ok(Angle {
            negative,
            num,
            den,
            pi,
        })
    }

    fn number(&mut self) -> Result<Literal, ParseError> {
        let t = self.expect(TokenKind::Number, &["number"])?;
        Ok(Literal::new(&t.text))
    }
}

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::error::ParseError;

use super::ast::{BinOp, Expr, Func, Number};

/// Parse an expression in the variable `x`.
///
/// Precedence, loosest to tightest: `+ -`, `* /`, unary `-`, `^`
/// (right-associative). Parentheses group. Recognized functions:
/// `sin cos exp ln sqrt`.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0, input_len: text.len() };
    let expr = p.expr()?;
    match p.peek() {
        None => Ok(expr),
        Some(t) => Err(p.err_at(t.offset, "end of input", &t.kind.describe())),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Num(BigRational),
    Var,
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Num(_) => "number".to_string(),
            TokenKind::Var => "`x`".to_string(),
            TokenKind::Func(f) => format!("`{}`", f.name()),
            TokenKind::Plus => "`+`".to_string(),
            TokenKind::Minus => "`-`".to_string(),
            TokenKind::Star => "`*`".to_string(),
            TokenKind::Slash => "`/`".to_string(),
            TokenKind::Caret => "`^`".to_string(),
            TokenKind::LParen => "`(`".to_string(),
            TokenKind::RParen => "`)`".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let offset = i;
        let kind = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => {
                i += 1;
                TokenKind::Plus
            }
            b'-' => {
                i += 1;
                TokenKind::Minus
            }
            b'*' => {
                i += 1;
                TokenKind::Star
            }
            b'/' => {
                i += 1;
                TokenKind::Slash
            }
            b'^' => {
                i += 1;
                TokenKind::Caret
            }
            b'(' => {
                i += 1;
                TokenKind::LParen
            }
            b')' => {
                i += 1;
                TokenKind::RParen
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut frac_digits = 0usize;
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let fs = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    frac_digits = i - fs;
                }
                let s = &text[start..i];
                if s == "." || s.is_empty() {
                    return Err(ParseError {
                        offset: start,
                        expected: "number".to_string(),
                        found: "`.`".to_string(),
                    });
                }
                let digits: String = s.chars().filter(|c| *c != '.').collect();
                let numer: BigInt = digits.parse().expect("digit string");
                let denom = BigInt::from(10).pow(frac_digits as u32);
                TokenKind::Num(BigRational::new(numer, denom))
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &text[start..i];
                match name {
                    "x" => TokenKind::Var,
                    "sin" => TokenKind::Func(Func::Sin),
                    "cos" => TokenKind::Func(Func::Cos),
                    "exp" => TokenKind::Func(Func::Exp),
                    "ln" => TokenKind::Func(Func::Ln),
                    "sqrt" => TokenKind::Func(Func::Sqrt),
                    _ => {
                        return Err(ParseError {
                            offset: start,
                            expected: "known identifier (x, sin, cos, exp, ln, sqrt)"
                                .to_string(),
                            found: format!("`{name}`"),
                        })
                    }
                }
            }
            _ => {
                return Err(ParseError {
                    offset,
                    expected: "token".to_string(),
                    found: format!("`{}`", &text[offset..offset + 1]),
                })
            }
        };
        tokens.push(Token { kind, offset });
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn err_at(&self, offset: usize, expected: &str, found: &str) -> ParseError {
        ParseError {
            offset,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    fn err_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => self.err_at(t.offset, expected, &t.kind.describe()),
            None => self.err_at(self.input_len, expected, "end of input"),
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&TokenKind::Plus) {
                let rhs = self.term()?;
                lhs = Expr::Bin(BinOp::Add, Box::new(lhs), Box::new(rhs));
            } else if self.eat(&TokenKind::Minus) {
                let rhs = self.term()?;
                lhs = Expr::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&TokenKind::Star) {
                let rhs = self.unary()?;
                lhs = Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
            } else if self.eat(&TokenKind::Slash) {
                let rhs = self.unary()?;
                lhs = Expr::Bin(BinOp::Div, Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&TokenKind::Minus) {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            let exponent = self.exponent()?;
            Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)))
        } else {
            Ok(base)
        }
    }

    // Exponent position admits a leading sign: `x^-2`.
    fn exponent(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&TokenKind::Minus) {
            Ok(Expr::Neg(Box::new(self.exponent()?)))
        } else {
            self.power()
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let token = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.err_here("operand")),
        };
        match token.kind {
            TokenKind::Num(r) => {
                self.pos += 1;
                Ok(Expr::Const(Number::Rational(r)))
            }
            TokenKind::Var => {
                self.pos += 1;
                Ok(Expr::Var)
            }
            TokenKind::Func(f) => {
                self.pos += 1;
                if !self.eat(&TokenKind::LParen) {
                    return Err(self.err_here("`(` after function name"));
                }
                let arg = self.expr()?;
                if !self.eat(&TokenKind::RParen) {
                    return Err(self.err_here("`)`"));
                }
                Ok(Expr::Call(f, Box::new(arg)))
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&TokenKind::RParen) {
                    return Err(self.err_here("`)`"));
                }
                Ok(inner)
            }
            _ => Err(self.err_here("operand")),
        }
    }
}

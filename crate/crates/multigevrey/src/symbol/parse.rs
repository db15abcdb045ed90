//! Recursive-descent parser for symbol expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | power
//! power    := atom ('^' exponent)*
//! atom     := number ('/' integer)? | 'i' | variable | '(' expr ')'
//! number   := digits ('.' digits)?
//! variable := 'x' digits          -- x1 .. xN, 1-based
//! exponent := digits              -- non-negative integer
//! ```
//!
//! `^` binds tighter than `*`, which binds tighter than `+`/`-`; unary minus
//! applies to a whole power, so `-x1^2` parses as `-(x1^2)`. Rational
//! literals are written `p/q` with integer parts; `/` has no other role.

use num_traits::One;
use thiserror::Error;

use super::PolynomialSymbol;
use crate::numeric::{rat_from_decimal, GaussRat, Rat};

/// Parse failure with a byte position into the input text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable index out of range at position {position}: x{index} (dimension {dimension})")]
    VariableIndex {
        position: usize,
        index: usize,
        dimension: usize,
    },
    #[error("invalid exponent at position {position}: {message}")]
    InvalidExponent { position: usize, message: String },
}

/// Parse `text` into a fully expanded symbol in `dimension` variables.
pub fn parse_symbol(text: &str, dimension: usize) -> Result<PolynomialSymbol, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        dimension,
    };
    let symbol = parser.expr()?;
    if parser.peek().kind == TokenKind::Eof {
        Ok(symbol)
    } else {
        let what = parser.peek().describe();
        Err(parser.unexpected(what))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number { value: Rat, integer: Option<u64> },
    Imaginary,
    Variable(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    kind: TokenKind,
    position: usize,
}

impl Token {
    fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Number { value, .. } => format!("number `{value}`"),
            TokenKind::Imaginary => "`i`".into(),
            TokenKind::Variable(k) => format!("variable `x{k}`"),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let position = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' => {
                tokens.push(Token { kind: TokenKind::Plus, position });
                i += 1;
            }
            b'-' => {
                tokens.push(Token { kind: TokenKind::Minus, position });
                i += 1;
            }
            b'*' => {
                tokens.push(Token { kind: TokenKind::Star, position });
                i += 1;
            }
            b'^' => {
                tokens.push(Token { kind: TokenKind::Caret, position });
                i += 1;
            }
            b'/' => {
                tokens.push(Token { kind: TokenKind::Slash, position });
                i += 1;
            }
            b'(' => {
                tokens.push(Token { kind: TokenKind::LParen, position });
                i += 1;
            }
            b')' => {
                tokens.push(Token { kind: TokenKind::RParen, position });
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let integral = &text[start..i];
                let mut fractional = "";
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    let fstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    fractional = &text[fstart..i];
                    if fractional.is_empty() {
                        return Err(ParseError::Syntax {
                            position: i.min(bytes.len()),
                            message: "expected digits after decimal point".into(),
                        });
                    }
                }
                let value = rat_from_decimal(integral, fractional).ok_or(ParseError::Syntax {
                    position,
                    message: "invalid numeric literal".into(),
                })?;
                let integer = if fractional.is_empty() {
                    integral.parse::<u64>().ok()
                } else {
                    None
                };
                tokens.push(Token {
                    kind: TokenKind::Number { value, integer },
                    position,
                });
            }
            b'i' => {
                // Reject identifiers like `ix` or `i2`.
                if i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric()) {
                    return Err(ParseError::Syntax {
                        position,
                        message: format!(
                            "unexpected identifier starting at `{}`",
                            &text[i..(i + 2).min(text.len())]
                        ),
                    });
                }
                tokens.push(Token { kind: TokenKind::Imaginary, position });
                i += 1;
            }
            b'x' => {
                i += 1;
                let dstart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if dstart == i {
                    return Err(ParseError::Syntax {
                        position,
                        message: "expected variable index after `x`".into(),
                    });
                }
                let index: usize = text[dstart..i].parse().map_err(|_| ParseError::Syntax {
                    position,
                    message: "variable index too large".into(),
                })?;
                tokens.push(Token {
                    kind: TokenKind::Variable(index),
                    position,
                });
            }
            _ => {
                return Err(ParseError::Syntax {
                    position,
                    message: format!("unexpected character `{}`", &text[i..].chars().next().unwrap()),
                });
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        position: bytes.len(),
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dimension: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, what: String) -> ParseError {
        ParseError::Syntax {
            position: self.peek().position,
            message: format!("unexpected {what}"),
        }
    }

    fn expr(&mut self) -> Result<PolynomialSymbol, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().kind {
                TokenKind::Plus => {
                    self.advance();
                    let rhs = self.term()?;
                    acc = acc.add(&rhs).expect("same dimension");
                }
                TokenKind::Minus => {
                    self.advance();
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs).expect("same dimension");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolynomialSymbol, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().kind == TokenKind::Star {
            self.advance();
            let rhs = self.factor()?;
            acc = acc.mul(&rhs).expect("same dimension");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolynomialSymbol, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.advance();
            let inner = self.factor()?;
            return Ok(inner.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<PolynomialSymbol, ParseError> {
        let mut base = self.atom()?;
        while self.peek().kind == TokenKind::Caret {
            self.advance();
            let exponent = self.exponent()?;
            base = base.pow(exponent);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let token = self.advance();
        match token.kind {
            TokenKind::Number { integer: Some(k), .. } => {
                if k > 10_000 {
                    Err(ParseError::InvalidExponent {
                        position: token.position,
                        message: format!("exponent {k} is too large"),
                    })
                } else {
                    Ok(k as u32)
                }
            }
            TokenKind::Number { value, .. } => Err(ParseError::InvalidExponent {
                position: token.position,
                message: format!("exponent must be a non-negative integer, got {value}"),
            }),
            TokenKind::Minus => Err(ParseError::InvalidExponent {
                position: token.position,
                message: "exponent must be a non-negative integer".into(),
            }),
            other => Err(ParseError::Syntax {
                position: token.position,
                message: format!("expected exponent, found {}", Token { kind: other, position: token.position }.describe()),
            }),
        }
    }

    fn atom(&mut self) -> Result<PolynomialSymbol, ParseError> {
        let token = self.advance();
        match token.kind {
            TokenKind::Number { value, integer } => {
                // Optional `/ integer` continues a rational literal.
                if self.peek().kind == TokenKind::Slash {
                    let slash_pos = self.peek().position;
                    if integer.is_none() {
                        return Err(ParseError::Syntax {
                            position: slash_pos,
                            message: "rational literal requires an integer numerator".into(),
                        });
                    }
                    self.advance();
                    let denom_token = self.advance();
                    match denom_token.kind {
                        TokenKind::Number { integer: Some(q), .. } if q > 0 => {
                            let denom = Rat::from_integer(q.into());
                            let v = value / denom;
                            Ok(PolynomialSymbol::constant(
                                self.dimension,
                                GaussRat::new(v, Rat::from_integer(0.into())),
                            ))
                        }
                        TokenKind::Number { .. } => Err(ParseError::Syntax {
                            position: denom_token.position,
                            message: "rational literal requires a positive integer denominator".into(),
                        }),
                        other => Err(ParseError::Syntax {
                            position: denom_token.position,
                            message: format!(
                                "expected denominator, found {}",
                                Token { kind: other, position: denom_token.position }.describe()
                            ),
                        }),
                    }
                } else {
                    Ok(PolynomialSymbol::constant(
                        self.dimension,
                        GaussRat::new(value, Rat::from_integer(0.into())),
                    ))
                }
            }
            TokenKind::Imaginary => Ok(PolynomialSymbol::constant(
                self.dimension,
                GaussRat::new(Rat::from_integer(0.into()), Rat::one()),
            )),
            TokenKind::Variable(index) => {
                if index == 0 || index > self.dimension {
                    return Err(ParseError::VariableIndex {
                        position: token.position,
                        index,
                        dimension: self.dimension,
                    });
                }
                Ok(PolynomialSymbol::variable(self.dimension, index - 1))
            }
            TokenKind::LParen => {
                let inner = self.expr()?;
                let closing = self.advance();
                if closing.kind != TokenKind::RParen {
                    return Err(ParseError::Syntax {
                        position: closing.position,
                        message: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(ParseError::Syntax {
                position: token.position,
                message: format!(
                    "unexpected {}",
                    Token { kind: other, position: token.position }.describe()
                ),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rat, rat_int};
    use crate::symbol::MultiIndex;

    fn gauss(re: Rat, im: Rat) -> GaussRat {
        GaussRat::new(re, im)
    }

    #[test]
    fn wave_symbol_terms() {
        let p = parse_symbol("x1^2 - x2^2", 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![2, 0])),
            Some(&gauss(rat_int(1), rat_int(0)))
        );
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![0, 2])),
            Some(&gauss(rat_int(-1), rat_int(0)))
        );
    }

    #[test]
    fn imaginary_monomial() {
        let p = parse_symbol("i*x1^5", 2).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![5, 0])),
            Some(&gauss(rat_int(0), rat_int(1)))
        );
    }

    #[test]
    fn like_terms_combined() {
        let p = parse_symbol("x1 + x1", 1).unwrap();
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![1])),
            Some(&gauss(rat_int(2), rat_int(0)))
        );
    }

    #[test]
    fn rational_and_decimal_literals() {
        let p = parse_symbol("1/2*x1 + 0.25", 1).unwrap();
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![1])),
            Some(&gauss(rat(1, 2), rat_int(0)))
        );
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![0])),
            Some(&gauss(rat(1, 4), rat_int(0)))
        );
    }

    #[test]
    fn products_expand() {
        // (x1 - x2)^2 = x1^2 - 2 x1 x2 + x2^2
        let p = parse_symbol("(x1 - x2)^2", 2).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![1, 1])),
            Some(&gauss(rat_int(-2), rat_int(0)))
        );
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let p = parse_symbol("-x1^2", 1).unwrap();
        assert_eq!(
            p.coefficient(&MultiIndex::new(vec![2])),
            Some(&gauss(rat_int(-1), rat_int(0)))
        );
    }

    #[test]
    fn variable_out_of_range_is_reported_with_position() {
        let err = parse_symbol("x1 + x3", 2).unwrap_err();
        assert_eq!(
            err,
            ParseError::VariableIndex {
                position: 5,
                index: 3,
                dimension: 2
            }
        );
    }

    #[test]
    fn fractional_exponent_rejected() {
        let err = parse_symbol("x1^1.5", 1).unwrap_err();
        assert!(matches!(err, ParseError::InvalidExponent { position: 3, .. }));
    }

    #[test]
    fn negative_exponent_rejected() {
        let err = parse_symbol("x1^-2", 1).unwrap_err();
        assert!(matches!(err, ParseError::InvalidExponent { .. }));
    }

    #[test]
    fn stray_slash_is_syntax_error() {
        let err = parse_symbol("x1/2", 1).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { position: 2, .. }));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_symbol("1 / 2 * x1", 1).unwrap();
        let b = parse_symbol("1/2*x1", 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_input_is_syntax_error() {
        assert!(matches!(
            parse_symbol("", 1),
            Err(ParseError::Syntax { position: 0, .. })
        ));
    }

    #[test]
    fn cancellation_yields_zero_symbol() {
        let p = parse_symbol("x1 - x1", 1).unwrap();
        assert!(p.is_zero());
    }
}

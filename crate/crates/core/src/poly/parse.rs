//! Text form of polynomials.
//!
//! Input is an arithmetic expression in one variable: integers, the variable,
//! field constants such as `t`, `+ - * / ^` and parentheses. Division is
//! allowed by constants only. Output uses `c*x^e` terms joined by `+`/`-`,
//! with `c` parenthesized whenever it is not a bare number.

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::Field;

use super::Poly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                digits.push(d);
                chars.next();
            }
            let n = digits.parse().expect("ascii digits");
            tokens.push((pos, Token::Number(n)));
        } else if c.is_alphabetic() || c == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                name.push(d);
                chars.next();
            }
            tokens.push((pos, Token::Ident(name)));
        } else if "+-*/^()".contains(c) {
            tokens.push((pos, Token::Op(c)));
            chars.next();
        } else {
            return Err(ParseError {
                position: pos,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(tokens)
}

struct Parser<'a, K: Field> {
    field: &'a K,
    var: &'a str,
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl<'a, K: Field> Parser<'a, K> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let position = self.tokens.get(self.pos).map_or(self.end, |t| t.0);
        Err(ParseError {
            position,
            message: message.into(),
        })
    }

    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some((_, Token::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Poly<K>, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<K>, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let start = self.pos;
            let rhs = self.unary()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                if rhs.degree() != Some(0) {
                    self.pos = start;
                    return self.error("division by a non-constant or zero expression");
                }
                let inv = self.field.inv(rhs.leading()).expect("nonzero constant");
                acc = acc.scale(&inv);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly<K>, ParseError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<K>, ParseError> {
        let base = self.primary()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.tokens.get(self.pos) {
            Some((_, Token::Number(n))) => {
                let e = u64::try_from(n.clone()).or_else(|_| self.error("exponent too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => self.error("expected a non-negative integer exponent"),
        }
    }

    fn primary(&mut self) -> Result<Poly<K>, ParseError> {
        let Some((_, token)) = self.tokens.get(self.pos).cloned() else {
            return self.error("unexpected end of input");
        };
        match token {
            Token::Number(n) => {
                self.pos += 1;
                Ok(Poly::constant(self.field.clone(), self.field.from_bigint(&n)))
            }
            Token::Ident(name) => {
                if name == self.var {
                    self.pos += 1;
                    return Ok(Poly::x(self.field.clone()));
                }
                match self.field.named_element(&name) {
                    Some(c) => {
                        self.pos += 1;
                        Ok(Poly::constant(self.field.clone(), c))
                    }
                    None => self.error(format!("unknown variable {name:?}")),
                }
            }
            Token::Op('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.error("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Token::Op(c) => self.error(format!("unexpected {c:?}")),
        }
    }
}

/// Parses `text` as a polynomial in `var` over `field`.
pub fn parse_poly<K: Field>(field: &K, text: &str, var: &str) -> Result<Poly<K>, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError {
            position: 0,
            message: "empty input".into(),
        });
    }
    let mut parser = Parser {
        field,
        var,
        tokens,
        pos: 0,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input");
    }
    Ok(poly)
}

/// `true` if `s` contains `+` or `-` outside parentheses, other than a
/// leading sign.
fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

fn is_bare_number(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_digit())
}

pub(super) fn format_poly<K: Field>(f: &Poly<K>, var: &str) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (e, c) in f.coeffs().iter().enumerate().rev() {
        if f.field().is_zero(c) {
            continue;
        }
        let text = f.field().format_elem(c);
        let (negative, body) = match text.strip_prefix('-') {
            Some(rest) if !has_top_level_sum(rest) => (true, rest.to_string()),
            _ => (false, text),
        };
        if negative {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let monomial = match e {
            0 => None,
            1 => Some(var.to_string()),
            _ => Some(format!("{var}^{e}")),
        };
        match monomial {
            None if has_top_level_sum(&body) && !out.is_empty() => {
                out.push_str(&format!("({body})"))
            }
            None => out.push_str(&body),
            Some(m) if body == "1" => out.push_str(&m),
            Some(m) if is_bare_number(&body) => out.push_str(&format!("{body}*{m}")),
            Some(m) => out.push_str(&format!("({body})*{m}")),
        }
    }
    out
}

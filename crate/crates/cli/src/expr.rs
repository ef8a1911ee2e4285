//! Numeric flag values: plain numbers or exact surd expressions such as
//! `sqrt8`, `sqrt(2/15)`, `1/sqrt2`, `-i*sqrt8` or `sqrt8*exp(i*pi/2)`.
//!
//! Grammar (`sqrt` and `exp` bind to the next primary, juxtaposition
//! multiplies):
//!
//! ```text
//! expr    = term (("+" | "-") term)*
//! term    = unary (("*" | "/") unary | unary)*
//! unary   = ("-" | "+") unary | power
//! power   = primary ("^" unary)?
//! primary = number | "i" | "pi" | ("sqrt" | "exp") primary | "(" expr ")"
//! ```

use discorr_core::C64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character {0:?} at position {1}")]
    BadChar(char, usize),
    #[error("malformed number {0:?}")]
    BadNumber(String),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("unexpected {0} in expression")]
    Unexpected(String),
    #[error("expression is not real: {0}")]
    NotReal(C64),
    #[error("expression is not finite")]
    NotFinite,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    I,
    Pi,
    Sqrt,
    Exp,
    Op(char),
    Open,
    Close,
}

const NAMES: [(&str, Token); 4] = [("sqrt", Token::Sqrt), ("exp", Token::Exp), ("pi", Token::Pi), ("i", Token::I)];

fn lex(src: &str) -> Result<Vec<Token>, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            // Exponent only when digits follow, so `2e` is not swallowed.
            if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                let mut j = k + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    k = j;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let text: String = chars[start..k].iter().collect();
            out.push(Token::Num(text.parse().map_err(|_| ExprError::BadNumber(text))?));
        } else if c.is_ascii_alphabetic() {
            let rest: String = chars[k..].iter().collect::<String>().to_ascii_lowercase();
            let (name, tok) = NAMES
                .iter()
                .find(|(name, _)| rest.starts_with(name))
                .ok_or(ExprError::BadChar(c, k))?;
            out.push(tok.clone());
            k += name.len();
        } else {
            out.push(match c {
                '+' | '-' | '*' | '/' | '^' => Token::Op(c),
                '(' => Token::Open,
                ')' => Token::Close,
                '√' => Token::Sqrt,
                'π' => Token::Pi,
                _ => return Err(ExprError::BadChar(c, k)),
            });
            k += 1;
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<C64, ExprError> {
        let mut acc = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<C64, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    acc *= self.unary()?;
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    acc /= self.unary()?;
                }
                Some(Token::Num(_) | Token::I | Token::Pi | Token::Sqrt | Token::Exp | Token::Open) => {
                    acc *= self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<C64, ExprError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<C64, ExprError> {
        let base = self.primary()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(if exp.im == 0.0 && exp.re.fract() == 0.0 {
                base.powi(exp.re as i32)
            } else {
                base.powc(exp)
            });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<C64, ExprError> {
        match self.next() {
            Some(Token::Num(x)) => Ok(C64::new(x, 0.0)),
            Some(Token::I) => Ok(C64::new(0.0, 1.0)),
            Some(Token::Pi) => Ok(C64::new(std::f64::consts::PI, 0.0)),
            Some(Token::Sqrt) => {
                let x = self.primary()?;
                Ok(if x.im == 0.0 && x.re >= 0.0 { C64::new(x.re.sqrt(), 0.0) } else { x.sqrt() })
            }
            Some(Token::Exp) => Ok(self.primary()?.exp()),
            Some(Token::Open) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Token::Close) => Ok(v),
                    Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
                    None => Err(ExprError::UnexpectedEnd),
                }
            }
            Some(t) => Err(ExprError::Unexpected(format!("{t:?}"))),
            None => Err(ExprError::UnexpectedEnd),
        }
    }
}

pub fn parse_complex(src: &str) -> Result<C64, ExprError> {
    let tokens = lex(src)?;
    if tokens.is_empty() {
        return Err(ExprError::Empty);
    }
    let mut p = Parser { tokens, pos: 0 };
    let v = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(ExprError::Unexpected(format!("{t:?}")));
    }
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(ExprError::NotFinite);
    }
    Ok(v)
}

/// Real-valued expression; a vanishing imaginary part (e.g. from
/// `exp(i*pi)`) is tolerated at the rounding level.
pub fn parse_real(src: &str) -> Result<f64, ExprError> {
    let v = parse_complex(src)?;
    if v.im.abs() > 1e-14 * v.re.abs().max(1.0) {
        return Err(ExprError::NotReal(v));
    }
    Ok(v.re)
}

//! Text grammar for rational functions.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' int)?
//! base   := int | var | '(' expr ')'
//! ```
//!
//! Exponents are signed integers, so `q^-1/(q-1)` is accepted. The variable
//! symbol is `q` or `u`; a single input may use only one of them.

use alloc::format;
use alloc::string::{String, ToString};

use num_traits::One;

use super::{ExactError, LaurentPoly, Rat, RatFunc, Var};

/// A parsed rational function together with the variable it was read in.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedRatFunc {
    pub func: RatFunc,
    pub var: Var,
}

/// Parses the ASCII grammar above into canonical form.
pub fn parse_ratfunc(text: &str) -> Result<ParsedRatFunc, ExactError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        var: None,
    };
    let func = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(ParsedRatFunc {
        func,
        var: p.var.unwrap_or(Var::Q),
    })
}

/// Renders a canonical rational function so that
/// `parse_ratfunc(render_ratfunc(f, v))` returns `f` again.
pub fn render_ratfunc(f: &RatFunc, var: Var) -> String {
    if f.den().is_one_poly() {
        return f.num().render(var);
    }
    let num = if f.num().num_terms() <= 1 {
        f.num().render(var)
    } else {
        format!("({})", f.num().render(var))
    };
    format!("{}/({})", num, f.den().render(var))
}

impl LaurentPoly {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && self.coeff(0).is_one()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    var: Option<Var>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expr(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = if self.peek() == Some(b'-') {
            self.bump();
            -&self.term()?
        } else {
            self.term()?
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.bump();
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ExactError> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatFunc, ExactError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.signed_int()?;
            return pow(&base, e);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<RatFunc, ExactError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.unsigned_int()?;
                Ok(RatFunc::constant(Rat::from_integer(n.into())))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let sym = self.ident();
                let v = match sym.as_str() {
                    "q" => Var::Q,
                    "u" => Var::U,
                    _ => return Err(self.err("unknown variable symbol")),
                };
                match self.var {
                    None => self.var = Some(v),
                    Some(prev) if prev == v => {}
                    Some(_) => return Err(self.err("mixed variable symbols")),
                }
                Ok(RatFunc::var_pow(1))
            }
            _ => Err(self.err("expected integer, variable or '('")),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn unsigned_int(&mut self) -> Result<i64, ExactError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("integer out of range"))
    }

    fn signed_int(&mut self) -> Result<i64, ExactError> {
        let neg = self.peek() == Some(b'-');
        if neg {
            self.bump();
        }
        let n = self.unsigned_int()?;
        Ok(if neg { -n } else { n })
    }
}

fn pow(f: &RatFunc, e: i64) -> Result<RatFunc, ExactError> {
    let base = if e < 0 { f.inverse()? } else { f.clone() };
    let mut acc = RatFunc::one();
    for _ in 0..e.unsigned_abs() {
        acc = &acc * &base;
    }
    Ok(acc)
}

//! Text grammar for polynomials:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power (('*'|'/') power)*
//! power   := primary ('^' integer)?
//! primary := integer | identifier | '(' expr ')' | '-' primary
//! ```
//!
//! Division is only allowed by nonzero constants, which is how `a/b`
//! rational coefficients are written.

use num_bigint::BigInt;
use num_traits::Zero;

use super::polynomial::{Polynomial, Rational};
use super::ring::RingRef;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = s[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else if c == '\u{2212}' {
            // unicode minus sign
            out.push((i, Tok::Op('-')));
            i += c.len_utf8();
        } else {
            return Err(Error::Parse {
                offset: i,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a RingRef,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.try_mul(&self.power()?)?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.power()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    Some(_) => {
                        return Err(Error::Parse {
                            offset: at,
                            message: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(Error::Parse {
                            offset: at,
                            message: "division is only allowed by constants".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = match u32::try_from(&n) {
                        Ok(k) => k,
                        Err(_) => return self.err("exponent too large"),
                    };
                    base.try_pow(k)
                }
                _ => self.err("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.ring, i))
                }
                None => self.err(format!("unknown variable '{name}'")),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.primary()?)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_polynomial(ring: &RingRef, s: &str) -> Result<Polynomial> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            message: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        len: s.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// `ring.parse("x^2 - y")` convenience on shared rings.
pub trait ParsePolynomial {
    fn parse(&self, s: &str) -> Result<Polynomial>;
    fn parse_all<S: AsRef<str>>(&self, items: &[S]) -> Result<Vec<Polynomial>> {
        items.iter().map(|s| self.parse(s.as_ref())).collect()
    }
}

impl ParsePolynomial for RingRef {
    fn parse(&self, s: &str) -> Result<Polynomial> {
        parse_polynomial(self, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::polynomial::rat_frac;
    use crate::algebra::ring::Ring;

    #[test]
    fn grammar_example() {
        let r = Ring::with_vars(&["x0", "x1", "x2"]).unwrap();
        let p = r.parse("x1^2*x2 - x0^2*(x0 + x2)").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.total_degree(), Some(3));
        assert!(p.is_homogeneous());
    }

    #[test]
    fn rationals_and_unary_minus() {
        let r = Ring::with_vars(&["x"]).unwrap();
        let p = r.parse("3/4*x - -x/2").unwrap();
        assert_eq!(p.terms()[0].1, rat_frac(5, 4));
        assert_eq!(r.parse("-x^2").unwrap(), -&r.parse("x^2").unwrap());
    }

    #[test]
    fn errors_carry_offsets() {
        let r = Ring::with_vars(&["x"]).unwrap();
        match r.parse("x + y") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(r.parse("x/(x+1)").is_err());
        assert!(r.parse("x/0").is_err());
        assert!(r.parse("(x").is_err());
        assert!(r.parse("x $ 2").is_err());
        assert!(r.parse("").is_err());
    }
}

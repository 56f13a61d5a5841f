//! Recursive-descent parser for polynomial expressions over `+ - * ^ ( )`,
//! identifiers and integer literals.

use std::sync::Arc;

use num_bigint::BigInt;

use super::param::{ParamPoly, Ring};
use super::poly::{Poly, Q};
use super::ArithError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ArithError> {
    let bytes: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((start, Tok::Num(s.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(bytes[start..i].iter().collect())));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ArithError::Parse {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> ArithError {
        ArithError::Parse {
            pos: self.at(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<ParamPoly, ArithError> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ParamPoly, ArithError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Ident(_)) | Some(Tok::Op('(')) | Some(Tok::Num(_)) => {
                    return Err(self.err("expected operator"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<ParamPoly, ArithError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    let mut acc = ParamPoly::one(self.ring);
                    for _ in 0..e {
                        acc = &acc * &base;
                    }
                    Ok(acc)
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ParamPoly, ArithError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = Poly::constant(self.ring.param_ring(), Q::from_integer(n));
                Ok(ParamPoly::from_coeff(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.ring.params().iter().position(|p| *p == name) {
                    Ok(ParamPoly::param(self.ring, i))
                } else if let Some(i) = self.ring.vars().iter().position(|p| *p == name) {
                    Ok(ParamPoly::var(self.ring, i))
                } else {
                    Err(ArithError::UnknownIdentifier(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            Some(_) => Err(self.err("unexpected token")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an expression in the parameters and variables of `ring`.
pub fn parse_poly(ring: &Arc<Ring>, src: &str) -> Result<ParamPoly, ArithError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(ArithError::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        ring,
        toks,
        pos: 0,
        end: src.chars().count(),
    };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(f)
}

/// Parses an expression that may only mention parameters.
pub fn parse_param(ring: &Arc<Ring>, src: &str) -> Result<Poly, ArithError> {
    let f = parse_poly(ring, src)?;
    if !f.is_x_constant() {
        return Err(ArithError::Parse {
            pos: 0,
            msg: format!("'{src}' involves main variables"),
        });
    }
    Ok(f.terms()
        .first()
        .map(|t| t.1.clone())
        .unwrap_or_else(|| Poly::zero(ring.param_ring())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints() {
        let r = Ring::lex(&["a", "b", "c", "d"], &["x"]);
        let f = parse_poly(&r, "a*x + b").unwrap();
        assert_eq!(f.to_string(), "a*x + b");
        let g = parse_poly(&r, "(a+b)^2*x - 2*a*b*x + 3").unwrap();
        assert_eq!(g.to_string(), "(a^2 + b^2)*x + 3");
        assert_eq!(parse_param(&r, "a*d - b*c").unwrap().to_string(), "a*d - b*c");
    }

    #[test]
    fn reports_errors() {
        let r = Ring::lex(&["a"], &["x"]);
        assert!(matches!(
            parse_poly(&r, "a*z"),
            Err(ArithError::UnknownIdentifier(n)) if n == "z"
        ));
        assert!(matches!(parse_poly(&r, "a*(x"), Err(ArithError::Parse { .. })));
        assert!(parse_param(&r, "a*x").is_err());
        assert!(parse_poly(&r, "2a").is_err());
        assert!(parse_poly(&r, "a/2").is_err());
    }
}

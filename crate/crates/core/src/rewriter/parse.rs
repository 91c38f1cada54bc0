//! Plain-text element syntax, e.g. `(1-q^-2)*y1*x1 + q*x2^3 - w1`.
//!
//! Atoms are generators `x<i>`/`y<i>`, `w<i>` for ω_i, the parameter `q`,
//! and rationals `3`, `2/3`. `^` takes an integer exponent (negative only on
//! `q`); `*` multiplies; `+`/`-` add.

use crate::error::{Error, Result};
use crate::scalars::{Coefficient, Rational};

use super::{omega, Gen, NcPoly};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()/".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, C: Coefficient> {
    tokens: Vec<Token>,
    pos: usize,
    domain: &'a C::Domain,
    n: usize,
}

enum Atom<C: Coefficient> {
    Q,
    Poly(NcPoly<C>),
}

impl<C: Coefficient> Parser<'_, C> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at token {}", self.pos)))
    }

    fn expr(&mut self) -> Result<NcPoly<C>> {
        let negate = self.eat_op('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NcPoly<C>> {
        let mut acc = self.power()?;
        while self.eat_op('*') {
            acc = acc.free_product(&self.power()?);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = self.eat_op('-');
        let paren = self.eat_op('(');
        let neg = neg | (paren && self.eat_op('-'));
        let value = match self.peek() {
            Some(Token::Num(s)) => s.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent `{s}`")))?,
            _ => return self.err("expected exponent"),
        };
        self.pos += 1;
        if paren && !self.eat_op(')') {
            return self.err("expected `)`");
        }
        Ok(if neg { -value } else { value })
    }

    fn power(&mut self) -> Result<NcPoly<C>> {
        let atom = self.atom()?;
        let exp = if self.eat_op('^') { Some(self.exponent()?) } else { None };
        match atom {
            Atom::Q => Ok(NcPoly::scalar(self.domain, self.n, C::q_power(self.domain, exp.unwrap_or(1)))),
            Atom::Poly(p) => match exp {
                None => Ok(p),
                Some(e) if e >= 0 => {
                    let mut acc = NcPoly::one(self.domain, self.n);
                    for _ in 0..e {
                        acc = acc.free_product(&p);
                    }
                    Ok(acc)
                }
                Some(_) => self.err("negative exponent is only allowed on q"),
            },
        }
    }

    fn atom(&mut self) -> Result<Atom<C>> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.pos += 1;
        match tok {
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return self.err("expected `)`");
                }
                Ok(Atom::Poly(inner))
            }
            Token::Num(num) => {
                let mut r = Rational::from_integer(num.parse().map_err(|_| Error::Parse(num.clone()))?);
                if self.eat_op('/') {
                    match self.peek() {
                        Some(Token::Num(d)) if d.parse::<u64>().is_ok_and(|d| d > 0) => {
                            r /= Rational::from_integer(d.parse().expect("checked"));
                            self.pos += 1;
                        }
                        _ => return self.err("expected positive denominator"),
                    }
                }
                Ok(Atom::Poly(NcPoly::scalar(self.domain, self.n, C::from_rational(self.domain, r))))
            }
            Token::Ident(id) if id == "q" => Ok(Atom::Q),
            Token::Ident(id) => {
                if let Some(rest) = id.strip_prefix('w') {
                    let i: usize = rest.parse().map_err(|_| Error::Parse(format!("unknown symbol `{id}`")))?;
                    return Ok(Atom::Poly(omega(self.domain, i, self.n)?));
                }
                let g = Gen::parse(&id).ok_or_else(|| Error::Parse(format!("unknown symbol `{id}`")))?;
                Ok(Atom::Poly(NcPoly::generator(self.domain, self.n, g)?))
            }
            Token::Op(c) => self.err(&format!("unexpected `{c}`")),
        }
    }
}

/// Parses an element; the result is *not* straightened.
pub fn parse_element<C: Coefficient>(domain: &C::Domain, n: usize, s: &str) -> Result<NcPoly<C>> {
    let mut parser = Parser::<C> { tokens: tokenize(s)?, pos: 0, domain, n };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriter::one_minus_q_inv2;
    use crate::scalars::{Cyclotomic, GenericQ, QLaurent, RootOfUnity};

    #[test]
    fn parses_omega_literal() {
        let p = parse_element::<QLaurent>(&GenericQ, 2, "(1-q^-2)*y1*x1").unwrap();
        assert_eq!(p, omega::<QLaurent>(&GenericQ, 1, 2).unwrap());
        let w = parse_element::<QLaurent>(&GenericQ, 2, "w2 - w1").unwrap();
        let expected = parse_element::<QLaurent>(&GenericQ, 2, "y2*x2").unwrap();
        assert_eq!(w, expected.scale(&one_minus_q_inv2::<QLaurent>(&GenericQ)));
    }

    #[test]
    fn parses_at_root_of_unity() {
        let root = RootOfUnity::new(3, 1).unwrap();
        let p = parse_element::<Cyclotomic>(&root, 1, "x1^3 - 2/3*q^(-1)").unwrap();
        assert_eq!(p.num_terms(), 2);
        let s = parse_element::<Cyclotomic>(&root, 1, "1 + q + q^2").unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["x0", "x3", "z1", "x1^-1", "(x1", "x1 +", "2/0", "x1 $ y1"] {
            assert!(parse_element::<QLaurent>(&GenericQ, 2, bad).is_err(), "{bad}");
        }
    }
}

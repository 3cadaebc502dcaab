use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

use super::poly::LaurentPoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(msg: impl Into<String>) -> Error {
    Error::parse("polynomial", msg)
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
            }
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[s..i].iter().collect();
                out.push(Tok::Num(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() => {
                let s = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[s..i].iter().collect()));
            }
            other => return Err(err(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = &acc * &invert_monomial(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let mut neg = false;
        let mut paren = false;
        if self.peek() == Some(&Tok::LParen) {
            paren = true;
            self.pos += 1;
        }
        if self.peek() == Some(&Tok::Minus) {
            neg = true;
            self.pos += 1;
        }
        let k = match self.next() {
            Some(Tok::Num(n)) => n,
            _ => return Err(err("expected an integer exponent after `^`")),
        };
        if paren && self.next() != Some(Tok::RParen) {
            return Err(err("expected `)` after exponent"));
        }
        let k: u32 = k
            .try_into()
            .ok()
            .filter(|&k: &u32| k as i64 <= super::poly::MAX_EXPONENT)
            .ok_or_else(|| err("exponent too large"))?;
        if neg {
            if base.is_monomial() {
                Ok(invert_monomial(&base)?.pow(k))
            } else {
                Err(err("negative powers are only allowed for monomials"))
            }
        } else if base.is_monomial() {
            let (e, c) = base.terms().next().expect("monomial");
            let e: Vec<i64> = e.iter().map(|x| x * k as i64).collect();
            Ok(LaurentPoly::monomial(e, num::pow::pow(c.clone(), k as usize)))
        } else {
            Ok(base.pow(k))
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(LaurentPoly::constant(self.nvars(), BigRational::from_integer(n))),
            Some(Tok::Ident(name)) => {
                if name == "t" {
                    return Err(err("`t` is reserved for the torsion variable"));
                }
                let i = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| err(format!("unknown variable `{name}`")))?;
                Ok(LaurentPoly::var(self.nvars(), i))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                if self.next() != Some(Tok::RParen) {
                    return Err(err("missing `)`"));
                }
                Ok(e)
            }
            Some(Tok::Minus) => Ok(-&self.power()?),
            Some(t) => Err(err(format!("unexpected token {t:?}"))),
            None => Err(err("unexpected end of input")),
        }
    }
}

fn invert_monomial(p: &LaurentPoly) -> Result<LaurentPoly> {
    if !p.is_monomial() {
        return Err(err("division is only allowed by a nonzero monomial"));
    }
    let (e, c) = p.terms().next().expect("monomial");
    if c.is_zero() {
        return Err(err("division by zero"));
    }
    Ok(LaurentPoly::monomial(e.iter().map(|x| -x).collect(), BigRational::one() / c))
}

/// Parses text such as `3*x^2*y^-1 - 2 + x` over the variables `names`.
pub fn parse_poly(text: &str, names: &[String]) -> Result<LaurentPoly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err("empty input"));
    }
    let mut p = Parser { toks, pos: 0, names };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    out.check_exponents()?;
    Ok(out)
}

/// Parses a polynomial, taking its variables to be the identifiers it
/// mentions in sorted order.
pub fn parse_poly_auto(text: &str) -> Result<(LaurentPoly, Vec<String>)> {
    let mut names: Vec<String> = lex(text)?
        .into_iter()
        .filter_map(|t| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    if names.is_empty() {
        names.push("z".into());
    }
    let p = parse_poly(text, &names)?;
    Ok((p, names))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn spec_syntax() {
        let n = names(&["x", "y"]);
        let p = parse_poly("3*x^2*y^-1 - 2 + x", &n).unwrap();
        let mut q = LaurentPoly::zero(2);
        q.add_term(vec![2, -1], BigRational::from_integer(3.into()));
        q.add_term(vec![0, 0], BigRational::from_integer((-2).into()));
        q.add_term(vec![1, 0], BigRational::one());
        assert_eq!(p, q);
    }

    #[test]
    fn parentheses_and_rationals() {
        let n = names(&["z1", "z2"]);
        let p = parse_poly("(1+z1)*(1+z2)", &n).unwrap();
        assert_eq!(p.num_terms(), 4);
        let (q, v) = parse_poly_auto("1/2*z - 3/4").unwrap();
        assert_eq!(v, vec!["z".to_string()]);
        assert_eq!(q.coefficient(&[1]), BigRational::new(1.into(), 2.into()));
        assert_eq!(q.coefficient(&[0]), BigRational::new((-3).into(), 4.into()));
        let (r, _) = parse_poly_auto("z^(-2) - (1 - z)^2").unwrap();
        assert_eq!(r.num_terms(), 4);
    }

    #[test]
    fn errors() {
        assert!(parse_poly_auto("1 - t").is_err());
        assert!(parse_poly_auto("(1+z").is_err());
        assert!(parse_poly_auto("(1+z)^-1").is_err());
        assert!(parse_poly_auto("").is_err());
        assert!(parse_poly_auto("z^2000000").is_err());
        assert!(parse_poly("w", &names(&["z"])).is_err());
    }
}

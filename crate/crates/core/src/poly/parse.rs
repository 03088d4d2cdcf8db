//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := number | identifier | '(' expr ')'
//! ```
//!
//! Numbers are integers, decimals (`1.25`, `3e-2`) or written as quotients
//! (`3/4`). Division is only allowed by a nonzero constant. `I` is the
//! imaginary unit in domains that have one.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Pow;

use super::{Field, PolyError, Polynomial, RingContext};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            _ if c.is_ascii_digit() || c == '.' => {
                let (value, end) = lex_number(text, i)?;
                i = end;
                out.push((Token::Number(value), start));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Token::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => return Err(syntax(i, format!("unexpected character `{c}`"))),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

fn lex_number(text: &str, start: usize) -> Result<(BigRational, usize), PolyError> {
    let bytes = text.as_bytes();
    let mut i = start;
    let mut digits = String::new();
    let mut frac_len: i64 = 0;
    let mut seen_point = false;
    while i < bytes.len() && (bytes[i].is_ascii_digit() || (bytes[i] == b'.' && !seen_point)) {
        if bytes[i] == b'.' {
            seen_point = true;
        } else {
            digits.push(bytes[i] as char);
            if seen_point {
                frac_len += 1;
            }
        }
        i += 1;
    }
    if digits.is_empty() {
        return Err(syntax(start, "malformed number"));
    }
    let mut exponent: i64 = 0;
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        let mut sign = 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            if bytes[j] == b'-' {
                sign = -1;
            }
            j += 1;
        }
        let exp_start = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j == exp_start {
            return Err(syntax(i, "malformed exponent"));
        }
        exponent = sign
            * text[exp_start..j]
                .parse::<i64>()
                .map_err(|_| syntax(exp_start, "exponent too large"))?;
        i = j;
    }
    let mantissa: BigInt = digits.parse().expect("digits only");
    let shift = exponent - frac_len;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        BigRational::from_integer(mantissa * Pow::pow(&ten, shift as u64))
    } else {
        BigRational::new(mantissa, Pow::pow(&ten, (-shift) as u64))
    };
    Ok((value, i))
}

struct Parser<'a, C: Field> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
    ring: &'a Arc<RingContext>,
    _marker: std::marker::PhantomData<C>,
}

impl<'a, C: Field> Parser<'a, C> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn expr(&mut self) -> Result<Polynomial<C>, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<C>, PolyError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?)?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let at = self.position();
                    let divisor = self.unary()?;
                    let inverse = constant_inverse(&divisor)
                        .ok_or_else(|| syntax(at, "division by a non-constant or zero"))?;
                    acc = acc.scale(&inverse);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<C>, PolyError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<C>, PolyError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.position();
        match self.peek().cloned() {
            Some(Token::Number(n)) if n.is_integer() => {
                self.pos += 1;
                let e: u32 = n
                    .to_integer()
                    .try_into()
                    .map_err(|_| syntax(at, "exponent out of range"))?;
                if e > u16::MAX as u32 {
                    return Err(syntax(at, "exponent out of range"));
                }
                base.pow(e)
            }
            _ => Err(syntax(at, "expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial<C>, PolyError> {
        let at = self.position();
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Token::Number(q) => Ok(Polynomial::constant(
                self.ring,
                C::from_rational(&q, self.ring.domain())?,
            )),
            Token::Ident(name) => {
                if let Some(idx) = self.ring.index_of(&name) {
                    return Polynomial::variable(self.ring, idx);
                }
                if name == "I" {
                    if let Some(i) = C::imaginary_unit(self.ring.domain()) {
                        return Ok(Polynomial::constant(self.ring, i));
                    }
                }
                Err(PolyError::UnknownVariable { name, position: at })
            }
            Token::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return Err(syntax(self.position(), "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(syntax(at, format!("unexpected token {other:?}"))),
        }
    }
}

fn constant_inverse<C: Field>(p: &Polynomial<C>) -> Option<C> {
    if p.num_terms() != 1 {
        return None;
    }
    let (m, c) = p.leading_term()?;
    if !m.is_one() {
        return None;
    }
    c.inv()
}

/// Parses `text` into a polynomial over `ring`.
pub fn parse_polynomial<C: Field>(
    text: &str,
    ring: &Arc<RingContext>,
) -> Result<Polynomial<C>, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        ring,
        _marker: std::marker::PhantomData,
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(syntax(parser.position(), "unexpected trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Domain, Fp, Gaussian, Monomial};
    use num_traits::One;

    fn monomial_of(exps: &[u16]) -> Monomial {
        Monomial::from_exponents(exps.to_vec())
    }

    fn ring(names: &[&str], d: Domain) -> Arc<RingContext> {
        RingContext::new(names, d).unwrap()
    }

    #[test]
    fn determinant() {
        let r = ring(&["x0", "x1", "x2", "x3"], Domain::Rational);
        let f: Polynomial<BigRational> = parse_polynomial("x0*x3 - x1*x2", &r).unwrap();
        assert_eq!(f.num_terms(), 2);
        let c = |e: &[u16]| f.coefficient(&monomial_of(e)).cloned().unwrap();
        assert_eq!(c(&[1, 0, 0, 1]), BigRational::from_integer(1.into()));
        assert_eq!(c(&[0, 1, 1, 0]), BigRational::from_integer((-1).into()));
    }

    #[test]
    fn zero_and_isotropic() {
        let r = ring(&["x0", "x1", "x2", "x3"], Domain::Rational);
        let z: Polynomial<BigRational> = parse_polynomial("0", &r).unwrap();
        assert!(z.is_zero());
        let q: Polynomial<BigRational> = parse_polynomial("x0^2+x1^2+x2^2+x3^2", &r).unwrap();
        assert_eq!(q.num_terms(), 4);
        assert!(q.terms().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn decimals_and_fractions() {
        let r = ring(&["x"], Domain::Rational);
        let a: Polynomial<BigRational> = parse_polynomial("1.25*x - 3/4 + 2e-1", &r).unwrap();
        let b: Polynomial<BigRational> = parse_polynomial("5/4*x - 11/20", &r).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring(&["x", "y"], Domain::Rational);
        let e = parse_polynomial::<BigRational>("x + zz", &r).unwrap_err();
        assert_eq!(
            e,
            PolyError::UnknownVariable {
                name: "zz".into(),
                position: 4
            }
        );
        assert!(matches!(
            parse_polynomial::<BigRational>("2x", &r),
            Err(PolyError::Syntax { position: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial::<BigRational>("(x+y", &r),
            Err(PolyError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial::<BigRational>("x/y", &r),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial::<BigRational>("x^y", &r),
            Err(PolyError::Syntax { .. })
        ));
        // `I` only exists in domains with an imaginary unit
        assert!(matches!(
            parse_polynomial::<BigRational>("I*x", &r),
            Err(PolyError::UnknownVariable { .. })
        ));
    }

    #[test]
    fn imaginary_unit() {
        let r = ring(&["x"], Domain::GaussianRational);
        let f: Polynomial<Gaussian> = parse_polynomial("(x - I)*(x + I)", &r).unwrap();
        let g: Polynomial<Gaussian> = parse_polynomial("x^2 + 1", &r).unwrap();
        assert_eq!(f, g);
        let rp = ring(&["x"], Domain::PrimeField(32009));
        let h: Polynomial<Fp> = parse_polynomial("I^2 + 1", &rp).unwrap();
        assert!(h.is_zero());
    }
}

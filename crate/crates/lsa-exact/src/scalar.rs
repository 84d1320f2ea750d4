//! The unified exact scalar: rational, Gaussian rational, or polynomial.
//!
//! Text syntax shared across the repo: integers, `a/b` rationals, `i` for the
//! Gaussian unit, `*` products, `+`/`-`, exponents `x^2`, parentheses.

use crate::gauss::GaussRat;
use crate::poly::{Poly, SquareRule};
use crate::{Error, Rat, Result};
use num::{BigInt, One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Which coefficient domain a matrix or algebra lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum RingTag {
    Rational,
    Gaussian,
    Poly,
}

impl RingTag {
    pub fn is_field(self) -> bool {
        !matches!(self, RingTag::Poly)
    }

    /// Smallest common ring containing both, if one exists.
    pub fn join(self, other: RingTag) -> Result<RingTag> {
        use RingTag::*;
        match (self, other) {
            (a, b) if a == b => Ok(a),
            (Rational, b) => Ok(b),
            (a, Rational) => Ok(a),
            (Gaussian, Poly) | (Poly, Gaussian) => Err(Error::RingMismatch(
                "cannot mix gaussian and polynomial scalars".into(),
            )),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Rational => write!(f, "rational"),
            RingTag::Gaussian => write!(f, "gaussian"),
            RingTag::Poly => write!(f, "poly"),
        }
    }
}

/// Convenience rational constructor.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience integer-as-rational constructor.
pub fn rint(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rat),
    Gauss(GaussRat),
    Poly(Poly),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rat::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(rint(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::Rat(r)
    }

    pub fn var(name: &str) -> Self {
        Scalar::Poly(Poly::var(name))
    }

    pub fn i() -> Self {
        Scalar::Gauss(GaussRat::i())
    }

    pub fn ring(&self) -> RingTag {
        match self {
            Scalar::Rat(_) => RingTag::Rational,
            Scalar::Gauss(_) => RingTag::Gaussian,
            Scalar::Poly(_) => RingTag::Poly,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Gauss(g) => g.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Gauss(g) => g.is_real() && g.re.is_one(),
            Scalar::Poly(p) => p.as_constant().map(|c| c.is_one()).unwrap_or(false),
        }
    }

    /// Re-express in the given ring; collapses constants, embeds rationals.
    pub fn coerce(&self, ring: RingTag) -> Result<Scalar> {
        match (self, ring) {
            (Scalar::Rat(r), RingTag::Rational) => Ok(Scalar::Rat(r.clone())),
            (Scalar::Rat(r), RingTag::Gaussian) => Ok(Scalar::Gauss(GaussRat::from_rat(r.clone()))),
            (Scalar::Rat(r), RingTag::Poly) => Ok(Scalar::Poly(Poly::constant(r.clone()))),
            (Scalar::Gauss(g), RingTag::Gaussian) => Ok(Scalar::Gauss(g.clone())),
            (Scalar::Gauss(g), RingTag::Rational) if g.is_real() => {
                Ok(Scalar::Rat(g.re.clone()))
            }
            (Scalar::Poly(p), RingTag::Poly) => Ok(Scalar::Poly(p.clone())),
            (Scalar::Poly(p), RingTag::Rational) => match p.as_constant() {
                Some(c) => Ok(Scalar::Rat(c)),
                None => Err(Error::RingMismatch(format!(
                    "polynomial {p} is not a rational constant"
                ))),
            },
            (Scalar::Poly(p), RingTag::Gaussian) => match p.as_constant() {
                Some(c) => Ok(Scalar::Gauss(GaussRat::from_rat(c))),
                None => Err(Error::RingMismatch(format!(
                    "polynomial {p} cannot live in the gaussian field"
                ))),
            },
            (s, r) => Err(Error::RingMismatch(format!(
                "cannot coerce {} into the {r} ring",
                s.ring()
            ))),
        }
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self.coerce(RingTag::Rational) {
            Ok(Scalar::Rat(r)) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.as_rat().and_then(|r| r.to_f64())
    }

    fn promote(a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar, RingTag)> {
        let ring = a.ring().join(b.ring())?;
        Ok((a.coerce(ring)?, b.coerce(ring)?, ring))
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let (a, b, _) = Scalar::promote(self, other).expect("incompatible scalar rings");
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Gauss(x), Scalar::Gauss(y)) => Scalar::Gauss(x.add(&y)),
            (Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.add(&y)),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Gauss(g) => Scalar::Gauss(g.neg()),
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        let (a, b, _) = Scalar::promote(self, other).expect("incompatible scalar rings");
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Gauss(x), Scalar::Gauss(y)) => Scalar::Gauss(x.mul(&y)),
            (Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(x.mul(&y)),
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; defined for nonzero field elements only.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(Error::NotInvertible("0".into()))
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Gauss(g) => g
                .inv()
                .map(Scalar::Gauss)
                .ok_or_else(|| Error::NotInvertible("0".into())),
            Scalar::Poly(p) => match p.as_constant() {
                Some(c) if !c.is_zero() => Ok(Scalar::Poly(Poly::constant(c.recip()))),
                _ => Err(Error::NotInvertible(format!("{p}"))),
            },
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitute polynomial variables; non-poly scalars are returned as-is.
    /// A result with no remaining variables collapses to its constant.
    pub fn substitute(&self, map: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        let p = match self {
            Scalar::Poly(p) => p,
            other => return Ok(other.clone()),
        };
        // split substitution values into polynomial images and check rings
        let mut poly_map: BTreeMap<String, Poly> = BTreeMap::new();
        let mut gaussian = false;
        for (k, v) in map {
            match v {
                Scalar::Rat(r) => {
                    poly_map.insert(k.clone(), Poly::constant(r.clone()));
                }
                Scalar::Poly(q) => {
                    poly_map.insert(k.clone(), q.clone());
                }
                Scalar::Gauss(_) => {
                    gaussian = true;
                }
            }
        }
        if gaussian {
            // gaussian values are only allowed when they fully evaluate the
            // polynomial; substitute the rational/poly part first
            let partial = p.substitute(&poly_map);
            let vars = partial.vars();
            let mut acc = Scalar::zero();
            if vars.iter().all(|v| map.contains_key(v)) {
                for (m, c) in partial.terms() {
                    let mut t = Scalar::Rat(c.clone());
                    for v in m.vars() {
                        let e = m.exponent(v);
                        for _ in 0..e {
                            t = t.mul(&map[v]);
                        }
                    }
                    acc = acc.add(&t);
                }
                return Ok(acc);
            }
            return Err(Error::RingMismatch(
                "gaussian substitution must evaluate all variables".into(),
            ));
        }
        let out = p.substitute(&poly_map);
        match out.as_constant() {
            Some(c) => Ok(Scalar::Rat(c)),
            None => Ok(Scalar::Poly(out)),
        }
    }

    pub fn reduce_squares(&self, rules: &[SquareRule]) -> Scalar {
        match self {
            Scalar::Poly(p) => {
                let q = p.reduce_squares(rules);
                match q.as_constant() {
                    Some(c) => Scalar::Rat(c),
                    None => Scalar::Poly(q),
                }
            }
            other => other.clone(),
        }
    }

    /// Parse the shared scalar text syntax.
    pub fn parse(text: &str) -> Result<Scalar> {
        parse_scalar_at(text, 1, 1)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Gauss(g) => write!(f, "{g}"),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// expression parser

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize, col: usize) -> Self {
        Lexer { src: src.as_bytes(), pos: 0, line, col }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.to_string() }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn next_token(&mut self) -> Result<Lexed> {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.bump();
        }
        let (line, col) = (self.line, self.col);
        if self.pos >= self.src.len() {
            return Ok(Lexed { tok: Tok::End, line, col });
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.bump();
                Tok::Plus
            }
            b'-' => {
                self.bump();
                Tok::Minus
            }
            b'*' => {
                self.bump();
                Tok::Star
            }
            b'/' => {
                self.bump();
                Tok::Slash
            }
            b'^' => {
                self.bump();
                Tok::Caret
            }
            b'(' => {
                self.bump();
                Tok::LParen
            }
            b')' => {
                self.bump();
                Tok::RParen
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.bump();
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Int(BigInt::from_str(s).map_err(|e| self.err(&e.to_string()))?)
            }
            c if (c as char).is_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && ((self.src[self.pos] as char).is_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.bump();
                }
                Tok::Ident(std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string())
            }
            other => {
                return Err(self.err(&format!("unexpected character {:?}", other as char)));
            }
        };
        Ok(Lexed { tok, line, col })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    cur: Lexed,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, line: usize, col: usize) -> Result<Self> {
        let mut lexer = Lexer::new(src, line, col);
        let cur = lexer.next_token()?;
        Ok(Parser { lexer, cur })
    }

    fn err_here(&self, msg: &str) -> Error {
        Error::Parse { line: self.cur.line, col: self.cur.col, msg: msg.to_string() }
    }

    fn advance(&mut self) -> Result<()> {
        self.cur = self.lexer.next_token()?;
        Ok(())
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.cur.tok {
                Tok::Plus => {
                    self.advance()?;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        while self.cur.tok == Tok::Star {
            self.advance()?;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.cur.tok == Tok::Caret {
            self.advance()?;
            let e = match &self.cur.tok {
                Tok::Int(n) => n
                    .to_u32()
                    .ok_or_else(|| self.err_here("exponent out of range"))?,
                _ => return Err(self.err_here("expected integer exponent after ^")),
            };
            self.advance()?;
            let mut acc = Scalar::one();
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.cur.tok.clone() {
            Tok::Minus => {
                self.advance()?;
                Ok(self.factor()?.neg())
            }
            Tok::Int(n) => {
                self.advance()?;
                // `a/b` with two integer literals is a rational constant
                if self.cur.tok == Tok::Slash {
                    self.advance()?;
                    match self.cur.tok.clone() {
                        Tok::Int(d) => {
                            self.advance()?;
                            if d.is_zero() {
                                return Err(self.err_here("zero denominator"));
                            }
                            Ok(Scalar::Rat(Rat::new(n, d)))
                        }
                        _ => Err(self.err_here("expected integer denominator after /")),
                    }
                } else {
                    Ok(Scalar::Rat(Rat::from(n)))
                }
            }
            Tok::Ident(name) => {
                self.advance()?;
                if name == "i" {
                    Ok(Scalar::i())
                } else {
                    Ok(Scalar::var(&name))
                }
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.expr()?;
                if self.cur.tok != Tok::RParen {
                    return Err(self.err_here("expected closing parenthesis"));
                }
                self.advance()?;
                Ok(inner)
            }
            _ => Err(self.err_here("expected a scalar expression")),
        }
    }
}

/// Parse a scalar expression, reporting positions relative to (line, col).
pub fn parse_scalar_at(text: &str, line: usize, col: usize) -> Result<Scalar> {
    let mut p = Parser::new(text, line, col)?;
    let s = p.expr()?;
    if p.cur.tok != Tok::End {
        return Err(p.err_here("unexpected trailing input"));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rationals_and_units() {
        assert_eq!(Scalar::parse("3/4").unwrap(), Scalar::Rat(rat(3, 4)));
        assert_eq!(Scalar::parse("-2").unwrap(), Scalar::int(-2));
        assert_eq!(Scalar::parse("i*i").unwrap(), Scalar::int(-1).coerce(RingTag::Gaussian).unwrap());
        assert_eq!(
            Scalar::parse("1/2 + i").unwrap(),
            Scalar::Gauss(GaussRat::new(rat(1, 2), rat(1, 1)))
        );
    }

    #[test]
    fn parse_polynomials() {
        let s = Scalar::parse("x^2 - 2*x*y + 1/3").unwrap();
        let t = Scalar::parse("x*x - x*y - y*x + 1/3").unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn parse_error_has_position() {
        match Scalar::parse("1 + ?") {
            Err(Error::Parse { line: 1, col: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn display_round_trips() {
        for text in ["3/4", "-2", "x^2 - 2*x*y + 1/3", "1/2+3*i", "-i", "b^2 + c^2"] {
            let s = Scalar::parse(text).unwrap();
            let shown = s.to_string();
            assert_eq!(Scalar::parse(&shown).unwrap(), s, "{text} -> {shown}");
        }
    }

    #[test]
    fn gaussian_satisfies_i_squared() {
        let i = Scalar::i();
        assert_eq!(i.mul(&i), Scalar::int(-1).coerce(RingTag::Gaussian).unwrap());
    }
}

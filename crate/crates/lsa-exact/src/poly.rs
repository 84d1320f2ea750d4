//! Multivariate polynomials over the rationals, in canonical graded-lex form.
//!
//! Monomials are kept in a fixed graded-lexicographic order (total degree
//! first, then variable names), so structural equality of two polynomials is
//! semantic equality and serialized output is byte-stable.

use crate::{Error, Rat, Result};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A monomial: sorted list of (variable, exponent) pairs, exponents > 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(String, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(name: &str) -> Self {
        Monomial { exps: vec![(name.to_string(), 1)] }
    }

    pub fn from_pairs(mut pairs: Vec<(String, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(String, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.exps
            .iter()
            .find(|(v, _)| v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut pairs = self.exps.clone();
        pairs.extend(other.exps.iter().cloned());
        Monomial::from_pairs(pairs)
    }

    /// Divide out `var^k`; caller must ensure the exponent is large enough.
    fn without_power(&self, var: &str, k: u32) -> Self {
        let pairs = self
            .exps
            .iter()
            .map(|(v, e)| {
                if v == var {
                    (v.clone(), e - k)
                } else {
                    (v.clone(), *e)
                }
            })
            .collect();
        Monomial::from_pairs(pairs)
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.exps.iter().map(|(v, _)| v.as_str())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then, walking the union of
    /// variable names in ascending order, the monomial with the larger
    /// exponent on the earliest differing variable is the larger one.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    // earlier variable name present only on one side: that
                    // side has positive exponent where the other has zero
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (idx, (v, e)) in self.exps.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rewrite rule `var^2 = replacement`, used to compute modulo simple
/// quadratic relations such as `eps^2 = 1` or `c^2 = r - b^2`.
#[derive(Clone, Debug)]
pub struct SquareRule {
    pub var: String,
    pub replacement: Poly,
}

impl SquareRule {
    pub fn new(var: &str, replacement: Poly) -> Self {
        SquareRule { var: var.to_string(), replacement }
    }
}

/// Multivariate polynomial with rational coefficients; no zero terms stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(name), Rat::one());
        Poly { terms }
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Some(c) when the polynomial is the constant c.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn vars(&self) -> Vec<String> {
        let mut vs: Vec<String> = Vec::new();
        for m in self.terms.keys() {
            for v in m.vars() {
                if !vs.iter().any(|x| x == v) {
                    vs.push(v.to_string());
                }
            }
        }
        vs.sort();
        vs
    }

    fn insert_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly::constant(Rat::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitute variables by polynomials; absent variables are untouched.
    pub fn substitute(&self, map: &BTreeMap<String, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            let mut residue = Vec::new();
            for (v, e) in &m.exps {
                match map.get(v) {
                    Some(p) => term = term.mul(&p.pow(*e)),
                    None => residue.push((v.clone(), *e)),
                }
            }
            term = term.mul(&Poly::term(Rat::one(), Monomial::from_pairs(residue)));
            out = out.add(&term);
        }
        out
    }

    /// Evaluate fully at rational points; errors if a variable is missing.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.exps {
                let val = point.get(v).ok_or_else(|| {
                    Error::RingMismatch(format!("no value given for variable {v}"))
                })?;
                for _ in 0..*e {
                    t *= val;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Rewrite modulo the given `var^2 = replacement` rules until no monomial
    /// carries an exponent >= 2 on a ruled variable.
    pub fn reduce_squares(&self, rules: &[SquareRule]) -> Poly {
        let mut cur = self.clone();
        loop {
            let mut changed = false;
            let mut next = Poly::zero();
            'terms: for (m, c) in &cur.terms {
                for rule in rules {
                    let e = m.exponent(&rule.var);
                    if e >= 2 {
                        let rest = Poly::term(c.clone(), m.without_power(&rule.var, 2));
                        next = next.add(&rest.mul(&rule.replacement));
                        changed = true;
                        continue 'terms;
                    }
                }
                next = next.add(&Poly::term(c.clone(), m.clone()));
            }
            cur = next;
            if !changed {
                return cur;
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // leading (largest) term first
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                if abs.denom().is_one() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else if abs.denom().is_one() {
                write!(f, "{}*{m}", abs.numer())?;
            } else {
                write!(f, "{}/{}*{m}", abs.numer(), abs.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn p(s: &str) -> Poly {
        match crate::scalar::Scalar::parse(s).unwrap() {
            crate::scalar::Scalar::Poly(p) => p,
            crate::scalar::Scalar::Rat(r) => Poly::constant(r),
            other => panic!("not a poly: {other:?}"),
        }
    }

    #[test]
    fn grlex_ordering() {
        let x2 = Monomial::from_pairs(vec![("x".into(), 2)]);
        let xy = Monomial::from_pairs(vec![("x".into(), 1), ("y".into(), 1)]);
        let y2 = Monomial::from_pairs(vec![("y".into(), 2)]);
        let x = Monomial::var("x");
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(y2 > x);
        assert!(x > Monomial::one());
    }

    #[test]
    fn canonical_form_drops_zeros() {
        let q = p("x + y").sub(&p("x"));
        assert_eq!(q, p("y"));
        assert!(p("x").sub(&p("x")).is_zero());
    }

    #[test]
    fn substitution_collapses_to_constant() {
        let q = p("x^2 + 2*x*y");
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), Poly::constant(rat(1, 2)));
        map.insert("y".to_string(), Poly::constant(rat(3, 1)));
        assert_eq!(q.substitute(&map).as_constant(), Some(rat(13, 4)));
    }

    #[test]
    fn square_rule_reduces_eps() {
        let rules = [SquareRule::new("e", Poly::constant(rat(1, 1)))];
        let q = p("e^2").reduce_squares(&rules);
        assert_eq!(q.as_constant(), Some(rat(1, 1)));
        let q = p("e^3 + e^2*x").reduce_squares(&rules);
        assert_eq!(q, p("e + x"));
    }

    #[test]
    fn square_rule_quadratic_extension() {
        // c^2 = r - b^2 turns b^2 + c^2 into r
        let rules = [SquareRule::new("c", p("r - b^2"))];
        let q = p("b^2 + c^2").reduce_squares(&rules);
        assert_eq!(q, p("r"));
    }
}

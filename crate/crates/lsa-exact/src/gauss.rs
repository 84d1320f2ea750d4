//! Gaussian rationals: `re + im*i` with exact rational parts.

use crate::Rat;
use num::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn i() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn zero() -> Self {
        GaussRat::from_rat(Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRat::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussRat::new(&self.re - &other.re, &self.im - &other.im)
    }

    pub fn neg(&self) -> Self {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }

    /// (a+bi)(c+di) = (ac-bd) + (ad+bc)i, so i*i = -1.
    pub fn mul(&self, other: &Self) -> Self {
        GaussRat::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn conj(&self) -> Self {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus re^2 + im^2.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(GaussRat::new(c.re / &n, c.im / &n))
    }
}

fn fmt_rat(r: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rat(&self.re, f);
        }
        let write_im = |f: &mut fmt::Formatter<'_>, im: &Rat| -> fmt::Result {
            let a = im.abs();
            if a.is_one() {
                write!(f, "i")
            } else {
                fmt_rat(&a, f)?;
                write!(f, "*i")
            }
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-")?;
            }
            return write_im(f, &self.im);
        }
        fmt_rat(&self.re, f)?;
        write!(f, "{}", if self.im.is_negative() { "-" } else { "+" })?;
        write_im(f, &self.im)
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Exact sparse polynomials in `Z[a, a^-1, b]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exponent key of a monomial `a^a_exp * b^b_exp`.
pub type Exponents = (i32, u32);

/// Sparse Laurent polynomial in `a` with polynomial dependence on `b`.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<Exponents, BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse polynomial at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `coef * a^a_exp * b^b_exp`.
    pub fn monomial(coef: impl Into<BigInt>, a_exp: i32, b_exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((a_exp, b_exp), coef.into());
        p
    }

    pub fn a() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn b() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// The value `-a^2 - a^-2` of a loop without an odd flat count.
    pub fn loop_value() -> Self {
        let mut p = Self::monomial(-1, 2, 0);
        p.add_term((-2, 0), BigInt::from(-1));
        p
    }

    /// `(-a)^e` for any integer `e`.
    pub fn neg_a_pow(e: i32) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(sign, e, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a_exp: i32, b_exp: u32) -> BigInt {
        self.terms.get(&(a_exp, b_exp)).cloned().unwrap_or_default()
    }

    /// Terms in canonical order: `a` exponent ascending, then `b` exponent.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &BigInt)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn b_degree(&self) -> u32 {
        self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0)
    }

    pub fn a_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|&(a, _)| a).min()?;
        let hi = self.terms.keys().map(|&(a, _)| a).max()?;
        Some((lo, hi))
    }

    pub fn add_term(&mut self, key: Exponents, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiply by `coef * a^a_shift * b^b_shift`.
    pub fn mul_monomial(&self, coef: &BigInt, a_shift: i32, b_shift: u32) -> Self {
        if coef.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + a_shift, b + b_shift), c * coef))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `a -> a^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(a, b), c)| ((-a, b), c.clone())).collect(),
        }
    }
}

impl AddAssign<&Poly2> for Poly2 {
    fn add_assign(&mut self, rhs: &Poly2) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl Add<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(mut self, rhs: Poly2) -> Poly2 {
        self += &rhs;
        self
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

impl Sub<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        self + &(-rhs)
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        &self - &rhs
    }
}

impl Mul<&Poly2> for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

impl std::iter::Sum for Poly2 {
    fn sum<I: Iterator<Item = Poly2>>(iter: I) -> Poly2 {
        iter.fold(Poly2::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, a: i32, b: u32) -> fmt::Result {
    let mut first = true;
    match a {
        0 => {}
        1 => {
            f.write_str("a")?;
            first = false;
        }
        _ => {
            write!(f, "a^{a}")?;
            first = false;
        }
    }
    if b > 0 {
        if !first {
            f.write_str("*")?;
        }
        if b == 1 {
            f.write_str("b")?;
        } else {
            write!(f, "b^{b}")?;
        }
    }
    Ok(())
}

/// Canonical text form, e.g. `-a^-10 - a^-6 + a^-6*b^2 - a^-2*b^2`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let bare = a == 0 && b == 0;
            if bare {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, a, b)?;
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> PolyParseError {
        PolyParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn int(&mut self) -> Result<String, PolyParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        if txt.is_empty() || txt == "-" {
            return Err(self.err("expected integer"));
        }
        Ok(txt.to_string())
    }

    fn exponent(&mut self) -> Result<i64, PolyParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.int()?.parse().map_err(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }
}

/// Parses the canonical text form (and any reordering of its terms).
impl FromStr for Poly2 {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lx = Lexer { s: s.as_bytes(), pos: 0 };
        let mut out = Poly2::zero();
        lx.skip_ws();
        if lx.peek().is_none() {
            return Err(lx.err("empty input"));
        }
        let mut first = true;
        loop {
            lx.skip_ws();
            let Some(c) = lx.peek() else { break };
            let mut sign = BigInt::one();
            if c == b'+' || c == b'-' {
                if c == b'-' {
                    sign = -sign;
                }
                lx.pos += 1;
                lx.skip_ws();
            } else if !first {
                return Err(lx.err("expected '+' or '-'"));
            }
            first = false;
            let mut coef = BigInt::one();
            let (mut a, mut b) = (0i64, 0i64);
            loop {
                match lx.peek() {
                    Some(d) if d.is_ascii_digit() => {
                        let txt = lx.int()?;
                        coef *= txt.parse::<BigInt>().map_err(|_| lx.err("bad integer"))?;
                    }
                    Some(b'a') => {
                        lx.pos += 1;
                        a += lx.exponent()?;
                    }
                    Some(b'b') => {
                        lx.pos += 1;
                        b += lx.exponent()?;
                    }
                    _ => return Err(lx.err("expected coefficient or variable")),
                }
                if lx.peek() == Some(b'*') {
                    lx.pos += 1;
                } else {
                    break;
                }
            }
            let a = i32::try_from(a).map_err(|_| lx.err("a exponent out of range"))?;
            let b = u32::try_from(b).map_err(|_| lx.err("negative or huge b exponent"))?;
            out.add_term((a, b), sign * coef);
        }
        Ok(out)
    }
}

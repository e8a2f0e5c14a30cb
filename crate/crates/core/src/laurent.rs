//! Exact arithmetic in the ring ℤ[x^{±1}, y^{±1}].
//!
//! A [`LaurentPoly`] is stored as a vector of `(Monomial, coefficient)` pairs
//! sorted by monomial (ascending x-exponent, then ascending y-exponent) with
//! no zero coefficients. That order is also the canonical text order, so
//! rendering is a straight walk over the terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// `x^x * y^y`. Ordered by x-exponent first, then y-exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub x: i64,
    pub y: i64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Monomial { x, y }
    }

    pub fn times(self, other: Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y)
    }

    pub fn inverse(self) -> Monomial {
        Monomial::new(-self.x, -self.y)
    }

    /// True if `other` divides `self` inside ℤ[x, y] (both exponents dominate).
    pub fn divisible_by(self, other: Monomial) -> bool {
        self.x >= other.x && self.y >= other.y
    }
}

/// A two-variable Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::ONE)
    }

    /// `c * x^a * y^b`.
    pub fn monomial(c: impl Into<BigInt>, a: i64, b: i64) -> Self {
        Self::term(c, Monomial::new(a, b))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary terms; repeated monomials are summed
    /// and zero coefficients dropped.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let raw: Vec<(Monomial, BigInt)> = terms.into_iter().map(|(m, c)| (m, c.into())).collect();
        Self::from_unsorted(raw)
    }

    fn from_unsorted(mut raw: Vec<(Monomial, BigInt)>) -> Self {
        raw.sort_unstable_by_key(|t| t.0);
        let mut terms: Vec<(Monomial, BigInt)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = terms.last() {
                        if lc.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = terms.last() {
            if lc.is_zero() {
                terms.pop();
            }
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (Monomial, &BigInt)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, m: Monomial) -> BigInt {
        match self.terms.binary_search_by(|(tm, _)| tm.cmp(&m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Lex-largest term (largest x-exponent, then largest y-exponent).
    pub fn leading_term(&self) -> Option<(Monomial, &BigInt)> {
        self.terms.last().map(|(m, c)| (*m, c))
    }

    /// A unit of ℤ[x^{±1}, y^{±1}] is `±x^a y^b`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.abs().is_one()
    }

    /// Inverse of a unit; `None` for anything else.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (m, c) = &self.terms[0];
        Some(LaurentPoly {
            terms: vec![(m.inverse(), c.clone())],
        })
    }

    pub fn min_x_exponent(&self) -> Option<i64> {
        // sorted by x first, so the first term carries the minimum
        self.terms.first().map(|(m, _)| m.x)
    }

    pub fn min_y_exponent(&self) -> Option<i64> {
        self.terms.iter().map(|(m, _)| m.y).min()
    }

    /// Multiplies by the monomial `x^dx * y^dy`.
    pub fn shift(&self, dx: i64, dy: i64) -> Self {
        let s = Monomial::new(dx, dy);
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.times(s), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Integer power; negative exponents only for units.
    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            let inv = self.unit_inverse().expect("negative power of a non-unit");
            return inv.pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e as u64;
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

    /// Canonical representative of the orbit `{x^m p : m ∈ ℤ}`: the result has
    /// minimal x-exponent 0, and zero stays zero.
    pub fn normalize_x(&self) -> Self {
        match self.min_x_exponent() {
            None => Self::zero(),
            Some(d) => self.shift(-d, 0),
        }
    }

    /// True iff `self = x^m * other` for some integer m.
    pub fn equal_up_to_x_power(&self, other: &Self) -> bool {
        self.normalize_x() == other.normalize_x()
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate_other {
                        -&b[j].1
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (m, c) in &b[j..] {
            out.push((*m, if negate_other { -c } else { c.clone() }));
        }
        LaurentPoly { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return LaurentPoly {
                terms: self
                    .terms
                    .iter()
                    .map(|(tm, tc)| (tm.times(*m), tc * c))
                    .collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.product(self);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                raw.push((ma.times(*mb), ca * cb));
            }
        }
        Self::from_unsorted(raw)
    }
}

/// `p + q` with zero terms pruned.
pub fn add(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.merge(q, false)
}

/// `p * q`.
pub fn mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p.product(q)
}

pub fn normalize_x(p: &LaurentPoly) -> LaurentPoly {
    p.normalize_x()
}

pub fn equal_up_to_x_power(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    p.equal_up_to_x_power(q)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let f: fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.merge(b, false));
forward_binop!(Sub, sub, |a, b| a.merge(b, true));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, true);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| acc + p)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| acc * p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*x^{}*y^{}", c, m.x, m.y)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Canonical polynomial text for `p`.
pub fn render_poly(p: &LaurentPoly) -> String {
    p.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("polynomial syntax error at byte {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

/// Parses the canonical text form. Terms may come in any order; repeated
/// monomials are summed.
pub fn parse_poly(s: &str) -> Result<LaurentPoly, ParsePolyError> {
    PolyParser {
        src: s.as_bytes(),
        pos: 0,
    }
    .parse()
}

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParsePolyError> {
        Err(ParsePolyError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParsePolyError> {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    fn integer(&mut self) -> Result<&str, ParsePolyError> {
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected a decimal integer");
        }
        // only ASCII was consumed
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn exponent(&mut self) -> Result<i64, ParsePolyError> {
        let start = self.pos;
        let text = self.integer()?;
        text.parse::<i64>().map_err(|_| ParsePolyError {
            position: start,
            message: "exponent out of range".into(),
        })
    }

    fn parse(mut self) -> Result<LaurentPoly, ParsePolyError> {
        if self.src == b"0" {
            return Ok(LaurentPoly::zero());
        }
        let mut raw = Vec::new();
        loop {
            let coeff_start = self.pos;
            let coeff: BigInt = self.integer()?.parse().expect("validated digits");
            if coeff.is_zero() {
                self.pos = coeff_start;
                return self.err("zero coefficient in a term");
            }
            self.expect("*x^")?;
            let a = self.exponent()?;
            self.expect("*y^")?;
            let b = self.exponent()?;
            raw.push((Monomial::new(a, b), coeff));
            if self.pos == self.src.len() {
                break;
            }
            self.expect(" + ")?;
        }
        Ok(LaurentPoly::from_unsorted(raw))
    }
}

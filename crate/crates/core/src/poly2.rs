//! Bivariate Laurent polynomials over GF(2).
//!
//! A polynomial is stored as its support: the set of exponents `(i, j)` of the
//! monomials `x^i y^j` whose coefficient is one. Addition is the symmetric
//! difference of supports and multiplication is convolution with parity
//! cancellation.
//!
//! The text form accepted by [`LaurentPoly::parse`] is
//!
//! ```text
//! poly       := term ('+' term)* | '0'
//! term       := '1' | factor ('*'? factor)*
//! factor     := ('x' | 'y') ('^' signed_int)?
//! signed_int := '-'? [0-9]+
//! ```
//!
//! Whitespace is ignored everywhere. [`LaurentPoly::render`] produces the
//! canonical form: terms sorted by `(j, i)` ascending, explicit `*` between
//! factors and `^` only for exponents other than one.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use thiserror::Error;

/// Largest exponent magnitude accepted by the parser and by checked arithmetic.
pub const MAX_EXPONENT: i64 = 1 << 40;

/// Lattice step `(i, j)`, i.e. the monomial `x^i y^j`.
///
/// Ordered by `(j, i)`, which is the canonical rendering order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Exponent {
    pub i: i64,
    pub j: i64,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { i: 0, j: 0 };

    pub const fn new(i: i64, j: i64) -> Self {
        Exponent { i, j }
    }

    pub fn checked_add(self, other: Exponent) -> Result<Exponent, PolyError> {
        let i = self.i.checked_add(other.i).ok_or(PolyError::Overflow)?;
        let j = self.j.checked_add(other.j).ok_or(PolyError::Overflow)?;
        if i.abs() > MAX_EXPONENT || j.abs() > MAX_EXPONENT {
            return Err(PolyError::Overflow);
        }
        Ok(Exponent { i, j })
    }

    pub fn negated(self) -> Exponent {
        Exponent { i: -self.i, j: -self.j }
    }

    /// Chebyshev norm `max(|i|, |j|)`.
    pub fn chebyshev(self) -> i64 {
        self.i.abs().max(self.j.abs())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.j, self.i).cmp(&(other.j, other.i))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { offset: usize, name: char },
    #[error("exponent overflow")]
    Overflow,
    #[error("operation requires a nonzero polynomial")]
    Zero,
}

/// Element of `Z2[x, y, 1/x, 1/y]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // sorted ascending by (j, i), no duplicates
    terms: Vec<Exponent>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Exponent::ZERO)
    }

    pub fn monomial(e: Exponent) -> Self {
        LaurentPoly { terms: vec![e] }
    }

    /// Builds a polynomial from a list of exponents; repeated exponents cancel
    /// in pairs.
    pub fn from_exponents<I: IntoIterator<Item = Exponent>>(iter: I) -> Self {
        let mut v: Vec<Exponent> = iter.into_iter().collect();
        v.sort_unstable();
        LaurentPoly { terms: cancel_pairs(v) }
    }

    /// Shorthand for `from_exponents` over `(i, j)` tuples.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::from_exponents(pairs.iter().map(|&(i, j)| Exponent::new(i, j)))
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

    pub fn contains(&self, e: Exponent) -> bool {
        self.terms.binary_search(&e).is_ok()
    }

    /// Support in canonical `(j, i)` order.
    pub fn terms(&self) -> &[Exponent] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.terms.iter().copied()
    }

    /// Largest `|i|` or `|j|` over the support; 0 for the zero polynomial.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms.iter().map(|e| e.chebyshev()).max().unwrap_or(0)
    }

    pub fn min_i(&self) -> Option<i64> {
        self.terms.iter().map(|e| e.i).min()
    }

    pub fn min_j(&self) -> Option<i64> {
        self.terms.iter().map(|e| e.j).min()
    }

    /// True when every term is a power of `y` alone.
    pub fn is_univariate_y(&self) -> bool {
        self.terms.iter().all(|e| e.i == 0)
    }

    pub fn is_univariate_x(&self) -> bool {
        self.terms.iter().all(|e| e.j == 0)
    }

    /// Multiplies by the monomial `x^m.i y^m.j`.
    pub fn shift(&self, m: Exponent) -> Result<Self, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|e| e.checked_add(m))
            .collect::<Result<Vec<_>, _>>()?;
        // translation preserves the (j, i) order
        Ok(LaurentPoly { terms })
    }

    /// `p(1/x, 1/y)`: negates every exponent.
    pub fn antipode(&self) -> Self {
        let mut terms: Vec<Exponent> = self.terms.iter().map(|e| e.negated()).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        Self::from_exponents(self.terms.iter().map(|e| Exponent::new(e.j, e.i)))
    }

    /// Multiplies by the smallest monomial that makes every exponent
    /// non-negative. The returned exponent is that monomial; afterwards each
    /// coordinate has minimum exactly zero.
    pub fn shift_to_nonneg(&self) -> Result<(Self, Exponent), PolyError> {
        let (mi, mj) = match (self.min_i(), self.min_j()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(PolyError::Zero),
        };
        let m = Exponent::new(-mi, -mj);
        Ok((self.shift(m)?, m))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let mut counts: HashMap<Exponent, bool> =
            HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let s = a.checked_add(*b)?;
                let slot = counts.entry(s).or_insert(false);
                *slot = !*slot;
            }
        }
        let mut terms: Vec<Exponent> =
            counts.into_iter().filter_map(|(e, odd)| odd.then_some(e)).collect();
        terms.sort_unstable();
        Ok(LaurentPoly { terms })
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        Parser::new(text).parse()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (n, e) in self.terms.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            render_monomial(&mut out, *e);
        }
        out
    }
}

fn render_monomial(out: &mut String, e: Exponent) {
    if e.i == 0 && e.j == 0 {
        out.push('1');
        return;
    }
    let mut first = true;
    for (name, power) in [('x', e.i), ('y', e.j)] {
        if power == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push(name);
        if power != 1 {
            out.push('^');
            out.push_str(&power.to_string());
        }
    }
}

fn cancel_pairs(sorted: Vec<Exponent>) -> Vec<Exponent> {
    let mut out: Vec<Exponent> = Vec::with_capacity(sorted.len());
    for e in sorted {
        if out.last() == Some(&e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
    out
}

/// Symmetric difference of two sorted, duplicate-free slices.
pub(crate) fn sym_diff<T: Ord + Copy>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            Ordering::Less => {
                out.push(a[x]);
                x += 1;
            }
            Ordering::Greater => {
                out.push(b[y]);
                y += 1;
            }
            Ordering::Equal => {
                x += 1;
                y += 1;
            }
        }
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
    out
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: sym_diff(&self.terms, &rhs.terms) }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    /// Panics on exponent overflow; use [`LaurentPoly::try_mul`] to handle it.
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("exponent overflow in Laurent multiplication")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { offset: self.pos, message: message.into() })
    }

    fn parse(mut self) -> Result<LaurentPoly, PolyError> {
        if self.peek() == Some(b'0') {
            let start = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(LaurentPoly::zero());
            }
            self.pos = start;
            return self.error("'0' may only appear as the whole polynomial");
        }
        let mut exps = vec![self.term()?];
        loop {
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    exps.push(self.term()?);
                }
                Some(_) => return self.error("expected '+' or end of input"),
            }
        }
        Ok(LaurentPoly::from_exponents(exps))
    }

    fn term(&mut self) -> Result<Exponent, PolyError> {
        match self.peek() {
            Some(b'1') => {
                self.pos += 1;
                // '1' must stand alone, so the next token cannot start a number
                if matches!(self.bytes.get(self.pos), Some(c) if c.is_ascii_digit()) {
                    return self.error("unexpected digit");
                }
                Ok(Exponent::ZERO)
            }
            Some(b'x') | Some(b'y') => {
                let mut e = self.factor()?;
                loop {
                    match self.peek() {
                        Some(b'*') => {
                            self.pos += 1;
                            let f = self.factor()?;
                            e = e.checked_add(f)?;
                        }
                        Some(b'x') | Some(b'y') => {
                            let f = self.factor()?;
                            e = e.checked_add(f)?;
                        }
                        Some(c) if c.is_ascii_alphabetic() => {
                            return Err(PolyError::UnknownVariable {
                                offset: self.pos,
                                name: c as char,
                            })
                        }
                        _ => break,
                    }
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                Err(PolyError::UnknownVariable { offset: self.pos, name: c as char })
            }
            Some(_) => self.error("expected a term"),
            None => self.error("unexpected end of input"),
        }
    }

    fn factor(&mut self) -> Result<Exponent, PolyError> {
        let var = match self.peek() {
            Some(b'x') => 0,
            Some(b'y') => 1,
            Some(c) if c.is_ascii_alphabetic() => {
                return Err(PolyError::UnknownVariable { offset: self.pos, name: c as char })
            }
            _ => return self.error("expected 'x' or 'y'"),
        };
        self.pos += 1;
        let power = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.signed_int()?
        } else {
            1
        };
        Ok(if var == 0 { Exponent::new(power, 0) } else { Exponent::new(0, power) })
    }

    fn signed_int(&mut self) -> Result<i64, PolyError> {
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer exponent");
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or("");
        let value: i64 = match digits.parse() {
            Ok(v) if v <= MAX_EXPONENT => v,
            _ => {
                self.pos = start;
                return Err(PolyError::Overflow);
            }
        };
        Ok(if negative { -value } else { value })
    }
}

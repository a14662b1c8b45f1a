//! Dense univariate polynomials over GF(2), one bit per coefficient.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::numtheory;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodError {
    #[error("the zero polynomial has no period")]
    Zero,
    #[error("polynomial is divisible by the variable, so no period exists")]
    DivisibleByVariable,
    #[error("irreducible factor of degree {0} exceeds the supported 64")]
    DegreeTooLarge(usize),
    #[error("period does not fit in 64 bits")]
    Overflow,
}

/// Polynomial in a single variable with coefficients in GF(2).
///
/// Bit `k` of the packed words is the coefficient of `t^k`. The word vector is
/// kept trimmed so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    /// The monomial `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut p = Gf2Poly { words: vec![0; k / 64 + 1] };
        p.words[k / 64] = 1 << (k % 64);
        p
    }

    /// `t^k + 1`.
    pub fn binomial(k: usize) -> Self {
        let mut p = Self::monomial(k);
        p.flip(0);
        p
    }

    pub fn from_exponents<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut p = Self::zero();
        for k in iter {
            p.flip(k);
        }
        p
    }

    /// Low bits of `bits` as coefficients, bit `k` for `t^k`.
    pub fn from_u64(bits: u64) -> Self {
        let mut p = Gf2Poly { words: vec![bits] };
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, k: usize) -> bool {
        self.words.get(k / 64).is_some_and(|w| (w >> (k % 64)) & 1 == 1)
    }

    pub fn flip(&mut self, k: usize) {
        if self.words.len() <= k / 64 {
            self.words.resize(k / 64 + 1, 0);
        }
        self.words[k / 64] ^= 1 << (k % 64);
        self.trim();
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * 64 + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        let ws = shift / 64;
        let bs = shift % 64;
        let need = other.words.len() + ws + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        for (k, &w) in other.words.iter().enumerate() {
            self.words[k + ws] ^= w << bs;
            if bs != 0 {
                self.words[k + ws + 1] ^= w >> (64 - bs);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.weight() <= other.weight() { (self, other) } else { (other, self) };
        let mut acc = Gf2Poly { words: vec![0; a.words.len() + b.words.len() + 1] };
        for k in a.exponents() {
            acc.xor_shifted(b, k);
        }
        acc.trim();
        acc
    }

    pub fn square(&self) -> Self {
        let mut words = vec![0u64; self.words.len() * 2];
        for (k, &w) in self.words.iter().enumerate() {
            words[2 * k] = spread(w as u32);
            words[2 * k + 1] = spread((w >> 32) as u32);
        }
        let mut p = Gf2Poly { words };
        p.trim();
        p
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem.xor_shifted(divisor, shift);
            rem.trim();
            quot.flip(shift);
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    /// `t^e mod modulus`, by square and multiply.
    pub fn t_pow_mod(e: u64, modulus: &Self) -> Self {
        Self::monomial(1).rem(modulus).pow_mod(e, modulus)
    }

    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one().rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            e >>= 1;
            if e > 0 {
                base = base.square().rem(modulus);
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        // d/dt t^k = k t^(k-1): keep odd k
        Self::from_exponents(self.exponents().into_iter().filter(|k| k % 2 == 1).map(|k| k - 1))
    }

    /// Square root of a polynomial whose odd coefficients all vanish.
    pub fn sqrt_even(&self) -> Self {
        Self::from_exponents(self.exponents().into_iter().map(|k| {
            debug_assert!(k % 2 == 0);
            k / 2
        }))
    }

    pub fn render(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.exponents()
            .into_iter()
            .map(|k| match k {
                0 => "1".to_string(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

const SPLIT_SEED: u64 = 0x5EED_F00D;

impl Gf2Poly {
    /// Square-free decomposition: pairs `(s, m)` with `self = Π s^m`, each `s`
    /// square-free and pairwise coprime. Requires a nonzero input.
    pub fn square_free(&self) -> Vec<(Gf2Poly, u32)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let mut out = Vec::new();
        let mut c = self.gcd(&self.derivative());
        let mut w = self.div_rem(&c).0;
        let mut i = 1u32;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.div_rem(&y).0;
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.div_rem(&w).0;
            i += 1;
        }
        if !c.is_one() {
            for (g, m) in c.sqrt_even().square_free() {
                out.push((g, 2 * m));
            }
        }
        out
    }

    /// Distinct-degree factorization of a square-free polynomial: pairs
    /// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(Gf2Poly, usize)> {
        let mut out = Vec::new();
        let mut f = self.clone();
        let t = Gf2Poly::monomial(1);
        let mut h = t.rem(&f);
        let mut d = 0;
        while let Some(deg) = f.degree() {
            if deg < 2 * (d + 1) {
                break;
            }
            d += 1;
            h = h.square().rem(&f);
            let g = h.add(&t).gcd(&f);
            if !g.is_one() {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if let Some(deg) = f.degree() {
            if deg > 0 {
                out.push((f, deg));
            }
        }
        out
    }

    /// Splits a product of distinct irreducibles of degree `d` (trace map).
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Gf2Poly> {
        let n = self.degree().expect("nonzero");
        if n == d {
            return vec![self.clone()];
        }
        loop {
            let a = Gf2Poly::from_exponents((0..n).filter(|_| rng.gen::<bool>()));
            let mut tr = a.rem(self);
            let mut pow = tr.clone();
            for _ in 1..d {
                pow = pow.square().rem(self);
                tr = tr.add(&pow);
            }
            let g = tr.gcd(self);
            if let Some(gd) = g.degree() {
                if gd > 0 && gd < n {
                    let mut out = g.equal_degree(d, rng);
                    out.extend(self.div_rem(&g).0.equal_degree(d, rng));
                    return out;
                }
            }
        }
    }

    /// Complete factorization into irreducibles with multiplicities, sorted.
    pub fn factor(&self) -> Vec<(Gf2Poly, u32)> {
        assert!(!self.is_zero(), "factorization of zero");
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out = Vec::new();
        let mut f = self.clone();
        let zeros = self.exponents()[0];
        if zeros > 0 {
            out.push((Gf2Poly::monomial(1), zeros as u32));
            f = f.div_rem(&Gf2Poly::monomial(zeros)).0;
        }
        for (s, m) in f.square_free() {
            for (g, d) in s.distinct_degree() {
                for p in g.equal_degree(d, &mut rng) {
                    out.push((p, m));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            _ => {
                let f = self.factor();
                f.len() == 1 && f[0].1 == 1
            }
        }
    }

    /// Multiplicative order of `t` modulo an irreducible `self` with `self(0) = 1`.
    pub fn order_irreducible(&self) -> Result<u64, PeriodError> {
        let d = self.degree().ok_or(PeriodError::Zero)?;
        if !self.coeff(0) {
            return Err(PeriodError::DivisibleByVariable);
        }
        if d > 64 {
            return Err(PeriodError::DegreeTooLarge(d));
        }
        if d == 1 {
            return Ok(1);
        }
        let group = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
        let mut ord = group;
        for (q, _) in numtheory::factorize(group) {
            while ord % q == 0 && Gf2Poly::t_pow_mod(ord / q, self).is_one() {
                ord /= q;
            }
        }
        Ok(ord)
    }

    /// Smallest `L > 0` with `self | t^L - 1`.
    ///
    /// For an irreducible factor `p` of multiplicity `m` the order is
    /// `ord(p) · 2^⌈log2 m⌉`; factors combine by lcm.
    pub fn period(&self) -> Result<u64, PeriodError> {
        if self.is_zero() {
            return Err(PeriodError::Zero);
        }
        if !self.coeff(0) {
            return Err(PeriodError::DivisibleByVariable);
        }
        let mut l = 1u64;
        for (p, m) in self.factor() {
            let base = p.order_irreducible()?;
            let lift = (m as u64).next_power_of_two();
            let o = base.checked_mul(lift).ok_or(PeriodError::Overflow)?;
            l = numtheory::lcm_checked(l, o).ok_or(PeriodError::Overflow)?;
        }
        Ok(l)
    }
}

// interleave zeros between the bits of w
fn spread(w: u32) -> u64 {
    let mut x = w as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({})", self.render('t'))
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render('t'))
    }
}

impl Ord for Gf2Poly {
    /// Degree first, then coefficients from the top.
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

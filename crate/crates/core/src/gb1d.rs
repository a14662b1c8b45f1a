//! One-dimensional bicycle codes from width-one twisted tori.
//!
//! On a torus with `β = 1` the relation `x y^γ = 1` lets `x` be replaced by
//! `y^{-γ}`, leaving two polynomials on a cycle of length `l = α`. Then
//! `k = 2·deg gcd(f, g, y^l - 1)`.

use std::io::Write;

use thiserror::Error;

use crate::catalog::{CycleRow, TORIC_ROWS};
use crate::gf2x::Gf2Poly;
use crate::poly2::{Exponent, LaurentPoly};
use crate::torus::TwistedTorus;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gb1dError {
    #[error("torus has beta = {0}, expected 1")]
    NotWidthOne(u64),
    #[error("{0} collapses to zero on the cycle")]
    Degenerate(&'static str),
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("cycle length must be positive")]
    EmptyCycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbCode1D {
    f: Gf2Poly,
    g: Gf2Poly,
    l: u64,
}

fn reduce_mod_cycle(p: &Gf2Poly, l: u64) -> Gf2Poly {
    Gf2Poly::from_exponents(p.exponents().into_iter().map(|e| (e as u64 % l) as usize))
}

impl GbCode1D {
    /// Exponents are reduced mod `l`; both polynomials must stay nonzero.
    pub fn new(f: &Gf2Poly, g: &Gf2Poly, l: u64) -> Result<Self, Gb1dError> {
        if l == 0 {
            return Err(Gb1dError::EmptyCycle);
        }
        let f = reduce_mod_cycle(f, l);
        let g = reduce_mod_cycle(g, l);
        if f.is_zero() {
            return Err(Gb1dError::Degenerate("f"));
        }
        if g.is_zero() {
            return Err(Gb1dError::Degenerate("g"));
        }
        Ok(GbCode1D { f, g, l })
    }

    pub fn f(&self) -> &Gf2Poly {
        &self.f
    }

    pub fn g(&self) -> &Gf2Poly {
        &self.g
    }

    pub fn l(&self) -> u64 {
        self.l
    }

    pub fn n(&self) -> u64 {
        2 * self.l
    }

    /// The same code as a two-dimensional code on the torus `(l, 1, 0)`.
    pub fn as_toric(&self) -> (LaurentPoly, LaurentPoly, TwistedTorus) {
        let lift = |p: &Gf2Poly| LaurentPoly::from_exponents(p.exponents().into_iter().map(|e| Exponent::new(0, e as i64)));
        (lift(&self.f), lift(&self.g), TwistedTorus::new(self.l as i64, 1, 0).expect("positive cycle"))
    }
}

fn substitute(p: &LaurentPoly, alpha: i64, gamma: i64) -> Gf2Poly {
    Gf2Poly::from_exponents(p.iter().map(|e| {
        let j = (e.j as i128 - e.i as i128 * gamma as i128).rem_euclid(alpha as i128);
        j as usize
    }))
}

/// Replaces `x` by `y^{-γ}` and reduces exponents mod `α`.
pub fn reduce_to_1d(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus) -> Result<GbCode1D, Gb1dError> {
    if torus.beta() != 1 {
        return Err(Gb1dError::NotWidthOne(torus.beta()));
    }
    let (a, c) = (torus.alpha() as i64, torus.gamma() as i64);
    GbCode1D::new(&substitute(f, a, c), &substitute(g, a, c), a as u64)
}

pub fn gcd_univariate(p: &Gf2Poly, q: &Gf2Poly) -> Result<Gf2Poly, Gb1dError> {
    if p.is_zero() && q.is_zero() {
        return Err(Gb1dError::BothZero);
    }
    Ok(p.gcd(q))
}

pub fn k_1d(code: &GbCode1D) -> usize {
    let cyc = Gf2Poly::binomial(code.l as usize);
    let h = code.f.gcd(&code.g).gcd(&cyc);
    2 * h.degree().expect("gcd of nonzero polynomials")
}

/// Writes rows as CSV with a flag for rows whose parameters equal the
/// two-dimensional optimum at the same `n`.
pub fn write_cycle_table<W: Write>(rows: &[CycleRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["[[n,k,d]]", "f(y)", "g(y)", "l", "matches_2d"])?;
    for r in rows {
        let f = Gf2Poly::from_exponents([0, r.f_exps.0 as usize, r.f_exps.1 as usize]);
        let g = Gf2Poly::from_exponents([0, 1, r.g_exp as usize]);
        let matches = TORIC_ROWS.iter().any(|t| (t.n, t.k, t.d) == (r.n, r.k, r.d));
        w.write_record([
            format!("[[{},{},{}]]", r.n, r.k, r.d),
            f.render('y'),
            g.render('y'),
            r.l.to_string(),
            matches.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

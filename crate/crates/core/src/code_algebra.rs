//! Code parameters from ideals: the topological-order condition, anyon
//! counts, logical dimension on twisted tori, univariate generators and
//! minimal periods.
//!
//! All ideals here live in the Laurent ring `GF(2)[x, y, x^-1, y^-1]`.

use std::collections::HashMap;

use thiserror::Error;

use crate::gf2x::{Gf2Poly, PeriodError};
use crate::groebner::{
    buchberger_with, intersect_principal, laurent_basis_of, principal_basis, Budget, GroebnerBasis,
    GroebnerError, Monomial, MonomialOrder, MultiPoly, Saturation, Var,
};
use crate::numtheory;
use crate::poly2::{Exponent, LaurentPoly};
use crate::torus::TwistedTorus;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Period(#[from] PeriodError),
    #[error("the quotient ring is infinite-dimensional (f and g share a factor)")]
    NotZeroDimensional,
    #[error("f and g are not coprime, so the topological-order condition fails")]
    ToViolation,
    #[error("no univariate generator in {0}")]
    NoUnivariate(Var),
    #[error("zero polynomial")]
    Zero,
}

/// Axis used for univariate generators and periods.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn var(self) -> Var {
        match self {
            Axis::X => Var::X,
            Axis::Y => Var::Y,
        }
    }

    /// Lex order that eliminates the other variable.
    pub fn eliminating_order(self) -> MonomialOrder {
        match self {
            Axis::Y => MonomialOrder::lex_xy(),
            Axis::X => MonomialOrder::lex_yx(),
        }
    }
}

/// Standard monomials of a zero-dimensional ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardMonomialBasis {
    pub monomials: Vec<Exponent>,
    pub count: usize,
}

/// Irreducible factors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateFactorization {
    pub factors: Vec<(Gf2Poly, u32)>,
}

impl UnivariateFactorization {
    pub fn product(&self) -> Gf2Poly {
        let mut acc = Gf2Poly::one();
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(p);
            }
        }
        acc
    }
}

/// Univariate Laurent polynomial in `axis` to a dense polynomial, after
/// shifting the lowest exponent to zero.
pub fn to_gf2(p: &LaurentPoly, axis: Axis) -> Result<Gf2Poly, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::Zero);
    }
    let e: Vec<i64> = p
        .iter()
        .map(|e| match axis {
            Axis::X if e.j == 0 => Ok(e.i),
            Axis::Y if e.i == 0 => Ok(e.j),
            _ => Err(AlgebraError::NoUnivariate(axis.var())),
        })
        .collect::<Result<_, _>>()?;
    let lo = *e.iter().min().expect("nonzero");
    Ok(Gf2Poly::from_exponents(e.into_iter().map(|k| (k - lo) as usize)))
}

pub fn from_gf2(p: &Gf2Poly, axis: Axis) -> LaurentPoly {
    LaurentPoly::from_exponents(p.exponents().into_iter().map(|k| match axis {
        Axis::X => Exponent::new(k as i64, 0),
        Axis::Y => Exponent::new(0, k as i64),
    }))
}

/// Basis of the anyon ideal `⟨f, g⟩` under `order`.
pub fn anyon_basis(f: &LaurentPoly, g: &LaurentPoly, order: &MonomialOrder) -> Result<GroebnerBasis, AlgebraError> {
    anyon_basis_with(f, g, order, &Budget::default())
}

pub fn anyon_basis_with(
    f: &LaurentPoly,
    g: &LaurentPoly,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::Zero);
    }
    Ok(laurent_basis_of(&[f.clone(), g.clone()], order, Saturation::Rabinowitsch, budget)?)
}

/// Topological-order condition `⟨f⟩ ∩ ⟨g⟩ = ⟨fg⟩`, decided by elimination.
pub fn check_to_condition(f: &LaurentPoly, g: &LaurentPoly) -> Result<bool, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::Zero);
    }
    let meet = intersect_principal(f, g)?;
    let prod = principal_basis(&f.try_mul(g).map_err(GroebnerError::from)?)?;
    Ok(crate::groebner::ideal_equal(&meet, &prod)?)
}

/// Same verdict as [`check_to_condition`], computed as zero-dimensionality of
/// the polynomial ideal of the shifted pair under graded lex.
pub fn coprime_fast(f: &LaurentPoly, g: &LaurentPoly) -> Result<bool, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::Zero);
    }
    let order = MonomialOrder::grlex(&[Var::X, Var::Y]);
    let (fs, _) = f.shift_to_nonneg().map_err(GroebnerError::from)?;
    let (gs, _) = g.shift_to_nonneg().map_err(GroebnerError::from)?;
    let gens = [MultiPoly::from_laurent(&fs, &order)?, MultiPoly::from_laurent(&gs, &order)?];
    let gb = buchberger_with(&gens, &order, &Budget::default())?;
    Ok(is_zero_dimensional(&gb))
}

fn pure_power_bounds(gb: &GroebnerBasis) -> (Option<u32>, Option<u32>) {
    let o = gb.order();
    let mut bx = None;
    let mut by = None;
    for lt in gb.leading_terms() {
        let (i, j) = (o.exponent(lt, Var::X), o.exponent(lt, Var::Y));
        if j == 0 {
            bx = Some(bx.map_or(i, |b: u32| b.min(i)));
        }
        if i == 0 {
            by = Some(by.map_or(j, |b: u32| b.min(j)));
        }
    }
    (bx, by)
}

pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    let (bx, by) = pure_power_bounds(gb);
    bx.is_some() && by.is_some()
}

/// Monomials not divisible by any leading term, listed by `(j, i)`.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<StandardMonomialBasis, AlgebraError> {
    let (bx, by) = pure_power_bounds(gb);
    let (bx, by) = match (bx, by) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(AlgebraError::NotZeroDimensional),
    };
    let o = gb.order();
    let lts: Vec<(u32, u32)> =
        gb.leading_terms().into_iter().map(|m| (o.exponent(m, Var::X), o.exponent(m, Var::Y))).collect();
    let mut monomials = Vec::new();
    for j in 0..by {
        for i in 0..bx {
            if !lts.iter().any(|&(a, b)| a <= i && b <= j) {
                monomials.push(Exponent::new(i as i64, j as i64));
            }
        }
    }
    monomials.sort();
    let count = monomials.len();
    Ok(StandardMonomialBasis { monomials, count })
}

pub fn quotient_dimension(gb: &GroebnerBasis) -> Result<usize, AlgebraError> {
    Ok(standard_monomials(gb)?.count)
}

/// Twice the number of anyon types, the largest `k` on any torus.
pub fn k_max(f: &LaurentPoly, g: &LaurentPoly) -> Result<usize, AlgebraError> {
    let gb = anyon_basis(f, g, &MonomialOrder::lex_xy())?;
    match quotient_dimension(&gb) {
        Ok(d) => Ok(2 * d),
        Err(AlgebraError::NotZeroDimensional) => Err(AlgebraError::ToViolation),
        Err(e) => Err(e),
    }
}

fn torus_relations(torus: &TwistedTorus) -> [LaurentPoly; 2] {
    [
        LaurentPoly::from_exponents([Exponent::new(0, torus.alpha() as i64), Exponent::ZERO]),
        LaurentPoly::from_exponents([Exponent::new(torus.beta() as i64, torus.gamma() as i64), Exponent::ZERO]),
    ]
}

/// `k` from a Gröbner basis of `⟨f, g, y^α - 1, x^β y^γ - 1⟩` computed directly.
pub fn k_on_torus_direct(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus) -> Result<usize, AlgebraError> {
    k_on_torus_direct_with(f, g, torus, &Budget::default())
}

pub fn k_on_torus_direct_with(
    f: &LaurentPoly,
    g: &LaurentPoly,
    torus: &TwistedTorus,
    budget: &Budget,
) -> Result<usize, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::Zero);
    }
    let [r1, r2] = torus_relations(torus);
    let gb = laurent_basis_of(&[f.clone(), g.clone(), r1, r2], &MonomialOrder::lex_xy(), Saturation::Rabinowitsch, budget)?;
    if gb.is_unit() {
        return Ok(0);
    }
    Ok(2 * quotient_dimension(&gb)?)
}

/// `k` by adding the remainders of the torus relations to the anyon basis.
/// Works for arbitrarily large tori but needs a finite anyon quotient.
pub fn k_on_torus_by_remainders(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus) -> Result<usize, AlgebraError> {
    let gb = anyon_basis(f, g, &MonomialOrder::lex_xy())?;
    if gb.is_unit() {
        return Ok(0);
    }
    if !is_zero_dimensional(&gb) {
        return Err(AlgebraError::NotZeroDimensional);
    }
    let one = gb.normal_form(&MultiPoly::one())?;
    let r1 = gb.monomial_normal_form(0, torus.alpha())?.add(&one);
    let r2 = gb.monomial_normal_form(torus.beta(), torus.gamma())?.add(&one);
    let mut gens = gb.gens().to_vec();
    gens.push(r1);
    gens.push(r2);
    let ext = buchberger_with(&gens, gb.order(), &Budget::default())?;
    if ext.is_unit() {
        return Ok(0);
    }
    Ok(2 * quotient_dimension(&ext)?)
}

const DIRECT_LIMIT: u64 = 1 << 12;

/// Logical dimension on a twisted torus, `2·dim R/⟨f, g, y^α - 1, x^β y^γ - 1⟩`.
pub fn k_on_torus(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus) -> Result<usize, AlgebraError> {
    if torus.alpha() <= DIRECT_LIMIT && torus.beta() <= DIRECT_LIMIT {
        k_on_torus_direct(f, g, torus)
    } else {
        k_on_torus_by_remainders(f, g, torus)
    }
}

/// The univariate member of the lex basis eliminating the other variable.
pub fn univariate_generator(f: &LaurentPoly, g: &LaurentPoly, axis: Axis) -> Result<LaurentPoly, AlgebraError> {
    let order = axis.eliminating_order();
    let gb = anyon_basis(f, g, &order)?;
    let other = match axis {
        Axis::X => Var::Y,
        Axis::Y => Var::X,
    };
    let uni = gb
        .gens()
        .iter()
        .find(|p| p.free_of(&order, other))
        .ok_or(AlgebraError::NoUnivariate(axis.var()))?;
    Ok(uni.to_laurent(&order))
}

pub fn factor_univariate(h: &Gf2Poly) -> Result<UnivariateFactorization, AlgebraError> {
    if h.is_zero() {
        return Err(AlgebraError::Zero);
    }
    Ok(UnivariateFactorization { factors: h.factor() })
}

/// Smallest `L` with `h | t^L - 1`.
pub fn minimal_period(h: &Gf2Poly) -> Result<u64, AlgebraError> {
    Ok(h.period()?)
}

/// `(L_x, L_y)`: the smallest untwisted torus carrying the full `k_max`.
pub fn minimal_untwisted_torus(f: &LaurentPoly, g: &LaurentPoly) -> Result<(u64, u64), AlgebraError> {
    let hx = to_gf2(&univariate_generator(f, g, Axis::X)?, Axis::X)?;
    let hy = to_gf2(&univariate_generator(f, g, Axis::Y)?, Axis::Y)?;
    Ok((minimal_period(&hx)?, minimal_period(&hy)?))
}

/// Whether `y^α - 1` and `x^β y^γ - 1` both lie in `⟨f, g⟩`.
pub fn achieves_full_k(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus) -> Result<bool, AlgebraError> {
    let gb = anyon_basis(f, g, &MonomialOrder::lex_xy())?;
    achieves_full_k_in(&gb, torus)
}

pub fn achieves_full_k_in(gb: &GroebnerBasis, torus: &TwistedTorus) -> Result<bool, AlgebraError> {
    let one = gb.normal_form(&MultiPoly::one())?;
    Ok(gb.monomial_normal_form(0, torus.alpha())? == one
        && gb.monomial_normal_form(torus.beta(), torus.gamma())? == one)
}

/// Smallest full-`k` twisted torus: `α = L_y` and the least `β` (a divisor
/// of `L_x`) for which some `γ` gives `x^β y^γ = 1` in the quotient.
pub fn minimal_full_k_torus(f: &LaurentPoly, g: &LaurentPoly) -> Result<TwistedTorus, AlgebraError> {
    let (lx, ly) = minimal_untwisted_torus(f, g)?;
    let gb = anyon_basis(f, g, &MonomialOrder::lex_xy())?;
    let ny = gb.monomial_normal_form(0, 1)?;
    // baby steps y^j, j < m
    let m = (ly as f64).sqrt().ceil() as u64;
    let mut table: HashMap<Vec<Monomial>, u64> = HashMap::new();
    let mut cur = gb.normal_form(&MultiPoly::one())?;
    for j in 0..m {
        table.entry(cur.terms().to_vec()).or_insert(j);
        cur = gb.mul_nf(&cur, &ny)?;
    }
    // y^-m = y^(ly - m mod ly)
    let giant = gb.monomial_normal_form(0, (ly - m % ly) % ly)?;
    for beta in numtheory::divisors(lx) {
        // want y^γ = x^-β = x^(lx - β)
        let mut target = gb.monomial_normal_form(lx - beta, 0)?;
        for s in 0..=(ly / m.max(1)) + 1 {
            if let Some(&j) = table.get(target.terms()) {
                let gamma = (s * m + j) % ly;
                let t = TwistedTorus::new(ly as i64, beta as i64, gamma as i64).map_err(|_| AlgebraError::Zero)?;
                return Ok(t);
            }
            target = gb.mul_nf(&target, &giant)?;
        }
    }
    TwistedTorus::new(ly as i64, lx as i64, 0).map_err(|_| AlgebraError::Zero)
}

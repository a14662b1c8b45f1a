//! Gröbner bases over GF(2) in up to five variables `x, y, xb, yb, t`.
//!
//! Monomials are packed into a `u128`: five 20-bit fields (19 value bits plus
//! a guard bit) with the highest-priority variable in the most significant
//! field, and the total degree in the top 28 bits for graded orders. Under
//! this layout the monomial order is plain integer comparison, products are
//! integer addition and divisibility is a single borrow test on guard bits.
//!
//! Polynomials are sorted ascending with the leading term last. Buchberger's
//! algorithm uses the Gebauer–Möller update and the normal selection strategy.
//!
//! Laurent ideals are handled by clearing denominators with monomial shifts
//! and then saturating by `xy` (auxiliary variable `t` with `t·x·y + 1`,
//! eliminated under lex). Saturation is skipped when the generators already
//! make both `x` and `y` units.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::poly2::{sym_diff, Exponent, LaurentPoly, PolyError};

const FIELD_BITS: u32 = 20;
const VALUE_BITS: u32 = 19;
const NFIELDS: usize = 5;
const DEGREE_SHIFT: u32 = 100;

/// Largest exponent a single variable may carry inside a packed monomial.
pub const MAX_PACKED_EXPONENT: u32 = (1 << VALUE_BITS) - 1;

const fn spread_mask(pattern: u128) -> u128 {
    let mut m = 0u128;
    let mut f = 0;
    while f < NFIELDS {
        m |= pattern << (FIELD_BITS as usize * f);
        f += 1;
    }
    m
}

const GUARDS: u128 = spread_mask(1 << VALUE_BITS);
const VALUES: u128 = spread_mask((1 << VALUE_BITS) - 1);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("exponent overflow in packed monomial")]
    Overflow,
    #[error("monomial orders differ")]
    OrderMismatch,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("variable {0} is not part of the ring")]
    MissingVariable(Var),
    #[error("negative exponent in a polynomial-ring element")]
    NegativeExponent,
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Ring variables. `xb` and `yb` stand for the inverses of `x` and `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Xb,
    Yb,
    T,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X, Var::Y, Var::Xb, Var::Yb, Var::T];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Xb => "xb",
            Var::Yb => "yb",
            Var::T => "t",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector indexed by [`Var`] discriminant.
pub type Exps = [u32; NFIELDS];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    GrLex,
}

/// Lex or graded lex with an explicit variable priority list (highest first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    vars: Vec<Var>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, vars: &[Var]) -> Result<Self, GroebnerError> {
        if vars.is_empty() || vars.len() > NFIELDS {
            return Err(GroebnerError::InvalidOrder("need one to five variables".into()));
        }
        for (k, v) in vars.iter().enumerate() {
            if vars[..k].contains(v) {
                return Err(GroebnerError::InvalidOrder(format!("variable {v} repeated")));
            }
        }
        Ok(MonomialOrder { kind, vars: vars.to_vec() })
    }

    pub fn lex(vars: &[Var]) -> Self {
        Self::new(OrderKind::Lex, vars).expect("valid variable list")
    }

    pub fn grlex(vars: &[Var]) -> Self {
        Self::new(OrderKind::GrLex, vars).expect("valid variable list")
    }

    /// Lex with `x > y`: eliminates `x`, leaving a univariate generator in `y`.
    pub fn lex_xy() -> Self {
        Self::lex(&[Var::X, Var::Y])
    }

    /// Lex with `y > x`: eliminates `y`.
    pub fn lex_yx() -> Self {
        Self::lex(&[Var::Y, Var::X])
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.vars.contains(&v)
    }

    fn graded(&self) -> bool {
        self.kind == OrderKind::GrLex
    }

    fn shift_of(&self, v: Var) -> Option<u32> {
        let p = self.vars.iter().position(|&w| w == v)?;
        Some(FIELD_BITS * (NFIELDS - 1 - p) as u32)
    }

    /// Packs an exponent vector. Variables outside the order must be zero.
    pub fn pack(&self, e: &Exps) -> Result<Monomial, GroebnerError> {
        let mut m = 0u128;
        let mut deg = 0u128;
        for v in Var::ALL {
            let x = e[v.slot()];
            if x == 0 {
                continue;
            }
            if x > MAX_PACKED_EXPONENT {
                return Err(GroebnerError::Overflow);
            }
            let s = self.shift_of(v).ok_or(GroebnerError::MissingVariable(v))?;
            m |= (x as u128) << s;
            deg += x as u128;
        }
        if self.graded() {
            m |= deg << DEGREE_SHIFT;
        }
        Ok(Monomial(m))
    }

    pub fn unpack(&self, m: Monomial) -> Exps {
        let mut e = [0u32; NFIELDS];
        for (p, v) in self.vars.iter().enumerate() {
            let s = FIELD_BITS * (NFIELDS - 1 - p) as u32;
            e[v.slot()] = ((m.0 >> s) as u32) & MAX_PACKED_EXPONENT;
        }
        e
    }

    pub fn exponent(&self, m: Monomial, v: Var) -> u32 {
        match self.shift_of(v) {
            Some(s) => ((m.0 >> s) as u32) & MAX_PACKED_EXPONENT,
            None => 0,
        }
    }

    pub fn var_monomial(&self, v: Var) -> Result<Monomial, GroebnerError> {
        let mut e = [0; NFIELDS];
        e[v.slot()] = 1;
        self.pack(&e)
    }

    fn lcm(&self, a: Monomial, b: Monomial) -> Monomial {
        let d = (a.0 | GUARDS).wrapping_sub(b.0 & VALUES) & GUARDS;
        let sel = d - (d >> VALUE_BITS);
        let v = (a.0 & sel) | (b.0 & VALUES & !sel);
        if self.graded() {
            Monomial(v | (field_sum(v) << DEGREE_SHIFT))
        } else {
            Monomial(v)
        }
    }
}

fn field_sum(v: u128) -> u128 {
    let mut s = 0;
    for f in 0..NFIELDS {
        s += (v >> (FIELD_BITS as usize * f)) & ((1 << VALUE_BITS) - 1);
    }
    s
}

/// Packed monomial; comparison is only meaningful within one [`MonomialOrder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// True when `self` divides `other`.
    pub fn divides(self, other: Monomial) -> bool {
        ((other.0 | GUARDS).wrapping_sub(self.0 & VALUES)) & GUARDS == GUARDS
    }

    pub fn checked_mul(self, other: Monomial) -> Result<Monomial, GroebnerError> {
        let s = self.0 + other.0;
        if s & GUARDS != 0 {
            Err(GroebnerError::Overflow)
        } else {
            Ok(Monomial(s))
        }
    }

    /// `self / other`; the caller guarantees divisibility.
    fn div(self, other: Monomial) -> Monomial {
        Monomial(self.0 - other.0)
    }

    fn coprime(self, other: Monomial, order: &MonomialOrder) -> bool {
        order.lcm(self, other).0 & VALUES == (self.0 + other.0) & VALUES
    }
}

/// Polynomial with non-negative exponents; terms ascending, leading term last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: Vec<Monomial>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        MultiPoly { terms: vec![Monomial::ONE] }
    }

    pub fn monomial(m: Monomial) -> Self {
        MultiPoly { terms: vec![m] }
    }

    /// Builds a polynomial from exponent vectors; repeated terms cancel.
    pub fn from_exps(order: &MonomialOrder, exps: &[Exps]) -> Result<Self, GroebnerError> {
        let mut terms = exps.iter().map(|e| order.pack(e)).collect::<Result<Vec<_>, _>>()?;
        terms.sort_unstable();
        Ok(MultiPoly { terms: cancel_sorted(terms) })
    }

    /// Converts a polynomial in `x, y` with non-negative exponents.
    pub fn from_laurent(p: &LaurentPoly, order: &MonomialOrder) -> Result<Self, GroebnerError> {
        let exps: Vec<Exps> = p
            .iter()
            .map(|e| {
                if e.i < 0 || e.j < 0 {
                    return Err(GroebnerError::NegativeExponent);
                }
                if e.i > MAX_PACKED_EXPONENT as i64 || e.j > MAX_PACKED_EXPONENT as i64 {
                    return Err(GroebnerError::Overflow);
                }
                Ok([e.i as u32, e.j as u32, 0, 0, 0])
            })
            .collect::<Result<_, _>>()?;
        Self::from_exps(order, &exps)
    }

    /// Back to a Laurent polynomial; only valid when just `x, y` occur.
    pub fn to_laurent(&self, order: &MonomialOrder) -> LaurentPoly {
        LaurentPoly::from_exponents(self.terms.iter().map(|&m| {
            let e = order.unpack(m);
            Exponent::new(e[0] as i64, e[1] as i64)
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<Monomial> {
        self.terms.last().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiPoly { terms: sym_diff(&self.terms, &other.terms) }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Result<Self, GroebnerError> {
        let terms = self.terms.iter().map(|&t| t.checked_mul(m)).collect::<Result<_, _>>()?;
        Ok(MultiPoly { terms })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroebnerError> {
        let mut parity: HashMap<Monomial, bool> = HashMap::new();
        for &a in &self.terms {
            for &b in &other.terms {
                let e = parity.entry(a.checked_mul(b)?).or_insert(false);
                *e = !*e;
            }
        }
        let mut terms: Vec<Monomial> = parity.into_iter().filter(|&(_, odd)| odd).map(|(m, _)| m).collect();
        terms.sort_unstable();
        Ok(MultiPoly { terms })
    }

    /// True when no term involves `v`.
    pub fn free_of(&self, order: &MonomialOrder, v: Var) -> bool {
        self.terms.iter().all(|&m| order.exponent(m, v) == 0)
    }

    /// Re-encodes under another order; every occurring variable must exist there.
    pub fn repack(&self, from: &MonomialOrder, to: &MonomialOrder) -> Result<Self, GroebnerError> {
        let exps: Vec<Exps> = self.terms.iter().map(|&m| from.unpack(m)).collect();
        Self::from_exps(to, &exps)
    }

    pub fn render(&self, order: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&m| {
                let e = order.unpack(m);
                let factors: Vec<String> = order
                    .vars()
                    .iter()
                    .filter(|v| e[v.slot()] > 0)
                    .map(|v| match e[v.slot()] {
                        1 => v.name().to_string(),
                        k => format!("{}^{k}", v.name()),
                    })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

fn cancel_sorted(sorted: Vec<Monomial>) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::with_capacity(sorted.len());
    for m in sorted {
        if out.last() == Some(&m) {
            out.pop();
        } else {
            out.push(m);
        }
    }
    out
}

/// Limits that turn runaway computations into errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pair_reductions: u64,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pair_reductions: 1_000_000, max_terms: 100_000 }
    }
}

/// S-polynomial `lcm/LT(p)·p + lcm/LT(q)·q`.
pub fn s_polynomial(p: &MultiPoly, q: &MultiPoly, order: &MonomialOrder) -> Result<MultiPoly, GroebnerError> {
    let (lp, lq) = match (p.leading_term(), q.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GroebnerError::ZeroInput),
    };
    let l = order.lcm(lp, lq);
    Ok(p.mul_monomial(l.div(lp))?.add(&q.mul_monomial(l.div(lq))?))
}

/// Full reduction of `p` by the polynomials `divisors`.
fn reduce_with(
    p: &MultiPoly,
    divisors: &[&MultiPoly],
    max_terms: usize,
) -> Result<MultiPoly, GroebnerError> {
    let lts: Vec<Monomial> = divisors.iter().map(|d| d.leading_term().expect("nonzero divisor")).collect();
    let mut rem = p.terms.clone();
    let mut out: Vec<Monomial> = Vec::new();
    while let Some(&t) = rem.last() {
        match lts.iter().position(|&l| l.divides(t)) {
            Some(k) => {
                let q = t.div(lts[k]);
                let shifted = divisors[k].terms.iter().map(|&s| s.checked_mul(q)).collect::<Result<Vec<_>, _>>()?;
                rem = sym_diff(&rem, &shifted);
                if rem.len() > max_terms {
                    return Err(GroebnerError::Budget(format!("polynomial exceeded {max_terms} terms")));
                }
            }
            None => {
                out.push(t);
                rem.pop();
            }
        }
    }
    out.reverse();
    Ok(MultiPoly { terms: out })
}

/// Normal form of `p` modulo `basis`: no term of the result is divisible by a
/// leading term of `basis`. Zero members of `basis` are ignored.
pub fn normal_form(p: &MultiPoly, basis: &[MultiPoly], _order: &MonomialOrder) -> Result<MultiPoly, GroebnerError> {
    let divs: Vec<&MultiPoly> = basis.iter().filter(|b| !b.is_zero()).collect();
    reduce_with(p, &divs, Budget::default().max_terms)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealKind {
    /// Ideal of the polynomial ring.
    Polynomial,
    /// Saturated by `xy`: represents an ideal of the Laurent ring.
    Laurent,
}

/// Reduced Gröbner basis together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    gens: Vec<MultiPoly>,
    kind: IdealKind,
}

struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Reduced Gröbner basis of `⟨gens⟩` by Buchberger's algorithm.
pub fn buchberger(gens: &[MultiPoly], order: &MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with(gens, order, &Budget::default())
}

pub fn buchberger_with(
    gens: &[MultiPoly],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let gens = buchberger_raw(gens, order, budget)?;
    Ok(GroebnerBasis { order: order.clone(), gens, kind: IdealKind::Polynomial })
}

fn unit_basis() -> Vec<MultiPoly> {
    vec![MultiPoly::one()]
}

fn buchberger_raw(gens: &[MultiPoly], order: &MonomialOrder, budget: &Budget) -> Result<Vec<MultiPoly>, GroebnerError> {
    let mut input: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if input.is_empty() {
        return Err(GroebnerError::ZeroInput);
    }
    input.sort_by_key(|p| (p.leading_term(), p.len()));

    let mut polys: Vec<MultiPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in &input {
        let divs: Vec<&MultiPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce_with(g, &divs, budget.max_terms)?;
        if h.is_zero() {
            continue;
        }
        if h.is_one() {
            return Ok(unit_basis());
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1, order);
    }

    let mut reductions = 0u64;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by_key(|&k| (pairs[k].lcm, pairs[k].i, pairs[k].j))
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        reductions += 1;
        if reductions > budget.max_pair_reductions {
            return Err(GroebnerError::Budget(format!(
                "more than {} pair reductions",
                budget.max_pair_reductions
            )));
        }
        let s = s_polynomial(&polys[pair.i], &polys[pair.j], order)?;
        let divs: Vec<&MultiPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce_with(&s, &divs, budget.max_terms)?;
        if h.is_zero() {
            continue;
        }
        if h.is_one() {
            return Ok(unit_basis());
        }
        polys.push(h);
        update(&polys, &mut active, &mut pairs, polys.len() - 1, order);
    }

    // inter-reduce the minimal basis
    let minimal: Vec<MultiPoly> = active.iter().map(|&k| polys[k].clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let lt = g.leading_term().expect("nonzero");
        let tail = MultiPoly { terms: g.terms[..g.terms.len() - 1].to_vec() };
        let others: Vec<&MultiPoly> = minimal.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, p)| p).collect();
        let mut r = reduce_with(&tail, &others, budget.max_terms)?;
        r.terms.push(lt);
        reduced.push(r);
    }
    reduced.sort_by_key(|p| p.leading_term());
    Ok(reduced)
}

// Gebauer–Möller update after adding polys[h].
fn update(polys: &[MultiPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize, order: &MonomialOrder) {
    let lh = polys[h].leading_term().expect("nonzero");
    let cand: Vec<(usize, Monomial, bool)> = active
        .iter()
        .map(|&g| {
            let lg = polys[g].leading_term().expect("nonzero");
            (g, order.lcm(lh, lg), lh.coprime(lg, order))
        })
        .collect();

    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, &(g, l, coprime)) in cand.iter().enumerate() {
        let dominated = cand[idx + 1..].iter().any(|&(_, l2, _)| l2.divides(l))
            || kept.iter().any(|&(_, l2, _)| l2.divides(l));
        if coprime || !dominated {
            kept.push((g, l, coprime));
        }
    }

    pairs.retain(|p| {
        let li = order.lcm(polys[p.i].leading_term().unwrap(), lh);
        let lj = order.lcm(polys[p.j].leading_term().unwrap(), lh);
        !(lh.divides(p.lcm) && li != p.lcm && lj != p.lcm)
    });
    for (g, l, coprime) in kept {
        if !coprime {
            pairs.push(Pair { lcm: l, i: g, j: h });
        }
    }

    active.retain(|&g| !lh.divides(polys[g].leading_term().unwrap()));
    active.push(h);
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn kind(&self) -> IdealKind {
        self.kind
    }

    pub fn leading_terms(&self) -> Vec<Monomial> {
        self.gens.iter().map(|g| g.leading_term().expect("nonzero")).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly, GroebnerError> {
        let divs: Vec<&MultiPoly> = self.gens.iter().collect();
        reduce_with(p, &divs, Budget::default().max_terms)
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Generators rendered as Laurent polynomials (requires an `x, y` ring).
    pub fn laurent_gens(&self) -> Vec<LaurentPoly> {
        self.gens.iter().map(|g| g.to_laurent(&self.order)).collect()
    }

    /// Normal form of `x^a y^b` by square and multiply, for exponents far
    /// beyond the packing range.
    pub fn monomial_normal_form(&self, a: u64, b: u64) -> Result<MultiPoly, GroebnerError> {
        let nx = self.normal_form(&MultiPoly::monomial(self.order.var_monomial(Var::X)?))?;
        let ny = self.normal_form(&MultiPoly::monomial(self.order.var_monomial(Var::Y)?))?;
        let pa = self.pow_nf(&nx, a)?;
        let pb = self.pow_nf(&ny, b)?;
        self.mul_nf(&pa, &pb)
    }

    /// `NF(p·q)` for normal forms `p`, `q`.
    pub fn mul_nf(&self, p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly, GroebnerError> {
        self.normal_form(&p.mul(q)?)
    }

    pub fn pow_nf(&self, base: &MultiPoly, mut e: u64) -> Result<MultiPoly, GroebnerError> {
        let mut acc = self.normal_form(&MultiPoly::one())?;
        let mut b = self.normal_form(base)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_nf(&acc, &b)?;
            }
            e >>= 1;
            if e > 0 {
                b = self.mul_nf(&b, &b)?;
            }
        }
        Ok(acc)
    }

    /// Normal form of a Laurent polynomial after shifting it to non-negative
    /// exponents; huge exponents go through [`Self::monomial_normal_form`].
    pub fn laurent_normal_form(&self, p: &LaurentPoly) -> Result<MultiPoly, GroebnerError> {
        if p.is_zero() {
            return Ok(MultiPoly::zero());
        }
        let (q, _) = p.shift_to_nonneg()?;
        if q.max_abs_exponent() <= 4096 {
            return self.normal_form(&MultiPoly::from_laurent(&q, &self.order)?);
        }
        let mut acc = MultiPoly::zero();
        for e in q.iter() {
            acc = acc.add(&self.monomial_normal_form(e.i as u64, e.j as u64)?);
        }
        Ok(acc)
    }
}

/// Clears denominators of a nonzero Laurent polynomial.
fn shifted(p: &LaurentPoly, order: &MonomialOrder) -> Result<MultiPoly, GroebnerError> {
    if p.is_zero() {
        return Err(GroebnerError::ZeroInput);
    }
    let (q, _) = p.shift_to_nonneg()?;
    MultiPoly::from_laurent(&q, order)
}

/// How the localization at `xy` is realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saturation {
    /// One auxiliary variable `t` with `t·x·y + 1`.
    Rabinowitsch,
    /// Inverse variables `xb`, `yb` with `x·xb + 1`, `y·yb + 1`.
    InverseVariables,
}

fn check_xy_order(order: &MonomialOrder) -> Result<(), GroebnerError> {
    let mut v = order.vars().to_vec();
    v.sort();
    if v != [Var::X, Var::Y] {
        return Err(GroebnerError::InvalidOrder("Laurent bases need an order on exactly x and y".into()));
    }
    Ok(())
}

// x (resp. y) is a unit modulo the ideal when some generator is 1 + m with m
// a monomial containing x (resp. y).
fn units_present(gens: &[LaurentPoly]) -> bool {
    let mut x_unit = false;
    let mut y_unit = false;
    for p in gens {
        let (q, _) = match p.shift_to_nonneg() {
            Ok(v) => v,
            Err(_) => continue,
        };
        if q.len() == 2 && q.contains(Exponent::ZERO) {
            let m = q.iter().find(|&e| e != Exponent::ZERO).expect("two terms");
            x_unit |= m.i > 0;
            y_unit |= m.j > 0;
        }
    }
    x_unit && y_unit
}

/// Gröbner basis of the Laurent ideal `⟨f, g, extra…⟩` under an order on `x, y`.
pub fn laurent_ideal_basis(
    f: &LaurentPoly,
    g: &LaurentPoly,
    extra: &[LaurentPoly],
    order: &MonomialOrder,
) -> Result<GroebnerBasis, GroebnerError> {
    let mut all = vec![f.clone(), g.clone()];
    all.extend(extra.iter().cloned());
    laurent_basis_of(&all, order, Saturation::Rabinowitsch, &Budget::default())
}

/// Gröbner basis of the Laurent ideal generated by `gens`.
pub fn laurent_basis_of(
    gens: &[LaurentPoly],
    order: &MonomialOrder,
    method: Saturation,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    check_xy_order(order)?;
    let nonzero: Vec<LaurentPoly> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Err(GroebnerError::ZeroInput);
    }
    if nonzero.iter().any(|p| p.len() == 1) {
        return Ok(GroebnerBasis { order: order.clone(), gens: unit_basis(), kind: IdealKind::Laurent });
    }
    if units_present(&nonzero) {
        let polys = nonzero.iter().map(|p| shifted(p, order)).collect::<Result<Vec<_>, _>>()?;
        let gens = buchberger_raw(&polys, order, budget)?;
        return Ok(GroebnerBasis { order: order.clone(), gens, kind: IdealKind::Laurent });
    }

    let (aux_vars, relations): (Vec<Var>, Vec<Exps>) = match method {
        Saturation::Rabinowitsch => (vec![Var::T], vec![[1, 1, 0, 0, 1]]),
        Saturation::InverseVariables => (vec![Var::Xb, Var::Yb], vec![[1, 0, 1, 0, 0], [0, 1, 0, 1, 0]]),
    };
    let mut vars = aux_vars.clone();
    vars.extend_from_slice(order.vars());
    let aux = MonomialOrder::lex(&vars);
    let mut polys = nonzero.iter().map(|p| shifted(p, &aux)).collect::<Result<Vec<_>, _>>()?;
    for r in relations {
        polys.push(MultiPoly::from_exps(&aux, &[r, [0; NFIELDS]])?);
    }
    let full = buchberger_raw(&polys, &aux, budget)?;
    let elim: Vec<MultiPoly> = full
        .iter()
        .filter(|p| aux_vars.iter().all(|&v| p.free_of(&aux, v)))
        .map(|p| p.repack(&aux, order))
        .collect::<Result<_, _>>()?;
    let gens = if order.kind() == OrderKind::Lex {
        let mut e = elim;
        e.sort_by_key(|p| p.leading_term());
        e
    } else {
        buchberger_raw(&elim, order, budget)?
    };
    Ok(GroebnerBasis { order: order.clone(), gens, kind: IdealKind::Laurent })
}

/// Membership of a Laurent polynomial, tested on its shifted form.
pub fn ideal_member(p: &LaurentPoly, gb: &GroebnerBasis) -> Result<bool, GroebnerError> {
    Ok(gb.laurent_normal_form(p)?.is_zero())
}

/// Equality of ideals by comparing reduced bases.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool, GroebnerError> {
    if a.order != b.order {
        return Err(GroebnerError::OrderMismatch);
    }
    Ok(a.gens == b.gens)
}

/// `⟨f⟩ ∩ ⟨g⟩` by eliminating `t` from `⟨t·f, (1+t)·g⟩`, under lex `x > y`.
pub fn intersect_principal(f: &LaurentPoly, g: &LaurentPoly) -> Result<GroebnerBasis, GroebnerError> {
    let aux = MonomialOrder::lex(&[Var::T, Var::X, Var::Y]);
    let target = MonomialOrder::lex_xy();
    let fs = shifted(f, &aux)?;
    let gs = shifted(g, &aux)?;
    let t = MultiPoly::monomial(aux.var_monomial(Var::T)?);
    let one_t = t.add(&MultiPoly::one());
    let gens = [fs.mul(&t)?, gs.mul(&one_t)?];
    let full = buchberger_raw(&gens, &aux, &Budget::default())?;
    let mut elim: Vec<MultiPoly> = full
        .iter()
        .filter(|p| p.free_of(&aux, Var::T))
        .map(|p| p.repack(&aux, &target))
        .collect::<Result<_, _>>()?;
    elim.sort_by_key(|p| p.leading_term());
    Ok(GroebnerBasis { order: target, gens: elim, kind: IdealKind::Laurent })
}

/// Principal Laurent ideal `⟨p⟩` under lex `x > y`.
pub fn principal_basis(p: &LaurentPoly) -> Result<GroebnerBasis, GroebnerError> {
    let order = MonomialOrder::lex_xy();
    let q = shifted(p, &order)?;
    let gens = if q.len() == 1 { unit_basis() } else { vec![q] };
    Ok(GroebnerBasis { order, gens, kind: IdealKind::Laurent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    fn xy(s: &str) -> MultiPoly {
        MultiPoly::from_laurent(&lp(s), &MonomialOrder::lex_xy()).unwrap()
    }

    fn set(gb: &GroebnerBasis) -> Vec<LaurentPoly> {
        let mut v = gb.laurent_gens();
        v.sort_by_key(|p| p.render());
        v
    }

    #[test]
    fn packing_round_trip_and_order() {
        let o = MonomialOrder::grlex(&[Var::X, Var::Y]);
        let a = o.pack(&[2, 1, 0, 0, 0]).unwrap();
        let b = o.pack(&[0, 4, 0, 0, 0]).unwrap();
        assert_eq!(o.unpack(a), [2, 1, 0, 0, 0]);
        assert!(b > a, "graded order puts degree first");
        let l = MonomialOrder::lex_xy();
        assert!(l.pack(&[1, 0, 0, 0, 0]).unwrap() > l.pack(&[0, 9, 0, 0, 0]).unwrap());
        assert_eq!(o.lcm(a, b), o.pack(&[2, 4, 0, 0, 0]).unwrap());
        assert!(a.divides(o.pack(&[3, 1, 0, 0, 0]).unwrap()));
        assert!(!a.divides(b));
        let big = l.pack(&[MAX_PACKED_EXPONENT, 0, 0, 0, 0]).unwrap();
        assert_eq!(big.checked_mul(l.pack(&[1, 0, 0, 0, 0]).unwrap()), Err(GroebnerError::Overflow));
    }

    #[test]
    fn s_polynomial_examples() {
        let o = MonomialOrder::lex_xy();
        assert!(s_polynomial(&xy("x^2"), &xy("x*y"), &o).unwrap().is_zero());
        let p = xy("1 + x + y");
        assert!(s_polynomial(&p, &p, &o).unwrap().is_zero());
        assert_eq!(s_polynomial(&xy("1 + x"), &xy("1 + y"), &o).unwrap(), xy("x + y"));
        assert_eq!(s_polynomial(&MultiPoly::zero(), &p, &o), Err(GroebnerError::ZeroInput));
    }

    #[test]
    fn normal_form_examples() {
        let o = MonomialOrder::lex_xy();
        let b = [xy("1 + x"), xy("1 + y")];
        assert_eq!(normal_form(&xy("x^2"), &b, &o).unwrap(), MultiPoly::one());
        assert!(normal_form(&MultiPoly::zero(), &b, &o).unwrap().is_zero());
        let h = [xy("1 + y + y^3 + y^5 + y^6")];
        assert_eq!(normal_form(&xy("y^6"), &h, &o).unwrap(), xy("1 + y + y^3 + y^5"));
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&[MultiPoly::one()], &MonomialOrder::lex_xy()).unwrap();
        assert!(gb.is_unit());
        let gb = buchberger(&[xy("x"), xy("1 + x")], &MonomialOrder::lex_xy()).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn toric_pair_is_already_a_basis() {
        let gb = laurent_ideal_basis(&lp("1 + x"), &lp("1 + y"), &[], &MonomialOrder::lex_xy()).unwrap();
        assert_eq!(set(&gb), vec![lp("1 + x"), lp("1 + y")]);
    }

    #[test]
    fn gross_code_basis() {
        let gb = laurent_ideal_basis(&lp("1 + x + x^-1*y^3"), &lp("1 + y + x^3*y^-1"), &[], &MonomialOrder::lex_xy())
            .unwrap();
        let want = [
            lp("1 + y + y^3 + y^5 + y^6"),
            lp("1 + x + y + x*y + x*y^2 + y^5"),
            lp("x + x^2 + y^3"),
        ];
        let got = gb.laurent_gens();
        assert_eq!(got.len(), 3);
        for w in &want {
            assert!(got.contains(w), "missing {w}");
        }
    }

    #[test]
    fn saturation_methods_agree() {
        let f = lp("1 + x + x^-1*y^-3");
        let g = lp("1 + y + x^3*y^-1");
        let o = MonomialOrder::lex_xy();
        let a = laurent_basis_of(&[f.clone(), g.clone()], &o, Saturation::Rabinowitsch, &Budget::default()).unwrap();
        let b = laurent_basis_of(&[f, g], &o, Saturation::InverseVariables, &Budget::default()).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
    }

    #[test]
    fn membership_and_equality() {
        let gb = laurent_ideal_basis(&lp("1 + x + x^-1*y^3"), &lp("1 + y + x^3*y^-1"), &[], &MonomialOrder::lex_xy())
            .unwrap();
        assert!(ideal_member(&lp("1 + y^12"), &gb).unwrap());
        assert!(!ideal_member(&lp("1 + y^11"), &gb).unwrap());
        assert!(ideal_member(&LaurentPoly::zero(), &gb).unwrap());
        let a = principal_basis(&lp("1 + x")).unwrap();
        let b = principal_basis(&lp("1 + x^2")).unwrap();
        assert!(!ideal_equal(&a, &b).unwrap());
        let c = principal_basis(&lp("x^-3*y^2 + x^-2*y^2")).unwrap();
        assert!(ideal_equal(&a, &c).unwrap());
        let other = GroebnerBasis { order: MonomialOrder::lex_yx(), ..a.clone() };
        assert_eq!(ideal_equal(&a, &other), Err(GroebnerError::OrderMismatch));
    }

    #[test]
    fn huge_exponent_normal_form_matches_direct() {
        let gb = laurent_ideal_basis(&lp("1 + x + x^-1*y^3"), &lp("1 + y + x^3*y^-1"), &[], &MonomialOrder::lex_xy())
            .unwrap();
        for (a, b) in [(0u64, 13u64), (5, 7), (17, 40)] {
            let direct = gb.normal_form(&xy(&format!("x^{a}*y^{b}"))).unwrap();
            assert_eq!(gb.monomial_normal_form(a, b).unwrap(), direct);
        }
    }

    #[test]
    fn intersections() {
        let a = intersect_principal(&lp("1 + x"), &lp("1 + y")).unwrap();
        assert!(ideal_equal(&a, &principal_basis(&lp("1 + x + y + x*y")).unwrap()).unwrap());
        let b = intersect_principal(&lp("1 + x"), &lp("1 + x")).unwrap();
        assert!(ideal_equal(&b, &principal_basis(&lp("1 + x")).unwrap()).unwrap());
        let c = intersect_principal(&lp("1 + x"), &lp("1 + x + y + x*y")).unwrap();
        assert!(ideal_equal(&c, &principal_basis(&lp("1 + x + y + x*y")).unwrap()).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget { max_pair_reductions: 1, max_terms: 100_000 };
        let o = MonomialOrder::lex_xy();
        let r = buchberger_with(&[xy("x + x^2 + y^3"), xy("y + y^2 + x^3")], &o, &tight);
        assert!(matches!(r, Err(GroebnerError::Budget(_))));
    }
}

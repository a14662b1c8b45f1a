//! Twisted tori: the plane modulo the lattice spanned by `a1 = (0, α)` and
//! `a2 = (β, γ)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::ext_gcd;
use crate::poly2::Exponent;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("torus needs alpha > 0 and beta > 0, got alpha = {alpha}, beta = {beta}")]
    NonPositive { alpha: i64, beta: i64 },
    #[error("torus with {0} cells is too large")]
    TooLarge(u128),
}

/// Largest supported cell count `α·β`.
pub const MAX_CELLS: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwistedTorus {
    alpha: u64,
    beta: u64,
    gamma: u64,
}

impl TwistedTorus {
    /// `γ` may be any integer; it is normalized into `[0, α)`.
    pub fn new(alpha: i64, beta: i64, gamma: i64) -> Result<Self, TorusError> {
        if alpha <= 0 || beta <= 0 {
            return Err(TorusError::NonPositive { alpha, beta });
        }
        let cells = alpha as u128 * beta as u128;
        if cells > MAX_CELLS as u128 {
            return Err(TorusError::TooLarge(cells));
        }
        Ok(TwistedTorus { alpha: alpha as u64, beta: beta as u64, gamma: gamma.rem_euclid(alpha) as u64 })
    }

    /// Untwisted `L_x × L_y` torus.
    pub fn untwisted(lx: i64, ly: i64) -> Result<Self, TorusError> {
        Self::new(ly, lx, 0)
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn beta(&self) -> u64 {
        self.beta
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    pub fn a1(&self) -> Exponent {
        Exponent::new(0, self.alpha as i64)
    }

    pub fn a2(&self) -> Exponent {
        Exponent::new(self.beta as i64, self.gamma as i64)
    }

    pub fn cells(&self) -> usize {
        (self.alpha * self.beta) as usize
    }

    /// Two qubits per cell.
    pub fn n(&self) -> usize {
        2 * self.cells()
    }

    /// Canonical representative with `0 ≤ i < β`, `0 ≤ j < α`.
    pub fn reduce_point(&self, p: Exponent) -> Exponent {
        let (a, b, g) = (self.alpha as i128, self.beta as i128, self.gamma as i128);
        let i = p.i as i128;
        let ir = i.rem_euclid(b);
        let t = (i - ir) / b;
        let j = (p.j as i128 - t * g).rem_euclid(a);
        Exponent::new(ir as i64, j as i64)
    }

    /// Cell index in lexicographic order of the canonical `(i, j)`.
    pub fn cell_index(&self, p: Exponent) -> usize {
        let r = self.reduce_point(p);
        r.i as usize * self.alpha as usize + r.j as usize
    }

    pub fn cell_point(&self, index: usize) -> Exponent {
        let a = self.alpha as usize;
        Exponent::new((index / a) as i64, (index % a) as i64)
    }

    /// True when `p` lies in the lattice, i.e. is identified with the origin.
    pub fn is_period(&self, p: Exponent) -> bool {
        self.reduce_point(p) == Exponent::ZERO
    }

    /// The same lattice after exchanging the two coordinates, in normal form.
    pub fn swapped(&self) -> TwistedTorus {
        // generators (α, 0) and (γ, β) after the swap
        let (a, b, g) = (self.alpha as i64, self.beta as i64, self.gamma as i64);
        let (d, _, t) = ext_gcd(a, g);
        let alpha2 = a * b / d;
        let gamma2 = (t as i128 * b as i128).rem_euclid(alpha2 as i128) as i64;
        TwistedTorus::new(alpha2, d, gamma2).expect("same cell count")
    }
}

impl fmt::Display for TwistedTorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a1=(0,{}) a2=({},{})", self.alpha, self.beta, self.gamma)
    }
}

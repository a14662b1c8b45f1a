//! Parity-check matrices of generalized toric codes on twisted tori.
//!
//! Columns `0..αβ` hold the qubits of sublattice 1 in cell-index order and
//! columns `αβ..2αβ` those of sublattice 2. Row `c` of `H_X` places `f` on
//! sublattice 1 and `g` on sublattice 2, shifted to cell `c`; `H_Z` places
//! `antipode(g)` and `antipode(f)`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::code_algebra::{coprime_fast, AlgebraError};
use crate::poly2::{Exponent, LaurentPoly};
use crate::torus::TwistedTorus;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("f and g violate the topological-order condition")]
    ToViolation,
    #[error("zero polynomial")]
    Zero,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Dense GF(2) vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), len.div_ceil(64));
        BitVec { len, words }
    }

    pub fn from_support(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &k in ones {
            v.flip(k);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, k: usize) -> bool {
        (self.words[k / 64] >> (k % 64)) & 1 == 1
    }

    pub fn set(&mut self, k: usize, bit: bool) {
        if bit {
            self.words[k / 64] |= 1 << (k % 64);
        } else {
            self.words[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn flip(&mut self, k: usize) {
        self.words[k / 64] ^= 1 << (k % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }
}

/// Row-major bit matrix over GF(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Gf2Matrix { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row length");
            m.row_mut(r).copy_from_slice(v.words());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row_vec(&self, r: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row(r).to_vec())
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.bits[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        let w = &mut self.bits[r * self.stride + c / 64];
        if bit {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.bits[r * self.stride + c / 64] ^= 1 << (c % 64);
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, c: usize) -> usize {
        (0..self.rows).filter(|&r| self.get(r, c)).count()
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let s = self.stride;
        let (a, b) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * s);
            (&mut lo[dst * s..(dst + 1) * s], &hi[..s])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..(src + 1) * s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.bits.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// Reduced row echelon form in place; returns pivot columns in row order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&k| self.get(k, c)) else {
                continue;
            };
            self.swap_rows(r, p);
            for k in 0..self.rows {
                if k != r && self.get(k, c) {
                    self.xor_rows(k, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        // forward elimination only
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&k| m.get(k, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for k in r + 1..m.rows {
                if m.get(k, c) {
                    m.xor_rows(k, r);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v.set(p, true);
                }
            }
            out.push(v);
        }
        out
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in BitVec::from_words(self.cols, self.row(r).to_vec()).support() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// `M v` as a vector of length `rows`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let odd = self.row(r).iter().zip(v.words()).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2;
            out.set(r, odd == 1);
        }
        out
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.cols);
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Gf2Matrix { rows: self.rows + other.rows, cols: self.cols, stride: self.stride, bits }
    }

    /// Rows as `0`/`1` characters, one line each.
    pub fn to_dense_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// MacKay alist format with 1-based indices and zero padding.
    pub fn to_alist(&self) -> String {
        let col_sets: Vec<Vec<usize>> = (0..self.cols).map(|c| (0..self.rows).filter(|&r| self.get(r, c)).collect()).collect();
        let row_sets: Vec<Vec<usize>> = (0..self.rows).map(|r| self.row_vec(r).support()).collect();
        let max_c = col_sets.iter().map(Vec::len).max().unwrap_or(0);
        let max_r = row_sets.iter().map(Vec::len).max().unwrap_or(0);
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.cols, self.rows);
        let _ = writeln!(s, "{max_c} {max_r}");
        let join = |v: Vec<String>| v.join(" ");
        let _ = writeln!(s, "{}", join(col_sets.iter().map(|v| v.len().to_string()).collect()));
        let _ = writeln!(s, "{}", join(row_sets.iter().map(|v| v.len().to_string()).collect()));
        for (sets, width) in [(&col_sets, max_c), (&row_sets, max_r)] {
            for v in sets.iter() {
                let mut items: Vec<String> = v.iter().map(|k| (k + 1).to_string()).collect();
                items.resize(width, "0".into());
                let _ = writeln!(s, "{}", join(items));
            }
        }
        s
    }

    /// Parses the output of [`Self::to_alist`].
    pub fn from_alist(text: &str) -> Result<Gf2Matrix, LatticeError> {
        let nums: Vec<usize> = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| LatticeError::Dimension(format!("alist: {e}"))))
            .collect::<Result<_, _>>()?;
        let bad = || LatticeError::Dimension("alist: truncated input".into());
        let (cols, rows) = (*nums.first().ok_or_else(bad)?, *nums.get(1).ok_or_else(bad)?);
        let max_c = *nums.get(2).ok_or_else(bad)?;
        let start = 4 + cols + rows;
        let mut m = Gf2Matrix::zeros(rows, cols);
        for c in 0..cols {
            for k in 0..max_c {
                let r = *nums.get(start + c * max_c + k).ok_or_else(bad)?;
                if r > 0 {
                    if r > rows {
                        return Err(LatticeError::Dimension("alist: row index out of range".into()));
                    }
                    m.set(r - 1, c, true);
                }
            }
        }
        Ok(m)
    }
}

/// `H_X · H_Zᵀ = 0`.
pub fn verify_commutation(hx: &Gf2Matrix, hz: &Gf2Matrix) -> Result<bool, LatticeError> {
    if hx.cols() != hz.cols() {
        return Err(LatticeError::Dimension(format!("{} vs {} columns", hx.cols(), hz.cols())));
    }
    for r in 0..hx.rows() {
        for s in 0..hz.rows() {
            let odd = hx.row(r).iter().zip(hz.row(s)).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2;
            if odd == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn rank_gf2(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// Generalized toric code `(f, g)` on a twisted torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub f: LaurentPoly,
    pub g: LaurentPoly,
    pub torus: TwistedTorus,
}

impl CssCode {
    /// Validates that `f` and `g` are nonzero and coprime.
    pub fn new(f: LaurentPoly, g: LaurentPoly, torus: TwistedTorus) -> Result<Self, LatticeError> {
        if f.is_zero() || g.is_zero() {
            return Err(LatticeError::Zero);
        }
        if !coprime_fast(&f, &g)? {
            return Err(LatticeError::ToViolation);
        }
        Ok(CssCode { f, g, torus })
    }

    /// No coprimality check; the matrices are still well defined.
    pub fn new_unchecked(f: LaurentPoly, g: LaurentPoly, torus: TwistedTorus) -> Self {
        CssCode { f, g, torus }
    }

    pub fn n(&self) -> usize {
        self.torus.n()
    }

    fn place(&self, m: &mut Gf2Matrix, row: usize, cell: Exponent, p: &LaurentPoly, offset: usize) {
        for e in p.iter() {
            let q = Exponent::new(cell.i + e.i, cell.j + e.j);
            m.flip(row, offset + self.torus.cell_index(q));
        }
    }

    /// `(H_X, H_Z)`, each with one row per cell.
    pub fn parity_checks(&self) -> (Gf2Matrix, Gf2Matrix) {
        let cells = self.torus.cells();
        let mut hx = Gf2Matrix::zeros(cells, 2 * cells);
        let mut hz = Gf2Matrix::zeros(cells, 2 * cells);
        let (fb, gb) = (self.f.antipode(), self.g.antipode());
        for c in 0..cells {
            let p = self.torus.cell_point(c);
            self.place(&mut hx, c, p, &self.f, 0);
            self.place(&mut hx, c, p, &self.g, cells);
            self.place(&mut hz, c, p, &gb, 0);
            self.place(&mut hz, c, p, &fb, cells);
        }
        (hx, hz)
    }
}

pub fn build_parity_checks(code: &CssCode) -> (Gf2Matrix, Gf2Matrix) {
    code.parity_checks()
}

/// `n - rank(H_X) - rank(H_Z)`.
pub fn k_from_ranks(code: &CssCode) -> usize {
    let (hx, hz) = code.parity_checks();
    code.n() - hx.rank() - hz.rank()
}

/// Single-qubit Pauli errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    XOnEdge1,
    XOnEdge2,
    ZOnEdge1,
    ZOnEdge2,
}

fn reduced(torus: &TwistedTorus, p: &LaurentPoly, at: Exponent) -> LaurentPoly {
    LaurentPoly::from_exponents(p.iter().map(|e| torus.reduce_point(Exponent::new(e.i + at.i, e.j + at.j))))
}

/// Syndrome pair `(X-check violations, Z-check violations)` of a single
/// Pauli at cell `at`, as polynomials in canonical torus coordinates.
pub fn syndrome_of_pauli(code: &CssCode, which: Pauli, at: Exponent) -> (LaurentPoly, LaurentPoly) {
    let t = &code.torus;
    match which {
        Pauli::XOnEdge1 => (LaurentPoly::zero(), reduced(t, &code.g, at)),
        Pauli::XOnEdge2 => (LaurentPoly::zero(), reduced(t, &code.f, at)),
        Pauli::ZOnEdge1 => (reduced(t, &code.f.antipode(), at), LaurentPoly::zero()),
        Pauli::ZOnEdge2 => (reduced(t, &code.g.antipode(), at), LaurentPoly::zero()),
    }
}

/// Syndrome of an arbitrary X-type error support, as a cell polynomial.
pub fn cells_to_poly(torus: &TwistedTorus, v: &BitVec) -> LaurentPoly {
    LaurentPoly::from_exponents(v.support().into_iter().map(|c| torus.cell_point(c)))
}

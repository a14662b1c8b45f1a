//! CSS code distance.
//!
//! For the X side the code is `C = ker(H_Z)` and the trivial logicals are
//! `S = rowspace(H_X)`; the Z side swaps the roles. A vector `c ∈ C` lies in
//! `S` exactly when it pairs trivially with every logical representative of
//! the other side.
//!
//! Two methods:
//!
//! * random information sets: each trial row-reduces a generator matrix of
//!   `C` with a seeded random pivot order and scans the rows, giving an upper
//!   bound;
//! * Brouwer–Zimmermann enumeration: all combinations of up to `w` rows of
//!   systematic generator matrices over several information sets. A logical
//!   not yet seen has at least `w + 1 - (K - r_j)` ones inside information
//!   set `j`. Because the codes are invariant under lattice translations,
//!   which act transitively on each sublattice, the same holds for every
//!   translate, which gives a second lower bound
//!   `N · Σ b_j / max_s Σ |I_j ∩ s|` over subsets of information sets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{BitVec, CssCode, Gf2Matrix, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("code has no logical qubits")]
    NoLogicalSpace,
    #[error("at least one trial is required")]
    NoTrials,
    #[error("cap must be at least 1")]
    ZeroCap,
    #[error("block length {0} exceeds the supported 1024")]
    TooLong(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    X,
    Z,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceResult {
    pub d: usize,
    pub exact: bool,
    pub side: Side,
    pub witness: BitVec,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistancePolicy {
    ExactBelowCap { cap: usize },
    Probabilistic { trials: u64 },
}

/// Limits for the exact method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    pub cap: usize,
    /// Give up (inexact result) before a level with more combinations.
    pub max_combinations: u128,
    /// Trials of the warm-start upper bound.
    pub warm_trials: u64,
    pub seed: u64,
}

impl ExactOptions {
    pub fn with_cap(cap: usize) -> Self {
        ExactOptions { cap, max_combinations: 20_000_000_000, warm_trials: 200, seed: 0xC0DE }
    }
}

/// Incremental row echelon basis used for span membership.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` if independent; returns whether the rank grew.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let v = self.reduce(v);
        let Some(&p) = v.support().first() else {
            return false;
        };
        for r in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

fn rowspace(m: &Gf2Matrix) -> Echelon {
    let mut e = Echelon::new();
    for r in 0..m.rows() {
        e.insert(&m.row_vec(r));
    }
    e
}

fn coset_reps(kernel_of: &Gf2Matrix, modulo: &Gf2Matrix) -> Vec<BitVec> {
    let mut span = rowspace(modulo);
    kernel_of.nullspace().into_iter().filter(|v| span.insert(v)).collect()
}

/// Coset representatives `(X logicals, Z logicals)`: a basis of
/// `ker(H_Z)/rowspace(H_X)` and of `ker(H_X)/rowspace(H_Z)`.
pub fn logical_cosets(hx: &Gf2Matrix, hz: &Gf2Matrix) -> Result<(Vec<BitVec>, Vec<BitVec>), DistanceError> {
    if hx.cols() != hz.cols() {
        return Err(LatticeError::Dimension(format!("{} vs {} columns", hx.cols(), hz.cols())).into());
    }
    Ok((coset_reps(hz, hx), coset_reps(hx, hz)))
}

/// Data for one side: generators of `C` and the opposite logicals.
struct SideSpace {
    gens: Vec<BitVec>,
    dual: Vec<BitVec>,
}

fn side_spaces(code: &CssCode) -> Result<[SideSpace; 2], DistanceError> {
    let (hx, hz) = code.parity_checks();
    let (lx, lz) = logical_cosets(&hx, &hz)?;
    if lx.is_empty() {
        return Err(DistanceError::NoLogicalSpace);
    }
    Ok([SideSpace { gens: hz.nullspace(), dual: lz }, SideSpace { gens: hx.nullspace(), dual: lx }])
}

/// Checks the witness contract: in `ker(H_other)` and outside `rowspace(H_same)`.
pub fn is_logical_witness(code: &CssCode, side: Side, w: &BitVec) -> bool {
    let (hx, hz) = code.parity_checks();
    let (same, other) = match side {
        Side::Z => (&hz, &hx),
        _ => (&hx, &hz),
    };
    other.mul_vec(w).is_zero() && !rowspace(same).contains(w)
}

type Words<const W: usize> = [u64; W];

fn to_words<const W: usize>(v: &BitVec) -> Words<W> {
    let mut out = [0u64; W];
    out[..v.words().len()].copy_from_slice(v.words());
    out
}

fn from_words<const W: usize>(n: usize, w: &Words<W>) -> BitVec {
    BitVec::from_words(n, w[..n.div_ceil(64)].to_vec())
}

#[inline]
fn weight<const W: usize>(v: &Words<W>) -> u32 {
    v.iter().map(|w| w.count_ones()).sum()
}

#[inline]
fn xor<const W: usize>(a: &Words<W>, b: &Words<W>) -> Words<W> {
    let mut out = *a;
    for k in 0..W {
        out[k] ^= b[k];
    }
    out
}

#[inline]
fn bit<const W: usize>(v: &Words<W>, c: usize) -> bool {
    (v[c / 64] >> (c % 64)) & 1 == 1
}

#[inline]
fn is_logical<const W: usize>(v: &Words<W>, dual: &[Words<W>]) -> bool {
    dual.iter().any(|z| {
        let mut acc = 0u64;
        for k in 0..W {
            acc ^= v[k] & z[k];
        }
        acc.count_ones() % 2 == 1
    })
}

/// Gaussian elimination choosing pivot columns from `order`; returns the number
/// of pivots found and their columns. Rows end up reduced on those columns.
fn eliminate<const W: usize>(rows: &mut [Words<W>], order: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let k = rows.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in order {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(r, p);
        let pr = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                *row = xor(row, &pr);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[derive(Clone, Copy)]
struct Found<const W: usize> {
    weight: u32,
    tag: u64,
    words: Words<W>,
}

fn better<const W: usize>(a: Option<Found<W>>, b: Option<Found<W>>) -> Option<Found<W>> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            if (y.weight, y.tag, y.words) < (x.weight, x.tag, x.words) {
                Some(y)
            } else {
                Some(x)
            }
        }
    }
}

fn ris_side<const W: usize>(space: &SideSpace, n: usize, trials: u64, seed: u64, stream_tag: u64) -> Option<Found<W>> {
    let rows0: Vec<Words<W>> = space.gens.iter().map(to_words).collect();
    let dual: Vec<Words<W>> = space.dual.iter().map(to_words).collect();
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(2 * t + stream_tag);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut rows = rows0.clone();
            eliminate(&mut rows, order);
            let mut best: Option<Found<W>> = None;
            for r in &rows {
                let wt = weight(r);
                if best.is_none_or(|b| wt < b.weight) && is_logical(r, &dual) {
                    best = Some(Found { weight: wt, tag: t, words: *r });
                }
            }
            best
        })
        .reduce(|| None, better)
}

macro_rules! dispatch {
    ($n:expr, $f:ident ( $($arg:expr),* )) => {
        match ($n).div_ceil(64) {
            0 | 1 => $f::<1>($($arg),*),
            2 => $f::<2>($($arg),*),
            3 => $f::<3>($($arg),*),
            4 => $f::<4>($($arg),*),
            5 => $f::<5>($($arg),*),
            6 => $f::<6>($($arg),*),
            7 => $f::<7>($($arg),*),
            8 => $f::<8>($($arg),*),
            9 | 10 => $f::<10>($($arg),*),
            11 | 12 => $f::<12>($($arg),*),
            13..=16 => $f::<16>($($arg),*),
            _ => unreachable!("length checked by caller"),
        }
    };
}

fn check_len(n: usize) -> Result<(), DistanceError> {
    if n > 1024 {
        Err(DistanceError::TooLong(n))
    } else {
        Ok(())
    }
}

struct SideBound {
    weight: usize,
    witness: BitVec,
    tag: u64,
}

fn ris_generic<const W: usize>(space: &SideSpace, n: usize, trials: u64, seed: u64, tag: u64) -> Option<SideBound> {
    ris_side::<W>(space, n, trials, seed, tag)
        .map(|f| SideBound { weight: f.weight as usize, witness: from_words(n, &f.words), tag: f.tag })
}

/// Upper bound from `trials` random information sets per side.
pub fn distance_upper_ris(code: &CssCode, trials: u64, seed: u64) -> Result<DistanceResult, DistanceError> {
    if trials == 0 {
        return Err(DistanceError::NoTrials);
    }
    let n = code.n();
    check_len(n)?;
    let spaces = side_spaces(code)?;
    let x = dispatch!(n, ris_generic(&spaces[0], n, trials, seed, 0)).expect("logical rows exist");
    let z = dispatch!(n, ris_generic(&spaces[1], n, trials, seed, 1)).expect("logical rows exist");
    let (side, best) = pick_side(x, z);
    Ok(DistanceResult { d: best.weight, exact: false, side, witness: best.witness, trials, seed })
}

fn pick_side(x: SideBound, z: SideBound) -> (Side, SideBound) {
    match x.weight.cmp(&z.weight) {
        std::cmp::Ordering::Less => (Side::X, x),
        std::cmp::Ordering::Greater => (Side::Z, z),
        std::cmp::Ordering::Equal => (Side::Both, x),
    }
}

/// Per-side upper bounds, useful for symmetry checks.
pub fn side_distances_ris(code: &CssCode, trials: u64, seed: u64) -> Result<(usize, usize), DistanceError> {
    if trials == 0 {
        return Err(DistanceError::NoTrials);
    }
    let n = code.n();
    check_len(n)?;
    let spaces = side_spaces(code)?;
    let x = dispatch!(n, ris_generic(&spaces[0], n, trials, seed, 0)).expect("logical rows exist");
    let z = dispatch!(n, ris_generic(&spaces[1], n, trials, seed, 1)).expect("logical rows exist");
    Ok((x.weight, z.weight))
}

struct InfoSet<const W: usize> {
    rows: Vec<Words<W>>,
    rank: usize,
    per_sublattice: [usize; 2],
    level: usize,
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn lower_bound<const W: usize>(sets: &[InfoSet<W>], k: usize, cells: usize) -> usize {
    let b: Vec<i64> = sets.iter().map(|s| s.level as i64 + 1 - (k - s.rank) as i64).collect();
    let plain: i64 = b.iter().map(|&x| x.max(0)).sum();
    let mut best = plain.max(1) as usize;
    for mask in 1u32..(1 << sets.len()) {
        let idx: Vec<usize> = (0..sets.len()).filter(|j| mask >> j & 1 == 1).collect();
        let total: i64 = idx.iter().map(|&j| b[j]).sum();
        if total <= 0 {
            continue;
        }
        let denom = (0..2).map(|s| idx.iter().map(|&j| sets[j].per_sublattice[s]).sum::<usize>()).max().unwrap_or(0);
        if denom == 0 {
            continue;
        }
        let num = cells as i64 * total;
        best = best.max(num.div_euclid(denom as i64) as usize + usize::from(num % denom as i64 != 0));
    }
    best
}

// pivots alternate between the two sublattices where possible
fn balanced_info_set<const W: usize>(rows: &mut [Words<W>], cols: &[usize], cells: usize) -> Vec<usize> {
    let k = rows.len();
    let mut queues: [std::collections::VecDeque<usize>; 2] = [
        cols.iter().copied().filter(|&c| c < cells).collect(),
        cols.iter().copied().filter(|&c| c >= cells).collect(),
    ];
    let mut count = [0usize; 2];
    let mut r = 0;
    let mut pivots = Vec::new();
    while r < k && !(queues[0].is_empty() && queues[1].is_empty()) {
        let s = if queues[1].is_empty() || (!queues[0].is_empty() && count[0] <= count[1]) { 0 } else { 1 };
        let c = queues[s].pop_front().expect("nonempty");
        let Some(p) = (r..k).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(r, p);
        let pr = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                *row = xor(row, &pr);
            }
        }
        pivots.push(c);
        count[s] += 1;
        r += 1;
    }
    pivots
}

fn enumerate_level<const W: usize>(rows: &[Words<W>], w: usize, threshold: u32, dual: &[Words<W>]) -> Option<Found<W>> {
    #[allow(clippy::too_many_arguments)]
    fn rec<const W: usize>(
        rows: &[Words<W>],
        start: usize,
        left: usize,
        acc: Words<W>,
        thr: &mut u32,
        dual: &[Words<W>],
        best: &mut Option<Found<W>>,
        tag: u64,
    ) {
        if left == 1 {
            for r in &rows[start..] {
                let v = xor(&acc, r);
                let wt = weight(&v);
                if wt < *thr && is_logical(&v, dual) {
                    *thr = wt;
                    *best = Some(Found { weight: wt, tag, words: v });
                }
            }
            return;
        }
        for i in start..rows.len().saturating_sub(left - 1) {
            rec(rows, i + 1, left - 1, xor(&acc, &rows[i]), thr, dual, best, tag);
        }
    }
    let k = rows.len();
    if w == 0 || w > k {
        return None;
    }
    (0..=k - w)
        .into_par_iter()
        .map(|i0| {
            let mut thr = threshold;
            let mut best = None;
            if w == 1 {
                let wt = weight(&rows[i0]);
                if wt < thr && is_logical(&rows[i0], dual) {
                    best = Some(Found { weight: wt, tag: i0 as u64, words: rows[i0] });
                }
            } else {
                rec(rows, i0 + 1, w - 1, rows[i0], &mut thr, dual, &mut best, i0 as u64);
            }
            best
        })
        .reduce(|| None, better)
}

struct ExactOutcome {
    weight: usize,
    witness: Option<BitVec>,
    exact: bool,
}

fn exact_side_generic<const W: usize>(
    space: &SideSpace,
    n: usize,
    cells: usize,
    incumbent: (usize, Option<BitVec>),
    opts: &ExactOptions,
) -> ExactOutcome {
    let gens: Vec<Words<W>> = space.gens.iter().map(to_words).collect();
    let dual: Vec<Words<W>> = space.dual.iter().map(to_words).collect();
    let k = gens.len();

    let interleaved: Vec<usize> = (0..cells).flat_map(|c| [c, c + cells]).collect();
    let mut used = vec![false; n];
    let mut sets: Vec<InfoSet<W>> = Vec::new();
    while sets.len() < 4 {
        let cols: Vec<usize> = interleaved.iter().copied().filter(|&c| !used[c]).collect();
        if cols.is_empty() {
            break;
        }
        let mut rows = gens.clone();
        let pivots = balanced_info_set(&mut rows, &cols, cells);
        if pivots.is_empty() {
            break;
        }
        let mut per = [0usize; 2];
        for &p in &pivots {
            used[p] = true;
            per[usize::from(p >= cells)] += 1;
        }
        sets.push(InfoSet { rows, rank: pivots.len(), per_sublattice: per, level: 0 });
    }

    let (mut best_w, mut best_v) = incumbent;
    loop {
        let lb = lower_bound(&sets, k, cells);
        if lb >= best_w {
            return ExactOutcome { weight: best_w, witness: best_v, exact: true };
        }
        if lb > opts.cap {
            return ExactOutcome { weight: best_w, witness: best_v, exact: false };
        }
        // advance the information set whose next level raises the bound most cheaply
        let mut choice: Option<(usize, u128, bool)> = None;
        for j in 0..sets.len() {
            if sets[j].level >= k {
                continue;
            }
            sets[j].level += 1;
            let raises = lower_bound(&sets, k, cells) > lb;
            sets[j].level -= 1;
            let cost = binom(k, sets[j].level + 1);
            let better_choice = match choice {
                None => true,
                Some((_, c, r)) => (raises && !r) || (raises == r && cost < c),
            };
            if better_choice {
                choice = Some((j, cost, raises));
            }
        }
        let Some((j, cost, _)) = choice else {
            return ExactOutcome { weight: best_w, witness: best_v, exact: false };
        };
        if cost > opts.max_combinations {
            return ExactOutcome { weight: best_w, witness: best_v, exact: false };
        }
        let level = sets[j].level + 1;
        let thr = best_w.min(u32::MAX as usize) as u32;
        if let Some(f) = enumerate_level(&sets[j].rows, level, thr, &dual) {
            best_w = f.weight as usize;
            best_v = Some(from_words(n, &f.words));
        }
        sets[j].level = level;
    }
}

fn exact_side(
    space: &SideSpace,
    n: usize,
    cells: usize,
    incumbent: (usize, Option<BitVec>),
    opts: &ExactOptions,
) -> ExactOutcome {
    dispatch!(n, exact_side_generic(space, n, cells, incumbent, opts))
}

/// Exact distance by information-set enumeration, warm-started with random
/// information sets. Stops with `exact = false` once the lower bound passes
/// `cap` or the next level exceeds the combination budget.
pub fn distance_exact(code: &CssCode, cap: usize) -> Result<DistanceResult, DistanceError> {
    distance_exact_with(code, &ExactOptions::with_cap(cap))
}

pub fn distance_exact_with(code: &CssCode, opts: &ExactOptions) -> Result<DistanceResult, DistanceError> {
    if opts.cap == 0 {
        return Err(DistanceError::ZeroCap);
    }
    let n = code.n();
    check_len(n)?;
    let cells = code.torus.cells();
    let spaces = side_spaces(code)?;
    let warm = opts.warm_trials.max(1);
    let wx = dispatch!(n, ris_generic(&spaces[0], n, warm, opts.seed, 0)).expect("logical rows exist");
    let wz = dispatch!(n, ris_generic(&spaces[1], n, warm, opts.seed, 1)).expect("logical rows exist");

    let x = exact_side(&spaces[0], n, cells, (wx.weight, Some(wx.witness)), opts);
    // the Z side only has to beat the X side
    let z_start = if wz.weight < x.weight { (wz.weight, Some(wz.witness)) } else { (x.weight, None) };
    let z = exact_side(&spaces[1], n, cells, z_start, opts);

    let (side, d, witness, exact) = match z.witness {
        Some(w) if z.weight < x.weight => (Side::Z, z.weight, w, z.exact),
        _ => (Side::X, x.weight, x.witness.expect("x side keeps a witness"), x.exact && z.exact),
    };
    let _ = wx.tag;
    Ok(DistanceResult { d, exact, side, witness, trials: warm, seed: opts.seed })
}

/// Exact distance of a single side.
pub fn side_distance_exact(code: &CssCode, side: Side, cap: usize) -> Result<(usize, bool), DistanceError> {
    let n = code.n();
    check_len(n)?;
    let spaces = side_spaces(code)?;
    let opts = ExactOptions::with_cap(cap);
    let idx = usize::from(side == Side::Z);
    let warm = dispatch!(n, ris_generic(&spaces[idx], n, opts.warm_trials, opts.seed, idx as u64)).expect("logical rows exist");
    let out = exact_side(&spaces[idx], n, code.torus.cells(), (warm.weight, Some(warm.witness)), &opts);
    Ok((out.weight, out.exact))
}

pub fn css_distance(code: &CssCode, policy: DistancePolicy, seed: u64) -> Result<DistanceResult, DistanceError> {
    match policy {
        DistancePolicy::ExactBelowCap { cap } => {
            distance_exact_with(code, &ExactOptions { seed, ..ExactOptions::with_cap(cap) })
        }
        DistancePolicy::Probabilistic { trials } => distance_upper_ris(code, trials, seed),
    }
}

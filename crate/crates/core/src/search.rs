//! Exhaustive search over weight-6 codes `f = 1 + x + x^a y^b`,
//! `g = 1 + y + x^c y^d` on every twisted torus with `n` qubits.
//!
//! Candidates go through a cheap-first ladder: `k` from a Gröbner basis, the
//! coprimality check, a short random-information-set bound, and finally the
//! configured distance method for candidates whose bound-based merit is close
//! to the best certified merit so far.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::io::Write;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_algebra::{coprime_fast, k_on_torus_direct_with, AlgebraError};
use crate::distance::{css_distance, distance_upper_ris, DistanceError, DistancePolicy};
use crate::groebner::{Budget, GroebnerError};
use crate::lattice::CssCode;
use crate::numtheory::divisors;
use crate::poly2::{Exponent, LaurentPoly};
use crate::torus::TwistedTorus;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("n = {0} is not a positive even integer")]
    InvalidN(usize),
    #[error("bad record: {0}")]
    Record(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

/// How per-`n` optima are ranked before locality and the lexicographic tie-break.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimalityOrder {
    /// `k d² / n`, then `d`, then `k`.
    #[default]
    MeritFirst,
    /// `d`, then `k`.
    DistanceFirst,
}

#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub n_values: Vec<usize>,
    pub policy: DistancePolicy,
    pub seed: u64,
    /// Drop candidates that are images of another candidate under inversion
    /// or the coordinate swap.
    pub dedup: bool,
    /// Skip pairs that share a factor on the infinite plane.
    pub require_to: bool,
    pub order: OptimalityOrder,
    /// Trials of the first, cheap distance bound.
    pub filter_trials: u64,
    /// Escalate candidates whose bound-based merit is at least this fraction
    /// of the best merit found so far.
    pub escalation: Ratio<u64>,
    pub budget: Budget,
}

impl SearchSpace {
    pub fn new(n_values: Vec<usize>, policy: DistancePolicy) -> Self {
        SearchSpace {
            n_values,
            policy,
            seed: 0xC0DE,
            dedup: true,
            require_to: true,
            order: OptimalityOrder::MeritFirst,
            filter_trials: 1000,
            escalation: Ratio::new(9, 10),
            budget: Budget::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "RecordJson", try_from = "RecordJson")]
pub struct CodeRecord {
    pub f: String,
    pub g: String,
    pub torus: TwistedTorus,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub d_exact: bool,
    pub merit: Ratio<u64>,
    pub locality: u64,
}

#[derive(Serialize, Deserialize)]
struct RecordJson {
    n: usize,
    k: usize,
    d: usize,
    d_exact: bool,
    f: String,
    g: String,
    a1: [i64; 2],
    a2: [i64; 2],
    merit: String,
    locality: u64,
}

impl From<CodeRecord> for RecordJson {
    fn from(r: CodeRecord) -> Self {
        RecordJson {
            n: r.n,
            k: r.k,
            d: r.d,
            d_exact: r.d_exact,
            f: r.f,
            g: r.g,
            a1: [0, r.torus.alpha() as i64],
            a2: [r.torus.beta() as i64, r.torus.gamma() as i64],
            merit: format!("{}/{}", r.merit.numer(), r.merit.denom()),
            locality: r.locality,
        }
    }
}

impl TryFrom<RecordJson> for CodeRecord {
    type Error = String;

    fn try_from(j: RecordJson) -> Result<Self, String> {
        if j.a1[0] != 0 {
            return Err(format!("a1 must be (0, alpha), got {:?}", j.a1));
        }
        let torus = TwistedTorus::new(j.a1[1], j.a2[0], j.a2[1]).map_err(|e| e.to_string())?;
        let merit = Ratio::<u64>::from_str(&j.merit).map_err(|e| format!("merit {:?}: {e}", j.merit))?;
        if torus.n() != j.n {
            return Err(format!("n = {} but the torus has {} qubits", j.n, torus.n()));
        }
        if j.n == 0 || merit != merit_of(j.n, j.k, j.d) {
            return Err(format!("merit {} inconsistent with [[{},{},{}]]", j.merit, j.n, j.k, j.d));
        }
        Ok(CodeRecord {
            f: j.f,
            g: j.g,
            torus,
            n: j.n,
            k: j.k,
            d: j.d,
            d_exact: j.d_exact,
            merit,
            locality: j.locality,
        })
    }
}

impl CodeRecord {
    pub fn f_poly(&self) -> Result<LaurentPoly, SearchError> {
        LaurentPoly::parse(&self.f).map_err(|e| SearchError::Record(e.to_string()))
    }

    pub fn g_poly(&self) -> Result<LaurentPoly, SearchError> {
        LaurentPoly::parse(&self.g).map_err(|e| SearchError::Record(e.to_string()))
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json_line(line: &str) -> Result<Self, SearchError> {
        Ok(serde_json::from_str(line)?)
    }
}

pub fn merit_of(n: usize, k: usize, d: usize) -> Ratio<u64> {
    Ratio::new((k * d * d) as u64, n as u64)
}

/// All tori `(α, β, γ)` with `2αβ = n` and `0 ≤ γ < α`.
pub fn enumerate_tori(n: usize) -> Result<Vec<TwistedTorus>, SearchError> {
    if n == 0 || n % 2 == 1 {
        return Err(SearchError::InvalidN(n));
    }
    let cells = (n / 2) as u64;
    let mut out = Vec::new();
    for m in divisors(cells) {
        let l = cells / m;
        for q in 0..m {
            out.push(TwistedTorus::new(m as i64, l as i64, q as i64).expect("divisor tori are valid"));
        }
    }
    out.sort();
    Ok(out)
}

fn nearest_rep_uncached(torus: &TwistedTorus, p: Exponent) -> Exponent {
    let r = torus.reduce_point(p);
    let (a, b, g) = (torus.alpha() as i64, torus.beta() as i64, torus.gamma() as i64);
    let bound = a.max(b);
    let key = |e: Exponent| (e.chebyshev(), e.i.abs() + e.j.abs(), e.i, e.j);
    let mut best = r;
    let v_lo = (-bound - r.i).div_euclid(b);
    let v_hi = (bound - r.i).div_euclid(b);
    for v in v_lo..=v_hi {
        let i = r.i + v * b;
        let j0 = (r.j + v * g).rem_euclid(a);
        for j in [j0, j0 - a] {
            let e = Exponent::new(i, j);
            if key(e) < key(best) {
                best = e;
            }
        }
    }
    best
}

/// Representatives nearest the origin for every cell of one torus.
#[derive(Clone, Debug)]
pub struct Residues {
    torus: TwistedTorus,
    reps: Vec<Exponent>,
}

impl Residues {
    pub fn new(torus: TwistedTorus) -> Self {
        let reps = (0..torus.cells()).map(|c| nearest_rep_uncached(&torus, torus.cell_point(c))).collect();
        Residues { torus, reps }
    }

    pub fn rep(&self, p: Exponent) -> Exponent {
        self.reps[self.torus.cell_index(p)]
    }

    pub fn all(&self) -> &[Exponent] {
        &self.reps
    }
}

/// Chebyshev radius of the support of `f` and `g` after moving each term to
/// its representative nearest the origin.
pub fn locality(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus) -> u64 {
    f.iter().chain(g.iter()).map(|e| nearest_rep_uncached(torus, e).chebyshev() as u64).max().unwrap_or(0)
}

/// One candidate: the exponents of the third terms of `f` and `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate {
    pub torus: TwistedTorus,
    pub fx: Exponent,
    pub gx: Exponent,
}

impl Candidate {
    pub fn f(&self) -> LaurentPoly {
        LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(1, 0), self.fx])
    }

    pub fn g(&self) -> LaurentPoly {
        LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(0, 1), self.gx])
    }

    fn key(&self) -> (TwistedTorus, (i64, i64), (i64, i64)) {
        (self.torus, (self.fx.i, self.fx.j), (self.gx.i, self.gx.j))
    }
}

/// Pairs `(f, g)` on `torus` with three distinct terms each.
pub fn enumerate_codes(torus: &TwistedTorus) -> Vec<Candidate> {
    let res = Residues::new(*torus);
    let cell = |e: Exponent| torus.cell_index(e);
    let (o, x, y) = (cell(Exponent::ZERO), cell(Exponent::new(1, 0)), cell(Exponent::new(0, 1)));
    let reps = res.all();
    let fs: Vec<Exponent> = if o == x { Vec::new() } else { reps.iter().copied().filter(|&e| cell(e) != o && cell(e) != x).collect() };
    let gs: Vec<Exponent> = if o == y { Vec::new() } else { reps.iter().copied().filter(|&e| cell(e) != o && cell(e) != y).collect() };
    let mut out = Vec::with_capacity(fs.len() * gs.len());
    for &fx in &fs {
        for &gx in &gs {
            out.push(Candidate { torus: *torus, fx, gx });
        }
    }
    out
}

/// Images of a candidate under inversion, the coordinate swap, and both.
pub fn symmetric_images(c: &Candidate, residues: &HashMap<TwistedTorus, Residues>) -> Vec<Candidate> {
    let lookup = |t: &TwistedTorus| residues.get(t).cloned().unwrap_or_else(|| Residues::new(*t));
    let invert = |c: &Candidate| {
        let r = lookup(&c.torus);
        Candidate {
            torus: c.torus,
            fx: r.rep(Exponent::new(1 - c.fx.i, -c.fx.j)),
            gx: r.rep(Exponent::new(-c.gx.i, 1 - c.gx.j)),
        }
    };
    let swap = |c: &Candidate| {
        let t = c.torus.swapped();
        let r = lookup(&t);
        Candidate { torus: t, fx: r.rep(Exponent::new(c.gx.j, c.gx.i)), gx: r.rep(Exponent::new(c.fx.j, c.fx.i)) }
    };
    let s = swap(c);
    vec![invert(c), s, invert(&s)]
}

/// Keeps the smallest-key admissible member of each symmetry orbit. Images
/// are the same qubit code under a different Laurent lift, and coprimality
/// depends on the lift, so with `require_to` a failing lift must not shadow a
/// passing one.
fn dedup_candidates(cands: Vec<Candidate>, residues: &HashMap<TwistedTorus, Residues>, require_to: bool) -> Vec<Candidate> {
    let admissible = |c: &Candidate| !require_to || coprime_fast(&c.f(), &c.g()).unwrap_or(true);
    cands
        .into_par_iter()
        .filter(|c| {
            let smaller: Vec<Candidate> =
                symmetric_images(c, residues).into_iter().filter(|img| img.key() < c.key()).collect();
            if smaller.is_empty() {
                return true;
            }
            admissible(c) && !smaller.iter().any(admissible)
        })
        .collect()
}

/// Why a candidate produced no record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skip {
    Degenerate,
    ToViolation,
    ZeroK,
    Budget(String),
    Failed(String),
}

impl From<AlgebraError> for Skip {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Groebner(GroebnerError::Budget(s)) => Skip::Budget(s),
            AlgebraError::ToViolation => Skip::ToViolation,
            other => Skip::Failed(other.to_string()),
        }
    }
}

impl From<DistanceError> for Skip {
    fn from(e: DistanceError) -> Self {
        match e {
            DistanceError::NoLogicalSpace => Skip::ZeroK,
            other => Skip::Failed(other.to_string()),
        }
    }
}

fn is_degenerate(p: &LaurentPoly, torus: &TwistedTorus) -> bool {
    let mut cells: Vec<usize> = p.iter().map(|e| torus.cell_index(e)).collect();
    let len = cells.len();
    cells.sort_unstable();
    cells.dedup();
    cells.len() != len || len < 3
}

fn record(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus, k: usize, d: usize, exact: bool) -> CodeRecord {
    let n = torus.n();
    CodeRecord {
        f: f.render(),
        g: g.render(),
        torus: *torus,
        n,
        k,
        d,
        d_exact: exact,
        merit: merit_of(n, k, d),
        locality: locality(f, g, torus),
    }
}

fn k_stage(f: &LaurentPoly, g: &LaurentPoly, torus: &TwistedTorus, require_to: bool, budget: &Budget) -> Result<usize, Skip> {
    if is_degenerate(f, torus) || is_degenerate(g, torus) {
        return Err(Skip::Degenerate);
    }
    let k = k_on_torus_direct_with(f, g, torus, budget)?;
    if k == 0 {
        return Err(Skip::ZeroK);
    }
    if require_to && !coprime_fast(f, g)? {
        return Err(Skip::ToViolation);
    }
    Ok(k)
}

/// Full evaluation of one code with the given distance policy.
pub fn evaluate(
    f: &LaurentPoly,
    g: &LaurentPoly,
    torus: &TwistedTorus,
    policy: DistancePolicy,
    seed: u64,
) -> Result<CodeRecord, Skip> {
    let k = k_stage(f, g, torus, true, &Budget::default())?;
    let code = CssCode::new_unchecked(f.clone(), g.clone(), *torus);
    let d = css_distance(&code, policy, seed)?;
    Ok(record(f, g, torus, k, d.d, d.exact))
}

fn preference(order: OptimalityOrder, a: &CodeRecord, b: &CodeRecord) -> Ordering {
    let primary = match order {
        OptimalityOrder::MeritFirst => b.merit.cmp(&a.merit).then(b.d.cmp(&a.d)).then(b.k.cmp(&a.k)),
        OptimalityOrder::DistanceFirst => b.d.cmp(&a.d).then(b.k.cmp(&a.k)),
    };
    primary.then(a.locality.cmp(&b.locality)).then_with(|| {
        let ka = (&a.f, &a.g, a.torus);
        let kb = (&b.f, &b.g, b.torus);
        ka.cmp(&kb)
    })
}

/// Records sharing the best `(k, d)` at `n`, most preferred first.
pub fn select_optimal(records: &[CodeRecord], n: usize, order: OptimalityOrder) -> Vec<CodeRecord> {
    let mut pool: Vec<CodeRecord> = records.iter().filter(|r| r.n == n).cloned().collect();
    pool.sort_by(|a, b| preference(order, a, b));
    let Some(best) = pool.first().map(|r| (r.k, r.d)) else {
        return Vec::new();
    };
    pool.retain(|r| (r.k, r.d) == best);
    pool
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NSummary {
    pub n: usize,
    pub candidates: usize,
    pub evaluated: usize,
    pub degenerate: usize,
    pub zero_k: usize,
    pub to_violations: usize,
    pub budget_exhausted: usize,
    pub failures: usize,
    pub records: usize,
    pub optimum: Option<CodeRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchSummary {
    pub per_n: Vec<NSummary>,
}

impl SearchSummary {
    pub fn optima(&self) -> Vec<CodeRecord> {
        self.per_n.iter().filter_map(|s| s.optimum.clone()).collect()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.per_n.iter().any(|s| s.budget_exhausted > 0)
    }
}

struct Screened {
    cand: Candidate,
    k: usize,
    d_bound: usize,
}

fn search_n(space: &SearchSpace, n: usize, sink: &mut dyn Write) -> Result<(NSummary, Vec<CodeRecord>), SearchError> {
    let tori = enumerate_tori(n)?;
    let residues: HashMap<TwistedTorus, Residues> = tori.par_iter().map(|t| (*t, Residues::new(*t))).collect();
    let mut cands: Vec<Candidate> = tori.iter().flat_map(enumerate_codes).collect();
    let mut summary = NSummary { n, candidates: cands.len(), ..Default::default() };
    if space.dedup {
        cands = dedup_candidates(cands, &residues, space.require_to);
    }
    summary.evaluated = cands.len();

    let outcomes: Vec<Result<Screened, Skip>> = cands
        .par_iter()
        .map(|c| {
            let (f, g) = (c.f(), c.g());
            let k = k_stage(&f, &g, &c.torus, space.require_to, &space.budget)?;
            let code = CssCode::new_unchecked(f, g, c.torus);
            let d = distance_upper_ris(&code, space.filter_trials.max(1), space.seed)?;
            Ok(Screened { cand: *c, k, d_bound: d.d })
        })
        .collect();

    let mut screened = Vec::new();
    for o in outcomes {
        match o {
            Ok(s) => screened.push(s),
            Err(Skip::Degenerate) => summary.degenerate += 1,
            Err(Skip::ZeroK) => summary.zero_k += 1,
            Err(Skip::ToViolation) => summary.to_violations += 1,
            Err(Skip::Budget(_)) => summary.budget_exhausted += 1,
            Err(Skip::Failed(_)) => summary.failures += 1,
        }
    }

    // most promising first, so the certified incumbent rises quickly
    let mut order: Vec<usize> = (0..screened.len()).collect();
    order.sort_by(|&a, &b| {
        let (sa, sb) = (&screened[a], &screened[b]);
        merit_of(n, sb.k, sb.d_bound).cmp(&merit_of(n, sa.k, sa.d_bound)).then(a.cmp(&b))
    });
    let mut incumbent = Ratio::from_integer(0u64);
    let mut records: Vec<Option<CodeRecord>> = vec![None; screened.len()];
    for &i in &order {
        let s = &screened[i];
        let (f, g) = (s.cand.f(), s.cand.g());
        let bound_merit = merit_of(n, s.k, s.d_bound);
        if bound_merit < incumbent * space.escalation {
            records[i] = Some(record(&f, &g, &s.cand.torus, s.k, s.d_bound, false));
            continue;
        }
        let code = CssCode::new_unchecked(f.clone(), g.clone(), s.cand.torus);
        match css_distance(&code, space.policy, space.seed) {
            Ok(d) => {
                let d_val = d.d.min(s.d_bound);
                let exact = d.exact && d.d <= s.d_bound;
                let r = record(&f, &g, &s.cand.torus, s.k, d_val, exact);
                if r.d_exact || matches!(space.policy, DistancePolicy::Probabilistic { .. }) {
                    incumbent = incumbent.max(r.merit);
                }
                records[i] = Some(r);
            }
            Err(_) => summary.failures += 1,
        }
    }

    let mut records: Vec<CodeRecord> = records.into_iter().flatten().collect();
    records.sort_by(|a, b| (a.torus, &a.f, &a.g).cmp(&(b.torus, &b.f, &b.g)));
    for r in &records {
        writeln!(sink, "{}", r.to_json_line())?;
    }
    summary.records = records.len();
    summary.optimum = select_optimal(&records, n, space.order).into_iter().next();
    Ok((summary, records))
}

/// Runs the search, streaming JSON lines to `sink` one `n` at a time.
pub fn run_search(space: &SearchSpace, workers: usize, sink: &mut (dyn Write + Send)) -> Result<SearchSummary, SearchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    pool.install(|| {
        let mut summary = SearchSummary::default();
        let mut ns = space.n_values.clone();
        ns.sort_unstable();
        ns.dedup();
        for n in ns {
            let (s, _) = search_n(space, n, sink)?;
            sink.flush()?;
            summary.per_n.push(s);
        }
        Ok(summary)
    })
}

/// Per-`n` optima as CSV in the column order `[[n,k,d]], f, g, a1, a2, kd^2/n`.
pub fn write_optima_csv<W: Write>(records: &[CodeRecord], out: W) -> Result<(), SearchError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["[[n,k,d]]", "f(x,y)", "g(x,y)", "a1", "a2", "kd^2/n"])?;
    for r in records {
        w.write_record([
            format!("[[{},{},{}]]", r.n, r.k, r.d),
            r.f.clone(),
            r.g.clone(),
            format!("(0,{})", r.torus.alpha()),
            format!("({},{})", r.torus.beta(), r.torus.gamma()),
            format!("{:.2}", *r.merit.numer() as f64 / *r.merit.denom() as f64),
        ])?;
    }
    w.flush()?;
    Ok(())
}

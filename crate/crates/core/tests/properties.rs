//! Randomized invariants, 1000 cases each.

use std::collections::HashMap;
use std::sync::OnceLock;

use proptest::prelude::*;

use gtcode::code_algebra::{
    achieves_full_k, anyon_basis, check_to_condition, factor_univariate, k_max, k_on_torus, minimal_period,
    standard_monomials,
};
use gtcode::distance::{
    distance_exact, distance_upper_ris, is_logical_witness, side_distance_exact, DistancePolicy, Echelon, Side,
};
use gtcode::gb1d::{gcd_univariate, k_1d, reduce_to_1d};
use gtcode::gf2x::Gf2Poly;
use gtcode::groebner::{
    ideal_equal, ideal_member, intersect_principal, laurent_ideal_basis, principal_basis, s_polynomial, MonomialOrder,
    MultiPoly,
};
use gtcode::lattice::{k_from_ranks, verify_commutation, BitVec, CssCode, Gf2Matrix};
use gtcode::poly2::{Exponent, LaurentPoly};
use gtcode::search::{
    enumerate_codes, enumerate_tori, evaluate, merit_of, run_search, symmetric_images, Candidate, CodeRecord, SearchSpace,
};
use gtcode::torus::TwistedTorus;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 1000, max_global_rejects: 100_000, ..ProptestConfig::default() }
}

fn poly(range: i64, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-range..=range, -range..=range), 0..=max_terms)
        .prop_map(|v| LaurentPoly::from_exponents(v.into_iter().map(|(i, j)| Exponent::new(i, j))))
}

#[allow(dead_code)]
fn nonzero_poly(range: i64, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    poly(range, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn nonneg_poly(max_exp: i64, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0..=max_exp, 0..=max_exp), 1..=max_terms)
        .prop_map(|v| LaurentPoly::from_exponents(v.into_iter().map(|(i, j)| Exponent::new(i, j))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn torus(max_side: i64) -> impl Strategy<Value = TwistedTorus> {
    (1..=max_side, 1..=max_side, 0..max_side).prop_map(|(a, b, c)| TwistedTorus::new(a, b, c % a).unwrap())
}

/// `1 + x + x^a y^b` and `1 + y + x^c y^d` with small exponents.
fn weight6_pair() -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3).prop_map(|(a, b, c, d)| {
        (
            LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(1, 0), Exponent::new(a, b)]),
            LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(0, 1), Exponent::new(c, d)]),
        )
    })
}

fn coprime_pair() -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    weight6_pair().prop_filter("coprime", |(f, g)| {
        f.len() == 3 && g.len() == 3 && check_to_condition(f, g).unwrap_or(false)
    })
}

fn gf2_poly(max_deg: usize) -> impl Strategy<Value = Gf2Poly> {
    prop::collection::vec(any::<bool>(), 1..=max_deg + 1)
        .prop_map(|bits| Gf2Poly::from_exponents(bits.iter().enumerate().filter(|(_, b)| **b).map(|(k, _)| k)))
}

/// All weight-6 candidates on tori with `n ≤ 50` that encode at least one qubit.
fn small_codes() -> &'static [Candidate] {
    static POOL: OnceLock<Vec<Candidate>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for n in (4..=50).step_by(2) {
            for t in enumerate_tori(n).unwrap() {
                for c in enumerate_codes(&t) {
                    if k_on_torus(&c.f(), &c.g(), &t).map(|k| k > 0).unwrap_or(false) {
                        out.push(c);
                    }
                }
            }
        }
        assert!(out.len() > 1000);
        out
    })
}

fn small_code() -> impl Strategy<Value = CssCode> {
    (0..small_codes().len()).prop_map(|i| {
        let c = small_codes()[i];
        CssCode::new_unchecked(c.f(), c.g(), c.torus)
    })
}

fn is_logical(stabilizers: &Echelon, checks: &Gf2Matrix, v: &BitVec) -> bool {
    checks.mul_vec(v).is_zero() && !stabilizers.contains(v)
}

/// Smallest weight of a vector in `ker(checks)` outside `rowspace(stab)`, by
/// enumerating supports in increasing weight up to `limit`.
fn naive_side_distance(checks: &Gf2Matrix, stab: &Gf2Matrix, limit: usize) -> Option<usize> {
    let n = checks.cols();
    assert!(checks.rows() <= 64);
    let cols: Vec<u64> = (0..n)
        .map(|c| (0..checks.rows()).fold(0u64, |acc, r| acc | (u64::from(checks.get(r, c)) << r)))
        .collect();
    let mut ech = Echelon::new();
    for r in 0..stab.rows() {
        ech.insert(&stab.row_vec(r));
    }
    fn rec(cols: &[u64], start: usize, left: usize, syn: u64, chosen: &mut Vec<usize>, found: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if left == 0 {
            return syn == 0 && found(chosen);
        }
        for c in start..=cols.len() - left {
            chosen.push(c);
            if rec(cols, c + 1, left - 1, syn ^ cols[c], chosen, found) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    for w in 1..=limit.min(n) {
        let mut hit = |s: &[usize]| is_logical(&ech, checks, &BitVec::from_support(n, s));
        if rec(&cols, 0, w, 0, &mut Vec::new(), &mut hit) {
            return Some(w);
        }
    }
    None
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn ring_axioms(p in poly(6, 6), q in poly(6, 6), r in poly(6, 6)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p + &p).is_zero());
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
    }

    #[test]
    fn antipode_is_homomorphism(p in poly(8, 6), q in poly(8, 6)) {
        prop_assert_eq!((&p * &q).antipode(), &p.antipode() * &q.antipode());
        prop_assert_eq!(p.antipode().antipode(), p);
    }

    #[test]
    fn parse_render_round_trip(p in poly(50, 8)) {
        let text = p.render();
        let back = LaurentPoly::parse(&text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn product_exponent_bound(p in poly(20, 6), q in poly(20, 6)) {
        let pq = &p * &q;
        if !pq.is_zero() {
            prop_assert!(pq.max_abs_exponent() <= p.max_abs_exponent() + q.max_abs_exponent());
        }
    }

    #[test]
    fn s_polynomials_reduce_to_zero(f in nonneg_poly(6, 4), g in nonneg_poly(6, 4), lex_xy in any::<bool>()) {
        let order = if lex_xy { MonomialOrder::lex_xy() } else { MonomialOrder::lex_yx() };
        let gb = laurent_ideal_basis(&f, &g, &[], &order).unwrap();
        let gens = gb.gens();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let s = s_polynomial(&gens[i], &gens[j], &order).unwrap();
                prop_assert!(gb.normal_form(&s).unwrap().is_zero());
            }
        }
        prop_assert!(ideal_member(&f, &gb).unwrap());
        prop_assert!(ideal_member(&g, &gb).unwrap());
    }

    #[test]
    fn normal_form_idempotent_and_member(
        f in nonneg_poly(5, 4), g in nonneg_poly(5, 4), p in nonneg_poly(8, 8)
    ) {
        let order = MonomialOrder::lex_xy();
        let gb = laurent_ideal_basis(&f, &g, &[], &order).unwrap();
        let mp = MultiPoly::from_laurent(&p, &order).unwrap();
        let nf = gb.normal_form(&mp).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(gb.contains(&mp.add(&nf)).unwrap());
    }

    #[test]
    fn laurent_basis_ignores_monomial_shifts(f in nonneg_poly(5, 4), g in nonneg_poly(5, 4), a in -5i64..=5, b in -5i64..=5) {
        let order = MonomialOrder::lex_xy();
        let base = laurent_ideal_basis(&f, &g, &[], &order).unwrap();
        let shifted = laurent_ideal_basis(&f.shift(Exponent::new(a, b)).unwrap(), &g, &[], &order).unwrap();
        prop_assert!(ideal_equal(&base, &shifted).unwrap());
    }

    #[test]
    fn intersection_of_coprime_principal_ideals((f, g) in coprime_pair()) {
        let meet = intersect_principal(&f, &g).unwrap();
        let fg = &f * &g;
        prop_assert!(ideal_member(&fg, &meet).unwrap());
        let prod = principal_basis(&fg).unwrap();
        for p in meet.laurent_gens() {
            prop_assert!(ideal_member(&p, &prod).unwrap());
        }
    }

    #[test]
    fn k_bounded_by_k_max((f, g) in coprime_pair(), t in torus(8)) {
        let k = k_on_torus(&f, &g, &t).unwrap();
        let km = k_max(&f, &g).unwrap();
        prop_assert!(k <= km);
        prop_assert_eq!(k == km, achieves_full_k(&f, &g, &t).unwrap());
    }

    #[test]
    fn k_invariant_under_antipode((f, g) in weight6_pair(), t in torus(8)) {
        prop_assert_eq!(
            k_on_torus(&f, &g, &t).unwrap(),
            k_on_torus(&f.antipode(), &g.antipode(), &t).unwrap()
        );
    }

    #[test]
    fn minimal_period_is_minimal(h in gf2_poly(12).prop_filter("unit constant", |h| h.coeff(0) && h.degree().unwrap_or(0) > 0)) {
        let l = minimal_period(&h).unwrap();
        prop_assert!(h.divides(&Gf2Poly::binomial(l as usize)));
        for d in gtcode::numtheory::divisors(l) {
            if d < l {
                prop_assert!(!h.divides(&Gf2Poly::binomial(d as usize)));
            }
        }
    }

    #[test]
    fn quotient_dimension_is_order_independent((f, g) in coprime_pair()) {
        let a = standard_monomials(&anyon_basis(&f, &g, &MonomialOrder::lex_xy()).unwrap()).unwrap().count;
        let b = standard_monomials(&anyon_basis(&f, &g, &MonomialOrder::lex_yx()).unwrap()).unwrap().count;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn factorization_reassembles(h in gf2_poly(40).prop_filter("nonconstant", |h| h.degree().unwrap_or(0) > 0)) {
        let fac = factor_univariate(&h).unwrap();
        prop_assert_eq!(fac.product(), h);
        for (p, _) in &fac.factors {
            prop_assert!(p.is_irreducible());
        }
    }

    #[test]
    fn rank_and_groebner_agree((f, g) in weight6_pair(), t in torus(7)) {
        let code = CssCode::new_unchecked(f.clone(), g.clone(), t);
        let (hx, hz) = code.parity_checks();
        prop_assert_eq!(hx.rank(), hz.rank());
        prop_assert_eq!(k_from_ranks(&code), k_on_torus(&f, &g, &t).unwrap());
    }

    #[test]
    fn checks_commute((f, g) in coprime_pair(), t in torus(9)) {
        let code = CssCode::new(f.clone(), g.clone(), t).unwrap();
        let (hx, hz) = code.parity_checks();
        prop_assert!(verify_commutation(&hx, &hz).unwrap());
        let distinct = |p: &LaurentPoly| {
            let mut cells: Vec<usize> = p.iter().map(|e| t.cell_index(e)).collect();
            cells.sort_unstable();
            cells.dedup();
            cells.len() == p.len()
        };
        if distinct(&f) && distinct(&g) {
            for r in 0..hx.rows() {
                prop_assert_eq!(hx.row_weight(r), f.len() + g.len());
                prop_assert_eq!(hz.row_weight(r), f.len() + g.len());
            }
        }
    }

    #[test]
    fn reduce_point_is_constant_on_cosets(t in torus(30), i in -1000i64..1000, j in -1000i64..1000, s in -50i64..50, u in -50i64..50) {
        let p = Exponent::new(i, j);
        let r = t.reduce_point(p);
        prop_assert_eq!(t.reduce_point(r), r);
        let (a1, a2) = (t.a1(), t.a2());
        let q = Exponent::new(i + s * a1.i + u * a2.i, j + s * a1.j + u * a2.j);
        prop_assert_eq!(t.reduce_point(q), r);
        prop_assert_eq!(t.cell_point(t.cell_index(p)), r);
    }

    #[test]
    fn gcd_divisibility(p in gf2_poly(30), q in gf2_poly(30), c in gf2_poly(6)) {
        prop_assume!(!(p.is_zero() && q.is_zero()));
        let d = gcd_univariate(&p, &q).unwrap();
        prop_assert!(d.divides(&p) && d.divides(&q));
        if !c.is_zero() {
            let (pc, qc) = (p.mul(&c), q.mul(&c));
            let dc = gcd_univariate(&pc, &qc).unwrap();
            prop_assert!(c.divides(&dc));
            prop_assert!(dc.divides(&pc) && dc.divides(&qc));
        }
    }

    #[test]
    fn ris_is_deterministic_and_monotone(code in small_code(), seed in any::<u64>(), t1 in 1u64..40, extra in 0u64..40) {
        let a = distance_upper_ris(&code, t1, seed).unwrap();
        let b = distance_upper_ris(&code, t1, seed).unwrap();
        prop_assert_eq!(&a, &b);
        let c = distance_upper_ris(&code, t1 + extra, seed).unwrap();
        prop_assert!(c.d <= a.d);
    }

    #[test]
    fn witnesses_are_logical(code in small_code(), seed in any::<u64>()) {
        let r = distance_upper_ris(&code, 20, seed).unwrap();
        prop_assert_eq!(r.witness.weight(), r.d);
        prop_assert!(is_logical_witness(&code, r.side, &r.witness));
        let e = distance_exact(&code, 64).unwrap();
        prop_assert_eq!(e.witness.weight(), e.d);
        prop_assert!(is_logical_witness(&code, e.side, &e.witness));
    }

    #[test]
    fn exact_matches_naive_enumeration(code in small_code()) {
        let e = distance_exact(&code, 64).unwrap();
        prop_assert!(e.exact);
        let (hx, hz) = code.parity_checks();
        let dx = naive_side_distance(&hz, &hx, e.d).unwrap_or(usize::MAX);
        let dz = naive_side_distance(&hx, &hz, e.d).unwrap_or(usize::MAX);
        prop_assert_eq!(dx.min(dz), e.d);
    }

    #[test]
    fn exact_below_randomized(code in small_code(), seed in any::<u64>()) {
        let e = distance_exact(&code, 64).unwrap();
        let r = distance_upper_ris(&code, 10, seed).unwrap();
        prop_assert!(e.d <= r.d);
    }

    #[test]
    fn symmetric_pairs_have_equal_side_distances(a in -2i64..=2, b in -2i64..=2, l in 3i64..=6) {
        let f = LaurentPoly::from_exponents([Exponent::ZERO, Exponent::new(1, 0), Exponent::new(a, b)]);
        let g = f.swap_xy();
        let t = TwistedTorus::new(l, l, 0).unwrap();
        prop_assume!(f.len() == 3 && k_on_torus(&f, &g, &t).unwrap() > 0);
        let code = CssCode::new_unchecked(f, g, t);
        let (dx, ex) = side_distance_exact(&code, Side::X, 64).unwrap();
        let (dz, ez) = side_distance_exact(&code, Side::Z, 64).unwrap();
        prop_assert!(ex && ez);
        prop_assert_eq!(dx, dz);
    }

    #[test]
    fn width_one_reduction_keeps_k((f, g) in weight6_pair(), alpha in 1i64..=60, gamma in 0i64..60) {
        let t = TwistedTorus::new(alpha, 1, gamma % alpha).unwrap();
        if let Ok(code) = reduce_to_1d(&f, &g, &t) {
            prop_assert_eq!(k_1d(&code), k_on_torus(&f, &g, &t).unwrap());
        }
    }

    #[test]
    fn symmetric_images_share_parameters(i in 0usize..1_000_000) {
        let pool = small_codes();
        let c = pool[i % pool.len()];
        let params = |c: &Candidate| {
            let k = k_on_torus(&c.f(), &c.g(), &c.torus).unwrap();
            let d = distance_exact(&CssCode::new_unchecked(c.f(), c.g(), c.torus), 64).unwrap();
            (c.torus.n(), k, d.d)
        };
        let base = params(&c);
        for img in symmetric_images(&c, &HashMap::new()) {
            prop_assert_eq!(params(&img), base);
        }
    }

    #[test]
    fn record_round_trip_and_merit(i in 0usize..1_000_000) {
        let pool = small_codes();
        let c = pool[i % pool.len()];
        let policy = DistancePolicy::ExactBelowCap { cap: 64 };
        if let Ok(r) = evaluate(&c.f(), &c.g(), &c.torus, policy, 3) {
            let back = CodeRecord::from_json_line(&r.to_json_line()).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(back.merit, merit_of(r.n, r.k, r.d));
            prop_assert_eq!(*back.merit.numer() * r.n as u64, (r.k * r.d * r.d) as u64 * *back.merit.denom());
            let k = k_on_torus(&back.f_poly().unwrap(), &back.g_poly().unwrap(), &back.torus).unwrap();
            prop_assert_eq!(k, r.k);
        }
    }
}

#[test]
fn dedup_keeps_every_optimum() {
    for n in (12..=36).step_by(2) {
        let policy = DistancePolicy::ExactBelowCap { cap: 64 };
        let mut full = SearchSpace::new(vec![n], policy);
        full.dedup = false;
        let reduced = SearchSpace::new(vec![n], policy);
        let a = run_search(&full, 1, &mut std::io::sink()).unwrap();
        let b = run_search(&reduced, 1, &mut std::io::sink()).unwrap();
        let key = |s: &gtcode::search::SearchSummary| s.per_n[0].optimum.as_ref().map(|r| (r.k, r.d));
        assert_eq!(key(&a), key(&b), "n={n}");
    }
}

#[test]
fn search_is_independent_of_workers() {
    let space = SearchSpace::new(vec![18, 24, 28], DistancePolicy::ExactBelowCap { cap: 64 });
    let (mut one, mut two) = (Vec::new(), Vec::new());
    run_search(&space, 1, &mut one).unwrap();
    run_search(&space, 2, &mut two).unwrap();
    assert!(!one.is_empty());
    assert_eq!(one, two);
}

//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, TestRunner};

use gtcode::catalog::{small_toric_rows, CYCLE_ROWS, TORIC_ROWS};
use gtcode::code_algebra::{
    anyon_basis, k_on_torus, minimal_period, standard_monomials, to_gf2, univariate_generator, Axis,
};
use gtcode::distance::{distance_exact, distance_upper_ris, is_logical_witness, DistancePolicy};
use gtcode::gb1d::{gcd_univariate, k_1d, reduce_to_1d, GbCode1D};
use gtcode::gf2x::Gf2Poly;
use gtcode::groebner::{laurent_ideal_basis, normal_form, s_polynomial, MonomialOrder, MultiPoly};
use gtcode::lattice::{k_from_ranks, verify_commutation, CssCode};
use gtcode::numtheory::factorize;
use gtcode::poly2::{Exponent, LaurentPoly};
use gtcode::search::{run_search, SearchSpace};
use gtcode::torus::TwistedTorus;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lp(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s).unwrap()
}

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    check(t.elapsed() < limit, format!("{what} took {:?}, limit {limit:?}", t.elapsed()))
}

fn gen_set(ps: &[&str]) -> BTreeSet<String> {
    ps.iter().map(|s| lp(s).render()).collect()
}

fn c1_groebner_bases() -> Outcome {
    let order = MonomialOrder::lex_xy();

    // (-1,-3,3,-1): the printed basis is reduced and must come out verbatim.
    let t = Instant::now();
    let gb = laurent_ideal_basis(&lp("1+x+x^-1*y^-3"), &lp("1+y+x^3*y^-1"), &[], &order).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> = gb.laurent_gens().iter().map(|p| p.render()).collect();
    let want = gen_set(&["1+y+y^3+y^4+y^6+y^10+y^11", "x+y+x*y+y^2+x*y^2+y^5+y^10", "x+x^2+y^4+y^5+y^7+y^10"]);
    check(got == want, format!("(3,-3) basis {got:?}"))?;
    within(t, Duration::from_secs(1), "(3,-3) basis")?;

    // (-1,3,3,-1): the printed i is not reduced modulo h, so the comparison
    // is with the inter-reduced printed set, plus checks that the printed set
    // is itself a Gröbner basis of the same ideal.
    let t = Instant::now();
    let gb = laurent_ideal_basis(&lp("1+x+x^-1*y^3"), &lp("1+y+x^3*y^-1"), &[], &order).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(1), "(3,3) basis")?;
    let printed: Vec<MultiPoly> = ["1+y+y^3+y^5+y^6", "x+x*y+x*y^2+y^3+y^6", "x+x^2+y^3"]
        .iter()
        .map(|s| MultiPoly::from_laurent(&lp(s), &order).unwrap())
        .collect();
    let got: BTreeSet<String> = gb.laurent_gens().iter().map(|p| p.render()).collect();
    let mut reduced = BTreeSet::new();
    for (k, p) in printed.iter().enumerate() {
        let others: Vec<MultiPoly> = printed.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, q)| q.clone()).collect();
        reduced.insert(normal_form(p, &others, &order).unwrap().to_laurent(&order).render());
    }
    check(got == reduced, format!("(3,3) basis {got:?} vs inter-reduced printed set {reduced:?}"))?;
    for h in ["1+y+y^3+y^5+y^6", "x+x^2+y^3"] {
        check(got.contains(&lp(h).render()), format!("{h} missing from (3,3) basis"))?;
    }
    for i in 0..printed.len() {
        for j in i + 1..printed.len() {
            let s = s_polynomial(&printed[i], &printed[j], &order).unwrap();
            check(normal_form(&s, &printed, &order).unwrap().is_zero(), "printed (3,3) set is not a Gröbner basis")?;
        }
        check(gb.contains(&printed[i]).unwrap(), "printed generator outside the ideal")?;
    }
    for g in gb.gens() {
        check(normal_form(g, &printed, &order).unwrap().is_zero(), "computed generator outside the printed ideal")?;
    }
    Ok("(3,-3) basis verbatim; (3,3) basis equals the printed set after inter-reduction of i".into())
}

fn c2_quotient_dimensions() -> Outcome {
    let t = Instant::now();
    let cases = [
        ("1+x", "1+y", 1),
        ("1+x+x*y", "1+y+x*y", 2),
        ("1+x+x^-1*y^3", "1+y+x^3*y^-1", 8),
        ("1+x+x^-1*y^-3", "1+y+x^3*y^-1", 13),
        ("1+x+x^-1*y^-4", "1+y+x^4*y^-1", 20),
    ];
    let mut counts = Vec::new();
    for (f, g, want) in cases {
        let gb = anyon_basis(&lp(f), &lp(g), &MonomialOrder::lex_xy()).map_err(|e| e.to_string())?;
        let n = standard_monomials(&gb).map_err(|e| e.to_string())?.count;
        check(n == want, format!("{f}, {g}: {n} != {want}"))?;
        counts.push(n);
    }
    within(t, Duration::from_secs(1), "quotient dimensions")?;
    // independent oracle: ranks on tori where the whole quotient survives
    for (f, g, lx, ly, count) in [("1+x", "1+y", 5, 5, 1), ("1+x+x*y", "1+y+x*y", 3, 3, 2), ("1+x+x^-1*y^3", "1+y+x^3*y^-1", 12, 12, 8)] {
        let code = CssCode::new_unchecked(lp(f), lp(g), TwistedTorus::untwisted(lx, ly).unwrap());
        let k = k_from_ranks(&code);
        check(k == 2 * count, format!("rank oracle for {f}, {g}: k = {k}"))?;
    }
    Ok(format!("counts {counts:?}; rank oracle agrees on full-k tori"))
}

/// `L` is the order of `t` modulo `h`: `t^L = 1` and `t^(L/p) != 1` for each prime `p | L`.
fn order_oracle(h: &Gf2Poly, l: u64) -> bool {
    let one = Gf2Poly::one();
    Gf2Poly::t_pow_mod(l, h) == one && factorize(l).keys().all(|p| Gf2Poly::t_pow_mod(l / p, h) != one)
}

fn c3_periods() -> Outcome {
    let t = Instant::now();
    let h12 = to_gf2(&univariate_generator(&lp("1+x+x^-1*y^3"), &lp("1+y+x^3*y^-1"), Axis::Y).unwrap(), Axis::Y).unwrap();
    let h17 = to_gf2(&univariate_generator(&lp("1+x+x^-1*y^-3"), &lp("1+y+x^3*y^-1"), Axis::Y).unwrap(), Axis::Y).unwrap();
    let hx = to_gf2(&univariate_generator(&lp("1+x+x^-1*y^-4"), &lp("1+y+x^4*y^-1"), Axis::X).unwrap(), Axis::X).unwrap();
    check(h12 == Gf2Poly::from_exponents([0, 1, 3, 5, 6]), format!("h = {}", h12.render('y')))?;
    check(h17 == Gf2Poly::from_exponents([0, 1, 3, 4, 6, 10, 11]), format!("h = {}", h17.render('y')))?;
    check(hx == Gf2Poly::from_exponents([0, 1, 2, 18, 20]), format!("h' = {}", hx.render('x')))?;
    let cases = [(h12, 12u64), (h17, 762), (Gf2Poly::from_exponents([0, 17, 20]), 1_048_575), (hx, 69_905)];
    let mut got = Vec::new();
    for (h, want) in &cases {
        let l = minimal_period(h).map_err(|e| e.to_string())?;
        check(l == *want, format!("period of {} = {l}, expected {want}", h.render('y')))?;
        check(order_oracle(h, l), format!("order oracle rejects {l}"))?;
        got.push(l);
    }
    within(t, Duration::from_secs(5), "periods")?;
    Ok(format!("periods {got:?}"))
}

fn c4_torus_k() -> Outcome {
    let t = Instant::now();
    for r in TORIC_ROWS {
        let k = k_on_torus(&r.f(), &r.g(), &r.torus()).map_err(|e| format!("[[{},{},{}]]: {e}", r.n, r.k, r.d))?;
        check(k == r.k, format!("[[{},{},{}]]: k = {k}", r.n, r.k, r.d))?;
    }
    within(t, Duration::from_secs(120), "k sweep")?;
    Ok(format!("{} rows in {:.1?}", TORIC_ROWS.len(), t.elapsed()))
}

fn c5_rank_cross_check() -> Outcome {
    let t = Instant::now();
    let mut count = 0;
    for r in small_toric_rows() {
        let code = CssCode::new_unchecked(r.f(), r.g(), r.torus());
        let kr = k_from_ranks(&code);
        let kg = k_on_torus(&r.f(), &r.g(), &r.torus()).unwrap();
        check(kr == kg && kr == r.k, format!("[[{},{},{}]]: rank {kr}, Gröbner {kg}", r.n, r.k, r.d))?;
        count += 1;
    }
    within(t, Duration::from_secs(30), "rank cross-check")?;
    Ok(format!("{count} rows agree"))
}

fn c6_exact_distances() -> Outcome {
    let mut count = 0;
    let mut slowest = Duration::ZERO;
    for r in small_toric_rows().filter(|r| r.d <= 10) {
        let code = CssCode::new_unchecked(r.f(), r.g(), r.torus());
        let t = Instant::now();
        let res = distance_exact(&code, r.d).map_err(|e| e.to_string())?;
        let label = format!("[[{},{},{}]]", r.n, r.k, r.d);
        check(res.exact && res.d == r.d, format!("{label}: d = {} exact = {}", res.d, res.exact))?;
        check(is_logical_witness(&code, res.side, &res.witness), format!("{label}: bad witness"))?;
        within(t, Duration::from_secs(120), &label)?;
        slowest = slowest.max(t.elapsed());
        count += 1;
    }
    Ok(format!("{count} rows certified, slowest {slowest:.1?}"))
}

fn c7_randomized_distances() -> Outcome {
    let mut parts = Vec::new();
    for (n, k, d) in [(144, 12, 12), (360, 12, 24), (310, 10, 22)] {
        let r = TORIC_ROWS.iter().find(|r| (r.n, r.k, r.d) == (n, k, d)).unwrap();
        let code = CssCode::new_unchecked(r.f(), r.g(), r.torus());
        let t = Instant::now();
        let res = distance_upper_ris(&code, 100_000, 0xC0DE).map_err(|e| e.to_string())?;
        check(res.d == d, format!("[[{n},{k},{d}]]: bound {}", res.d))?;
        check(is_logical_witness(&code, res.side, &res.witness), "bad witness")?;
        within(t, Duration::from_secs(600), "randomized distance")?;
        parts.push(format!("[[{n},{k},{}]] in {:.0?}", res.d, t.elapsed()));
    }
    Ok(parts.join(", "))
}

fn c8_search() -> Outcome {
    let t = Instant::now();
    let space = SearchSpace::new((12..=72).step_by(2).collect(), DistancePolicy::ExactBelowCap { cap: 14 });
    let summary = run_search(&space, 1, &mut std::io::sink()).map_err(|e| e.to_string())?;
    let found: BTreeSet<(usize, usize, usize)> = summary
        .per_n
        .iter()
        .filter_map(|s| s.optimum.as_ref())
        .map(|r| {
            if r.d_exact {
                Ok((r.n, r.k, r.d))
            } else {
                Err(format!("n={}: distance not certified", r.n))
            }
        })
        .collect::<Result<_, _>>()?;
    let want: BTreeSet<(usize, usize, usize)> =
        TORIC_ROWS.iter().filter(|r| r.n <= 72).map(|r| (r.n, r.k, r.d)).collect();
    check(found == want, format!("found {found:?}\nexpected {want:?}"))?;
    within(t, Duration::from_secs(3600), "search")?;
    Ok(format!("{} triples for n = 12..72 in {:.0?}", found.len(), t.elapsed()))
}

fn c9_cycle_codes() -> Outcome {
    let t = Instant::now();
    for r in CYCLE_ROWS {
        let f = Gf2Poly::from_exponents([0, r.f_exps.0 as usize, r.f_exps.1 as usize]);
        let g = Gf2Poly::from_exponents([0, 1, r.g_exp as usize]);
        let code = GbCode1D::new(&f, &g, r.l as u64).map_err(|e| e.to_string())?;
        check(k_1d(&code) == r.k, format!("[[{},{},{}]]: k = {}", r.n, r.k, r.d, k_1d(&code)))?;
    }
    within(t, Duration::from_secs(10), "cycle sweep")?;
    let torus = TwistedTorus::new(127, 1, 25).unwrap();
    let (f, g) = (lp("1+x+x^-1*y^-3"), lp("1+y+y^-6"));
    let code = reduce_to_1d(&f, &g, &torus).map_err(|e| e.to_string())?;
    check(code.f() == &Gf2Poly::from_exponents([0, 22, 102]), format!("f(y) = {}", code.f().render('y')))?;
    check(code.g() == &Gf2Poly::from_exponents([0, 1, 121]), format!("g(y) = {}", code.g().render('y')))?;
    check(k_1d(&code) == 14 && k_on_torus(&f, &g, &torus).unwrap() == 14, "k of the reduced code")?;
    Ok(format!("{} rows; f(y) = {}, g(y) = {}", CYCLE_ROWS.len(), code.f().render('y'), code.g().render('y')))
}

/// Rows with 292 < n ≤ 400 and d ≥ 20: k equality plus a randomized bound no
/// larger than the tabulated d, escalating from 2000 to 10^5 trials.
fn large_rows() -> Outcome {
    let mut escalated = Vec::new();
    let mut count = 0;
    for r in TORIC_ROWS.iter().filter(|r| r.n > 292 && r.d >= 20) {
        let label = format!("[[{},{},{}]]", r.n, r.k, r.d);
        check(k_on_torus(&r.f(), &r.g(), &r.torus()).unwrap() == r.k, format!("{label}: k"))?;
        let code = CssCode::new_unchecked(r.f(), r.g(), r.torus());
        let mut d = distance_upper_ris(&code, 2000, 0xC0DE).map_err(|e| e.to_string())?.d;
        if d > r.d {
            d = distance_upper_ris(&code, 100_000, 0xC0DE).map_err(|e| e.to_string())?.d;
            escalated.push(label.clone());
        }
        check(d <= r.d, format!("{label}: bound {d}"))?;
        count += 1;
    }
    Ok(format!("{count} rows; 10^5 trials needed for {}", escalated.join(", ")))
}

fn runner() -> TestRunner {
    TestRunner::new(PtConfig { cases: 1000, failure_persistence: None, max_global_rejects: 100_000, ..PtConfig::default() })
}

fn poly(range: i64, terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-range..=range, -range..=range), 0..=terms)
        .prop_map(|v| LaurentPoly::from_exponents(v.into_iter().map(|(i, j)| Exponent::new(i, j))))
}

fn nonneg_poly(max: i64, terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0..=max, 0..=max), 1..=terms)
        .prop_map(|v| LaurentPoly::from_exponents(v.into_iter().map(|(i, j)| Exponent::new(i, j))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn torus(side: i64) -> impl Strategy<Value = TwistedTorus> {
    (1..=side, 1..=side, 0..side).prop_map(|(a, b, c)| TwistedTorus::new(a, b, c % a).unwrap())
}

fn pair() -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_map(|(a, b, c, d)| (lp("1+x") + LaurentPoly::monomial(Exponent::new(a, b)), lp("1+y") + LaurentPoly::monomial(Exponent::new(c, d))))
}

fn gf2(deg: usize) -> impl Strategy<Value = Gf2Poly> {
    prop::collection::vec(any::<bool>(), 1..=deg + 1)
        .prop_map(|b| Gf2Poly::from_exponents(b.iter().enumerate().filter(|(_, x)| **x).map(|(k, _)| k)))
}

fn suite<S: Strategy>(name: &str, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner().run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn c10_properties() -> Outcome {
    suite("ring axioms", (poly(6, 6), poly(6, 6), poly(6, 6)), |(p, q, r)| {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert!((&p + &p).is_zero());
        Ok(())
    })?;
    suite("S-polynomials", (nonneg_poly(6, 4), nonneg_poly(6, 4)), |(f, g)| {
        let order = MonomialOrder::lex_xy();
        let gb = laurent_ideal_basis(&f, &g, &[], &order).unwrap();
        for (i, a) in gb.gens().iter().enumerate() {
            for b in &gb.gens()[i + 1..] {
                prop_assert!(gb.normal_form(&s_polynomial(a, b, &order).unwrap()).unwrap().is_zero());
            }
        }
        Ok(())
    })?;
    suite("normal form", (nonneg_poly(5, 4), nonneg_poly(5, 4), nonneg_poly(8, 8)), |(f, g, p)| {
        let order = MonomialOrder::lex_yx();
        let gb = laurent_ideal_basis(&f, &g, &[], &order).unwrap();
        let nf = gb.normal_form(&MultiPoly::from_laurent(&p, &order).unwrap()).unwrap();
        prop_assert_eq!(gb.normal_form(&nf).unwrap(), nf);
        Ok(())
    })?;
    suite("commutation", (pair(), torus(9)), |((f, g), t)| {
        let (hx, hz) = CssCode::new_unchecked(f, g, t).parity_checks();
        prop_assert!(verify_commutation(&hx, &hz).unwrap());
        Ok(())
    })?;
    suite("reduce_point", (torus(40), -500i64..500, -500i64..500, -30i64..30, -30i64..30), |(t, i, j, s, u)| {
        let p = Exponent::new(i, j);
        let q = Exponent::new(i + s * t.a1().i + u * t.a2().i, j + s * t.a1().j + u * t.a2().j);
        prop_assert_eq!(t.reduce_point(q), t.reduce_point(p));
        prop_assert_eq!(t.reduce_point(t.reduce_point(p)), t.reduce_point(p));
        Ok(())
    })?;
    suite("gcd", (gf2(30), gf2(30), gf2(5)), |(p, q, c)| {
        prop_assume!(!(p.is_zero() && q.is_zero()) && !c.is_zero());
        let d = gcd_univariate(&p, &q).unwrap();
        prop_assert!(d.divides(&p) && d.divides(&q));
        prop_assert!(c.divides(&gcd_univariate(&p.mul(&c), &q.mul(&c)).unwrap()));
        Ok(())
    })?;
    suite("RIS determinism", (pair(), torus(6), any::<u64>()), |((f, g), t, seed)| {
        let code = CssCode::new_unchecked(f, g, t);
        prop_assume!(k_from_ranks(&code) > 0);
        let a = distance_upper_ris(&code, 16, seed).unwrap();
        prop_assert_eq!(&a, &distance_upper_ris(&code, 16, seed).unwrap());
        Ok(())
    })?;
    Ok("7 suites x 1000 cases".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 Gröbner bases", c1_groebner_bases),
        ("2 quotient dimensions", c2_quotient_dimensions),
        ("3 periods", c3_periods),
        ("4 torus k", c4_torus_k),
        ("5 rank cross-check", c5_rank_cross_check),
        ("6 exact distances", c6_exact_distances),
        ("7 randomized distances", c7_randomized_distances),
        ("8 search n=12..72", c8_search),
        ("9 cycle codes", c9_cycle_codes),
        ("10 property suites", c10_properties),
        ("large-n rows", large_rows),
    ];
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (name, run) in criteria {
        if filter.as_deref().is_some_and(|f| !name.contains(f)) {
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!("PASS  criterion {name}: {msg} [{:.1?}]", t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}: {msg} [{:.1?}]", t.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

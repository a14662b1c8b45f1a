//! Search all weight-6 codes for a range of n and print the best per n.
//!
//! cargo run --release --example search -- 12 40

use gtcode::distance::DistancePolicy;
use gtcode::search::{run_search, SearchSpace};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let (lo, hi) = (args.first().copied().unwrap_or(12), args.get(1).copied().unwrap_or(40));
    let space = SearchSpace::new((lo..=hi).step_by(2).collect(), DistancePolicy::ExactBelowCap { cap: 14 });
    let summary = run_search(&space, 1, &mut std::io::sink()).expect("search");
    for s in &summary.per_n {
        match &s.optimum {
            Some(r) => println!(
                "n={:<4} [[{},{},{}]]  f={}  g={}  torus {}  ({} candidates)",
                s.n, r.n, r.k, r.d, r.f, r.g, r.torus, s.candidates
            ),
            None => println!("n={:<4} no code", s.n),
        }
    }
}

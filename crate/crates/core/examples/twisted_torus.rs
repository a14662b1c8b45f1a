//! Logical qubit counts on twisted tori, by Gröbner basis and by matrix rank.

use gtcode::catalog::small_toric_rows;
use gtcode::code_algebra::k_on_torus;
use gtcode::lattice::{k_from_ranks, CssCode};

fn main() {
    println!("{:<14} {:<12} {:>6} {:>6}", "[[n,k,d]]", "torus", "k(GB)", "k(rank)");
    for row in small_toric_rows() {
        let (f, g, t) = (row.f(), row.g(), row.torus());
        let k = k_on_torus(&f, &g, &t).expect("k");
        let kr = k_from_ranks(&CssCode::new_unchecked(f, g, t));
        let label = format!("[[{},{},{}]]", row.n, row.k, row.d);
        println!("{label:<14} {:<12} {k:>6} {kr:>6}", format!("({},{},{})", t.alpha(), t.beta(), t.gamma()));
    }
}

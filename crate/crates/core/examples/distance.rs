//! Exact and randomized distances of a few codes.

use std::time::Instant;

use gtcode::catalog::TORIC_ROWS;
use gtcode::distance::{distance_exact, distance_upper_ris, is_logical_witness};
use gtcode::lattice::CssCode;

fn main() {
    for n in [72, 90, 144] {
        let row = TORIC_ROWS.iter().find(|r| r.n == n).unwrap();
        let code = CssCode::new(row.f(), row.g(), row.torus()).unwrap();
        let t = Instant::now();
        let ris = distance_upper_ris(&code, 2000, 7).unwrap();
        println!("n={n}: randomized upper bound {} ({:?})", ris.d, t.elapsed());
        let t = Instant::now();
        let exact = distance_exact(&code, 14).unwrap();
        assert!(is_logical_witness(&code, exact.side, &exact.witness));
        println!("n={n}: exact {} certified={} ({:?})", exact.d, exact.exact, t.elapsed());
    }
}

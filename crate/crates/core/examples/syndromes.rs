//! Syndromes of single-qubit errors and of an error string.

use gtcode::lattice::{cells_to_poly, syndrome_of_pauli, BitVec, CssCode, Pauli};
use gtcode::poly2::{Exponent, LaurentPoly};
use gtcode::torus::TwistedTorus;

fn main() {
    let f = LaurentPoly::parse("1+x+x*y").unwrap();
    let g = LaurentPoly::parse("1+y+x*y").unwrap();
    let code = CssCode::new(f, g, TwistedTorus::new(7, 7, 0).unwrap()).unwrap();
    for p in [Pauli::XOnEdge1, Pauli::XOnEdge2, Pauli::ZOnEdge1, Pauli::ZOnEdge2] {
        let (sx, sz) = syndrome_of_pauli(&code, p, Exponent::new(2, 3));
        println!("{p:?} at (2,3): X-checks {}  Z-checks {}", sx.render(), sz.render());
    }
    let (_, hz) = code.parity_checks();
    let cells = code.torus.cells();
    let err = BitVec::from_support(2 * cells, &[0, 1, cells + 5]);
    let s = hz.mul_vec(&err);
    println!("X error on qubits 0, 1, {}: syndrome {}", cells + 5, cells_to_poly(&code.torus, &s).render());
}

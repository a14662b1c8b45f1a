//! Width-one tori collapse to codes on a cycle.

use gtcode::catalog::CYCLE_ROWS;
use gtcode::code_algebra::k_on_torus;
use gtcode::gb1d::{k_1d, reduce_to_1d, write_cycle_table, GbCode1D};
use gtcode::gf2x::Gf2Poly;
use gtcode::poly2::LaurentPoly;
use gtcode::torus::TwistedTorus;

fn main() {
    let f = LaurentPoly::parse("1+x+x^-1*y^-3").unwrap();
    let g = LaurentPoly::parse("1+y+y^-6").unwrap();
    let t = TwistedTorus::new(127, 1, 25).unwrap();
    let code = reduce_to_1d(&f, &g, &t).unwrap();
    println!("f(y) = {}, g(y) = {}, l = {}", code.f().render('y'), code.g().render('y'), code.l());
    println!("k on cycle {}, k on torus {}", k_1d(&code), k_on_torus(&f, &g, &t).unwrap());

    let row = &CYCLE_ROWS[10];
    let f1 = Gf2Poly::from_exponents([0, row.f_exps.0 as usize, row.f_exps.1 as usize]);
    let g1 = Gf2Poly::from_exponents([0, 1, row.g_exp as usize]);
    let c = GbCode1D::new(&f1, &g1, row.l as u64).unwrap();
    println!("[[{},{},{}]] has k = {}", row.n, row.k, row.d, k_1d(&c));
    write_cycle_table(&CYCLE_ROWS[..8], std::io::stdout()).unwrap();
}

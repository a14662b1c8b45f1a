//! Gröbner basis and anyon count of a polynomial pair.
//!
//! cargo run --example anyons -- "1+x+x^-1*y^3" "1+y+x^3*y^-1"

use gtcode::code_algebra::{anyon_basis, check_to_condition, standard_monomials};
use gtcode::groebner::MonomialOrder;
use gtcode::poly2::LaurentPoly;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let f = LaurentPoly::parse(args.first().map_or("1+x+x*y", |s| s.as_str())).expect("f");
    let g = LaurentPoly::parse(args.get(1).map_or("1+y+x*y", |s| s.as_str())).expect("g");
    println!("f = {}\ng = {}", f.render(), g.render());
    if !check_to_condition(&f, &g).expect("coprimality") {
        println!("f and g share a factor; the anyon count is infinite");
        return;
    }
    for (name, order) in [("lex x>y", MonomialOrder::lex_xy()), ("lex y>x", MonomialOrder::lex_yx())] {
        let gb = anyon_basis(&f, &g, &order).expect("basis");
        println!("{name}:");
        for p in gb.laurent_gens() {
            println!("  {}", p.render());
        }
    }
    let gb = anyon_basis(&f, &g, &MonomialOrder::lex_xy()).expect("basis");
    let std = standard_monomials(&gb).expect("zero-dimensional");
    let monos: Vec<String> = std.monomials.iter().map(|e| LaurentPoly::monomial(*e).render()).collect();
    println!("standard monomials: {}", monos.join(", "));
    println!("anyons = {}, k_max = {}", std.count, 2 * std.count);
}

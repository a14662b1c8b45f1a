//! Univariate generators, their factorizations and the tori reaching k_max.

use gtcode::code_algebra::{
    factor_univariate, minimal_full_k_torus, minimal_untwisted_torus, to_gf2, univariate_generator, Axis,
};
use gtcode::poly2::LaurentPoly;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let f = LaurentPoly::parse(args.first().map_or("1+x+x^-1*y^3", |s| s.as_str())).expect("f");
    let g = LaurentPoly::parse(args.get(1).map_or("1+y+x^3*y^-1", |s| s.as_str())).expect("g");
    for (axis, var) in [(Axis::Y, 'y'), (Axis::X, 'x')] {
        let h = to_gf2(&univariate_generator(&f, &g, axis).expect("generator"), axis).expect("univariate");
        println!("h({var}) = {}", h.render(var));
        for (p, m) in factor_univariate(&h).expect("factor").factors {
            println!("  ({})^{m}  order {}", p.render(var), p.order_irreducible().expect("order"));
        }
        println!("  period {}", h.period().expect("period"));
    }
    let (lx, ly) = minimal_untwisted_torus(&f, &g).expect("periods");
    let t = minimal_full_k_torus(&f, &g).expect("twisted");
    println!("untwisted: {lx} x {ly} ({} qubits)", 2 * lx * ly);
    println!("twisted:   {t} ({} qubits)", t.n());
}

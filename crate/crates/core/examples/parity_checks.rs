//! Build H_X and H_Z for a code and write them in alist format.
//!
//! cargo run --example parity_checks -- OUT_DIR

use gtcode::lattice::{verify_commutation, CssCode, Gf2Matrix};
use gtcode::poly2::LaurentPoly;
use gtcode::torus::TwistedTorus;

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().join("gtcode").display().to_string());
    let f = LaurentPoly::parse("1+x+x^-1*y^3").unwrap();
    let g = LaurentPoly::parse("1+y+x^3*y^-1").unwrap();
    let code = CssCode::new(f, g, TwistedTorus::new(12, 3, 3).unwrap()).unwrap();
    let (hx, hz) = code.parity_checks();
    println!("H_X: {} x {}, rank {}", hx.rows(), hx.cols(), hx.rank());
    println!("H_Z: {} x {}, rank {}", hz.rows(), hz.cols(), hz.rank());
    println!("H_X H_Z^T = 0: {}", verify_commutation(&hx, &hz).unwrap());
    std::fs::create_dir_all(&dir).unwrap();
    for (name, m) in [("hx", &hx), ("hz", &hz)] {
        let path = std::path::Path::new(&dir).join(format!("{name}.alist"));
        std::fs::write(&path, m.to_alist()).unwrap();
        let back = Gf2Matrix::from_alist(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(&back, m);
        println!("wrote {}", path.display());
    }
}

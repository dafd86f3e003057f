//! Cofactors, Darboux first integrals and the inverse curve search.
//!
//! Run with: cargo run --example invariance

use forge::brackets::VectorField;
use forge::cli::parse_poly;
use forge::invariance::{cofactor, darboux_search, find_invariant_curve, verify_degree_structure};
use forge::ratpoly::make_vars;

fn main() {
    let vars = make_vars(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &vars).unwrap();

    let g = "((x + y)^2 - 2*x)";
    let v = VectorField::planar(
        p(&format!("{g} - 4*x*(x + y)")),
        p(&format!("{g} + 4*x*(x + y) - 4*x")),
    )
    .unwrap();
    let r = cofactor(&p(g), &v).unwrap();
    println!("cofactor of {}: {}", r.curve, r.cofactor.unwrap());
    let d = verify_degree_structure(&p(g), &v).unwrap();
    println!("degree structure: {:?}, holds {}", d.branch, d.holds);

    for (g, k) in find_invariant_curve(&v, 2, 1) {
        println!("found {g}  cofactor {k}");
    }

    // Two lines through the origin of a linear saddle give x*y as a first integral.
    let saddle = VectorField::planar(p("x"), p("-y")).unwrap();
    for c in darboux_search(&[p("x"), p("y")], &saddle).unwrap() {
        let e: Vec<String> = c.exponents.iter().map(|e| e.to_string()).collect();
        println!(
            "darboux exponents [{}], valid {}",
            e.join(", "),
            c.is_valid()
        );
    }
}

//! Jacobian brackets and the alternating identity they satisfy.
//!
//! Run with: cargo run --example brackets

use forge::brackets::{bracket2, bracket_n, directional, plucker_residual, VectorField};
use forge::cli::parse_poly;
use forge::ratpoly::make_vars;

fn main() {
    let xy = make_vars(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &xy).unwrap();
    let (f, g1, g2, big_g) = (p("x^2*y"), p("x + y^2"), p("x*y - 1"), p("y^3 + x"));
    println!("{{g1, g2}} = {}", bracket2(&g1, &g2).unwrap());
    let r = plucker_residual(&[f], &[g1, g2], &big_g).unwrap();
    println!("three-term residual = {r}");

    let xyz = make_vars(&["x", "y", "z"]);
    let q = |s: &str| parse_poly(s, &xyz).unwrap();
    println!(
        "{{x*y, y*z, z*x}} = {}",
        bracket_n(&[q("x*y"), q("y*z"), q("z*x")]).unwrap()
    );

    // dg(v) for the rotation field and a circle.
    let rot = VectorField::planar(p("-y"), p("x")).unwrap();
    println!(
        "d(x^2+y^2)(rot) = {}",
        directional(&p("x^2 + y^2 - 1"), &rot).unwrap()
    );
}

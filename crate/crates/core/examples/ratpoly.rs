//! Exact polynomial arithmetic over the rationals.
//!
//! Run with: cargo run --example ratpoly

use forge::cli::parse_poly;
use forge::ratpoly::{make_vars, rat};

fn main() {
    let vars = make_vars(&["x", "y"]);
    let f = parse_poly("(x + 1/2*y)^3 - x*y", &vars).unwrap();
    let g = parse_poly("x + 1/2*y", &vars).unwrap();
    println!("f        = {f}");
    println!("df/dx    = {}", f.partial("x").unwrap());

    let (q, r) = f.div_rem(&g).unwrap();
    println!("f div g  = {q}, remainder {r}");

    let at = f.eval(&[rat(1, 3), rat(-2, 1)]).unwrap();
    println!("f(1/3,-2) = {at}");

    // Printing is canonical, so parsing the printed form gives the same polynomial.
    assert_eq!(parse_poly(&f.to_string(), &vars).unwrap(), f);
}

//! Invariant straight lines, exact and in floating point.
//!
//! Run with: cargo run --example lines

use forge::brackets::VectorField;
use forge::builder::{invariant_lines, invariant_lines_f64, FPoly, Line};
use forge::cli::parse_poly;
use forge::ratpoly::{int, make_vars};

fn show(lines: &[Line]) {
    for l in lines {
        match l {
            Line::Slope { k, l, .. } => println!("  y = {k}*x + ({l})"),
            Line::Vertical { c, .. } => println!("  x = {c}"),
        }
    }
}

fn main() {
    let vars = make_vars(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &vars).unwrap();
    let v = VectorField::planar(p("x*(x - 1)"), p("y*(y + 2)")).unwrap();
    let exact = invariant_lines(&v, &int(10)).unwrap();
    println!("exact: {} lines", exact.count());
    show(&exact.lines);

    // The quintic with irrational parameter a = sqrt(5).
    let a = 5f64.sqrt();
    let s = a - 2.0;
    let px = FPoly::new([
        ((5, 0), 1.0),
        ((4, 1), a),
        ((3, 0), -1.0 - s * s),
        ((2, 1), -a * (1.0 + s * s)),
        ((1, 0), s * s),
        ((0, 1), a * s * s),
    ]);
    let qy = FPoly::new([
        ((0, 5), 1.0),
        ((1, 4), a),
        ((0, 3), -1.0 - s * s),
        ((1, 2), -a * (1.0 + s * s)),
        ((0, 1), s * s),
        ((1, 0), a * s * s),
    ]);
    let r = invariant_lines_f64(&px, &qy, 10.0);
    println!(
        "quintic: {} lines, max residual {:.1e}",
        r.count(),
        r.max_residual
    );
}

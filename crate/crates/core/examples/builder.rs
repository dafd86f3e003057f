//! Building fields with prescribed invariant curves.
//!
//! Run with: cargo run --example builder

use forge::builder::{
    build_circles, build_leading_term, build_planar, build_separable, build_two_nests, certify,
    CircleSpec, CurveSet, MultiplierSet,
};
use forge::cli::parse_poly;
use forge::ratpoly::{int, make_vars, rat, MPoly};

fn main() {
    let vars = make_vars(&["x", "y"]);
    let p = |s: &str| parse_poly(s, &vars).unwrap();

    // Circle and parabola, each with its own multiplier, plus the extra terms.
    let curves = vec![p("x^2 + y^2 - 1"), p("y - x^2")];
    let set = CurveSet::new(curves.clone()).unwrap();
    let mult = MultiplierSet::new(vec![p("x + 1"), p("y")], &vars).with_extra(p("1"), p("x"));
    let v = build_planar(&set, &mult).unwrap();
    println!(
        "planar: P = {}\n        Q = {}",
        v.component(0),
        v.component(1)
    );
    for (g, k) in curves.iter().zip(certify(&curves, &v).unwrap()) {
        println!("  {g}  cofactor {k}");
    }

    let spec = CircleSpec::new(
        vec![(int(0), int(0)), (int(3), int(0))],
        vec![int(1), int(1)],
    )
    .unwrap();
    let r = build_circles(&spec, &MultiplierSet::new(vec![p("1"), p("-1")], &vars)).unwrap();
    println!("circles: degree {} (bound {})", r.degree, r.bound);

    let (nests, circles) = build_two_nests(&int(4), &[int(1)]).unwrap();
    println!(
        "two nests: degree {}, {} circles",
        nests.degree(),
        circles.len()
    );

    let (sep, g) = build_separable(
        &p("x^3 - x"),
        &p("y"),
        (&int(1), &int(0), &int(2)),
        &rat(1, 2),
        &int(1),
    )
    .unwrap();
    println!("separable: curve {g}, field degree {}", sep.degree());

    let (lt, h, _): (_, MPoly, _) = build_leading_term(&p("y^2 - x"), &int(1), &int(2), 3).unwrap();
    println!("leading term: curve {h}, field degree {}", lt.degree());
}

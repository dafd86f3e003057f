//! Oval counts, critical points and closed-form bounds.
//!
//! Run with: cargo run --example topology

use forge::builder::build_two_nests;
use forge::cli::parse_poly;
use forge::ratpoly::{int, make_vars};
use forge::topo_bounds::{
    count_ovals, critical_points, harnack_bound, liapunov_two_nests, limit_cycle_bounds,
    poincare_bounds, Window,
};

fn main() {
    let vars = make_vars(&["x", "y"]);
    let g = parse_poly("x^4 + y^4 - 5*x^2 - 5*y^2 + 81/10", &vars).unwrap();
    let c = count_ovals(&g, &Window::square(3.0, 400).unwrap()).unwrap();
    println!("ovals: {} (harnack {})", c.ovals, harnack_bound(4).unwrap());

    let (v, _) = build_two_nests(&int(4), &[int(1)]).unwrap();
    for cp in critical_points(&v, &Window::new(-3.0, 7.0, -5.0, 5.0, 400).unwrap()).unwrap() {
        println!("critical point {:?}: {:?}", cp.location, cp.classification);
    }
    let ((s0, d0), (sh, dh)) = liapunov_two_nests(1, &int(4), &[int(1)]).unwrap();
    println!("sigma0 = {s0}, delta0 = {d0}, sigma_half = {sh}, delta_half = {dh}");

    for n in 2..=4 {
        println!(
            "n = {n}: poincare {:?}, limit cycles {:?}",
            poincare_bounds(n).unwrap(),
            limit_cycle_bounds(n).unwrap()
        );
    }
}

//! Phase portrait of the two-nest system as SVG.
//!
//! Run with: cargo run --example plot > nests.svg

use forge::builder::build_two_nests;
use forge::cli::svg::{plot_svg, PlotOptions};
use forge::ratpoly::int;
use forge::topo_bounds::Window;

fn main() {
    let (v, curves) = build_two_nests(&int(4), &[int(1)]).unwrap();
    let opts = PlotOptions {
        window: Window::new(-2.0, 6.0, -4.0, 4.0, 256).unwrap(),
        streamlines: true,
    };
    print!("{}", plot_svg(&v, &curves, &opts).unwrap());
}

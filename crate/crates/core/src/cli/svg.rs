//! SVG phase portraits: curve zero sets and RK4 streamlines.

use std::fmt::Write;

use crate::brackets::VectorField;
use crate::builder::FPoly;
use crate::ratpoly::MPoly;
use crate::topo_bounds::{contour_polylines, TopoError, Window};

const SIZE: f64 = 800.0;
pub const RK4_STEP: f64 = 1e-3;
pub const RK4_STEPS: usize = 2000;
/// Seed grid: 20 columns by 10 rows.
pub const SEED_GRID: (usize, usize) = (20, 10);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotOptions {
    pub window: Window,
    pub streamlines: bool,
}

/// Fixed-step RK4 trajectory from `start`, stopped early when it leaves the
/// window or stalls at a critical point.
pub fn streamline(p: &FPoly, q: &FPoly, start: (f64, f64), w: &Window) -> Vec<(f64, f64)> {
    let f = |x: f64, y: f64| (p.eval(x, y), q.eval(x, y));
    let h = RK4_STEP;
    let mut pts = vec![start];
    let (mut x, mut y) = start;
    for _ in 0..RK4_STEPS {
        let k1 = f(x, y);
        let k2 = f(x + 0.5 * h * k1.0, y + 0.5 * h * k1.1);
        let k3 = f(x + 0.5 * h * k2.0, y + 0.5 * h * k2.1);
        let k4 = f(x + h * k3.0, y + h * k3.1);
        let dx = h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        let dy = h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        if !(dx.is_finite() && dy.is_finite()) || dx == 0.0 && dy == 0.0 {
            break;
        }
        x += dx;
        y += dy;
        if !w.contains(x, y) {
            break;
        }
        pts.push((x, y));
    }
    pts
}

/// Seeds at the cell centres of the seed grid.
pub fn seeds(w: &Window) -> Vec<(f64, f64)> {
    let (nx, ny) = SEED_GRID;
    let mut out = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            out.push((
                w.x_min + (i as f64 + 0.5) * (w.x_max - w.x_min) / nx as f64,
                w.y_min + (j as f64 + 0.5) * (w.y_max - w.y_min) / ny as f64,
            ));
        }
    }
    out
}

fn points(line: &[(f64, f64)], w: &Window) -> String {
    let sx = SIZE / (w.x_max - w.x_min);
    let sy = SIZE / (w.y_max - w.y_min);
    let mut s = String::new();
    for (k, (x, y)) in line.iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        write!(s, "{:.3},{:.3}", (x - w.x_min) * sx, (w.y_max - y) * sy).unwrap();
    }
    s
}

/// Renders the zero set of every curve (one `polyline` per connected
/// component, tagged `data-curve="g<i>"`) and, optionally, streamlines.
pub fn plot_svg(v: &VectorField, curves: &[MPoly], opts: &PlotOptions) -> Result<String, TopoError> {
    if v.dim() != 2 {
        return Err(TopoError::NotPlanar(v.dim()));
    }
    let w = &opts.window;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" data-window="{},{},{},{}">"#,
        w.x_min, w.x_max, w.y_min, w.y_max
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if opts.streamlines {
        let p = FPoly::from_mpoly(v.component(0));
        let q = FPoly::from_mpoly(v.component(1));
        writeln!(s, r##"<g class="streamlines" stroke="#9aa" stroke-width="0.6" fill="none">"##).unwrap();
        for seed in seeds(w) {
            let line = streamline(&p, &q, seed, w);
            if line.len() > 1 {
                writeln!(s, r#"<polyline class="streamline" points="{}"/>"#, points(&line, w)).unwrap();
            }
        }
        writeln!(s, "</g>").unwrap();
    }
    writeln!(s, r##"<g class="curves" stroke="#c22" stroke-width="2" fill="none">"##).unwrap();
    for (i, g) in curves.iter().enumerate() {
        for line in contour_polylines(g, w)? {
            if line.len() > 1 {
                writeln!(
                    s,
                    r#"<polyline class="curve" data-curve="g{i}" points="{}"/>"#,
                    points(&line, w)
                )
                .unwrap();
            }
        }
    }
    writeln!(s, "</g>\n</svg>").unwrap();
    Ok(s)
}

use serde::Serialize;

use super::{TopoError, Window};
use crate::brackets::VectorField;
use crate::builder::FPoly;

const TRACE_ZERO: f64 = 1e-9;
const DEDUP: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Saddle,
    Node,
    Focus,
    /// Zero trace with positive determinant; telling a center from a weak
    /// focus needs higher focal quantities, which are not computed.
    CenterOrFocus,
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub location: (f64, f64),
    pub trace: f64,
    pub det: f64,
    pub classification: Classification,
}

/// Linearization type from the Jacobian's trace and determinant.
/// `scale` sets the threshold below which the determinant counts as zero.
pub fn classify(trace: f64, det: f64, scale: f64) -> Classification {
    if det.abs() <= 1e-9 * scale.max(1.0) {
        Classification::Degenerate
    } else if det < 0.0 {
        Classification::Saddle
    } else if trace.abs() <= TRACE_ZERO {
        Classification::CenterOrFocus
    } else if trace * trace - 4.0 * det < 0.0 {
        Classification::Focus
    } else {
        Classification::Node
    }
}

struct Jet {
    p: FPoly,
    q: FPoly,
    px: FPoly,
    py: FPoly,
    qx: FPoly,
    qy: FPoly,
}

impl Jet {
    fn jacobian(&self, x: f64, y: f64) -> [f64; 4] {
        [
            self.px.eval(x, y),
            self.py.eval(x, y),
            self.qx.eval(x, y),
            self.qy.eval(x, y),
        ]
    }

    fn newton(&self, mut x: f64, mut y: f64, w: &Window) -> Option<(f64, f64)> {
        let span = (w.x_max - w.x_min).max(w.y_max - w.y_min);
        for _ in 0..60 {
            let (f, g) = (self.p.eval(x, y), self.q.eval(x, y));
            let [a, b, c, d] = self.jacobian(x, y);
            let det = a * d - b * c;
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dx = (d * f - b * g) / det;
            let dy = (a * g - c * f) / det;
            x -= dx;
            y -= dy;
            if !(x.is_finite() && y.is_finite()) || (x.abs() + y.abs()) > 1e3 * span {
                return None;
            }
            if dx.abs() + dy.abs() <= 1e-15 * (1.0 + x.abs() + y.abs()) {
                break;
            }
        }
        let ok = |h: &FPoly| h.eval(x, y).abs() <= 1e-9 * (1.0 + h.eval_abs(x, y));
        (ok(&self.p) && ok(&self.q)).then_some((x, y))
    }
}

/// Critical points of a planar field in the window, found by Newton
/// iteration from every grid cell over which both components change sign.
/// Seeds that fail to converge are dropped.
pub fn critical_points(v: &VectorField, w: &Window) -> Result<Vec<CriticalPoint>, TopoError> {
    if v.dim() != 2 {
        return Err(TopoError::NotPlanar(v.dim()));
    }
    let (p, q) = (v.component(0), v.component(1));
    let jet = Jet {
        p: FPoly::from_mpoly(p),
        q: FPoly::from_mpoly(q),
        px: FPoly::from_mpoly(&p.partial_at(0)),
        py: FPoly::from_mpoly(&p.partial_at(1)),
        qx: FPoly::from_mpoly(&q.partial_at(0)),
        qy: FPoly::from_mpoly(&q.partial_at(1)),
    };
    let pv = super::sample_grid(&jet.p, w);
    let qv = super::sample_grid(&jet.q, w);
    let n = w.resolution + 1;
    let spans = |vals: &[f64], i: usize, j: usize| {
        let c = [
            vals[j * n + i],
            vals[j * n + i + 1],
            vals[(j + 1) * n + i],
            vals[(j + 1) * n + i + 1],
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        lo <= 0.0 && hi >= 0.0
    };
    let mut found: Vec<(f64, f64)> = Vec::new();
    for j in 0..w.resolution {
        for i in 0..w.resolution {
            if !(spans(&pv, i, j) && spans(&qv, i, j)) {
                continue;
            }
            let seed = (w.x(i) + 0.5 * w.dx(), w.y(j) + 0.5 * w.dy());
            if let Some((x, y)) = jet.newton(seed.0, seed.1, w) {
                if w.contains(x, y)
                    && !found
                        .iter()
                        .any(|(a, b)| (a - x).abs() <= DEDUP && (b - y).abs() <= DEDUP)
                {
                    found.push((x, y));
                }
            }
        }
    }
    found.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(found
        .into_iter()
        .map(|(x, y)| {
            let [a, b, c, d] = jet.jacobian(x, y);
            let (trace, det) = (a + d, a * d - b * c);
            let scale = a * a + b * b + c * c + d * d;
            CriticalPoint {
                location: (x, y),
                trace,
                det,
                classification: classify(trace, det, scale),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_two_nests;
    use crate::ratpoly::{int, make_vars, MPoly};

    fn field(p: &str, q: &str) -> VectorField {
        let v = make_vars(&["x", "y"]);
        let parse = |s: &str| -> MPoly { crate::cli::parse_poly(s, &v).unwrap() };
        VectorField::planar(parse(p), parse(q)).unwrap()
    }

    #[test]
    fn radial_node() {
        let w = Window::square(2.0, 16).unwrap();
        let cps = critical_points(&field("x", "y"), &w).unwrap();
        assert_eq!(cps.len(), 1);
        let c = &cps[0];
        assert!(c.location.0.abs() < 1e-12 && c.location.1.abs() < 1e-12);
        assert_eq!((c.trace, c.det), (2.0, 1.0));
        assert_eq!(c.classification, Classification::Node);
    }

    #[test]
    fn rotation_is_center_or_focus() {
        let w = Window::square(2.0, 16).unwrap();
        let cps = critical_points(&field("-y", "x"), &w).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!((cps[0].trace, cps[0].det), (0.0, 1.0));
        assert_eq!(cps[0].classification, Classification::CenterOrFocus);
    }

    #[test]
    fn classification_table() {
        assert_eq!(classify(0.0, -1.0, 1.0), Classification::Saddle);
        assert_eq!(classify(1.0, 1.0, 1.0), Classification::Focus);
        assert_eq!(classify(3.0, 1.0, 1.0), Classification::Node);
        assert_eq!(classify(1.0, 0.0, 1.0), Classification::Degenerate);
    }

    #[test]
    fn two_nest_has_three_points() {
        let (v, _) = build_two_nests(&int(4), &[int(1)]).unwrap();
        let w = Window::new(-10.0, 14.0, -12.0, 12.0, 240).unwrap();
        let cps = critical_points(&v, &w).unwrap();
        let locs: Vec<_> = cps.iter().map(|c| c.location).collect();
        assert_eq!(cps.len(), 3, "{locs:?}");
        for (c, x) in cps.iter().zip([0.0, 2.0, 4.0]) {
            assert!((c.location.0 - x).abs() < 1e-9 && c.location.1.abs() < 1e-9);
        }
        assert_eq!(cps[1].classification, Classification::Saddle);
        assert!((cps[0].trace + 4.0).abs() < 1e-9 && (cps[0].det - 3840.0).abs() < 1e-6);
        assert!((cps[1].trace - 12.0).abs() < 1e-9 && (cps[1].det + 384.0).abs() < 1e-6);
    }

    #[test]
    fn saddle_at_grid_node() {
        let w = Window::square(1.0, 16).unwrap();
        let cps = critical_points(&field("x", "-y"), &w).unwrap();
        assert_eq!(cps.len(), 1);
        assert_eq!(cps[0].classification, Classification::Saddle);
    }
}

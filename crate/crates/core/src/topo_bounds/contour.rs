//! Marching squares over a sampled sign grid.
//!
//! Every grid edge whose endpoint signs differ carries one crossing of the
//! zero set. Inside a cell the crossings are paired (saddle cells are
//! resolved by the value at the cell centre), and the pairing links edges
//! into components. A component that reaches an edge on the window border
//! is open within the window; every other component is a closed oval.

use super::{TopoError, Window};
use crate::builder::FPoly;
use crate::ratpoly::MPoly;

/// Oval count on a window.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OvalCount {
    /// Closed components strictly inside the window.
    pub ovals: usize,
    /// Components that reach the window border; nonzero means the window
    /// may be too small.
    pub touching_boundary: usize,
}

impl OvalCount {
    pub fn warning(&self) -> Option<String> {
        (self.touching_boundary > 0).then(|| {
            format!(
                "{} contour component(s) touch the window boundary",
                self.touching_boundary
            )
        })
    }
}

fn planar(g: &MPoly) -> Result<FPoly, TopoError> {
    if g.nvars() != 2 {
        return Err(TopoError::NotPlanar(g.nvars()));
    }
    Ok(FPoly::from_mpoly(g))
}

/// Values of `g` at the `(res+1)²` grid nodes, row-major in `y`.
pub fn sample_grid(g: &FPoly, w: &Window) -> Vec<f64> {
    let n = w.resolution + 1;
    let deg_x = g.terms().iter().map(|((i, _), _)| *i).max().unwrap_or(0) as usize;
    let mut vals = Vec::with_capacity(n * n);
    let mut row = vec![0.0; deg_x + 1];
    for j in 0..n {
        let y = w.y(j);
        row.iter_mut().for_each(|c| *c = 0.0);
        for ((i, k), c) in g.terms() {
            row[*i as usize] += c * y.powi(*k as i32);
        }
        for i in 0..n {
            let x = w.x(i);
            vals.push(row.iter().rev().fold(0.0, |acc, c| acc * x + c));
        }
    }
    vals
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Crossing structure of a sampled grid.
struct Crossings<'a> {
    w: &'a Window,
    vals: &'a [f64],
    res: usize,
}

impl<'a> Crossings<'a> {
    fn val(&self, i: usize, j: usize) -> f64 {
        self.vals[j * (self.res + 1) + i]
    }

    fn pos(&self, i: usize, j: usize) -> bool {
        self.val(i, j) > 0.0
    }

    fn n_edges(&self) -> usize {
        2 * self.res * (self.res + 1)
    }

    /// Edge from node `(i, j)` to `(i+1, j)`.
    fn h(&self, i: usize, j: usize) -> usize {
        j * self.res + i
    }

    /// Edge from node `(i, j)` to `(i, j+1)`.
    fn v(&self, i: usize, j: usize) -> usize {
        self.res * (self.res + 1) + j * (self.res + 1) + i
    }

    fn crossed(&self, e: usize) -> bool {
        let ((i0, j0), (i1, j1)) = self.ends(e);
        self.pos(i0, j0) != self.pos(i1, j1)
    }

    fn ends(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        let hn = self.res * (self.res + 1);
        if e < hn {
            let (j, i) = (e / self.res, e % self.res);
            ((i, j), (i + 1, j))
        } else {
            let e = e - hn;
            let (j, i) = (e / (self.res + 1), e % (self.res + 1));
            ((i, j), (i, j + 1))
        }
    }

    fn on_border(&self, e: usize) -> bool {
        let ((i0, j0), (i1, j1)) = self.ends(e);
        (j0 == j1 && (j0 == 0 || j0 == self.res)) || (i0 == i1 && (i0 == 0 || i0 == self.res))
    }

    /// Interpolated zero on a crossed edge.
    fn point(&self, e: usize) -> (f64, f64) {
        let ((i0, j0), (i1, j1)) = self.ends(e);
        let (a, b) = (self.val(i0, j0), self.val(i1, j1));
        let t = if a == b { 0.5 } else { a / (a - b) };
        let (x0, y0) = (self.w.x(i0), self.w.y(j0));
        let (x1, y1) = (self.w.x(i1), self.w.y(j1));
        (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
    }

    /// Pairs of crossed edges joined inside cell `(i, j)`.
    fn cell_links(&self, g: &FPoly, i: usize, j: usize) -> Vec<(usize, usize)> {
        let bottom = self.h(i, j);
        let top = self.h(i, j + 1);
        let left = self.v(i, j);
        let right = self.v(i + 1, j);
        let crossed: Vec<usize> = [bottom, right, top, left]
            .into_iter()
            .filter(|&e| self.crossed(e))
            .collect();
        match crossed.len() {
            2 => vec![(crossed[0], crossed[1])],
            4 => {
                let cx = self.w.x(i) + 0.5 * self.w.dx();
                let cy = self.w.y(j) + 0.5 * self.w.dy();
                if (g.eval(cx, cy) > 0.0) == self.pos(i, j) {
                    // The bottom-left/top-right diagonal is connected, so the
                    // curve cuts off the other two corners.
                    vec![(bottom, right), (top, left)]
                } else {
                    vec![(bottom, left), (top, right)]
                }
            }
            _ => vec![],
        }
    }

    fn links(&self, g: &FPoly) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.res {
            for i in 0..self.res {
                out.extend(self.cell_links(g, i, j));
            }
        }
        out
    }
}

/// Counts closed components of `g = 0` inside the window. Components that
/// reach the border are counted separately in `touching_boundary`.
pub fn count_ovals(g: &MPoly, w: &Window) -> Result<OvalCount, TopoError> {
    let f = planar(g)?;
    let vals = sample_grid(&f, w);
    let c = Crossings {
        w,
        vals: &vals,
        res: w.resolution,
    };
    let mut dsu = Dsu((0..c.n_edges()).collect());
    for (a, b) in c.links(&f) {
        dsu.union(a, b);
    }
    let mut roots: std::collections::BTreeMap<usize, bool> = Default::default();
    for e in (0..c.n_edges()).filter(|&e| c.crossed(e)) {
        let r = dsu.find(e);
        *roots.entry(r).or_insert(false) |= c.on_border(e);
    }
    let touching = roots.values().filter(|&&b| b).count();
    Ok(OvalCount {
        ovals: roots.len() - touching,
        touching_boundary: touching,
    })
}

/// Zero set of `g` as polylines, one per connected component. Closed
/// components repeat their first point at the end.
pub fn contour_polylines(g: &MPoly, w: &Window) -> Result<Vec<Vec<(f64, f64)>>, TopoError> {
    let f = planar(g)?;
    let vals = sample_grid(&f, w);
    let c = Crossings {
        w,
        vals: &vals,
        res: w.resolution,
    };
    let mut adj: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for (a, b) in c.links(&f) {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut starts: Vec<usize> = adj.keys().copied().collect();
    starts.sort_unstable();
    // Open chains first, so they are walked from an end.
    starts.sort_by_key(|e| adj[e].len() != 1);
    let mut seen = std::collections::HashSet::new();
    let mut lines = Vec::new();
    for s in starts {
        if !seen.insert(s) {
            continue;
        }
        let mut line = vec![c.point(s)];
        let (mut prev, mut cur) = (usize::MAX, s);
        loop {
            let next = adj[&cur].iter().copied().find(|&n| n != prev && !seen.contains(&n));
            match next {
                Some(n) => {
                    seen.insert(n);
                    line.push(c.point(n));
                    prev = cur;
                    cur = n;
                }
                None => {
                    if adj[&cur].contains(&s) && line.len() > 2 {
                        line.push(line[0]);
                    }
                    break;
                }
            }
        }
        lines.push(line);
    }
    Ok(lines)
}

/// Square window certified to contain the whole real zero set, when the top
/// homogeneous part of `g` has no real zeros on the unit circle. Uses
/// `|g| ≥ m rⁿ − Σ_k C_k r^k` with `m` the sampled minimum of the top form
/// (halved as a safety margin) and `C_k` the absolute coefficient sums.
pub fn enclosing_window(g: &MPoly, resolution: usize) -> Result<Option<Window>, TopoError> {
    let f = planar(g)?;
    let n = f.degree();
    if n == 0 {
        return Ok(None);
    }
    let top = FPoly::new(f.terms().iter().copied().filter(|((i, j), _)| i + j == n));
    let m = (0..3600)
        .map(|k| {
            let t = k as f64 * std::f64::consts::TAU / 3600.0;
            top.eval(t.cos(), t.sin()).abs()
        })
        .fold(f64::INFINITY, f64::min);
    let scale = f.terms().iter().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    if m <= 1e-9 * scale {
        return Ok(None);
    }
    let lower: f64 = f
        .terms()
        .iter()
        .filter(|((i, j), _)| i + j < n)
        .map(|(_, c)| c.abs())
        .sum();
    let r = (lower / (0.5 * m)).max(1.0) * 1.05;
    Window::square(r, resolution).map(Some)
}

//! Curve topology on a grid, critical points, and closed-form bounds on
//! ovals, limit cycles and invariant lines.

mod bounds;
mod contour;
mod critical;
mod liapunov;

pub use bounds::{
    harnack_bound, limit_cycle_bound, limit_cycle_bounds, line_count_bounds, poincare_bounds,
};
pub use contour::{contour_polylines, count_ovals, enclosing_window, sample_grid, OvalCount};
pub use critical::{classify, critical_points, Classification, CriticalPoint};
pub use liapunov::liapunov_two_nests;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TopoError {
    #[error("degree must be at least 1, got {0}")]
    DegreeTooSmall(u64),
    #[error("invalid window: {0}")]
    BadWindow(String),
    #[error("expected a planar polynomial, got {0} variables")]
    NotPlanar(usize),
    #[error("nest size {l} does not match {radii} radii")]
    NestMismatch { l: usize, radii: usize },
    #[error("nest must contain at least one circle")]
    EmptyNest,
}

/// Rectangular sampling window with `resolution` cells per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub resolution: usize,
}

impl Window {
    pub fn new(
        x_min: f64,
        x_max: f64,
        y_min: f64,
        y_max: f64,
        resolution: usize,
    ) -> Result<Self, TopoError> {
        if !(x_min.is_finite() && x_max.is_finite() && y_min.is_finite() && y_max.is_finite()) {
            return Err(TopoError::BadWindow("non-finite bound".into()));
        }
        if x_min >= x_max || y_min >= y_max {
            return Err(TopoError::BadWindow(format!(
                "empty range [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if resolution < 16 {
            return Err(TopoError::BadWindow(format!("resolution {resolution} < 16")));
        }
        Ok(Window {
            x_min,
            x_max,
            y_min,
            y_max,
            resolution,
        })
    }

    /// Square window `[−r, r]²`.
    pub fn square(r: f64, resolution: usize) -> Result<Self, TopoError> {
        Window::new(-r, r, -r, r, resolution)
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.resolution as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.resolution as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * self.dy()
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x_min && x <= self.x_max && y >= self.y_min && y <= self.y_max
    }
}

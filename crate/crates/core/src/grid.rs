//! Cell-centered sampling on boxes, ball enumeration, and the ball-mean /
//! essential-infimum primitives everything else is built from.

use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::geometry::{Ball, Cell, Point};
use crate::util::CompensatedSum;

/// The sampled box [−L, L]ⁿ with an even number of cells per axis, so no
/// cell center ever lands on a coordinate hyperplane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    dim: usize,
    half_width: f64,
    cells_per_axis: usize,
}

impl Domain {
    pub fn new(dim: usize, half_width: f64, cells_per_axis: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(Error::InvalidDomain(format!("dimension must be 1 or 2, got {dim}")));
        }
        if !(half_width > 0.0) {
            return Err(Error::InvalidDomain(format!("half width must be positive, got {half_width}")));
        }
        if cells_per_axis == 0 || cells_per_axis % 2 != 0 {
            return Err(Error::InvalidDomain(format!(
                "cells per axis must be even and positive, got {cells_per_axis}"
            )));
        }
        Ok(Domain { dim, half_width, cells_per_axis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn cells_per_axis(&self) -> usize {
        self.cells_per_axis
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.cells_per_axis as f64
    }

    pub fn num_cells(&self) -> usize {
        self.cells_per_axis.pow(self.dim as u32)
    }

    /// Coordinate of the i-th cell center along one axis:
    /// −L + (i + 1/2) h.
    pub fn axis_center(&self, i: usize) -> f64 {
        -self.half_width + (i as f64 + 0.5) * self.spacing()
    }

    /// Flat index layout: axis 0 fastest (row-major in (y, x) for n = 2).
    pub fn cell_center(&self, idx: usize) -> Point {
        match self.dim {
            1 => Point::new_1d(self.axis_center(idx)),
            2 => {
                let n = self.cells_per_axis;
                Point::new_2d(self.axis_center(idx % n), self.axis_center(idx / n))
            }
            _ => unreachable!(),
        }
    }

    pub fn cell(&self, idx: usize) -> Cell {
        let h = self.spacing();
        match self.dim {
            1 => {
                let lo = -self.half_width + idx as f64 * h;
                Cell::interval(lo, lo + h)
            }
            2 => {
                let n = self.cells_per_axis;
                let x0 = -self.half_width + (idx % n) as f64 * h;
                let y0 = -self.half_width + (idx / n) as f64 * h;
                Cell::rect(x0, x0 + h, y0, y0 + h)
            }
            _ => unreachable!(),
        }
    }

    pub fn centers(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.num_cells()).map(move |i| self.cell_center(i))
    }

    /// Indices of cells whose centers lie in the closed ball, ascending.
    pub fn cell_indices_in_ball(&self, ball: &Ball) -> Vec<usize> {
        let h = self.spacing();
        let axis_range = |center: f64| -> (usize, usize) {
            let lo = ((center - ball.radius + self.half_width) / h).floor() as i64;
            let hi = ((center + ball.radius + self.half_width) / h).ceil() as i64;
            (lo.clamp(0, self.cells_per_axis as i64) as usize,
             hi.clamp(0, self.cells_per_axis as i64) as usize)
        };
        let mut out = Vec::new();
        match self.dim {
            1 => {
                let (i0, i1) = axis_range(ball.center.coord(0));
                for i in i0..i1 {
                    if ball.contains(&Point::new_1d(self.axis_center(i))) {
                        out.push(i);
                    }
                }
            }
            2 => {
                let n = self.cells_per_axis;
                let (i0, i1) = axis_range(ball.center.coord(0));
                let (j0, j1) = axis_range(ball.center.coord(1));
                for j in j0..j1 {
                    for i in i0..i1 {
                        let p = Point::new_2d(self.axis_center(i), self.axis_center(j));
                        if ball.contains(&p) {
                            out.push(j * n + i);
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
        out
    }
}

/// Where the values of a grid function came from.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// Sampled from a closed-form function at cell centers.
    AnalyticSample(String),
    /// Produced by an operator; values within `valid_margin` of the box
    /// boundary are kernel-clipped and should not be trusted.
    Operator { name: String, valid_margin: f64 },
}

/// Cell-centered samples of a scalar function.
#[derive(Clone, Debug)]
pub struct GridFunction {
    domain: Domain,
    values: Vec<f64>,
    provenance: Provenance,
}

impl GridFunction {
    pub fn new(domain: Domain, values: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if values.len() != domain.num_cells() {
            return Err(Error::InvalidDomain(format!(
                "value count {} does not match cell count {}",
                values.len(),
                domain.num_cells()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("grid value at index {i}")));
        }
        Ok(GridFunction { domain, values, provenance })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, idx: usize) -> f64 {
        self.values[idx]
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Distance from the box boundary inside which values are unreliable.
    pub fn valid_margin(&self) -> f64 {
        match &self.provenance {
            Provenance::AnalyticSample(_) => 0.0,
            Provenance::Operator { valid_margin, .. } => *valid_margin,
        }
    }

    /// True when the cell center has at least `extra` clearance beyond the
    /// operator's own invalid margin.
    pub fn is_valid_center(&self, idx: usize, extra: f64) -> bool {
        let p = self.domain.cell_center(idx);
        let l = self.domain.half_width();
        let need = self.valid_margin() + extra;
        (0..p.dim()).all(|k| l - p.coord(k).abs() >= need)
    }

    pub fn map(&self, name: &str, f: impl Fn(f64) -> f64) -> Result<GridFunction> {
        GridFunction::new(
            self.domain,
            self.values.iter().map(|&v| f(v)).collect(),
            Provenance::Operator { name: name.to_string(), valid_margin: self.valid_margin() },
        )
    }
}

/// Samples `f` at every cell center.
pub fn sample(f: &AnalyticFunction, domain: &Domain) -> Result<GridFunction> {
    if let Some(s) = f.singular_point(domain.dim()) {
        // Even cell counts keep centers off coordinate hyperplanes, so this
        // cannot fire for the built-in family; checked anyway.
        for idx in 0..domain.num_cells() {
            if domain.cell_center(idx) == s {
                return Err(Error::InvalidDomain(
                    "a cell center lies on the singular set".into(),
                ));
            }
        }
    }
    let mut values = Vec::with_capacity(domain.num_cells());
    for idx in 0..domain.num_cells() {
        values.push(f.evaluate(&domain.cell_center(idx))?);
    }
    GridFunction::new(
        *domain,
        values,
        Provenance::AnalyticSample(f.kind_name().to_string()),
    )
}

/// Cell-measure-weighted average of `g` over cells whose centers lie in `b`.
pub fn mean_over_ball(g: &GridFunction, b: &Ball) -> Result<f64> {
    let idxs = g.domain().cell_indices_in_ball(b);
    if idxs.is_empty() {
        return Err(Error::EmptyBallSample);
    }
    let mut acc = CompensatedSum::new();
    for &i in &idxs {
        acc.add(g.value(i));
    }
    Ok(acc.value() / idxs.len() as f64)
}

/// Grid minimum over cell centers in `b`; the essential infimum up to one
/// spacing for functions continuous off a null set.
pub fn essinf_over_ball(g: &GridFunction, b: &Ball) -> Result<f64> {
    let idxs = g.domain().cell_indices_in_ball(b);
    if idxs.is_empty() {
        return Err(Error::EmptyBallSample);
    }
    Ok(idxs.iter().map(|&i| g.value(i)).fold(f64::INFINITY, f64::min))
}

/// All (center, radius) pairs with the center a cell center and a one-cell
/// guard band beyond `radius + margin` to the box boundary, so every cell a
/// ball can touch stays strictly inside the box. Deterministic order:
/// radii ascending, then cell index ascending.
pub fn enumerate_balls(domain: &Domain, radii: &[f64], margin: f64) -> Result<Vec<Ball>> {
    if radii.is_empty() {
        return Err(Error::InvalidParameter("empty radius set".into()));
    }
    if radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::InvalidParameter("radii must be positive".into()));
    }
    if margin < 0.0 {
        return Err(Error::InvalidParameter("margin must be nonnegative".into()));
    }
    let mut sorted: Vec<f64> = radii.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    sorted.dedup();

    let l = domain.half_width();
    let h = domain.spacing();
    let mut out = Vec::new();
    for &r in &sorted {
        let clearance = r + margin + h;
        for idx in 0..domain.num_cells() {
            let c = domain.cell_center(idx);
            let ok = (0..domain.dim()).all(|k| l - c.coord(k).abs() >= clearance);
            if ok {
                out.push(Ball::new(c, r));
            }
        }
    }
    if out.is_empty() {
        return Err(Error::NoAdmissibleBalls);
    }
    Ok(out)
}

/// The default dyadic radius set {2h, 4h, …} up to L/2.
pub fn default_radii(domain: &Domain) -> Vec<f64> {
    let h = domain.spacing();
    let mut out = Vec::new();
    let mut r = 2.0 * h;
    while r <= domain.half_width() / 2.0 {
        out.push(r);
        r *= 2.0;
    }
    out
}

/// A function that ball statistics can be computed against: either grid
/// samples (grid mode) or a closed-form member in exact mode (1-D).
#[derive(Clone, Copy)]
pub enum FieldRef<'a> {
    Grid(&'a GridFunction),
    Analytic(&'a AnalyticFunction),
}

impl<'a> FieldRef<'a> {
    pub fn mean(&self, b: &Ball) -> Result<f64> {
        match self {
            FieldRef::Grid(g) => mean_over_ball(g, b),
            FieldRef::Analytic(f) => {
                if b.dim() != 1 {
                    return Err(Error::UnsupportedExactIntegral {
                        kind: f.kind_name().into(),
                        dim: b.dim(),
                    });
                }
                let (a, c) = b.interval();
                Ok(f.exact_integral_1d(a, c)? / (c - a))
            }
        }
    }

    pub fn essinf(&self, b: &Ball) -> Result<f64> {
        match self {
            FieldRef::Grid(g) => essinf_over_ball(g, b),
            FieldRef::Analytic(f) => {
                if b.dim() != 1 {
                    return Err(Error::UnsupportedExactEssinf { kind: f.kind_name().into() });
                }
                let (a, c) = b.interval();
                f.essinf_interval(a, c)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FieldRef::Analytic(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn interval_ball(a: f64, b: f64) -> Ball {
        Ball::from_interval(a, b)
    }

    #[test]
    fn domain_rejects_odd_cells() {
        assert!(Domain::new(1, 1.0, 5).is_err());
        assert!(Domain::new(1, 1.0, 0).is_err());
        assert!(Domain::new(3, 1.0, 4).is_err());
        assert!(Domain::new(1, -1.0, 4).is_err());
    }

    #[test]
    fn sample_linear_cell_centers() {
        let d = Domain::new(1, 1.0, 4).unwrap();
        let g = sample(&AnalyticFunction::Linear, &d).unwrap();
        assert_eq!(g.values(), &[-0.75, -0.25, 0.25, 0.75]);
    }

    #[test]
    fn sample_constant() {
        let d = Domain::new(2, 1.5, 6).unwrap();
        let g = sample(&AnalyticFunction::Constant(3.0), &d).unwrap();
        assert!(g.values().iter().all(|&v| v == 3.0));
    }

    #[test]
    fn sample_neglog_four_cells() {
        let d = Domain::new(1, 1.0, 4).unwrap();
        let g = sample(&AnalyticFunction::NegLogAbs, &d).unwrap();
        let ln43 = (4.0f64 / 3.0).ln();
        let ln4 = 4.0f64.ln();
        assert_relative_eq!(g.value(0), ln43, max_relative = 1e-15);
        assert_relative_eq!(g.value(1), ln4, max_relative = 1e-15);
        assert_relative_eq!(g.value(2), ln4, max_relative = 1e-15);
        assert_relative_eq!(g.value(3), ln43, max_relative = 1e-15);
    }

    #[test]
    fn mean_of_linear_is_midpoint() {
        let d = Domain::new(1, 1.0, 64).unwrap();
        let g = sample(&AnalyticFunction::Linear, &d).unwrap();
        // Cell-aligned interval: the discrete mean is the exact midpoint.
        let b = interval_ball(-0.5, 0.25);
        assert_relative_eq!(mean_over_ball(&g, &b).unwrap(), -0.125, epsilon = 1e-15);
    }

    #[test]
    fn mean_exact_mode_neglog_zero_to_b() {
        let f = AnalyticFunction::NegLogAbs;
        let field = FieldRef::Analytic(&f);
        for b in [0.25, 0.5, 1.0] {
            let ball = interval_ball(0.0, b);
            assert_relative_eq!(field.mean(&ball).unwrap(), 1.0 - b.ln(), max_relative = 1e-13);
        }
    }

    #[test]
    fn essinf_neglog_grid_within_one_spacing() {
        let d = Domain::new(1, 1.0, 256).unwrap();
        let g = sample(&AnalyticFunction::NegLogAbs, &d).unwrap();
        let ball = interval_ball(0.125, 0.75);
        let got = essinf_over_ball(&g, &ball).unwrap();
        let exact = -(0.75f64.ln());
        assert!((got - exact).abs() <= d.spacing());
    }

    #[test]
    fn essinf_empty_ball_errors() {
        let d = Domain::new(1, 1.0, 4).unwrap();
        let g = sample(&AnalyticFunction::Constant(1.0), &d).unwrap();
        let tiny = Ball::new(Point::new_1d(0.0), 0.01);
        assert!(matches!(essinf_over_ball(&g, &tiny), Err(Error::EmptyBallSample)));
        assert!(matches!(mean_over_ball(&g, &tiny), Err(Error::EmptyBallSample)));
    }

    #[test]
    fn enumerate_ball_counts_match_hand_enumeration() {
        let d4 = Domain::new(1, 1.0, 4).unwrap();
        let balls = enumerate_balls(&d4, &[0.25], 0.0).unwrap();
        assert_eq!(balls.len(), 2);
        let centers: Vec<f64> = balls.iter().map(|b| b.center.coord(0)).collect();
        assert_eq!(centers, vec![-0.25, 0.25]);

        let d8 = Domain::new(1, 1.0, 8).unwrap();
        let balls = enumerate_balls(&d8, &[0.125, 0.25], 0.0).unwrap();
        assert_eq!(balls.len(), 10);
        let small: usize = balls.iter().filter(|b| b.radius == 0.125).count();
        assert_eq!(small, 6);
    }

    #[test]
    fn enumerate_empty_radii_errors() {
        let d = Domain::new(1, 1.0, 4).unwrap();
        assert!(enumerate_balls(&d, &[], 0.0).is_err());
    }

    #[test]
    fn enumerate_no_admissible_errors() {
        let d = Domain::new(1, 1.0, 4).unwrap();
        assert!(matches!(
            enumerate_balls(&d, &[0.9], 0.0),
            Err(Error::NoAdmissibleBalls)
        ));
    }

    #[test]
    fn refinement_converges_to_exact_mean() {
        let f = AnalyticFunction::NegLogAbs;
        let ball = interval_ball(-0.25, 0.5);
        let exact = FieldRef::Analytic(&f).mean(&ball).unwrap();
        let mut errors = Vec::new();
        for k in [64usize, 128, 256, 512] {
            let d = Domain::new(1, 1.0, k).unwrap();
            let g = sample(&f, &d).unwrap();
            let m = mean_over_ball(&g, &ball).unwrap();
            errors.push((m - exact).abs());
        }
        for w in errors.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "errors {errors:?} not decreasing");
        }
    }

    proptest! {
        #[test]
        fn mean_is_linear_and_essinf_shifts(
            c in -3.0f64..3.0,
            lam in 0.1f64..4.0,
            center in -0.4f64..0.4,
            radius in 0.1f64..0.5,
        ) {
            let d = Domain::new(1, 1.0, 128).unwrap();
            let f = AnalyticFunction::GaussianBump { a: 0.5 };
            let g = sample(&f, &d).unwrap();
            let combo = GridFunction::new(
                d,
                g.values().iter().map(|&v| lam * v + c).collect(),
                Provenance::AnalyticSample("combo".into()),
            )
            .unwrap();
            let ball = Ball::new(Point::new_1d(center), radius);
            let m0 = mean_over_ball(&g, &ball).unwrap();
            let m1 = mean_over_ball(&combo, &ball).unwrap();
            prop_assert!((m1 - (lam * m0 + c)).abs() < 1e-11);

            let e0 = essinf_over_ball(&g, &ball).unwrap();
            let e1 = essinf_over_ball(&combo, &ball).unwrap();
            prop_assert!((e1 - (lam * e0 + c)).abs() < 1e-11);

            prop_assert!(m0 >= e0 - 1e-15);
        }
    }
}

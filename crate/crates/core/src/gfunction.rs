//! The Littlewood–Paley g-function built on the scaled time derivative of
//! the heat semigroup, its truncated variant, and the pipelines that test
//! lower-oscillation bounds of g(f) and [g(f)]² against the mean-oscillation
//! norm of the input.

use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::geometry::{Ball, Point};
use crate::grid::{Domain, FieldRef, GridFunction, Provenance};
use crate::heat::{apply_tdt_heat, HeatParams, TimeGrid};
use crate::norms::{blo_norm, bmo_norm, heat_blo_functional_grid, NormEstimate};
use crate::util::log_spaced;
use rayon::prelude::*;

/// Truncation and resolution of the dt/t integral.
#[derive(Clone, Copy, Debug)]
pub struct SquareFunctionParams {
    pub s_min: f64,
    pub s_max: f64,
    pub points_per_decade: usize,
}

impl SquareFunctionParams {
    pub fn new(s_min: f64, s_max: f64, points_per_decade: usize) -> Result<Self> {
        if !(s_min > 0.0 && s_min < s_max) {
            return Err(Error::InvalidParameter(format!(
                "square-function range needs 0 < s_min < s_max, got ({s_min}, {s_max})"
            )));
        }
        if points_per_decade < 4 {
            return Err(Error::InvalidParameter(
                "square-function grid needs at least 4 points per decade".into(),
            ));
        }
        Ok(SquareFunctionParams { s_min, s_max, points_per_decade })
    }

    pub fn nodes(&self) -> Vec<f64> {
        log_spaced(self.s_min, self.s_max, self.points_per_decade)
    }

    /// Same range stretched by `decades` on both ends.
    pub fn extended(&self, decades: f64) -> Result<Self> {
        let factor = 10f64.powf(decades);
        SquareFunctionParams::new(self.s_min / factor, self.s_max * factor, self.points_per_decade)
    }
}

/// A truncated g-value with honesty estimates for both cut ends: bounds on
/// the change of g² if s_min were halved or s_max doubled.
#[derive(Clone, Copy, Debug)]
pub struct GValue {
    pub value: f64,
    pub lower_tail_sq: f64,
    pub upper_tail_sq: f64,
    pub truncated: bool,
}

fn integrand(f: &AnalyticFunction, x: &Point, s: f64, p: &HeatParams) -> Result<f64> {
    let v = apply_tdt_heat(f, x, s, p)?;
    Ok(v * v)
}

/// Log-trapezoid quadrature of |s ∂_s W_s f(x)|² ds/s over the given nodes.
fn log_trapezoid(f: &AnalyticFunction, x: &Point, nodes: &[f64], p: &HeatParams) -> Result<f64> {
    let values: Vec<f64> = nodes
        .iter()
        .map(|&s| integrand(f, x, s, p))
        .collect::<Result<_>>()?;
    let mut acc = crate::util::CompensatedSum::new();
    for k in 0..nodes.len() - 1 {
        let du = (nodes[k + 1] / nodes[k]).ln();
        acc.add(0.5 * (values[k] + values[k + 1]) * du);
    }
    Ok(acc.value())
}

/// g(f)(x) over the truncated range [s_min, s_max], with tail estimates.
///
/// The tail bounds sample the integrand just outside both cuts and scale by
/// the log-measure of one halving/doubling with a 1.5 safety factor; the
/// integrand is Lipschitz in log s at these scales.
pub fn g_function(
    f: &AnalyticFunction,
    x: &Point,
    sp: &SquareFunctionParams,
    p: &HeatParams,
) -> Result<GValue> {
    let nodes = sp.nodes();
    let sq = log_trapezoid(f, x, &nodes, p)?;
    if sq < -1e-15 {
        return Err(Error::NonFinite("negative square-function quadrature".into()));
    }
    let ln2 = std::f64::consts::LN_2;
    let lower = integrand(f, x, sp.s_min, p)?
        .max(integrand(f, x, 0.5 * sp.s_min, p)?)
        * ln2
        * 1.5;
    let upper = integrand(f, x, sp.s_max, p)?
        .max(integrand(f, x, 2.0 * sp.s_max, p)?)
        * ln2
        * 1.5;
    Ok(GValue {
        value: sq.max(0.0).sqrt(),
        lower_tail_sq: lower,
        upper_tail_sq: upper,
        truncated: true,
    })
}

/// The truncated variant: the upper limit is r² (capped at the configured
/// range). Returns 0 when r² falls below s_min.
pub fn truncated_g(
    f: &AnalyticFunction,
    x: &Point,
    r: f64,
    sp: &SquareFunctionParams,
    p: &HeatParams,
) -> Result<GValue> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("truncation radius {r}")));
    }
    let cap = (r * r).min(sp.s_max);
    if cap <= sp.s_min {
        return Ok(GValue { value: 0.0, lower_tail_sq: 0.0, upper_tail_sq: 0.0, truncated: true });
    }
    let trimmed = SquareFunctionParams::new(sp.s_min, cap, sp.points_per_decade)?;
    g_function(f, x, &trimmed, p)
}

/// Materializes x ↦ g(f)(x) and x ↦ [g(f)(x)]² on a grid in one sweep.
pub fn g_grids(
    f: &AnalyticFunction,
    domain: &Domain,
    sp: &SquareFunctionParams,
    p: &HeatParams,
) -> Result<(GridFunction, GridFunction)> {
    let nodes = sp.nodes();
    let squares: Vec<f64> = (0..domain.num_cells())
        .into_par_iter()
        .map(|i| log_trapezoid(f, &domain.cell_center(i), &nodes, p))
        .collect::<Result<_>>()?;
    let g_sq = GridFunction::new(
        *domain,
        squares.clone(),
        Provenance::Operator { name: "g_squared".into(), valid_margin: 0.0 },
    )?;
    let g = GridFunction::new(
        *domain,
        squares.iter().map(|&v| v.max(0.0).sqrt()).collect(),
        Provenance::Operator { name: "g".into(), valid_margin: 0.0 },
    )?;
    Ok((g, g_sq))
}

/// Report of the [g(f)]² lower-oscillation pipeline.
#[derive(Clone, Debug)]
pub struct GSquaredReport {
    pub bmo_f: f64,
    pub blo_gsq: NormEstimate,
    pub heat_blo_gsq: NormEstimate,
    /// blo([g f]²) / bmo(f)².
    pub ratio_blo: f64,
    /// heat functional of [g f]² / bmo(f)².
    pub ratio_heat: f64,
}

/// Computes h = [g(f)]² on the grid, then its ball-family and heat
/// lower-oscillation estimates, normalized by bmo(f)².
pub fn gsquared_blo_check(
    f: &AnalyticFunction,
    domain: &Domain,
    balls: &[Ball],
    tg: &TimeGrid,
    sp: &SquareFunctionParams,
    p: &HeatParams,
) -> Result<GSquaredReport> {
    if !f.classification().is_bmo {
        return Err(Error::Misclassified(format!(
            "{} is not declared BMO",
            f.kind_name()
        )));
    }
    let f_grid = crate::grid::sample(f, domain)?;
    let bmo_f = bmo_norm(FieldRef::Grid(&f_grid), balls)?.value;
    let (_, g_sq) = g_grids(f, domain, sp, p)?;
    let blo_gsq = blo_norm(FieldRef::Grid(&g_sq), balls)?;
    let heat_blo_gsq = heat_blo_functional_grid(&g_sq, tg, p)?;
    let denom = bmo_f * bmo_f;
    Ok(GSquaredReport {
        bmo_f,
        ratio_blo: blo_gsq.value / denom,
        ratio_heat: heat_blo_gsq.value / denom,
        blo_gsq,
        heat_blo_gsq,
    })
}

/// Report of the first-power pipeline, including the per-ball square-root
/// comparison used to derive it from the squared bound.
#[derive(Clone, Debug)]
pub struct GFirstPowerReport {
    pub bmo_f: f64,
    pub blo_g: NormEstimate,
    /// blo(g f) / bmo(f).
    pub ratio_blo: f64,
    /// max over balls of (mean g − min g) − sqrt(mean g² − min g²);
    /// nonpositive up to floating noise.
    pub max_per_ball_violation: f64,
}

pub fn g_blo_check(
    f: &AnalyticFunction,
    domain: &Domain,
    balls: &[Ball],
    sp: &SquareFunctionParams,
    p: &HeatParams,
) -> Result<GFirstPowerReport> {
    if !f.classification().is_bmo {
        return Err(Error::Misclassified(format!(
            "{} is not declared BMO",
            f.kind_name()
        )));
    }
    let f_grid = crate::grid::sample(f, domain)?;
    let bmo_f = bmo_norm(FieldRef::Grid(&f_grid), balls)?.value;
    let (g, g_sq) = g_grids(f, domain, sp, p)?;
    let blo_g = blo_norm(FieldRef::Grid(&g), balls)?;

    let max_violation = balls
        .par_iter()
        .map(|b| -> Result<f64> {
            let idxs = domain.cell_indices_in_ball(b);
            if idxs.is_empty() {
                return Err(Error::EmptyBallSample);
            }
            let inv = 1.0 / idxs.len() as f64;
            let mut mean_g = 0.0;
            let mut min_g = f64::INFINITY;
            let mut mean_gsq = 0.0;
            let mut min_gsq = f64::INFINITY;
            for &i in &idxs {
                mean_g += g.value(i);
                min_g = min_g.min(g.value(i));
                mean_gsq += g_sq.value(i);
                min_gsq = min_gsq.min(g_sq.value(i));
            }
            mean_g *= inv;
            mean_gsq *= inv;
            let lhs = mean_g - min_g;
            let rhs = (mean_gsq - min_gsq).max(0.0).sqrt();
            Ok(lhs - rhs)
        })
        .try_reduce(|| f64::NEG_INFINITY, |a, b| Ok(a.max(b)))?;

    Ok(GFirstPowerReport {
        bmo_f,
        ratio_blo: blo_g.value / bmo_f,
        blo_g,
        max_per_ball_violation: max_violation,
    })
}

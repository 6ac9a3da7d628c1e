//! The curated closed-form test family.
//!
//! Every member carries a declared BLO/BMO/L∞ classification, closed-form
//! cell integrals (including across the singular point for the logarithmic
//! and power-law kinds), and a known essential infimum on intervals. The
//! family is fixed; there are no user-defined function hooks.

use crate::error::{Error, Result};
use crate::geometry::{disk_box_area, Ball, Cell, Point};
use crate::util::golden_section_max;

/// Closed-form scalar functions on ℝⁿ, n ∈ {1, 2}.
#[derive(Clone, Debug, PartialEq)]
pub enum AnalyticFunction {
    /// f ≡ c.
    Constant(f64),
    /// f(x) = x₁ (first coordinate).
    Linear,
    /// f(x) = −ln|x| off the origin.
    NegLogAbs,
    /// f(x) = ln|x| off the origin. In BMO but not in BLO.
    LogAbs,
    /// f(x) = |x|^(−alpha). Requires alpha < n for local integrability;
    /// alpha may be negative, giving the bounded positive power |x|^|alpha|.
    PowerLawWeight { alpha: f64 },
    /// f(x) = exp(−|x|² / (4a)), a > 0.
    GaussianBump { a: f64 },
    /// Characteristic function of a closed ball.
    Indicator { support: Ball },
    /// f(x) = amplitude · sin(frequency · x₁), frequency > 0.
    BoundedSine { amplitude: f64, frequency: f64 },
    /// x ↦ base(x − offset).
    Shifted { base: Box<AnalyticFunction>, offset: Point },
    /// x ↦ factor · base(x). Negative factors are only allowed on bounded
    /// bases, so the declared classification stays consistent.
    Scaled { base: Box<AnalyticFunction>, factor: f64 },
    /// base + bounded, with `bounded` required to be L∞.
    Sum { base: Box<AnalyticFunction>, bounded: Box<AnalyticFunction> },
}

/// Declared membership flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_blo: bool,
    pub is_bmo: bool,
    pub is_linfty: bool,
}

impl AnalyticFunction {
    pub fn shifted(base: AnalyticFunction, offset: Point) -> Self {
        AnalyticFunction::Shifted { base: Box::new(base), offset }
    }

    pub fn scaled(base: AnalyticFunction, factor: f64) -> Self {
        assert!(factor != 0.0, "scale factor must be nonzero");
        assert!(
            factor > 0.0 || base.classification().is_linfty,
            "negative scale factors are only defined for bounded bases"
        );
        AnalyticFunction::Scaled { base: Box::new(base), factor }
    }

    pub fn sum(base: AnalyticFunction, bounded: AnalyticFunction) -> Self {
        assert!(
            bounded.classification().is_linfty,
            "the second summand must be a bounded function"
        );
        AnalyticFunction::Sum { base: Box::new(base), bounded: Box::new(bounded) }
    }

    /// f − g for bounded g; the stability route for perturbation checks.
    pub fn minus(base: AnalyticFunction, bounded: AnalyticFunction) -> Self {
        let neg = AnalyticFunction::scaled(bounded, -1.0);
        AnalyticFunction::sum(base, neg)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            AnalyticFunction::Constant(_) => "constant",
            AnalyticFunction::Linear => "linear",
            AnalyticFunction::NegLogAbs => "neg_log_abs",
            AnalyticFunction::LogAbs => "log_abs",
            AnalyticFunction::PowerLawWeight { .. } => "power_law_weight",
            AnalyticFunction::GaussianBump { .. } => "gaussian_bump",
            AnalyticFunction::Indicator { .. } => "indicator",
            AnalyticFunction::BoundedSine { .. } => "bounded_sine",
            AnalyticFunction::Shifted { .. } => "shifted",
            AnalyticFunction::Scaled { .. } => "scaled",
            AnalyticFunction::Sum { .. } => "sum",
        }
    }

    pub fn classification(&self) -> Classification {
        match self {
            AnalyticFunction::Constant(_) => Classification { is_blo: true, is_bmo: true, is_linfty: true },
            AnalyticFunction::Linear => Classification { is_blo: false, is_bmo: false, is_linfty: false },
            AnalyticFunction::NegLogAbs => Classification { is_blo: true, is_bmo: true, is_linfty: false },
            AnalyticFunction::LogAbs => Classification { is_blo: false, is_bmo: true, is_linfty: false },
            AnalyticFunction::PowerLawWeight { alpha } => {
                // Positive powers of |x| blow up at the origin and are not of
                // bounded mean oscillation; negative alpha gives a bounded
                // continuous function on bounded boxes but |x|^|alpha| is
                // unbounded on ℝⁿ, so it is classified out of all three.
                let _ = alpha;
                Classification { is_blo: false, is_bmo: false, is_linfty: false }
            }
            AnalyticFunction::GaussianBump { .. }
            | AnalyticFunction::Indicator { .. }
            | AnalyticFunction::BoundedSine { .. } => {
                Classification { is_blo: true, is_bmo: true, is_linfty: true }
            }
            AnalyticFunction::Shifted { base, .. } => base.classification(),
            AnalyticFunction::Scaled { base, .. } => base.classification(),
            AnalyticFunction::Sum { base, bounded } => {
                let b = base.classification();
                let g = bounded.classification();
                Classification {
                    is_blo: b.is_blo && g.is_linfty,
                    is_bmo: b.is_bmo && g.is_linfty,
                    is_linfty: b.is_linfty && g.is_linfty,
                }
            }
        }
    }

    /// The singular point, if any. All singular kinds in the family are
    /// singular at a single point (the origin, possibly shifted).
    pub fn singular_point(&self, dim: usize) -> Option<Point> {
        match self {
            AnalyticFunction::NegLogAbs | AnalyticFunction::LogAbs => Some(Point::origin(dim)),
            AnalyticFunction::PowerLawWeight { alpha } if *alpha > 0.0 => Some(Point::origin(dim)),
            AnalyticFunction::Shifted { base, offset } => {
                base.singular_point(dim).map(|p| p.translated(offset))
            }
            AnalyticFunction::Scaled { base, .. } => base.singular_point(dim),
            AnalyticFunction::Sum { base, .. } => base.singular_point(dim),
            _ => None,
        }
    }

    /// Smallest length scale of variation, used to pick quadrature meshes.
    /// `INFINITY` means scale-free (constants, logs, power laws).
    pub fn feature_scale(&self) -> f64 {
        match self {
            AnalyticFunction::GaussianBump { a } => a.sqrt(),
            AnalyticFunction::BoundedSine { frequency, .. } => 1.0 / frequency,
            AnalyticFunction::Indicator { support } => support.radius,
            AnalyticFunction::Shifted { base, .. } | AnalyticFunction::Scaled { base, .. } => {
                base.feature_scale()
            }
            AnalyticFunction::Sum { base, bounded } => {
                base.feature_scale().min(bounded.feature_scale())
            }
            _ => f64::INFINITY,
        }
    }

    /// True when the function is discontinuous or unbounded somewhere inside
    /// the cell, so midpoint quadrature of the bare values is not trusted.
    pub fn needs_exact_cell(&self, cell: &Cell) -> bool {
        match self {
            AnalyticFunction::NegLogAbs | AnalyticFunction::LogAbs => {
                cell.contains(&Point::origin(cell.dim()))
            }
            AnalyticFunction::PowerLawWeight { alpha } => {
                *alpha > 0.0 && cell.contains(&Point::origin(cell.dim()))
            }
            AnalyticFunction::Indicator { support } => cell_crosses_ball_boundary(cell, support),
            AnalyticFunction::Shifted { base, offset } => {
                let mut neg = [0.0; crate::geometry::MAX_DIM];
                for k in 0..offset.dim() {
                    neg[k] = -offset.coord(k);
                }
                let back = cell.translated(&Point::from_slice(&neg[..offset.dim()]));
                base.needs_exact_cell(&back)
            }
            AnalyticFunction::Scaled { base, .. } => base.needs_exact_cell(cell),
            AnalyticFunction::Sum { base, bounded } => {
                base.needs_exact_cell(cell) || bounded.needs_exact_cell(cell)
            }
            _ => false,
        }
    }

    /// Pointwise evaluation. Errors only when `x` is exactly the singular
    /// point of a singular kind.
    pub fn evaluate(&self, x: &Point) -> Result<f64> {
        match self {
            AnalyticFunction::Constant(c) => Ok(*c),
            AnalyticFunction::Linear => Ok(x.coord(0)),
            AnalyticFunction::NegLogAbs => {
                let r = x.norm();
                if r == 0.0 {
                    return Err(Error::SingularEvaluation);
                }
                Ok(-r.ln())
            }
            AnalyticFunction::LogAbs => {
                let r = x.norm();
                if r == 0.0 {
                    return Err(Error::SingularEvaluation);
                }
                Ok(r.ln())
            }
            AnalyticFunction::PowerLawWeight { alpha } => {
                let r = x.norm();
                if r == 0.0 && *alpha > 0.0 {
                    return Err(Error::SingularEvaluation);
                }
                Ok(r.powf(-alpha))
            }
            AnalyticFunction::GaussianBump { a } => {
                Ok((-x.dist_sq(&Point::origin(x.dim())) / (4.0 * a)).exp())
            }
            AnalyticFunction::Indicator { support } => {
                Ok(if support.contains(x) { 1.0 } else { 0.0 })
            }
            AnalyticFunction::BoundedSine { amplitude, frequency } => {
                Ok(amplitude * (frequency * x.coord(0)).sin())
            }
            AnalyticFunction::Shifted { base, offset } => {
                let mut c = [0.0; crate::geometry::MAX_DIM];
                for k in 0..x.dim() {
                    c[k] = x.coord(k) - offset.coord(k);
                }
                base.evaluate(&Point::from_slice(&c[..x.dim()]))
            }
            AnalyticFunction::Scaled { base, factor } => Ok(factor * base.evaluate(x)?),
            AnalyticFunction::Sum { base, bounded } => {
                Ok(base.evaluate(x)? + bounded.evaluate(x)?)
            }
        }
    }

    /// Exact integral over an axis-aligned cell, by closed-form
    /// antiderivatives. Integrable singularities inside the cell are fine.
    pub fn exact_cell_integral(&self, cell: &Cell) -> Result<f64> {
        match cell.dim() {
            1 => self.exact_integral_1d(cell.lo(0), cell.hi(0)),
            2 => self.exact_integral_2d(cell),
            d => Err(Error::InvalidDomain(format!("dimension {d}"))),
        }
    }

    /// ∫_a^b f for the 1-D members.
    pub fn exact_integral_1d(&self, a: f64, b: f64) -> Result<f64> {
        if !(a < b) {
            return Err(Error::InvalidParameter(format!("integration bounds ({a}, {b})")));
        }
        match self {
            AnalyticFunction::Constant(c) => Ok(c * (b - a)),
            AnalyticFunction::Linear => Ok(0.5 * (b * b - a * a)),
            AnalyticFunction::NegLogAbs => Ok(-(log_abs_antiderivative(b) - log_abs_antiderivative(a))),
            AnalyticFunction::LogAbs => Ok(log_abs_antiderivative(b) - log_abs_antiderivative(a)),
            AnalyticFunction::PowerLawWeight { alpha } => {
                if *alpha >= 1.0 {
                    return Err(Error::NonIntegrableWeight { alpha: *alpha, dim: 1 });
                }
                Ok(power_law_antiderivative(b, *alpha) - power_law_antiderivative(a, *alpha))
            }
            AnalyticFunction::GaussianBump { a: width } => {
                let s = 2.0 * width.sqrt();
                Ok((std::f64::consts::PI * width).sqrt() * (libm::erf(b / s) - libm::erf(a / s)))
            }
            AnalyticFunction::Indicator { support } => {
                let (lo, hi) = support.interval();
                Ok((b.min(hi) - a.max(lo)).max(0.0))
            }
            AnalyticFunction::BoundedSine { amplitude, frequency } => {
                Ok(amplitude / frequency * ((frequency * a).cos() - (frequency * b).cos()))
            }
            AnalyticFunction::Shifted { base, offset } => {
                base.exact_integral_1d(a - offset.coord(0), b - offset.coord(0))
            }
            AnalyticFunction::Scaled { base, factor } => {
                Ok(factor * base.exact_integral_1d(a, b)?)
            }
            AnalyticFunction::Sum { base, bounded } => {
                Ok(base.exact_integral_1d(a, b)? + bounded.exact_integral_1d(a, b)?)
            }
        }
    }

    fn exact_integral_2d(&self, cell: &Cell) -> Result<f64> {
        let (x0, x1, y0, y1) = (cell.lo(0), cell.hi(0), cell.lo(1), cell.hi(1));
        match self {
            AnalyticFunction::Constant(c) => Ok(c * cell.measure()),
            AnalyticFunction::Linear => Ok(0.5 * (x1 * x1 - x0 * x0) * (y1 - y0)),
            AnalyticFunction::LogAbs => Ok(log_radius_box_integral(x0, x1, y0, y1)),
            AnalyticFunction::NegLogAbs => Ok(-log_radius_box_integral(x0, x1, y0, y1)),
            AnalyticFunction::PowerLawWeight { alpha } => Err(Error::UnsupportedExactIntegral {
                kind: format!("power_law_weight(alpha={alpha})"),
                dim: 2,
            }),
            AnalyticFunction::GaussianBump { a } => {
                // Separable: exp(-|x|²/4a) = exp(-x²/4a)·exp(-y²/4a).
                let g = AnalyticFunction::GaussianBump { a: *a };
                Ok(g.exact_integral_1d(x0, x1)? * g.exact_integral_1d(y0, y1)?)
            }
            AnalyticFunction::Indicator { support } => {
                Ok(disk_box_area(&support.center, support.radius, cell))
            }
            AnalyticFunction::BoundedSine { amplitude, frequency } => {
                Ok(amplitude / frequency
                    * ((frequency * x0).cos() - (frequency * x1).cos())
                    * (y1 - y0))
            }
            AnalyticFunction::Shifted { base, offset } => {
                let back = Point::new_2d(-offset.coord(0), -offset.coord(1));
                base.exact_cell_integral(&cell.translated(&back))
            }
            AnalyticFunction::Scaled { base, factor } => {
                Ok(factor * base.exact_cell_integral(cell)?)
            }
            AnalyticFunction::Sum { base, bounded } => {
                Ok(base.exact_cell_integral(cell)? + bounded.exact_cell_integral(cell)?)
            }
        }
    }

    /// Exact essential infimum on the interval (a, b), for the kinds whose
    /// monotonicity structure pins it down. `DivergentEssinf` signals −∞.
    pub fn essinf_interval(&self, a: f64, b: f64) -> Result<f64> {
        if !(a < b) {
            return Err(Error::InvalidParameter(format!("interval ({a}, {b})")));
        }
        let far = a.abs().max(b.abs());
        let near = if a <= 0.0 && 0.0 <= b { 0.0 } else { a.abs().min(b.abs()) };
        match self {
            AnalyticFunction::Constant(c) => Ok(*c),
            AnalyticFunction::Linear => Ok(a),
            AnalyticFunction::NegLogAbs => Ok(-far.ln()),
            AnalyticFunction::LogAbs => {
                if near == 0.0 {
                    Err(Error::DivergentEssinf)
                } else {
                    Ok(near.ln())
                }
            }
            AnalyticFunction::PowerLawWeight { alpha } => {
                if *alpha > 0.0 {
                    Ok(far.powf(-alpha))
                } else {
                    Ok(near.powf(-alpha))
                }
            }
            AnalyticFunction::GaussianBump { a: width } => Ok((-far * far / (4.0 * width)).exp()),
            AnalyticFunction::Indicator { support } => {
                let (lo, hi) = support.interval();
                Ok(if lo <= a && b <= hi { 1.0 } else { 0.0 })
            }
            AnalyticFunction::BoundedSine { amplitude, frequency } => {
                Ok(sine_extreme_on_interval(*amplitude, *frequency, a, b, false))
            }
            AnalyticFunction::Shifted { base, offset } => {
                base.essinf_interval(a - offset.coord(0), b - offset.coord(0))
            }
            AnalyticFunction::Scaled { base, factor } => {
                if *factor > 0.0 {
                    Ok(factor * base.essinf_interval(a, b)?)
                } else {
                    // Negative factors only wrap bounded bases; the infimum
                    // comes from the supremum of the base.
                    Ok(factor * base.esssup_interval(a, b)?)
                }
            }
            AnalyticFunction::Sum { .. } => {
                Err(Error::UnsupportedExactEssinf { kind: "sum".into() })
            }
        }
    }

    /// Exact essential supremum on (a, b) for bounded kinds; used by the
    /// negative-scale path of `essinf_interval`.
    fn esssup_interval(&self, a: f64, b: f64) -> Result<f64> {
        let near = if a <= 0.0 && 0.0 <= b { 0.0 } else { a.abs().min(b.abs()) };
        match self {
            AnalyticFunction::Constant(c) => Ok(*c),
            AnalyticFunction::GaussianBump { a: width } => Ok((-near * near / (4.0 * width)).exp()),
            AnalyticFunction::Indicator { support } => {
                let (lo, hi) = support.interval();
                Ok(if b.min(hi) > a.max(lo) { 1.0 } else { 0.0 })
            }
            AnalyticFunction::BoundedSine { amplitude, frequency } => {
                Ok(sine_extreme_on_interval(*amplitude, *frequency, a, b, true))
            }
            AnalyticFunction::Shifted { base, offset } => {
                base.esssup_interval(a - offset.coord(0), b - offset.coord(0))
            }
            AnalyticFunction::Scaled { base, factor } => {
                if *factor > 0.0 {
                    Ok(factor * base.esssup_interval(a, b)?)
                } else {
                    Ok(factor * base.essinf_interval(a, b)?)
                }
            }
            _ => Err(Error::UnsupportedExactEssinf { kind: self.kind_name().into() }),
        }
    }

    /// L∞ norm on ℝⁿ for the bounded kinds, where it has a closed form.
    pub fn linf_norm(&self) -> Option<f64> {
        match self {
            AnalyticFunction::Constant(c) => Some(c.abs()),
            AnalyticFunction::GaussianBump { .. } => Some(1.0),
            AnalyticFunction::Indicator { .. } => Some(1.0),
            AnalyticFunction::BoundedSine { amplitude, .. } => Some(amplitude.abs()),
            AnalyticFunction::Shifted { base, .. } => base.linf_norm(),
            AnalyticFunction::Scaled { base, factor } => {
                base.linf_norm().map(|v| factor.abs() * v)
            }
            _ => None,
        }
    }
}

/// Antiderivative of ln|x|: x ln|x| − x, continuously extended by 0 at 0.
fn log_abs_antiderivative(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.abs().ln() - x
    }
}

/// Antiderivative of |x|^(−alpha), alpha < 1: sgn(x)·|x|^(1−alpha)/(1−alpha).
fn power_law_antiderivative(x: f64, alpha: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * x.abs().powf(1.0 - alpha) / (1.0 - alpha)
    }
}

/// ∫∫ ln √(x²+y²) over [x0,x1]×[y0,y1], valid across the origin.
///
/// Uses the mixed antiderivative F with ∂²F/∂x∂y = ln(x²+y²):
/// F(x,y) = xy·ln(x²+y²) − 3xy + x²·atan(y/x) + y²·atan(x/y),
/// extended by 0 whenever x = 0 or y = 0.
fn log_radius_box_integral(x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    fn f(x: f64, y: f64) -> f64 {
        if x == 0.0 || y == 0.0 {
            return 0.0;
        }
        x * y * (x * x + y * y).ln() - 3.0 * x * y
            + x * x * (y / x).atan()
            + y * y * (x / y).atan()
    }
    0.5 * (f(x1, y1) - f(x0, y1) - f(x1, y0) + f(x0, y0))
}

/// Extremum of A·sin(ωx) on [a, b]; `want_max` picks sup vs inf.
fn sine_extreme_on_interval(amp: f64, omega: f64, a: f64, b: f64, want_max: bool) -> f64 {
    let g = |x: f64| amp * (omega * x).sin();
    let mut best = if want_max { g(a).max(g(b)) } else { g(a).min(g(b)) };
    // Interior critical points: ωx = π/2 + kπ.
    let k_lo = ((omega * a) / std::f64::consts::PI - 0.5).ceil() as i64;
    let k_hi = ((omega * b) / std::f64::consts::PI - 0.5).floor() as i64;
    for k in k_lo..=k_hi {
        let x = (0.5 + k as f64) * std::f64::consts::PI / omega;
        if x > a && x < b {
            let v = g(x);
            best = if want_max { best.max(v) } else { best.min(v) };
        }
    }
    best
}

fn cell_crosses_ball_boundary(cell: &Cell, ball: &Ball) -> bool {
    // Distance from the ball center to the cell, and to the farthest corner.
    let mut near_sq = 0.0;
    let mut far_sq = 0.0;
    for k in 0..cell.dim() {
        let c = ball.center.coord(k);
        let lo = cell.lo(k);
        let hi = cell.hi(k);
        let d_near = if c < lo {
            lo - c
        } else if c > hi {
            c - hi
        } else {
            0.0
        };
        let d_far = (c - lo).abs().max((c - hi).abs());
        near_sq += d_near * d_near;
        far_sq += d_far * d_far;
    }
    let r_sq = ball.radius * ball.radius;
    near_sq <= r_sq && far_sq > r_sq
}

/// Exact value of (ball mean − essential infimum) for f = −ln|x| on the
/// interval (a, b), via the three closed-form cases.
pub fn neglog_interval_defect(a: f64, b: f64) -> Result<f64> {
    if !(a < b) {
        return Err(Error::InvalidParameter(format!(
            "interval endpoints must satisfy a < b, got ({a}, {b})"
        )));
    }
    if a >= 0.0 {
        // 0 ≤ a < b: mean is 1 − (b ln b − a ln a)/(b − a), infimum −ln b.
        if a == 0.0 {
            Ok(1.0)
        } else {
            let q = b / a;
            Ok(1.0 - q.ln() / (q - 1.0))
        }
    } else if b <= 0.0 {
        // Mirror image of the first case.
        neglog_interval_defect(-b, -a)
    } else {
        // a < 0 < b: the infimum sits at the endpoint farther from 0.
        let r = -a / b;
        if r >= 1.0 {
            Ok(1.0 + r.ln() / (1.0 + r))
        } else {
            let q = 1.0 / r;
            Ok(1.0 + q.ln() / (q + 1.0))
        }
    }
}

/// Supremum over all intervals of the −ln|x| defect, by scalar maximization
/// of the straddling-case formula 1 + ln r / (1 + r) over r ≥ 1 (the
/// one-sided cases never exceed 1).
pub fn neglog_blo_norm_oracle() -> f64 {
    let phi = |r: f64| 1.0 + r.ln() / (1.0 + r);
    let (_, max_straddle) = golden_section_max(phi, 1.0, 100.0, 1e-10);
    max_straddle.max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn evaluate_neglog() {
        let f = AnalyticFunction::NegLogAbs;
        assert_relative_eq!(f.evaluate(&Point::new_1d(1.0)).unwrap(), 0.0);
        assert_relative_eq!(f.evaluate(&Point::new_1d((-1.0f64).exp())).unwrap(), 1.0);
        assert!(matches!(
            f.evaluate(&Point::new_1d(0.0)),
            Err(Error::SingularEvaluation)
        ));
    }

    #[test]
    fn evaluate_gaussian_at_origin() {
        let f = AnalyticFunction::GaussianBump { a: 1.0 };
        assert_relative_eq!(f.evaluate(&Point::new_1d(0.0)).unwrap(), 1.0);
        assert_relative_eq!(f.evaluate(&Point::new_2d(0.0, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn neglog_integral_across_zero() {
        // ∫_0^b −ln x dx = b(1 − ln b).
        let f = AnalyticFunction::NegLogAbs;
        for b in [0.25, 0.5, 1.0, 2.0] {
            assert_relative_eq!(
                f.exact_integral_1d(0.0, b).unwrap(),
                b * (1.0 - b.ln()),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn power_law_integral() {
        // ∫_0^b x^{-1/2} dx = 2 √b.
        let f = AnalyticFunction::PowerLawWeight { alpha: 0.5 };
        assert_relative_eq!(f.exact_integral_1d(0.0, 4.0).unwrap(), 4.0, max_relative = 1e-14);
        assert_relative_eq!(
            f.exact_integral_1d(0.0, 0.09).unwrap(),
            0.6,
            max_relative = 1e-14
        );
    }

    #[test]
    fn constant_cell_integral() {
        let f = AnalyticFunction::Constant(3.5);
        let cell = Cell::rect(-0.5, 1.5, 0.0, 2.0);
        assert_relative_eq!(f.exact_cell_integral(&cell).unwrap(), 3.5 * 4.0);
    }

    #[test]
    fn exact_integrals_match_gauss_legendre_off_singularity() {
        // 1-D members on a cell away from the origin.
        let cases = vec![
            AnalyticFunction::NegLogAbs,
            AnalyticFunction::LogAbs,
            AnalyticFunction::PowerLawWeight { alpha: 0.5 },
            AnalyticFunction::GaussianBump { a: 0.7 },
            AnalyticFunction::BoundedSine { amplitude: 0.8, frequency: 3.0 },
            AnalyticFunction::Linear,
        ];
        for f in cases {
            let exact = f.exact_integral_1d(0.2, 1.1).unwrap();
            let gl = quadrature::integrate(
                |x| f.evaluate(&Point::new_1d(x)).unwrap(),
                0.2,
                1.1,
                30,
            );
            assert_relative_eq!(exact, gl, max_relative = 1e-10);
        }
    }

    #[test]
    fn log_box_integral_matches_quadrature_and_known_value() {
        // Known: ∫_{[0,1]²} ln(x²+y²) = ln 2 + π/2 − 3.
        let f = AnalyticFunction::LogAbs;
        let cell = Cell::rect(0.0, 1.0, 0.0, 1.0);
        let expected = 0.5 * (2.0f64.ln() + std::f64::consts::FRAC_PI_2 - 3.0);
        assert_relative_eq!(f.exact_cell_integral(&cell).unwrap(), expected, max_relative = 1e-13);

        // Cell away from the origin: compare with tensor Gauss–Legendre.
        let cell = Cell::rect(0.3, 0.9, -0.4, 0.2);
        let gl = quadrature::integrate_rect(
            |x, y| f.evaluate(&Point::new_2d(x, y)).unwrap(),
            0.3,
            0.9,
            -0.4,
            0.2,
            40,
        );
        assert_relative_eq!(f.exact_cell_integral(&cell).unwrap(), gl, max_relative = 1e-10);
    }

    #[test]
    fn gaussian_2d_cell_integral_matches_quadrature() {
        let f = AnalyticFunction::GaussianBump { a: 0.5 };
        let cell = Cell::rect(-0.7, 0.4, 0.1, 1.3);
        let gl = quadrature::integrate_rect(
            |x, y| f.evaluate(&Point::new_2d(x, y)).unwrap(),
            -0.7,
            0.4,
            0.1,
            1.3,
            30,
        );
        assert_relative_eq!(f.exact_cell_integral(&cell).unwrap(), gl, max_relative = 1e-12);
    }

    #[test]
    fn essinf_cases() {
        let f = AnalyticFunction::NegLogAbs;
        assert_relative_eq!(f.essinf_interval(0.1, 0.8).unwrap(), -(0.8f64.ln()));
        assert_relative_eq!(f.essinf_interval(-0.9, 0.3).unwrap(), -(0.9f64.ln()));
        let g = AnalyticFunction::LogAbs;
        assert!(matches!(g.essinf_interval(-0.5, 0.5), Err(Error::DivergentEssinf)));
        assert_relative_eq!(g.essinf_interval(0.25, 1.0).unwrap(), 0.25f64.ln());
    }

    #[test]
    fn sine_essinf_hits_trough() {
        let f = AnalyticFunction::BoundedSine { amplitude: 2.0, frequency: 1.0 };
        // Interval containing 3π/2 where sin = −1.
        assert_relative_eq!(f.essinf_interval(4.0, 5.0).unwrap(), -2.0);
        // Short interval without a trough: endpoint minimum.
        assert_relative_eq!(
            f.essinf_interval(0.2, 0.4).unwrap(),
            2.0 * 0.2f64.sin(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn defect_paper_cases() {
        // (0, b) gives exactly 1 for every b.
        for b in [0.1, 1.0, 7.3] {
            assert_relative_eq!(neglog_interval_defect(0.0, b).unwrap(), 1.0);
        }
        // Ratio e in the one-sided case: 1 − 1/(e − 1).
        let e = std::f64::consts::E;
        assert_relative_eq!(
            neglog_interval_defect(0.3, 0.3 * e).unwrap(),
            1.0 - 1.0 / (e - 1.0),
            max_relative = 1e-13
        );
        // Symmetric straddle (−b, b) gives exactly 1.
        for b in [0.2, 1.0, 3.0] {
            assert_relative_eq!(neglog_interval_defect(-b, b).unwrap(), 1.0);
        }
    }

    #[test]
    fn oracle_value_and_bounds() {
        let v = neglog_blo_norm_oracle();
        assert!(v > 1.0 && v <= 2.0);
        assert_relative_eq!(v, 1.2784645, epsilon = 1e-6);
    }

    #[test]
    fn oracle_matches_dense_grid() {
        let oracle = neglog_blo_norm_oracle();
        let mut best = f64::NEG_INFINITY;
        let n = 1_000_000;
        for k in 0..=n {
            let r = 1.0 * (100.0f64 / 1.0).powf(k as f64 / n as f64);
            best = best.max(1.0 + r.ln() / (1.0 + r));
        }
        assert!((oracle - best).abs() < 1e-6);
    }

    #[test]
    fn linf_norms() {
        assert_eq!(AnalyticFunction::Constant(-4.0).linf_norm(), Some(4.0));
        assert_eq!(
            AnalyticFunction::BoundedSine { amplitude: -1.5, frequency: 2.0 }.linf_norm(),
            Some(1.5)
        );
        assert_eq!(AnalyticFunction::NegLogAbs.linf_norm(), None);
    }

    #[test]
    fn minus_preserves_blo_flag() {
        let f = AnalyticFunction::NegLogAbs;
        let g = AnalyticFunction::Constant(2.0);
        let d = AnalyticFunction::minus(f, g);
        assert!(d.classification().is_blo);
    }

    proptest! {
        #[test]
        fn defect_bounds(a in -5.0f64..5.0, len in 1e-3f64..5.0) {
            let b = a + len;
            let d = neglog_interval_defect(a, b).unwrap();
            prop_assert!(d <= 2.0 + 1e-12);
            prop_assert!(d >= 0.0);
            if a >= 0.0 {
                prop_assert!(d <= 1.0 + 1e-12);
                if a > 0.0 {
                    prop_assert!(d < 1.0);
                }
            }
        }

        #[test]
        fn defect_even_symmetry(a in -4.0f64..4.0, len in 1e-3f64..4.0) {
            let b = a + len;
            let d1 = neglog_interval_defect(a, b).unwrap();
            let d2 = neglog_interval_defect(-b, -a).unwrap();
            prop_assert!((d1 - d2).abs() < 1e-12);
        }

        #[test]
        fn cell_integral_additive_1d(
            a in -2.0f64..2.0,
            len in 0.01f64..3.0,
            alpha in 0.05f64..0.95,
        ) {
            let b = a + len;
            let mid = 0.5 * (a + b);
            let kinds = vec![
                AnalyticFunction::NegLogAbs,
                AnalyticFunction::PowerLawWeight { alpha },
                AnalyticFunction::GaussianBump { a: 0.8 },
                AnalyticFunction::BoundedSine { amplitude: 1.1, frequency: 2.5 },
                AnalyticFunction::Indicator { support: Ball::from_interval(-1.0, 0.5) },
            ];
            for f in kinds {
                let whole = f.exact_integral_1d(a, b).unwrap();
                let parts =
                    f.exact_integral_1d(a, mid).unwrap() + f.exact_integral_1d(mid, b).unwrap();
                let scale = whole.abs().max(1.0);
                prop_assert!((whole - parts).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn cell_integral_additive_2d(
            x0 in -1.5f64..1.0,
            w in 0.05f64..1.5,
            y0 in -1.5f64..1.0,
            hgt in 0.05f64..1.5,
            axis in 0usize..2,
        ) {
            let cell = Cell::rect(x0, x0 + w, y0, y0 + hgt);
            let (left, right) = cell.split(axis);
            let kinds = vec![
                AnalyticFunction::NegLogAbs,
                AnalyticFunction::GaussianBump { a: 0.6 },
                AnalyticFunction::Indicator {
                    support: Ball::new(Point::new_2d(0.1, -0.2), 0.8),
                },
            ];
            for f in kinds {
                let whole = f.exact_cell_integral(&cell).unwrap();
                let parts =
                    f.exact_cell_integral(&left).unwrap() + f.exact_cell_integral(&right).unwrap();
                let scale = whole.abs().max(1.0);
                prop_assert!((whole - parts).abs() <= 1e-11 * scale);
            }
        }
    }
}

//! Lower-oscillation (BLO) and mean-oscillation (BMO) norm estimators over
//! finite ball families, the heat oscillation defect, its supremum over a
//! (center, time) product grid, and the L∞-perturbation inequality check.

use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::geometry::{Ball, Point};
use crate::grid::{mean_over_ball, sample, Domain, FieldRef, GridFunction};
use crate::heat::{apply_heat, apply_heat_grid, HeatParams, TimeGrid};
use crate::util::merge_argmax;
use rayon::prelude::*;

/// Points per axis of the lattice sampling a √t-ball when taking infima of
/// smooth heat evolutions; includes the center and the boundary.
pub const BALL_LATTICE_POINTS: usize = 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Grid,
    Exact,
}

#[derive(Clone, Debug)]
pub enum Witness {
    Ball(Ball),
    CenterTime { center: Point, t: f64 },
}

impl std::fmt::Display for Witness {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::Ball(b) => {
                write!(out, "ball(center=(")?;
                for (k, c) in b.center.coords().iter().enumerate() {
                    if k > 0 {
                        write!(out, " ")?;
                    }
                    write!(out, "{c:.12e}")?;
                }
                write!(out, ") radius={:.12e})", b.radius)
            }
            Witness::CenterTime { center, t } => {
                write!(out, "point((")?;
                for (k, c) in center.coords().iter().enumerate() {
                    if k > 0 {
                        write!(out, " ")?;
                    }
                    write!(out, "{c:.12e}")?;
                }
                write!(out, ") t={t:.12e})")
            }
        }
    }
}

/// A supremum-type estimate with the witness that achieved it.
#[derive(Clone, Debug)]
pub struct NormEstimate {
    pub value: f64,
    pub witness: Witness,
    pub ball_count: usize,
    pub time_count: usize,
    pub mode: Mode,
}

fn scan_balls(
    field: FieldRef<'_>,
    balls: &[Ball],
    defect: impl Fn(FieldRef<'_>, &Ball) -> Result<f64> + Sync,
) -> Result<NormEstimate> {
    if balls.is_empty() {
        return Err(Error::EmptyBallFamily);
    }
    let best = balls
        .par_iter()
        .enumerate()
        .map(|(i, b)| defect(field, b).map(|v| Some((i, v))))
        .try_reduce(|| None, |a, b| Ok(merge_argmax(a, b)))?;
    let (idx, value) = best.ok_or(Error::EmptyBallFamily)?;
    Ok(NormEstimate {
        value,
        witness: Witness::Ball(balls[idx]),
        ball_count: balls.len(),
        time_count: 0,
        mode: if field.is_exact() { Mode::Exact } else { Mode::Grid },
    })
}

/// Defect of a single ball: mean minus essential infimum.
pub fn ball_defect(field: FieldRef<'_>, ball: &Ball) -> Result<f64> {
    Ok(field.mean(ball)? - field.essinf(ball)?)
}

/// sup over the family of (ball mean − ball essinf). A lower bound for the
/// BLO norm; the witness ball reproduces the value on re-evaluation.
pub fn blo_norm(field: FieldRef<'_>, balls: &[Ball]) -> Result<NormEstimate> {
    scan_balls(field, balls, ball_defect)
}

/// Mean absolute deviation from the ball mean, on one ball. Grid mode only:
/// the exact route would need closed-form level crossings per member.
pub fn ball_mean_abs_deviation(g: &GridFunction, ball: &Ball) -> Result<f64> {
    let idxs = g.domain().cell_indices_in_ball(ball);
    if idxs.is_empty() {
        return Err(Error::EmptyBallSample);
    }
    let mean = mean_over_ball(g, ball)?;
    let mut acc = crate::util::CompensatedSum::new();
    for &i in &idxs {
        acc.add((g.value(i) - mean).abs());
    }
    Ok(acc.value() / idxs.len() as f64)
}

/// sup over the family of the mean absolute deviation from the ball mean.
pub fn bmo_norm(field: FieldRef<'_>, balls: &[Ball]) -> Result<NormEstimate> {
    match field {
        FieldRef::Grid(_) => scan_balls(field, balls, |f, b| match f {
            FieldRef::Grid(g) => ball_mean_abs_deviation(g, b),
            FieldRef::Analytic(_) => unreachable!(),
        }),
        FieldRef::Analytic(f) => Err(Error::UnsupportedExactIntegral {
            kind: format!("mean-absolute-deviation of {}", f.kind_name()),
            dim: 1,
        }),
    }
}

/// Uniform lattice over the closed ball B(center, r): `BALL_LATTICE_POINTS`
/// per axis including both boundary faces, clipped to the Euclidean ball;
/// always contains the center.
pub fn ball_lattice(center: &Point, radius: f64, per_axis: usize) -> Vec<Point> {
    assert!(per_axis >= 3 && per_axis % 2 == 1, "lattice needs an odd point count >= 3");
    let step = 2.0 * radius / (per_axis - 1) as f64;
    let offsets: Vec<f64> = (0..per_axis)
        .map(|k| -radius + k as f64 * step)
        .collect();
    let mut pts = Vec::new();
    match center.dim() {
        1 => {
            for &dx in &offsets {
                pts.push(Point::new_1d(center.coord(0) + dx));
            }
        }
        2 => {
            let r_sq = radius * radius * (1.0 + 1e-12);
            for &dy in &offsets {
                for &dx in &offsets {
                    if dx * dx + dy * dy <= r_sq {
                        pts.push(Point::new_2d(center.coord(0) + dx, center.coord(1) + dy));
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    pts
}

/// W_t f(x) − inf over the √t-ball lattice of W_t f. Nonnegative by
/// construction: the lattice contains x itself and the minimum reuses the
/// value computed at x.
pub fn heat_defect(f: &AnalyticFunction, x: &Point, t: f64, p: &HeatParams) -> Result<f64> {
    let at_x = apply_heat(f, x, t, p)?;
    let lattice = ball_lattice(x, t.sqrt(), BALL_LATTICE_POINTS);
    let inf = lattice
        .par_iter()
        .map(|z| {
            if z == x {
                Ok(at_x)
            } else {
                apply_heat(f, z, t, p)
            }
        })
        .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)))?;
    Ok(at_x - inf.min(at_x))
}

/// sup over the (center, time) product grid of the heat defect.
pub fn heat_blo_functional(
    f: &AnalyticFunction,
    tg: &TimeGrid,
    centers: &[Point],
    p: &HeatParams,
) -> Result<NormEstimate> {
    if centers.is_empty() {
        return Err(Error::EmptyEvaluationSet("no centers for the heat functional".into()));
    }
    let times = tg.values();
    let pairs: Vec<(usize, usize)> = (0..times.len())
        .flat_map(|ti| (0..centers.len()).map(move |ci| (ti, ci)))
        .collect();
    let best = pairs
        .par_iter()
        .enumerate()
        .map(|(rank, &(ti, ci))| {
            heat_defect(f, &centers[ci], times[ti], p).map(|v| Some((rank, v)))
        })
        .try_reduce(|| None, |a, b| Ok(merge_argmax(a, b)))?;
    let (rank, value) = best.ok_or_else(|| {
        Error::EmptyEvaluationSet("no admissible (center, time) pairs".into())
    })?;
    let (ti, ci) = pairs[rank];
    Ok(NormEstimate {
        value,
        witness: Witness::CenterTime { center: centers[ci], t: times[ti] },
        ball_count: centers.len(),
        time_count: times.len(),
        mode: Mode::Exact,
    })
}

/// Grid-path heat functional for operator outputs (no closed form): each
/// time slice is evolved by the separable grid convolution and the infimum
/// runs over grid points inside the √t-ball that are themselves valid.
pub fn heat_blo_functional_grid(
    g: &GridFunction,
    tg: &TimeGrid,
    p: &HeatParams,
) -> Result<NormEstimate> {
    let d = *g.domain();
    let mut best: Option<(f64, Point, f64)> = None; // (value, center, t)
    let mut admissible_pairs = 0usize;
    let mut times_used = 0usize;
    for &t in tg.values() {
        let evolved = match apply_heat_grid(g, t, p) {
            Ok(e) => e,
            Err(Error::GridTooCoarse { .. }) | Err(Error::TruncationExceedsDomain { .. }) => {
                continue;
            }
            Err(e) => return Err(e),
        };
        let sqrt_t = t.sqrt();
        // Centers need clearance for their own √t-ball on top of the
        // convolution margin.
        let candidates: Vec<usize> = (0..d.num_cells())
            .filter(|&i| evolved.is_valid_center(i, sqrt_t))
            .collect();
        if candidates.is_empty() {
            continue;
        }
        times_used += 1;
        admissible_pairs += candidates.len();
        let slice_best = candidates
            .par_iter()
            .map(|&i| {
                let c = d.cell_center(i);
                let ball = Ball::new(c, sqrt_t);
                let inf = d
                    .cell_indices_in_ball(&ball)
                    .iter()
                    .map(|&j| evolved.value(j))
                    .fold(f64::INFINITY, f64::min);
                Some((i, evolved.value(i) - inf.min(evolved.value(i))))
            })
            .reduce(|| None, merge_argmax);
        if let Some((i, v)) = slice_best {
            let replace = match &best {
                None => true,
                Some((bv, _, _)) => v > *bv,
            };
            if replace {
                best = Some((v, d.cell_center(i), t));
            }
        }
    }
    let (value, center, t) = best.ok_or_else(|| {
        Error::EmptyEvaluationSet(
            "no (center, time) pair admissible on the grid; enlarge the domain or shrink t"
                .into(),
        )
    })?;
    Ok(NormEstimate {
        value,
        witness: Witness::CenterTime { center, t },
        ball_count: admissible_pairs,
        time_count: times_used,
        mode: Mode::Grid,
    })
}

/// Outcome of the perturbation inequality
/// ‖f − g‖ ≤ ‖f‖ + 2‖g‖_∞ on a shared ball family.
#[derive(Clone, Debug)]
pub struct PerturbationReport {
    pub lhs: f64,
    pub blo_f: f64,
    pub linf_g: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

/// Checks the L∞-perturbation stability inequality in grid mode on the
/// shared ball family. `f` must be declared BLO and `g` bounded.
pub fn perturbation_check(
    f: &AnalyticFunction,
    g: &AnalyticFunction,
    domain: &Domain,
    balls: &[Ball],
) -> Result<PerturbationReport> {
    if !f.classification().is_blo {
        return Err(Error::Misclassified(format!(
            "{} is not declared BLO",
            f.kind_name()
        )));
    }
    if !g.classification().is_linfty {
        return Err(Error::Misclassified(format!(
            "{} is not declared bounded",
            g.kind_name()
        )));
    }
    let diff = AnalyticFunction::minus(f.clone(), g.clone());
    let diff_grid = sample(&diff, domain)?;
    let f_grid = sample(f, domain)?;
    let lhs = blo_norm(FieldRef::Grid(&diff_grid), balls)?.value;
    let blo_f = blo_norm(FieldRef::Grid(&f_grid), balls)?.value;
    let linf_g = match g.linf_norm() {
        Some(v) => v,
        None => {
            let g_grid = sample(g, domain)?;
            g_grid.values().iter().fold(0.0f64, |m, &v| m.max(v.abs()))
        }
    };
    let rhs = blo_f + 2.0 * linf_g;
    let slack = rhs - lhs;
    Ok(PerturbationReport { lhs, blo_f, linf_g, rhs, slack, holds: slack >= -1e-12 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::neglog_blo_norm_oracle;
    use crate::grid::{default_radii, enumerate_balls};
    use approx::assert_relative_eq;

    fn grid_1d(n: usize) -> Domain {
        Domain::new(1, 1.0, n).unwrap()
    }

    #[test]
    fn blo_norm_of_constant_is_zero() {
        let d = grid_1d(128);
        let g = sample(&AnalyticFunction::Constant(5.0), &d).unwrap();
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let est = blo_norm(FieldRef::Grid(&g), &balls).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.mode, Mode::Grid);
    }

    #[test]
    fn blo_norm_empty_family_errors() {
        let d = grid_1d(16);
        let g = sample(&AnalyticFunction::Constant(1.0), &d).unwrap();
        assert!(matches!(
            blo_norm(FieldRef::Grid(&g), &[]),
            Err(Error::EmptyBallFamily)
        ));
    }

    #[test]
    fn blo_norm_neglog_near_oracle() {
        let d = grid_1d(4096);
        let g = sample(&AnalyticFunction::NegLogAbs, &d).unwrap();
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let est = blo_norm(FieldRef::Grid(&g), &balls).unwrap();
        let oracle = neglog_blo_norm_oracle();
        assert!(
            (est.value - oracle).abs() / oracle < 0.02,
            "estimate {} vs oracle {oracle}",
            est.value
        );
    }

    #[test]
    fn blo_norm_exact_mode_neglog() {
        let d = grid_1d(1024);
        let f = AnalyticFunction::NegLogAbs;
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let est = blo_norm(FieldRef::Analytic(&f), &balls).unwrap();
        assert_eq!(est.mode, Mode::Exact);
        let oracle = neglog_blo_norm_oracle();
        assert!((est.value - oracle).abs() / oracle < 0.02);
        // The witness reproduces the value exactly.
        if let Witness::Ball(b) = est.witness {
            let again = ball_defect(FieldRef::Analytic(&f), &b).unwrap();
            assert!((again - est.value).abs() <= 1e-12);
        } else {
            panic!("ball witness expected");
        }
    }

    #[test]
    fn indicator_defect_is_discrete_overlap_fraction() {
        let d = grid_1d(512);
        let support = Ball::from_interval(-0.25, 0.25);
        let f = AnalyticFunction::Indicator { support };
        let g = sample(&f, &d).unwrap();
        let mut radii = default_radii(&d);
        radii.push(0.28125); // slightly larger than the support
        let balls = enumerate_balls(&d, &radii, 0.0).unwrap();
        let est = blo_norm(FieldRef::Grid(&g), &balls).unwrap();
        assert!(est.value > 0.0 && est.value <= 1.0);
        if let Witness::Ball(b) = est.witness {
            let idxs = d.cell_indices_in_ball(&b);
            let inside = idxs
                .iter()
                .filter(|&&i| support.contains(&d.cell_center(i)))
                .count();
            let frac = inside as f64 / idxs.len() as f64;
            // At the witness the defect is the discrete overlap fraction
            // (the minimum over the ball is 0 there).
            assert_relative_eq!(est.value, frac, epsilon = 1e-12);
        }
    }

    #[test]
    fn bmo_equal_for_log_and_neglog() {
        let d = grid_1d(1024);
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let g1 = sample(&AnalyticFunction::NegLogAbs, &d).unwrap();
        let g2 = sample(&AnalyticFunction::LogAbs, &d).unwrap();
        let b1 = bmo_norm(FieldRef::Grid(&g1), &balls).unwrap();
        let b2 = bmo_norm(FieldRef::Grid(&g2), &balls).unwrap();
        assert_relative_eq!(b1.value, b2.value, max_relative = 1e-12);
    }

    #[test]
    fn bmo_at_most_twice_blo_on_blo_family() {
        let d = grid_1d(1024);
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let family = vec![
            AnalyticFunction::NegLogAbs,
            AnalyticFunction::Constant(2.0),
            AnalyticFunction::GaussianBump { a: 0.3 },
            AnalyticFunction::BoundedSine { amplitude: 1.0, frequency: 4.0 },
            AnalyticFunction::Indicator { support: Ball::from_interval(-0.3, 0.1) },
        ];
        for f in family {
            let g = sample(&f, &d).unwrap();
            let blo = blo_norm(FieldRef::Grid(&g), &balls).unwrap().value;
            let bmo = bmo_norm(FieldRef::Grid(&g), &balls).unwrap().value;
            assert!(
                bmo <= 2.0 * blo + 1e-12,
                "{}: bmo {bmo} > 2 blo {blo}",
                f.kind_name()
            );
        }
    }

    #[test]
    fn blo_invariance_under_constant_shift_and_scaling() {
        let d = grid_1d(512);
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let f = AnalyticFunction::NegLogAbs;
        let g0 = sample(&f, &d).unwrap();
        let base = blo_norm(FieldRef::Grid(&g0), &balls).unwrap().value;

        let shifted = sample(
            &AnalyticFunction::sum(f.clone(), AnalyticFunction::Constant(7.5)),
            &d,
        )
        .unwrap();
        let with_const = blo_norm(FieldRef::Grid(&shifted), &balls).unwrap().value;
        assert_relative_eq!(base, with_const, max_relative = 1e-12);

        let scaled = sample(&AnalyticFunction::scaled(f, 3.0), &d).unwrap();
        let tripled = blo_norm(FieldRef::Grid(&scaled), &balls).unwrap().value;
        assert_relative_eq!(tripled, 3.0 * base, max_relative = 1e-12);
    }

    #[test]
    fn blo_invariant_under_translation_of_function_and_family() {
        let d = grid_1d(512);
        let h = d.spacing();
        let shift = 8.0 * h;
        let f = AnalyticFunction::NegLogAbs;
        let balls = enumerate_balls(&d, &[0.125, 0.25], 0.0).unwrap();
        let base = blo_norm(FieldRef::Analytic(&f), &balls).unwrap().value;

        let moved = AnalyticFunction::shifted(f, Point::new_1d(shift));
        let moved_balls: Vec<Ball> = balls
            .iter()
            .map(|b| Ball::new(Point::new_1d(b.center.coord(0) + shift), b.radius))
            .collect();
        let translated = blo_norm(FieldRef::Analytic(&moved), &moved_balls).unwrap().value;
        assert_relative_eq!(base, translated, max_relative = 1e-10);
    }

    #[test]
    fn divergence_scan_for_log_abs() {
        // Intervals approaching the singularity from the right: the defect
        // of +ln|x| grows like ln k and is strictly increasing.
        let f = AnalyticFunction::LogAbs;
        let mut prev = f64::NEG_INFINITY;
        let mut k = 2usize;
        while k <= 1 << 10 {
            let ball = Ball::from_interval(1.0 / k as f64, 1.0);
            let v = ball_defect(FieldRef::Analytic(&f), &ball).unwrap();
            assert!(v > prev, "defect not increasing at k={k}");
            prev = v;
            k *= 2;
        }
        assert!(prev > 5.0, "defect at k=1024 is {prev}, expected > 5");
        // Closed-form growth: (−1 + a − ln a)/(1 − a) with a = 1/k.
        let a: f64 = 1.0 / 1024.0;
        let expected = (-1.0 + a - a.ln()) / (1.0 - a);
        assert_relative_eq!(prev, expected, max_relative = 1e-12);
    }

    #[test]
    fn log_abs_essinf_diverges_on_straddling_interval() {
        let f = AnalyticFunction::LogAbs;
        let ball = Ball::from_interval(-0.5, 1.0);
        assert!(matches!(
            ball_defect(FieldRef::Analytic(&f), &ball),
            Err(Error::DivergentEssinf)
        ));
    }

    #[test]
    fn heat_defect_nonnegative_and_zero_for_constant() {
        let p = HeatParams::default();
        let c = AnalyticFunction::Constant(4.0);
        let v = heat_defect(&c, &Point::new_1d(0.2), 0.3, &p).unwrap();
        assert!(v >= 0.0 && v < 1e-12);
    }

    #[test]
    fn heat_defect_bounded_for_bounded_function() {
        let p = HeatParams::default();
        let f = AnalyticFunction::BoundedSine { amplitude: 0.7, frequency: 3.0 };
        for &t in &[0.02, 0.4] {
            let v = heat_defect(&f, &Point::new_1d(0.1), t, &p).unwrap();
            assert!(v >= 0.0 && v <= 2.0 * 0.7 + 1e-9);
        }
    }

    #[test]
    fn heat_defect_neglog_at_origin_independent_of_t() {
        // Scaling kills the additive log constant in the defect.
        let p = HeatParams::default();
        let f = AnalyticFunction::NegLogAbs;
        let x = Point::new_1d(0.0);
        let vals: Vec<f64> = [0.001, 0.01, 0.1, 1.0]
            .iter()
            .map(|&t| heat_defect(&f, &x, t, &p).unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!((w[0] - w[1]).abs() < 1e-4, "defects {vals:?}");
        }
    }

    #[test]
    fn heat_functional_witness_reproduces_value() {
        let p = HeatParams::default();
        let f = AnalyticFunction::NegLogAbs;
        let tg = TimeGrid::new(0.01, 1.0, 4).unwrap();
        let centers: Vec<Point> = vec![
            Point::new_1d(0.0),
            Point::new_1d(0.05),
            Point::new_1d(0.3),
        ];
        let est = heat_blo_functional(&f, &tg, &centers, &p).unwrap();
        assert!(est.value.is_finite() && est.value > 0.0);
        if let Witness::CenterTime { center, t } = &est.witness {
            let again = heat_defect(&f, center, *t, &p).unwrap();
            assert!((again - est.value).abs() <= 1e-12);
        } else {
            panic!("center/time witness expected");
        }
    }

    #[test]
    fn grid_heat_functional_runs_on_operator_output() {
        let d = Domain::new(1, 1.0, 256).unwrap();
        let f = AnalyticFunction::GaussianBump { a: 0.01 };
        let g = sample(&f, &d).unwrap();
        let tg = TimeGrid::new(1e-4, 1e-3, 5).unwrap();
        let p = HeatParams::default();
        let est = heat_blo_functional_grid(&g, &tg, &p).unwrap();
        assert!(est.value > 0.0);
        assert_eq!(est.mode, Mode::Grid);
    }

    #[test]
    fn perturbation_constant_shift_is_tight() {
        let d = grid_1d(512);
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let f = AnalyticFunction::NegLogAbs;
        let g = AnalyticFunction::Constant(1.5);
        let rep = perturbation_check(&f, &g, &d, &balls).unwrap();
        assert!(rep.holds);
        // Constants shift mean and infimum equally: lhs equals blo(f).
        assert_relative_eq!(rep.lhs, rep.blo_f, max_relative = 1e-12);
        assert_relative_eq!(rep.slack, 2.0 * 1.5, max_relative = 1e-12);
    }

    #[test]
    fn perturbation_with_sine() {
        let d = grid_1d(512);
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let f = AnalyticFunction::NegLogAbs;
        let g = AnalyticFunction::BoundedSine { amplitude: 0.5, frequency: 3.0 };
        let rep = perturbation_check(&f, &g, &d, &balls).unwrap();
        assert!(rep.holds && rep.slack >= 0.0);
    }

    #[test]
    fn perturbation_rejects_misclassified() {
        let d = grid_1d(64);
        let balls = enumerate_balls(&d, &default_radii(&d), 0.0).unwrap();
        let not_blo = AnalyticFunction::LogAbs;
        let g = AnalyticFunction::Constant(0.0);
        assert!(matches!(
            perturbation_check(&not_blo, &g, &d, &balls),
            Err(Error::Misclassified(_))
        ));
        let f = AnalyticFunction::NegLogAbs;
        assert!(matches!(
            perturbation_check(&f, &AnalyticFunction::LogAbs, &d, &balls),
            Err(Error::Misclassified(_))
        ));
    }

    #[test]
    fn ball_lattice_contains_center_and_boundary() {
        let pts = ball_lattice(&Point::new_1d(0.5), 0.2, BALL_LATTICE_POINTS);
        assert_eq!(pts.len(), BALL_LATTICE_POINTS);
        assert!(pts.iter().any(|p| (p.coord(0) - 0.5).abs() < 1e-15));
        assert!(pts.iter().any(|p| (p.coord(0) - 0.3).abs() < 1e-15));
        assert!(pts.iter().any(|p| (p.coord(0) - 0.7).abs() < 1e-15));

        let pts2 = ball_lattice(&Point::new_2d(0.0, 0.0), 1.0, BALL_LATTICE_POINTS);
        assert!(pts2.iter().any(|p| p.norm() < 1e-15));
        assert!(pts2.iter().all(|p| p.norm() <= 1.0 + 1e-9));
        assert!(pts2.len() > BALL_LATTICE_POINTS * BALL_LATTICE_POINTS / 2);
    }
}

//! Heat-equation solution slices via the semigroup, and the regularity and
//! oscillation defect checks for lower-oscillation initial data.

use crate::analytic::AnalyticFunction;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::grid::{Domain, GridFunction, Provenance};
use crate::heat::{apply_heat, HeatParams};
use crate::norms::{ball_lattice, heat_defect, BALL_LATTICE_POINTS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// u(·, t) = W_t f for one fixed t, on a grid.
#[derive(Clone, Debug)]
pub struct HeatSolutionSlice {
    pub initial: AnalyticFunction,
    pub time: f64,
    pub values: GridFunction,
}

/// Evaluates the solution slice by pointwise semigroup quadrature; every
/// entry is valid (analytic tails are integrated, not clipped).
pub fn solve_heat(
    f: &AnalyticFunction,
    t: f64,
    domain: &Domain,
    p: &HeatParams,
) -> Result<HeatSolutionSlice> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let values: Vec<f64> = (0..domain.num_cells())
        .into_par_iter()
        .map(|i| apply_heat(f, &domain.cell_center(i), t, p))
        .collect::<Result<_>>()?;
    Ok(HeatSolutionSlice {
        initial: f.clone(),
        time: t,
        values: GridFunction::new(
            *domain,
            values,
            Provenance::Operator { name: format!("heat_solution(t={t:.6e})"), valid_margin: 0.0 },
        )?,
    })
}

/// u(x, t) − inf over the √t-ball of u(·, t): identical to the heat defect
/// by construction (the solution is the semigroup).
pub fn regularity_defect(
    f: &AnalyticFunction,
    x: &Point,
    t: f64,
    p: &HeatParams,
) -> Result<f64> {
    heat_defect(f, x, t, p)
}

/// sup − inf of u(·, t) over the √t-ball lattice around x0.
pub fn oscillation(f: &AnalyticFunction, x0: &Point, t: f64, p: &HeatParams) -> Result<f64> {
    let lattice = ball_lattice(x0, t.sqrt(), BALL_LATTICE_POINTS);
    let vals: Vec<f64> = lattice
        .par_iter()
        .map(|z| apply_heat(f, z, t, p))
        .collect::<Result<_>>()?;
    let max = vals.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let min = vals.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    Ok(max - min)
}

/// Result of the midpoint comparison chain on random point pairs.
#[derive(Clone, Debug)]
pub struct PairCheckReport {
    pub pairs: usize,
    /// max over pairs of |u(x) − u(z)| − max(defect(x), defect(z)), where z
    /// is the pair midpoint and each defect's sample set includes the other
    /// point; nonpositive up to quadrature noise.
    pub max_violation: f64,
}

/// Samples `pairs` point pairs inside B(x0, √t), takes each pair's midpoint
/// z, and checks |u(x,t) − u(z,t)| against the regularity defects at x and
/// z (with the partner value adjoined to the infimum sample set).
pub fn comparison_chain_check(
    f: &AnalyticFunction,
    x0: &Point,
    t: f64,
    p: &HeatParams,
    pairs: usize,
    seed: u64,
) -> Result<PairCheckReport> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let r = t.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = x0.dim();
    let sample_point = |rng: &mut ChaCha8Rng| -> Point {
        // Rejection sampling in the ball.
        loop {
            let mut c = [0.0f64; 2];
            let mut norm_sq = 0.0;
            for slot in c.iter_mut().take(dim) {
                let u: f64 = rng.gen_range(-1.0..1.0);
                *slot = u;
                norm_sq += u * u;
            }
            if norm_sq <= 1.0 {
                let coords: Vec<f64> =
                    (0..dim).map(|k| x0.coord(k) + r * c[k]).collect();
                return Point::from_slice(&coords);
            }
        }
    };
    let point_pairs: Vec<(Point, Point)> = (0..pairs)
        .map(|_| (sample_point(&mut rng), sample_point(&mut rng)))
        .collect();

    let max_violation = point_pairs
        .par_iter()
        .map(|(x, y)| -> Result<f64> {
            let z = Point::midpoint(x, y);
            let ux = apply_heat(f, x, t, p)?;
            let uz = apply_heat(f, &z, t, p)?;
            // defect at x with z adjoined to the sample set, and vice versa.
            let defect_with = |center: &Point, own: f64, partner: f64| -> Result<f64> {
                let lattice = ball_lattice(center, r, BALL_LATTICE_POINTS);
                let mut inf = own.min(partner);
                for q in &lattice {
                    inf = inf.min(apply_heat(f, q, t, p)?);
                }
                Ok(own - inf)
            };
            let dx = defect_with(x, ux, uz)?;
            let dz = defect_with(&z, uz, ux)?;
            Ok((ux - uz).abs() - dx.max(dz))
        })
        .try_reduce(|| f64::NEG_INFINITY, |a, b| Ok(a.max(b)))?;

    Ok(PairCheckReport { pairs, max_violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn p() -> HeatParams {
        HeatParams::default()
    }

    #[test]
    fn constant_solution_is_constant() {
        let d = Domain::new(1, 1.0, 64).unwrap();
        let slice = solve_heat(&AnalyticFunction::Constant(2.0), 0.3, &d, &p()).unwrap();
        for i in 0..d.num_cells() {
            assert_relative_eq!(slice.values.value(i), 2.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn gaussian_slice_matches_closed_form() {
        let a = 0.4;
        let d = Domain::new(1, 1.0, 128).unwrap();
        let t = 0.2;
        let slice = solve_heat(&AnalyticFunction::GaussianBump { a }, t, &d, &p()).unwrap();
        for &i in &[0usize, 31, 64, 100] {
            let x = d.cell_center(i).coord(0);
            let want = (a / (a + t)).sqrt() * (-x * x / (4.0 * (a + t))).exp();
            assert_relative_eq!(slice.values.value(i), want, max_relative = 1e-8);
        }
    }

    #[test]
    fn finite_difference_residual_of_heat_equation() {
        // (u(t+δ) − u(t−δ))/(2δ) vs the discrete Laplacian of u(·, t):
        // both sides approximate ∂_t u = Δu within O(δ² + h²).
        let d = Domain::new(1, 1.0, 256).unwrap();
        let h = d.spacing();
        let f = AnalyticFunction::GaussianBump { a: 0.05 };
        let t = 0.02;
        let delta = 1e-3 * t;
        let up = solve_heat(&f, t + delta, &d, &p()).unwrap().values;
        let dn = solve_heat(&f, t - delta, &d, &p()).unwrap().values;
        let mid = solve_heat(&f, t, &d, &p()).unwrap().values;
        let mut worst = 0.0f64;
        for i in 1..d.num_cells() - 1 {
            let dt = (up.value(i) - dn.value(i)) / (2.0 * delta);
            let lap = (mid.value(i - 1) - 2.0 * mid.value(i) + mid.value(i + 1)) / (h * h);
            worst = worst.max((dt - lap).abs());
        }
        // The h² Laplacian truncation dominates: |u''''| ~ 1/(a+t)² scale.
        assert!(worst < 5.0 * h * h / (0.05f64 + t).powi(2), "residual {worst}");
    }

    #[test]
    fn maximum_principle_for_bounded_data() {
        let d = Domain::new(1, 1.0, 128).unwrap();
        let f = AnalyticFunction::BoundedSine { amplitude: 0.9, frequency: 5.0 };
        for &t in &[0.01, 0.1, 1.0] {
            let slice = solve_heat(&f, t, &d, &p()).unwrap();
            for i in 0..d.num_cells() {
                let v = slice.values.value(i);
                assert!(v >= -0.9 - 1e-9 && v <= 0.9 + 1e-9);
            }
        }
    }

    #[test]
    fn regularity_defect_nonnegative_and_matches_heat_defect() {
        let f = AnalyticFunction::NegLogAbs;
        let x = Point::new_1d(0.12);
        let t = 0.05;
        let d1 = regularity_defect(&f, &x, t, &p()).unwrap();
        let d2 = heat_defect(&f, &x, t, &p()).unwrap();
        assert!(d1 >= 0.0);
        assert_eq!(d1, d2);
    }

    #[test]
    fn oscillation_dominates_defect_at_center() {
        let f = AnalyticFunction::NegLogAbs;
        let x = Point::new_1d(0.07);
        let t = 0.03;
        let osc = oscillation(&f, &x, t, &p()).unwrap();
        let defect = regularity_defect(&f, &x, t, &p()).unwrap();
        assert!(osc >= defect - 1e-12, "osc {osc} < defect {defect}");
    }

    #[test]
    fn oscillation_bounded_by_twice_max_defect() {
        // Triangle route: the oscillation over the ball is at most twice the
        // largest defect over points of the ball (midpoint construction).
        let f = AnalyticFunction::NegLogAbs;
        let x0 = Point::new_1d(0.1);
        let t = 0.04;
        let osc = oscillation(&f, &x0, t, &p()).unwrap();
        let r = t.sqrt();
        let max_defect = ball_lattice(&x0, r, BALL_LATTICE_POINTS)
            .iter()
            .map(|z| regularity_defect(&f, z, t, &p()).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            osc <= 2.0 * max_defect + 1e-9,
            "osc {osc} vs 2*max defect {max_defect}"
        );
    }

    #[test]
    fn comparison_chain_on_seeded_pairs() {
        let f = AnalyticFunction::NegLogAbs;
        let rep = comparison_chain_check(
            &f,
            &Point::new_1d(0.15),
            0.02,
            &p(),
            200,
            0,
        )
        .unwrap();
        assert_eq!(rep.pairs, 200);
        assert!(
            rep.max_violation <= 1e-9,
            "chain violation {}",
            rep.max_violation
        );
    }

    #[test]
    fn comparison_chain_is_seed_deterministic() {
        let f = AnalyticFunction::GaussianBump { a: 0.2 };
        let a = comparison_chain_check(&f, &Point::new_1d(0.0), 0.05, &p(), 50, 7).unwrap();
        let b = comparison_chain_check(&f, &Point::new_1d(0.0), 0.05, &p(), 50, 7).unwrap();
        assert_eq!(a.max_violation, b.max_violation);
    }
}

//! Small numeric helpers: compensated summation, log-spaced grids,
//! scalar maximization.

/// Neumaier compensated accumulator. Deterministic for a fixed input order.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Log-spaced grid from `lo` to `hi` inclusive, with `points_per_decade`
/// controlling the density. Always contains both endpoints.
pub fn log_spaced(lo: f64, hi: f64, points_per_decade: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && points_per_decade >= 1);
    let decades = (hi / lo).log10();
    let m = ((decades * points_per_decade as f64).round() as usize).max(1);
    let ratio = hi / lo;
    (0..=m).map(|k| lo * ratio.powf(k as f64 / m as f64)).collect()
}

/// Golden-section maximization of a unimodal scalar function on [lo, hi].
/// Returns (argmax, max). `tol` is the absolute tolerance on the argument.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    assert!(lo < hi && tol > 0.0);
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Deterministic argmax over an indexed iterator of finite values: the
/// largest value wins, the lowest index breaks ties. Panics on NaN.
pub fn argmax_indexed<I: Iterator<Item = (usize, f64)>>(iter: I) -> Option<(usize, f64)> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in iter {
        assert!(!v.is_nan(), "NaN reached a sup-reduction");
        best = match best {
            None => Some((i, v)),
            Some((bi, bv)) => {
                if v > bv || (v == bv && i < bi) {
                    Some((i, v))
                } else {
                    Some((bi, bv))
                }
            }
        };
    }
    best
}

/// Combines two optional argmax candidates with the same tie-break rule;
/// usable as a rayon reduction operator.
pub fn merge_argmax(
    a: Option<(usize, f64)>,
    b: Option<(usize, f64)>,
) -> Option<(usize, f64)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((ia, va)), Some((ib, vb))) => {
            if va > vb || (va == vb && ia < ib) {
                Some((ia, va))
            } else {
                Some((ib, vb))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn compensated_sum_beats_naive() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10_000 {
            s.add(1e-18);
        }
        assert_relative_eq!(s.value(), 1.0 + 1e-14, epsilon = 1e-20);
    }

    #[test]
    fn log_spaced_endpoints() {
        let g = log_spaced(1e-2, 1e1, 10);
        assert_relative_eq!(g[0], 1e-2);
        assert_relative_eq!(*g.last().unwrap(), 1e1, max_relative = 1e-14);
        assert_eq!(g.len(), 31);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        // Argument precision for a smooth maximum saturates near sqrt(eps);
        // the value is quadratically better.
        let (x, v) = golden_section_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 2.0, 1e-12);
        assert_relative_eq!(x, 0.3, epsilon = 1e-6);
        assert_relative_eq!(v, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn argmax_tie_break_is_lowest_index() {
        let vals = vec![(0, 1.0), (1, 3.0), (2, 3.0), (3, 2.0)];
        assert_eq!(argmax_indexed(vals.into_iter()), Some((1, 3.0)));
    }
}

//! Reference Gauss–Legendre quadrature.
//!
//! This is the independent high-order integrator used to validate closed-form
//! cell integrals and square-function values. It shares no code with the
//! midpoint/exact-cell quadrature of the heat engine.

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial from Chebyshev initial guesses.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Initial guess: Chebyshev points, good to a few percent.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // Nodes come out descending; flip to ascending for readability.
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Integrates `f` over [a, b] with an `n`-point Gauss–Legendre rule.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(&weights) {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Composite rule: [a, b] split into `panels` equal panels, `n` points each.
pub fn integrate_composite<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    n: usize,
    panels: usize,
) -> f64 {
    assert!(panels >= 1);
    let (nodes, weights) = gauss_legendre(n);
    let width = (b - a) / panels as f64;
    let mut acc = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let half = 0.5 * width;
        let mid = lo + half;
        for (x, w) in nodes.iter().zip(&weights) {
            acc += w * f(mid + half * x);
        }
    }
    acc * 0.5 * width
}

/// Tensor-product rule over a rectangle.
pub fn integrate_rect<F: Fn(f64, f64) -> f64>(
    f: F,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    n: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(n);
    let hx = 0.5 * (x1 - x0);
    let mx = 0.5 * (x0 + x1);
    let hy = 0.5 * (y1 - y0);
    let my = 0.5 * (y0 + y1);
    let mut acc = 0.0;
    for (xi, wi) in nodes.iter().zip(&weights) {
        for (yj, wj) in nodes.iter().zip(&weights) {
            acc += wi * wj * f(mx + hx * xi, my + hy * yj);
        }
    }
    acc * hx * hy
}

//! Points, balls, and axis-aligned cells in dimension 1 or 2.

/// Maximum supported spatial dimension.
pub const MAX_DIM: usize = 2;

/// A point of ℝⁿ for n ∈ {1, 2}, stored inline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    coords: [f64; MAX_DIM],
    dim: usize,
}

impl Point {
    pub fn new_1d(x: f64) -> Self {
        Point { coords: [x, 0.0], dim: 1 }
    }

    pub fn new_2d(x: f64, y: f64) -> Self {
        Point { coords: [x, y], dim: 2 }
    }

    /// Builds a point from a slice of length 1 or 2.
    pub fn from_slice(coords: &[f64]) -> Self {
        assert!(
            coords.len() >= 1 && coords.len() <= MAX_DIM,
            "point dimension must be 1 or 2, got {}",
            coords.len()
        );
        let mut c = [0.0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Point { coords: c, dim: coords.len() }
    }

    pub fn origin(dim: usize) -> Self {
        Self::from_slice(&vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.dim]
    }

    pub fn coord(&self, axis: usize) -> f64 {
        debug_assert!(axis < self.dim);
        self.coords[axis]
    }

    pub fn dist_sq(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut s = 0.0;
        for k in 0..self.dim {
            let d = self.coords[k] - other.coords[k];
            s += d * d;
        }
        s
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn norm(&self) -> f64 {
        self.dist(&Point::origin(self.dim))
    }

    pub fn midpoint(a: &Point, b: &Point) -> Point {
        debug_assert_eq!(a.dim, b.dim);
        let mut c = [0.0; MAX_DIM];
        for k in 0..a.dim {
            c[k] = 0.5 * (a.coords[k] + b.coords[k]);
        }
        Point { coords: c, dim: a.dim }
    }

    pub fn translated(&self, offset: &Point) -> Point {
        debug_assert_eq!(self.dim, offset.dim);
        let mut c = [0.0; MAX_DIM];
        for k in 0..self.dim {
            c[k] = self.coords[k] + offset.coords[k];
        }
        Point { coords: c, dim: self.dim }
    }
}

/// A closed Euclidean ball; in dimension 1 this is the interval
/// [center − radius, center + radius].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Self {
        assert!(radius > 0.0, "ball radius must be positive, got {radius}");
        Ball { center, radius }
    }

    /// The interval (a, b) viewed as a 1-D ball.
    pub fn from_interval(a: f64, b: f64) -> Self {
        assert!(a < b, "interval endpoints must satisfy a < b, got ({a}, {b})");
        Ball::new(Point::new_1d(0.5 * (a + b)), 0.5 * (b - a))
    }

    /// Interval endpoints (1-D only).
    pub fn interval(&self) -> (f64, f64) {
        assert_eq!(self.center.dim(), 1, "interval() requires a 1-D ball");
        let c = self.center.coord(0);
        (c - self.radius, c + self.radius)
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dist_sq(&self.center) <= self.radius * self.radius
    }

    pub fn volume(&self) -> f64 {
        match self.dim() {
            1 => 2.0 * self.radius,
            2 => std::f64::consts::PI * self.radius * self.radius,
            _ => unreachable!(),
        }
    }
}

/// An axis-aligned box (an interval in 1-D, a rectangle in 2-D).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    lo: [f64; MAX_DIM],
    hi: [f64; MAX_DIM],
    dim: usize,
}

impl Cell {
    pub fn interval(a: f64, b: f64) -> Self {
        assert!(a < b);
        Cell { lo: [a, 0.0], hi: [b, 0.0], dim: 1 }
    }

    pub fn rect(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        assert!(x0 < x1 && y0 < y1);
        Cell { lo: [x0, y0], hi: [x1, y1], dim: 2 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lo(&self, axis: usize) -> f64 {
        debug_assert!(axis < self.dim);
        self.lo[axis]
    }

    pub fn hi(&self, axis: usize) -> f64 {
        debug_assert!(axis < self.dim);
        self.hi[axis]
    }

    pub fn measure(&self) -> f64 {
        let mut m = 1.0;
        for k in 0..self.dim {
            m *= self.hi[k] - self.lo[k];
        }
        m
    }

    pub fn center(&self) -> Point {
        let mut c = [0.0; MAX_DIM];
        for k in 0..self.dim {
            c[k] = 0.5 * (self.lo[k] + self.hi[k]);
        }
        Point { coords: c, dim: self.dim }
    }

    /// Closed containment test.
    pub fn contains(&self, p: &Point) -> bool {
        debug_assert_eq!(self.dim, p.dim());
        (0..self.dim).all(|k| self.lo[k] <= p.coord(k) && p.coord(k) <= self.hi[k])
    }

    pub fn translated(&self, offset: &Point) -> Cell {
        debug_assert_eq!(self.dim, offset.dim());
        let mut lo = self.lo;
        let mut hi = self.hi;
        for k in 0..self.dim {
            lo[k] += offset.coord(k);
            hi[k] += offset.coord(k);
        }
        Cell { lo, hi, dim: self.dim }
    }

    /// Splits the cell into two halves along the given axis.
    pub fn split(&self, axis: usize) -> (Cell, Cell) {
        debug_assert!(axis < self.dim);
        let mid = 0.5 * (self.lo[axis] + self.hi[axis]);
        let mut a = *self;
        let mut b = *self;
        a.hi[axis] = mid;
        b.lo[axis] = mid;
        (a, b)
    }
}

/// Area of the intersection of a disk with an axis-aligned box.
///
/// Walks the box boundary counterclockwise accumulating the Green's-theorem
/// line integral, substituting circular-arc contributions where an edge
/// segment lies outside the disk.
pub fn disk_box_area(center: &Point, radius: f64, cell: &Cell) -> f64 {
    assert_eq!(cell.dim(), 2);
    assert!(radius > 0.0);
    let (cx, cy) = (center.coord(0), center.coord(1));
    // Box corners relative to the disk center, counterclockwise.
    let corners = [
        (cell.lo(0) - cx, cell.lo(1) - cy),
        (cell.hi(0) - cx, cell.lo(1) - cy),
        (cell.hi(0) - cx, cell.hi(1) - cy),
        (cell.lo(0) - cx, cell.hi(1) - cy),
    ];
    let mut area = 0.0;
    for i in 0..4 {
        area += disk_edge_term(corners[i], corners[(i + 1) % 4], radius);
    }
    area.clamp(0.0, cell.measure().min(std::f64::consts::PI * radius * radius))
}

fn disk_edge_term(p: (f64, f64), q: (f64, f64), r: f64) -> f64 {
    let d = (q.0 - p.0, q.1 - p.1);
    let a = d.0 * d.0 + d.1 * d.1;
    if a == 0.0 {
        return 0.0;
    }
    let b = 2.0 * (p.0 * d.0 + p.1 * d.1);
    let c = p.0 * p.0 + p.1 * p.1 - r * r;
    let mut ts = vec![0.0];
    let disc = b * b - 4.0 * a * c;
    if disc > 0.0 {
        let sq = disc.sqrt();
        for t in [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)] {
            if t > 0.0 && t < 1.0 {
                ts.push(t);
            }
        }
    }
    ts.push(1.0);
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap());

    let at = |t: f64| (p.0 + t * d.0, p.1 + t * d.1);
    let mut term = 0.0;
    for w in ts.windows(2) {
        let u = at(w[0]);
        let v = at(w[1]);
        let m = at(0.5 * (w[0] + w[1]));
        let cross = u.0 * v.1 - u.1 * v.0;
        if m.0 * m.0 + m.1 * m.1 <= r * r {
            // Straight piece inside the disk.
            term += 0.5 * cross;
        } else {
            // Replace the outside piece by the arc between the endpoint rays.
            let dot = u.0 * v.0 + u.1 * v.1;
            term += 0.5 * r * r * cross.atan2(dot);
        }
    }
    term
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn point_distance() {
        let a = Point::new_2d(1.0, 2.0);
        let b = Point::new_2d(4.0, 6.0);
        assert_relative_eq!(a.dist(&b), 5.0);
    }

    #[test]
    fn ball_contains_boundary() {
        let b = Ball::new(Point::new_1d(0.5), 0.25);
        assert!(b.contains(&Point::new_1d(0.75)));
        assert!(!b.contains(&Point::new_1d(0.7500001)));
    }

    #[test]
    fn cell_split_preserves_measure() {
        let c = Cell::rect(-1.0, 2.0, 0.0, 1.0);
        let (a, b) = c.split(0);
        assert_relative_eq!(a.measure() + b.measure(), c.measure());
    }

    #[test]
    fn disk_inside_box() {
        let cell = Cell::rect(-2.0, 2.0, -2.0, 2.0);
        let area = disk_box_area(&Point::new_2d(0.1, -0.2), 1.0, &cell);
        assert_relative_eq!(area, PI, epsilon = 1e-12);
    }

    #[test]
    fn box_inside_disk() {
        let cell = Cell::rect(-0.5, 0.5, -0.25, 0.25);
        let area = disk_box_area(&Point::new_2d(0.0, 0.0), 3.0, &cell);
        assert_relative_eq!(area, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn half_disk() {
        // Box covering exactly the right half-plane portion of the disk.
        let cell = Cell::rect(0.0, 10.0, -10.0, 10.0);
        let area = disk_box_area(&Point::new_2d(0.0, 0.0), 2.0, &cell);
        assert_relative_eq!(area, 0.5 * PI * 4.0, epsilon = 1e-10);
    }

    #[test]
    fn quarter_disk() {
        let cell = Cell::rect(0.0, 5.0, 0.0, 5.0);
        let area = disk_box_area(&Point::new_2d(0.0, 0.0), 1.5, &cell);
        assert_relative_eq!(area, 0.25 * PI * 2.25, epsilon = 1e-10);
    }

    #[test]
    fn disk_box_area_matches_fine_grid() {
        // Midpoint-counting oracle on a fine lattice.
        let cell = Cell::rect(-0.3, 0.9, -0.1, 0.7);
        let center = Point::new_2d(0.2, 0.15);
        let r = 0.55;
        let n = 2000;
        let hx = (0.9 + 0.3) / n as f64;
        let hy = (0.7 + 0.1) / n as f64;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let x = -0.3 + (i as f64 + 0.5) * hx;
                let y = -0.1 + (j as f64 + 0.5) * hy;
                if (x - 0.2).powi(2) + (y - 0.15).powi(2) <= r * r {
                    acc += hx * hy;
                }
            }
        }
        let area = disk_box_area(&center, r, &cell);
        assert_relative_eq!(area, acc, epsilon = 1e-3);
    }
}

use crate::error::{Error, Result};
use crate::quadrature::integrate_samples;
use crate::quantum::Kind;
use crate::scalar::Real;

/// Sampled radial pair `(u, v)` on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution<T> {
    pub grid: Vec<T>,
    pub u: Vec<T>,
    pub v: Vec<T>,
    pub energy: T,
    pub kind: Kind,
    pub l: u32,
    pub normalized: bool,
    /// Closed-form amplitude, when the solution came from a formula.
    pub norm_constant: Option<T>,
}

impl<T: Real> RadialSolution<T> {
    pub fn new(grid: Vec<T>, u: Vec<T>, v: Vec<T>, energy: T, kind: Kind, l: u32) -> Result<Self> {
        if grid.len() != u.len() || grid.len() != v.len() {
            return Err(Error::InvalidInput(format!(
                "grid/u/v lengths differ: {}/{}/{}",
                grid.len(),
                u.len(),
                v.len()
            )));
        }
        if let Some(i) = (1..grid.len()).find(|&i| grid[i] <= grid[i - 1]) {
            return Err(Error::NonMonotonicGrid { index: i });
        }
        Ok(Self { grid, u, v, energy, kind, l, normalized: false, norm_constant: None })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// The component carrying angular index `l` (`u` for kind +, `v` for kind -).
    pub fn dominant(&self) -> &[T] {
        match self.kind {
            Kind::Plus => &self.u,
            Kind::Minus => &self.v,
        }
    }

    pub fn minor(&self) -> &[T] {
        match self.kind {
            Kind::Plus => &self.v,
            Kind::Minus => &self.u,
        }
    }

    /// (u^2 + v^2) r^2 at every node.
    pub fn density(&self) -> Vec<T> {
        self.grid
            .iter()
            .zip(self.u.iter().zip(&self.v))
            .map(|(r, (u, v))| (*u * *u + *v * *v) * *r * *r)
            .collect()
    }

    /// Integral of (u^2 + v^2) r^2 over the grid.
    pub fn norm_integral(&self) -> T {
        integrate_samples(&self.grid, &self.density())
    }

    pub fn scale(&mut self, factor: T) {
        for x in self.u.iter_mut().chain(self.v.iter_mut()) {
            *x = *x * factor;
        }
    }

    /// Interior sign changes of the dominant component, ignoring samples
    /// below `floor` times its maximum magnitude.
    pub fn node_count(&self, floor: T) -> u32 {
        count_nodes(self.dominant(), floor)
    }

    /// Largest absolute value of either component.
    pub fn max_abs(&self) -> T {
        self.u.iter().chain(&self.v).fold(T::zero(), |m, x| m.max(x.abs()))
    }
}

pub(crate) fn count_nodes<T: Real>(values: &[T], floor: T) -> u32 {
    let peak = values.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    let cut = peak * floor;
    let mut nodes = 0;
    let mut prev = 0i8;
    for x in values {
        if x.abs() <= cut {
            continue;
        }
        let s = if *x > T::zero() { 1 } else { -1 };
        if prev != 0 && s != prev {
            nodes += 1;
        }
        prev = s;
    }
    nodes
}

/// `n` geometrically spaced radii from `r_min` to `r_max` inclusive.
pub fn geometric_grid<T: Real>(r_min: T, r_max: T, n: usize) -> Vec<T> {
    assert!(n >= 2 && r_min > T::zero() && r_max > r_min);
    let ratio = (r_max / r_min).ln();
    let last = T::from_usize_lossy(n - 1);
    let mut g: Vec<T> = (0..n).map(|i| r_min * (ratio * T::from_usize_lossy(i) / last).exp()).collect();
    g[n - 1] = r_max;
    g
}

/// Geometric spacing with ratio `ratio` from `r_min` up to `r_join`, then
/// uniform spacing `r_join (ratio - 1)` up to `r_max`.
pub fn radial_grid<T: Real>(r_min: T, r_join: T, r_max: T, ratio: T) -> Vec<T> {
    assert!(r_min > T::zero() && r_max > r_min && ratio > T::one());
    let mut g = vec![r_min];
    let mut r = r_min;
    let join = r_join.min(r_max);
    while r * ratio < join {
        r = r * ratio;
        g.push(r);
    }
    let h = join * (ratio - T::one());
    let start = *g.last().expect("nonempty");
    let steps = ((r_max - start) / h).ceil().to_usize().unwrap_or(0).max(1);
    let h = (r_max - start) / T::from_usize_lossy(steps);
    for i in 1..steps {
        g.push(start + h * T::from_usize_lossy(i));
    }
    g.push(r_max);
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_mismatched_lengths() {
        assert!(RadialSolution::new(vec![1.0, 2.0], vec![1.0], vec![1.0, 2.0], 1.0, Kind::Plus, 0).is_err());
        assert!(RadialSolution::new(vec![1.0, 1.0], vec![1.0; 2], vec![1.0; 2], 1.0, Kind::Plus, 0).is_err());
    }

    #[test]
    fn counts_nodes_above_floor() {
        let v = [1.0, 0.5, -0.2, -1.0, 1e-20, -1e-20, 0.3, 0.0];
        assert_eq!(count_nodes(&v, 1e-10), 2);
    }

    #[test]
    fn geometric_grid_endpoints() {
        let g = geometric_grid(1e-6f64, 50.0, 101);
        assert_eq!(g[0], 1e-6);
        assert_eq!(g[100], 50.0);
        assert!((g[1] / g[0] - g[51] / g[50]).abs() < 1e-12);
    }

    #[test]
    fn radial_grid_is_increasing() {
        let g = radial_grid(1e-6f64, 0.5, 40.0, 1.01);
        assert_eq!(g[0], 1e-6);
        assert_eq!(*g.last().unwrap(), 40.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let tail = g[g.len() - 1] - g[g.len() - 2];
        assert!(tail <= 0.0051);
    }
}

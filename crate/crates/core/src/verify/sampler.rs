use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::geometry::{ProductPoint, SpacePair};
use crate::{CVector, C64};

/// Deterministic interior sampling over radius-stratified shells plus a time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sampler {
    pub n: usize,
    pub seed: u64,
    /// Shell edges, increasing, inside `(0, 1)`.
    pub radii: Vec<f64>,
    pub t_grid: Vec<f64>,
    /// Include real-axis and imaginary-axis probes among the samples.
    pub axis_probes: bool,
}

/// `count` geometrically spaced times from `t_min` to `t_max`.
pub fn geometric_grid(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![t_min];
    }
    let ratio = (t_max / t_min).ln();
    (0..count)
        .map(|k| t_min * (ratio * k as f64 / (count - 1) as f64).exp())
        .collect()
}

impl Default for Sampler {
    fn default() -> Self {
        Self {
            n: 1000,
            seed: 20_240_601,
            radii: (0..=17).map(|k| 0.1 + 0.05 * k as f64).collect(),
            t_grid: geometric_grid(0.01, 10.0, 25),
            axis_probes: true,
        }
    }
}

impl Sampler {
    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_t_grid(mut self, grid: Vec<f64>) -> Self {
        self.t_grid = grid;
        self
    }

    pub fn with_radii(mut self, radii: Vec<f64>) -> Self {
        self.radii = radii;
        self
    }

    pub fn without_axis_probes(mut self) -> Self {
        self.axis_probes = false;
        self
    }

    pub fn t_max(&self) -> f64 {
        self.t_grid.iter().cloned().fold(0.0, f64::max)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn shell_radius(&self, rng: &mut ChaCha8Rng, k: usize) -> f64 {
        let shells = self.radii.len().saturating_sub(1).max(1);
        if self.radii.len() < 2 {
            return self.radii.first().copied().unwrap_or(0.5);
        }
        let j = k % shells;
        let (lo, hi) = (self.radii[j], self.radii[j + 1]);
        lo + (hi - lo) * rng.random::<f64>()
    }

    fn axis_points(&self, dim: usize) -> Vec<CVector> {
        let mut out = Vec::new();
        for &r in &self.radii {
            for u in [C64::new(r, 0.0), C64::new(-r, 0.0), C64::new(0.0, r), C64::new(0.0, -r)] {
                let mut v = CVector::zeros(dim);
                v[0] = u;
                out.push(v);
            }
        }
        out
    }

    /// `n` points of the open unit ball of `ℂ^dim`; axis probes come first when enabled.
    pub fn ball_points(&self, dim: usize) -> Vec<CVector> {
        let mut rng = self.rng(dim as u64);
        let mut out = if self.axis_probes {
            let mut a = self.axis_points(dim);
            a.truncate(self.n / 10);
            a
        } else {
            Vec::new()
        };
        let mut k = 0;
        while out.len() < self.n {
            let radius = self.shell_radius(&mut rng, k);
            out.push(random_direction(&mut rng, dim) * C64::new(radius, 0.0));
            k += 1;
        }
        out
    }

    /// `n` points of the product ball `‖y‖ < p(‖x‖)`, with `‖y‖/p(‖x‖)` stratified in `(0, 0.99)`.
    ///
    /// `x` is rescaled so that its `X`-norm equals the sampled shell radius.
    pub fn product_points(&self, space: &SpacePair) -> Vec<ProductPoint> {
        let xs = self.ball_points(space.n);
        let mut rng = self.rng(1_000 + space.m as u64);
        let mut out = Vec::with_capacity(xs.len());
        for (k, x) in xs.into_iter().enumerate() {
            let radius = x.norm();
            let xn = space.x_norm(&x);
            let x = if xn > 0.0 { x * C64::new(radius / xn, 0.0) } else { x };
            let cap = space.profile_at(&x);
            let frac = 0.99 * ((k % 10) as f64 + rng.random::<f64>()) / 10.0;
            let dir = random_direction(&mut rng, space.m);
            let scale = frac * cap / space.y_norm.norm(&dir).max(f64::MIN_POSITIVE);
            out.push(ProductPoint::new(x, dir * C64::new(scale, 0.0)));
        }
        out
    }
}

/// Uniformly distributed unit vector of `ℂ^dim` (Euclidean).
pub fn random_direction<R: Rng>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let n = v.norm();
        if n > 1e-12 {
            return v / C64::new(n, 0.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let s = Sampler::default();
        assert_eq!(s.t_grid.len(), 25);
        assert!((s.t_grid[0] - 0.01).abs() < 1e-15);
        assert!((s.t_max() - 10.0).abs() < 1e-12);
    }

    #[test]
    fn points_stay_in_shells_and_are_reproducible() {
        let s = Sampler::default().with_n(500);
        let a = s.ball_points(2);
        assert_eq!(a.len(), 500);
        assert!(a.iter().all(|z| z.norm() >= 0.1 - 1e-15 && z.norm() <= 0.95 + 1e-15));
        assert_eq!(a, s.ball_points(2));
        assert_ne!(a, s.clone().with_seed(1).ball_points(2));
    }

    #[test]
    fn product_points_are_inside() {
        let space = SpacePair::euclidean(1, 2, 2.0, 2.0).unwrap();
        let pts = Sampler::default().with_n(300).product_points(&space);
        assert!(pts.iter().all(|p| space.contains(p)));
    }
}

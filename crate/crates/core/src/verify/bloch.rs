use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::report::{CheckReport, Probe, ReportBuilder, Tally, Witness};
use super::sampler::random_direction;
use crate::extension::ExtendedMap;
use crate::geometry::ProductPoint;
use crate::{c, CVector, Error, Result, C64};

pub const BLOCH_TOL: f64 = 1e-9;

/// Polar grid over the base disk times fiber fractions of `p(‖x‖)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlochGrid {
    pub radii: Vec<f64>,
    pub angles: usize,
    /// Values of `‖y‖ / p(‖x‖)` in `[0, 1)`.
    pub fiber: Vec<f64>,
    /// Random unit directions used to estimate operator norms on the product space.
    pub directions: usize,
    pub seed: u64,
}

impl BlochGrid {
    /// `radial × angular × fiber` points, radii evenly spaced in `[0, r_max]`.
    pub fn uniform(radial: usize, angular: usize, fiber: &[f64], r_max: f64) -> Self {
        let radii = (0..radial)
            .map(|k| {
                if radial == 1 {
                    r_max
                } else {
                    r_max * k as f64 / (radial - 1) as f64
                }
            })
            .collect();
        Self {
            radii,
            angles: angular,
            fiber: fiber.to_vec(),
            directions: 100,
            seed: 7,
        }
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles * self.fiber.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Grid suprema of the three component quantities and of the extended quantity.
#[derive(Debug, Clone, Serialize)]
pub struct BlochBounds {
    /// `sup ‖h'(x)‖ (1 − ‖x‖²)`
    pub base: f64,
    /// `sup |Γ(h, x)| (1 − ‖x‖²)`
    pub multiplier: f64,
    /// `sup ‖∂ₓΓ(h, x)‖ p(‖x‖) (1 − ‖x‖²)`
    pub gradient: f64,
    /// `sup ‖Φ[h]'(x, y)‖ (1 − ‖(x, y)‖²)`
    pub extended: f64,
    pub points: usize,
}

impl BlochBounds {
    pub fn all_finite(&self) -> bool {
        [self.base, self.multiplier, self.gradient, self.extended]
            .iter()
            .all(|v| v.is_finite())
    }

    /// Largest relative change of any supremum against another grid.
    pub fn relative_change(&self, other: &BlochBounds) -> f64 {
        [
            (self.base, other.base),
            (self.multiplier, other.multiplier),
            (self.gradient, other.gradient),
            (self.extended, other.extended),
        ]
        .iter()
        .map(|(a, b)| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
    }
}

struct PointValues {
    x: CVector,
    y: CVector,
    base: f64,
    multiplier: f64,
    gradient: f64,
    extended: f64,
}

fn spectral_norm(m: &crate::CMatrix) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Bloch-type suprema for `Φ[h]` on the grid, with the estimate
/// `extended ≤ base + multiplier + gradient` checked to [`BLOCH_TOL`].
pub fn bloch_bounds(em: &ExtendedMap, grid: &BlochGrid) -> Result<(BlochBounds, CheckReport)> {
    let (n, m) = (em.space.n, em.space.m);
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty Bloch grid".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let x_dir = random_direction(&mut rng, n);
    let y_dir = random_direction(&mut rng, m);
    let dirs: Vec<ProductPoint> = (0..grid.directions)
        .map(|_| {
            let v = random_direction(&mut rng, n + m);
            ProductPoint::split(&v, n)
        })
        .collect();
    let mut jobs = Vec::with_capacity(grid.len());
    for &r in &grid.radii {
        for k in 0..grid.angles {
            let phase = C64::from_polar(1.0, 2.0 * PI * k as f64 / grid.angles as f64);
            for &f in &grid.fiber {
                jobs.push((r, phase, f));
            }
        }
    }
    let values: Vec<Result<PointValues>> = jobs
        .par_iter()
        .map(|&(r, phase, f)| {
            let mut x = &x_dir * phase;
            if n == 1 {
                x = CVector::from_element(1, phase);
            }
            let xn = em.space.x_norm(&x);
            let x = x * c(r / xn, 0.0);
            let p = em.space.profile_at(&x);
            let yn = em.space.y_norm(&y_dir);
            let y = &y_dir * c(f * p / yn, 0.0);
            let weight_x = 1.0 - r * r;
            let jac = em.base.jacobian(&x)?;
            let g = em.gamma_at(&x)?;
            let grad = em.gamma_gradient(&x)?;
            let pt = ProductPoint::new(x.clone(), y.clone());
            let full = em.jacobian(&pt)?;
            let z_norm = em.space.product_norm(&pt)?;
            let mut op = 0.0_f64;
            for d in &dirs {
                let dn = em.space.product_norm(d)?;
                let img = &full * d.flatten();
                op = op.max(em.space.product_norm(&ProductPoint::split(&img, n))? / dn);
            }
            Ok(PointValues {
                x,
                y,
                base: spectral_norm(&jac) * weight_x,
                multiplier: g.norm() * weight_x,
                gradient: grad.norm() * p * weight_x,
                extended: op * (1.0 - z_norm * z_norm),
            })
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    let sup = |f: &dyn Fn(&PointValues) -> f64| values.iter().map(f).fold(0.0, f64::max);
    let bounds = BlochBounds {
        base: sup(&|v| v.base),
        multiplier: sup(&|v| v.multiplier),
        gradient: sup(&|v| v.gradient),
        extended: sup(&|v| v.extended),
        points: values.len(),
    };
    let total = bounds.base + bounds.multiplier + bounds.gradient;
    let mut tally = Tally::new(BLOCH_TOL);
    for v in &values {
        let coords: Vec<C64> = v.x.iter().chain(v.y.iter()).copied().collect();
        tally.record(Probe::Decided(Witness::new(&coords, None, total - v.extended)));
    }
    let mut b = ReportBuilder::new("bloch")
        .param("map", em.base.label())
        .param("gamma", em.gamma.to_string())
        .param("points", values.len())
        .param("sup-base", bounds.base)
        .param("sup-multiplier", bounds.multiplier)
        .param("sup-gradient", bounds.gradient)
        .param("sup-extended", bounds.extended)
        .note("operator norm on the product space estimated over random unit directions");
    if !bounds.all_finite() {
        b.push_note("a supremum is not finite");
        let mut t = Tally::new(BLOCH_TOL);
        t.record(Probe::Decided(Witness::new(&[], None, f64::NEG_INFINITY)));
        return Ok((bounds, b.finish(&t, 0.0)));
    }
    Ok((bounds, b.finish(&tally, 0.0)))
}

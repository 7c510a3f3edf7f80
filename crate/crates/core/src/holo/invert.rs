//! Damped Newton inversion and image-membership queries.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::image::Membership;
use super::map::HoloMap;
use crate::{euclid, CVector, Error, Result, C64};

/// Preimages this close to the sphere are neither counted as inside nor as outside.
pub const EDGE_BAND: f64 = 1e-6;
pub const RESIDUAL_TOL: f64 = 1e-10;
pub const AGREEMENT_TOL: f64 = 1e-8;
pub const CONTOUR_NODES: usize = 1 << 12;
pub const CONTOUR_RADII: [f64; 3] = [0.9, 0.99, 0.999];

const MAX_NEWTON: usize = 100;
const MAX_HALVINGS: usize = 40;

/// `0` plus eight points at radius `0.5` in one dimension; `0` plus `±0.5·eₖ`, `±0.5i·eₖ` otherwise.
pub fn default_seeds(dim: usize) -> Vec<CVector> {
    let mut seeds = vec![CVector::zeros(dim)];
    if dim == 1 {
        for k in 0..8 {
            let a = 2.0 * PI * k as f64 / 8.0;
            seeds.push(CVector::from_element(1, C64::from_polar(0.5, a)));
        }
    } else {
        for k in 0..dim {
            for u in [
                C64::new(0.5, 0.0),
                C64::new(-0.5, 0.0),
                C64::new(0.0, 0.5),
                C64::new(0.0, -0.5),
            ] {
                let mut s = CVector::zeros(dim);
                s[k] = u;
                seeds.push(s);
            }
        }
    }
    seeds
}

/// Denser seed set used when the default grid finds nothing.
pub fn dense_seeds(dim: usize) -> Vec<CVector> {
    let mut seeds = vec![CVector::zeros(dim)];
    let radii = [0.25, 0.5, 0.75, 0.9, 0.97, 0.99, 0.998];
    if dim == 1 {
        for r in radii {
            for k in 0..16 {
                let a = 2.0 * PI * (k as f64 + 0.5) / 16.0;
                seeds.push(CVector::from_element(1, C64::from_polar(r, a)));
            }
        }
    } else {
        for r in radii {
            for k in 0..dim {
                for j in 0..8 {
                    let mut s = CVector::zeros(dim);
                    s[k] = C64::from_polar(r, 2.0 * PI * j as f64 / 8.0);
                    seeds.push(s);
                }
            }
        }
    }
    seeds
}

fn residual(f: &HoloMap, z: &CVector, w: &CVector) -> Option<(CVector, f64)> {
    let r = f.eval_raw(z).ok()? - w;
    let n = r.norm();
    n.is_finite().then_some((r, n))
}

/// Damped Newton from one seed; returns a root anywhere in the map's natural domain.
pub fn newton(f: &HoloMap, w: &CVector, seed: &CVector) -> Option<CVector> {
    let tol = RESIDUAL_TOL * euclid(w).max(1.0);
    let mut z = seed.clone();
    let (mut r, mut rn) = residual(f, &z, w)?;
    for _ in 0..MAX_NEWTON {
        if rn <= tol {
            if let Some(step) = f.jac_raw(&z).ok().and_then(|j| j.lu().solve(&r)) {
                let polished = &z - step;
                if let Some((_, pn)) = residual(f, &polished, w) {
                    if pn <= rn {
                        return Some(polished);
                    }
                }
            }
            return Some(z);
        }
        let step = f.jac_raw(&z).ok()?.lu().solve(&r)?;
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..MAX_HALVINGS {
            let cand = &z - &step * C64::new(scale, 0.0);
            if let Some((rc, rcn)) = residual(f, &cand, w) {
                if rcn < (1.0 - 1e-4 * scale) * rn {
                    z = cand;
                    r = rc;
                    rn = rcn;
                    accepted = true;
                    break;
                }
            }
            scale *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    None
}

fn roots(f: &HoloMap, w: &CVector, seeds: &[CVector]) -> Vec<CVector> {
    seeds.par_iter().filter_map(|s| newton(f, w, s)).collect()
}

fn in_domain(f: &HoloMap, z: &CVector) -> bool {
    match f {
        HoloMap::Inverse { map } => map
            .image()
            .map(|d| d.contains(z))
            .unwrap_or_else(|| locate(map, z, false).is_inside()),
        _ => euclid(z) < 1.0,
    }
}

/// Preimage of `w` under a biholomorphic `f`, searched from `seeds`.
pub fn invert(f: &HoloMap, w: &CVector, seeds: &[CVector]) -> Result<CVector> {
    if w.len() != f.dim() {
        return Err(Error::Dimension {
            expected: f.dim(),
            got: w.len(),
        });
    }
    let found: Vec<CVector> = roots(f, w, seeds).into_iter().filter(|z| in_domain(f, z)).collect();
    let first = found.first().ok_or(Error::NotFound)?;
    for other in &found[1..] {
        let d = (other - first).norm();
        if d > AGREEMENT_TOL {
            return Err(Error::Ambiguous { distance: d });
        }
    }
    Ok(first.clone())
}

/// Inversion with the default seeds, falling back to the dense grid.
pub fn invert_default(f: &HoloMap, w: &CVector) -> Result<CVector> {
    match invert(f, w, &default_seeds(f.dim())) {
        Err(Error::NotFound) => invert(f, w, &dense_seeds(f.dim())),
        other => other,
    }
}

pub(crate) fn invert_scalar(f: &HoloMap, w: C64) -> Result<C64> {
    Ok(invert_default(f, &CVector::from_element(1, w))?[0])
}

/// Winding number of `f(ρ·∂Δ) − w` about `0`, or `None` when the contour sum is not trustworthy.
pub fn winding_number(f: &HoloMap, w: C64, rho: f64, nodes: usize) -> Option<i64> {
    let values: Vec<C64> = (0..nodes)
        .into_par_iter()
        .map(|k| {
            let z = C64::from_polar(rho, 2.0 * PI * k as f64 / nodes as f64);
            f.eval1(z).map(|v| v - w).ok()
        })
        .collect::<Option<Vec<_>>>()?;
    let scale = values.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    if values.iter().any(|v| v.norm() <= 1e-12 * scale.max(1.0)) {
        return None;
    }
    let mut total = 0.0;
    for k in 0..nodes {
        let step = (values[(k + 1) % nodes] / values[k]).arg();
        if step.abs() > PI / 2.0 {
            return None;
        }
        total += step;
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    ((turns - rounded).abs() < 1e-6).then_some(rounded as i64)
}

/// Decides whether `w ∈ f(ball)`.
///
/// Uses the exact descriptor when the map has one, then Newton preimages, then (in one
/// dimension) the argument principle. With `want_preimage` a preimage is also searched for when
/// the descriptor already decided membership.
pub fn locate(f: &HoloMap, w: &CVector, want_preimage: bool) -> Membership {
    if let Some(desc) = f.image() {
        let margin = desc.margin(w);
        if margin <= 0.0 {
            return Membership::outside(margin);
        }
        let pre = if want_preimage { invert_default(f, w).ok() } else { None };
        return Membership::inside(margin, pre);
    }
    by_search(f, w)
}

/// Membership decided without the exact descriptor.
pub fn by_search(f: &HoloMap, w: &CVector) -> Membership {
    let dim = f.dim();
    let mut found = roots(f, w, &default_seeds(dim));
    if !found.iter().any(|z| euclid(z) < 1.0) {
        found.extend(roots(f, w, &dense_seeds(dim)));
    }
    let best_inside = found
        .iter()
        .filter(|z| euclid(z) < 1.0 - EDGE_BAND)
        .min_by(|a, b| euclid(a).total_cmp(&euclid(b)));
    if let Some(z) = best_inside {
        return Membership::inside(1.0 - euclid(z), Some(z.clone()));
    }
    if dim == 1 {
        let mut decided_zero = 0;
        for rho in CONTOUR_RADII {
            match winding_number(f, w[0], rho, CONTOUR_NODES) {
                Some(n) if n >= 1 => return Membership::inside(1.0 - rho, None),
                Some(0) => decided_zero += 1,
                _ => {}
            }
        }
        if decided_zero == CONTOUR_RADII.len() {
            let margin = found.iter().map(|z| 1.0 - euclid(z)).fold(-EDGE_BAND, f64::min);
            return Membership::outside(margin);
        }
    }
    let nearest = found.iter().map(euclid).fold(f64::INFINITY, f64::min);
    if !found.is_empty() && nearest > 1.0 + EDGE_BAND {
        return Membership::outside(1.0 - nearest);
    }
    Membership::unknown()
}

/// Membership of `w` in `f(ball)`; inconclusive probes are reported as unknown.
pub fn image_contains(f: &HoloMap, w: &CVector) -> Membership {
    locate(f, w, false)
}

/// Radial probe `h(ρτ)` for `ρ` approaching `1`; the last value estimates the boundary limit.
pub fn radial_limit_probe(h: &HoloMap, tau: &CVector, radii: &[f64]) -> Vec<Result<CVector>> {
    radii.iter().map(|&r| h.eval(&(tau * C64::new(r, 0.0)))).collect()
}

//! Sampled appropriateness checks.

use rayon::prelude::*;

use super::family::MapFamily;
use super::spec::{gamma_eval, GammaSpec, ZERO_TOL};
use crate::geometry::SpacePair;
use crate::holo::invert::invert_default;
use crate::holo::HoloMap;
use crate::verify::report::{CheckReport, Probe, ReportBuilder, Tally, Witness};
use crate::{c, euclid, inner, CVector, Result, C64};

pub const IDENTITY_TOL: f64 = 1e-12;
pub const CHAIN_TOL: f64 = 1e-9;
pub const BOUND_TOL: f64 = 1e-12;
const UNKNOWN_BUDGET: f64 = 0.05;

fn decided(x: &CVector, margin: f64) -> Probe {
    Probe::Decided(Witness::new(x.as_slice(), None, margin))
}

fn rel_dev(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn pairs(members: &[HoloMap]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..members.len() {
        for j in 0..members.len() {
            out.push((i, j));
        }
    }
    out
}

struct SelfMapProbes {
    identity: Probe,
    chain: Probe,
    invertible: Vec<Probe>,
    bound: Vec<Probe>,
}

/// Checks identity normalization, chain rule, invertibility and the norm bound
/// `|Γ̂(f, x)| ≤ p(‖f(x)‖)/p(‖x‖)` on sampled points for every family member.
///
/// Sample `k` tests the chain rule on member pair `k mod P`.
pub fn check_appropriate_selfmap(
    spec: &GammaSpec,
    family: &MapFamily,
    space: &SpacePair,
    points: &[CVector],
) -> Result<CheckReport> {
    let members = family.members()?;
    let composed: Vec<Vec<HoloMap>> = members
        .iter()
        .map(|f| {
            members
                .iter()
                .map(|g| HoloMap::compose(f.clone(), g.clone()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let pair_list = pairs(&members);
    let id = HoloMap::identity(family.dim());
    let probes: Vec<SelfMapProbes> = points
        .par_iter()
        .enumerate()
        .map(|(k, x)| {
            let identity = match gamma_eval(spec, &id, x) {
                Ok(v) => decided(x, -(v - 1.0).norm()),
                Err(_) => Probe::Unknown,
            };
            let (i, j) = pair_list[k % pair_list.len()];
            let chain = (|| -> Result<f64> {
                let gx = members[j].eval(x)?;
                let lhs = gamma_eval(spec, &members[i], &gx)? * gamma_eval(spec, &members[j], x)?;
                let rhs = gamma_eval(spec, &composed[i][j], x)?;
                Ok(rel_dev(lhs, rhs))
            })()
            .map_or(Probe::Unknown, |d| decided(x, -d));
            let px = space.profile_at(x);
            let mut invertible = Vec::with_capacity(members.len());
            let mut bound = Vec::with_capacity(members.len());
            for f in &members {
                match (gamma_eval(spec, f, x), f.eval(x)) {
                    (Ok(g), Ok(fx)) => {
                        invertible.push(decided(x, g.norm() - ZERO_TOL));
                        bound.push(decided(x, space.profile_at(&fx) / px - g.norm()));
                    }
                    _ => {
                        invertible.push(Probe::Unknown);
                        bound.push(Probe::Unknown);
                    }
                }
            }
            SelfMapProbes {
                identity,
                chain,
                invertible,
                bound,
            }
        })
        .collect();

    let mut t_identity = Tally::new(IDENTITY_TOL);
    let mut t_chain = Tally::new(CHAIN_TOL);
    let mut t_inv = Tally::new(0.0);
    let mut t_bound = Tally::new(BOUND_TOL);
    for p in probes {
        t_identity.record(p.identity);
        t_chain.record(p.chain);
        t_inv.extend(p.invertible);
        t_bound.extend(p.bound);
    }
    let (q, r) = space.profile.exponents().unwrap_or((f64::NAN, f64::NAN));
    Ok(ReportBuilder::new("appropriate-selfmap")
        .param("gamma", spec.to_string())
        .param("family", family.label())
        .param("members", members.len())
        .param("samples", points.len())
        .param("q", q)
        .param("r", r)
        .sub(t_identity.subcheck("identity", UNKNOWN_BUDGET))
        .sub(t_chain.subcheck("chain-rule", UNKNOWN_BUDGET))
        .sub(t_inv.subcheck("invertibility", UNKNOWN_BUDGET))
        .sub(t_bound.subcheck("norm-bound", UNKNOWN_BUDGET))
        .note("continuity on the family is not tested; only pointwise values")
        .finish_from_subs())
}

/// Checks transport of the chain rule `Γ(h, g(x)) Γ̂(g, x) = Γ(h∘g, x)`, invertibility, and the
/// supplied nesting certificates `h₁(ball) ⊂ h₂(ball)` via `‖h₂⁻¹(h₁(x))‖ < 1`.
pub fn check_appropriate_biholo(
    hat: &GammaSpec,
    spec: &GammaSpec,
    biholo: &MapFamily,
    selfmaps: &MapFamily,
    points: &[CVector],
    nesting: &[(HoloMap, HoloMap)],
) -> Result<CheckReport> {
    let hs = biholo.members()?;
    let gs = selfmaps.members()?;
    let mut combos = Vec::new();
    for h in &hs {
        for g in &gs {
            combos.push((h.clone(), g.clone(), HoloMap::compose(h.clone(), g.clone())?));
        }
    }
    let chain: Vec<Probe> = points
        .par_iter()
        .enumerate()
        .map(|(k, x)| {
            let (h, g, hg) = &combos[k % combos.len()];
            (|| -> Result<f64> {
                let gx = g.eval(x)?;
                let lhs = gamma_eval(spec, h, &gx)? * gamma_eval(hat, g, x)?;
                Ok(rel_dev(lhs, gamma_eval(spec, hg, x)?))
            })()
            .map_or(Probe::Unknown, |d| decided(x, -d))
        })
        .collect();
    let invertible: Vec<Probe> = points
        .par_iter()
        .flat_map_iter(|x| {
            hs.iter().map(move |h| match gamma_eval(spec, h, x) {
                Ok(v) => decided(x, v.norm() - ZERO_TOL),
                Err(_) => Probe::Unknown,
            })
        })
        .collect();
    let nest: Vec<Probe> = nesting
        .iter()
        .flat_map(|(h1, h2)| {
            points
                .par_iter()
                .map(move |x| match h1.eval(x).and_then(|z| invert_default(h2, &z)) {
                    Ok(u) => decided(x, 1.0 - euclid(&u)),
                    Err(_) => Probe::Unknown,
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut t_chain = Tally::new(CHAIN_TOL);
    t_chain.extend(chain);
    let mut t_inv = Tally::new(0.0);
    t_inv.extend(invertible);
    let mut b = ReportBuilder::new("appropriate-biholo")
        .param("hat", hat.to_string())
        .param("gamma", spec.to_string())
        .param("family", biholo.label())
        .param("self-map-family", selfmaps.label())
        .param("samples", points.len())
        .sub(t_chain.subcheck("chain-rule", UNKNOWN_BUDGET))
        .sub(t_inv.subcheck("invertibility", UNKNOWN_BUDGET))
        .note("family closure is checked on sampled pairs only, never proven");
    if nesting.is_empty() {
        b.push_note("no nesting certificate supplied; closure condition not probed");
    } else {
        let mut t_nest = Tally::new(0.0);
        t_nest.extend(nest);
        b.push_sub(t_nest.subcheck("nesting", UNKNOWN_BUDGET));
    }
    Ok(b.finish_from_subs())
}

/// `(1 − t²)^{(n+1)α/2} / (1 − t^q)^{1/r}`.
pub fn auxiliary_function(q: f64, r: f64, alpha: f64, n: usize, t: f64) -> f64 {
    (1.0 - t * t).powf((n as f64 + 1.0) * alpha / 2.0) / (1.0 - t.powf(q)).powf(1.0 / r)
}

/// Nondecreasing check of [`auxiliary_function`] on `t_k = k/(points+1)`, `k = 1..=points`.
pub fn auxiliary_monotonicity(q: f64, r: f64, alpha: f64, n: usize, points: usize) -> CheckReport {
    let grid: Vec<f64> = (1..=points).map(|k| k as f64 / (points + 1) as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| auxiliary_function(q, r, alpha, n, t)).collect();
    let mut tally = Tally::new(BOUND_TOL);
    for k in 0..vals.len().saturating_sub(1) {
        let margin = (vals[k + 1] - vals[k]) / vals[k].abs().max(1.0);
        tally.record(Probe::Decided(Witness::new(&[c(grid[k], 0.0)], None, margin)));
    }
    ReportBuilder::new("auxiliary-monotonicity")
        .param("q", q)
        .param("r", r)
        .param("alpha", alpha)
        .param("n", n)
        .param("points", points)
        .finish(&tally, 0.0)
}

/// Boundary Schwarz-type inequality
/// `(1 − ‖x‖²)/|1 − ⟨x,τ⟩|² ≤ (1 − ‖f(x)‖²)/|1 − ⟨f(x),τ⟩|²` for self-maps fixing `τ`.
pub fn check_wolff_schwarz(f: &HoloMap, tau: &CVector, points: &[CVector]) -> CheckReport {
    let probes: Vec<Probe> = points
        .par_iter()
        .map(|x| match f.eval(x) {
            Ok(fx) => {
                let lhs = (1.0 - x.norm_squared()) / (1.0 - inner(x, tau)).norm_sqr();
                let rhs = (1.0 - fx.norm_squared()) / (1.0 - inner(&fx, tau)).norm_sqr();
                decided(x, (rhs - lhs) / lhs.max(1.0))
            }
            Err(_) => Probe::Unknown,
        })
        .collect();
    let mut tally = Tally::new(BOUND_TOL);
    tally.extend(probes);
    ReportBuilder::new("wolff-schwarz")
        .param("map", f.label())
        .param("samples", points.len())
        .finish(&tally, UNKNOWN_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Sampler;

    #[test]
    fn monotone_at_critical_exponent() {
        let rep = auxiliary_monotonicity(2.0, 2.0, 2.0 / 6.0, 2, 1000);
        assert!(rep.passed());
    }

    #[test]
    fn monotonicity_fails_above_critical_exponent() {
        let rep = auxiliary_monotonicity(2.0, 1.0, 1.5, 1, 1000);
        assert!(!rep.passed());
        assert!(rep.worst_margin < 0.0);
    }

    #[test]
    fn hyperbolic_maps_satisfy_boundary_schwarz() {
        let tau = CVector::from_element(1, c(1.0, 0.0));
        let pts = Sampler::default().with_n(500).ball_points(1);
        for k in [0.1, 0.5, 0.8] {
            let rep = check_wolff_schwarz(&HoloMap::hyperbolic(k).unwrap(), &tau, &pts);
            assert!(rep.passed(), "{rep:?}");
        }
    }
}

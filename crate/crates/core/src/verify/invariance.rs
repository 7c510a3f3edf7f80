use rayon::prelude::*;

use super::motion::{closed_form_c, derive_c, Motion};
use super::report::{CheckReport, Probe, ReportBuilder, Tally, Verdict, Witness};
use super::sampler::Sampler;
use crate::extension::ExtendedMap;
use crate::geometry::ProductPoint;
use crate::holo::{image_contains, HoloMap, Membership, MembershipStatus};
use crate::semigroup::LinearOperator;
use crate::{c, CMatrix, CVector};

/// Decided probes fail below `−MARGIN_TOL`.
pub const MARGIN_TOL: f64 = 1e-9;
/// Largest unknown-probe fraction compatible with a pass.
pub const UNKNOWN_BUDGET: f64 = 0.05;

/// Map whose image is probed.
#[derive(Debug, Clone)]
pub enum Target {
    Base(HoloMap),
    Extended(ExtendedMap),
}

impl Target {
    pub fn dim(&self) -> usize {
        match self {
            Target::Base(h) => h.dim(),
            Target::Extended(em) => em.space.n + em.space.m,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Target::Base(h) => h.label(),
            Target::Extended(em) => format!("extension({}, {})", em.base.label(), em.gamma),
        }
    }

    /// Image points `f(z)` of sampled domain points, flattened.
    fn image_samples(&self, sampler: &Sampler) -> Vec<Option<CVector>> {
        match self {
            Target::Base(h) => sampler
                .ball_points(h.dim())
                .par_iter()
                .map(|z| h.eval(z).ok())
                .collect(),
            Target::Extended(em) => sampler
                .product_points(&em.space)
                .par_iter()
                .map(|p| em.eval(p).ok().map(|q| q.flatten()))
                .collect(),
        }
    }

    /// Membership of a flattened point in the image.
    pub fn membership(&self, w: &CVector) -> Membership {
        match self {
            Target::Base(h) => image_contains(h, w),
            Target::Extended(em) => em.membership(&ProductPoint::split(w, em.space.n)),
        }
    }
}

fn probe(target: &Target, w: CVector, t: f64) -> Probe {
    let m = target.membership(&w);
    match m.status {
        MembershipStatus::Unknown => Probe::Unknown,
        _ => Probe::Decided(Witness::new(w.as_slice(), Some(t), m.margin)),
    }
}

/// Invariance of `f(ball)` under `w ↦ motion(t, w)` for every sampled `w` and grid time.
fn invariance_tally<F>(target: &Target, sampler: &Sampler, motion: F) -> Tally
where
    F: Fn(f64, &CVector) -> CVector + Sync,
{
    let images = target.image_samples(sampler);
    let probes: Vec<Probe> = images
        .par_iter()
        .flat_map_iter(|w| {
            let motion = &motion;
            sampler.t_grid.iter().map(move |&t| match w {
                Some(w) => probe(target, motion(t, w), t),
                None => Probe::Unknown,
            })
        })
        .collect();
    let mut tally = Tally::new(MARGIN_TOL);
    tally.extend(probes);
    tally
}

/// `A`-spirallikeness claim: `e^{−tA} f(ball) ⊂ f(ball)` for `t ≥ 0`.
#[derive(Debug, Clone)]
pub struct SpirallikeClaim {
    pub target: Target,
    pub operator: LinearOperator,
    /// Accept a spectrum that is only nonnegative instead of bounded away from zero.
    pub relaxed: bool,
}

fn base_params(b: ReportBuilder, target: &Target, sampler: &Sampler) -> ReportBuilder {
    b.param("target", target.label())
        .param("samples", sampler.n)
        .param("seed", sampler.seed as f64)
        .param("t-grid-points", sampler.t_grid.len())
        .param("t-max", sampler.t_max())
        .note(format!(
            "invariance verified on the sampled grid up to t = {}, not for all t",
            sampler.t_max()
        ))
}

pub fn check_spirallike(claim: &SpirallikeClaim, sampler: &Sampler) -> CheckReport {
    let op = &claim.operator;
    let mut b = base_params(ReportBuilder::new("spirallike"), &claim.target, sampler)
        .param("accretivity-margin", op.accretivity_margin)
        .param("relaxed", if claim.relaxed { "yes" } else { "no" });
    if op.dim() != claim.target.dim() {
        b.push_note(format!(
            "operator dimension {} does not match target dimension {}",
            op.dim(),
            claim.target.dim()
        ));
        return b.finish(&Tally::new(MARGIN_TOL), UNKNOWN_BUDGET);
    }
    let admissible = if claim.relaxed {
        op.is_accretive()
    } else {
        op.is_strictly_accretive()
    };
    let exps: Vec<(f64, CMatrix)> = sampler.t_grid.iter().map(|&t| (t, op.exp(t))).collect();
    let tally = invariance_tally(&claim.target, sampler, |t, w| {
        let m = &exps.iter().find(|(s, _)| *s == t).expect("grid time").1;
        m * w
    });
    if !admissible {
        // Outside the definition: a counterexample is still informative, a clean run is not.
        b.push_note("operator spectrum is not in the admissible half-plane");
        let mut rep = b.finish(&tally, UNKNOWN_BUDGET);
        rep.floor = rep.floor.and(Verdict::Inconclusive);
        rep.verdict = rep.verdict.and(Verdict::Inconclusive);
        return rep;
    }
    b.finish(&tally, UNKNOWN_BUDGET)
}

/// `diag(A, B + C)`-spirallikeness of `Φ[h]` for an `A`-spirallike `h`.
pub fn check_extended_spirallike(
    em: &ExtendedMap,
    a: &LinearOperator,
    b_op: &LinearOperator,
    sampler: &Sampler,
) -> CheckReport {
    let name = "extended-spirallike";
    let pre_sampler = sampler.clone().with_n(sampler.n.min(200));
    let base = check_spirallike(
        &SpirallikeClaim {
            target: Target::Base(em.base.clone()),
            operator: a.clone(),
            relaxed: false,
        },
        &pre_sampler,
    );
    if !base.passed() {
        return CheckReport::inconclusive(name, "base map is not verified A-spirallike");
    }
    let pts = pre_sampler.ball_points(em.space.n);
    let times: Vec<f64> = sampler.t_grid.iter().step_by(6).copied().collect();
    let derived = match derive_c(
        &em.gamma,
        &Motion::Linear(a.clone()),
        &em.base,
        &pts[..pts.len().min(100)],
        &times,
    ) {
        Ok(d) => d,
        Err(e) => return CheckReport::inconclusive(name, format!("C is not available: {e}")),
    };
    if !derived.report.passed() {
        return CheckReport::inconclusive(name, "C identity residual exceeds tolerance");
    }
    if !b_op.is_accretive() {
        return CheckReport::inconclusive(name, "B is not accretive");
    }
    let Ok(bc) = b_op.shifted(derived.c) else {
        return CheckReport::inconclusive(name, "B + C has no valid spectral data");
    };
    let Ok(block) = a.block_diag(&bc) else {
        return CheckReport::inconclusive(name, "block operator could not be formed");
    };
    let expected_margin = a.accretivity_margin.min(b_op.accretivity_margin + derived.c.re);
    let mut rep = check_spirallike(
        &SpirallikeClaim {
            target: Target::Extended(em.clone()),
            operator: block.clone(),
            relaxed: false,
        },
        sampler,
    );
    rep.name = name.into();
    rep.parameters.insert("c-re".into(), derived.c.re.into());
    rep.parameters.insert("c-im".into(), derived.c.im.into());
    rep.parameters
        .insert("expected-block-margin".into(), expected_margin.into());
    rep.subchecks.push(summary(&base));
    rep.subchecks.push(summary(&derived.report));
    rep
}

fn summary(r: &CheckReport) -> super::report::SubCheck {
    super::report::SubCheck {
        name: r.name.clone(),
        verdict: r.verdict,
        worst_margin: r.worst_margin,
        decided: r.decided,
        unknown: r.unknown,
        witness: r.witnesses.first().cloned(),
    }
}

/// Convexity in direction `τ`.
///
/// Base maps: `w + tτ` stays in the image. Extensions: the curve `(z + tτ, e^{−(B+C)t} w)`
/// stays in the image, with `C` from the shift identity; `fiber = None` means `B = 0`.
pub fn check_convex_in_direction(
    target: &Target,
    tau: &CVector,
    fiber: Option<&LinearOperator>,
    sampler: &Sampler,
) -> CheckReport {
    let name = "convex-direction";
    let mut b = base_params(ReportBuilder::new(name), target, sampler)
        .param("direction", tau.iter().flat_map(|v| [v.re, v.im]).collect::<Vec<_>>());
    match target {
        Target::Base(h) => {
            if tau.len() != h.dim() {
                return CheckReport::inconclusive(name, "direction dimension mismatch");
            }
            let tally = invariance_tally(target, sampler, |t, w| w + tau * c(t, 0.0));
            b.finish(&tally, UNKNOWN_BUDGET)
        }
        Target::Extended(em) => {
            let (n, m) = (em.space.n, em.space.m);
            if tau.len() != n {
                return CheckReport::inconclusive(name, "direction dimension mismatch");
            }
            let cc = match closed_form_c(&em.gamma, &Motion::Shift(tau.clone())) {
                Ok(v) => v,
                Err(e) => return CheckReport::inconclusive(name, format!("C is not available: {e}")),
            };
            let k = match fiber {
                Some(bop) => &bop.matrix + CMatrix::identity(m, m) * cc,
                None => CMatrix::identity(m, m) * cc,
            };
            let Ok(k_op) = LinearOperator::new(k) else {
                return CheckReport::inconclusive(name, "B + C has no valid spectral data");
            };
            if !k_op.is_accretive() {
                return CheckReport::inconclusive(name, "B + C is not accretive");
            }
            b = b.param("c-re", cc.re).param("c-im", cc.im);
            let exps: Vec<(f64, CMatrix)> = sampler.t_grid.iter().map(|&t| (t, k_op.exp(t))).collect();
            let tally = invariance_tally(target, sampler, |t, w| {
                let e = &exps.iter().find(|(s, _)| *s == t).expect("grid time").1;
                let pt = ProductPoint::split(w, n);
                ProductPoint::new(&pt.x + tau * c(t, 0.0), e * &pt.y).flatten()
            });
            b.finish(&tally, UNKNOWN_BUDGET)
        }
    }
}

/// Containment of `(Ψ_t(z), e^{−Ct} G_t(w))` in `Φ[h](D)` for the affine semigroup `Ψ` and the
/// fiber semigroup `G_t = e^{−tB}`.
pub fn check_affine_invariance(
    em: &ExtendedMap,
    op: &LinearOperator,
    lambda: f64,
    tau: &CVector,
    fiber: &LinearOperator,
    sampler: &Sampler,
) -> CheckReport {
    let name = "affine-invariance";
    let motion = Motion::Affine {
        op: op.clone(),
        lambda,
        tau: tau.clone(),
    };
    let pre = sampler.clone().with_n(sampler.n.min(200));
    let base_target = Target::Base(em.base.clone());
    let base = invariance_tally(&base_target, &pre, |t, w| motion.apply(t, w));
    if base.verdict(UNKNOWN_BUDGET) != super::report::Verdict::Pass {
        return CheckReport::inconclusive(name, "h(ball) is not verified invariant under the affine semigroup");
    }
    let pts = pre.ball_points(em.space.n);
    let times: Vec<f64> = sampler.t_grid.iter().step_by(6).copied().collect();
    let derived = match derive_c(&em.gamma, &motion, &em.base, &pts[..pts.len().min(100)], &times) {
        Ok(d) => d,
        Err(e) => return CheckReport::inconclusive(name, format!("C is not available: {e}")),
    };
    if !derived.report.passed() {
        return CheckReport::inconclusive(name, "C identity residual exceeds tolerance");
    }
    let n = em.space.n;
    let cc = derived.c;
    let fibers: Vec<(f64, CMatrix)> = sampler
        .t_grid
        .iter()
        .map(|&t| (t, fiber.exp(t) * (-cc * t).exp()))
        .collect();
    let target = Target::Extended(em.clone());
    let tally = invariance_tally(&target, sampler, |t, w| {
        let g = &fibers.iter().find(|(s, _)| *s == t).expect("grid time").1;
        let pt = ProductPoint::split(w, n);
        ProductPoint::new(motion.apply(t, &pt.x), g * &pt.y).flatten()
    });
    base_params(ReportBuilder::new(name), &target, sampler)
        .param("lambda", lambda)
        .param("c-re", cc.re)
        .param("c-im", cc.im)
        .sub(base.subcheck("base-invariance", UNKNOWN_BUDGET))
        .sub(summary(&derived.report))
        .finish(&tally, UNKNOWN_BUDGET)
}

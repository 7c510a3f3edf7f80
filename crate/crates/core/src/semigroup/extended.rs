use rayon::prelude::*;

use super::flow::Flow;
use crate::extension::ExtendedMap;
use crate::gamma::{gamma_eval, gamma_omega_at_preimage, GammaSpec, ZERO_TOL};
use crate::geometry::{ProductPoint, SpacePair};
use crate::holo::invert::invert_default;
use crate::holo::HoloMap;
use crate::verify::report::{CheckReport, Probe, ReportBuilder, Tally, Witness};
use crate::{c, CVector, Error, Result, C64};

/// A flow acting on flattened coordinates.
pub trait FlowMap {
    fn apply_flat(&self, t: f64, v: &CVector) -> Result<CVector>;
}

impl FlowMap for Flow {
    fn apply_flat(&self, t: f64, v: &CVector) -> Result<CVector> {
        self.apply(t, v)
    }
}

/// `F̃_t(x, y) = (F_t(x), Γ̂(F_t, x) G_t(y))`.
#[derive(Debug, Clone)]
pub struct ExtendedSemigroup {
    pub base: Flow,
    pub gamma: GammaSpec,
    pub fiber: Flow,
    pub space: SpacePair,
}

impl ExtendedSemigroup {
    pub fn new(base: Flow, gamma: GammaSpec, fiber: Flow, space: SpacePair) -> Result<Self> {
        if base.dim() != space.n {
            return Err(Error::Dimension {
                expected: space.n,
                got: base.dim(),
            });
        }
        if fiber.dim() != space.m {
            return Err(Error::Dimension {
                expected: space.m,
                got: fiber.dim(),
            });
        }
        Ok(Self {
            base,
            gamma,
            fiber,
            space,
        })
    }

    /// `Γ̂(F_t, x)`.
    pub fn multiplier(&self, t: f64, x: &CVector) -> Result<C64> {
        gamma_eval(&self.gamma, &self.base.element(t)?, x)
    }

    pub fn apply(&self, t: f64, pt: &ProductPoint) -> Result<ProductPoint> {
        let x = self.base.apply(t, &pt.x)?;
        let g = self.multiplier(t, &pt.x)?;
        Ok(ProductPoint::new(x, self.fiber.apply(t, &pt.y)? * g))
    }

    /// `‖F̃_{t+s}(pt) − F̃_t(F̃_s(pt))‖`.
    pub fn law_residual(&self, t: f64, s: f64, pt: &ProductPoint) -> Result<f64> {
        let whole = self.apply(t + s, pt)?;
        let split = self.apply(t, &self.apply(s, pt)?)?;
        Ok(whole.distance(&split))
    }

    /// `‖Γ̂(F_t,x) G_s(y) − G_s(Γ̂(F_t,x) y)‖`; zero for linear fibers.
    pub fn commutation_residual(&self, t: f64, s: f64, pt: &ProductPoint) -> Result<f64> {
        let g = self.multiplier(t, &pt.x)?;
        let a = self.fiber.apply(s, &pt.y)? * g;
        let b = self.fiber.apply(s, &(&pt.y * g))?;
        Ok((a - b).norm())
    }

    /// `−d/dt Γ̂(F_t, x)` at `t = 0⁺`, from one-sided differences on `{1e−3, 1e−4, 1e−5}`
    /// extrapolated to zero.
    pub fn multiplier_derivative(&self, x: &CVector) -> Result<C64> {
        let ts = [1e-3, 1e-4, 1e-5];
        let vals = ts
            .iter()
            .map(|&t| Ok((C64::new(1.0, 0.0) - self.multiplier(t, x)?) / t))
            .collect::<Result<Vec<_>>>()?;
        Ok(neville_at_zero(&ts, &vals))
    }

    /// Generator `(f(x), ∂Γ̂(id, x)[f] y + g(y))` with `f` and `g` from the closed forms when
    /// available and from extrapolated differences otherwise.
    pub fn generator_formula(&self, pt: &ProductPoint) -> Result<ProductPoint> {
        let f = match self.base.generator_exact(&pt.x) {
            Some(v) => v,
            None => generator(&self.base, &pt.x, &DEFAULT_T_SEQ)?.limit,
        };
        let g = match self.fiber.generator_exact(&pt.y) {
            Some(v) => v,
            None => generator(&self.fiber, &pt.y, &DEFAULT_T_SEQ)?.limit,
        };
        let d = self.multiplier_derivative(&pt.x)?;
        Ok(ProductPoint::new(f, &pt.y * d + g))
    }
}

impl FlowMap for ExtendedSemigroup {
    fn apply_flat(&self, t: f64, v: &CVector) -> Result<CVector> {
        Ok(self.apply(t, &ProductPoint::split(v, self.space.n))?.flatten())
    }
}

/// `Ψ̃_t(z, w) = (Ψ_t(z), Γ_Ω(Ψ_t, z) G̃_t(z, w))` on `Φ[h](D)`.
#[derive(Debug, Clone)]
pub struct ConjugatedExtendedFlow {
    pub h: HoloMap,
    pub gamma: GammaSpec,
    pub psi: Flow,
    pub fiber: Flow,
    pub space: SpacePair,
}

impl ConjugatedExtendedFlow {
    pub fn new(h: HoloMap, gamma: GammaSpec, psi: Flow, fiber: Flow, space: SpacePair) -> Result<Self> {
        if h.dim() != psi.dim() || h.dim() != space.n {
            return Err(Error::Dimension {
                expected: space.n,
                got: psi.dim(),
            });
        }
        if fiber.dim() != space.m {
            return Err(Error::Dimension {
                expected: space.m,
                got: fiber.dim(),
            });
        }
        Ok(Self {
            h,
            gamma,
            psi,
            fiber,
            space,
        })
    }

    /// `Γ_Ω(Ψ_t, z)`.
    pub fn multiplier(&self, t: f64, z: &CVector) -> Result<C64> {
        let u = invert_default(&self.h, z)?;
        gamma_omega_at_preimage(&self.gamma, &self.h, &self.psi.element(t)?, &u)
    }

    pub fn apply(&self, t: f64, pt: &ProductPoint) -> Result<ProductPoint> {
        let u = invert_default(&self.h, &pt.x)?;
        let m = gamma_omega_at_preimage(&self.gamma, &self.h, &self.psi.element(t)?, &u)?;
        let fiber = if self.fiber.is_linear() {
            self.fiber.apply(t, &pt.y)?
        } else {
            let g = gamma_eval(&self.gamma, &self.h, &u)?;
            if g.norm() <= ZERO_TOL {
                return Err(Error::Numerical("Γ(h, x) is not invertible".into()));
            }
            self.fiber.apply(t, &(&pt.y / g))? * g
        };
        Ok(ProductPoint::new(self.psi.apply(t, &pt.x)?, fiber * m))
    }

    pub fn law_residual(&self, t: f64, s: f64, pt: &ProductPoint) -> Result<f64> {
        let whole = self.apply(t + s, pt)?;
        let split = self.apply(t, &self.apply(s, pt)?)?;
        Ok(whole.distance(&split))
    }
}

impl FlowMap for ConjugatedExtendedFlow {
    fn apply_flat(&self, t: f64, v: &CVector) -> Result<CVector> {
        Ok(self.apply(t, &ProductPoint::split(v, self.space.n))?.flatten())
    }
}

/// Builds `Ψ̃` for `h`, the mapping `Γ`, the base flow `Ψ` and the fiber flow `G`.
pub fn conjugate_extended_flow(
    h: HoloMap,
    gamma: GammaSpec,
    psi: Flow,
    fiber: Flow,
    space: SpacePair,
) -> Result<ConjugatedExtendedFlow> {
    ConjugatedExtendedFlow::new(h, gamma, psi, fiber, space)
}

/// `‖Φ[h](F̃_t(pt)) − Ψ̃_t(Φ[h](pt))‖`.
pub fn intertwining_residual(
    em: &ExtendedMap,
    ext: &ExtendedSemigroup,
    conj: &ConjugatedExtendedFlow,
    t: f64,
    pt: &ProductPoint,
) -> Result<f64> {
    let lhs = em.eval(&ext.apply(t, pt)?)?;
    let rhs = conj.apply(t, &em.eval(pt)?)?;
    Ok(lhs.distance(&rhs))
}

/// Decade-spaced default times for generator estimates.
pub const DEFAULT_T_SEQ: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

/// Value at `t = 0` of the polynomial through `(ts[k], vals[k])`.
pub fn neville_at_zero<V>(ts: &[f64], vals: &[V]) -> V
where
    V: Clone + std::ops::Sub<Output = V> + std::ops::Mul<C64, Output = V> + std::ops::Add<Output = V>,
{
    let mut p: Vec<V> = vals.to_vec();
    let n = ts.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ti, tj) = (ts[i], ts[i + level]);
            // p_i = (0 − t_j) p_i − (0 − t_i) p_{i+1}, divided by (t_i − t_j)
            let w_i = c(-tj / (ti - tj), 0.0);
            let w_j = c(ti / (ti - tj), 0.0);
            p[i] = p[i].clone() * w_i + p[i + 1].clone() * w_j;
        }
    }
    p[0].clone()
}

/// Difference quotients `(v − F_t(v))/t` and their extrapolation to `t = 0`.
#[derive(Debug, Clone)]
pub struct GeneratorEstimate {
    pub t_seq: Vec<f64>,
    pub quotients: Vec<CVector>,
    pub limit: CVector,
    /// `log₁₀` of successive quotient-change ratios; about `1` per decade for first order.
    pub observed_order: Vec<f64>,
}

impl GeneratorEstimate {
    /// `‖quotient_k − reference‖` for each `t_k`.
    pub fn raw_errors(&self, reference: &CVector) -> Vec<f64> {
        self.quotients.iter().map(|q| (q - reference).norm()).collect()
    }
}

/// Estimates the generator of `flow` at `v` from a decreasing sequence of times.
pub fn generator<F: FlowMap + ?Sized>(flow: &F, v: &CVector, t_seq: &[f64]) -> Result<GeneratorEstimate> {
    if t_seq.len() < 2 || t_seq.windows(2).any(|w| !(w[0] > w[1] && w[1] > 0.0)) {
        return Err(Error::InvalidParameter(
            "times must be positive and strictly decreasing".into(),
        ));
    }
    let quotients = t_seq
        .iter()
        .map(|&t| Ok((v - flow.apply_flat(t, v)?) / c(t, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let limit = neville_at_zero(t_seq, &quotients);
    let changes: Vec<f64> = quotients.windows(2).map(|w| (&w[0] - &w[1]).norm()).collect();
    let observed_order = changes
        .windows(2)
        .zip(t_seq.windows(3))
        .map(|(d, t)| (d[0] / d[1]).log10() / (t[0] / t[1]).log10())
        .collect();
    Ok(GeneratorEstimate {
        t_seq: t_seq.to_vec(),
        quotients,
        limit,
        observed_order,
    })
}

pub const STATIONARY_TOL: f64 = 1e-9;
const CANDIDATE_TOL: f64 = 1e-10;

/// Lower inclusion: `(x, 0)` is fixed for stationary `x`. Upper inclusion: every sampled fixed
/// point `(x, y)` of the extended flow has a stationary `x`.
pub fn check_stationary_sets(
    ext: &ExtendedSemigroup,
    candidates: &[CVector],
    t_grid: &[f64],
    probes: &[ProductPoint],
) -> CheckReport {
    let mut lower = Tally::new(STATIONARY_TOL);
    let mut rejected = 0usize;
    for x in candidates {
        let stationary = t_grid.iter().all(|&t| {
            ext.base
                .apply(t, x)
                .map(|fx| (fx - x).norm() <= CANDIDATE_TOL)
                .unwrap_or(false)
        });
        if !stationary {
            rejected += 1;
            continue;
        }
        let pt = ProductPoint::new(x.clone(), CVector::zeros(ext.space.m));
        for &t in t_grid {
            lower.record(match ext.apply(t, &pt) {
                Ok(img) => Probe::Decided(Witness::new(pt.flatten().as_slice(), Some(t), -img.distance(&pt))),
                Err(_) => Probe::Unknown,
            });
        }
    }
    let upper_probes: Vec<Option<Probe>> = probes
        .par_iter()
        .map(|pt| {
            let moved = t_grid
                .iter()
                .map(|&t| ext.apply(t, pt).map(|q| q.distance(pt)))
                .collect::<Result<Vec<_>>>();
            match moved {
                Err(_) => Some(Probe::Unknown),
                Ok(d) if d.iter().all(|&v| v <= STATIONARY_TOL) => {
                    let drift = t_grid
                        .iter()
                        .map(|&t| ext.base.apply(t, &pt.x).map(|fx| (fx - &pt.x).norm()))
                        .collect::<Result<Vec<_>>>();
                    Some(match drift {
                        Ok(v) => Probe::Decided(Witness::new(
                            pt.flatten().as_slice(),
                            None,
                            -v.into_iter().fold(0.0, f64::max),
                        )),
                        Err(_) => Probe::Unknown,
                    })
                }
                Ok(_) => None,
            }
        })
        .collect();
    let fixed_found = upper_probes.iter().filter(|p| p.is_some()).count();
    let mut upper = Tally::new(STATIONARY_TOL);
    upper.extend(upper_probes.into_iter().flatten());
    let mut b = ReportBuilder::new("stationary-sets")
        .param("candidates", candidates.len())
        .param("rejected-candidates", rejected)
        .param("probes", probes.len())
        .param("fixed-points-found", fixed_found)
        .sub(lower.subcheck("lower-inclusion", 0.05));
    let mut upper_sub = upper.subcheck("upper-inclusion", 0.05);
    if upper.decided + upper.unknown == 0 {
        // No sampled fixed points: nothing to contradict the inclusion.
        upper_sub.verdict = crate::verify::report::Verdict::Pass;
        b.push_note("no fixed points among probes apart from candidates");
    }
    b.push_sub(upper_sub);
    b.finish_from_subs()
}

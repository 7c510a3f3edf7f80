use crate::gamma::GammaSpec;
use crate::holo::HoloMap;
use crate::semigroup::LinearOperator;
use crate::verify::report::{CheckReport, Probe, ReportBuilder, Tally, Witness};
use crate::{c, inner, CMatrix, CVector, Error, Result, C64};
use rayon::prelude::*;

/// Post-composition motions `h ↦ M_t ∘ h` of a base map.
#[derive(Debug, Clone)]
pub enum Motion {
    /// `e^{−tA} h`
    Linear(LinearOperator),
    /// `h + tτ`
    Shift(CVector),
    /// `e^{−tA} h + λ ∫₀ᵗ e^{−sA} τ ds`
    Affine {
        op: LinearOperator,
        lambda: f64,
        tau: CVector,
    },
}

impl Motion {
    pub fn kind(&self) -> &'static str {
        match self {
            Motion::Linear(_) => "linear",
            Motion::Shift(_) => "shift",
            Motion::Affine { .. } => "affine",
        }
    }

    /// `A` when the motion is linear (an affine motion with `λ = 0` counts).
    pub fn linear_operator(&self) -> Option<&LinearOperator> {
        match self {
            Motion::Linear(op) => Some(op),
            Motion::Affine { op, lambda, .. } if *lambda == 0.0 => Some(op),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Motion::Linear(op) | Motion::Affine { op, .. } => op.dim(),
            Motion::Shift(tau) => tau.len(),
        }
    }

    /// `(e^{−tA}, shift)` so that the moved point is `e^{−tA} w + shift`.
    pub fn parts(&self, t: f64) -> (CMatrix, CVector) {
        match self {
            Motion::Linear(op) => (op.exp(t), CVector::zeros(op.dim())),
            Motion::Shift(tau) => {
                let n = tau.len();
                (CMatrix::identity(n, n), tau * c(t, 0.0))
            }
            Motion::Affine { op, lambda, tau } => (op.exp(t), op.integral(t) * tau * c(*lambda, 0.0)),
        }
    }

    pub fn apply(&self, t: f64, w: &CVector) -> CVector {
        let (m, s) = self.parts(t);
        m * w + s
    }

    /// `M_t ∘ h`.
    pub fn moved(&self, h: &HoloMap, t: f64) -> Result<HoloMap> {
        let (m, s) = self.parts(t);
        h.clone().post_affine(m, s)
    }
}

/// `C` for the motion under the given mapping, from the closed forms.
pub fn closed_form_c(gamma: &GammaSpec, motion: &Motion) -> Result<C64> {
    match (gamma, motion) {
        (GammaSpec::JacobianPower { alpha }, Motion::Linear(op))
        | (GammaSpec::JacobianPower { alpha }, Motion::Affine { op, .. }) => Ok(op.trace() * *alpha),
        (GammaSpec::JacobianPower { .. }, Motion::Shift(_)) => Ok(c(0.0, 0.0)),
        (GammaSpec::BoundaryRatioBiholo { tau, r }, m) if m.linear_operator().is_some() => {
            let op = m.linear_operator().expect("checked above");
            // A*τ = λ̄τ
            let adj = op.matrix.adjoint() * tau;
            let lambda_bar = inner(&adj, tau);
            let residual = (&adj - tau * lambda_bar).norm();
            if residual > 1e-10 {
                return Err(Error::Precondition(format!(
                    "τ is not an eigenvector of A* (residual {residual:e})"
                )));
            }
            Ok(lambda_bar.conj() * (2.0 / r))
        }
        (GammaSpec::Product(parts), _) => {
            let mut acc = c(0.0, 0.0);
            for p in parts {
                acc += closed_form_c(p, motion)?;
            }
            Ok(acc)
        }
        _ => Err(Error::Unsupported(format!(
            "no closed form for {} under a {} motion",
            gamma.kind(),
            motion.kind()
        ))),
    }
}

pub const DERIVE_C_TOL: f64 = 1e-9;

/// `C` together with the sampled residual of `Γ(M_t∘h, x) = e^{−Ct} Γ(h, x)`.
#[derive(Debug, Clone)]
pub struct DerivedC {
    pub c: C64,
    pub report: CheckReport,
}

/// Derives `C` and checks its defining identity on `points × times`.
pub fn derive_c(
    gamma: &GammaSpec,
    motion: &Motion,
    h: &HoloMap,
    points: &[CVector],
    times: &[f64],
) -> Result<DerivedC> {
    let cc = closed_form_c(gamma, motion)?;
    let moved: Vec<(f64, HoloMap)> = times
        .iter()
        .map(|&t| Ok((t, motion.moved(h, t)?)))
        .collect::<Result<_>>()?;
    let probes: Vec<Probe> = points
        .par_iter()
        .flat_map_iter(|x| {
            moved.iter().map(move |(t, ht)| {
                let lhs = gamma.eval(ht, x);
                let rhs = gamma.eval(h, x).map(|g| (-cc * *t).exp() * g);
                match (lhs, rhs) {
                    (Ok(a), Ok(b)) => {
                        let res = (a - b).norm() / b.norm().max(1.0);
                        Probe::Decided(Witness::new(x.as_slice(), Some(*t), -res))
                    }
                    _ => Probe::Unknown,
                }
            })
        })
        .collect();
    let mut tally = Tally::new(DERIVE_C_TOL);
    tally.extend(probes);
    let report = ReportBuilder::new("derive-c")
        .param("gamma", gamma.to_string())
        .param("motion", motion.kind())
        .param("map", h.label())
        .param("c-re", cc.re)
        .param("c-im", cc.im)
        .param("samples", points.len())
        .finish(&tally, 0.05);
    Ok(DerivedC { c: cc, report })
}

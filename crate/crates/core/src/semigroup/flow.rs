use super::linear::LinearOperator;
use crate::holo::invert::invert_default;
use crate::holo::HoloMap;
use crate::{c, euclid, CMatrix, CVector, Error, Result};

/// A one-parameter semigroup `t ↦ F_t` of holomorphic maps.
#[derive(Debug, Clone)]
pub enum Flow {
    Identity {
        dim: usize,
    },
    /// `e^{−tA}`
    Linear(LinearOperator),
    /// `e^{−tA} z + λ ∫₀ᵗ e^{−sA} τ ds`
    Affine {
        op: LinearOperator,
        lambda: f64,
        tau: CVector,
    },
    /// `h⁻¹ ∘ Ψ_t ∘ h`
    Conjugated {
        h: HoloMap,
        inner: Box<Flow>,
    },
}

impl Flow {
    pub fn linear(op: LinearOperator) -> Self {
        Flow::Linear(op)
    }

    /// `e^{−t} z` on `ℂ^dim`.
    pub fn exp_contraction(dim: usize) -> Result<Self> {
        Ok(Flow::Linear(LinearOperator::scalar(dim, c(1.0, 0.0))?))
    }

    /// `e^{−tB}` for accretive `B`.
    pub fn contraction(op: LinearOperator) -> Result<Self> {
        if !op.is_accretive() {
            return Err(Error::InvalidParameter(format!(
                "contraction flow needs an accretive operator (margin {})",
                op.accretivity_margin
            )));
        }
        Ok(Flow::Linear(op))
    }

    pub fn affine(op: LinearOperator, lambda: f64, tau: CVector) -> Result<Self> {
        if lambda < 0.0 {
            return Err(Error::InvalidParameter(format!("λ must be nonnegative, got {lambda}")));
        }
        if (euclid(&tau) - 1.0).abs() > 1e-12 || tau.len() != op.dim() {
            return Err(Error::InvalidParameter(
                "τ must be a unit vector of matching dimension".into(),
            ));
        }
        Ok(Flow::Affine { op, lambda, tau })
    }

    pub fn conjugated(h: HoloMap, inner: Flow) -> Result<Self> {
        if h.dim() != inner.dim() {
            return Err(Error::Dimension {
                expected: h.dim(),
                got: inner.dim(),
            });
        }
        Ok(Flow::Conjugated {
            h,
            inner: Box::new(inner),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Flow::Identity { dim } => *dim,
            Flow::Linear(op) | Flow::Affine { op, .. } => op.dim(),
            Flow::Conjugated { h, .. } => h.dim(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Flow::Identity { .. } => "identity".into(),
            Flow::Linear(op) => format!("linear[{}]", op.dim()),
            Flow::Affine { lambda, .. } => format!("affine(λ={lambda})"),
            Flow::Conjugated { h, inner } => format!("conjugated({}, {})", h.label(), inner.label()),
        }
    }

    /// Whether every `F_t` is linear, so that it commutes with scalar multiples of the identity.
    pub fn is_linear(&self) -> bool {
        matches!(self, Flow::Identity { .. } | Flow::Linear(_))
            || matches!(self, Flow::Affine { lambda, .. } if *lambda == 0.0)
    }

    fn check_t(t: f64) -> Result<()> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "time must be finite and nonnegative, got {t}"
            )));
        }
        Ok(())
    }

    /// `F_t` as an evaluable map.
    pub fn element(&self, t: f64) -> Result<HoloMap> {
        Self::check_t(t)?;
        match self {
            Flow::Identity { dim } => Ok(HoloMap::identity(*dim)),
            Flow::Linear(op) => HoloMap::linear(op.exp(t)),
            Flow::Affine { op, lambda, tau } => {
                let shift = op.integral(t) * tau * c(*lambda, 0.0);
                HoloMap::identity(op.dim()).post_affine(op.exp(t), shift)
            }
            Flow::Conjugated { h, inner } => {
                HoloMap::compose(h.clone().inverse(), HoloMap::compose(inner.element(t)?, h.clone())?)
            }
        }
    }

    /// `F_t(z)`, with no domain restriction for the linear and affine cases.
    pub fn apply(&self, t: f64, z: &CVector) -> Result<CVector> {
        Self::check_t(t)?;
        if z.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: z.len(),
            });
        }
        match self {
            Flow::Identity { .. } => Ok(z.clone()),
            Flow::Linear(op) => Ok(op.exp(t) * z),
            Flow::Affine { op, lambda, tau } => Ok(op.exp(t) * z + op.integral(t) * tau * c(*lambda, 0.0)),
            Flow::Conjugated { h, inner } => {
                let w = inner.apply(t, &h.eval(z)?)?;
                invert_default(h, &w)
            }
        }
    }

    /// Closed-form generator where one exists: `Az`, `Az − λτ` or `0`.
    pub fn generator_exact(&self, z: &CVector) -> Option<CVector> {
        match self {
            Flow::Identity { dim } => Some(CVector::zeros(*dim)),
            Flow::Linear(op) => Some(&op.matrix * z),
            Flow::Affine { op, lambda, tau } => Some(&op.matrix * z - tau * c(*lambda, 0.0)),
            Flow::Conjugated { .. } => None,
        }
    }

    /// The linear part `e^{−tA}` of linear and affine flows.
    pub fn linear_part(&self, t: f64) -> Option<CMatrix> {
        match self {
            Flow::Identity { dim } => Some(CMatrix::identity(*dim, *dim)),
            Flow::Linear(op) | Flow::Affine { op, .. } => Some(op.exp(t)),
            Flow::Conjugated { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn pt(z: C64) -> CVector {
        CVector::from_element(1, z)
    }

    #[test]
    fn affine_reduces_to_shift_and_linear() {
        let shift = Flow::affine(LinearOperator::scalar(1, c(0.0, 0.0)).unwrap(), 1.0, pt(c(1.0, 0.0))).unwrap();
        let z = pt(c(0.2, 0.3));
        assert!((shift.apply(2.0, &z).unwrap()[0] - c(2.2, 0.3)).norm() < 1e-14);
        let lin = Flow::affine(LinearOperator::scalar(1, c(1.0, 0.0)).unwrap(), 0.0, pt(c(1.0, 0.0))).unwrap();
        assert!((lin.apply(1.0, &z).unwrap()[0] - c(0.2, 0.3) * (-1.0f64).exp()).norm() < 1e-15);
    }

    #[test]
    fn conjugated_koebe_flow() {
        let flow = Flow::conjugated(HoloMap::koebe(), Flow::exp_contraction(1).unwrap()).unwrap();
        let z = pt(c(0.4, -0.2));
        let a = flow.apply(0.3, &z).unwrap();
        let b = flow.element(0.3).unwrap().eval(&z).unwrap();
        assert!((a - &b).norm() < 1e-12);
        let k = HoloMap::koebe();
        let lhs = k.eval(&b).unwrap()[0];
        let rhs = k.eval(&z).unwrap()[0] * (-0.3f64).exp();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn negative_time_rejected() {
        assert!(Flow::exp_contraction(1).unwrap().apply(-0.1, &pt(c(0.0, 0.0))).is_err());
    }
}

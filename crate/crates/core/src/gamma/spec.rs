use std::fmt;

use crate::holo::invert::invert_default;
use crate::holo::{BranchTracker, HoloMap};
use crate::{euclid, inner, CVector, Error, Result, C64};

/// Modulus below which a scalar is treated as zero.
pub const ZERO_TOL: f64 = 1e-12;

/// A scalar operator-valued mapping `Γ(h, x) = c(h, x) · id_Y`.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaSpec {
    /// `J_h(x)^α`
    JacobianPower {
        alpha: f64,
    },
    /// `(h(x)/x)^β`, one variable, with value `h'(0)^β` at the origin.
    RatioPower {
        beta: f64,
    },
    /// `((1 − ⟨h(x),τ⟩) / (1 − ⟨x,τ⟩))^{2/r}` for self-maps with boundary fixed point `τ`.
    BoundaryRatioSelf {
        tau: CVector,
        r: f64,
    },
    /// `(⟨h(x),τ⟩ / (1 − ⟨x,τ⟩))^{2/r}` for maps sending `τ` to the boundary point `0`.
    BoundaryRatioBiholo {
        tau: CVector,
        r: f64,
    },
    Product(Vec<GammaSpec>),
}

impl fmt::Display for GammaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaSpec::JacobianPower { alpha } => write!(f, "jacobian-power({alpha})"),
            GammaSpec::RatioPower { beta } => write!(f, "ratio-power({beta})"),
            GammaSpec::BoundaryRatioSelf { r, .. } => write!(f, "boundary-ratio-self(r={r})"),
            GammaSpec::BoundaryRatioBiholo { r, .. } => write!(f, "boundary-ratio-biholo(r={r})"),
            GammaSpec::Product(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "product({})", names.join(", "))
            }
        }
    }
}

fn unit_tau(tau: &CVector) -> Result<()> {
    if (euclid(tau) - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "boundary direction must be a unit vector, got norm {}",
            euclid(tau)
        )));
    }
    Ok(())
}

impl GammaSpec {
    pub fn jacobian_power(alpha: f64) -> Self {
        GammaSpec::JacobianPower { alpha }
    }

    pub fn ratio_power(beta: f64) -> Self {
        GammaSpec::RatioPower { beta }
    }

    pub fn boundary_ratio_self(tau: CVector, r: f64) -> Result<Self> {
        unit_tau(&tau)?;
        Ok(GammaSpec::BoundaryRatioSelf { tau, r })
    }

    pub fn boundary_ratio_biholo(tau: CVector, r: f64) -> Result<Self> {
        unit_tau(&tau)?;
        Ok(GammaSpec::BoundaryRatioBiholo { tau, r })
    }

    /// Short identifier used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            GammaSpec::JacobianPower { .. } => "jacobian-power",
            GammaSpec::RatioPower { .. } => "ratio-power",
            GammaSpec::BoundaryRatioSelf { .. } => "boundary-ratio-self",
            GammaSpec::BoundaryRatioBiholo { .. } => "boundary-ratio-biholo",
            GammaSpec::Product(_) => "product",
        }
    }

    /// The scalar `c` with `Γ(h, x) = c · id_Y`, continued along `[0, x]`.
    pub fn eval(&self, h: &HoloMap, x: &CVector) -> Result<C64> {
        gamma_eval(self, h, x)
    }
}

fn check_point(h: &HoloMap, x: &CVector) -> Result<()> {
    if x.len() != h.dim() {
        return Err(Error::Dimension {
            expected: h.dim(),
            got: x.len(),
        });
    }
    if h.on_ball() && euclid(x) >= 1.0 {
        return Err(Error::Domain(format!(
            "‖x‖ = {} is not inside the unit ball",
            euclid(x)
        )));
    }
    Ok(())
}

/// Evaluates `Γ(h, x)` as a scalar.
pub fn gamma_eval(spec: &GammaSpec, h: &HoloMap, x: &CVector) -> Result<C64> {
    check_point(h, x)?;
    let tracker = BranchTracker::default();
    match spec {
        GammaSpec::JacobianPower { alpha } => tracker.power_along_ray(|v| h.det_raw(v), C64::new(*alpha, 0.0), x),
        GammaSpec::RatioPower { beta } => {
            if h.dim() != 1 {
                return Err(Error::Unsupported(
                    "ratio power is defined for one-variable maps".into(),
                ));
            }
            let h0 = h.eval1(C64::new(0.0, 0.0))?;
            if h0.norm() > ZERO_TOL {
                return Err(Error::Precondition(format!("ratio power needs h(0) = 0, got {h0}")));
            }
            let ratio = |v: &CVector| -> Result<C64> {
                if v[0].norm() == 0.0 {
                    h.deriv1(v[0])
                } else {
                    Ok(h.eval1(v[0])? / v[0])
                }
            };
            tracker.power_along_ray(ratio, C64::new(*beta, 0.0), x)
        }
        GammaSpec::BoundaryRatioSelf { tau, r } => {
            let ratio = |v: &CVector| -> Result<C64> {
                let hv = h.eval_raw(v)?;
                Ok((1.0 - inner(&hv, tau)) / (1.0 - inner(v, tau)))
            };
            tracker.power_along_ray(ratio, C64::new(2.0 / r, 0.0), x)
        }
        GammaSpec::BoundaryRatioBiholo { tau, r } => {
            for (at, pt) in [("x", x.clone()), ("0", CVector::zeros(x.len()))] {
                let s = inner(&h.eval_raw(&pt)?, tau);
                if s.norm() <= ZERO_TOL {
                    return Err(Error::Precondition(format!(
                        "⟨h({at}), τ⟩ vanishes; boundary ratio is undefined"
                    )));
                }
            }
            let ratio = |v: &CVector| -> Result<C64> {
                let hv = h.eval_raw(v)?;
                Ok(inner(&hv, tau) / (1.0 - inner(v, tau)))
            };
            tracker.power_along_ray(ratio, C64::new(2.0 / r, 0.0), x)
        }
        GammaSpec::Product(parts) => {
            let mut acc = C64::new(1.0, 0.0);
            for p in parts {
                acc *= gamma_eval(p, h, x)?;
            }
            Ok(acc)
        }
    }
}

/// `Γ(f∘h, u) · Γ(h, u)⁻¹` at a known preimage `u = h⁻¹(x)`.
pub fn gamma_omega_at_preimage(spec: &GammaSpec, h: &HoloMap, f: &HoloMap, u: &CVector) -> Result<C64> {
    let fh = HoloMap::compose(f.clone(), h.clone())?;
    let denom = gamma_eval(spec, h, u)?;
    if denom.norm() <= ZERO_TOL {
        return Err(Error::Numerical("Γ(h, x) is not invertible".into()));
    }
    Ok(gamma_eval(spec, &fh, u)? / denom)
}

/// The transported mapping `Γ_Ω(f, x) = Γ(f∘h, h⁻¹x) · Γ(h, h⁻¹x)⁻¹` for `x ∈ h(ball)`.
pub fn gamma_omega(spec: &GammaSpec, h: &HoloMap, f: &HoloMap, x: &CVector) -> Result<C64> {
    if let Some(desc) = h.image() {
        let m = desc.margin(x);
        if m <= 0.0 {
            return Err(Error::Domain(format!("point is outside the image (margin {m})")));
        }
    }
    let u = invert_default(h, x)?;
    gamma_omega_at_preimage(spec, h, f, &u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;

    fn pt(z: C64) -> CVector {
        CVector::from_element(1, z)
    }

    fn tau1() -> CVector {
        pt(c(1.0, 0.0))
    }

    #[test]
    fn identity_gives_one() {
        let specs = [
            GammaSpec::jacobian_power(0.37),
            GammaSpec::ratio_power(0.8),
            GammaSpec::boundary_ratio_self(tau1(), 1.5).unwrap(),
            GammaSpec::Product(vec![GammaSpec::jacobian_power(0.5), GammaSpec::ratio_power(1.0)]),
        ];
        let id = HoloMap::identity(1);
        for s in &specs {
            for z in [c(0.0, 0.0), c(0.3, -0.5), c(-0.9, 0.1)] {
                let v = gamma_eval(s, &id, &pt(z)).unwrap();
                assert!((v - 1.0).norm() < 1e-15, "{s}");
            }
        }
    }

    #[test]
    fn ratio_power_at_origin() {
        let f = HoloMap::half_self();
        let v = gamma_eval(&GammaSpec::ratio_power(0.7), &f, &pt(c(0.0, 0.0))).unwrap();
        assert!((v - 0.5_f64.powf(0.7)).norm() < 1e-15);
        let err = gamma_eval(&GammaSpec::ratio_power(0.7), &HoloMap::one_minus(), &pt(c(0.1, 0.0)));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn boundary_ratio_biholo_is_one_for_one_minus() {
        let s = GammaSpec::boundary_ratio_biholo(tau1(), 2.0).unwrap();
        let v = gamma_eval(&s, &HoloMap::one_minus(), &pt(c(0.4, 0.0))).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }

    #[test]
    fn boundary_ratio_biholo_needs_nonvanishing_product() {
        let s = GammaSpec::boundary_ratio_biholo(tau1(), 2.0).unwrap();
        let err = gamma_eval(&s, &HoloMap::identity(1), &pt(c(0.4, 0.0)));
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn classical_root_of_koebe_derivative() {
        let v = gamma_eval(&GammaSpec::jacobian_power(0.5), &HoloMap::koebe(), &pt(c(0.5, 0.0))).unwrap();
        assert!((v - 12.0_f64.sqrt()).norm() < 1e-12);
    }

    #[test]
    fn transported_identity_and_inverse() {
        let spec = GammaSpec::jacobian_power(0.5);
        let h = HoloMap::koebe();
        let x = pt(c(0.8, 0.6));
        let v = gamma_omega(&spec, &h, &HoloMap::identity(1), &x).unwrap();
        assert!((v - 1.0).norm() < 1e-12);
        let z = pt(c(0.3, 0.2));
        let hz = h.eval(&z).unwrap();
        let inv = h.clone().inverse();
        let v = gamma_omega(&spec, &h, &inv, &hz).unwrap();
        let expect = 1.0 / gamma_eval(&spec, &h, &z).unwrap();
        assert!((v - expect).norm() < 1e-9 * expect.norm());
    }

    #[test]
    fn outside_point_is_rejected() {
        let err = gamma_omega(
            &GammaSpec::jacobian_power(0.5),
            &HoloMap::one_minus(),
            &HoloMap::identity(1),
            &pt(c(2.5, 0.0)),
        );
        assert!(matches!(err, Err(Error::Domain(_))));
    }
}

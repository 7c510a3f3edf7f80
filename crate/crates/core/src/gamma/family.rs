use crate::holo::HoloMap;
use crate::{c, euclid, CMatrix, CVector, Result, C64};

/// Families of maps that appropriate mappings are defined on.
#[derive(Debug, Clone, PartialEq)]
pub enum MapFamily {
    /// Holomorphic self-maps of the ball fixing the origin.
    SelfMapsFixingZero { dim: usize },
    /// Self-maps of the ball with boundary fixed point `τ`.
    SelfMapsBoundaryTau { tau: CVector },
    /// Biholomorphic maps with `h(0) = 0`, `J_h(0) = I`.
    BiholomorphicNormalized { dim: usize },
    /// Biholomorphic maps whose radial limit at `τ` is `0`.
    BiholomorphicBoundaryTau { tau: CVector },
}

const RADIAL_PROBE: f64 = 1.0 - 1e-7;

impl MapFamily {
    pub fn label(&self) -> &'static str {
        match self {
            MapFamily::SelfMapsFixingZero { .. } => "self-maps-fixing-0",
            MapFamily::SelfMapsBoundaryTau { .. } => "self-maps-fixing-tau-boundary",
            MapFamily::BiholomorphicNormalized { .. } => "biholomorphic-normalized",
            MapFamily::BiholomorphicBoundaryTau { .. } => "biholomorphic-boundary-tau",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            MapFamily::SelfMapsFixingZero { dim } | MapFamily::BiholomorphicNormalized { dim } => *dim,
            MapFamily::SelfMapsBoundaryTau { tau } | MapFamily::BiholomorphicBoundaryTau { tau } => tau.len(),
        }
    }

    pub fn is_self_map_family(&self) -> bool {
        matches!(
            self,
            MapFamily::SelfMapsFixingZero { .. } | MapFamily::SelfMapsBoundaryTau { .. }
        )
    }

    /// Catalog members of the family.
    ///
    /// Anchor phases are kept small so that principal branches compose consistently.
    pub fn members(&self) -> Result<Vec<HoloMap>> {
        let n = self.dim();
        match self {
            MapFamily::SelfMapsFixingZero { .. } if n == 1 => Ok(vec![
                HoloMap::identity(1),
                HoloMap::scalar(C64::from_polar(1.0, 0.7)),
                HoloMap::scalar(C64::from_polar(0.6, -1.1)),
                HoloMap::half_self(),
                HoloMap::compose(HoloMap::half_self(), HoloMap::half_self())?,
                disk_conjugated_contraction(c(0.4, -0.3), 0.6)?,
                disk_conjugated_contraction(c(-0.7, 0.2), 0.9)?,
            ]),
            MapFamily::SelfMapsFixingZero { .. } => {
                let mut out = vec![HoloMap::identity(n)];
                let diag = CMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        C64::from_polar(0.9 - 0.2 * i as f64, 0.3 * (i as f64 + 1.0))
                    } else {
                        c(0.0, 0.0)
                    }
                });
                out.push(HoloMap::linear(unitary(n) * &diag)?);
                let a = CVector::from_fn(n, |i, _| C64::from_polar(0.5 / n as f64, 0.4 + i as f64));
                let la = &diag * &a;
                out.push(HoloMap::compose(
                    HoloMap::ball_automorphism(la)?,
                    HoloMap::compose(HoloMap::linear(diag.clone())?, HoloMap::ball_automorphism(a)?)?,
                )?);
                let mut comps = vec![HoloMap::half_self(), disk_conjugated_contraction(c(0.3, 0.3), 0.7)?];
                while comps.len() < n {
                    comps.push(HoloMap::scalar(c(0.8, 0.0)));
                }
                comps.truncate(n);
                out.push(HoloMap::diagonal(comps)?);
                Ok(out)
            }
            MapFamily::SelfMapsBoundaryTau { tau } if n == 1 => {
                let rot = tau[0];
                let mut out = Vec::new();
                for k in [0.1, 0.3, 0.5, 0.8] {
                    out.push(conjugate_by_rotation(HoloMap::hyperbolic(k)?, rot));
                }
                for s in [0.5, 0.8] {
                    out.push(toward_boundary_point(tau, s)?);
                }
                Ok(out)
            }
            MapFamily::SelfMapsBoundaryTau { tau } => {
                let mut out = Vec::new();
                for k in [0.3, 0.6] {
                    // −φ_{kτ} fixes τ.
                    let phi = HoloMap::ball_automorphism(tau * c(k, 0.0))?;
                    out.push(phi.scaled(c(-1.0, 0.0)));
                }
                for s in [0.5, 0.8] {
                    out.push(toward_boundary_point(tau, s)?);
                }
                Ok(out)
            }
            MapFamily::BiholomorphicNormalized { .. } if n == 1 => Ok(vec![
                HoloMap::identity(1),
                HoloMap::koebe(),
                HoloMap::cayley(),
                HoloMap::log_map(),
            ]),
            MapFamily::BiholomorphicNormalized { .. } => Ok(vec![
                HoloMap::identity(n),
                HoloMap::diagonal(
                    (0..n)
                        .map(|k| if k == 0 { HoloMap::koebe() } else { HoloMap::cayley() })
                        .collect(),
                )?,
            ]),
            MapFamily::BiholomorphicBoundaryTau { tau } if n == 1 => {
                let rot = tau[0];
                let one_minus = conjugate_by_rotation(HoloMap::one_minus(), rot);
                Ok(vec![
                    one_minus.clone(),
                    one_minus.clone().scaled(c(2.0, 0.0)),
                    one_minus.clone().scaled(C64::from_polar(1.0, 0.5)),
                    HoloMap::compose(one_minus, conjugate_by_rotation(HoloMap::hyperbolic(0.5)?, rot))?,
                ])
            }
            MapFamily::BiholomorphicBoundaryTau { tau } => {
                // z ↦ τ − z vanishes radially at τ.
                let m = CMatrix::identity(n, n) * c(-1.0, 0.0);
                Ok(vec![HoloMap::identity(n).post_affine(m, tau.clone())?])
            }
        }
    }

    /// Sampled membership test for the family.
    pub fn accepts(&self, f: &HoloMap, samples: &[CVector]) -> bool {
        let n = self.dim();
        if f.dim() != n {
            return false;
        }
        let zero = CVector::zeros(n);
        let self_map = || {
            samples
                .iter()
                .all(|z| f.eval(z).map(|w| euclid(&w) < 1.0).unwrap_or(false))
        };
        let radial = |tau: &CVector| f.eval(&(tau * c(RADIAL_PROBE, 0.0))).ok();
        match self {
            MapFamily::SelfMapsFixingZero { .. } => {
                f.eval(&zero).map(|w| euclid(&w) <= 1e-12).unwrap_or(false) && self_map()
            }
            MapFamily::SelfMapsBoundaryTau { tau } => {
                self_map() && radial(tau).is_some_and(|w| (w - tau).norm() < 1e-4)
            }
            MapFamily::BiholomorphicNormalized { .. } => {
                let value = f.eval(&zero).map(|w| euclid(&w) <= 1e-12).unwrap_or(false);
                let jac = f
                    .jacobian(&zero)
                    .map(|j| (j - CMatrix::identity(n, n)).norm() <= 1e-9)
                    .unwrap_or(false);
                value && jac
            }
            MapFamily::BiholomorphicBoundaryTau { tau } => radial(tau).is_some_and(|w| w.norm() < 1e-4),
        }
    }
}

/// `φ ∘ (k·) ∘ φ⁻¹`-type self-map: `m_{ka} ∘ (k·) ∘ m_{−a}`, which fixes `0`.
fn disk_conjugated_contraction(a: C64, k: f64) -> Result<HoloMap> {
    HoloMap::compose(
        HoloMap::disk_automorphism(a * k)?,
        HoloMap::compose(HoloMap::scalar(c(k, 0.0)), HoloMap::disk_automorphism(-a)?)?,
    )
}

/// `z ↦ ρ f(ρ̄ z)` for a unimodular `ρ`.
fn conjugate_by_rotation(f: HoloMap, rot: C64) -> HoloMap {
    if (rot - 1.0).norm() == 0.0 {
        return f;
    }
    let inner = HoloMap::compose(f, HoloMap::scalar(rot.conj())).expect("one-dimensional");
    inner.scaled(rot)
}

/// `z ↦ (1 − s) τ + s z`.
fn toward_boundary_point(tau: &CVector, s: f64) -> Result<HoloMap> {
    let n = tau.len();
    HoloMap::identity(n).post_affine(CMatrix::identity(n, n) * c(s, 0.0), tau * c(1.0 - s, 0.0))
}

/// A fixed unitary matrix: a product of Householder reflections.
fn unitary(n: usize) -> CMatrix {
    let mut u = CMatrix::identity(n, n);
    for k in 0..n {
        let v = CVector::from_fn(n, |i, _| C64::from_polar(1.0 + 0.3 * i as f64, 0.5 * (i + k) as f64));
        let v = &v / c(v.norm(), 0.0);
        let refl = CMatrix::identity(n, n) - &v * v.adjoint() * c(2.0, 0.0);
        u = refl * u;
    }
    // Two reflections give determinant 1; rephase an odd count to keep det near 1.
    if n % 2 == 1 {
        u *= c(-1.0, 0.0);
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Sampler;

    #[test]
    fn members_satisfy_their_predicate() {
        let tau1 = CVector::from_element(1, c(1.0, 0.0));
        let tau2 = CVector::from_column_slice(&[c(0.6, 0.0), c(0.0, 0.8)]);
        let families = [
            MapFamily::SelfMapsFixingZero { dim: 1 },
            MapFamily::SelfMapsFixingZero { dim: 2 },
            MapFamily::SelfMapsBoundaryTau { tau: tau1.clone() },
            MapFamily::SelfMapsBoundaryTau { tau: tau2 },
            MapFamily::BiholomorphicNormalized { dim: 1 },
            MapFamily::BiholomorphicNormalized { dim: 2 },
            MapFamily::BiholomorphicBoundaryTau { tau: tau1 },
        ];
        for fam in &families {
            let samples = Sampler::default().with_n(200).ball_points(fam.dim());
            for f in fam.members().unwrap() {
                assert!(fam.accepts(&f, &samples), "{} rejects {}", fam.label(), f.label());
            }
        }
    }

    #[test]
    fn unitary_is_unitary() {
        for n in 1..4 {
            let u = unitary(n);
            assert!((u.adjoint() * &u - CMatrix::identity(n, n)).norm() < 1e-13);
        }
    }
}

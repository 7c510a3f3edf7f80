//! The extension `Φ[h](x, y) = (h(x), Γ(h, x) y)`, its inverse, image membership and the
//! classical constructors.

use rayon::prelude::*;

use crate::gamma::{gamma_eval, GammaSpec, ZERO_TOL};
use crate::geometry::{ProductPoint, SpacePair};
use crate::holo::invert::{invert_default, locate, EDGE_BAND};
use crate::holo::{HoloMap, Membership, MembershipStatus};
use crate::verify::report::{CheckReport, Probe, ReportBuilder, Tally, Witness};
use crate::{c, euclid, CMatrix, CVector, Error, Result, C64};

/// Step for differencing `Γ(h, ·)` in `x`.
pub const GAMMA_FD_STEP: f64 = 1e-5;

#[derive(Debug, Clone)]
pub struct ExtendedMap {
    pub base: HoloMap,
    pub gamma: GammaSpec,
    pub space: SpacePair,
}

impl ExtendedMap {
    pub fn new(base: HoloMap, gamma: GammaSpec, space: SpacePair) -> Result<Self> {
        if base.dim() != space.n {
            return Err(Error::Dimension {
                expected: space.n,
                got: base.dim(),
            });
        }
        Ok(Self { base, gamma, space })
    }

    /// The scalar `Γ(h, x)`.
    pub fn gamma_at(&self, x: &CVector) -> Result<C64> {
        gamma_eval(&self.gamma, &self.base, x)
    }

    pub fn eval(&self, pt: &ProductPoint) -> Result<ProductPoint> {
        if pt.y.len() != self.space.m {
            return Err(Error::Dimension {
                expected: self.space.m,
                got: pt.y.len(),
            });
        }
        let g = self.gamma_at(&pt.x)?;
        Ok(ProductPoint::new(self.base.eval(&pt.x)?, &pt.y * g))
    }

    /// `(h⁻¹(z), Γ(h, h⁻¹(z))⁻¹ w)`.
    pub fn inverse(&self, pt: &ProductPoint) -> Result<ProductPoint> {
        let x = invert_default(&self.base, &pt.x)?;
        let g = self.gamma_at(&x)?;
        if g.norm() <= ZERO_TOL {
            return Err(Error::Numerical("Γ(h, x) is not invertible".into()));
        }
        Ok(ProductPoint::new(x, &pt.y / g))
    }

    /// Membership in `Φ[h](D)` through the inverse formula; margin `p(‖x‖) − ‖Γ⁻¹ w‖`.
    pub fn membership(&self, pt: &ProductPoint) -> Membership {
        let loc = locate(&self.base, &pt.x, true);
        match loc.status {
            MembershipStatus::Outside => return Membership::outside(loc.margin),
            MembershipStatus::Unknown => return Membership::unknown(),
            MembershipStatus::Inside => {}
        }
        let Some(x) = loc.preimage else {
            return Membership::unknown();
        };
        if euclid(&x) >= 1.0 - EDGE_BAND {
            return Membership::unknown();
        }
        let Ok(g) = self.gamma_at(&x) else {
            return Membership::unknown();
        };
        if g.norm() <= ZERO_TOL {
            return Membership::unknown();
        }
        let margin = self.space.profile_at(&x) - self.space.y_norm(&(&pt.y / g));
        if margin > 0.0 {
            Membership::inside(margin, Some(x))
        } else {
            Membership {
                status: MembershipStatus::Outside,
                margin,
                preimage: Some(x),
            }
        }
    }

    /// Gradient of `x ↦ Γ(h, x)` by central differences with step [`GAMMA_FD_STEP`].
    pub fn gamma_gradient(&self, x: &CVector) -> Result<CVector> {
        let n = x.len();
        let mut out = CVector::zeros(n);
        for j in 0..n {
            let mut e = CVector::zeros(n);
            e[j] = c(GAMMA_FD_STEP, 0.0);
            let plus = self.gamma_at(&(x + &e))?;
            let minus = self.gamma_at(&(x - &e))?;
            out[j] = (plus - minus) / (2.0 * GAMMA_FD_STEP);
        }
        Ok(out)
    }

    /// Complex Jacobian `[[h'(x), 0], [y ∇Γᵀ, Γ I]]` of size `(n + m)²`.
    pub fn jacobian(&self, pt: &ProductPoint) -> Result<CMatrix> {
        let (n, m) = (self.space.n, self.space.m);
        let hj = self.base.jacobian(&pt.x)?;
        let g = self.gamma_at(&pt.x)?;
        let grad = self.gamma_gradient(&pt.x)?;
        let mut out = CMatrix::zeros(n + m, n + m);
        out.view_mut((0, 0), (n, n)).copy_from(&hj);
        out.view_mut((n, 0), (m, n)).copy_from(&(&pt.y * grad.transpose()));
        for k in 0..m {
            out[(n + k, n + k)] = g;
        }
        Ok(out)
    }
}

/// `Φ[f]` for the given mapping and product space.
pub fn extend(gamma: GammaSpec, f: HoloMap, space: SpacePair) -> Result<ExtendedMap> {
    ExtendedMap::new(f, gamma, space)
}

/// Classical extension operators on Euclidean balls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicKind {
    /// `(f(z₁), √f'(z₁) z₀)`
    RoperSuffridge,
    /// `(f(z₁), f'(z₁)^α z₀)`, `α ∈ [0, 1/2]`
    Gkk { alpha: f64 },
    /// `(f(z), J_f(z)^{1/(n+1)} w)` for `f` on the ball of `ℂⁿ`
    PfaltzgraffSuffridge,
    /// `(f(z₁), (f(z₁)/z₁)^β z₀)`, `β ∈ [0, 1]`
    Gk { beta: f64 },
}

fn check_normalized_1d(f: &HoloMap) -> Result<()> {
    if f.dim() != 1 {
        return Err(Error::Dimension {
            expected: 1,
            got: f.dim(),
        });
    }
    let zero = c(0.0, 0.0);
    let v = f.eval_scalar(zero)?;
    let d = f.derivative(zero)?;
    if v.norm() > 1e-10 || (d - 1.0).norm() > 1e-8 {
        return Err(Error::Precondition(format!(
            "classical operators need f(0) = 0 and f'(0) = 1, got {v} and {d}"
        )));
    }
    Ok(())
}

/// Classical operator of the given kind; `m` is the dimension of the added factor (ignored for
/// the Pfaltzgraff–Suffridge operator, which adds one variable).
pub fn classic(kind: ClassicKind, f: HoloMap, m: usize) -> Result<ExtendedMap> {
    match kind {
        ClassicKind::RoperSuffridge => {
            check_normalized_1d(&f)?;
            extend(GammaSpec::jacobian_power(0.5), f, SpacePair::euclidean(1, m, 2.0, 2.0)?)
        }
        ClassicKind::Gkk { alpha } => {
            if !(0.0..=0.5).contains(&alpha) {
                return Err(Error::InvalidParameter(format!("α must lie in [0, 1/2], got {alpha}")));
            }
            check_normalized_1d(&f)?;
            extend(
                GammaSpec::jacobian_power(alpha),
                f,
                SpacePair::euclidean(1, m, 2.0, 2.0)?,
            )
        }
        ClassicKind::Gk { beta } => {
            if !(0.0..=1.0).contains(&beta) {
                return Err(Error::InvalidParameter(format!("β must lie in [0, 1], got {beta}")));
            }
            check_normalized_1d(&f)?;
            extend(GammaSpec::ratio_power(beta), f, SpacePair::euclidean(1, m, 2.0, 2.0)?)
        }
        ClassicKind::PfaltzgraffSuffridge => {
            let n = f.dim();
            let j0 = f.jacobian_det(&CVector::zeros(n))?;
            if j0.norm() <= ZERO_TOL {
                return Err(Error::Precondition("J_f(0) vanishes".into()));
            }
            extend(
                GammaSpec::jacobian_power(1.0 / (n as f64 + 1.0)),
                f,
                SpacePair::euclidean(n, 1, 2.0, 2.0)?,
            )
        }
    }
}

fn deviation(a: &ProductPoint, b: &ProductPoint) -> f64 {
    a.distance(b) / euclid(&b.flatten()).max(1.0)
}

pub const COMPOSITION_TOL: f64 = 1e-9;

/// Checks `Φ̂[f∘g] = Φ̂[f]∘Φ̂[g]` and, when `h` is given, `Φ[h∘g] = Φ[h]∘Φ̂[g]` on samples.
pub fn check_composition_laws(
    hat: &GammaSpec,
    spec: &GammaSpec,
    f: &HoloMap,
    g: &HoloMap,
    h: Option<&HoloMap>,
    space: &SpacePair,
    points: &[ProductPoint],
) -> Result<CheckReport> {
    let ef = ExtendedMap::new(f.clone(), hat.clone(), space.clone())?;
    let eg = ExtendedMap::new(g.clone(), hat.clone(), space.clone())?;
    let efg = ExtendedMap::new(HoloMap::compose(f.clone(), g.clone())?, hat.clone(), space.clone())?;
    let probe = |pt: &ProductPoint, lhs: Result<ProductPoint>, rhs: Result<ProductPoint>| match (lhs, rhs) {
        (Ok(a), Ok(b)) => Probe::Decided(Witness::new(pt.flatten().as_slice(), None, -deviation(&a, &b))),
        _ => Probe::Unknown,
    };
    let selfs: Vec<Probe> = points
        .par_iter()
        .map(|pt| probe(pt, efg.eval(pt), eg.eval(pt).and_then(|q| ef.eval(&q))))
        .collect();
    let mut t_self = Tally::new(COMPOSITION_TOL);
    t_self.extend(selfs);
    let mut b = ReportBuilder::new("composition-laws")
        .param("hat", hat.to_string())
        .param("gamma", spec.to_string())
        .param("f", f.label())
        .param("g", g.label())
        .param("samples", points.len())
        .sub(t_self.subcheck("self-map-composition", 0.05));
    if let Some(h) = h {
        b = b.param("h", h.label());
        let eh = ExtendedMap::new(h.clone(), spec.clone(), space.clone())?;
        let ehg = ExtendedMap::new(HoloMap::compose(h.clone(), g.clone())?, spec.clone(), space.clone())?;
        let bis: Vec<Probe> = points
            .par_iter()
            .map(|pt| probe(pt, ehg.eval(pt), eg.eval(pt).and_then(|q| eh.eval(&q))))
            .collect();
        let mut t_bi = Tally::new(COMPOSITION_TOL);
        t_bi.extend(bis);
        b.push_sub(t_bi.subcheck("biholomorphic-composition", 0.05));
    }
    Ok(b.finish_from_subs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(x: C64, y: C64) -> ProductPoint {
        ProductPoint::from_slices(&[x], &[y])
    }

    #[test]
    fn roper_suffridge_of_koebe() {
        let em = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 1).unwrap();
        let out = em.eval(&pp(c(0.5, 0.0), c(0.1, 0.0))).unwrap();
        assert!((out.x[0] - 2.0).norm() < 1e-14);
        assert!((out.y[0] - 0.1 * 12.0_f64.sqrt()).norm() < 1e-12);
        let back = em.inverse(&out).unwrap();
        assert!(back.distance(&pp(c(0.5, 0.0), c(0.1, 0.0))) < 1e-10);
        let m = em.membership(&out);
        assert!(m.is_inside());
        assert!((m.margin - (0.75_f64.sqrt() - 0.1)).abs() < 1e-9);
    }

    #[test]
    fn gk_of_cayley() {
        let em = classic(ClassicKind::Gk { beta: 1.0 }, HoloMap::cayley(), 1).unwrap();
        let out = em.eval(&pp(c(0.5, 0.0), c(0.2, 0.0))).unwrap();
        assert!((out.x[0] - 1.0).norm() < 1e-14);
        assert!((out.y[0] - 0.4).norm() < 1e-12);
    }

    #[test]
    fn parameter_ranges() {
        assert!(matches!(
            classic(ClassicKind::Gkk { alpha: 0.9 }, HoloMap::koebe(), 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            classic(ClassicKind::Gk { beta: -0.1 }, HoloMap::koebe(), 1),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            classic(ClassicKind::RoperSuffridge, HoloMap::one_minus(), 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn unit_ratio_extension_of_one_minus() {
        let tau = CVector::from_element(1, c(1.0, 0.0));
        let em = extend(
            GammaSpec::boundary_ratio_biholo(tau, 2.0).unwrap(),
            HoloMap::one_minus(),
            SpacePair::euclidean(1, 1, 2.0, 2.0).unwrap(),
        )
        .unwrap();
        let out = em.eval(&pp(c(0.3, 0.1), c(0.2, -0.1))).unwrap();
        assert!(out.distance(&pp(c(0.7, -0.1), c(0.2, -0.1))) < 1e-14);
        let back = em.inverse(&pp(c(0.7, 0.0), c(0.05, 0.0))).unwrap();
        assert!(back.distance(&pp(c(0.3, 0.0), c(0.05, 0.0))) < 1e-12);
        assert!(em.membership(&pp(c(2.5, 0.0), c(0.0, 0.0))).is_outside());
    }

    #[test]
    fn pfaltzgraff_suffridge_of_identity() {
        let em = classic(ClassicKind::PfaltzgraffSuffridge, HoloMap::identity(2), 1).unwrap();
        assert_eq!(em.space.n, 2);
        let pt = ProductPoint::from_slices(&[c(0.1, 0.2), c(-0.3, 0.0)], &[c(0.4, 0.1)]);
        assert!(em.eval(&pt).unwrap().distance(&pt) < 1e-15);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let em = classic(ClassicKind::RoperSuffridge, HoloMap::koebe(), 2).unwrap();
        let pt = ProductPoint::from_slices(&[c(0.3, -0.2)], &[c(0.2, 0.1), c(-0.1, 0.3)]);
        let j = em.jacobian(&pt).unwrap();
        let fd = crate::holo::fd::jacobian(
            |v| em.eval(&ProductPoint::split(v, 1)).map(|p| p.flatten()),
            &pt.flatten(),
        )
        .unwrap();
        assert!((&j - &fd).norm() < 1e-6 * j.norm());
    }
}

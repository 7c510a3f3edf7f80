use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::{euclid, CVector, C64};

/// Exact description of the image of the unit ball under a catalog map.
#[derive(Debug, Clone, PartialEq)]
pub enum ImageDescriptor {
    Disk {
        center: C64,
        radius: f64,
    },
    /// `{w : Re(w · conj(normal)) > offset}`
    HalfPlane {
        normal: C64,
        offset: f64,
    },
    /// `ℂ ∖ (−∞, tip]`
    SlitPlane {
        tip: f64,
    },
    /// `{w : |Im w| < π/2, Re eʷ > 1/2}`
    LogHalfPlane,
    UnitBall {
        dim: usize,
    },
    /// `scale · base + shift`
    Affine {
        scale: C64,
        shift: C64,
        base: Box<ImageDescriptor>,
    },
}

impl ImageDescriptor {
    pub fn is_unit_ball(&self) -> bool {
        match self {
            ImageDescriptor::UnitBall { .. } => true,
            ImageDescriptor::Disk { center, radius } => center.norm() == 0.0 && *radius == 1.0,
            _ => false,
        }
    }

    /// Signed margin: positive strictly inside, nonpositive outside or on the boundary.
    pub fn margin(&self, w: &CVector) -> f64 {
        match self {
            ImageDescriptor::UnitBall { .. } => 1.0 - euclid(w),
            _ => self.margin_scalar(w[0]),
        }
    }

    pub fn margin_scalar(&self, w: C64) -> f64 {
        match self {
            ImageDescriptor::Disk { center, radius } => radius - (w - center).norm(),
            ImageDescriptor::HalfPlane { normal, offset } => ((w * normal.conj()).re - offset) / normal.norm(),
            ImageDescriptor::SlitPlane { tip } => {
                if w.re <= *tip {
                    if w.im == 0.0 {
                        -(tip - w.re)
                    } else {
                        w.im.abs()
                    }
                } else {
                    (w.re - tip).hypot(w.im)
                }
            }
            ImageDescriptor::LogHalfPlane => {
                let strip = FRAC_PI_2 - w.im.abs();
                if strip <= 0.0 {
                    return strip;
                }
                strip.min(w.exp().re - 0.5)
            }
            ImageDescriptor::UnitBall { .. } => 1.0 - w.norm(),
            ImageDescriptor::Affine { scale, shift, base } => base.margin_scalar((w - shift) / scale) * scale.norm(),
        }
    }

    pub fn contains(&self, w: &CVector) -> bool {
        self.margin(w) > 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipStatus {
    Inside,
    Outside,
    Unknown,
}

/// Outcome of a membership query.
#[derive(Debug, Clone)]
pub struct Membership {
    pub status: MembershipStatus,
    /// Signed distance-like margin; `NaN` when nothing could be decided.
    pub margin: f64,
    /// A preimage in the ball when one was found.
    pub preimage: Option<CVector>,
}

impl Membership {
    pub fn inside(margin: f64, preimage: Option<CVector>) -> Self {
        Self {
            status: MembershipStatus::Inside,
            margin,
            preimage,
        }
    }

    pub fn outside(margin: f64) -> Self {
        Self {
            status: MembershipStatus::Outside,
            margin,
            preimage: None,
        }
    }

    pub fn unknown() -> Self {
        Self {
            status: MembershipStatus::Unknown,
            margin: f64::NAN,
            preimage: None,
        }
    }

    pub fn is_inside(&self) -> bool {
        self.status == MembershipStatus::Inside
    }

    pub fn is_outside(&self) -> bool {
        self.status == MembershipStatus::Outside
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slit_plane_margins() {
        let slit = ImageDescriptor::SlitPlane { tip: -0.25 };
        assert!(slit.margin_scalar(C64::new(-0.5, 0.0)) < 0.0);
        assert_eq!(slit.margin_scalar(C64::new(-0.25, 0.0)), 0.0);
        assert!((slit.margin_scalar(C64::new(-1.0, 0.1)) - 0.1).abs() < 1e-15);
        assert!((slit.margin_scalar(C64::new(0.75, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn affine_pullback() {
        let d = ImageDescriptor::Affine {
            scale: C64::new(2.0, 0.0),
            shift: C64::new(1.0, 0.0),
            base: Box::new(ImageDescriptor::Disk {
                center: C64::new(0.0, 0.0),
                radius: 1.0,
            }),
        };
        assert!((d.margin_scalar(C64::new(1.0, 0.0)) - 2.0).abs() < 1e-15);
        assert!(d.margin_scalar(C64::new(3.5, 0.0)) < 0.0);
    }

    #[test]
    fn log_half_plane() {
        let d = ImageDescriptor::LogHalfPlane;
        assert!(d.margin_scalar(C64::new(0.0, 0.0)) > 0.0);
        assert!(d.margin_scalar(C64::new(-1.0, 0.0)) < 0.0);
        assert!(d.margin_scalar(C64::new(3.0, 1.6)) < 0.0);
    }
}

use std::fmt;
use std::sync::Arc;

use super::fd;
use super::image::ImageDescriptor;
use super::invert::{default_seeds, invert};
use crate::{c, euclid, inner, CMatrix, CVector, Error, Result, C64};

type CustomEval = Arc<dyn Fn(&CVector) -> CVector + Send + Sync>;

/// An evaluable holomorphic map on the open unit ball (the unit disk when `dim() == 1`).
///
/// Catalog entries carry closed-form derivatives; composites use the chain rule and
/// [`HoloMap::Custom`] falls back to finite differences.
#[derive(Clone)]
pub enum HoloMap {
    Identity {
        dim: usize,
    },
    /// `z / (1 − z)²`
    Koebe,
    /// `1 − z`
    OneMinus,
    /// `z / (1 − z)`
    Cayley,
    /// `(z − a) / (1 − ā z)`
    DiskAutomorphism {
        a: C64,
    },
    /// `z / (2 − z)`
    HalfSelf,
    /// `(z + c) / (1 + c z)` with real `c ∈ (−1, 1)`; fixes `±1`.
    Hyperbolic {
        c: f64,
    },
    /// `log(1 / (1 − z))`
    LogMap,
    Linear {
        matrix: CMatrix,
    },
    /// Involutive automorphism `φ_a` of the Euclidean ball with `φ_a(0) = a`, `φ_a(a) = 0`.
    BallAutomorphism {
        a: CVector,
    },
    /// `(f_1(z_1), …, f_n(z_n))` for one-dimensional `f_k`.
    Diagonal {
        maps: Vec<HoloMap>,
    },
    /// `outer ∘ inner`
    Compose {
        outer: Box<HoloMap>,
        inner: Box<HoloMap>,
    },
    /// `M · inner(z) + b`
    PostAffine {
        matrix: CMatrix,
        shift: CVector,
        inner: Box<HoloMap>,
    },
    /// Inverse of a biholomorphic map, defined on its image and evaluated by Newton's method.
    Inverse {
        map: Box<HoloMap>,
    },
    Custom {
        label: String,
        dim: usize,
        eval: CustomEval,
    },
}

impl fmt::Debug for HoloMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn finite(v: C64, what: &str) -> Result<C64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{what} is singular at this point")))
    }
}

fn scalar_matrix(m: &CMatrix) -> C64 {
    m[(0, 0)]
}

impl HoloMap {
    pub fn identity(dim: usize) -> Self {
        HoloMap::Identity { dim }
    }

    pub fn koebe() -> Self {
        HoloMap::Koebe
    }

    pub fn one_minus() -> Self {
        HoloMap::OneMinus
    }

    pub fn cayley() -> Self {
        HoloMap::Cayley
    }

    pub fn half_self() -> Self {
        HoloMap::HalfSelf
    }

    pub fn log_map() -> Self {
        HoloMap::LogMap
    }

    pub fn disk_automorphism(a: C64) -> Result<Self> {
        if a.norm() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "disk automorphism needs |a| < 1, got {a}"
            )));
        }
        Ok(HoloMap::DiskAutomorphism { a })
    }

    pub fn hyperbolic(c: f64) -> Result<Self> {
        if !(c.abs() < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "hyperbolic automorphism needs |c| < 1, got {c}"
            )));
        }
        Ok(HoloMap::Hyperbolic { c })
    }

    pub fn linear(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidParameter("linear map needs a square matrix".into()));
        }
        Ok(HoloMap::Linear { matrix })
    }

    /// Multiplication by a complex scalar in one dimension.
    pub fn scalar(factor: C64) -> Self {
        HoloMap::Linear {
            matrix: CMatrix::from_element(1, 1, factor),
        }
    }

    pub fn ball_automorphism(a: CVector) -> Result<Self> {
        if euclid(&a) >= 1.0 || a.is_empty() {
            return Err(Error::InvalidParameter(
                "ball automorphism needs a nonempty vector with ‖a‖ < 1".into(),
            ));
        }
        Ok(HoloMap::BallAutomorphism { a })
    }

    pub fn diagonal(maps: Vec<HoloMap>) -> Result<Self> {
        if maps.is_empty() || maps.iter().any(|m| m.dim() != 1) {
            return Err(Error::InvalidParameter(
                "diagonal map needs one-dimensional components".into(),
            ));
        }
        Ok(HoloMap::Diagonal { maps })
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: HoloMap, inner: HoloMap) -> Result<Self> {
        if outer.dim() != inner.dim() {
            return Err(Error::Dimension {
                expected: inner.dim(),
                got: outer.dim(),
            });
        }
        Ok(HoloMap::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        })
    }

    /// `z ↦ M · self(z) + b`.
    pub fn post_affine(self, matrix: CMatrix, shift: CVector) -> Result<Self> {
        let n = self.dim();
        if matrix.nrows() != n || matrix.ncols() != n || shift.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: matrix.nrows(),
            });
        }
        Ok(HoloMap::PostAffine {
            matrix,
            shift,
            inner: Box::new(self),
        })
    }

    /// `z ↦ factor · self(z)`.
    pub fn scaled(self, factor: C64) -> Self {
        let n = self.dim();
        HoloMap::PostAffine {
            matrix: CMatrix::identity(n, n) * factor,
            shift: CVector::zeros(n),
            inner: Box::new(self),
        }
    }

    /// `z ↦ self(z) + shift`.
    pub fn shifted(self, shift: CVector) -> Result<Self> {
        let n = self.dim();
        self.post_affine(CMatrix::identity(n, n), shift)
    }

    pub fn inverse(self) -> Self {
        HoloMap::Inverse { map: Box::new(self) }
    }

    pub fn custom<F>(label: impl Into<String>, dim: usize, eval: F) -> Self
    where
        F: Fn(&CVector) -> CVector + Send + Sync + 'static,
    {
        HoloMap::Custom {
            label: label.into(),
            dim,
            eval: Arc::new(eval),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            HoloMap::Identity { dim } | HoloMap::Custom { dim, .. } => *dim,
            HoloMap::Koebe
            | HoloMap::OneMinus
            | HoloMap::Cayley
            | HoloMap::DiskAutomorphism { .. }
            | HoloMap::HalfSelf
            | HoloMap::Hyperbolic { .. }
            | HoloMap::LogMap => 1,
            HoloMap::Linear { matrix } => matrix.nrows(),
            HoloMap::BallAutomorphism { a } => a.len(),
            HoloMap::Diagonal { maps } => maps.len(),
            HoloMap::Compose { inner, .. } => inner.dim(),
            HoloMap::PostAffine { inner, .. } => inner.dim(),
            HoloMap::Inverse { map } => map.dim(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            HoloMap::Identity { dim } => format!("id[{dim}]"),
            HoloMap::Koebe => "koebe".into(),
            HoloMap::OneMinus => "one-minus".into(),
            HoloMap::Cayley => "cayley".into(),
            HoloMap::DiskAutomorphism { a } => format!("disk-automorphism({a})"),
            HoloMap::HalfSelf => "half-self".into(),
            HoloMap::Hyperbolic { c } => format!("hyperbolic({c})"),
            HoloMap::LogMap => "log-map".into(),
            HoloMap::Linear { matrix } if matrix.nrows() == 1 => format!("scalar({})", matrix[(0, 0)]),
            HoloMap::Linear { matrix } => format!("linear[{}]", matrix.nrows()),
            HoloMap::BallAutomorphism { a } => format!("ball-automorphism[{}]", a.len()),
            HoloMap::Diagonal { maps } => format!(
                "diag({})",
                maps.iter().map(|m| m.label()).collect::<Vec<_>>().join(", ")
            ),
            HoloMap::Compose { outer, inner } => format!("{} ∘ {}", outer.label(), inner.label()),
            HoloMap::PostAffine { inner, .. } => format!("affine({})", inner.label()),
            HoloMap::Inverse { map } => format!("inverse({})", map.label()),
            HoloMap::Custom { label, .. } => label.clone(),
        }
    }

    /// Whether the domain is the unit ball. Inverses live on the image of their map.
    pub fn on_ball(&self) -> bool {
        match self {
            HoloMap::Inverse { .. } => false,
            HoloMap::Compose { inner, .. } => inner.on_ball(),
            HoloMap::PostAffine { inner, .. } => inner.on_ball(),
            _ => true,
        }
    }

    fn check_domain(&self, z: &CVector) -> Result<()> {
        if z.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: z.len(),
            });
        }
        if self.on_ball() && euclid(z) >= 1.0 {
            return Err(Error::Domain(format!(
                "‖z‖ = {} is not inside the unit ball",
                euclid(z)
            )));
        }
        Ok(())
    }

    /// `f(z)` for `z` in the open unit ball.
    pub fn eval(&self, z: &CVector) -> Result<CVector> {
        self.check_domain(z)?;
        self.eval_raw(z)
    }

    /// Scalar evaluation of a one-dimensional map.
    pub fn eval_scalar(&self, z: C64) -> Result<C64> {
        self.check_domain(&CVector::from_element(1, z))?;
        self.eval1(z)
    }

    /// Complex Jacobian matrix at `z`.
    pub fn jacobian(&self, z: &CVector) -> Result<CMatrix> {
        self.check_domain(z)?;
        self.jac_raw(z)
    }

    /// `f'(z)` of a one-dimensional map.
    pub fn derivative(&self, z: C64) -> Result<C64> {
        self.check_domain(&CVector::from_element(1, z))?;
        self.deriv1(z)
    }

    /// Jacobian determinant `J_f(z)`.
    pub fn jacobian_det(&self, z: &CVector) -> Result<C64> {
        self.check_domain(z)?;
        self.det_raw(z)
    }

    pub(crate) fn det_raw(&self, z: &CVector) -> Result<C64> {
        if self.dim() == 1 {
            self.deriv1(z[0])
        } else {
            Ok(self.jac_raw(z)?.determinant())
        }
    }

    /// Evaluation without the domain check; the map's formula is used wherever it is finite.
    pub(crate) fn eval_raw(&self, z: &CVector) -> Result<CVector> {
        if self.dim() == 1 {
            return Ok(CVector::from_element(1, self.eval1(z[0])?));
        }
        match self {
            HoloMap::Identity { .. } => Ok(z.clone()),
            HoloMap::Linear { matrix } => Ok(matrix * z),
            HoloMap::BallAutomorphism { a } => ball_automorphism_eval(a, z),
            HoloMap::Diagonal { maps } => {
                let mut out = CVector::zeros(z.len());
                for (k, m) in maps.iter().enumerate() {
                    out[k] = m.eval1(z[k])?;
                }
                Ok(out)
            }
            HoloMap::Compose { outer, inner } => outer.eval_raw(&inner.eval_raw(z)?),
            HoloMap::PostAffine { matrix, shift, inner } => Ok(matrix * inner.eval_raw(z)? + shift),
            HoloMap::Inverse { map } => invert(map, z, &default_seeds(z.len())),
            HoloMap::Custom { eval, .. } => {
                let v = eval(z);
                if v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
                    Ok(v)
                } else {
                    Err(Error::Domain(format!("{} is singular here", self.label())))
                }
            }
            _ => unreachable!("one-dimensional catalog entry"),
        }
    }

    pub(crate) fn jac_raw(&self, z: &CVector) -> Result<CMatrix> {
        if self.dim() == 1 {
            return Ok(CMatrix::from_element(1, 1, self.deriv1(z[0])?));
        }
        match self {
            HoloMap::Identity { dim } => Ok(CMatrix::identity(*dim, *dim)),
            HoloMap::Linear { matrix } => Ok(matrix.clone()),
            HoloMap::BallAutomorphism { a } => ball_automorphism_jac(a, z),
            HoloMap::Diagonal { maps } => {
                let mut out = CMatrix::zeros(z.len(), z.len());
                for (k, m) in maps.iter().enumerate() {
                    out[(k, k)] = m.deriv1(z[k])?;
                }
                Ok(out)
            }
            HoloMap::Compose { outer, inner } => {
                let u = inner.eval_raw(z)?;
                Ok(outer.jac_raw(&u)? * inner.jac_raw(z)?)
            }
            HoloMap::PostAffine { matrix, inner, .. } => Ok(matrix * inner.jac_raw(z)?),
            HoloMap::Inverse { map } => {
                let u = invert(map, z, &default_seeds(z.len()))?;
                map.jac_raw(&u)?
                    .try_inverse()
                    .ok_or_else(|| Error::Numerical("singular Jacobian in inverse map".into()))
            }
            HoloMap::Custom { .. } => fd::jacobian(|v| self.eval_raw(v), z),
            _ => unreachable!("one-dimensional catalog entry"),
        }
    }

    /// Scalar formula for one-dimensional maps.
    pub(crate) fn eval1(&self, z: C64) -> Result<C64> {
        let one = c(1.0, 0.0);
        let v = match self {
            HoloMap::Identity { .. } => z,
            HoloMap::Koebe => z / ((one - z) * (one - z)),
            HoloMap::OneMinus => one - z,
            HoloMap::Cayley => z / (one - z),
            HoloMap::DiskAutomorphism { a } => (z - a) / (one - a.conj() * z),
            HoloMap::HalfSelf => z / (2.0 - z),
            HoloMap::Hyperbolic { c: k } => (z + k) / (one + k * z),
            HoloMap::LogMap => {
                if z == one {
                    return Err(Error::Domain("log-map is singular at 1".into()));
                }
                -(one - z).ln()
            }
            HoloMap::Linear { matrix } => scalar_matrix(matrix) * z,
            HoloMap::BallAutomorphism { a } => {
                let a = a[0];
                (a - z) / (one - z * a.conj())
            }
            HoloMap::Diagonal { maps } => maps[0].eval1(z)?,
            HoloMap::Compose { outer, inner } => outer.eval1(inner.eval1(z)?)?,
            HoloMap::PostAffine { matrix, shift, inner } => scalar_matrix(matrix) * inner.eval1(z)? + shift[0],
            HoloMap::Inverse { map } => super::invert::invert_scalar(map, z)?,
            HoloMap::Custom { eval, .. } => eval(&CVector::from_element(1, z))[0],
        };
        finite(v, "map")
    }

    pub(crate) fn deriv1(&self, z: C64) -> Result<C64> {
        let one = c(1.0, 0.0);
        let v = match self {
            HoloMap::Identity { .. } => one,
            HoloMap::Koebe => (one + z) / ((one - z) * (one - z) * (one - z)),
            HoloMap::OneMinus => -one,
            HoloMap::Cayley => one / ((one - z) * (one - z)),
            HoloMap::DiskAutomorphism { a } => {
                let d = one - a.conj() * z;
                (1.0 - a.norm_sqr()) / (d * d)
            }
            HoloMap::HalfSelf => 2.0 / ((2.0 - z) * (2.0 - z)),
            HoloMap::Hyperbolic { c: k } => {
                let d = one + k * z;
                (1.0 - k * k) / (d * d)
            }
            HoloMap::LogMap => one / (one - z),
            HoloMap::Linear { matrix } => scalar_matrix(matrix),
            HoloMap::BallAutomorphism { a } => {
                let a = a[0];
                let d = one - z * a.conj();
                -(1.0 - a.norm_sqr()) / (d * d)
            }
            HoloMap::Diagonal { maps } => maps[0].deriv1(z)?,
            HoloMap::Compose { outer, inner } => outer.deriv1(inner.eval1(z)?)? * inner.deriv1(z)?,
            HoloMap::PostAffine { matrix, inner, .. } => scalar_matrix(matrix) * inner.deriv1(z)?,
            HoloMap::Inverse { map } => {
                let u = super::invert::invert_scalar(map, z)?;
                one / map.deriv1(u)?
            }
            HoloMap::Custom { .. } => fd::jacobian(|v| self.eval_raw(v), &CVector::from_element(1, z))?[(0, 0)],
        };
        finite(v, "derivative")
    }

    /// Exact description of `f(ball)` when one is known.
    pub fn image(&self) -> Option<ImageDescriptor> {
        let unit = |dim: usize| {
            if dim == 1 {
                ImageDescriptor::Disk {
                    center: c(0.0, 0.0),
                    radius: 1.0,
                }
            } else {
                ImageDescriptor::UnitBall { dim }
            }
        };
        match self {
            HoloMap::Identity { dim } => Some(unit(*dim)),
            HoloMap::Koebe => Some(ImageDescriptor::SlitPlane { tip: -0.25 }),
            HoloMap::OneMinus => Some(ImageDescriptor::Disk {
                center: c(1.0, 0.0),
                radius: 1.0,
            }),
            HoloMap::Cayley => Some(ImageDescriptor::HalfPlane {
                normal: c(1.0, 0.0),
                offset: -0.5,
            }),
            HoloMap::DiskAutomorphism { .. } | HoloMap::Hyperbolic { .. } => Some(unit(1)),
            HoloMap::HalfSelf => Some(ImageDescriptor::Disk {
                center: c(1.0 / 3.0, 0.0),
                radius: 2.0 / 3.0,
            }),
            HoloMap::LogMap => Some(ImageDescriptor::LogHalfPlane),
            HoloMap::BallAutomorphism { a } => Some(unit(a.len())),
            HoloMap::Linear { matrix } => {
                let n = matrix.nrows();
                if n == 1 {
                    let m = matrix[(0, 0)];
                    (m.norm() > 0.0).then(|| ImageDescriptor::Disk {
                        center: c(0.0, 0.0),
                        radius: m.norm(),
                    })
                } else {
                    let gram = matrix.adjoint() * matrix;
                    let unitary = (gram - CMatrix::identity(n, n)).norm() < 1e-12;
                    unitary.then(|| unit(n))
                }
            }
            HoloMap::Compose { outer, inner } => match inner.image() {
                Some(d) if d.is_unit_ball() => outer.image(),
                _ => None,
            },
            HoloMap::PostAffine { matrix, shift, inner } if self.dim() == 1 => {
                let m = matrix[(0, 0)];
                if m.norm() == 0.0 {
                    return None;
                }
                inner.image().map(|base| ImageDescriptor::Affine {
                    scale: m,
                    shift: shift[0],
                    base: Box::new(base),
                })
            }
            HoloMap::Inverse { map } if map.on_ball() => Some(unit(map.dim())),
            _ => None,
        }
    }

    /// Finite-difference Cauchy–Riemann residual `max_j ‖∂_{x_j} f − (−i) ∂_{y_j} f‖` at `z`.
    pub fn cauchy_riemann_residual(&self, z: &CVector) -> Result<f64> {
        self.check_domain(z)?;
        fd::cauchy_riemann_residual(|v| self.eval_raw(v), z)
    }
}

fn ball_automorphism_parts(a: &CVector) -> CMatrix {
    let n = a.len();
    let a2 = a.norm_squared();
    if a2 == 0.0 {
        return CMatrix::identity(n, n);
    }
    let s = (1.0 - a2).sqrt();
    let proj = a * a.adjoint() / c(a2, 0.0);
    &proj + (CMatrix::identity(n, n) - &proj) * c(s, 0.0)
}

fn ball_automorphism_eval(a: &CVector, z: &CVector) -> Result<CVector> {
    let m = ball_automorphism_parts(a);
    let d = c(1.0, 0.0) - inner(z, a);
    if d.norm() == 0.0 {
        return Err(Error::Domain("ball automorphism is singular here".into()));
    }
    Ok((a - m * z) / d)
}

fn ball_automorphism_jac(a: &CVector, z: &CVector) -> Result<CMatrix> {
    let m = ball_automorphism_parts(a);
    let d = c(1.0, 0.0) - inner(z, a);
    if d.norm() == 0.0 {
        return Err(Error::Domain("ball automorphism is singular here".into()));
    }
    let numer = a - &m * z;
    let conj_row = a.map(|v| v.conj()).transpose();
    Ok(-m / d + numer * conj_row / (d * d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(z: &[C64]) -> CVector {
        CVector::from_column_slice(z)
    }

    #[test]
    fn catalog_values() {
        assert!((HoloMap::koebe().eval_scalar(c(0.5, 0.0)).unwrap() - c(2.0, 0.0)).norm() < 1e-15);
        let z = c(0.3, -0.2);
        assert_eq!(HoloMap::identity(1).eval_scalar(z).unwrap(), z);
        assert_eq!(HoloMap::one_minus().eval_scalar(c(0.0, 0.3)).unwrap(), c(1.0, -0.3));
    }

    #[test]
    fn catalog_derivatives() {
        assert!((HoloMap::koebe().derivative(c(0.5, 0.0)).unwrap() - c(12.0, 0.0)).norm() < 1e-12);
        assert_eq!(HoloMap::identity(1).derivative(c(0.1, 0.4)).unwrap(), c(1.0, 0.0));
        let d = HoloMap::half_self().derivative(c(0.3, 0.0)).unwrap();
        assert!((d.re - 2.0 / (1.7 * 1.7)).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            HoloMap::koebe().eval_scalar(c(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            HoloMap::koebe().derivative(c(0.0, 1.2)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            HoloMap::identity(2).eval(&v(&[c(0.1, 0.0)])),
            Err(Error::Dimension { .. })
        ));
        assert!(HoloMap::disk_automorphism(c(1.0, 0.0)).is_err());
        assert!(HoloMap::hyperbolic(-1.0).is_err());
    }

    #[test]
    fn ball_automorphism_is_involution() {
        let a = v(&[c(0.3, 0.1), c(-0.2, 0.25)]);
        let phi = HoloMap::ball_automorphism(a.clone()).unwrap();
        assert!((phi.eval(&CVector::zeros(2)).unwrap() - &a).norm() < 1e-15);
        assert!(phi.eval(&a).unwrap().norm() < 1e-15);
        let z = v(&[c(0.1, -0.4), c(0.3, 0.2)]);
        let back = phi.eval(&phi.eval(&z).unwrap()).unwrap();
        assert!((back - &z).norm() < 1e-14);
    }

    #[test]
    fn closed_form_jacobians_match_finite_differences() {
        let a = v(&[c(0.3, 0.1), c(-0.2, 0.25)]);
        let phi = HoloMap::ball_automorphism(a).unwrap();
        let diag = HoloMap::diagonal(vec![HoloMap::half_self(), HoloMap::scalar(c(0.0, 0.8))]).unwrap();
        let comp = HoloMap::compose(phi.clone(), diag).unwrap();
        for map in [phi, comp] {
            let z = v(&[c(0.2, -0.1), c(0.05, 0.4)]);
            let exact = map.jacobian(&z).unwrap();
            let approx = fd::jacobian(|p| map.eval_raw(p), &z).unwrap();
            assert!((&exact - &approx).norm() <= 1e-6 * exact.norm(), "{}", map.label());
        }
    }

    #[test]
    fn one_dimensional_catalog_is_holomorphic() {
        let maps = [
            HoloMap::koebe(),
            HoloMap::one_minus(),
            HoloMap::cayley(),
            HoloMap::disk_automorphism(c(0.3, -0.4)).unwrap(),
            HoloMap::half_self(),
            HoloMap::hyperbolic(0.6).unwrap(),
            HoloMap::log_map(),
        ];
        for map in &maps {
            for z in [c(0.1, 0.2), c(-0.5, 0.3), c(0.7, -0.1)] {
                let zv = CVector::from_element(1, z);
                assert!(map.cauchy_riemann_residual(&zv).unwrap() < 1e-6);
                let exact = map.derivative(z).unwrap();
                let approx = fd::jacobian(|p| map.eval_raw(p), &zv).unwrap()[(0, 0)];
                assert!(
                    (exact - approx).norm() <= 1e-6 * exact.norm().max(1.0),
                    "{}",
                    map.label()
                );
            }
        }
    }

    #[test]
    fn inverse_map_round_trip() {
        let kinv = HoloMap::koebe().inverse();
        let z = kinv.eval_scalar(c(2.0, 0.0)).unwrap();
        assert!((z - c(0.5, 0.0)).norm() < 1e-12);
        let d = kinv.eval1(c(2.0, 0.0)).and_then(|_| kinv.deriv1(c(2.0, 0.0))).unwrap();
        assert!((d - c(1.0 / 12.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn custom_map_uses_finite_differences() {
        let sq = HoloMap::custom("square", 1, |z: &CVector| z.map(|w| w * w));
        let d = sq.derivative(c(0.3, 0.4)).unwrap();
        assert!((d - c(0.6, 0.8)).norm() < 1e-8);
    }
}

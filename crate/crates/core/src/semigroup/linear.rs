use crate::{c, CMatrix, CVector, Error, Result, C64};

/// Spectral data is accepted when `‖Av − λv‖ ≤ EIGEN_RESIDUAL_TOL · max(1, ‖A‖)`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-8;
/// "Bounded away from zero" threshold for the real part of the spectrum.
pub const ACCRETIVE_MARGIN: f64 = 1e-10;

const THETA_13: f64 = 5.371920351148152;
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn norm1(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `e^{M}` by scaling and squaring with the degree-13 Padé approximant.
pub fn expm(m: &CMatrix) -> CMatrix {
    let n = m.nrows();
    let eye = CMatrix::identity(n, n);
    let nrm = norm1(m);
    if nrm == 0.0 {
        return eye;
    }
    let s = if nrm > THETA_13 {
        (nrm / THETA_13).log2().ceil().max(0.0) as i32
    } else {
        0
    };
    let a = m * c(0.5_f64.powi(s), 0.0);
    let b = |k: usize| c(PADE_13[k], 0.0);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9)) + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &eye * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8)) + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &eye * b(0);
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Padé denominator is nonsingular after scaling");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// `e^{−tA}`.
pub fn matrix_exp(a: &CMatrix, t: f64) -> CMatrix {
    expm(&(a * c(-t, 0.0)))
}

/// A square matrix with validated spectral data.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    pub matrix: CMatrix,
    pub eigenvalues: Vec<C64>,
    /// `min Re λ` over the spectrum.
    pub accretivity_margin: f64,
}

impl LinearOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidParameter(
                "operator must be a nonempty square matrix".into(),
            ));
        }
        if matrix.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::InvalidParameter("operator has non-finite entries".into()));
        }
        let n = matrix.nrows();
        let (_, t) = matrix.clone().schur().unpack();
        let eigenvalues: Vec<C64> = (0..n).map(|k| t[(k, k)]).collect();
        let scale = matrix.norm().max(1.0);
        for &lambda in &eigenvalues {
            let shifted = &matrix - CMatrix::identity(n, n) * lambda;
            let svd = shifted.svd(false, true);
            let v_t = svd.v_t.ok_or_else(|| Error::Numerical("SVD failed".into()))?;
            let k = svd
                .singular_values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(k, _)| k)
                .unwrap_or(0);
            let v = v_t.row(k).adjoint();
            let residual = (&matrix * &v - &v * lambda).norm() / v.norm();
            if residual > EIGEN_RESIDUAL_TOL * scale {
                return Err(Error::Numerical(format!(
                    "eigenpair residual {residual:e} for λ = {lambda}"
                )));
            }
        }
        let accretivity_margin = eigenvalues.iter().map(|l| l.re).fold(f64::INFINITY, f64::min);
        Ok(Self {
            matrix,
            eigenvalues,
            accretivity_margin,
        })
    }

    pub fn scalar(dim: usize, value: C64) -> Result<Self> {
        Self::new(CMatrix::identity(dim, dim) * value)
    }

    pub fn diagonal(values: &[C64]) -> Result<Self> {
        Self::new(CMatrix::from_diagonal(&CVector::from_column_slice(values)))
    }

    /// `diag(self, other)`.
    pub fn block_diag(&self, other: &LinearOperator) -> Result<Self> {
        let (n, m) = (self.dim(), other.dim());
        let mut out = CMatrix::zeros(n + m, n + m);
        out.view_mut((0, 0), (n, n)).copy_from(&self.matrix);
        out.view_mut((n, n), (m, m)).copy_from(&other.matrix);
        let mut eigenvalues = self.eigenvalues.clone();
        eigenvalues.extend(other.eigenvalues.iter().copied());
        Ok(Self {
            matrix: out,
            accretivity_margin: self.accretivity_margin.min(other.accretivity_margin),
            eigenvalues,
        })
    }

    /// `A + s·I`.
    pub fn shifted(&self, s: C64) -> Result<Self> {
        let n = self.dim();
        Self::new(&self.matrix + CMatrix::identity(n, n) * s)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Spectrum in the closed right half-plane.
    pub fn is_accretive(&self) -> bool {
        self.accretivity_margin >= -ACCRETIVE_MARGIN
    }

    /// Spectrum bounded away from the imaginary axis on the right.
    pub fn is_strictly_accretive(&self) -> bool {
        self.accretivity_margin > ACCRETIVE_MARGIN
    }

    /// Smallest eigenvalue of `(A + A*)/2`. Nonnegative exactly when `e^{−tA}` is a Euclidean
    /// contraction for all `t ≥ 0`; the spectral margin alone does not guarantee that.
    pub fn numerical_range_margin(&self) -> f64 {
        let h = (&self.matrix + self.matrix.adjoint()) * c(0.5, 0.0);
        h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn min_abs_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.norm()).fold(f64::INFINITY, f64::min)
    }

    /// `e^{−tA}`.
    pub fn exp(&self, t: f64) -> CMatrix {
        matrix_exp(&self.matrix, t)
    }

    /// `∫₀ᵗ e^{−sA} ds`.
    pub fn integral(&self, t: f64) -> CMatrix {
        let n = self.dim();
        let eye = CMatrix::identity(n, n);
        if t == 0.0 {
            return CMatrix::zeros(n, n);
        }
        if self.min_abs_eigenvalue() > ACCRETIVE_MARGIN {
            if let Some(inv) = self.matrix.clone().try_inverse() {
                return inv * (&eye - self.exp(t));
            }
        }
        if t * self.matrix.norm() <= 2.0 {
            // Σ_k (−1)^k t^{k+1} A^k / (k+1)!
            let mut term = &eye * c(t, 0.0);
            let mut sum = term.clone();
            for k in 1..200 {
                term = &term * &self.matrix * c(-t / (k as f64 + 1.0), 0.0);
                sum += &term;
                if term.norm() <= 1e-14 * sum.norm() {
                    break;
                }
            }
            return sum;
        }
        // Top-right block of exp([[−tA, tI], [0, 0]]).
        let mut big = CMatrix::zeros(2 * n, 2 * n);
        big.view_mut((0, 0), (n, n)).copy_from(&(&self.matrix * c(-t, 0.0)));
        big.view_mut((0, n), (n, n)).copy_from(&(&eye * c(t, 0.0)));
        expm(&big).view((0, n), (n, n)).into_owned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(a: [[f64; 2]; 2]) -> CMatrix {
        CMatrix::from_fn(2, 2, |i, j| c(a[i][j], 0.0))
    }

    #[test]
    fn spot_values() {
        let d = matrix_exp(&m2([[1.0, 0.0], [0.0, 2.0]]), 1.0);
        assert!((d[(0, 0)].re - (-1.0f64).exp()).abs() < 1e-15);
        assert!((d[(1, 1)].re - (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(matrix_exp(&m2([[3.0, 1.0], [-2.0, 0.5]]), 0.0), CMatrix::identity(2, 2));
        let nil = matrix_exp(&m2([[0.0, 1.0], [0.0, 0.0]]), 2.5);
        assert!((nil - m2([[1.0, -2.5], [0.0, 1.0]])).norm() < 1e-14);
    }

    #[test]
    fn agrees_with_reference_exponential() {
        let a = CMatrix::from_fn(3, 3, |i, j| c((i as f64 - j as f64) * 0.7 + 0.1, (i * j) as f64 * 0.3));
        for t in [0.01, 1.0, 25.0] {
            let ours = matrix_exp(&a, t);
            let reference = (&a * c(-t, 0.0)).exp();
            assert!(
                (&ours - &reference).norm() <= 1e-12 * reference.norm().max(1.0),
                "t = {t}"
            );
        }
    }

    #[test]
    fn spectral_data() {
        let op = LinearOperator::new(m2([[2.0, 1.0], [0.0, 0.5]])).unwrap();
        assert!((op.accretivity_margin - 0.5).abs() < 1e-12);
        assert!(op.is_strictly_accretive());
        let rot = LinearOperator::new(m2([[0.0, -1.0], [1.0, 0.0]])).unwrap();
        assert!(rot.accretivity_margin.abs() < 1e-12);
        assert!(rot.is_accretive() && !rot.is_strictly_accretive());
    }

    #[test]
    fn affine_integrals() {
        let one = LinearOperator::scalar(1, c(1.0, 0.0)).unwrap();
        assert!((one.integral(0.7)[(0, 0)].re - (1.0 - (-0.7f64).exp())).abs() < 1e-15);
        let zero = LinearOperator::scalar(1, c(0.0, 0.0)).unwrap();
        assert!((zero.integral(3.0)[(0, 0)].re - 3.0).abs() < 1e-14);
        let nil = LinearOperator::new(m2([[0.0, 1.0], [0.0, 0.0]])).unwrap();
        // ∫ [[1, −s], [0, 1]] ds = [[t, −t²/2], [0, t]]
        for t in [0.5, 10.0] {
            let i = nil.integral(t);
            assert!((i - m2([[t, -t * t / 2.0], [0.0, t]])).norm() < 1e-12 * t * t);
        }
    }
}

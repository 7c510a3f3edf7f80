//! Product space `Z = X × Y`, the profile function `p` and the product unit ball.
//!
//! The ball is `D = {(x, y) : ‖x‖ < 1, ‖y‖ < p(‖x‖)}` and its norm is the Minkowski
//! gauge: the unique `λ ≥ ‖x‖` with `‖y‖ = λ p(‖x‖ / λ)`.

use std::fmt;
use std::sync::Arc;

use crate::{CVector, Error, Result, C64};

/// Grid size used to validate a profile at construction.
const PROFILE_GRID: usize = 1000;
/// Relative stopping tolerance of the gauge bisection.
const GAUGE_TOL: f64 = 1e-12;

/// The profile `p : [0, 1] → [0, 1]` defining the product ball.
///
/// A profile must satisfy `p(0) = 1`, `p(1) = 0`, be strictly decreasing and
/// midpoint-concave. These conditions are checked on a grid when the profile is built.
#[derive(Clone)]
pub enum Profile {
    /// `p(s) = (1 − s^q)^{1/r}` with `q, r ≥ 1`.
    Power { q: f64, r: f64 },
    /// An arbitrary evaluator, validated on a grid.
    Custom {
        label: String,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Profile::Power { q, r } => write!(f, "Power {{ q: {q}, r: {r} }}"),
            Profile::Custom { label, .. } => write!(f, "Custom({label})"),
        }
    }
}

impl Profile {
    pub fn power(q: f64, r: f64) -> Result<Self> {
        if !(q >= 1.0 && r >= 1.0 && q.is_finite() && r.is_finite()) {
            return Err(Error::InvalidProfile(format!(
                "power profile needs finite q, r >= 1 (got q = {q}, r = {r})"
            )));
        }
        let profile = Profile::Power { q, r };
        profile.validate()?;
        Ok(profile)
    }

    pub fn custom<F>(label: impl Into<String>, eval: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let profile = Profile::Custom {
            label: label.into(),
            eval: Arc::new(eval),
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Exponents `(q, r)` of a power profile.
    pub fn exponents(&self) -> Option<(f64, f64)> {
        match self {
            Profile::Power { q, r } => Some((*q, *r)),
            Profile::Custom { .. } => None,
        }
    }

    fn raw(&self, s: f64) -> f64 {
        match self {
            Profile::Power { q, r } => (1.0 - s.powf(*q)).max(0.0).powf(1.0 / r),
            Profile::Custom { eval, .. } => eval(s),
        }
    }

    /// `p(s)` for `s ∈ [0, 1]`.
    pub fn eval(&self, s: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::Domain(format!("profile argument {s} outside [0, 1]")));
        }
        Ok(self.raw(s).clamp(0.0, 1.0))
    }

    fn validate(&self) -> Result<()> {
        let grid: Vec<f64> = (0..=PROFILE_GRID).map(|k| k as f64 / PROFILE_GRID as f64).collect();
        let values: Vec<f64> = grid.iter().map(|&s| self.raw(s)).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidProfile("non-finite value on [0, 1]".into()));
        }
        if (values[0] - 1.0).abs() > 1e-12 || values[PROFILE_GRID].abs() > 1e-12 {
            return Err(Error::InvalidProfile(format!(
                "need p(0) = 1 and p(1) = 0, got {} and {}",
                values[0], values[PROFILE_GRID]
            )));
        }
        if let Some(k) = values.windows(2).position(|w| w[1] >= w[0]) {
            return Err(Error::InvalidProfile(format!(
                "not strictly decreasing near s = {}",
                grid[k]
            )));
        }
        // Midpoint concavity on grid pairs whose midpoint is a grid node.
        for i in 0..=PROFILE_GRID {
            for j in ((i + 2)..=PROFILE_GRID).step_by(2) {
                let mid = values[(i + j) / 2];
                if mid < 0.5 * (values[i] + values[j]) - 1e-12 {
                    return Err(Error::InvalidProfile(format!(
                        "not midpoint-concave for s1 = {}, s2 = {}",
                        grid[i], grid[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Norm on `X` or `Y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VectorNorm {
    Euclidean,
    /// `ℓ^s` with `s ∈ [1, ∞]`.
    Lp(f64),
}

impl VectorNorm {
    pub fn lp(s: f64) -> Result<Self> {
        if s >= 1.0 {
            Ok(VectorNorm::Lp(s))
        } else {
            Err(Error::InvalidParameter(format!("l^s norm needs s >= 1, got {s}")))
        }
    }

    pub fn norm(&self, v: &CVector) -> f64 {
        match *self {
            VectorNorm::Euclidean => crate::euclid(v),
            VectorNorm::Lp(s) => lp_norm(v, s),
        }
    }

    /// Norm of `v` viewed as a linear functional `z ↦ Σ v_i z_i`.
    pub fn dual_norm(&self, v: &CVector) -> f64 {
        match *self {
            VectorNorm::Euclidean => crate::euclid(v),
            VectorNorm::Lp(1.0) => lp_norm(v, f64::INFINITY),
            VectorNorm::Lp(s) if s.is_infinite() => lp_norm(v, 1.0),
            VectorNorm::Lp(s) => lp_norm(v, s / (s - 1.0)),
        }
    }
}

fn lp_norm(v: &CVector, s: f64) -> f64 {
    if s.is_infinite() {
        v.iter().map(|c| c.norm()).fold(0.0, f64::max)
    } else {
        v.iter().map(|c| c.norm().powf(s)).sum::<f64>().powf(1.0 / s)
    }
}

/// A point `(x, y)` of `Z = X × Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    pub x: CVector,
    pub y: CVector,
}

impl ProductPoint {
    pub fn new(x: CVector, y: CVector) -> Self {
        ProductPoint { x, y }
    }

    pub fn from_slices(x: &[C64], y: &[C64]) -> Self {
        ProductPoint {
            x: CVector::from_column_slice(x),
            y: CVector::from_column_slice(y),
        }
    }

    /// Concatenation `x ++ y`.
    pub fn flatten(&self) -> CVector {
        let mut out = CVector::zeros(self.x.len() + self.y.len());
        out.rows_mut(0, self.x.len()).copy_from(&self.x);
        out.rows_mut(self.x.len(), self.y.len()).copy_from(&self.y);
        out
    }

    pub fn split(v: &CVector, n: usize) -> Self {
        ProductPoint {
            x: v.rows(0, n).into_owned(),
            y: v.rows(n, v.len() - n).into_owned(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        ProductPoint {
            x: &self.x * c,
            y: &self.y * c,
        }
    }

    /// Euclidean distance of the flattened coordinates.
    pub fn distance(&self, other: &ProductPoint) -> f64 {
        (crate::euclid(&(&self.x - &other.x)).powi(2) + crate::euclid(&(&self.y - &other.y)).powi(2)).sqrt()
    }
}

/// The product space `Z = X × Y` with its profile.
#[derive(Debug, Clone)]
pub struct SpacePair {
    pub n: usize,
    pub m: usize,
    pub x_norm: VectorNorm,
    pub y_norm: VectorNorm,
    pub profile: Profile,
}

impl SpacePair {
    pub fn new(n: usize, m: usize, x_norm: VectorNorm, y_norm: VectorNorm, profile: Profile) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameter(format!(
                "dimensions must be positive (n = {n}, m = {m})"
            )));
        }
        Ok(SpacePair {
            n,
            m,
            x_norm,
            y_norm,
            profile,
        })
    }

    /// Euclidean `X`, `Y` with the power profile `(1 − s^q)^{1/r}`, i.e. the ball
    /// `‖x‖^q + ‖y‖^r < 1`.
    pub fn euclidean(n: usize, m: usize, q: f64, r: f64) -> Result<Self> {
        SpacePair::new(
            n,
            m,
            VectorNorm::Euclidean,
            VectorNorm::Euclidean,
            Profile::power(q, r)?,
        )
    }

    pub fn x_norm(&self, x: &CVector) -> f64 {
        self.x_norm.norm(x)
    }

    pub fn y_norm(&self, y: &CVector) -> f64 {
        self.y_norm.norm(y)
    }

    /// `p(‖x‖)`, or `0` outside the unit ball of `X`.
    pub fn profile_at(&self, x: &CVector) -> f64 {
        let s = self.x_norm(x);
        if s >= 1.0 {
            0.0
        } else {
            self.profile.raw(s).clamp(0.0, 1.0)
        }
    }

    fn check_dims(&self, pt: &ProductPoint) -> Result<()> {
        if pt.x.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: pt.x.len(),
            });
        }
        if pt.y.len() != self.m {
            return Err(Error::Dimension {
                expected: self.m,
                got: pt.y.len(),
            });
        }
        Ok(())
    }

    /// Membership margin `p(‖x‖) − ‖y‖`; `−∞` when `‖x‖ ≥ 1`.
    ///
    /// The point lies in `D` iff the margin is positive.
    pub fn ball_margin(&self, pt: &ProductPoint) -> f64 {
        let s = self.x_norm(&pt.x);
        if s >= 1.0 {
            return f64::NEG_INFINITY;
        }
        self.profile.raw(s).clamp(0.0, 1.0) - self.y_norm(&pt.y)
    }

    pub fn contains(&self, pt: &ProductPoint) -> bool {
        self.ball_margin(pt) > 0.0
    }

    /// Minkowski gauge of the product ball.
    ///
    /// Solves `‖y‖ = λ p(‖x‖/λ)` for `λ ≥ ‖x‖` by bisection on a bracket grown by
    /// doubling from `[‖x‖, ‖x‖ + ‖y‖]`.
    pub fn product_norm(&self, pt: &ProductPoint) -> Result<f64> {
        self.check_dims(pt)?;
        let a = self.x_norm(&pt.x);
        let b = self.y_norm(&pt.y);
        if b == 0.0 {
            return Ok(a);
        }
        if a == 0.0 {
            return Ok(b);
        }
        let gauge = |lambda: f64| lambda * self.profile.raw((a / lambda).min(1.0)) - b;

        let mut lo = a;
        if gauge(lo) > 0.0 {
            return Err(Error::BracketFailure(format!("gauge positive at lambda = |x| = {a}")));
        }
        let mut hi = a + b;
        let mut doublings = 0;
        while gauge(hi) < 0.0 {
            hi *= 2.0;
            doublings += 1;
            if doublings > 200 || !hi.is_finite() {
                return Err(Error::BracketFailure(format!(
                    "could not bracket the gauge for |x| = {a}, |y| = {b}"
                )));
            }
        }
        for _ in 0..400 {
            if hi - lo <= GAUGE_TOL * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if gauge(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

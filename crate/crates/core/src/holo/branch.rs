//! Continuous logarithms along radial paths and the branch powers built from them.

use std::f64::consts::{LN_2, PI};

use crate::{CVector, Error, Result, C64};

/// Tracks a continuous branch of `log g` along `s ↦ g(s·z)`, `s ∈ [0, 1]`, anchored at the
/// principal logarithm of `g(0)`.
///
/// The default route unwraps the phase on an adaptively refined partition of the path, which
/// only needs values of `g`. [`BranchTracker::log_by_quadrature`] integrates `g'/g` instead
/// when a derivative is at hand.
#[derive(Debug, Clone)]
pub struct BranchTracker {
    pub initial_segments: usize,
    /// Largest phase increment accepted on one segment.
    pub max_phase_step: f64,
    pub max_depth: u32,
    /// `|g|` below this on the path is treated as a zero.
    pub zero_tol: f64,
    pub quadrature_tol: f64,
}

impl Default for BranchTracker {
    fn default() -> Self {
        Self {
            initial_segments: 16,
            max_phase_step: PI / 8.0,
            max_depth: 48,
            zero_tol: 1e-12,
            quadrature_tol: 1e-13,
        }
    }
}

impl BranchTracker {
    fn sample<G>(&self, g: &G, s: f64) -> Result<C64>
    where
        G: Fn(f64) -> Result<C64>,
    {
        let v = g(s)?;
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::Domain(format!("function is singular at path parameter {s}")));
        }
        if v.norm() < self.zero_tol {
            return Err(Error::ZeroOnPath { s, modulus: v.norm() });
        }
        Ok(v)
    }

    fn phase_increment<G>(&self, g: &G, s0: f64, g0: C64, s1: f64, g1: C64, depth: u32) -> Result<f64>
    where
        G: Fn(f64) -> Result<C64>,
    {
        let ratio = g1 / g0;
        let step = ratio.arg();
        if step.abs() <= self.max_phase_step && ratio.norm().ln().abs() <= LN_2 {
            return Ok(step);
        }
        if depth >= self.max_depth {
            return Err(Error::Numerical(format!(
                "phase tracking did not resolve near path parameter {s0}"
            )));
        }
        let mid = 0.5 * (s0 + s1);
        let gm = self.sample(g, mid)?;
        Ok(self.phase_increment(g, s0, g0, mid, gm, depth + 1)?
            + self.phase_increment(g, mid, gm, s1, g1, depth + 1)?)
    }

    /// Continuous logarithm of `g(1)` where `g` is a parameterized path on `[0, 1]`.
    pub fn log_on_segment<G>(&self, g: G) -> Result<C64>
    where
        G: Fn(f64) -> Result<C64>,
    {
        let start = self.sample(&g, 0.0)?;
        let n = self.initial_segments.max(1);
        let mut phase = start.arg();
        let mut prev = start;
        for k in 1..=n {
            let s1 = k as f64 / n as f64;
            let s0 = (k - 1) as f64 / n as f64;
            let cur = self.sample(&g, s1)?;
            phase += self.phase_increment(&g, s0, prev, s1, cur, 0)?;
            prev = cur;
        }
        Ok(C64::new(prev.norm().ln(), phase))
    }

    /// Continuous logarithm of `g` at `z` along the segment `[0, z]`.
    pub fn log_along_ray<G>(&self, g: G, z: &CVector) -> Result<C64>
    where
        G: Fn(&CVector) -> Result<C64>,
    {
        self.log_on_segment(|s| g(&(z * C64::new(s, 0.0))))
    }

    /// `exp(α · L(z))` with `L` from [`BranchTracker::log_along_ray`].
    pub fn power_along_ray<G>(&self, g: G, alpha: C64, z: &CVector) -> Result<C64>
    where
        G: Fn(&CVector) -> Result<C64>,
    {
        Ok((alpha * self.log_along_ray(g, z)?).exp())
    }

    /// `Log g(0) + ∫₀¹ g'(tz) z / g(tz) dt` by adaptive Simpson quadrature (one variable).
    pub fn log_by_quadrature<G, D>(&self, g: G, dg: D, z: C64) -> Result<C64>
    where
        G: Fn(C64) -> Result<C64>,
        D: Fn(C64) -> Result<C64>,
    {
        let path = |t: f64| g(z * t);
        let integrand = |t: f64| -> Result<C64> {
            let gv = self.sample(&path, t)?;
            Ok(dg(z * t)? * z / gv)
        };
        let a = integrand(0.0)?;
        let m = integrand(0.5)?;
        let b = integrand(1.0)?;
        let whole = (a + m * 4.0 + b) / 6.0;
        let integral = self.simpson(&integrand, 0.0, 1.0, a, m, b, whole, self.quadrature_tol, 0)?;
        Ok(self.sample(&path, 0.0)?.ln() + integral)
    }

    #[allow(clippy::too_many_arguments)]
    fn simpson<F>(
        &self,
        f: &F,
        lo: f64,
        hi: f64,
        fa: C64,
        fm: C64,
        fb: C64,
        whole: C64,
        tol: f64,
        depth: u32,
    ) -> Result<C64>
    where
        F: Fn(f64) -> Result<C64>,
    {
        let mid = 0.5 * (lo + hi);
        let h = hi - lo;
        let fl = f(0.5 * (lo + mid))?;
        let fr = f(0.5 * (mid + hi))?;
        let left = (fa + fl * 4.0 + fm) * (h / 12.0);
        let right = (fm + fr * 4.0 + fb) * (h / 12.0);
        let delta = left + right - whole;
        if delta.norm() <= 15.0 * tol || depth >= self.max_depth {
            return Ok(left + right + delta / 15.0);
        }
        Ok(self.simpson(f, lo, mid, fa, fl, fm, left, tol / 2.0, depth + 1)?
            + self.simpson(f, mid, hi, fm, fr, fb, right, tol / 2.0, depth + 1)?)
    }
}

/// `g(z)^α` on the branch continued from the principal value at `0` along `[0, z]`.
pub fn branch_power<G>(g: G, alpha: C64, z: &CVector) -> Result<C64>
where
    G: Fn(&CVector) -> Result<C64>,
{
    BranchTracker::default().power_along_ray(g, alpha, z)
}

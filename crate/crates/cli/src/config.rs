//! JSON experiment configuration and its translation into core objects.
//!
//! Complex numbers are `[re, im]` pairs, vectors are lists of pairs and matrices are flat
//! row-major lists of pairs.

use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context, Result};
use rs_extend::extension::{classic, ClassicKind, ExtendedMap};
use rs_extend::semigroup::LinearOperator;
use rs_extend::verify::{geometric_grid, Motion, Sampler, MARGIN_TOL, UNKNOWN_BUDGET};
use rs_extend::{CMatrix, CVector, GammaSpec, HoloMap, Profile, SpacePair, VectorNorm, C64};
use serde::{Deserialize, Serialize};

pub type Complex = [f64; 2];

fn cx(v: Complex) -> C64 {
    C64::new(v[0], v[1])
}

pub fn vector(v: &[Complex]) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(|&z| cx(z)))
}

/// Square matrix from a flat row-major list.
pub fn matrix(entries: &[Complex]) -> Result<CMatrix> {
    let k = (entries.len() as f64).sqrt().round() as usize;
    ensure!(
        k > 0 && k * k == entries.len(),
        "matrix needs a square number of entries, got {}",
        entries.len()
    );
    Ok(CMatrix::from_fn(k, k, |i, j| cx(entries[i * k + j])))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub space: Option<SpaceConfig>,
    pub map: MapConfig,
    /// Replaces `space` and `gamma` by one of the classical operators.
    #[serde(default)]
    pub classic: Option<ClassicConfig>,
    #[serde(default)]
    pub gamma: Option<GammaConfig>,
    #[serde(default)]
    pub motion: Option<MotionConfig>,
    /// Fiber operator `B`, flat row-major.
    #[serde(default)]
    pub fiber: Option<Vec<Complex>>,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default)]
    pub sampler: SamplerConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub manifold: Option<ManifoldConfig>,
    #[serde(default)]
    pub bloch: Option<BlochConfig>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub n: usize,
    pub m: usize,
    #[serde(default = "two")]
    pub q: f64,
    #[serde(default = "two")]
    pub r: f64,
    /// `ℓ^s` exponent of `X`; Euclidean when absent.
    #[serde(default)]
    pub x_norm: Option<f64>,
    #[serde(default)]
    pub y_norm: Option<f64>,
}

fn two() -> f64 {
    2.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MapConfig {
    Identity {
        dim: usize,
    },
    Koebe {},
    OneMinus {},
    Cayley {},
    HalfSelf {},
    Log {},
    DiskAutomorphism {
        a: Complex,
    },
    Hyperbolic {
        c: f64,
    },
    BallAutomorphism {
        a: Vec<Complex>,
    },
    Linear {
        matrix: Vec<Complex>,
    },
    Diagonal {
        maps: Vec<MapConfig>,
    },
    Compose {
        outer: Box<MapConfig>,
        inner: Box<MapConfig>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicConfig {
    pub kind: ClassicKindConfig,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub beta: Option<f64>,
    #[serde(default = "one")]
    pub m: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicKindConfig {
    RoperSuffridge,
    Gkk,
    Gk,
    PfaltzgraffSuffridge,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GammaConfig {
    JacobianPower { alpha: f64 },
    RatioPower { beta: f64 },
    BoundaryRatioSelf { tau: Vec<Complex>, r: f64 },
    BoundaryRatioBiholo { tau: Vec<Complex>, r: f64 },
    Product { parts: Vec<GammaConfig> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MotionConfig {
    /// `e^{−tA}`
    Linear { a: Vec<Complex> },
    /// `+ tτ`
    Shift { tau: Vec<Complex> },
    /// `e^{−tA} w + λ ∫₀ᵗ e^{−sA} τ ds`
    Affine {
        a: Vec<Complex>,
        lambda: f64,
        tau: Vec<Complex>,
    },
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerConfig {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub radii: Option<Vec<f64>>,
    #[serde(default)]
    pub t_grid: Option<Vec<f64>>,
    #[serde(default)]
    pub t_min: Option<f64>,
    #[serde(default)]
    pub t_max: Option<f64>,
    #[serde(default)]
    pub t_count: Option<usize>,
    #[serde(default)]
    pub axis_probes: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_margin")]
    pub margin: f64,
    #[serde(default = "default_budget")]
    pub unknown_budget: f64,
}

fn default_margin() -> f64 {
    MARGIN_TOL
}

fn default_budget() -> f64 {
    UNKNOWN_BUDGET
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            margin: MARGIN_TOL,
            unknown_budget: UNKNOWN_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldConfig {
    /// Domain point whose image seeds the family.
    pub seed_point: PointConfig,
    pub t_grid: Vec<f64>,
    #[serde(default = "default_fan")]
    pub fan: Vec<f64>,
}

fn default_fan() -> Vec<f64> {
    vec![0.25, 0.5, 0.75, 1.0]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub x: Vec<Complex>,
    pub y: Vec<Complex>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochConfig {
    #[serde(default = "ten")]
    pub radial: usize,
    #[serde(default = "ten")]
    pub angular: usize,
    #[serde(default = "default_bloch_fiber")]
    pub fiber: Vec<f64>,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
    #[serde(default)]
    pub directions: Option<usize>,
}

fn ten() -> usize {
    10
}

fn default_bloch_fiber() -> Vec<f64> {
    (0..10).map(|k| 0.1 * k as f64).collect()
}

fn default_r_max() -> f64 {
    0.9
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

impl MapConfig {
    pub fn build(&self) -> Result<HoloMap> {
        Ok(match self {
            MapConfig::Identity { dim } => {
                ensure!(*dim > 0, "identity needs a positive dimension");
                HoloMap::identity(*dim)
            }
            MapConfig::Koebe {} => HoloMap::koebe(),
            MapConfig::OneMinus {} => HoloMap::one_minus(),
            MapConfig::Cayley {} => HoloMap::cayley(),
            MapConfig::HalfSelf {} => HoloMap::half_self(),
            MapConfig::Log {} => HoloMap::log_map(),
            MapConfig::DiskAutomorphism { a } => HoloMap::disk_automorphism(cx(*a))?,
            MapConfig::Hyperbolic { c } => HoloMap::hyperbolic(*c)?,
            MapConfig::BallAutomorphism { a } => HoloMap::ball_automorphism(vector(a))?,
            MapConfig::Linear { matrix: m } => HoloMap::linear(matrix(m)?)?,
            MapConfig::Diagonal { maps } => {
                HoloMap::diagonal(maps.iter().map(MapConfig::build).collect::<Result<_>>()?)?
            }
            MapConfig::Compose { outer, inner } => HoloMap::compose(outer.build()?, inner.build()?)?,
        })
    }
}

impl GammaConfig {
    pub fn build(&self) -> Result<GammaSpec> {
        Ok(match self {
            GammaConfig::JacobianPower { alpha } => {
                ensure!(alpha.is_finite(), "alpha must be finite");
                GammaSpec::jacobian_power(*alpha)
            }
            GammaConfig::RatioPower { beta } => {
                ensure!(beta.is_finite(), "beta must be finite");
                GammaSpec::ratio_power(*beta)
            }
            GammaConfig::BoundaryRatioSelf { tau, r } => GammaSpec::boundary_ratio_self(vector(tau), *r)?,
            GammaConfig::BoundaryRatioBiholo { tau, r } => GammaSpec::boundary_ratio_biholo(vector(tau), *r)?,
            GammaConfig::Product { parts } => {
                ensure!(!parts.is_empty(), "product needs at least one part");
                GammaSpec::Product(parts.iter().map(GammaConfig::build).collect::<Result<_>>()?)
            }
        })
    }
}

impl SpaceConfig {
    pub fn build(&self) -> Result<SpacePair> {
        let norm = |s: Option<f64>| match s {
            None => Ok(VectorNorm::Euclidean),
            Some(s) => VectorNorm::lp(s),
        };
        Ok(SpacePair::new(
            self.n,
            self.m,
            norm(self.x_norm)?,
            norm(self.y_norm)?,
            Profile::power(self.q, self.r)?,
        )?)
    }
}

impl MotionConfig {
    pub fn build(&self) -> Result<Motion> {
        Ok(match self {
            MotionConfig::Linear { a } => Motion::Linear(LinearOperator::new(matrix(a)?)?),
            MotionConfig::Shift { tau } => {
                ensure!(!tau.is_empty(), "shift direction is empty");
                Motion::Shift(vector(tau))
            }
            MotionConfig::Affine { a, lambda, tau } => {
                let op = LinearOperator::new(matrix(a)?)?;
                ensure!(*lambda >= 0.0, "lambda must be nonnegative, got {lambda}");
                ensure!(
                    tau.len() == op.dim(),
                    "affine tau has dimension {}, A has {}",
                    tau.len(),
                    op.dim()
                );
                Motion::Affine {
                    op,
                    lambda: *lambda,
                    tau: vector(tau),
                }
            }
        })
    }
}

impl SamplerConfig {
    pub fn build(&self, seed_override: Option<u64>) -> Result<Sampler> {
        let mut s = Sampler::default();
        if let Some(n) = self.n {
            ensure!(n > 0, "sampler.n must be positive");
            s = s.with_n(n);
        }
        if let Some(seed) = seed_override.or(self.seed) {
            s = s.with_seed(seed);
        }
        if let Some(radii) = &self.radii {
            ensure!(
                !radii.is_empty() && radii.iter().all(|r| *r > 0.0 && *r < 1.0),
                "sampler.radii must be a nonempty list inside (0, 1)"
            );
            ensure!(radii.windows(2).all(|w| w[0] < w[1]), "sampler.radii must increase");
            s = s.with_radii(radii.clone());
        }
        match (&self.t_grid, self.t_min, self.t_max, self.t_count) {
            (Some(grid), None, None, None) => {
                ensure!(
                    !grid.is_empty() && grid.iter().all(|t| t.is_finite() && *t >= 0.0),
                    "sampler.t_grid must be a nonempty list of nonnegative times"
                );
                s = s.with_t_grid(grid.clone());
            }
            (None, None, None, None) => {}
            (None, lo, hi, count) => {
                let (lo, hi, count) = (lo.unwrap_or(0.01), hi.unwrap_or(10.0), count.unwrap_or(25));
                ensure!(
                    lo > 0.0 && hi >= lo && count > 0,
                    "geometric t-grid needs 0 < t_min <= t_max, t_count > 0"
                );
                s = s.with_t_grid(geometric_grid(lo, hi, count));
            }
            _ => bail!("give either sampler.t_grid or t_min/t_max/t_count, not both"),
        }
        if self.axis_probes == Some(false) {
            s = s.without_axis_probes();
        }
        Ok(s)
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.margin.is_finite() && self.margin >= 0.0,
            "tolerances.margin must be >= 0"
        );
        ensure!(
            (0.0..=1.0).contains(&self.unknown_budget),
            "tolerances.unknown_budget must lie in [0, 1]"
        );
        Ok(())
    }
}

/// Core objects built from a validated configuration.
pub struct Experiment {
    pub extended: ExtendedMap,
    pub motion: Option<Motion>,
    pub fiber: Option<LinearOperator>,
    pub sampler: Sampler,
    pub tolerances: Tolerances,
    pub checks: Vec<String>,
}

impl Experiment {
    pub fn from_config(cfg: &ExperimentConfig, seed: Option<u64>, checks: &[String]) -> Result<Self> {
        let base = cfg.map.build().context("map")?;
        let extended = match &cfg.classic {
            Some(cl) => {
                ensure!(
                    cfg.space.is_none() && cfg.gamma.is_none(),
                    "classic replaces space and gamma; remove them"
                );
                let need = |v: Option<f64>, name: &str| v.ok_or_else(|| anyhow!("classic operator needs {name}"));
                let kind = match cl.kind {
                    ClassicKindConfig::RoperSuffridge => ClassicKind::RoperSuffridge,
                    ClassicKindConfig::Gkk => ClassicKind::Gkk {
                        alpha: need(cl.alpha, "alpha")?,
                    },
                    ClassicKindConfig::Gk => ClassicKind::Gk {
                        beta: need(cl.beta, "beta")?,
                    },
                    ClassicKindConfig::PfaltzgraffSuffridge => ClassicKind::PfaltzgraffSuffridge,
                };
                classic(kind, base, cl.m).context("classic")?
            }
            None => {
                let space = cfg
                    .space
                    .as_ref()
                    .ok_or_else(|| anyhow!("missing space"))?
                    .build()
                    .context("space")?;
                let gamma = cfg
                    .gamma
                    .as_ref()
                    .ok_or_else(|| anyhow!("missing gamma"))?
                    .build()
                    .context("gamma")?;
                ExtendedMap::new(base, gamma, space).context("extension")?
            }
        };
        let motion = cfg
            .motion
            .as_ref()
            .map(MotionConfig::build)
            .transpose()
            .context("motion")?;
        let fiber = cfg
            .fiber
            .as_deref()
            .map(|b| -> Result<LinearOperator> { Ok(LinearOperator::new(matrix(b)?)?) })
            .transpose()
            .context("fiber")?;
        if let Some(b) = &fiber {
            ensure!(
                b.dim() == extended.space.m,
                "fiber operator has dimension {}, Y has {}",
                b.dim(),
                extended.space.m
            );
        }
        cfg.tolerances.validate()?;
        let sampler = cfg.sampler.build(seed).context("sampler")?;
        let checks: Vec<String> = if checks.is_empty() {
            cfg.checks.clone()
        } else {
            checks.to_vec()
        };
        ensure!(!checks.is_empty(), "no checks requested");
        for name in &checks {
            ensure!(
                crate::catalog::CHECKS.iter().any(|c| c.id == name),
                "unknown check {name:?}"
            );
        }
        Ok(Self {
            extended,
            motion,
            fiber,
            sampler,
            tolerances: cfg.tolerances,
            checks,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices_are_row_major() {
        let m = matrix(&[[1.0, 0.0], [2.0, 0.0], [3.0, 0.0], [4.0, 1.0]]).unwrap();
        assert_eq!(m[(0, 1)], C64::new(2.0, 0.0));
        assert_eq!(m[(1, 1)], C64::new(4.0, 1.0));
        assert!(matrix(&[[1.0, 0.0], [2.0, 0.0]]).is_err());
        assert!(matrix(&[]).is_err());
    }

    #[test]
    fn time_grid_forms_are_exclusive() {
        let both = SamplerConfig {
            t_grid: Some(vec![1.0]),
            t_max: Some(2.0),
            ..Default::default()
        };
        assert!(both.build(None).is_err());
        let geo = SamplerConfig {
            t_min: Some(0.1),
            t_max: Some(1.0),
            t_count: Some(3),
            ..Default::default()
        };
        let s = geo.build(Some(5)).unwrap();
        assert_eq!(s.seed, 5);
        assert_eq!(s.t_grid.len(), 3);
        assert!((s.t_grid[1] - 0.1f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn maps_parse_by_id() {
        let m: MapConfig = serde_json::from_str(
            r#"{"id": "compose", "outer": {"id": "koebe"}, "inner": {"id": "disk-automorphism", "a": [0.3, 0.1]}}"#,
        )
        .unwrap();
        let h = m.build().unwrap();
        assert_eq!(h.dim(), 1);
        assert!(serde_json::from_str::<MapConfig>(r#"{"id": "koebe", "alpha": 1}"#).is_err());
    }
}

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use rs_extend::gamma::{check_appropriate_selfmap, MapFamily};
use rs_extend::semigroup::{ExtendedSemigroup, Flow, LinearOperator};
use rs_extend::verify::{
    bloch_bounds, check_affine_invariance, check_convex_in_direction, check_extended_spirallike, check_spirallike,
    derive_c, export_invariance_manifold, BlochGrid, ManifoldMotion, Motion, Probe, ReportBuilder, SpirallikeClaim,
    Tally, Target, Verdict, Witness, MARGIN_TOL, UNKNOWN_BUDGET,
};
use rs_extend::{CheckReport, GammaSpec, ProductPoint, C64};
use serde::Serialize;

use crate::config::{vector, BlochConfig, Experiment, ExperimentConfig, ManifoldConfig, Tolerances};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_CONFIG: u8 = 3;

/// Deterministic part of a run: identical for identical configuration and seed.
#[derive(Debug, Serialize)]
pub struct Payload {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub checks: Vec<CheckReport>,
    pub status: Verdict,
    pub exit_code: u8,
}

#[derive(Debug, Serialize)]
pub struct Envelope {
    pub tool: &'static str,
    pub version: &'static str,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub elapsed_seconds: f64,
    pub threads: usize,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub envelope: Envelope,
    pub payload: Payload,
}

/// A file produced by a check, written after all checks finish.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

pub fn exit_code(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => EXIT_PASS,
        Verdict::Violation => EXIT_VIOLATION,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Applies non-default tolerances to a finished report.
fn reverdict(rep: CheckReport, tol: &Tolerances) -> CheckReport {
    if *tol == Tolerances::default() {
        rep
    } else {
        rep.with_tolerances(tol.margin, tol.unknown_budget)
    }
}

fn need_motion(exp: &Experiment) -> Result<&Motion, String> {
    exp.motion
        .as_ref()
        .ok_or_else(|| "this check needs a motion".to_string())
}

fn linear_op(exp: &Experiment) -> Result<&LinearOperator, String> {
    match need_motion(exp)? {
        Motion::Linear(op) => Ok(op),
        m => Err(format!("this check needs a linear motion, got {}", m.kind())),
    }
}

fn shift_dir(exp: &Experiment) -> Result<&rs_extend::CVector, String> {
    match need_motion(exp)? {
        Motion::Shift(tau) => Ok(tau),
        m => Err(format!("this check needs a shift motion, got {}", m.kind())),
    }
}

fn fiber_or_zero(exp: &Experiment) -> Result<LinearOperator, String> {
    match &exp.fiber {
        Some(b) => Ok(b.clone()),
        None => LinearOperator::scalar(exp.extended.space.m, C64::new(0.0, 0.0)).map_err(|e| e.to_string()),
    }
}

fn spirallike(exp: &Experiment) -> Result<CheckReport, String> {
    let op = linear_op(exp)?;
    let em = &exp.extended;
    let target = if op.dim() == em.space.n {
        Target::Base(em.base.clone())
    } else {
        Target::Extended(em.clone())
    };
    Ok(check_spirallike(
        &SpirallikeClaim {
            target,
            operator: op.clone(),
            relaxed: false,
        },
        &exp.sampler,
    ))
}

fn starlike(exp: &Experiment) -> Result<CheckReport, String> {
    let em = &exp.extended;
    let op = LinearOperator::scalar(em.space.n + em.space.m, C64::new(1.0, 0.0)).map_err(|e| e.to_string())?;
    let mut rep = check_spirallike(
        &SpirallikeClaim {
            target: Target::Extended(em.clone()),
            operator: op,
            relaxed: false,
        },
        &exp.sampler,
    );
    rep.name = "starlike".into();
    Ok(rep)
}

fn derive_c_check(exp: &Experiment) -> Result<CheckReport, String> {
    let motion = need_motion(exp)?;
    let em = &exp.extended;
    let pts = exp
        .sampler
        .clone()
        .with_n(exp.sampler.n.min(100))
        .ball_points(em.space.n);
    let d = derive_c(&em.gamma, motion, &em.base, &pts, &exp.sampler.t_grid).map_err(|e| e.to_string())?;
    let mut rep = d.report;
    rep.name = "derive-c".into();
    rep.parameters.insert("c-re".into(), d.c.re.into());
    rep.parameters.insert("c-im".into(), d.c.im.into());
    Ok(rep)
}

fn manifold(exp: &Experiment, cfg: Option<&ManifoldConfig>) -> Result<(CheckReport, Artifact), String> {
    let cfg = cfg.ok_or("the manifold check needs a manifold section")?;
    let em = &exp.extended;
    let motion = match need_motion(exp)? {
        Motion::Linear(op) => ManifoldMotion::Spiral(op.clone()),
        Motion::Shift(tau) => ManifoldMotion::Cylinder(tau.clone()),
        m => return Err(format!("manifold needs a linear or shift motion, got {}", m.kind())),
    };
    let seed = ProductPoint::new(vector(&cfg.seed_point.x), vector(&cfg.seed_point.y));
    let base = em.eval(&seed).map_err(|e| format!("seed point: {e}"))?;
    let table = export_invariance_manifold(em, &motion, &base, &cfg.t_grid, &cfg.fan).map_err(|e| e.to_string())?;
    let artifact = Artifact {
        name: "manifold.csv".into(),
        contents: table.to_csv(),
    };
    let mut rep = table.report("manifold");
    rep.parameters.insert("csv".into(), artifact.name.clone().into());
    Ok((rep, artifact))
}

fn bloch(exp: &Experiment, cfg: Option<&BlochConfig>) -> Result<CheckReport, String> {
    let mut grid = match cfg {
        Some(b) => BlochGrid::uniform(b.radial, b.angular, &b.fiber, b.r_max),
        None => BlochGrid::uniform(10, 10, &(0..10).map(|k| 0.1 * k as f64).collect::<Vec<_>>(), 0.9),
    };
    if let Some(d) = cfg.and_then(|b| b.directions) {
        grid.directions = d;
    }
    grid.seed = exp.sampler.seed;
    let (bounds, mut rep) = bloch_bounds(&exp.extended, &grid).map_err(|e| e.to_string())?;
    for (k, v) in [
        ("sup-base", bounds.base),
        ("sup-multiplier", bounds.multiplier),
        ("sup-gradient", bounds.gradient),
        ("sup-extended", bounds.extended),
    ] {
        rep.parameters.insert(k.into(), v.into());
    }
    Ok(rep)
}

fn appropriate(exp: &Experiment) -> Result<CheckReport, String> {
    let em = &exp.extended;
    let family = match &em.gamma {
        GammaSpec::BoundaryRatioSelf { tau, .. } => MapFamily::SelfMapsBoundaryTau { tau: tau.clone() },
        _ => MapFamily::SelfMapsFixingZero { dim: em.space.n },
    };
    let pts = exp.sampler.ball_points(em.space.n);
    let mut rep = check_appropriate_selfmap(&em.gamma, &family, &em.space, &pts).map_err(|e| e.to_string())?;
    rep.name = "appropriate".into();
    Ok(rep)
}

fn semigroup_law(exp: &Experiment) -> Result<CheckReport, String> {
    let em = &exp.extended;
    let base = match need_motion(exp)? {
        Motion::Linear(op) => Flow::linear(op.clone()),
        Motion::Affine { op, lambda, tau } => {
            Flow::affine(op.clone(), *lambda, tau.clone()).map_err(|e| e.to_string())?
        }
        m => {
            return Err(format!(
                "semigroup-law needs a linear or affine motion, got {}",
                m.kind()
            ))
        }
    };
    let fiber = Flow::linear(fiber_or_zero(exp)?);
    let sg = ExtendedSemigroup::new(base, em.gamma.clone(), fiber, em.space.clone()).map_err(|e| e.to_string())?;
    let pts = exp
        .sampler
        .clone()
        .with_n(exp.sampler.n.min(100))
        .product_points(&em.space);
    const TIMES: [f64; 3] = [0.1, 0.5, 1.0];
    let probes: Vec<Probe> = pts
        .par_iter()
        .flat_map_iter(|pt| {
            let sg = &sg;
            TIMES.iter().flat_map(move |&t| {
                TIMES.iter().map(move |&s| match sg.law_residual(t, s, pt) {
                    Ok(r) if r.is_finite() => Probe::Decided(Witness::new(pt.flatten().as_slice(), Some(t + s), -r)),
                    _ => Probe::Unknown,
                })
            })
        })
        .collect();
    let mut tally = Tally::new(MARGIN_TOL);
    tally.extend(probes);
    Ok(ReportBuilder::new("semigroup-law")
        .param("gamma", em.gamma.to_string())
        .param("times", TIMES.to_vec())
        .note("margin is minus the residual of F(t+s) against F(t) after F(s)")
        .finish(&tally, UNKNOWN_BUDGET))
}

fn run_check(name: &str, exp: &Experiment, cfg: &ExperimentConfig) -> (CheckReport, Option<Artifact>) {
    let em = &exp.extended;
    let out: Result<(CheckReport, Option<Artifact>), String> = match name {
        "starlike" => starlike(exp).map(|r| (r, None)),
        "spirallike" => spirallike(exp).map(|r| (r, None)),
        "extended-spirallike" => linear_op(exp).and_then(|a| {
            let b = fiber_or_zero(exp)?;
            Ok((check_extended_spirallike(em, a, &b, &exp.sampler), None))
        }),
        "convex-direction" => shift_dir(exp).map(|tau| {
            let rep = check_convex_in_direction(&Target::Extended(em.clone()), tau, exp.fiber.as_ref(), &exp.sampler);
            (rep, None)
        }),
        "convex-direction-base" => shift_dir(exp).map(|tau| {
            let mut rep = check_convex_in_direction(&Target::Base(em.base.clone()), tau, None, &exp.sampler);
            rep.name = "convex-direction-base".into();
            (rep, None)
        }),
        "affine-invariance" => match need_motion(exp) {
            Ok(Motion::Affine { op, lambda, tau }) => {
                fiber_or_zero(exp).map(|b| (check_affine_invariance(em, op, *lambda, tau, &b, &exp.sampler), None))
            }
            Ok(m) => Err(format!("affine-invariance needs an affine motion, got {}", m.kind())),
            Err(e) => Err(e),
        },
        "derive-c" => derive_c_check(exp).map(|r| (r, None)),
        "manifold" => manifold(exp, cfg.manifold.as_ref()).map(|(r, a)| (r, Some(a))),
        "bloch" => bloch(exp, cfg.bloch.as_ref()).map(|r| (r, None)),
        "appropriate" => appropriate(exp).map(|r| (r, None)),
        "semigroup-law" => semigroup_law(exp).map(|r| (r, None)),
        other => Err(format!("unknown check {other:?}")),
    };
    match out {
        Ok((rep, art)) => (reverdict(rep, &exp.tolerances), art),
        Err(e) => (CheckReport::inconclusive(name, e), None),
    }
}

/// Runs the requested checks in declared order and assembles the payload.
pub fn run(cfg: &ExperimentConfig, exp: &Experiment) -> (Payload, Vec<Artifact>) {
    let results: Vec<(CheckReport, Option<Artifact>)> =
        exp.checks.par_iter().map(|name| run_check(name, exp, cfg)).collect();
    let mut checks = Vec::with_capacity(results.len());
    let mut artifacts = Vec::new();
    for (rep, art) in results {
        checks.push(rep);
        artifacts.extend(art);
    }
    let status = checks.iter().map(|r| r.verdict).fold(Verdict::Pass, Verdict::and);
    let payload = Payload {
        seed: exp.sampler.seed,
        tolerances: exp.tolerances,
        checks,
        status,
        exit_code: exit_code(status),
    };
    (payload, artifacts)
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let mut tmp = PathBuf::from(path);
    let file = path
        .file_name()
        .context("output path has no file name")?
        .to_string_lossy()
        .into_owned();
    tmp.set_file_name(format!(".{file}.tmp"));
    std::fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

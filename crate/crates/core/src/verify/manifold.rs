use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::motion::{closed_form_c, Motion};
use super::report::{CheckReport, Probe, ReportBuilder, Tally, Witness};
use crate::extension::ExtendedMap;
use crate::geometry::ProductPoint;
use crate::holo::MembershipStatus;
use crate::{c, CVector, Error, Result, C64};

/// Emitted points must have membership margin above `−MANIFOLD_TOL`.
pub const MANIFOLD_TOL: f64 = 1e-9;

/// Base motion of the exported family.
#[derive(Debug, Clone)]
pub enum ManifoldMotion {
    /// Points `(e^{−At} z₀, s e^{−Re(C) t} w₀)`.
    Spiral(crate::semigroup::LinearOperator),
    /// Points `(z₀ + tτ, s w₀)`.
    Cylinder(CVector),
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldRow {
    pub t: f64,
    pub s: f64,
    pub coords: Vec<[f64; 2]>,
    /// Extended-membership margin; `NaN` when membership was undecided.
    pub margin: f64,
    pub status: MembershipStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifoldTable {
    pub header: Vec<String>,
    pub rows: Vec<ManifoldRow>,
    pub c_re: f64,
}

impl ManifoldTable {
    /// CSV with header `t,coord0_re,coord0_im,...,margin`.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let _ = write!(out, "{}", row.t);
            for v in &row.coords {
                let _ = write!(out, ",{},{}", v[0], v[1]);
            }
            let _ = writeln!(out, ",{}", row.margin);
        }
        out
    }

    /// Fraction of rows whose margin exceeds `−MANIFOLD_TOL`.
    pub fn inside_fraction(&self) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        let ok = self.rows.iter().filter(|r| r.margin > -MANIFOLD_TOL).count();
        ok as f64 / self.rows.len() as f64
    }

    pub fn report(&self, name: &str) -> CheckReport {
        let mut tally = Tally::new(MANIFOLD_TOL);
        for r in &self.rows {
            tally.record(if r.margin.is_nan() {
                Probe::Unknown
            } else {
                let coords: Vec<C64> = r.coords.iter().map(|v| c(v[0], v[1])).collect();
                Probe::Decided(Witness::new(&coords, Some(r.t), r.margin))
            });
        }
        // Every emitted point must carry a decided margin.
        ReportBuilder::new(name)
            .param("rows", self.rows.len())
            .param("c-re", self.c_re)
            .finish(&tally, 0.0)
    }
}

/// Samples the invariant family through `(z₀, w₀)` and tags each point with its margin.
///
/// The fiber coordinate keeps the phase of `w₀` and has modulus `s e^{−Re(C) t} |w₀|`.
pub fn export_invariance_manifold(
    em: &ExtendedMap,
    motion: &ManifoldMotion,
    base: &ProductPoint,
    t_grid: &[f64],
    fan: &[f64],
) -> Result<ManifoldTable> {
    let start = em.membership(base);
    if !start.is_inside() {
        return Err(Error::Domain(format!(
            "base point is not inside the extended image ({:?}, margin {})",
            start.status, start.margin
        )));
    }
    if fan.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
        return Err(Error::InvalidParameter("fan parameters must lie in (0, 1]".into()));
    }
    let cc = match motion {
        ManifoldMotion::Spiral(op) => closed_form_c(&em.gamma, &Motion::Linear(op.clone()))?,
        ManifoldMotion::Cylinder(tau) => closed_form_c(&em.gamma, &Motion::Shift(tau.clone()))?,
    };
    let jobs: Vec<(f64, f64)> = t_grid.iter().flat_map(|&t| fan.iter().map(move |&s| (t, s))).collect();
    let rows: Vec<ManifoldRow> = jobs
        .par_iter()
        .map(|&(t, s)| {
            let z = match motion {
                ManifoldMotion::Spiral(op) => op.exp(t) * &base.x,
                ManifoldMotion::Cylinder(tau) => &base.x + tau * c(t, 0.0),
            };
            let w = &base.y * c(s * (-cc.re * t).exp(), 0.0);
            let pt = ProductPoint::new(z, w);
            let m = em.membership(&pt);
            ManifoldRow {
                t,
                s,
                coords: pt.flatten().iter().map(|v| [v.re, v.im]).collect(),
                margin: m.margin,
                status: m.status,
            }
        })
        .collect();
    let dims = em.space.n + em.space.m;
    let mut header = vec!["t".to_string()];
    for k in 0..dims {
        header.push(format!("coord{k}_re"));
        header.push(format!("coord{k}_im"));
    }
    header.push("margin".into());
    Ok(ManifoldTable {
        header,
        rows,
        c_re: cc.re,
    })
}

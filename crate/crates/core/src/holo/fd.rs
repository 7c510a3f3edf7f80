//! Central differences with one Richardson level.

use crate::{euclid, CMatrix, CVector, Error, Result, C64};

fn central<F>(f: &F, z: &CVector, dir: &CVector, h: f64) -> Result<CVector>
where
    F: Fn(&CVector) -> Result<CVector>,
{
    let plus = f(&(z + dir * C64::new(h, 0.0)))?;
    let minus = f(&(z - dir * C64::new(h, 0.0)))?;
    Ok((plus - minus) / C64::new(2.0 * h, 0.0))
}

/// Richardson-extrapolated directional derivative of `f` at `z` along `dir`.
pub fn directional<F>(f: &F, z: &CVector, dir: &CVector) -> Result<CVector>
where
    F: Fn(&CVector) -> Result<CVector>,
{
    let h = 1e-6 * (1.0 + euclid(z));
    let coarse = central(f, z, dir, h)?;
    let fine = central(f, z, dir, h / 2.0)?;
    Ok((fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0))
}

/// Complex Jacobian by differencing along the real coordinate directions.
pub fn jacobian<F>(f: F, z: &CVector) -> Result<CMatrix>
where
    F: Fn(&CVector) -> Result<CVector>,
{
    let n = z.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = CVector::zeros(n);
        e[j] = C64::new(1.0, 0.0);
        cols.push(directional(&f, z, &e)?);
    }
    let m = cols
        .first()
        .map(|c| c.len())
        .ok_or(Error::Dimension { expected: 1, got: 0 })?;
    Ok(CMatrix::from_fn(m, n, |i, j| cols[j][i]))
}

/// Largest mismatch between the real and imaginary directional derivatives.
pub fn cauchy_riemann_residual<F>(f: F, z: &CVector) -> Result<f64>
where
    F: Fn(&CVector) -> Result<CVector>,
{
    let n = z.len();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let mut e = CVector::zeros(n);
        e[j] = C64::new(1.0, 0.0);
        let dx = directional(&f, z, &e)?;
        let dy = directional(&f, z, &(e * C64::new(0.0, 1.0)))?;
        let scale = dx.norm().max(1.0);
        worst = worst.max((dx * C64::new(0.0, 1.0) - dy).norm() / scale);
    }
    Ok(worst)
}

use num_traits::Zero;

use super::ExprMap;
use crate::dual::{check_len, Dual, DualVec};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// An m×n matrix of dual numbers acting as a module map from dual n-space
/// to dual m-space.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMap<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Dual<T>>,
}

impl<T: Scalar> DualMap<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DualMap { rows, cols, entries: vec![Dual::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Dual::new(T::one(), T::zero()));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Dual<T>>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(DualMap { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Dual<T> {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Dual<T>) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn apply(&self, v: &DualVec<T>) -> Result<DualVec<T>> {
        check_len(self.cols, v.len())?;
        Ok(DualVec(
            (0..self.rows)
                .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
                .collect(),
        ))
    }
}

/// Matrix product `g ∘ f` over the dual numbers.
pub fn compose_maps<T: Scalar>(g: &DualMap<T>, f: &DualMap<T>) -> Result<DualMap<T>> {
    if g.cols != f.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose {}x{} after {}x{}",
            g.rows, g.cols, f.rows, f.cols
        )));
    }
    let mut out = DualMap::zeros(g.rows, f.cols);
    for r in 0..g.rows {
        for c in 0..f.cols {
            out.set(r, c, (0..g.cols).map(|k| g.get(r, k) * f.get(k, c)).sum());
        }
    }
    Ok(out)
}

/// The dual derivative of `f` at `a`: entry `(j, i)` is `∂f_j/∂x_i (a)`.
pub fn jacobian<T: Real>(f: &ExprMap<T>, a: &DualVec<T>) -> Result<DualMap<T>> {
    check_len(f.arity(), a.len())?;
    let mut out = DualMap::zeros(f.len(), f.arity());
    for (j, fj) in f.components().iter().enumerate() {
        for i in 0..f.arity() {
            out.set(j, i, fj.partial_diff(i)?.eval(a.as_slice()));
        }
    }
    Ok(out)
}

/// Compares central finite differences of `(f_Re, f_Ze)` in all `2n` real
/// coordinates against the real block structure induced by the Jacobian.
/// A dual entry `d1 + d2·1#` induces the block `[[d1, 0], [d2, d1]]`.
/// Returns the largest absolute deviation.
pub fn cr_check<T: Real>(f: &ExprMap<T>, a: &DualVec<T>, h: T) -> Result<T> {
    if !(h > T::zero()) {
        return Err(Error::Config("finite-difference step must be positive".into()));
    }
    let jac = jacobian(f, a)?;
    let two_h = h + h;
    let mut worst = T::zero();
    for i in 0..f.arity() {
        for ze_dir in [false, true] {
            let shift = if ze_dir { Dual::new(T::zero(), h) } else { Dual::new(h, T::zero()) };
            let mut plus = a.clone();
            let mut minus = a.clone();
            plus.0[i] = a[i] + shift;
            minus.0[i] = a[i] - shift;
            let fp = f.eval(&plus)?;
            let fm = f.eval(&minus)?;
            for j in 0..f.len() {
                let d = jac.get(j, i);
                let fd_re = (fp[j].re - fm[j].re) / two_h;
                let fd_ze = (fp[j].ze - fm[j].ze) / two_h;
                let (want_re, want_ze) = if ze_dir { (T::zero(), d.re) } else { (d.re, d.ze) };
                worst = worst.max((fd_re - want_re).abs()).max((fd_ze - want_ze).abs());
            }
        }
    }
    Ok(worst)
}

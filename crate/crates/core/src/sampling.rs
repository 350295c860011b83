//! Fixed pseudo-random sample grids used to compare expressions, forms and
//! cubes by value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dual::Dual;
use crate::expr::Expr;
use crate::scalar::Real;

pub const GRID_POINTS: usize = 16;
const GRID_SEED: u64 = 0x5eed_0f_d0a1;
const REL_TOL: f64 = 1e-9;

/// `GRID_POINTS` points of dual `n`-space with components in `[-1, 1]`.
/// The same `n` always yields the same grid.
pub fn sample_grid<T: Real>(n: usize) -> Vec<Vec<Dual<T>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(GRID_SEED ^ n as u64);
    let mut draw = || T::from_f64(rng.gen_range(-1.0..=1.0)).expect("fits");
    (0..GRID_POINTS)
        .map(|_| (0..n).map(|_| Dual::new(draw(), draw())).collect())
        .collect()
}

pub(crate) fn close<T: Real>(a: Dual<T>, b: Dual<T>) -> bool {
    let tol = T::from_f64(REL_TOL).expect("fits");
    let near = |x: T, y: T| (x - y).abs() <= tol * (T::one() + x.abs().max(y.abs()));
    near(a.re, b.re) && near(a.ze, b.ze)
}

/// Value equality on the sample grid, up to a relative tolerance of 1e-9.
pub fn exprs_agree<T: Real>(a: &Expr<T>, b: &Expr<T>) -> bool {
    let n = a.arity().max(b.arity());
    sample_grid::<T>(n).iter().all(|p| close(a.eval(p), b.eval(p)))
}

/// A random polynomial in `x1..x_arity` with `terms` monomials of total
/// degree at most `max_degree`. Coefficients are small integers, about
/// half of them with a nonzero `1#` part.
pub fn random_polynomial<T: Real, R: Rng + ?Sized>(rng: &mut R, arity: usize, max_degree: u32, terms: usize) -> Expr<T> {
    let int = |v: i32| T::from_i32(v).expect("fits");
    let mut acc = Expr::zero(arity);
    for _ in 0..terms {
        let ze = if rng.gen_bool(0.5) { rng.gen_range(-2..=2) } else { 0 };
        let mut term = Expr::constant(Dual::new(int(rng.gen_range(-3..=3)), int(ze)), arity);
        if arity > 0 {
            let mut left = rng.gen_range(0..=max_degree);
            while left > 0 {
                let e = rng.gen_range(1..=left);
                term = term * Expr::var(rng.gen_range(0..arity), arity).powi(e);
                left -= e;
            }
        }
        acc = acc + term;
    }
    acc
}

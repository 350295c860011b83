//! Integrals of forms over cubes and chains, and numerical verification of
//! the type-θ Stokes identity `∫_c dw = ∫_{∂c} w`.

mod report;
mod scenario;

pub use report::{
    exit_code, run_suite, verify_stokes, write_csv, Status, StokesReport, SuiteReport, SuiteSummary, REPORT_SCHEMA,
};
pub use scenario::{builtin_suite, load_scenarios, parse_scenarios, CubeSpec, Scenario};

use num_traits::Zero;

use crate::cubes::{Chain, CubeDomain, SingularCube};
use crate::darboux::{estimate_family, IntegralEstimate, Mode, Refinement};
use crate::dual::{check_len, Dual, DualVec};
use crate::error::{Error, Result};
use crate::exterior::MultiIndex;
use crate::forms::DiffForm;
use crate::scalar::Real;

fn not_converged<T: Real>(e: &IntegralEstimate<T>) -> Error {
    Error::NotConverged(Box::new(e.to_f64()))
}

fn top_form_family<T: Real>(
    w: &DiffForm<T>,
    dom: &CubeDomain<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<(IntegralEstimate<T>, bool)> {
    if w.degree() != dom.k || w.n() != dom.k {
        return Err(Error::DimensionMismatch(format!(
            "need a {k}-form on dual {k}-space, got a {}-form on dual {}-space",
            w.degree(),
            w.n(),
            k = dom.k
        )));
    }
    match dom.rect() {
        Some(rect) => estimate_family(&w.top_coefficient()?, &rect, refinement, mode),
        None => Ok((IntegralEstimate::exact(w.top_coefficient()?.eval(&[])), true)),
    }
}

/// `∫_{[0,b]_θ^k} f dx^1 ∧ … ∧ dx^k` as a type-θ Darboux integral of `f`.
pub fn integrate_top_form<T: Real>(
    w: &DiffForm<T>,
    dom: &CubeDomain<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<IntegralEstimate<T>> {
    match top_form_family(w, dom, refinement, mode)? {
        (e, true) => Ok(e),
        (e, false) => Err(not_converged(&e)),
    }
}

fn cube_family<T: Real>(
    w: &DiffForm<T>,
    c: &SingularCube<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<(IntegralEstimate<T>, bool)> {
    if w.degree() != c.degree() {
        return Err(Error::DimensionMismatch(format!(
            "cannot integrate a {}-form over a {}-cube",
            w.degree(),
            c.degree()
        )));
    }
    if w.n() != c.ambient() {
        return Err(Error::DimensionMismatch(format!(
            "form on dual {}-space, cube in dual {}-space",
            w.n(),
            c.ambient()
        )));
    }
    if c.degree() == 0 {
        return Ok((IntegralEstimate::exact(integrate_zero_form(w, c)?), true));
    }
    top_form_family(&w.pullback(c.map())?, c.domain(), refinement, mode)
}

/// `∫_c w = ∫_{[0,b]_θ^k} c^* w`; for a 0-cube this is `w(c(0))`.
pub fn integrate_over_cube<T: Real>(
    w: &DiffForm<T>,
    c: &SingularCube<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<IntegralEstimate<T>> {
    match cube_family(w, c, refinement, mode)? {
        (e, true) => Ok(e),
        (e, false) => Err(not_converged(&e)),
    }
}

/// `w(c(0))` for a 0-form `w` and a 0-cube `c`.
pub fn integrate_zero_form<T: Real>(w: &DiffForm<T>, c: &SingularCube<T>) -> Result<Dual<T>> {
    if w.degree() != 0 || c.degree() != 0 {
        return Err(Error::DimensionMismatch("0-form and 0-cube expected".into()));
    }
    let p = c.eval(&DualVec::new(Vec::new()))?;
    check_len(w.n(), p.len())?;
    Ok(w.coeff(&MultiIndex::empty()).eval(p.as_slice()))
}

/// Weighted sum of per-cube estimates. A negative weight swaps lower and
/// upper bounds, and gaps add up weighted by `|weight|`.
pub(crate) fn chain_family<T: Real>(
    w: &DiffForm<T>,
    ch: &Chain<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<(IntegralEstimate<T>, bool)> {
    refinement.validate()?;
    if ch.is_empty() {
        return Ok((IntegralEstimate::exact(Dual::zero()), true));
    }
    let mut acc = IntegralEstimate::exact(Dual::zero());
    let mut converged = true;
    for (weight, c) in ch.terms() {
        let (e, ok) = cube_family(w, c, refinement, mode)?;
        converged &= ok;
        let a = T::from_i64(*weight).expect("fits");
        let (lo, hi) = if *weight >= 0 { (e.lower, e.upper) } else { (e.upper, e.lower) };
        acc.lower = acc.lower + lo.scale(a);
        acc.upper = acc.upper + hi.scale(a);
        acc.value = acc.value + e.value.scale(a);
        acc.gap_re = acc.gap_re + a.abs() * e.gap_re;
        acc.gap_ze = acc.gap_ze + a.abs() * e.gap_ze;
        acc.n = acc.n.max(e.n);
    }
    Ok((acc, converged))
}

/// `Σ a_i ∫_{c_i} w`.
pub fn integrate_over_chain<T: Real>(
    w: &DiffForm<T>,
    ch: &Chain<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<IntegralEstimate<T>> {
    match chain_family(w, ch, refinement, mode)? {
        (e, true) => Ok(e),
        (e, false) => Err(not_converged(&e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::Theta;

    fn d(re: f64, ze: f64) -> Dual<f64> {
        Dual::new(re, ze)
    }

    fn loose() -> Refinement {
        Refinement { n0: 8, max_doublings: 3, tol_re: 0.2, tol_ze: 0.2 }
    }

    fn near(e: &IntegralEstimate<f64>, want: Dual<f64>) {
        let slack = |g: f64| g.max(1e-12);
        assert!((e.value.re - want.re).abs() <= slack(e.gap_re), "{e:?} vs {want}");
        assert!((e.value.ze - want.ze).abs() <= slack(e.gap_ze), "{e:?} vs {want}");
    }

    #[test]
    fn top_forms() {
        let dom = CubeDomain::new(Theta::One, 0.5, 2).unwrap();
        let vol = DiffForm::<f64>::parse(2, 2, [("1,2", "1")]).unwrap();
        near(&integrate_top_form(&vol, &dom, &loose(), Mode::Enclosure).unwrap(), d(1.0, 1.0));
        let zero = DiffForm::<f64>::zero(2, 2);
        near(&integrate_top_form(&zero, &dom, &loose(), Mode::Enclosure).unwrap(), d(0.0, 0.0));
        let line = CubeDomain::new(Theta::One, 0.0, 1).unwrap();
        let x = DiffForm::<f64>::parse(1, 1, [("1", "x1")]).unwrap();
        let tight = Refinement { n0: 64, max_doublings: 6, tol_re: 1e-3, tol_ze: 1e-3 };
        near(&integrate_top_form(&x, &line, &tight, Mode::Enclosure).unwrap(), d(0.5, 0.0));
    }

    #[test]
    fn cubes() {
        let dom = CubeDomain::new(Theta::One, 0.5, 1).unwrap();
        let w = DiffForm::<f64>::parse(2, 1, [("2", "x1")]).unwrap();
        let side = SingularCube::parse(dom, &["1+0.5*eps", "x1"]).unwrap();
        near(&integrate_over_cube(&w, &side, &loose(), Mode::Enclosure).unwrap(), d(1.0, 1.0));
        let flat = SingularCube::parse(dom, &["x1", "0"]).unwrap();
        near(&integrate_over_cube(&w, &flat, &loose(), Mode::Enclosure).unwrap(), d(0.0, 0.0));
        let sq = SingularCube::<f64>::standard(2, Theta::One, 0.5).unwrap();
        let w2 = DiffForm::<f64>::parse(2, 2, [("1,2", "x1*x2")]).unwrap();
        let a = integrate_over_cube(&w2, &sq, &loose(), Mode::Enclosure).unwrap();
        let b = integrate_top_form(&w2, sq.domain(), &loose(), Mode::Enclosure).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn zero_forms() {
        let sq = DiffForm::<f64>::parse(1, 0, [("", "x1^2")]).unwrap();
        let p = SingularCube::point(Theta::One, 1.0, &DualVec::new(vec![d(1.0, 1.0)])).unwrap();
        assert_eq!(integrate_zero_form(&sq, &p).unwrap(), d(1.0, 2.0));
        let c = DiffForm::<f64>::parse(1, 0, [("", "2-3*eps")]).unwrap();
        assert_eq!(integrate_zero_form(&c, &p).unwrap(), d(2.0, -3.0));
        let x = DiffForm::<f64>::parse(1, 0, [("", "x1")]).unwrap();
        let origin = SingularCube::<f64>::standard(0, Theta::Two, 0.5).unwrap();
        assert_eq!(integrate_zero_form(&x, &origin).unwrap(), d(0.0, 0.0));
    }

    #[test]
    fn chains() {
        let sq = SingularCube::<f64>::standard(2, Theta::One, 0.5).unwrap();
        let w = DiffForm::<f64>::parse(2, 1, [("2", "x1")]).unwrap();
        let bd = sq.boundary().unwrap();
        near(&integrate_over_chain(&w, &bd, &loose(), Mode::Enclosure).unwrap(), d(1.0, 1.0));

        let c = SingularCube::parse(*sq.domain(), &["x1^2", "x1*x2"]).unwrap();
        let w2 = DiffForm::<f64>::parse(2, 2, [("1,2", "x1 + x2")]).unwrap();
        let one = integrate_over_chain(&w2, &Chain::from_cube(c.clone()), &loose(), Mode::Enclosure).unwrap();
        let two = integrate_over_chain(&w2, &Chain::from_cube(c.clone()).scale(2), &loose(), Mode::Enclosure).unwrap();
        assert!((two.value.re - 2.0 * one.value.re).abs() < 1e-12);
        assert!((two.value.ze - 2.0 * one.value.ze).abs() < 1e-12);
        let ch = Chain::from_cube(c);
        let none = ch.try_add(&ch.scale(-1)).unwrap().normalize();
        let e = integrate_over_chain(&w2, &none, &loose(), Mode::Enclosure).unwrap();
        assert_eq!(e, IntegralEstimate::exact(Dual::zero()));
    }

    #[test]
    fn zero_tolerance_never_converges() {
        let sq = SingularCube::<f64>::standard(1, Theta::One, 0.5).unwrap();
        let w = DiffForm::<f64>::parse(1, 1, [("1", "1")]).unwrap();
        let r = Refinement { n0: 2, max_doublings: 1, tol_re: 0.0, tol_ze: 0.0 };
        assert!(matches!(integrate_over_cube(&w, &sq, &r, Mode::Enclosure), Err(Error::NotConverged(_))));
    }

    #[test]
    fn mismatched_degrees_are_rejected() {
        let sq = SingularCube::<f64>::standard(2, Theta::One, 0.5).unwrap();
        let w = DiffForm::<f64>::parse(2, 1, [("2", "x1")]).unwrap();
        assert!(matches!(integrate_over_cube(&w, &sq, &loose(), Mode::Enclosure), Err(Error::DimensionMismatch(_))));
    }
}

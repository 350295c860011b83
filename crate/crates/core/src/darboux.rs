//! Type-θ rectangles, partitions and Darboux sums over the dual numbers.
//!
//! A type-θ closed interval `[a, b]_θ` is, as a set of points in the
//! `(re, ze)` plane, the box `[Re a, Re b] × [Ze a, Ze b]` (ze bounds in
//! either order). Upper and lower sums pair the supremum or infimum of the
//! real part with the supremum or infimum of the zero-divisor part depending
//! on θ, and weight each by the dual volume of the cell.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dual::{check_len, theta_cmp, Dual, Ordering4, Theta};
use crate::error::{Error, Result};
use crate::expr::{eval_enclosure, DualBox, Expr, Interval};
use crate::scalar::{Real, Scalar};

/// A type-θ closed interval `[a, b]_θ` with `a ≤_θ b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaInterval<T> {
    a: Dual<T>,
    b: Dual<T>,
    theta: Theta,
}

/// Builds `[a, b]_θ`, rejecting endpoints that are not ordered `a ≤_θ b`.
pub fn make_interval<T: Scalar + std::fmt::Display>(a: Dual<T>, b: Dual<T>, theta: Theta) -> Result<ThetaInterval<T>> {
    if theta_cmp(a, b, theta).is_le() {
        Ok(ThetaInterval { a, b, theta })
    } else {
        Err(Error::IncomparableEndpoints { a: a.to_string(), b: b.to_string(), theta: theta.as_u8() })
    }
}

impl<T: Real> ThetaInterval<T> {
    pub fn new(a: Dual<T>, b: Dual<T>, theta: Theta) -> Result<Self> {
        make_interval(a, b, theta)
    }

    pub fn a(&self) -> Dual<T> {
        self.a
    }

    pub fn b(&self) -> Dual<T> {
        self.b
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    /// `b - a`; θ-nonnegative by construction.
    pub fn length(&self) -> Dual<T> {
        self.b - self.a
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// The interval as a planar box of dual numbers.
    pub fn as_box(&self) -> DualBox<T> {
        DualBox {
            re: Interval::new(self.a.re, self.b.re),
            ze: Interval::spanning(self.a.ze, self.b.ze),
        }
    }

    pub fn contains(&self, x: Dual<T>) -> bool {
        theta_cmp(self.a, x, self.theta).is_le() && theta_cmp(x, self.b, self.theta).is_le()
    }
}

/// Product of type-θ intervals sharing one θ.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaRectangle<T> {
    intervals: Vec<ThetaInterval<T>>,
    theta: Theta,
}

impl<T: Real> ThetaRectangle<T> {
    pub fn new(intervals: Vec<ThetaInterval<T>>) -> Result<Self> {
        let Some(first) = intervals.first() else {
            return Err(Error::DimensionMismatch("a rectangle needs at least one interval".into()));
        };
        let theta = first.theta;
        if intervals.iter().any(|i| i.theta != theta) {
            return Err(Error::DimensionMismatch("rectangle mixes type 1 and type 2 intervals".into()));
        }
        Ok(ThetaRectangle { intervals, theta })
    }

    /// `[0, b]_θ^k`.
    pub fn cube(b: Dual<T>, theta: Theta, k: usize) -> Result<Self> {
        let side = make_interval(Dual::zero(), b, theta)?;
        Self::new(vec![side; k])
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[ThetaInterval<T>] {
        &self.intervals
    }

    pub fn volume(&self) -> Dual<T> {
        volume(&self.intervals)
    }
}

/// Dual volume of a product of intervals: the dual product of side lengths.
pub fn volume<T: Real>(sides: &[ThetaInterval<T>]) -> Dual<T> {
    sides.iter().fold(Dual::one(), |acc, s| acc * s.length())
}

/// Per-coordinate chains of θ-increasing points from `a^i` to `b^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition<T> {
    points: Vec<Vec<Dual<T>>>,
    theta: Theta,
}

impl<T: Real> Partition<T> {
    /// Validates endpoints and strict θ-increase. A degenerate coordinate
    /// (`a^i = b^i`) may repeat its single point.
    pub fn new(rect: &ThetaRectangle<T>, points: Vec<Vec<Dual<T>>>) -> Result<Self> {
        check_len(rect.dim(), points.len())?;
        for (i, (side, pts)) in rect.intervals.iter().zip(&points).enumerate() {
            if pts.len() < 2 || pts[0] != side.a || pts[pts.len() - 1] != side.b {
                return Err(Error::InvalidPartition(format!(
                    "coordinate {} must run from {} to {}",
                    i + 1,
                    side.a,
                    side.b
                )));
            }
            for w in pts.windows(2) {
                let ok = match theta_cmp(w[0], w[1], rect.theta) {
                    Ordering4::Less => true,
                    Ordering4::Equal => side.is_degenerate(),
                    _ => false,
                };
                if !ok {
                    return Err(Error::InvalidPartition(format!(
                        "points {} and {} in coordinate {} are not type {} increasing",
                        w[0],
                        w[1],
                        i + 1,
                        rect.theta
                    )));
                }
            }
        }
        Ok(Partition { points, theta: rect.theta })
    }

    /// `a^i + (j/N)(b^i - a^i)` for `j = 0..=N` in every coordinate.
    pub fn uniform(rect: &ThetaRectangle<T>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("N must be at least 1".into()));
        }
        let nn = T::from_usize(n).expect("N fits");
        let points = rect
            .intervals
            .iter()
            .map(|s| {
                let len = s.length();
                (0..=n)
                    .map(|j| match j {
                        0 => s.a,
                        j if j == n => s.b,
                        j => s.a + len.scale(T::from_usize(j).expect("j fits") / nn),
                    })
                    .collect()
            })
            .collect();
        Self::new(rect, points)
    }

    pub fn theta(&self) -> Theta {
        self.theta
    }

    pub fn points(&self) -> &[Vec<Dual<T>>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points.len()
    }

    /// Number of subrectangles.
    pub fn cell_count(&self) -> usize {
        self.points.iter().map(|p| p.len() - 1).product()
    }

    /// Subrectangle with 1-based multi-index `(j_1, …, j_n)`.
    pub fn subrect(&self, index: &[usize]) -> SubRect<T> {
        let slices = index
            .iter()
            .zip(&self.points)
            .map(|(&j, p)| ThetaInterval { a: p[j - 1], b: p[j], theta: self.theta })
            .collect();
        SubRect { index: index.to_vec(), slices }
    }

    /// Lexicographic position `linear` (last coordinate fastest) to a
    /// 1-based multi-index.
    fn multi_index(&self, mut linear: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for (slot, pts) in idx.iter_mut().zip(&self.points).rev() {
            let cells = pts.len() - 1;
            *slot = linear % cells + 1;
            linear /= cells;
        }
        idx
    }

    /// All subrectangles in lexicographic order of their multi-index.
    pub fn subrects(&self) -> impl Iterator<Item = SubRect<T>> + '_ {
        (0..self.cell_count()).map(|l| self.subrect(&self.multi_index(l)))
    }
}

/// One cell `S_{j_1,…,j_n}` of a partition.
#[derive(Clone, Debug, PartialEq)]
pub struct SubRect<T> {
    pub index: Vec<usize>,
    pub slices: Vec<ThetaInterval<T>>,
}

impl<T: Real> SubRect<T> {
    pub fn volume(&self) -> Dual<T> {
        volume(&self.slices)
    }
}

/// How `sup_S` and `inf_S` of `f_Re`, `f_Ze` are obtained on a cell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Interval enclosure: over-approximates the range.
    #[default]
    Enclosure,
    /// Extrema over an 8-point-per-axis grid: under-approximates the range.
    Sample,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Enclosure => "enclosure",
            Mode::Sample => "sample",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enclosure" => Ok(Mode::Enclosure),
            "sample" => Ok(Mode::Sample),
            _ => Err(Error::Config(format!("unknown mode {s:?}"))),
        }
    }
}

pub const SAMPLES_PER_AXIS: usize = 8;

fn axis_samples<T: Real>(iv: Interval<T>) -> Vec<T> {
    if iv.width() == T::zero() {
        return vec![iv.lo];
    }
    let last = T::from_usize(SAMPLES_PER_AXIS - 1).expect("fits");
    (0..SAMPLES_PER_AXIS)
        .map(|t| match t {
            0 => iv.lo,
            t if t == SAMPLES_PER_AXIS - 1 => iv.hi,
            t => iv.lo + iv.width() * (T::from_usize(t).expect("fits") / last),
        })
        .collect()
}

fn sample_range<T: Real>(f: &Expr<T>, boxes: &[DualBox<T>]) -> DualBox<T> {
    let axes: Vec<Vec<Dual<T>>> = boxes
        .iter()
        .map(|b| {
            let res = axis_samples(b.re);
            let zes = axis_samples(b.ze);
            res.iter().flat_map(|&r| zes.iter().map(move |&z| Dual::new(r, z))).collect()
        })
        .collect();
    let mut counter = vec![0usize; axes.len()];
    let mut point: Vec<Dual<T>> = axes.iter().map(|a| a[0]).collect();
    let first = f.eval(&point);
    let mut out = DualBox::point(first);
    loop {
        // odometer step, last axis fastest
        let mut k = axes.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            counter[k] += 1;
            if counter[k] < axes[k].len() {
                point[k] = axes[k][counter[k]];
                break;
            }
            counter[k] = 0;
            point[k] = axes[k][0];
        }
        let v = f.eval(&point);
        out.re = out.re.hull(&Interval::point(v.re));
        out.ze = out.ze.hull(&Interval::point(v.ze));
    }
}

/// Bounds `[inf_S f_Re, sup_S f_Re] × [inf_S f_Ze, sup_S f_Ze]` on a cell.
pub fn cell_range<T: Real>(f: &Expr<T>, slices: &[ThetaInterval<T>], mode: Mode) -> Result<DualBox<T>> {
    check_len(f.arity(), slices.len())?;
    let boxes: Vec<_> = slices.iter().map(ThetaInterval::as_box).collect();
    match mode {
        Mode::Enclosure => eval_enclosure(f, &boxes),
        Mode::Sample => Ok(sample_range(f, &boxes)),
    }
}

/// Upper and lower sums of one partition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarbouxSums<T> {
    pub lower: Dual<T>,
    pub upper: Dual<T>,
}

/// The dual coefficients that multiply `v(S)` in the upper and lower sums.
fn sum_weights<T: Real>(r: &DualBox<T>, theta: Theta) -> (Dual<T>, Dual<T>) {
    match theta {
        Theta::One => (Dual::new(r.re.lo, r.ze.lo), Dual::new(r.re.hi, r.ze.hi)),
        Theta::Two => (Dual::new(r.re.lo, r.ze.hi), Dual::new(r.re.hi, r.ze.lo)),
    }
}

/// Computes both sums in one pass. Cells are evaluated in parallel and
/// accumulated in lexicographic order, so results are reproducible.
pub fn darboux_sums<T: Real>(f: &Expr<T>, p: &Partition<T>, mode: Mode) -> Result<DarbouxSums<T>> {
    check_len(f.arity(), p.dim())?;
    let terms: Vec<(Dual<T>, Dual<T>)> = (0..p.cell_count())
        .into_par_iter()
        .map(|l| {
            let s = p.subrect(&p.multi_index(l));
            let range = cell_range(f, &s.slices, mode)?;
            let v = s.volume();
            let (lo, hi) = sum_weights(&range, p.theta);
            Ok((lo * v, hi * v))
        })
        .collect::<Result<_>>()?;
    let (lower, upper) = terms
        .into_iter()
        .fold((Dual::zero(), Dual::zero()), |(l, u), (a, b)| (l + a, u + b));
    Ok(DarbouxSums { lower, upper })
}

pub fn upper_sum<T: Real>(f: &Expr<T>, p: &Partition<T>, mode: Mode) -> Result<Dual<T>> {
    darboux_sums(f, p, mode).map(|s| s.upper)
}

pub fn lower_sum<T: Real>(f: &Expr<T>, p: &Partition<T>, mode: Mode) -> Result<Dual<T>> {
    darboux_sums(f, p, mode).map(|s| s.lower)
}

/// Refinement schedule for [`integral_estimate`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Refinement {
    #[serde(default = "defaults::n0")]
    pub n0: usize,
    #[serde(default = "defaults::max_doublings")]
    pub max_doublings: u32,
    #[serde(default = "defaults::tol")]
    pub tol_re: f64,
    #[serde(default = "defaults::tol")]
    pub tol_ze: f64,
}

mod defaults {
    pub fn n0() -> usize {
        4
    }
    pub fn max_doublings() -> u32 {
        8
    }
    pub fn tol() -> f64 {
        1e-6
    }
}

impl Default for Refinement {
    fn default() -> Self {
        Refinement {
            n0: defaults::n0(),
            max_doublings: defaults::max_doublings(),
            tol_re: defaults::tol(),
            tol_ze: defaults::tol(),
        }
    }
}

impl Refinement {
    pub fn validate(&self) -> Result<()> {
        if self.n0 == 0 {
            return Err(Error::Config("n0 must be at least 1".into()));
        }
        if self.max_doublings > 24 {
            return Err(Error::Config("max_doublings above 24 is not supported".into()));
        }
        if !(self.tol_re >= 0.0 && self.tol_ze >= 0.0) {
            return Err(Error::Config("tolerances must be non-negative".into()));
        }
        Ok(())
    }
}

/// Lower and upper integrals along the uniform partition family, their
/// componentwise midpoint and the remaining gaps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate<T> {
    pub lower: Dual<T>,
    pub upper: Dual<T>,
    pub value: Dual<T>,
    pub gap_re: T,
    pub gap_ze: T,
    /// Partition resolution of the last refinement step.
    pub n: usize,
}

impl<T: Real> IntegralEstimate<T> {
    /// An estimate known exactly, with zero gaps.
    pub fn exact(v: Dual<T>) -> Self {
        IntegralEstimate { lower: v, upper: v, value: v, gap_re: T::zero(), gap_ze: T::zero(), n: 0 }
    }

    pub fn to_f64(&self) -> IntegralEstimate<f64> {
        let c = |x: T| x.to_f64().unwrap_or(f64::NAN);
        let d = |x: Dual<T>| Dual::new(c(x.re), c(x.ze));
        IntegralEstimate {
            lower: d(self.lower),
            upper: d(self.upper),
            value: d(self.value),
            gap_re: c(self.gap_re),
            gap_ze: c(self.gap_ze),
            n: self.n,
        }
    }

    fn from_bounds(lower: Dual<T>, upper: Dual<T>, n: usize) -> Self {
        let half = T::from_f64(0.5).expect("fits");
        IntegralEstimate {
            lower,
            upper,
            value: Dual::new((lower.re + upper.re) * half, (lower.ze + upper.ze) * half),
            gap_re: (upper.re - lower.re).abs(),
            gap_ze: (upper.ze - lower.ze).abs(),
            n,
        }
    }
}

/// Runs the refinement loop and reports whether the tolerances were met.
/// The lower integral takes the supremum of `Re L` and, for θ = 1 the
/// supremum (θ = 2 the infimum) of `Ze L` over the partitions visited; the
/// upper integral mirrors this with `U`.
pub(crate) fn estimate_family<T: Real>(
    f: &Expr<T>,
    rect: &ThetaRectangle<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<(IntegralEstimate<T>, bool)> {
    refinement.validate()?;
    check_len(f.arity(), rect.dim())?;
    let theta = rect.theta;
    let tol_re = T::from_f64(refinement.tol_re).expect("fits");
    let tol_ze = T::from_f64(refinement.tol_ze).expect("fits");
    let mut lower = Dual::new(T::neg_infinity(), T::zero());
    let mut upper = Dual::new(T::infinity(), T::zero());
    let mut est = None;
    for t in 0..=refinement.max_doublings {
        let n = refinement.n0 << t;
        let p = Partition::uniform(rect, n)?;
        let s = darboux_sums(f, &p, mode)?;
        if t == 0 {
            lower.ze = s.lower.ze;
            upper.ze = s.upper.ze;
        }
        lower.re = lower.re.max(s.lower.re);
        upper.re = upper.re.min(s.upper.re);
        match theta {
            Theta::One => {
                lower.ze = lower.ze.max(s.lower.ze);
                upper.ze = upper.ze.min(s.upper.ze);
            }
            Theta::Two => {
                lower.ze = lower.ze.min(s.lower.ze);
                upper.ze = upper.ze.max(s.upper.ze);
            }
        }
        let e = IntegralEstimate::from_bounds(lower, upper, n);
        let done = tol_re > T::zero() && tol_ze > T::zero() && e.gap_re <= tol_re && e.gap_ze <= tol_ze;
        est = Some(e);
        if done {
            return Ok((e, true));
        }
    }
    Ok((est.expect("at least one refinement step"), false))
}

/// The type-θ integral of `f` over `rect`, refined until both gaps are
/// within tolerance. Zero tolerances can never be met.
pub fn integral_estimate<T: Real>(
    f: &Expr<T>,
    rect: &ThetaRectangle<T>,
    refinement: &Refinement,
    mode: Mode,
) -> Result<IntegralEstimate<T>> {
    let (e, converged) = estimate_family(f, rect, refinement, mode)?;
    if converged {
        Ok(e)
    } else {
        Err(Error::NotConverged(Box::new(e.to_f64())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn d(re: f64, ze: f64) -> Dual<f64> {
        Dual::new(re, ze)
    }

    fn f(text: &str, n: usize) -> Expr<f64> {
        parse_expr(text, n).unwrap()
    }

    fn unit(theta: Theta, r: f64) -> ThetaRectangle<f64> {
        ThetaRectangle::cube(d(1.0, theta.ze_sign::<f64>() * r), theta, 1).unwrap()
    }

    #[test]
    fn interval_construction() {
        assert!(make_interval(d(0.0, 0.0), d(1.0, 0.5), Theta::One).is_ok());
        assert!(make_interval(d(0.0, 0.0), d(1.0, -0.5), Theta::Two).is_ok());
        assert!(matches!(
            make_interval(d(0.0, 0.0), d(1.0, 0.5), Theta::Two),
            Err(Error::IncomparableEndpoints { .. })
        ));
        assert!(make_interval(d(1.0, 0.0), d(0.0, 0.0), Theta::One).is_err());
        let iv = make_interval(d(0.0, 0.0), d(1.0, -0.5), Theta::Two).unwrap();
        assert_eq!(iv.as_box(), DualBox::new(0.0, 1.0, -0.5, 0.0));
        assert!(iv.contains(d(0.5, -0.25)));
        assert!(!iv.contains(d(0.5, 0.25)));
    }

    #[test]
    fn volumes() {
        let r = 0.75;
        let sq = ThetaRectangle::cube(d(1.0, r), Theta::One, 2).unwrap();
        assert_eq!(sq.volume(), d(1.0, 2.0 * r));
        let degenerate = ThetaInterval::new(d(0.3, 0.1), d(0.3, 0.1), Theta::One).unwrap();
        let other = ThetaInterval::new(d(0.0, 0.0), d(2.0, 1.0), Theta::One).unwrap();
        assert_eq!(volume(&[other, degenerate]), Dual::zero());
        assert_eq!(unit(Theta::Two, 0.0).volume(), Dual::one());
    }

    #[test]
    fn uniform_points() {
        let rect = ThetaRectangle::cube(d(1.0, 1.0), Theta::One, 1).unwrap();
        let p = Partition::uniform(&rect, 2).unwrap();
        assert_eq!(p.points()[0], vec![d(0.0, 0.0), d(0.5, 0.5), d(1.0, 1.0)]);
        let p = Partition::uniform(&rect, 1).unwrap();
        assert_eq!(p.points()[0], vec![d(0.0, 0.0), d(1.0, 1.0)]);
        assert!(Partition::uniform(&rect, 0).is_err());
    }

    #[test]
    fn partition_validation() {
        let rect = ThetaRectangle::cube(d(1.0, 1.0), Theta::One, 1).unwrap();
        let bad = vec![vec![d(0.0, 0.0), d(0.5, 1.5), d(1.0, 1.0)]];
        assert!(matches!(Partition::new(&rect, bad), Err(Error::InvalidPartition(_))));
        let wrong_end = vec![vec![d(0.0, 0.0), d(1.0, 0.0)]];
        assert!(Partition::new(&rect, wrong_end).is_err());
        let degenerate = ThetaRectangle::<f64>::cube(Dual::zero(), Theta::Two, 1).unwrap();
        assert!(Partition::uniform(&degenerate, 3).is_ok());
    }

    #[test]
    fn classic_sums() {
        let rect = unit(Theta::One, 0.0);
        let p = Partition::new(&rect, vec![vec![d(0.0, 0.0), d(0.5, 0.0), d(1.0, 0.0)]]).unwrap();
        let x = f("x1", 1);
        assert_eq!(upper_sum(&x, &p, Mode::Sample).unwrap(), d(0.75, 0.0));
        assert_eq!(lower_sum(&x, &p, Mode::Sample).unwrap(), d(0.25, 0.0));
    }

    #[test]
    fn single_cell_dual_sum() {
        let rect = unit(Theta::One, 1.0);
        let p = Partition::uniform(&rect, 1).unwrap();
        assert_eq!(upper_sum(&f("x1", 1), &p, Mode::Sample).unwrap(), d(1.0, 2.0));
    }

    #[test]
    fn constants_integrate_exactly() {
        let c = d(2.5, -1.0);
        for theta in [Theta::One, Theta::Two] {
            let rect = ThetaRectangle::cube(d(1.0, theta.ze_sign::<f64>() * 0.5), theta, 2).unwrap();
            let p = Partition::uniform(&rect, 3).unwrap();
            let s = darboux_sums(&Expr::constant(c, 2), &p, Mode::Enclosure).unwrap();
            let want = c * rect.volume();
            for got in [s.lower, s.upper] {
                assert!((got.re - want.re).abs() < 1e-12 && (got.ze - want.ze).abs() < 1e-12);
            }
            let e = integral_estimate(&Expr::constant(c, 2), &rect, &Refinement::default(), Mode::Enclosure)
                .unwrap();
            assert_eq!(e.n, 4);
            assert!(e.gap_re < 1e-12 && e.gap_ze < 1e-12);
        }
    }

    #[test]
    fn refinement_converges_to_half() {
        let refinement = Refinement { n0: 4, max_doublings: 12, tol_re: 1e-4, tol_ze: 1e-4 };
        let e = integral_estimate(&f("x1", 1), &unit(Theta::One, 0.0), &refinement, Mode::Enclosure).unwrap();
        assert!((e.value.re - 0.5).abs() < 1e-4);
        assert!(e.gap_re <= 1e-4);
    }

    #[test]
    fn not_converged_carries_estimate() {
        let refinement = Refinement { n0: 2, max_doublings: 2, tol_re: 1e-9, tol_ze: 1e-9 };
        match integral_estimate(&f("x1", 1), &unit(Theta::One, 0.0), &refinement, Mode::Enclosure) {
            Err(Error::NotConverged(e)) => {
                assert_eq!(e.n, 8);
                assert!(e.gap_re > 0.0);
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
        let zero_tol = Refinement { tol_re: 0.0, ..Refinement::default() };
        let r = integral_estimate(&Expr::one(1), &unit(Theta::One, 0.0), &zero_tol, Mode::Enclosure);
        assert!(matches!(r, Err(Error::NotConverged(_))));
    }
}

//! Type-θ singular cubes on `[0, b]_θ^k` with `b = 1 + (-1)^(θ-1) r·1#`,
//! their faces and boundaries, and integer chains of cubes.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::darboux::ThetaRectangle;
use crate::dual::{theta_cmp, Dual, DualVec, Theta};
use crate::error::{Error, Result};
use crate::expr::{Expr, ExprMap};
use crate::sampling::{close, GRID_POINTS};
use crate::scalar::Real;

/// The parameter domain `[0, b]_θ^k`; `k = 0` is the single point `{0}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubeDomain<T> {
    pub theta: Theta,
    pub r: T,
    pub k: usize,
}

impl<T: Real> CubeDomain<T> {
    pub fn new(theta: Theta, r: T, k: usize) -> Result<Self> {
        if !(r >= T::zero()) || !r.is_finite() {
            return Err(Error::Config(format!("r must be a finite non-negative number, got {r}")));
        }
        Ok(CubeDomain { theta, r, k })
    }

    /// `b = 1 + (-1)^(θ-1) r·1#`.
    pub fn b(&self) -> Dual<T> {
        Dual::new(T::one(), self.theta.ze_sign::<T>() * self.r)
    }

    pub fn with_degree(&self, k: usize) -> Self {
        CubeDomain { k, ..*self }
    }

    /// `[0, b]_θ^k` as a rectangle; `None` for `k = 0`.
    pub fn rect(&self) -> Option<ThetaRectangle<T>> {
        (self.k > 0).then(|| ThetaRectangle::cube(self.b(), self.theta, self.k).expect("0 ≤_θ b by construction"))
    }

    /// Fixed pseudo-random points of the domain.
    pub fn samples(&self) -> Vec<DualVec<T>> {
        if self.k == 0 {
            return vec![DualVec::new(Vec::new())];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xc0be ^ (self.k as u64));
        let b = self.b();
        (0..GRID_POINTS)
            .map(|_| {
                DualVec::new(
                    (0..self.k)
                        .map(|_| {
                            let s = T::from_f64(rng.gen_range(0.0..=1.0)).expect("fits");
                            let t = T::from_f64(rng.gen_range(0.0..=1.0)).expect("fits");
                            Dual::new(b.re * s, b.ze * t)
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// Whether every coordinate of `p` lies in `[0, b]_θ`.
    pub fn contains(&self, p: &DualVec<T>) -> bool {
        p.len() == self.k
            && p.iter().all(|&x| {
                theta_cmp(Dual::zero(), x, self.theta).is_le() && theta_cmp(x, self.b(), self.theta).is_le()
            })
    }
}

/// A dual-differentiable map from `[0, b]_θ^k` into dual n-space.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularCube<T> {
    domain: CubeDomain<T>,
    map: ExprMap<T>,
}

impl<T: Real> SingularCube<T> {
    pub fn new(domain: CubeDomain<T>, map: ExprMap<T>) -> Result<Self> {
        if map.arity() != domain.k {
            return Err(Error::DimensionMismatch(format!(
                "a {}-cube needs component functions of {} variables, got {}",
                domain.k,
                domain.k,
                map.arity()
            )));
        }
        if map.is_empty() {
            return Err(Error::DimensionMismatch("a cube needs at least one component".into()));
        }
        Ok(SingularCube { domain, map })
    }

    /// Parses component expressions in the variables `x1..xk`.
    pub fn parse(domain: CubeDomain<T>, components: &[impl AsRef<str>]) -> Result<Self> {
        Self::new(domain, ExprMap::parse(components, domain.k)?)
    }

    /// The identity map of `[0, b]_θ^k`; for `k = 0` the point `0` of
    /// dual 1-space.
    pub fn standard(k: usize, theta: Theta, r: T) -> Result<Self> {
        let domain = CubeDomain::new(theta, r, k)?;
        let map = if k == 0 { ExprMap::new(vec![Expr::zero(0)], 0)? } else { ExprMap::identity(k) };
        Self::new(domain, map)
    }

    /// The 0-cube at `p`.
    pub fn point(theta: Theta, r: T, p: &DualVec<T>) -> Result<Self> {
        let map = ExprMap::new(p.iter().map(|&c| Expr::constant(c, 0)).collect(), 0)?;
        Self::new(CubeDomain::new(theta, r, 0)?, map)
    }

    pub fn domain(&self) -> &CubeDomain<T> {
        &self.domain
    }

    pub fn map(&self) -> &ExprMap<T> {
        &self.map
    }

    pub fn degree(&self) -> usize {
        self.domain.k
    }

    /// Ambient dimension n.
    pub fn ambient(&self) -> usize {
        self.map.len()
    }

    pub fn eval(&self, p: &DualVec<T>) -> Result<DualVec<T>> {
        self.map.eval(p)
    }

    /// The `(j, α)`-face: `c ∘ I_(j,α)`, where `I_(j,α)` inserts `α·b` as
    /// the j-th coordinate.
    pub fn face(&self, j: usize, alpha: bool) -> Result<Self> {
        let k = self.domain.k;
        if j == 0 || j > k {
            return Err(Error::FaceOutOfRange { j, k });
        }
        let fixed = if alpha { self.domain.b() } else { Dual::zero() };
        let subs: Vec<Expr<T>> = (0..k)
            .map(|i| match i.cmp(&(j - 1)) {
                std::cmp::Ordering::Less => Expr::var(i, k - 1),
                std::cmp::Ordering::Equal => Expr::constant(fixed, k - 1),
                std::cmp::Ordering::Greater => Expr::var(i - 1, k - 1),
            })
            .collect();
        let inner = ExprMap::new(subs, k - 1)?;
        Self::new(self.domain.with_degree(k - 1), self.map.compose(&inner)?)
    }

    pub fn boundary(&self) -> Result<Chain<T>> {
        Chain::from_cube(self.clone()).boundary()
    }

    /// Values on the domain's sample points, used to identify cubes.
    pub fn fingerprint(&self) -> Vec<DualVec<T>> {
        self.domain.samples().iter().map(|p| self.map.eval(p).expect("arity checked")).collect()
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.domain == other.domain
            && self.ambient() == other.ambient()
            && fingerprints_match(&self.fingerprint(), &other.fingerprint())
    }
}

fn fingerprints_match<T: Real>(a: &[DualVec<T>], b: &[DualVec<T>]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(u, v)| u.iter().zip(v.iter()).all(|(&x, &y)| close(x, y)))
}

/// An integer combination of type-θ singular k-cubes sharing θ, r, k and n.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<T> {
    domain: CubeDomain<T>,
    n: usize,
    terms: Vec<(i64, SingularCube<T>)>,
}

impl<T: Real> Chain<T> {
    pub fn new(domain: CubeDomain<T>, n: usize, terms: Vec<(i64, SingularCube<T>)>) -> Result<Self> {
        for (_, c) in &terms {
            if c.domain != domain {
                return Err(Error::InconsistentChain(format!(
                    "cube with (theta={}, r={}, k={}) in a chain with (theta={}, r={}, k={})",
                    c.domain.theta, c.domain.r, c.domain.k, domain.theta, domain.r, domain.k
                )));
            }
            if c.ambient() != n {
                return Err(Error::InconsistentChain(format!(
                    "cube in dual {}-space in a chain in dual {n}-space",
                    c.ambient()
                )));
            }
        }
        let terms = terms.into_iter().filter(|(w, _)| *w != 0).collect();
        Ok(Chain { domain, n, terms })
    }

    pub fn from_cube(c: SingularCube<T>) -> Self {
        Chain { domain: c.domain, n: c.ambient(), terms: vec![(1, c)] }
    }

    pub fn empty(domain: CubeDomain<T>, n: usize) -> Self {
        Chain { domain, n, terms: Vec::new() }
    }

    pub fn domain(&self) -> &CubeDomain<T> {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.domain.k
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(i64, SingularCube<T>)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, w: i64) -> Self {
        let terms = self.terms.iter().map(|(a, c)| (a * w, c.clone())).filter(|(a, _)| *a != 0).collect();
        Chain { terms, ..self.clone() }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Self::new(self.domain, self.n, terms)
    }

    /// `∂(Σ a_i c_i) = Σ a_i Σ_j Σ_α (-1)^(j+α) c_i,(j,α)`.
    pub fn boundary(&self) -> Result<Self> {
        let k = self.domain.k;
        if k == 0 {
            return Err(Error::BoundaryOfPoint);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * 2 * k);
        for (w, c) in &self.terms {
            for j in 1..=k {
                for alpha in [false, true] {
                    let sign = if (j + alpha as usize) % 2 == 0 { 1 } else { -1 };
                    terms.push((w * sign, c.face(j, alpha)?));
                }
            }
        }
        Self::new(self.domain.with_degree(k - 1), self.n, terms)
    }

    /// Merges cubes that agree on the sample points, summing weights and
    /// dropping zeros. First occurrence order is kept.
    pub fn normalize(&self) -> Self {
        let mut groups: Vec<(i64, SingularCube<T>, Vec<DualVec<T>>)> = Vec::new();
        for (w, c) in &self.terms {
            let fp = c.fingerprint();
            match groups.iter_mut().find(|(_, _, g)| fingerprints_match(g, &fp)) {
                Some(g) => g.0 += w,
                None => groups.push((*w, c.clone(), fp)),
            }
        }
        let terms = groups.into_iter().filter(|(w, _, _)| *w != 0).map(|(w, c, _)| (w, c)).collect();
        Chain { terms, ..self.clone() }
    }
}

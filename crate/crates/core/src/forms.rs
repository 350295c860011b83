//! Dual differential k-forms `Σ w_I dx^{i_1} ∧ … ∧ dx^{i_k}` with
//! expression coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::dual::{check_len, DualVec};
use crate::error::{Error, Result};
use crate::exterior::{AltTensor, MultiIndex};
use crate::expr::{parse_expr, Expr, ExprMap};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffForm<T> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, Expr<T>>,
}

impl<T: Real> DiffForm<T> {
    pub fn zero(n: usize, k: usize) -> Self {
        DiffForm { n, k, coeffs: BTreeMap::new() }
    }

    /// The 0-form given by a function.
    pub fn function(f: Expr<T>, n: usize) -> Result<Self> {
        let mut w = Self::zero(n, 0);
        w.add_term(MultiIndex::empty(), f)?;
        Ok(w)
    }

    /// The basis 1-form `dx^i` (1-based).
    pub fn dx(i: usize, n: usize) -> Result<Self> {
        let mut w = Self::zero(n, 1);
        w.add_term(MultiIndex::new(vec![i], n)?, Expr::one(n))?;
        Ok(w)
    }

    /// Builds from ascending index lists and coefficients.
    pub fn from_terms(n: usize, k: usize, terms: Vec<(Vec<usize>, Expr<T>)>) -> Result<Self> {
        let mut w = Self::zero(n, k);
        for (idx, f) in terms {
            check_len(k, idx.len())?;
            w.add_term(MultiIndex::new(idx, n)?, f)?;
        }
        Ok(w)
    }

    /// Parses the textual syntax `{"1,2": "x1*x2", "1,3": "eps*x1"}`, given
    /// as key/value pairs. The empty key `""` names the 0-form coefficient.
    pub fn parse<'a>(n: usize, k: usize, entries: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self> {
        let mut w = Self::zero(n, k);
        for (key, text) in entries {
            let idx = parse_index_key(key)?;
            if idx.len() != k {
                return Err(Error::Config(format!("index {key:?} has degree {}, expected {k}", idx.len())));
            }
            w.add_term(MultiIndex::new(idx, n)?, parse_expr(text, n)?)?;
        }
        Ok(w)
    }

    /// Adds `f dx^I`, accumulating onto an existing coefficient.
    pub fn add_term(&mut self, idx: MultiIndex, f: Expr<T>) -> Result<()> {
        if idx.degree() != self.k {
            return Err(Error::DimensionMismatch(format!("index of degree {} in a {}-form", idx.degree(), self.k)));
        }
        if idx.indices().iter().any(|&i| i > self.n) || f.arity() > self.n {
            return Err(Error::DimensionMismatch(format!("term exceeds ambient dimension {}", self.n)));
        }
        let f = f.with_arity(self.n);
        let sum = match self.coeffs.remove(&idx) {
            Some(cur) => cur + f,
            None => f,
        };
        if !sum.is_zero() {
            self.coeffs.insert(idx, sum);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, idx: &MultiIndex) -> Expr<T> {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| Expr::zero(self.n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Expr<T>)> {
        self.coeffs.iter()
    }

    /// True when no coefficient survives folding.
    pub fn is_structurally_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// For a top-degree form `f dx^1 ∧ … ∧ dx^n`, the function `f`.
    pub fn top_coefficient(&self) -> Result<Expr<T>> {
        if self.k != self.n {
            return Err(Error::DimensionMismatch(format!("a {}-form on dual {}-space is not top degree", self.k, self.n)));
        }
        Ok(self.coeff(&MultiIndex::new((1..=self.n).collect(), self.n)?))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if (self.n, self.k) != (o.n, o.k) {
            return Err(Error::DimensionMismatch("adding forms of different shape".into()));
        }
        let mut out = self.clone();
        for (i, f) in &o.coeffs {
            out.add_term(i.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, f: &Expr<T>) -> Result<Self> {
        let mut out = Self::zero(self.n, self.k);
        for (i, c) in &self.coeffs {
            out.add_term(i.clone(), f * c)?;
        }
        Ok(out)
    }

    /// `w(p)` as an alternating tensor on tangent vectors at `p`.
    pub fn eval(&self, p: &DualVec<T>) -> Result<AltTensor<T>> {
        check_len(self.n, p.len())?;
        let mut out = AltTensor::zero(self.n, self.k);
        for (i, f) in &self.coeffs {
            out.set(i.clone(), f.eval(p.as_slice()));
        }
        Ok(out)
    }

    /// `dw = Σ_I Σ_i ∂_i w_I dx^i ∧ dx^I`.
    pub fn exterior_derivative(&self) -> Result<Self> {
        let mut out = Self::zero(self.n, self.k + 1);
        for (idx, f) in &self.coeffs {
            for i in 1..=self.n {
                let Some((merged, odd)) = MultiIndex::single(i).merge(idx) else {
                    continue;
                };
                let df = f.partial_diff(i - 1)?;
                out.add_term(merged, if odd { -df } else { df })?;
            }
        }
        Ok(out)
    }

    /// `f^* w` for a map `f` from dual n-space into the ambient space of
    /// `w`: coefficient `J` is `Σ_I (w_I ∘ f) · det(∂f^{i_a}/∂x^{j_b})`.
    pub fn pullback(&self, f: &ExprMap<T>) -> Result<Self> {
        check_len(self.n, f.len())?;
        let src = f.arity();
        let mut out = Self::zero(src, self.k);
        if self.k > src {
            return Ok(out);
        }
        let partials: Vec<Vec<Expr<T>>> = f
            .components()
            .iter()
            .map(|c| (0..src).map(|j| c.partial_diff(j)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let targets = MultiIndex::all(src, self.k);
        for (idx, w) in &self.coeffs {
            let outer = w.compose(f.components(), src)?;
            for j in &targets {
                let m: Vec<Vec<Expr<T>>> = idx
                    .indices()
                    .iter()
                    .map(|&a| j.indices().iter().map(|&b| partials[a - 1][b - 1].clone()).collect())
                    .collect();
                let minor = expr_det(&m, src);
                if !minor.is_zero() {
                    out.add_term(j.clone(), &outer * &minor)?;
                }
            }
        }
        Ok(out)
    }
}

/// `w ∧ η`.
pub fn wedge_forms<T: Real>(w: &DiffForm<T>, eta: &DiffForm<T>) -> Result<DiffForm<T>> {
    if w.n != eta.n {
        return Err(Error::DimensionMismatch(format!("forms on dual {}-space and {}-space", w.n, eta.n)));
    }
    let mut out = DiffForm::zero(w.n, w.k + eta.k);
    for (i, a) in &w.coeffs {
        for (j, b) in &eta.coeffs {
            if let Some((ij, odd)) = i.merge(j) {
                let c = a * b;
                out.add_term(ij, if odd { -c } else { c })?;
            }
        }
    }
    Ok(out)
}

/// `df = Σ ∂_i f dx^i`.
pub fn d_of_function<T: Real>(f: &Expr<T>, n: usize) -> Result<DiffForm<T>> {
    DiffForm::function(f.clone(), n)?.exterior_derivative()
}

fn expr_det<T: Real>(m: &[Vec<Expr<T>>], arity: usize) -> Expr<T> {
    match m.len() {
        0 => Expr::one(arity),
        1 => m[0][0].clone(),
        k => {
            let mut acc = Expr::zero(arity);
            for c in 0..k {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Expr<T>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][c] * &expr_det(&minor, arity);
                acc = if c % 2 == 1 { acc - term } else { acc + term };
            }
            acc
        }
    }
}

/// Parses `"1,2"` into `[1, 2]`; `""` is the empty index.
pub fn parse_index_key(key: &str) -> Result<Vec<usize>> {
    let key = key.trim();
    if key.is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Config(format!("bad form index {key:?}"))))
        .collect()
}

impl<T: Real> fmt::Display for DiffForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for i in idx.indices() {
                write!(f, " dx{i}")?;
            }
        }
        Ok(())
    }
}

//! Dual k-tensors on the free module of rank n, the alternation operator and
//! the wedge product.
//!
//! [`AltTensor`] stores coefficients on ascending multi-indices, which form a
//! basis of the alternating k-tensors. [`GenTensor`] keeps full index tuples
//! and exists to check `Alt`, `⊗` and `∧` against their defining formulas.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{FromPrimitive, One, Zero};

use crate::dual::{check_len, Dual, DualVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest degree for which permutations are enumerated.
pub const MAX_ALT_DEGREE: usize = 8;

/// Strictly ascending 1-based coordinate indices `i_1 < … < i_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        let ascending = indices.windows(2).all(|w| w[0] < w[1]);
        let in_range = indices.iter().all(|&i| (1..=n).contains(&i));
        if ascending && in_range {
            Ok(MultiIndex(indices))
        } else {
            Err(Error::InvalidMultiIndex(format!("{indices:?} is not ascending within 1..={n}")))
        }
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn single(i: usize) -> Self {
        MultiIndex(vec![i])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// All ascending multi-indices of length `k` in `1..=n`, in
    /// lexicographic order.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if cur.len() == k {
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for i in start..=n {
                cur.push(i);
                rec(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if k <= n {
            rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
        }
        out
    }

    /// Merges two disjoint index sets; returns the union and the sign of
    /// the shuffle permutation, or `None` if they overlap.
    pub fn merge(&self, other: &MultiIndex) -> Option<(MultiIndex, bool)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        let mut inversions = 0usize;
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] < other.0[j]) {
                out.push(self.0[i]);
                i += 1;
            } else if i == self.0.len() || other.0[j] < self.0[i] {
                // every remaining element of `self` is passed over
                inversions += self.0.len() - i;
                out.push(other.0[j]);
                j += 1;
            } else {
                return None;
            }
        }
        Some((MultiIndex(out), inversions % 2 == 1))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `binom(n, k)`, the rank of the alternating k-tensors on a rank-n module.
pub fn lambda_dim(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn negate_if<S: Scalar>(x: Dual<S>, neg: bool) -> Dual<S> {
    if neg {
        -x
    } else {
        x
    }
}

/// All permutations of `0..k` with their parity (true = odd).
pub(crate) fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        let k = used.len();
        if cur.len() == k {
            out.push((cur.clone(), odd));
            return;
        }
        for v in 0..k {
            if !used[v] {
                // inversions added by placing v after the already used values above it
                let flips = used[v + 1..].iter().filter(|&&u| u).count();
                used[v] = true;
                cur.push(v);
                rec(cur, used, odd ^ (flips % 2 == 1), out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], false, &mut out);
    out
}

fn factorial<S: Scalar + FromPrimitive>(k: usize) -> S {
    S::from_usize((1..=k).product::<usize>()).expect("factorial fits")
}

/// A general dual k-tensor `Σ c_J φ_{j_1} ⊗ … ⊗ φ_{j_k}` over full index
/// tuples `J` (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct GenTensor<S> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<Vec<usize>, Dual<S>>,
}

impl<S: Scalar> GenTensor<S> {
    pub fn zero(n: usize, k: usize) -> Self {
        GenTensor { n, k, coeffs: BTreeMap::new() }
    }

    /// `φ_{j_1} ⊗ … ⊗ φ_{j_k}`.
    pub fn basis(n: usize, tuple: Vec<usize>) -> Result<Self> {
        let mut t = Self::zero(n, tuple.len());
        t.add_term(tuple, Dual::one())?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn add_term(&mut self, tuple: Vec<usize>, c: Dual<S>) -> Result<()> {
        check_len(self.k, tuple.len())?;
        if tuple.iter().any(|&i| !(1..=self.n).contains(&i)) {
            return Err(Error::InvalidMultiIndex(format!("{tuple:?} outside 1..={}", self.n)));
        }
        let slot = self.coeffs.entry(tuple).or_insert_with(Dual::zero);
        *slot += c;
        Ok(())
    }

    /// Coefficient of a full tuple (zero when absent).
    pub fn coeff(&self, tuple: &[usize]) -> Dual<S> {
        self.coeffs.get(tuple).copied().unwrap_or_else(Dual::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Dual<S>)> {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, a: Dual<S>) -> Self {
        let coeffs = self.coeffs.iter().map(|(t, &c)| (t.clone(), a * c)).collect();
        GenTensor { n: self.n, k: self.k, coeffs }
    }

    pub fn eval(&self, vs: &[DualVec<S>]) -> Result<Dual<S>> {
        check_len(self.k, vs.len())?;
        for v in vs {
            check_len(self.n, v.len())?;
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(t, &c)| t.iter().zip(vs).fold(c, |acc, (&i, v)| acc * v[i - 1]))
            .sum())
    }
}

/// `S ⊗ T`.
pub fn tensor_product<S: Scalar>(a: &GenTensor<S>, b: &GenTensor<S>) -> Result<GenTensor<S>> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!("tensors on rank {} and {}", a.n, b.n)));
    }
    let mut out = GenTensor::zero(a.n, a.k + b.k);
    for (ta, &ca) in &a.coeffs {
        for (tb, &cb) in &b.coeffs {
            let mut t = ta.clone();
            t.extend_from_slice(tb);
            out.add_term(t, ca * cb)?;
        }
    }
    Ok(out)
}

/// `Alt(T) = (1/k!) Σ_σ sgn(σ) T∘σ`. Enumerates all `k!` permutations, so
/// degrees above [`MAX_ALT_DEGREE`] are rejected.
pub fn alt<S: Scalar + FromPrimitive>(t: &GenTensor<S>) -> Result<GenTensor<S>> {
    if t.k > MAX_ALT_DEGREE {
        return Err(Error::DegreeTooLarge { k: t.k, max: MAX_ALT_DEGREE });
    }
    let inv_fact = Dual::from_real(S::one() / factorial::<S>(t.k));
    let perms = permutations(t.k);
    let mut out = GenTensor::zero(t.n, t.k);
    for (tuple, &c) in &t.coeffs {
        let c = c * inv_fact;
        for (perm, odd) in &perms {
            let permuted: Vec<usize> = perm.iter().map(|&p| tuple[p]).collect();
            out.add_term(permuted, negate_if(c, *odd))?;
        }
    }
    Ok(out)
}

/// An alternating dual k-tensor `Σ c_I φ_{i_1} ∧ … ∧ φ_{i_k}` over ascending
/// multi-indices `I`.
#[derive(Clone, Debug, PartialEq)]
pub struct AltTensor<S> {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, Dual<S>>,
}

/// Determinant over the dual numbers by cofactor expansion along the first
/// row. Only small `k` occur.
pub(crate) fn det<S: Scalar>(m: &[Vec<Dual<S>>]) -> Dual<S> {
    match m.len() {
        0 => Dual::one(),
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        k => (0..k)
            .map(|c| {
                let minor: Vec<Vec<Dual<S>>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
                    .collect();
                negate_if(m[0][c] * det(&minor), c % 2 == 1)
            })
            .sum(),
    }
}

impl<S: Scalar> AltTensor<S> {
    pub fn zero(n: usize, k: usize) -> Self {
        AltTensor { n, k, coeffs: BTreeMap::new() }
    }

    /// A degree-0 tensor, i.e. a dual scalar.
    pub fn scalar(n: usize, c: Dual<S>) -> Self {
        let mut t = Self::zero(n, 0);
        t.set(MultiIndex::empty(), c);
        t
    }

    /// `φ_{i_1} ∧ … ∧ φ_{i_k}`.
    pub fn basis(n: usize, index: MultiIndex) -> Self {
        let mut t = Self::zero(n, index.degree());
        t.set(index, Dual::one());
        t
    }

    /// Builds from `(indices, coefficient)` pairs; indices must be ascending.
    pub fn from_terms(n: usize, k: usize, terms: Vec<(Vec<usize>, Dual<S>)>) -> Result<Self> {
        let mut t = Self::zero(n, k);
        for (idx, c) in terms {
            check_len(k, idx.len())?;
            let i = MultiIndex::new(idx, n)?;
            let cur = t.coeff(&i);
            t.set(i, cur + c);
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, i: &MultiIndex) -> Dual<S> {
        self.coeffs.get(i).copied().unwrap_or_else(Dual::zero)
    }

    pub fn set(&mut self, i: MultiIndex, c: Dual<S>) {
        debug_assert_eq!(i.degree(), self.k);
        if c.is_zero() {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Dual<S>)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, a: Dual<S>) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for (i, &c) in &self.coeffs {
            out.set(i.clone(), a * c);
        }
        out
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if (self.n, self.k) != (o.n, o.k) {
            return Err(Error::DimensionMismatch("adding tensors of different shape".into()));
        }
        let mut out = self.clone();
        for (i, &c) in &o.coeffs {
            let cur = out.coeff(i);
            out.set(i.clone(), cur + c);
        }
        Ok(out)
    }

    /// Evaluates on `k` vectors; each basis term contributes the k×k
    /// determinant `det(v_a^{i_b})`.
    pub fn eval(&self, vs: &[DualVec<S>]) -> Result<Dual<S>> {
        check_len(self.k, vs.len())?;
        for v in vs {
            check_len(self.n, v.len())?;
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(idx, &c)| {
                let m: Vec<Vec<Dual<S>>> =
                    vs.iter().map(|v| idx.indices().iter().map(|&i| v[i - 1]).collect()).collect();
                c * det(&m)
            })
            .sum())
    }

    /// The same tensor over full index tuples: each `φ_I` expands to
    /// `Σ_τ sgn(τ) φ_{I∘τ}`.
    pub fn to_general(&self) -> GenTensor<S> {
        let perms = permutations(self.k);
        let mut out = GenTensor::zero(self.n, self.k);
        for (idx, &c) in &self.coeffs {
            for (perm, odd) in &perms {
                let t: Vec<usize> = perm.iter().map(|&p| idx.indices()[p]).collect();
                out.add_term(t, negate_if(c, *odd)).expect("indices in range");
            }
        }
        out
    }
}

/// `ω ∧ η`, computed on basis elements as `φ_I ∧ φ_J = ±φ_{I∪J}` (zero when
/// `I` and `J` overlap).
pub fn wedge<S: Scalar>(a: &AltTensor<S>, b: &AltTensor<S>) -> Result<AltTensor<S>> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!("tensors on rank {} and {}", a.n, b.n)));
    }
    let mut out = AltTensor::zero(a.n, a.k + b.k);
    for (i, &ca) in &a.coeffs {
        for (j, &cb) in &b.coeffs {
            if let Some((ij, odd)) = i.merge(j) {
                let cur = out.coeff(&ij);
                out.set(ij, cur + negate_if(ca * cb, odd));
            }
        }
    }
    Ok(out)
}

/// Evaluates either tensor kind on `k` vectors.
pub fn tensor_eval<S: Scalar>(t: &impl Evaluate<S>, vs: &[DualVec<S>]) -> Result<Dual<S>> {
    t.evaluate(vs)
}

pub trait Evaluate<S> {
    fn evaluate(&self, vs: &[DualVec<S>]) -> Result<Dual<S>>;
}

impl<S: Scalar> Evaluate<S> for GenTensor<S> {
    fn evaluate(&self, vs: &[DualVec<S>]) -> Result<Dual<S>> {
        self.eval(vs)
    }
}

impl<S: Scalar> Evaluate<S> for AltTensor<S> {
    fn evaluate(&self, vs: &[DualVec<S>]) -> Result<Dual<S>> {
        self.eval(vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type D = Dual<f64>;

    fn e(n: usize, i: usize) -> DualVec<f64> {
        DualVec::basis(n, i)
    }

    fn phi(n: usize, idx: &[usize]) -> AltTensor<f64> {
        AltTensor::basis(n, MultiIndex::new(idx.to_vec(), n).unwrap())
    }

    #[test]
    fn determinant_evaluation() {
        let w = phi(2, &[1, 2]);
        assert_eq!(tensor_eval(&w, &[e(2, 1), e(2, 2)]).unwrap(), D::one());
        assert_eq!(tensor_eval(&w, &[e(2, 2), e(2, 1)]).unwrap(), -D::one());
        assert_eq!(tensor_eval(&w, &[DualVec::zeros(2), e(2, 2)]).unwrap(), D::zero());
        assert!(w.eval(&[e(2, 1)]).is_err());
    }

    #[test]
    fn tensor_product_examples() {
        let p1 = GenTensor::<f64>::basis(2, vec![1]).unwrap();
        let p2 = GenTensor::<f64>::basis(2, vec![2]).unwrap();
        let t = tensor_product(&p1, &p2).unwrap();
        assert_eq!(t.eval(&[e(2, 1), e(2, 2)]).unwrap(), D::one());
        assert_eq!(t.eval(&[e(2, 2), e(2, 1)]).unwrap(), D::zero());
        let z = tensor_product(&p1, &GenTensor::zero(2, 1)).unwrap();
        assert_eq!(z.terms().count(), 0);
    }

    #[test]
    fn alt_examples() {
        let p1 = GenTensor::<f64>::basis(2, vec![1]).unwrap();
        let p2 = GenTensor::<f64>::basis(2, vec![2]).unwrap();
        let a = alt(&tensor_product(&p1, &p2).unwrap()).unwrap();
        assert_eq!(a.eval(&[e(2, 1), e(2, 2)]).unwrap(), Dual::from_real(0.5));
        let s = alt(&tensor_product(&p1, &p1).unwrap()).unwrap();
        assert_eq!(s.terms().count(), 0);
        let big = GenTensor::<f64>::basis(9, (1..=9).collect()).unwrap();
        assert!(matches!(alt(&big), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn wedge_examples() {
        let w = wedge(&phi(2, &[1]), &phi(2, &[2])).unwrap();
        assert_eq!(w.eval(&[e(2, 1), e(2, 2)]).unwrap(), D::one());
        assert!(wedge(&phi(2, &[1]), &phi(2, &[1])).unwrap().is_zero());
        let back = wedge(&phi(3, &[3]), &phi(3, &[1, 2])).unwrap();
        assert_eq!(back, phi(3, &[1, 2, 3]));
        let swapped = wedge(&phi(3, &[2]), &phi(3, &[1, 3])).unwrap();
        assert_eq!(swapped, phi(3, &[1, 2, 3]).scale(-D::one()));
        let s = AltTensor::scalar(3, Dual::new(2.0, 1.0));
        assert_eq!(wedge(&s, &phi(3, &[2])).unwrap(), phi(3, &[2]).scale(Dual::new(2.0, 1.0)));
    }

    #[test]
    fn dims() {
        assert_eq!(lambda_dim(4, 2), 6);
        assert_eq!(lambda_dim(7, 0), 1);
        assert_eq!(lambda_dim(3, 2), MultiIndex::all(3, 2).len());
        assert_eq!(lambda_dim(2, 3), 0);
        assert_eq!(
            MultiIndex::all(3, 2).iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            ["1,2", "1,3", "2,3"]
        );
    }

    #[test]
    fn permutation_parity() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        let odd: Vec<_> = perms.iter().filter(|(_, o)| *o).map(|(p, _)| p.clone()).collect();
        assert_eq!(odd, vec![vec![0, 2, 1], vec![1, 0, 2], vec![2, 1, 0]]);
    }

    #[test]
    fn multi_index_validation() {
        assert!(MultiIndex::new(vec![2, 1], 3).is_err());
        assert!(MultiIndex::new(vec![1, 4], 3).is_err());
        assert!(MultiIndex::new(vec![1, 1], 3).is_err());
        let (m, odd) = MultiIndex::new(vec![2, 4], 4).unwrap().merge(&MultiIndex::new(vec![1, 3], 4).unwrap()).unwrap();
        assert_eq!(m.indices(), &[1, 2, 3, 4]);
        assert!(odd);
    }
}

//! Test-side oracles, kept independent of the library's arithmetic:
//! duals as plain pairs, polynomials as explicit monomial lists with exact
//! derivatives and cube integrals, and the two orders written out directly.
#![allow(dead_code)]

use dual_stokes::{parse_expr, Dual, Expr};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(re, ze)`.
pub type P = (f64, f64);

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Product via the matrix representation `a + b·1# ↦ [[a, 0], [b, a]]`.
pub fn pmul(x: P, y: P) -> P {
    let m = [[x.0, 0.0], [x.1, x.0]];
    let n = [[y.0, 0.0], [y.1, y.0]];
    let row = |i: usize, j: usize| m[i][0] * n[0][j] + m[i][1] * n[1][j];
    (row(0, 0), row(1, 0))
}

pub fn padd(x: P, y: P) -> P {
    (x.0 + y.0, x.1 + y.1)
}

pub fn ppow(x: P, k: u32) -> P {
    (0..k).fold((1.0, 0.0), |acc, _| pmul(acc, x))
}

pub fn pscale(x: P, s: f64) -> P {
    (x.0 * s, x.1 * s)
}

pub fn to_p(x: Dual<f64>) -> P {
    (x.re, x.ze)
}

pub fn near(x: Dual<f64>, y: P, tol: f64) -> bool {
    (x.re - y.0).abs() <= tol * (1.0 + y.0.abs()) && (x.ze - y.1).abs() <= tol * (1.0 + y.1.abs())
}

/// `x >_θ y`, written out from the two case definitions.
pub fn theta_gt(x: P, y: P, theta: u8) -> bool {
    match theta {
        1 => (x.0 > y.0 && x.1 >= y.1) || (x.0 == y.0 && x.1 > y.1),
        _ => (x.0 > y.0 && x.1 <= y.1) || (x.0 == y.0 && x.1 < y.1),
    }
}

pub fn rand_dual(rng: &mut impl Rng) -> Dual<f64> {
    Dual::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn rand_point(rng: &mut impl Rng, n: usize) -> Vec<Dual<f64>> {
    (0..n).map(|_| rand_dual(rng)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mono {
    pub coeff: (i32, i32),
    pub exps: Vec<u32>,
}

/// A polynomial in `x1..xn` with small integer dual coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub n: usize,
    pub terms: Vec<Mono>,
}

impl Poly {
    pub fn random(rng: &mut impl Rng, n: usize, max_deg: u32, max_terms: usize) -> Self {
        let terms = (0..rng.gen_range(1..=max_terms))
            .map(|_| {
                let mut exps = vec![0; n];
                let mut left = rng.gen_range(0..=max_deg);
                while left > 0 && n > 0 {
                    exps[rng.gen_range(0..n)] += 1;
                    left -= 1;
                }
                let ze = if rng.gen_bool(0.5) { rng.gen_range(-2..=2) } else { 0 };
                Mono { coeff: (rng.gen_range(-2..=2), ze), exps }
            })
            .collect();
        Poly { n, terms }
    }

    pub fn text(&self) -> String {
        let mut parts = Vec::new();
        for m in &self.terms {
            let mut s = format!("({} + {}*eps)", m.coeff.0, m.coeff.1);
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*x{}", i + 1)),
                    e => s.push_str(&format!("*x{}^{e}", i + 1)),
                }
            }
            parts.push(s);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn expr(&self) -> Expr<f64> {
        parse_expr(&self.text(), self.n).expect("oracle text parses")
    }

    pub fn eval(&self, p: &[P]) -> P {
        self.terms.iter().fold((0.0, 0.0), |acc, m| {
            let c = (m.coeff.0 as f64, m.coeff.1 as f64);
            padd(acc, m.exps.iter().enumerate().fold(c, |t, (i, &e)| pmul(t, ppow(p[i], e))))
        })
    }

    pub fn eval_dual(&self, p: &[Dual<f64>]) -> P {
        self.eval(&p.iter().map(|&d| to_p(d)).collect::<Vec<_>>())
    }

    /// Exact partial derivative in the 0-based variable `i`.
    pub fn diff(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|m| m.exps[i] > 0)
            .map(|m| {
                let e = m.exps[i] as i32;
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                Mono { coeff: (m.coeff.0 * e, m.coeff.1 * e), exps }
            })
            .collect();
        Poly { n: self.n, terms }
    }

    /// `∫_{[0,b]^n}` by the antiderivative of each monomial:
    /// `Π_i b^{e_i+1} / (e_i + 1)`.
    pub fn cube_integral(&self, b: P) -> P {
        self.terms.iter().fold((0.0, 0.0), |acc, m| {
            let c = (m.coeff.0 as f64, m.coeff.1 as f64);
            let t = m.exps.iter().fold(c, |t, &e| pmul(t, pscale(ppow(b, e + 1), 1.0 / (e + 1) as f64)));
            padd(acc, t)
        })
    }
}

/// `∂p_j/∂x_i` evaluated at `a`, from the oracle polynomials.
pub fn oracle_jacobian(f: &[Poly], a: &[P]) -> Vec<Vec<P>> {
    f.iter().map(|p| (0..p.n).map(|i| p.diff(i).eval(a)).collect()).collect()
}

pub fn matmul(a: &[Vec<P>], b: &[Vec<P>]) -> Vec<Vec<P>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).fold((0.0, 0.0), |acc, k| padd(acc, pmul(row[k], b[k][c]))))
                .collect()
        })
        .collect()
}

//! Quick randomized invariant checks behind the `selftest` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cubes::{CubeDomain, SingularCube};
use crate::darboux::{darboux_sums, Mode, Partition};
use crate::dual::{theta_cmp, Dual, DualVec, Ordering4, Theta};
use crate::error::Result;
use crate::exterior::{wedge, AltTensor};
use crate::expr::{compose_maps, jacobian, ExprMap};
use crate::forms::DiffForm;
use crate::sampling::{close, random_polynomial};
use crate::stokes::{builtin_suite, run_suite};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn check(name: &'static str, cases: usize, mut case: impl FnMut(usize) -> Result<Option<String>>) -> Check {
    let mut out = Check { name, cases, failures: 0, first_failure: None };
    for i in 0..cases {
        let failure = match case(i) {
            Ok(f) => f,
            Err(e) => Some(e.to_string()),
        };
        if let Some(msg) = failure {
            out.failures += 1;
            out.first_failure.get_or_insert(format!("case {i}: {msg}"));
        }
    }
    out
}

fn small(rng: &mut ChaCha8Rng) -> Dual<i64> {
    Dual::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5))
}

fn theta(rng: &mut ChaCha8Rng) -> Theta {
    if rng.gen_bool(0.5) {
        Theta::One
    } else {
        Theta::Two
    }
}

fn point(rng: &mut ChaCha8Rng, n: usize) -> DualVec<f64> {
    DualVec::new((0..n).map(|_| Dual::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
}

/// Runs every check with `cases` random instances each (the builtin Stokes
/// suite runs once).
pub fn run(seed: u64, cases: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    checks.push(check("ring laws", cases, |_| {
        let (x, y, z) = (small(&mut rng), small(&mut rng), small(&mut rng));
        let e = Dual::<i64>::eps();
        let ok = (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z && x * y == y * x && e * e == Dual::new(0, 0);
        Ok((!ok).then(|| format!("{x:?} {y:?} {z:?}")))
    }));

    checks.push(check("theta orders", cases, |_| {
        let (x, y, z) = (small(&mut rng), small(&mut rng), small(&mut rng));
        let t = theta(&mut rng);
        let xy = theta_cmp(x, y, t);
        let mut ok = xy == theta_cmp(y, x, t).reverse();
        if xy.is_le() && theta_cmp(y, z, t).is_le() {
            ok &= theta_cmp(x, z, t).is_le();
        }
        ok &= theta_cmp(x + z, y + z, t) == xy;
        let other = if t == Theta::One { Theta::Two } else { Theta::One };
        ok &= theta_cmp(x.conj(), y.conj(), other) == xy;
        ok &= (xy == Ordering4::Equal) == (x == y);
        Ok((!ok).then(|| format!("{x:?} {y:?} {z:?} theta={t}")))
    }));

    checks.push(check("chain rule", cases, |_| {
        let (n, m, p) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let g = ExprMap::new((0..m).map(|_| random_polynomial(&mut rng, n, 2, 3)).collect(), n)?;
        let f = ExprMap::new((0..p).map(|_| random_polynomial(&mut rng, m, 2, 3)).collect(), m)?;
        let a = point(&mut rng, n);
        let lhs = jacobian(&f.compose(&g)?, &a)?;
        let rhs = compose_maps(&jacobian(&f, &g.eval(&a)?)?, &jacobian(&g, &a)?)?;
        let ok = (0..p).all(|i| (0..n).all(|j| close(lhs.get(i, j), rhs.get(i, j))));
        Ok((!ok).then(|| format!("f={f:?}")))
    }));

    checks.push(check("wedge anticommutes", cases, |_| {
        let n = rng.gen_range(2..=4);
        let one_form = |rng: &mut ChaCha8Rng| {
            AltTensor::from_terms(n, 1, (1..=n).map(|i| (vec![i], small(rng))).collect()).expect("valid")
        };
        let (a, b) = (one_form(&mut rng), one_form(&mut rng));
        let ok = wedge(&a, &b)? == wedge(&b, &a)?.scale(Dual::new(-1, 0)) && wedge(&a, &a)?.is_zero();
        Ok((!ok).then(|| format!("{a:?} {b:?}")))
    }));

    checks.push(check("d of d vanishes", cases, |_| {
        let n = 3;
        let w = DiffForm::from_terms(n, 1, (1..=n).map(|i| (vec![i], random_polynomial(&mut rng, n, 3, 3))).collect())?;
        let dd = w.exterior_derivative()?.exterior_derivative()?;
        let p = point(&mut rng, n);
        let ok = dd.eval(&p)?.terms().all(|(_, c)| close(*c, Dual::new(0.0, 0.0)));
        Ok((!ok).then(|| format!("{w}")))
    }));

    checks.push(check("boundary of boundary vanishes", cases.min(50), |_| {
        let dom = CubeDomain::new(theta(&mut rng), rng.gen_range(0.0..1.0), 2)?;
        let map = ExprMap::new((0..2).map(|_| random_polynomial(&mut rng, 2, 2, 3)).collect(), 2)?;
        let c = SingularCube::new(dom, map)?;
        let ok = c.boundary()?.boundary()?.normalize().is_empty();
        Ok((!ok).then(|| format!("{:?}", c.map())))
    }));

    checks.push(check("darboux sandwich", cases.min(100), |_| {
        let t = theta(&mut rng);
        let b = Dual::new(1.0, t.ze_sign::<f64>() * rng.gen_range(0.0..1.0));
        let rect = crate::darboux::ThetaRectangle::cube(b, t, 2)?;
        let f = random_polynomial(&mut rng, 2, 3, 3);
        let s = darboux_sums(&f, &Partition::uniform(&rect, rng.gen_range(1..=6))?, Mode::Enclosure)?;
        let ze_ok = match t {
            Theta::One => s.lower.ze <= s.upper.ze,
            Theta::Two => s.lower.ze >= s.upper.ze,
        };
        let ok = s.lower.re <= s.upper.re && ze_ok;
        Ok((!ok).then(|| format!("f={f} theta={t} {s:?}")))
    }));

    checks.push(check("builtin stokes suite", 1, |_| {
        let suite = run_suite(&builtin_suite())?;
        let bad: Vec<&str> = suite.reports.iter().filter(|r| !r.pass).map(|r| r.name.as_str()).collect();
        Ok((!bad.is_empty()).then(|| format!("failing scenarios: {}", bad.join(", "))))
    }));

    checks
}

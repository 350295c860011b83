mod common;

use std::collections::BTreeMap;

use common::{padd, pmul, ppow, pscale, rng, Poly, P};
use dual_stokes::stokes::{verify_stokes, CubeSpec, Scenario};
use dual_stokes::{
    integrate_over_chain, integrate_over_cube, Chain, CubeDomain, DiffForm, Dual, ExprMap, IntegralEstimate,
    MultiIndex, Mode, Refinement, SingularCube, Status, Theta,
};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// One partition level, so every integral is the midpoint of one pair of sums.
fn one_level(n0: usize) -> Refinement {
    Refinement { n0, max_doublings: 0, tol_re: 1e9, tol_ze: 1e9 }
}

fn theta() -> impl Strategy<Value = Theta> {
    prop_oneof![Just(Theta::One), Just(Theta::Two)]
}

fn b_of(t: Theta, r: f64) -> P {
    (1.0, t.ze_sign::<f64>() * r)
}

/// True value inside the reported bracket, up to rounding.
fn brackets(e: &IntegralEstimate<f64>, want: P) -> bool {
    let slack = |x: f64| 1e-9 * (1.0 + x.abs());
    (e.value.re - want.0).abs() <= 0.5 * e.gap_re + slack(want.0)
        && (e.value.ze - want.1).abs() <= 0.5 * e.gap_ze + slack(want.1)
}

fn rand_form(r: &mut ChaCha8Rng, n: usize, k: usize) -> DiffForm<f64> {
    let terms = MultiIndex::all(n, k).into_iter().map(|i| (i.indices().to_vec(), Poly::random(r, n, 2, 2).expr())).collect();
    DiffForm::from_terms(n, k, terms).unwrap()
}

fn rand_cube(r: &mut ChaCha8Rng, dom: CubeDomain<f64>, n: usize) -> SingularCube<f64> {
    let comps = (0..n).map(|_| Poly::random(r, dom.k, 2, 2).expr()).collect();
    SingularCube::new(dom, ExprMap::new(comps, dom.k).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_polynomial_scenarios_satisfy_stokes(t in theta(), r in 0.0..1.0f64, seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let k = g.gen_range(1..=n.min(2));
        let form: BTreeMap<String, String> = MultiIndex::all(n, k - 1)
            .into_iter()
            .map(|i| (i.to_string(), Poly::random(&mut g, n, 2, 2).text()))
            .collect();
        let chain = (0..g.gen_range(1..=2))
            .map(|_| CubeSpec { weight: g.gen_range(-2..=2), cube: (0..n).map(|_| Poly::random(&mut g, k, 2, 2).text()).collect() })
            .collect();
        let scn = Scenario { name: "random".into(), theta: t, r, n, k, form, chain, refinement: one_level(16), mode: Mode::Enclosure };
        let rep = verify_stokes(&scn).unwrap();
        prop_assert_eq!(rep.status, Status::Pass);
        // both sides bracket the same true value
        prop_assert!(rep.diff_re.abs() <= 0.5 * (rep.lhs_gap_re + rep.rhs_gap_re) + 1e-9 * (1.0 + rep.lhs.re.abs()), "{:?}", rep);
        prop_assert!(rep.diff_ze.abs() <= 0.5 * (rep.lhs_gap_ze + rep.rhs_gap_ze) + 1e-9 * (1.0 + rep.lhs.ze.abs()), "{:?}", rep);
    }

    #[test]
    fn fundamental_theorem_on_curves(t in theta(), r in 0.0..1.0f64, seed in any::<u64>()) {
        let mut g = rng(seed);
        let n = g.gen_range(1..=3);
        let f = Poly::random(&mut g, n, 3, 3);
        let comps: Vec<Poly> = (0..n).map(|_| Poly::random(&mut g, 1, 2, 2)).collect();
        let dom = CubeDomain::new(t, r, 1).unwrap();
        let c = SingularCube::new(dom, ExprMap::new(comps.iter().map(Poly::expr).collect(), 1).unwrap()).unwrap();
        let df = DiffForm::function(f.expr(), n).unwrap().exterior_derivative().unwrap();
        let e = integrate_over_cube(&df, &c, &one_level(64), Mode::Enclosure).unwrap();
        let end: Vec<P> = comps.iter().map(|p| p.eval(&[b_of(t, r)])).collect();
        let start: Vec<P> = comps.iter().map(|p| p.eval(&[(0.0, 0.0)])).collect();
        let want = padd(f.eval(&end), pscale(f.eval(&start), -1.0));
        prop_assert!(brackets(&e, want), "{:?} vs {:?}", e, want);
    }

    #[test]
    fn chain_integrals_are_linear_in_the_chain(t in theta(), seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let mut g = rng(seed);
        let dom = CubeDomain::new(t, 0.5, 2).unwrap();
        let w = rand_form(&mut g, 2, 2);
        let (c1, c2) = (rand_cube(&mut g, dom, 2), rand_cube(&mut g, dom, 2));
        let rf = one_level(8);
        let e1 = integrate_over_cube(&w, &c1, &rf, Mode::Enclosure).unwrap();
        let e2 = integrate_over_cube(&w, &c2, &rf, Mode::Enclosure).unwrap();
        let ch = Chain::new(dom, 2, vec![(a, c1), (b, c2)]).unwrap();
        let e = integrate_over_chain(&w, &ch, &rf, Mode::Enclosure).unwrap();
        let want = e1.value.scale(a as f64) + e2.value.scale(b as f64);
        prop_assert!((e.value.re - want.re).abs() <= 1e-9 * (1.0 + want.re.abs()));
        prop_assert!((e.value.ze - want.ze).abs() <= 1e-9 * (1.0 + want.ze.abs()));
        let gap = (a.abs() as f64) * e1.gap_re + (b.abs() as f64) * e2.gap_re;
        prop_assert!((e.gap_re - gap).abs() <= 1e-9 * (1.0 + gap));
    }

    #[test]
    fn cube_integrals_are_linear_in_the_form_up_to_gaps(t in theta(), seed in any::<u64>(), a in -3i32..=3) {
        let mut g = rng(seed);
        let dom = CubeDomain::new(t, 0.5, 2).unwrap();
        let (w1, w2) = (rand_form(&mut g, 3, 2), rand_form(&mut g, 3, 2));
        let c = rand_cube(&mut g, dom, 3);
        let combo = w1.scale(&dual_stokes::Expr::real(a as f64, 3)).unwrap().try_add(&w2).unwrap();
        let rf = one_level(8);
        let (e, e1, e2) = (
            integrate_over_cube(&combo, &c, &rf, Mode::Enclosure).unwrap(),
            integrate_over_cube(&w1, &c, &rf, Mode::Enclosure).unwrap(),
            integrate_over_cube(&w2, &c, &rf, Mode::Enclosure).unwrap(),
        );
        let want = e1.value.scale(a as f64) + e2.value;
        let tol_re = 0.5 * (e.gap_re + (a.abs() as f64) * e1.gap_re + e2.gap_re) + 1e-9 * (1.0 + want.re.abs());
        let tol_ze = 0.5 * (e.gap_ze + (a.abs() as f64) * e1.gap_ze + e2.gap_ze) + 1e-9 * (1.0 + want.ze.abs());
        prop_assert!((e.value.re - want.re).abs() <= tol_re);
        prop_assert!((e.value.ze - want.ze).abs() <= tol_ze);
    }
}

#[test]
fn reparameterized_segments_agree_with_antiderivative() {
    // w = x1 dx1 has antiderivative x1^2 / 2.
    let w = DiffForm::<f64>::parse(1, 1, [("1", "x1")]).unwrap();
    for t in [Theta::One, Theta::Two] {
        for r in [0.0, 0.5] {
            let dom = CubeDomain::new(t, r, 1).unwrap();
            let b = b_of(t, r);
            for (text, end) in [("x1", b), ("x1^2", ppow(b, 2))] {
                let c = SingularCube::parse(dom, &[text]).unwrap();
                let e = integrate_over_cube(&w, &c, &one_level(256), Mode::Enclosure).unwrap();
                let want = pscale(pmul(end, end), 0.5);
                assert!(brackets(&e, want), "c = {text}, theta = {t}, r = {r}: {e:?} vs {want:?}");
            }
        }
    }
    // same endpoints at r = 0 give the same value
    let dom = CubeDomain::new(Theta::One, 0.0, 1).unwrap();
    let lin = integrate_over_cube(&w, &SingularCube::parse(dom, &["x1"]).unwrap(), &one_level(256), Mode::Enclosure).unwrap();
    let sq = integrate_over_cube(&w, &SingularCube::parse(dom, &["x1^2"]).unwrap(), &one_level(256), Mode::Enclosure).unwrap();
    assert!((lin.value.re - sq.value.re).abs() <= 0.5 * (lin.gap_re + sq.gap_re));
}

#[test]
fn documented_scenarios() {
    let square = |t: Theta| Scenario {
        name: format!("square-{t}"),
        theta: t,
        r: 0.5,
        n: 2,
        k: 2,
        form: [("2".to_string(), "x1".to_string())].into(),
        chain: vec![CubeSpec { weight: 1, cube: vec!["x1".into(), "x2".into()] }],
        refinement: one_level(8),
        mode: Mode::Enclosure,
    };
    for t in [Theta::One, Theta::Two] {
        let rep = verify_stokes(&square(t)).unwrap();
        let want = ppow(b_of(t, 0.5), 2);
        assert_eq!((rep.lhs, rep.rhs), (Dual::new(want.0, want.1), Dual::new(want.0, want.1)));
        assert!(rep.pass);
    }
    let mut zero = square(Theta::One);
    zero.form.clear();
    let rep = verify_stokes(&zero).unwrap();
    assert_eq!((rep.lhs, rep.rhs, rep.status), (Dual::new(0.0, 0.0), Dual::new(0.0, 0.0), Status::Pass));
}

//! Scenario files and the builtin suite.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cubes::{Chain, CubeDomain, SingularCube};
use crate::darboux::{Mode, Refinement};
use crate::dual::Theta;
use crate::error::{Error, Result};
use crate::forms::DiffForm;

/// One weighted cube of a chain, given by component expressions in
/// `x1..xk`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeSpec {
    #[serde(default = "unit_weight")]
    pub weight: i64,
    pub cube: Vec<String>,
}

fn unit_weight() -> i64 {
    1
}

/// A Stokes check: a (k-1)-form `form` on dual n-space and a k-chain
/// `chain` in it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub theta: Theta,
    pub r: f64,
    pub n: usize,
    pub k: usize,
    /// Index keys such as `"1,2"` (or `""` for a 0-form) to coefficients.
    pub form: BTreeMap<String, String>,
    pub chain: Vec<CubeSpec>,
    #[serde(default)]
    pub refinement: Refinement,
    #[serde(default)]
    pub mode: Mode,
}

impl Scenario {
    pub fn domain(&self) -> Result<CubeDomain<f64>> {
        CubeDomain::new(self.theta, self.r, self.k)
    }

    pub fn form(&self) -> Result<DiffForm<f64>> {
        if self.k == 0 {
            return Err(Error::Config(format!("{}: k must be at least 1", self.name)));
        }
        DiffForm::parse(self.n, self.k - 1, self.form.iter().map(|(a, b)| (a.as_str(), b.as_str())))
    }

    pub fn chain(&self) -> Result<Chain<f64>> {
        let domain = self.domain()?;
        let terms = self
            .chain
            .iter()
            .map(|t| {
                if t.cube.len() != self.n {
                    return Err(Error::Config(format!(
                        "{}: cube has {} components, expected n = {}",
                        self.name,
                        t.cube.len(),
                        self.n
                    )));
                }
                Ok((t.weight, SingularCube::parse(domain, &t.cube)?))
            })
            .collect::<Result<_>>()?;
        Chain::new(domain, self.n, terms)
    }

    /// Checks every field without integrating anything.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(Error::Config("scenario name is empty".into()));
        }
        if self.n == 0 {
            return Err(Error::Config(format!("{}: n must be at least 1", self.name)));
        }
        self.refinement.validate()?;
        self.form()?;
        self.chain()?;
        Ok(())
    }
}

/// Accepts a single scenario object, an array of them, or
/// `{"scenarios": [...]}`.
pub fn parse_scenarios(text: &str) -> Result<Vec<Scenario>> {
    let bad = |e: serde_json::Error| Error::Config(format!("scenario file: {e}"));
    let v: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
    let list = match v {
        serde_json::Value::Array(_) => serde_json::from_value(v).map_err(bad)?,
        serde_json::Value::Object(ref m) if m.contains_key("scenarios") && m.len() == 1 => {
            serde_json::from_value(m["scenarios"].clone()).map_err(bad)?
        }
        _ => vec![serde_json::from_value(v).map_err(bad)?],
    };
    if list.is_empty() {
        return Err(Error::Config("scenario file contains no scenarios".into()));
    }
    Ok(list)
}

pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>> {
    parse_scenarios(&std::fs::read_to_string(path)?)
}

const BUILTIN_REFINEMENT: Refinement = Refinement { n0: 8, max_doublings: 3, tol_re: 0.15, tol_ze: 0.15 };

fn scenario(
    name: &str,
    theta: Theta,
    r: f64,
    n: usize,
    k: usize,
    form: &[(&str, &str)],
    chain: &[(i64, &[&str])],
    mode: Mode,
) -> Scenario {
    Scenario {
        name: name.into(),
        theta,
        r,
        n,
        k,
        form: form.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        chain: chain
            .iter()
            .map(|(w, c)| CubeSpec { weight: *w, cube: c.iter().map(|s| s.to_string()).collect() })
            .collect(),
        refinement: BUILTIN_REFINEMENT,
        mode,
    }
}

/// Scenarios spanning θ ∈ {1, 2}, r ∈ {0, 0.5}, k ∈ {1, 2}, n ∈ {1, 2, 3},
/// with polynomial, eps-coefficient and trigonometric forms.
pub fn builtin_suite() -> Vec<Scenario> {
    use Mode::{Enclosure, Sample};
    use Theta::{One, Two};
    let square: &[&str] = &["x1", "x2"];
    vec![
        scenario("square-x1dx2-theta1", One, 0.5, 2, 2, &[("2", "x1")], &[(1, square)], Enclosure),
        scenario("square-x1dx2-theta2", Two, 0.5, 2, 2, &[("2", "x1")], &[(1, square)], Enclosure),
        scenario("ftc-x1sq-theta1", One, 0.5, 1, 1, &[("", "x1^2")], &[(1, &["x1"])], Enclosure),
        scenario("ftc-x1sq-theta2", Two, 0.5, 1, 1, &[("", "x1^2")], &[(1, &["x1"])], Enclosure),
        scenario(
            "n3-polynomial-cube",
            One,
            0.5,
            3,
            2,
            &[("2", "x1"), ("1", "x3")],
            &[(1, &["x1 + x2^2", "x2", "x1*x2"])],
            Enclosure,
        ),
        scenario(
            "classical-square",
            One,
            0.0,
            2,
            2,
            &[("1", "x1^2*x2"), ("2", "x1*x2^2")],
            &[(1, square)],
            Enclosure,
        ),
        scenario("classical-ftc", Two, 0.0, 1, 1, &[("", "x1^3 - 2*x1")], &[(1, &["x1"])], Enclosure),
        scenario(
            "eps-coefficients-theta2",
            Two,
            0.5,
            2,
            2,
            &[("1", "x2^2 + eps*x1"), ("2", "eps*x1*x2")],
            &[(2, &["x1 + eps*x2", "x2 - x1*x2"]), (-1, square)],
            Enclosure,
        ),
        scenario(
            "curve-in-plane",
            One,
            0.5,
            2,
            1,
            &[("", "x1*x2 + eps*x2^2")],
            &[(1, &["x1^2", "x1 - eps*x1"])],
            Enclosure,
        ),
        scenario("trig-sample", One, 0.5, 2, 2, &[("2", "sin(x1)"), ("1", "cos(x2)")], &[(1, square)], Sample),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_shapes() {
        let one = r#"{"name":"a","theta":1,"r":0.5,"n":1,"k":1,"form":{"":"x1"},"chain":[{"cube":["x1"]}]}"#;
        let s = parse_scenarios(one).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].chain[0].weight, 1);
        assert_eq!(s[0].refinement, Refinement::default());
        assert_eq!(parse_scenarios(&format!("[{one},{one}]")).unwrap().len(), 2);
        assert_eq!(parse_scenarios(&format!(r#"{{"scenarios":[{one}]}}"#)).unwrap().len(), 1);
        assert!(matches!(parse_scenarios("[]"), Err(Error::Config(_))));
        assert!(matches!(parse_scenarios("{"), Err(Error::Config(_))));
        let theta3 = one.replace(r#""theta":1"#, r#""theta":3"#);
        assert!(matches!(parse_scenarios(&theta3), Err(Error::Config(_))));
        let extra = one.replace(r#""k":1"#, r#""k":1,"bogus":true"#);
        assert!(matches!(parse_scenarios(&extra), Err(Error::Config(_))));
    }

    #[test]
    fn validation() {
        let base = r#"{"name":"a","theta":2,"r":0.5,"n":2,"k":2,"form":{"2":"x1"},"chain":[{"cube":["x1","x2"]}]}"#;
        assert!(parse_scenarios(base).unwrap()[0].validate().is_ok());
        for bad in [
            base.replace(r#""2":"x1""#, r#""1,2":"x1""#),
            base.replace(r#"["x1","x2"]"#, r#"["x1"]"#),
            base.replace(r#"["x1","x2"]"#, r#"["x1","x3"]"#),
            base.replace(r#""x1"}"#, r#""x1 +"}"#),
            base.replace(r#""r":0.5"#, r#""r":-1"#),
            base.replace(r#""k":2"#, r#""k":0"#),
        ] {
            assert!(parse_scenarios(&bad).unwrap()[0].validate().is_err(), "{bad}");
        }
    }

    #[test]
    fn builtin_scenarios_are_valid() {
        let suite = builtin_suite();
        assert!(suite.len() >= 6);
        for s in &suite {
            s.validate().unwrap();
            let text = serde_json::to_string(s).unwrap();
            assert_eq!(&parse_scenarios(&text).unwrap()[0], s);
        }
    }
}

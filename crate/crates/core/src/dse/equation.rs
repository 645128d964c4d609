use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::DseError;
use crate::algebra::{factorial, from_biguint, parse_rational, CoeffSeq, Rational};

/// The weights wₙ of X = 1 + Σ wₙ αⁿ B₊(Xⁿ⁺¹).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weights {
    Explicit(BTreeMap<usize, Rational>),
    /// wₙ = 1
    Ones,
    /// wₙ = 1/(n+1)!
    InverseFactorial,
}

impl Weights {
    pub fn weight(&self, n: usize) -> Rational {
        match self {
            Weights::Explicit(m) => m.get(&n).cloned().unwrap_or_else(Rational::zero),
            Weights::Ones => Rational::one(),
            Weights::InverseFactorial => from_biguint(&factorial(n + 1)).recip(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BKEquation {
    pub weights: Weights,
    pub order: usize,
}

/// The series f in Y = α B₊(f(Y)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoissyF {
    Exp,
    Geometric,
    Binomial(usize),
    Coeffs(Vec<Rational>),
}

impl FoissyF {
    pub fn coeffs(&self) -> CoeffSeq {
        match self {
            FoissyF::Exp => CoeffSeq::Exp,
            FoissyF::Geometric => CoeffSeq::Geometric,
            FoissyF::Binomial(n) => CoeffSeq::binomial(*n),
            FoissyF::Coeffs(v) => CoeffSeq::Finite(v.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoissyEquation {
    pub f: FoissyF,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equation {
    Bk(BKEquation),
    Foissy(FoissyEquation),
}

fn bad(msg: impl Into<String>) -> DseError {
    DseError::Equation(msg.into())
}

fn rational_field(v: &Value) -> Result<Rational, DseError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap_or(0).into())),
        _ => Err(bad(format!("expected a rational string, got {v}"))),
    }
}

impl Equation {
    pub fn from_json(text: &str) -> Result<Self, DseError> {
        let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer `order`"))? as usize;
        match v.get("type").and_then(Value::as_str) {
            Some("bk") => {
                let w = v.get("weights").ok_or_else(|| bad("missing `weights`"))?;
                let weights = match w {
                    Value::Array(items) => {
                        let mut m = BTreeMap::new();
                        for item in items {
                            let n = item
                                .get("n")
                                .and_then(Value::as_u64)
                                .filter(|&n| n >= 1)
                                .ok_or_else(|| bad("weight entries need an integer `n` >= 1"))?;
                            let w = rational_field(item.get("w").ok_or_else(|| bad("weight entry without `w`"))?)?;
                            if m.insert(n as usize, w).is_some() {
                                return Err(bad(format!("weight w{n} given twice")));
                            }
                        }
                        Weights::Explicit(m)
                    }
                    Value::Object(o) => match o.get("family").and_then(Value::as_str) {
                        Some("ones") => Weights::Ones,
                        Some("inverse-factorial") => Weights::InverseFactorial,
                        other => return Err(bad(format!("unknown weight family {other:?}"))),
                    },
                    _ => return Err(bad("`weights` must be a list or a family")),
                };
                Ok(Equation::Bk(BKEquation { weights, order }))
            }
            Some("foissy") => {
                let f = match v.get("f") {
                    Some(Value::String(s)) if s == "exp" => FoissyF::Exp,
                    Some(Value::String(s)) if s == "geometric" => FoissyF::Geometric,
                    Some(Value::Object(o)) if o.contains_key("binomial") => FoissyF::Binomial(
                        o["binomial"].as_u64().ok_or_else(|| bad("`binomial` needs an integer"))? as usize,
                    ),
                    Some(Value::Object(o)) if o.contains_key("coeffs") => {
                        let list = o["coeffs"].as_array().ok_or_else(|| bad("`coeffs` must be a list"))?;
                        FoissyF::Coeffs(list.iter().map(rational_field).collect::<Result<_, _>>()?)
                    }
                    other => return Err(bad(format!("unknown `f`: {other:?}"))),
                };
                Ok(Equation::Foissy(FoissyEquation { f, order }))
            }
            other => Err(bad(format!("unknown equation type {other:?}"))),
        }
    }

    pub fn to_json(&self) -> String {
        let v = match self {
            Equation::Bk(eq) => {
                let weights = match &eq.weights {
                    Weights::Explicit(m) => Value::Array(
                        m.iter().map(|(n, w)| json!({"n": n, "w": w.to_string()})).collect(),
                    ),
                    Weights::Ones => json!({"family": "ones"}),
                    Weights::InverseFactorial => json!({"family": "inverse-factorial"}),
                };
                json!({"type": "bk", "weights": weights, "order": eq.order})
            }
            Equation::Foissy(eq) => {
                let f = match &eq.f {
                    FoissyF::Exp => json!("exp"),
                    FoissyF::Geometric => json!("geometric"),
                    FoissyF::Binomial(n) => json!({"binomial": n}),
                    FoissyF::Coeffs(v) => json!({"coeffs": v.iter().map(|c| c.to_string()).collect::<Vec<_>>()}),
                };
                json!({"type": "foissy", "f": f, "order": eq.order})
            }
        };
        serde_json::to_string_pretty(&v).expect("plain data")
    }

    pub fn order(&self) -> usize {
        match self {
            Equation::Bk(e) => e.order,
            Equation::Foissy(e) => e.order,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        match &mut self {
            Equation::Bk(e) => e.order = order,
            Equation::Foissy(e) => e.order = order,
        }
        self
    }
}

pub const EQUATION_PRESETS: &[&str] = &[
    "binary-eq",
    "stable-planar-eq",
    "exp-stable-eq",
    "foissy-exp",
    "foissy-geometric",
    "foissy-binomial3",
];

/// Bundled equations, at order 4. Foissy presets also answer to their bare
/// names (`exp`, `geometric`, `binomial3`).
pub fn equation_preset(name: &str) -> Result<Equation, DseError> {
    let bk = |weights| Ok(Equation::Bk(BKEquation { weights, order: 4 }));
    let foissy = |f| Ok(Equation::Foissy(FoissyEquation { f, order: 4 }));
    match name {
        "binary-eq" => bk(Weights::Explicit([(1, Rational::one())].into_iter().collect())),
        "stable-planar-eq" => bk(Weights::Ones),
        "exp-stable-eq" => bk(Weights::InverseFactorial),
        "foissy-exp" | "exp" => foissy(FoissyF::Exp),
        "foissy-geometric" | "geometric" => foissy(FoissyF::Geometric),
        "foissy-binomial3" | "binomial3" => foissy(FoissyF::Binomial(3)),
        _ => Err(DseError::UnknownPreset(name.to_string())),
    }
}

/// The BK equation whose solution counts the P-trees of a bundled spec by
/// core, if there is one.
pub fn paired_equation(spec_preset: &str) -> Option<BKEquation> {
    let name = match spec_preset {
        "binary" | "binary-eq" => "binary-eq",
        "stable-planar" | "stable-planar-eq" => "stable-planar-eq",
        "exp-stable" | "exp-stable-eq" => "exp-stable-eq",
        _ => return None,
    };
    match equation_preset(name) {
        Ok(Equation::Bk(eq)) => Some(eq),
        _ => None,
    }
}

/// The functor spec paired with a bundled BK equation preset.
pub fn paired_spec(eq_preset: &str) -> Option<&'static str> {
    match eq_preset {
        "binary" | "binary-eq" => Some("binary"),
        "stable-planar" | "stable-planar-eq" => Some("stable-planar"),
        "exp-stable" | "exp-stable-eq" => Some("exp-stable"),
        _ => None,
    }
}

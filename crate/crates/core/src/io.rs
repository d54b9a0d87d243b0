//! JSON formats for linkages, configurations and classification results.

use serde_json::{json, Map, Value};

use crate::algebra::{DualQuaternion, Line, Rational, Scalar};
use crate::classify::{ClassificationResult, Family};
use crate::error::{Error, Result};
use crate::linkage::{ConfigParam, Linkage, SymConfiguration};
use crate::sampler::TracedPoint;

/// Environment variable that overrides the `scalar` field of linkage files.
pub const SCALAR_ENV: &str = "HEXALINK_SCALAR";

/// A linkage read from JSON in whichever scalar type it declares.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyLinkage {
    Rational(Linkage<Rational>),
    Float(Linkage<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarKind {
    Rational,
    Float,
}

impl ScalarKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "rational" => Ok(Self::Rational),
            "float" => Ok(Self::Float),
            other => Err(Error::Parse(format!("unknown scalar kind {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Rational => "rational",
            Self::Float => "float",
        }
    }
}

pub fn line_to_json<S: Scalar>(h: &Line<S>) -> Value {
    let v = |c: [S; 3]| Value::Array(c.iter().map(Scalar::to_json).collect());
    json!({ "primal": v(h.direction()), "dual": v(h.moment()) })
}

pub fn linkage_to_json<S: Scalar>(linkage: &Linkage<S>) -> Value {
    json!({
        "scalar": S::NAME,
        "joints": linkage.joints().iter().map(line_to_json).collect::<Vec<_>>(),
    })
}

fn vec3<S: Scalar>(v: &Value, what: &str) -> Result<[S; 3]> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| Error::Parse(format!("{what} must be an array of 3 numbers")))?;
    Ok([S::parse_json(&arr[0])?, S::parse_json(&arr[1])?, S::parse_json(&arr[2])?])
}

pub fn line_from_json<S: Scalar>(v: &Value) -> Result<Line<S>> {
    let primal = vec3::<S>(v.get("primal").ok_or_else(|| Error::Parse("joint without \"primal\"".into()))?, "primal")?;
    let dual = vec3::<S>(v.get("dual").ok_or_else(|| Error::Parse("joint without \"dual\"".into()))?, "dual")?;
    Line::new(DualQuaternion::pure(primal, dual))
}

pub fn linkage_from_json<S: Scalar>(v: &Value) -> Result<Linkage<S>> {
    let joints = v
        .get("joints")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 6)
        .ok_or_else(|| Error::Parse("\"joints\" must be an array of 6 lines".into()))?;
    let lines: Vec<Line<S>> = joints
        .iter()
        .enumerate()
        .map(|(i, j)| {
            line_from_json(j).map_err(|e| match e {
                Error::NotALine(m) => Error::NotALine(format!("joint {}: {m}", i + 1)),
                e => e,
            })
        })
        .collect::<Result<_>>()?;
    Linkage::new(lines.try_into().expect("six joints"))
}

/// Reads the `scalar` field, unless `override_kind` is given.
pub fn parse_linkage(text: &str, override_kind: Option<ScalarKind>) -> Result<AnyLinkage> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let kind = match override_kind {
        Some(k) => k,
        None => match v.get("scalar") {
            Some(Value::String(s)) => ScalarKind::parse(s)?,
            None => ScalarKind::Rational,
            Some(other) => return Err(Error::Parse(format!("\"scalar\" must be a string, got {other}"))),
        },
    };
    Ok(match kind {
        ScalarKind::Rational => AnyLinkage::Rational(linkage_from_json(&v)?),
        ScalarKind::Float => AnyLinkage::Float(linkage_from_json(&v)?),
    })
}

fn param_to_json<S: Scalar>(p: &ConfigParam<S>) -> Value {
    match p {
        ConfigParam::Finite(t) => t.to_json(),
        ConfigParam::Infinite => json!("inf"),
    }
}

fn param_from_json<S: Scalar>(v: &Value) -> Result<ConfigParam<S>> {
    match v {
        Value::String(s) if matches!(s.trim(), "inf" | "∞" | "infinity") => Ok(ConfigParam::Infinite),
        v => Ok(ConfigParam::Finite(S::parse_json(v)?)),
    }
}

pub fn sym_config_to_json<S: Scalar>(c: &SymConfiguration<S>) -> Value {
    Value::Array(c.t.iter().map(param_to_json).collect())
}

pub fn traced_points_to_json(points: &[TracedPoint], slice: usize) -> Value {
    json!({
        "scalar": "float",
        "slice": format!("t{}", slice + 1),
        "configurations": points
            .iter()
            .map(|p| json!({
                "t": sym_config_to_json(&p.config),
                "grid_index": p.grid_index,
                "residual": p.residual,
            }))
            .collect::<Vec<_>>(),
    })
}

/// Accepts `{"configurations": [...]}` or a bare array; each entry is
/// `[t1, t2, t3]` or `{"t": [t1, t2, t3]}`, with `"inf"` for `∞`.
pub fn parse_sym_configs<S: Scalar>(text: &str) -> Result<Vec<SymConfiguration<S>>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let list = match &v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("configurations")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("expected a \"configurations\" array".into()))?,
        _ => return Err(Error::Parse("expected a configuration list".into())),
    };
    list.iter()
        .map(|entry| {
            let t = entry.get("t").unwrap_or(entry);
            let arr = t
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse("a configuration is 3 parameters".into()))?;
            Ok(SymConfiguration {
                t: [param_from_json(&arr[0])?, param_from_json(&arr[1])?, param_from_json(&arr[2])?],
            })
        })
        .collect()
}

pub fn classification_to_json<S: Scalar>(c: &ClassificationResult<S>) -> Value {
    let data = match &c.family {
        Family::LineSymmetric { axis } => json!({ "axis": line_to_json(axis) }),
        Family::ParallelProperty { pairing, normalized } => json!({
            "pairs": pairing.pairs.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "shift": pairing.shift,
            "normalized": normalized,
        }),
        Family::CubicPolynomialType { pairs } => json!({
            "pairs": pairs.iter().map(|(a, b)| json!({ "a": a.to_json(), "b": b.to_json() })).collect::<Vec<_>>(),
        }),
        Family::Undetermined { reason } => json!({ "reason": reason }),
    };
    let mut out = Map::new();
    out.insert("rank".into(), json!(c.rank));
    out.insert("family".into(), json!(c.family.name()));
    out.insert("data".into(), data);
    out.insert("advisory".into(), json!(c.advisory));
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::example_one;

    #[test]
    fn linkage_round_trip_is_exact() {
        let text = linkage_to_json(&example_one()).to_string();
        assert!(text.contains("\"-7/11\""));
        assert_eq!(parse_linkage(&text, None).unwrap(), AnyLinkage::Rational(example_one()));
        match parse_linkage(&text, Some(ScalarKind::Float)).unwrap() {
            AnyLinkage::Float(l) => assert_eq!(l, example_one().to_f64()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_joint_is_reported_with_index() {
        let mut v = linkage_to_json(&example_one());
        v["joints"][2]["primal"] = json!([1, 1, 0]);
        let err = parse_linkage(&v.to_string(), None).unwrap_err();
        assert!(matches!(&err, Error::NotALine(m) if m.starts_with("joint 3")), "{err}");
        assert!(matches!(parse_linkage("{", None), Err(Error::Parse(_))));
    }

    #[test]
    fn configs_with_infinity() {
        let cs = parse_sym_configs::<Rational>(r#"[["5/4", 1, 1], {"t": ["inf", "inf", "inf"]}]"#).unwrap();
        assert_eq!(cs[1], SymConfiguration::identity());
        assert_eq!(sym_config_to_json(&cs[0]), json!(["5/4", "1", "1"]));
    }
}

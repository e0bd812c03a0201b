//! JSON file formats: instances, optimum sidecars and path certificates.
//!
//! Weights are written as JSON integers when integral and as `"p/q"`
//! strings otherwise; both forms are accepted on input. Set indices in
//! certificates are zero-based, elements are one-based.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::analysis::{KnownOptimum, PathCertificate, PathStep};
use crate::error::{Error, Result};
use crate::instance::SetCoverInstance;
use crate::solution::Solution;
use crate::weight::{format_rational, parse_rational, Rational};

pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn weight_json(r: &Rational) -> String {
    match (r.is_integer(), r.numer().to_i64()) {
        (true, Some(v)) => v.to_string(),
        _ => format!("\"{}\"", format_rational(r)),
    }
}

fn weight_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(Error::Parse(format!("weight {num} is not an integer or \"p/q\" string"))),
        },
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("bad weight {other}"))),
    }
}

#[derive(Deserialize)]
struct RawSet {
    elements: Vec<usize>,
    weight: Value,
}

#[derive(Deserialize)]
struct RawInstance {
    n: usize,
    #[serde(default)]
    name: String,
    sets: Vec<RawSet>,
}

fn sets_json(out: &mut String, sets: impl Iterator<Item = (Vec<usize>, Rational)>) {
    out.push('[');
    let mut first = true;
    for (elements, weight) in sets {
        out.push_str(if first { "\n" } else { ",\n" });
        first = false;
        let elems: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
        let _ = write!(
            out,
            "    {{\"elements\": [{}], \"weight\": {}}}",
            elems.join(", "),
            weight_json(&weight)
        );
    }
    out.push_str(if first { "]" } else { "\n  ]" });
}

/// Canonical text: sets in collection order, elements ascending, weights
/// in lowest terms.
pub fn instance_to_json(inst: &SetCoverInstance<Rational>) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\n  \"n\": {},\n  \"name\": {},\n  \"sets\": ",
        inst.n(),
        serde_json::to_string(inst.name()).expect("strings serialize")
    );
    sets_json(
        &mut out,
        inst.sets().iter().map(|s| (s.elements.clone(), s.weight.clone())),
    );
    out.push_str("\n}\n");
    out
}

pub fn instance_from_json(text: &str) -> Result<SetCoverInstance<Rational>> {
    let raw: RawInstance = serde_json::from_str(text)?;
    let sets = raw
        .sets
        .into_iter()
        .map(|s| Ok((s.elements, weight_from_json(&s.weight)?)))
        .collect::<Result<Vec<_>>>()?;
    SetCoverInstance::new(raw.n, raw.name, sets)
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<SetCoverInstance<Rational>> {
    instance_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, inst: &SetCoverInstance<Rational>) -> Result<()> {
    std::fs::write(path, instance_to_json(inst))?;
    Ok(())
}

/// Optimum sidecar: the optimal value and, when known, the disjoint
/// optimal sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimumFile {
    pub value: Rational,
    pub known: Option<KnownOptimum>,
}

#[derive(Deserialize)]
struct RawOptimum {
    value: Value,
    #[serde(default)]
    sets: Vec<RawSet>,
}

pub fn optimum_to_json(value: &Rational, known: Option<&KnownOptimum>) -> String {
    let mut out = format!("{{\n  \"value\": {},\n  \"sets\": ", weight_json(value));
    let sets: Vec<(Vec<usize>, Rational)> = known
        .map(|k| k.sets().iter().cloned().zip(k.weights().iter().cloned()).collect())
        .unwrap_or_default();
    sets_json(&mut out, sets.into_iter());
    out.push_str("\n}\n");
    out
}

pub fn optimum_from_json(text: &str, n: usize) -> Result<OptimumFile> {
    let raw: RawOptimum = serde_json::from_str(text)?;
    let value = weight_from_json(&raw.value)?;
    let known = if raw.sets.is_empty() {
        None
    } else {
        let columns = raw
            .sets
            .into_iter()
            .map(|s| Ok((s.elements, weight_from_json(&s.weight)?)))
            .collect::<Result<Vec<_>>>()?;
        let known = KnownOptimum::new(n, columns)?;
        if *known.value() != value {
            return Err(Error::Parse("optimum value differs from the sum of its sets".into()));
        }
        Some(known)
    };
    Ok(OptimumFile { value, known })
}

/// `<instance path>.opt`
pub fn sidecar_path(instance: &Path) -> std::path::PathBuf {
    let mut s = instance.as_os_str().to_owned();
    s.push(".opt");
    s.into()
}

#[derive(Serialize, Deserialize)]
struct RawStep {
    plus: Vec<usize>,
    minus: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawCertificate {
    gap: usize,
    opt_value: Value,
    ratios: Vec<Value>,
    steps: Vec<RawStep>,
}

pub fn certificate_to_json(cert: &PathCertificate) -> String {
    let raw = RawCertificate {
        gap: cert.gap,
        opt_value: Value::String(format_rational(&cert.opt_value)),
        ratios: cert.ratios.iter().map(|r| Value::String(format_rational(r))).collect(),
        steps: cert
            .steps
            .iter()
            .map(|s| RawStep {
                plus: s.y_plus.ones().collect(),
                minus: s.y_minus.ones().collect(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("certificates serialize");
    s.push('\n');
    s
}

pub fn certificate_from_json(text: &str, m: usize) -> Result<PathCertificate> {
    let raw: RawCertificate = serde_json::from_str(text)?;
    let indices = |v: Vec<usize>| -> Result<Solution> {
        if let Some(&i) = v.iter().find(|&&i| i >= m) {
            return Err(Error::Parse(format!("set index {i} out of range for m = {m}")));
        }
        Ok(Solution::from_indices(m, v))
    };
    Ok(PathCertificate {
        gap: raw.gap,
        opt_value: weight_from_json(&raw.opt_value)?,
        ratios: raw.ratios.iter().map(weight_from_json).collect::<Result<_>>()?,
        steps: raw
            .steps
            .into_iter()
            .map(|s| {
                Ok(PathStep {
                    y_plus: indices(s.plus)?,
                    y_minus: indices(s.minus)?,
                })
            })
            .collect::<Result<_>>()?,
    })
}

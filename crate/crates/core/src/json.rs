//! JSON encodings shared by the CLI and fuzz reports.
//!
//! Rationals are `"p/q"` strings, Gaussian rationals `{"re": "p/q", "im":
//! "p/q"}`, binary64 complex numbers `{"re": x, "im": y}`. Readers also accept
//! bare integers and decimal literals for rationals, and a bare string for a
//! real Gaussian rational. HB polynomials are stored as `{"p", "q"}` and
//! re-certified on load.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::construct::{CouplingMatrix, ExpSum, ExpTerm, Instance, RealRootedG};
use crate::error::{Error, Result};
use crate::hb::{hb_from_pair, HBPoly};
use crate::numeric::{format_rational, parse_rational, rational_to_f64, ComplexF, GaussianRational, Rational};
use crate::poly::{CPoly, ExactPoly, FloatPoly, RPoly};
use crate::roots::ContourBox;

#[derive(Serialize, Deserialize)]
struct ComplexObj {
    re: f64,
    im: f64,
}

/// `#[serde(with)]` adapter writing a `ComplexF` as `{"re", "im"}`.
pub mod complex_obj {
    use super::*;

    pub fn serialize<S: Serializer>(z: &ComplexF, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexObj { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ComplexF, D::Error> {
        let c = ComplexObj::deserialize(d)?;
        Ok(ComplexF::new(c.re, c.im))
    }
}

/// As [`complex_obj`] for `Option<ComplexF>`.
pub mod complex_opt {
    use super::*;

    pub fn serialize<S: Serializer>(z: &Option<ComplexF>, s: S) -> std::result::Result<S::Ok, S::Error> {
        z.map(|z| ComplexObj { re: z.re, im: z.im }).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<ComplexF>, D::Error> {
        Ok(Option::<ComplexObj>::deserialize(d)?.map(|c| ComplexF::new(c.re, c.im)))
    }
}

/// As [`complex_obj`] for `Vec<ComplexF>`.
pub mod complex_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[ComplexF], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|z| ComplexObj { re: z.re, im: z.im }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<ComplexF>, D::Error> {
        Ok(Vec::<ComplexObj>::deserialize(d)?.into_iter().map(|c| ComplexF::new(c.re, c.im)).collect())
    }
}

fn parse_err(what: &str, v: &Value) -> Error {
    let mut shown = v.to_string();
    if shown.len() > 80 {
        shown.truncate(77);
        shown.push_str("...");
    }
    Error::Parse(format!("expected {what}, got {shown}"))
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(what, v))
}

pub fn rational_to_json(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(parse_err("rational", v)),
    }
}

pub fn gaussian_to_json(x: &GaussianRational) -> Value {
    json!({ "re": format_rational(&x.re), "im": format_rational(&x.im) })
}

pub fn gaussian_from_json(v: &Value) -> Result<GaussianRational> {
    match v {
        Value::Object(_) => {
            Ok(GaussianRational::new(rational_from_json(field(v, "re")?)?, rational_from_json(field(v, "im")?)?))
        }
        _ => Ok(GaussianRational::from_real(rational_from_json(v)?)),
    }
}

fn float_from_json(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| parse_err("number", v)),
        Value::String(_) => rational_to_f64(&rational_from_json(v)?),
        _ => Err(parse_err("number", v)),
    }
}

fn complex_from_json(v: &Value) -> Result<ComplexF> {
    match v {
        Value::Object(_) => Ok(ComplexF::new(float_from_json(field(v, "re")?)?, float_from_json(field(v, "im")?)?)),
        _ => Ok(ComplexF::new(float_from_json(v)?, 0.0)),
    }
}

pub fn rpoly_to_json(p: &RPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn rpoly_from_json(v: &Value) -> Result<RPoly> {
    let coeffs = array(v, "coefficient array")?.iter().map(rational_from_json).collect::<Result<_>>()?;
    Ok(RPoly::new(coeffs))
}

pub fn exact_poly_to_json(p: &ExactPoly) -> Value {
    json!({ "backend": "exact", "coeffs": p.coeffs().iter().map(gaussian_to_json).collect::<Vec<_>>() })
}

pub fn float_poly_to_json(p: &FloatPoly) -> Value {
    let coeffs: Vec<Value> = p.coeffs().iter().map(|c| json!({ "re": c.re, "im": c.im })).collect();
    json!({ "backend": "float", "coeffs": coeffs })
}

pub fn cpoly_to_json(p: &CPoly) -> Value {
    match p {
        CPoly::Exact(e) => exact_poly_to_json(e),
        CPoly::Float(f) => float_poly_to_json(f),
    }
}

/// Reads `{"backend", "coeffs"}`; a bare coefficient array is taken as exact.
pub fn cpoly_from_json(v: &Value) -> Result<CPoly> {
    let (backend, coeffs) = match v {
        Value::Array(_) => ("exact", v),
        _ => {
            let b = field(v, "backend")?;
            (b.as_str().ok_or_else(|| parse_err("backend string", b))?, field(v, "coeffs")?)
        }
    };
    let coeffs = array(coeffs, "coefficient array")?;
    match backend {
        "exact" => Ok(CPoly::Exact(ExactPoly::new(coeffs.iter().map(gaussian_from_json).collect::<Result<_>>()?))),
        "float" => Ok(CPoly::Float(FloatPoly::new(coeffs.iter().map(complex_from_json).collect::<Result<_>>()?))),
        other => Err(Error::Parse(format!("unknown backend {other:?}"))),
    }
}

pub fn hb_to_json(w: &HBPoly) -> Value {
    json!({ "p": rpoly_to_json(w.p()), "q": rpoly_to_json(w.q()) })
}

pub fn hb_from_json(v: &Value) -> Result<HBPoly> {
    hb_from_pair(&rpoly_from_json(field(v, "p")?)?, &rpoly_from_json(field(v, "q")?)?)
}

pub fn g_to_json(g: &RealRootedG) -> Value {
    json!({
        "c": rational_to_json(g.c()),
        "q": g.q(),
        "alpha": rational_to_json(g.alpha()),
        "roots": g.roots().iter().map(rational_to_json).collect::<Vec<_>>(),
    })
}

pub fn g_from_json(v: &Value) -> Result<RealRootedG> {
    let q = match v.get("q") {
        None => 0,
        Some(q) => q.as_u64().and_then(|q| u32::try_from(q).ok()).ok_or_else(|| parse_err("small nonnegative q", q))?,
    };
    let alpha = match v.get("alpha") {
        None => Rational::default(),
        Some(a) => rational_from_json(a)?,
    };
    let roots = match v.get("roots") {
        None => vec![],
        Some(r) => array(r, "root array")?.iter().map(rational_from_json).collect::<Result<_>>()?,
    };
    RealRootedG::new(rational_from_json(field(v, "c")?)?, q, alpha, roots)
}

pub fn instance_to_json(inst: &Instance) -> Value {
    json!({
        "G": g_to_json(inst.g()),
        "a": inst.a().iter().map(rational_to_json).collect::<Vec<_>>(),
        "omegas": inst.omegas().iter().map(hb_to_json).collect::<Vec<_>>(),
    })
}

pub fn instance_from_json(v: &Value) -> Result<Instance> {
    let g = g_from_json(field(v, "G")?)?;
    let a = array(field(v, "a")?, "a list")?.iter().map(rational_from_json).collect::<Result<_>>()?;
    let omegas = array(field(v, "omegas")?, "omega list")?.iter().map(hb_from_json).collect::<Result<_>>()?;
    Instance::new(g, a, omegas)
}

pub fn exp_sum_to_json(e: &ExpSum) -> Value {
    let terms: Vec<Value> =
        e.terms().iter().map(|t| json!({ "re": t.coeff.re, "im": t.coeff.im, "freq": t.freq })).collect();
    json!({ "terms": terms })
}

pub fn exp_sum_from_json(v: &Value) -> Result<ExpSum> {
    let terms = array(field(v, "terms")?, "term list")?
        .iter()
        .map(|t| {
            Ok(ExpTerm {
                coeff: ComplexF::new(float_from_json(field(t, "re")?)?, float_from_json(field(t, "im")?)?),
                freq: float_from_json(field(t, "freq")?)?,
            })
        })
        .collect::<Result<_>>()?;
    ExpSum::new(terms)
}

/// `{"A": [[...], ...]}`; a bare nested array is also accepted.
pub fn matrix_from_json(v: &Value) -> Result<CouplingMatrix> {
    let rows = match v {
        Value::Array(_) => v,
        _ => field(v, "A")?,
    };
    let entries = array(rows, "matrix rows")?
        .iter()
        .map(|row| array(row, "matrix row")?.iter().map(rational_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    CouplingMatrix::new(entries)
}

pub fn matrix_to_json(m: &CouplingMatrix) -> Value {
    let rows: Vec<Value> = m.entries().iter().map(|r| Value::Array(r.iter().map(rational_to_json).collect())).collect();
    json!({ "A": rows })
}

/// One `(A, B, C)` recurrence step.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceStep {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// `{"p0": RPoly, "p1": RPoly, "steps": [{"A", "B", "C"}, ...]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceSpec {
    pub p0: RPoly,
    pub p1: RPoly,
    pub steps: Vec<RecurrenceStep>,
}

pub fn recurrence_from_json(v: &Value) -> Result<RecurrenceSpec> {
    let steps = array(field(v, "steps")?, "step list")?
        .iter()
        .map(|s| {
            Ok(RecurrenceStep {
                a: rational_from_json(field(s, "A")?)?,
                b: rational_from_json(field(s, "B")?)?,
                c: rational_from_json(field(s, "C")?)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(RecurrenceSpec { p0: rpoly_from_json(field(v, "p0")?)?, p1: rpoly_from_json(field(v, "p1")?)?, steps })
}

pub fn recurrence_to_json(r: &RecurrenceSpec) -> Value {
    let steps: Vec<Value> = r
        .steps
        .iter()
        .map(|s| json!({ "A": rational_to_json(&s.a), "B": rational_to_json(&s.b), "C": rational_to_json(&s.c) }))
        .collect();
    json!({ "p0": rpoly_to_json(&r.p0), "p1": rpoly_to_json(&r.p1), "steps": steps })
}

/// Float-mode exponential-sum instance with the boxes to count zeros in.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpSumInstance {
    pub g: RealRootedG,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub upper: ContourBox,
    pub lower: ContourBox,
    pub axis: Option<ContourBox>,
}

pub const DEFAULT_UPPER_BOX: ContourBox = ContourBox { re_lo: -10.0, re_hi: 10.0, im_lo: 0.1, im_hi: 3.0 };

fn box_from_json(v: &Value) -> Result<ContourBox> {
    let get = |k| float_from_json(field(v, k)?);
    ContourBox::new(get("re_lo")?, get("re_hi")?, get("im_lo")?, get("im_hi")?)
}

fn box_to_json(b: &ContourBox) -> Value {
    json!({ "re_lo": b.re_lo, "re_hi": b.re_hi, "im_lo": b.im_lo, "im_hi": b.im_hi })
}

/// `{"G", "a", "b", "boxes": {"upper", "lower", "axis"}}`. `boxes` and each
/// entry are optional; `lower` defaults to the mirror of `upper`.
pub fn exp_sum_instance_from_json(v: &Value) -> Result<ExpSumInstance> {
    let floats = |k| -> Result<Vec<f64>> { array(field(v, k)?, "number list")?.iter().map(float_from_json).collect() };
    let boxes = v.get("boxes").cloned().unwrap_or_else(|| Value::Object(Map::new()));
    let upper = match boxes.get("upper") {
        Some(b) => box_from_json(b)?,
        None => DEFAULT_UPPER_BOX,
    };
    let lower = match boxes.get("lower") {
        Some(b) => box_from_json(b)?,
        None => upper.mirrored(),
    };
    let axis = boxes.get("axis").map(box_from_json).transpose()?;
    Ok(ExpSumInstance { g: g_from_json(field(v, "G")?)?, a: floats("a")?, b: floats("b")?, upper, lower, axis })
}

pub fn exp_sum_instance_to_json(e: &ExpSumInstance) -> Value {
    let mut boxes = json!({ "upper": box_to_json(&e.upper), "lower": box_to_json(&e.lower) });
    if let Some(axis) = &e.axis {
        boxes["axis"] = box_to_json(axis);
    }
    json!({ "G": g_to_json(&e.g), "a": e.a, "b": e.b, "boxes": boxes })
}

/// Compact JSON with sorted keys.
pub fn canonical(v: &Value) -> String {
    // serde_json's default map is a BTreeMap, so keys come out sorted.
    serde_json::to_string(v).expect("Value serialization is infallible")
}

/// SHA-256 of the canonical form, hex encoded.
pub fn digest(v: &Value) -> String {
    hex::encode(Sha256::digest(canonical(v).as_bytes()))
}

//! JSON forms of elements, matrices and certificates, and the replay that
//! re-verifies a serialized certificate from its text alone.
//!
//! Elements are always strings in the ring's literal grammar. Every
//! document carries `command` and `ring`, which is all [`replay`] needs.

use serde_json::{json, Map, Value};

use crate::certificate::{CutPoint, ReductionCertificate, Transform};
use crate::edr::PQWitness;
use crate::error::{Error, Result};
use crate::lab::{Counterexample, RingClassification, TheoremReport};
use crate::matrix::Matrix;
use crate::neat::{is_neat, CleanDecomposition, NeatWitness, Prop5Forward};
use crate::ring::{bezout_certificate, ideal_generator, normalize_associate, BezoutCertificate, Element, Ring};
use crate::rings::{parse_element, parse_ring};
use crate::stable_range::affine_unit_witness;
use crate::toeplitz::{RowReduction, ToeplitzDiagonalization, ToeplitzMatrix};
use crate::SearchBounds;

pub fn element(e: &Element) -> Value {
    Value::String(e.to_string())
}

pub fn elements(es: &[Element]) -> Value {
    Value::Array(es.iter().map(element).collect())
}

pub fn rows(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| elements(r)).collect())
}

/// `{"ring": ..., "rows": [[...], ...]}`.
pub fn matrix(m: &Matrix) -> Value {
    json!({ "ring": m.ring().to_string(), "rows": rows(m) })
}

fn transform(t: &Transform) -> Value {
    json!({
        "label": t.label,
        "matrix": rows(&t.matrix),
        "inverse": rows(&t.inverse),
        "toeplitz": t.is_toeplitz(),
    })
}

pub fn certificate(c: &ReductionCertificate) -> Value {
    let cut = c.cut_point.as_ref().map_or(Value::Null, |cp| {
        json!({ "peeled": cp.peeled, "left": cp.left, "right": cp.right, "matrix": rows(&cp.matrix) })
    });
    json!({
        "input": rows(&c.input),
        "left": c.left.iter().map(transform).collect::<Vec<_>>(),
        "right": c.right.iter().map(transform).collect::<Vec<_>>(),
        "result": rows(&c.result),
        "cut_point": cut,
    })
}

/// Recursively orders object keys, whatever map type serde_json was built
/// with.
pub fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().map(|(k, v)| (k, sorted(v))).collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().collect::<Map<String, Value>>())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Starts a document for `command` over `ring`.
pub fn document(command: &str, ring: Ring) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("ring".into(), json!(ring.to_string()));
    m
}

pub fn put(doc: &mut Map<String, Value>, fields: Vec<(&str, Value)>) {
    for (k, v) in fields {
        doc.insert(k.to_string(), v);
    }
}

pub fn bezout(doc: &mut Map<String, Value>, c: &BezoutCertificate) {
    put(doc, vec![
        ("a", element(&c.a)),
        ("b", element(&c.b)),
        ("d", element(&c.d)),
        ("p", element(&c.p)),
        ("q", element(&c.q)),
        ("a0", element(&c.a0)),
        ("b0", element(&c.b0)),
    ]);
}

pub fn toeplitz_diag(doc: &mut Map<String, Value>, d: &ToeplitzDiagonalization) {
    put(doc, vec![
        ("certificate", certificate(&d.certificate)),
        ("e1", element(&d.e1)),
        ("e2", element(&d.e2)),
        ("p", element(&d.p)),
        ("q", element(&d.q)),
        ("r", element(&d.r)),
        ("s", element(&d.s)),
        ("p_total", rows(&d.p_total)),
        ("q_total", rows(&d.q_total)),
        ("p_total_is_toeplitz", json!(d.p_total_is_toeplitz)),
        ("q_total_is_toeplitz", json!(d.q_total_is_toeplitz)),
    ]);
}

pub fn clean(doc: &mut Map<String, Value>, c: &CleanDecomposition) {
    let s = |k: u64| json!(k.to_string());
    put(doc, vec![
        ("r", element(&c.r)),
        ("s", element(&c.s)),
        ("a", element(&c.a)),
        ("modulus", element(&c.modulus)),
        ("quotient", json!(format!("Z/{}", c.quotient_order))),
        ("proof_idempotent", s(c.proof_idempotent)),
        ("x", s(c.x)),
        ("idempotent", s(c.idempotent)),
        ("unit", s(c.unit)),
    ]);
}

fn counterexamples(cs: &[Counterexample]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| json!({ "property": c.property, "instance": c.instance, "reason": c.reason }))
            .collect(),
    )
}

pub fn classification(doc: &mut Map<String, Value>, c: &RingClassification) {
    put(doc, vec![
        ("sr1", json!(c.sr1)),
        ("ssr1", json!(c.ssr1)),
        ("toeplitz_ring", json!(c.toeplitz_ring)),
        ("neat_range_1", json!(c.neat_range_1)),
        ("witness_counterexamples", counterexamples(&c.witness_counterexamples)),
    ]);
}

pub fn report(doc: &mut Map<String, Value>, r: &TheoremReport) {
    put(doc, vec![
        ("theorem", json!(r.theorem.id())),
        ("instances_checked", json!(r.instances_checked)),
        ("failures", counterexamples(&r.failures)),
        ("diagnostics", counterexamples(&r.diagnostics)),
        ("passed", json!(r.passed())),
    ]);
}

// ---- parsing back ----

fn bad(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn string<'a>(doc: &'a Value, key: &str) -> Result<&'a str> {
    field(doc, key)?.as_str().ok_or_else(|| bad(format!("field {key:?} is not a string")))
}

fn boolean(doc: &Value, key: &str) -> Result<bool> {
    field(doc, key)?.as_bool().ok_or_else(|| bad(format!("field {key:?} is not a boolean")))
}

pub fn ring_of(doc: &Value) -> Result<Ring> {
    parse_ring(string(doc, "ring")?)
}

fn elem(ring: Ring, doc: &Value, key: &str) -> Result<Element> {
    parse_element(ring, string(doc, key)?)
}

fn elem_value(ring: Ring, v: &Value) -> Result<Element> {
    match v {
        Value::String(s) => parse_element(ring, s),
        Value::Number(n) => parse_element(ring, &n.to_string()),
        _ => Err(bad(format!("{v} is not an element literal"))),
    }
}

/// Element list from strings (or plain integers).
pub fn parse_elements(ring: Ring, v: &Value) -> Result<Vec<Element>> {
    v.as_array()
        .ok_or_else(|| bad("expected an array of elements"))?
        .iter()
        .map(|x| elem_value(ring, x))
        .collect()
}

/// Matrix from a list of rows.
pub fn parse_rows(ring: Ring, v: &Value) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
    let rows = rows.iter().map(|r| parse_elements(ring, r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(ring, rows)
}

fn parse_transform(ring: Ring, v: &Value) -> Result<Transform> {
    Ok(Transform::new(
        string(v, "label")?,
        parse_rows(ring, field(v, "matrix")?)?,
        parse_rows(ring, field(v, "inverse")?)?,
    ))
}

pub fn parse_certificate(ring: Ring, v: &Value) -> Result<ReductionCertificate> {
    let list = |key: &str| -> Result<Vec<Transform>> {
        field(v, key)?
            .as_array()
            .ok_or_else(|| bad(format!("{key} is not a list")))?
            .iter()
            .map(|t| parse_transform(ring, t))
            .collect()
    };
    let cut_point = match field(v, "cut_point")? {
        Value::Null => None,
        cp => {
            let count = |k: &str| -> Result<usize> {
                field(cp, k)?.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("cut_point.{k}")))
            };
            Some(CutPoint {
                peeled: count("peeled")?,
                left: count("left")?,
                right: count("right")?,
                matrix: parse_rows(ring, field(cp, "matrix")?)?,
            })
        }
    };
    Ok(ReductionCertificate {
        input: parse_rows(ring, field(v, "input")?)?,
        left: list("left")?,
        right: list("right")?,
        result: parse_rows(ring, field(v, "result")?)?,
        cut_point,
    })
}

fn check(ok: bool, what: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::CheckFailed(what.into()))
    }
}

/// Re-verifies a document produced by the command line from its text.
pub fn replay(doc: &Value) -> Result<()> {
    let command = string(doc, "command")?;
    let ring = ring_of(doc)?;
    let e = |k: &str| elem(ring, doc, k);
    match command {
        "bezout" => BezoutCertificate {
            a: e("a")?,
            b: e("b")?,
            d: e("d")?,
            p: e("p")?,
            q: e("q")?,
            a0: e("a0")?,
            b0: e("b0")?,
        }
        .verify(),
        "sr1" | "ssr1" => {
            let (a, b) = (e("a")?, e("b")?);
            let c0 = if command == "sr1" { a.clone() } else { &a * &a };
            check(bezout_certificate(&a, &b)?.is_unimodular(), "input pair is not coprime")?;
            match field(doc, "witness")? {
                Value::Null => {
                    check(!boolean(doc, "found")?, "found without a witness")?;
                    if boolean(doc, "exhaustive")? {
                        let again = affine_unit_witness(&c0, &b, &SearchBounds::default());
                        check(again.witness.is_none(), "a witness exists after all")?;
                    }
                    Ok(())
                }
                w => {
                    let w = elem_value(ring, w)?;
                    check((&c0 + &(&b * &w)).is_unit(), format!("witness {w} does not give a unit"))
                }
            }
        }
        "sr2" => {
            let xs = parse_elements(ring, field(doc, "elements")?)?;
            let bs = parse_elements(ring, field(doc, "shifts")?)?;
            check(xs.len() >= 3 && bs.len() == xs.len() - 1, "wrong number of shifts")?;
            let last = xs.last().unwrap();
            let shifted: Vec<Element> = xs.iter().zip(&bs).map(|(a, b)| a + &(last * b)).collect();
            check(ideal_generator(&shifted)?.is_unit(), "shifted row is not unimodular")
        }
        "toeplitz-reduce" => {
            let t = parse_rows(ring, field(doc, "matrix")?)?;
            let matrix = ToeplitzMatrix::from_matrix(&t).ok_or_else(|| Error::CheckFailed("T is not Toeplitz".into()))?;
            RowReduction { a: e("a")?, b: e("b")?, matrix, d: e("d")?, witness: e("witness")?, unit: e("unit")? }.verify()
        }
        "toeplitz-complete" => {
            let t = parse_rows(ring, field(doc, "matrix")?)?;
            let tm = ToeplitzMatrix::from_matrix(&t).ok_or_else(|| Error::CheckFailed("T is not Toeplitz".into()))?;
            check(tm.a == e("a")? && tm.b == e("b")?, "first row is not (a, b)")?;
            check(tm.det().is_unit(), "determinant is not a unit")
        }
        "toeplitz-snf" => {
            let cert = parse_certificate(ring, field(doc, "certificate")?)?;
            let p_total = parse_rows(ring, field(doc, "p_total")?)?;
            let q_total = parse_rows(ring, field(doc, "q_total")?)?;
            ToeplitzDiagonalization {
                e1: e("e1")?,
                e2: e("e2")?,
                p: e("p")?,
                q: e("q")?,
                r: e("r")?,
                s: e("s")?,
                p_total_is_toeplitz: p_total.is_toeplitz(),
                q_total_is_toeplitz: q_total.is_toeplitz(),
                p_total,
                q_total,
                certificate: cert,
            }
            .verify()?;
            check(
                boolean(doc, "p_total_is_toeplitz")? == parse_rows(ring, field(doc, "p_total")?)?.is_toeplitz()
                    && boolean(doc, "q_total_is_toeplitz")? == parse_rows(ring, field(doc, "q_total")?)?.is_toeplitz(),
                "composed Toeplitz flags are wrong",
            )
        }
        "snf" => {
            let cert = parse_certificate(ring, field(doc, "certificate")?)?;
            cert.verify()?;
            let diag = parse_elements(ring, field(doc, "diagonal")?)?;
            check(cert.result.is_diagonal() && cert.result.diagonal() == diag, "result is not the stated diagonal")?;
            check(diag.iter().all(|d| normalize_associate(d).0 == *d), "diagonal entries are not canonical")?;
            for w in diag.windows(2) {
                if !w[1].is_zero() {
                    check(crate::ring::exact_divide(&w[1], &w[0]).is_ok(), format!("{} does not divide {}", w[0], w[1]))?;
                }
            }
            Ok(())
        }
        "find-pq" | "prop5-backward" => {
            PQWitness { a: e("a")?, b: e("b")?, c: e("c")?, p: e("p")?, q: e("q")? }.verify()
        }
        "neat" => NeatWitness { a: e("a")?, b: e("b")?, c: e("c")?, r: e("r")?, s: e("s")? }.verify(),
        "neat-shift" => {
            let shifted = &e("a")? + &(&e("b")? * &e("t")?);
            check(shifted == e("shifted")?, "shifted element does not match")?;
            check(is_neat(&shifted), format!("{shifted} is not neat"))
        }
        "clean" => {
            let num = |k: &str| -> Result<u64> { string(doc, k)?.parse().map_err(|_| bad(format!("{k} is not a residue"))) };
            let order: u64 = string(doc, "quotient")?
                .strip_prefix("Z/")
                .and_then(|m| m.parse().ok())
                .ok_or_else(|| bad("bad quotient"))?;
            let (r, s) = (e("r")?, e("s")?);
            check(&r * &s == e("modulus")?, "modulus is not r*s")?;
            CleanDecomposition {
                r,
                s,
                a: e("a")?,
                modulus: e("modulus")?,
                quotient_order: order,
                proof_idempotent: num("proof_idempotent")?,
                x: num("x")?,
                idempotent: num("idempotent")?,
                unit: num("unit")?,
            }
            .verify()
        }
        "prop5-forward" => {
            let fw = Prop5Forward {
                a: e("a")?,
                b: e("b")?,
                c: e("c")?,
                lambda: e("lambda")?,
                u: e("u")?,
                v: e("v")?,
                uv_coprime: boolean(doc, "uv_coprime")?,
            };
            fw.verify()
        }
        "classify" => {
            let cs = field(doc, "witness_counterexamples")?.as_array().ok_or_else(|| bad("counterexamples"))?;
            for flag in ["sr1", "ssr1", "toeplitz_ring", "neat_range_1"] {
                let listed = cs.iter().any(|c| c.get("property").and_then(Value::as_str) == Some(flag));
                check(boolean(doc, flag)? != listed, format!("flag {flag} disagrees with the counterexample list"))?;
            }
            Ok(())
        }
        "verify" => {
            let failures = field(doc, "failures")?.as_array().ok_or_else(|| bad("failures"))?;
            check(boolean(doc, "passed")? == failures.is_empty(), "pass flag disagrees with the failure list")
        }
        other => Err(bad(format!("unknown command {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let v = sorted(json!({ "b": 1, "a": { "z": 0, "y": [ { "d": 1, "c": 2 } ] } }));
        assert_eq!(v.to_string(), r#"{"a":{"y":[{"c":2,"d":1}],"z":0},"b":1}"#);
    }

    #[test]
    fn bezout_round_trip() {
        let z = Ring::Integers;
        let c = bezout_certificate(&z.from_i64(12), &z.from_i64(18)).unwrap();
        let mut doc = document("bezout", z);
        bezout(&mut doc, &c);
        let text = Value::Object(doc).to_string();
        let back: Value = serde_json::from_str(&text).unwrap();
        replay(&back).unwrap();
        let tampered = text.replace("\"d\":\"6\"", "\"d\":\"3\"");
        let back: Value = serde_json::from_str(&tampered).unwrap();
        assert_eq!(replay(&back).unwrap_err().code(), "CheckFailed");
    }

    #[test]
    fn certificate_round_trip() {
        let z = Ring::Integers;
        let m = parse_rows(z, &json!([["2", "4", "4"], ["-6", 6, "12"], ["10", "-4", "-16"]])).unwrap();
        let cert = crate::edr::smith_nxm(&m, &SearchBounds::default()).unwrap();
        let back = parse_certificate(z, &certificate(&cert)).unwrap();
        assert_eq!(back, cert);
        back.verify().unwrap();
    }
}

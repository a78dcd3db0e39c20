//! JSON file formats for coalgebras, comodules, and dual-element lists.
//!
//! Coalgebra: { "field": "Q" | "Fp:<p>", "basis": [labels...],
//!   "delta": { label: [[label, label, num, den], ...] },
//!   "counit": { label: [num, den] } } — absent entries are zero; over
//! F_p scalars are single integers instead of [num, den] pairs.
//!
//! Comodule: { "side": "left"|"right", "coalgebra": <path or inline>,
//!   "basis": [labels...], "rho": { label: [[m-label, c-label, num, den], ...] } }.
//!
//! Dual elements: { "elements": [ { label: <scalar>, ... }, ... ] }.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::coalgebra::{Coalgebra, DualElement, Side};
use crate::comodule::Comodule;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Scalar};

pub fn parse_field(tag: &str) -> Result<Field> {
    if tag == "Q" {
        return Ok(Field::Q);
    }
    if let Some(p) = tag.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Format(format!("bad prime in field tag `{}`", tag)))?;
        if p < 2 || (2..p).any(|d| d * d <= p && p.is_multiple_of(d)) {
            return Err(Error::Format(format!("{} is not prime", p)));
        }
        return Ok(Field::Fp(p));
    }
    Err(Error::Format(format!(
        "unknown field tag `{}` (expected Q or Fp:<prime>)",
        tag
    )))
}

pub fn field_tag(field: Field) -> String {
    match field {
        Field::Q => "Q".to_string(),
        Field::Fp(p) => format!("Fp:{}", p),
    }
}

fn scalar_from_json(v: &Value, field: Field) -> Result<Scalar> {
    match field {
        Field::Q => {
            let arr = v
                .as_array()
                .ok_or_else(|| Error::Format("rational scalar must be [num, den]".into()))?;
            if arr.len() != 2 {
                return Err(Error::Format("rational scalar must be [num, den]".into()));
            }
            let num = arr[0]
                .as_i64()
                .ok_or_else(|| Error::Format("non-integer numerator".into()))?;
            let den = arr[1]
                .as_i64()
                .ok_or_else(|| Error::Format("non-integer denominator".into()))?;
            if den == 0 {
                return Err(Error::Format("zero denominator".into()));
            }
            Ok(Scalar::rat(num, den))
        }
        Field::Fp(_) => {
            let n = v
                .as_i64()
                .ok_or_else(|| Error::Format("F_p scalar must be a single integer".into()))?;
            Ok(Scalar::from_int(n, field))
        }
    }
}

fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rat(r) => {
            let num: i64 = r.numer().try_into().expect("numerator fits i64 in file output");
            let den: i64 = r.denom().try_into().expect("denominator fits i64 in file output");
            json!([num, den])
        }
        Scalar::Mod(v, _) => json!(v),
    }
}

pub fn coalgebra_from_json(doc: &Value) -> Result<Coalgebra> {
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Format("coalgebra document must be a JSON object".into()))?;
    let field = parse_field(
        obj.get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Format("missing string `field`".into()))?,
    )?;
    let basis: Vec<String> = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing array `basis`".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(String::from)
                .ok_or_else(|| Error::Format("basis labels must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let index = |label: &str| -> Result<usize> {
        basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| Error::Format(format!("unknown basis label `{}`", label)))
    };
    let empty = Map::new();
    let delta_obj = obj
        .get("delta")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    let mut delta = vec![Vec::new(); basis.len()];
    for (label, terms) in delta_obj {
        let i = index(label)?;
        let terms = terms
            .as_array()
            .ok_or_else(|| Error::Format(format!("delta[{}] must be an array", label)))?;
        for term in terms {
            let t = term
                .as_array()
                .ok_or_else(|| Error::Format("delta term must be an array".into()))?;
            let (labels, scalar_parts) = match field {
                Field::Q => (2, 2),
                Field::Fp(_) => (2, 1),
            };
            if t.len() != labels + scalar_parts {
                return Err(Error::Format(format!(
                    "delta term for `{}` has {} entries",
                    label,
                    t.len()
                )));
            }
            let j = index(
                t[0].as_str()
                    .ok_or_else(|| Error::Format("delta term label must be a string".into()))?,
            )?;
            let k = index(
                t[1].as_str()
                    .ok_or_else(|| Error::Format("delta term label must be a string".into()))?,
            )?;
            let s = match field {
                Field::Q => scalar_from_json(&Value::Array(vec![t[2].clone(), t[3].clone()]), field)?,
                Field::Fp(_) => scalar_from_json(&t[2], field)?,
            };
            if !s.is_zero() {
                delta[i].push((j, k, s));
            }
        }
    }
    let counit_obj = obj
        .get("counit")
        .and_then(Value::as_object)
        .unwrap_or(&empty);
    let mut counit = vec![Scalar::zero(field); basis.len()];
    for (label, v) in counit_obj {
        counit[index(label)?] = scalar_from_json(v, field)?;
    }
    Coalgebra::new(field, basis, delta, counit)
}

pub fn coalgebra_to_json(c: &Coalgebra) -> Value {
    let mut delta = Map::new();
    for (i, label) in c.basis_labels().iter().enumerate() {
        let terms: Vec<Value> = c
            .delta_terms(i)
            .iter()
            .map(|(j, k, s)| {
                let mut row = vec![
                    json!(c.basis_labels()[*j]),
                    json!(c.basis_labels()[*k]),
                ];
                match scalar_to_json(s) {
                    Value::Array(parts) => row.extend(parts),
                    v => row.push(v),
                }
                Value::Array(row)
            })
            .collect();
        if !terms.is_empty() {
            delta.insert(label.clone(), Value::Array(terms));
        }
    }
    let mut counit = Map::new();
    for (i, label) in c.basis_labels().iter().enumerate() {
        let s = &c.counit_values()[i];
        if !s.is_zero() {
            counit.insert(label.clone(), scalar_to_json(s));
        }
    }
    json!({
        "field": field_tag(c.field()),
        "basis": c.basis_labels(),
        "delta": delta,
        "counit": counit,
    })
}

pub fn load_coalgebra(path: &Path) -> Result<Coalgebra> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    coalgebra_from_json(&doc)
}

/// Load a comodule file; a string-valued `coalgebra` field is resolved
/// as a path relative to the comodule file's directory.
pub fn load_comodule(path: &Path) -> Result<(Comodule, Arc<Coalgebra>)> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Format("comodule document must be a JSON object".into()))?;
    let side = match obj.get("side").and_then(Value::as_str) {
        Some("left") => Side::Left,
        Some("right") => Side::Right,
        _ => return Err(Error::Format("`side` must be \"left\" or \"right\"".into())),
    };
    let coalgebra = match obj.get("coalgebra") {
        Some(Value::String(rel)) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            load_coalgebra(&base.join(rel))?
        }
        Some(inline @ Value::Object(_)) => coalgebra_from_json(inline)?,
        _ => {
            return Err(Error::Format(
                "`coalgebra` must be a path string or an inline object".into(),
            ))
        }
    };
    let coalgebra = Arc::new(coalgebra);
    let field = coalgebra.field();
    let basis: Vec<String> = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing array `basis`".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .map(String::from)
                .ok_or_else(|| Error::Format("basis labels must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let m_index = |label: &str| -> Result<usize> {
        basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| Error::Format(format!("unknown comodule basis label `{}`", label)))
    };
    let empty = Map::new();
    let rho_obj = obj.get("rho").and_then(Value::as_object).unwrap_or(&empty);
    let mut rho = vec![Vec::new(); basis.len()];
    for (label, terms) in rho_obj {
        let i = m_index(label)?;
        let terms = terms
            .as_array()
            .ok_or_else(|| Error::Format(format!("rho[{}] must be an array", label)))?;
        for term in terms {
            let t = term
                .as_array()
                .ok_or_else(|| Error::Format("rho term must be an array".into()))?;
            let expected = match field {
                Field::Q => 4,
                Field::Fp(_) => 3,
            };
            if t.len() != expected {
                return Err(Error::Format(format!(
                    "rho term for `{}` has {} entries",
                    label,
                    t.len()
                )));
            }
            let j = m_index(
                t[0].as_str()
                    .ok_or_else(|| Error::Format("rho m-label must be a string".into()))?,
            )?;
            let c_label = t[1]
                .as_str()
                .ok_or_else(|| Error::Format("rho c-label must be a string".into()))?;
            let k = coalgebra
                .label_index(c_label)
                .ok_or_else(|| Error::Format(format!("unknown coalgebra label `{}`", c_label)))?;
            let s = match field {
                Field::Q => scalar_from_json(&Value::Array(vec![t[2].clone(), t[3].clone()]), field)?,
                Field::Fp(_) => scalar_from_json(&t[2], field)?,
            };
            if !s.is_zero() {
                rho[i].push((j, k, s));
            }
        }
    }
    let m = Comodule::new(side, basis, rho, Arc::clone(&coalgebra))?;
    Ok((m, coalgebra))
}

/// Dual-element list file: { "elements": [ { label: <scalar> }, ... ] }.
pub fn load_dual_elements(path: &Path, c: &Coalgebra) -> Result<Vec<DualElement>> {
    let text = std::fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    let arr = doc
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing array `elements`".into()))?;
    let field = c.field();
    let mut out = Vec::new();
    for entry in arr {
        let obj = entry
            .as_object()
            .ok_or_else(|| Error::Format("each element must be an object".into()))?;
        let mut coeffs = vec![Scalar::zero(field); c.dim()];
        for (label, v) in obj {
            let i = c
                .label_index(label)
                .ok_or_else(|| Error::Format(format!("unknown basis label `{}`", label)))?;
            coeffs[i] = scalar_from_json(v, field)?;
        }
        out.push(DualElement { coeffs });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{build_incidence, FinitePoset};

    #[test]
    fn coalgebra_round_trip() {
        let c = build_incidence(&FinitePoset::chain(3), Field::Q);
        let doc = coalgebra_to_json(&c);
        let back = coalgebra_from_json(&doc).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn fp_scalars_are_single_integers() {
        let c = build_incidence(&FinitePoset::antichain(2), Field::Fp(5));
        let doc = coalgebra_to_json(&c);
        let back = coalgebra_from_json(&doc).unwrap();
        assert_eq!(c, back);
        let first_term = &doc["delta"]["e[0,0]"][0];
        assert_eq!(first_term.as_array().unwrap().len(), 3);
    }

    #[test]
    fn comodule_file_with_inline_coalgebra() {
        let c = build_incidence(&FinitePoset::chain(2), Field::Q);
        let inline = coalgebra_to_json(&c);
        let doc = json!({
            "side": "right",
            "coalgebra": inline,
            "basis": ["m0", "m1"],
            "rho": {
                "m0": [["m0", "e[0,0]", 1, 1]],
                "m1": [["m0", "e[0,1]", 1, 1], ["m1", "e[1,1]", 1, 1]]
            }
        });
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.comod");
        std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
        let (m, _) = load_comodule(&path).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.validate().passed());
    }

    #[test]
    fn comodule_file_with_coalgebra_path() {
        let c = build_incidence(&FinitePoset::chain(2), Field::Q);
        let dir = tempfile::tempdir().unwrap();
        let cpath = dir.path().join("c.coalg");
        std::fs::write(&cpath, serde_json::to_string(&coalgebra_to_json(&c)).unwrap()).unwrap();
        let doc = json!({
            "side": "left",
            "coalgebra": "c.coalg",
            "basis": ["m0"],
            "rho": { "m0": [["m0", "e[0,0]", 1, 1]] }
        });
        let mpath = dir.path().join("m.comod");
        std::fs::write(&mpath, serde_json::to_string(&doc).unwrap()).unwrap();
        let (m, _) = load_comodule(&mpath).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.validate().passed());
    }

    #[test]
    fn bad_field_tag_rejected() {
        assert!(parse_field("R").is_err());
        assert!(parse_field("Fp:4").is_err());
        assert!(parse_field("Fp:7").is_ok());
    }

    #[test]
    fn dual_element_file() {
        let c = build_incidence(&FinitePoset::chain(2), Field::Q);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("idems.json");
        std::fs::write(
            &path,
            r#"{ "elements": [ { "e[0,0]": [1, 1] }, { "e[1,1]": [1, 1] } ] }"#,
        )
        .unwrap();
        let elems = load_dual_elements(&path, &c).unwrap();
        assert_eq!(elems.len(), 2);
        assert!(elems[0].coeffs[c.label_index("e[0,0]").unwrap()].is_one());
    }
}

//! Browser bindings: generator listings, LR decompositions and weight-space
//! tables, each returned as a JSON string.

use serde_json::json;
use wasm_bindgen::prelude::*;

use symquiver::generators::enumerate_generators;
use symquiver::oracle::weight_space_table;
use symquiver::schur::{lr_decompose, Partition};
use symquiver::{Kind, SymmetricQuiver};

fn parse_dim(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("{t:?} is not a nonnegative integer")))
        .collect()
}

fn target(quiver: &str, dim: &str, kind: &str) -> Result<(SymmetricQuiver, Vec<usize>, Kind), String> {
    let q: SymmetricQuiver = quiver.parse().map_err(|e: symquiver::Error| e.to_string())?;
    let kind: Kind = kind.parse().map_err(|e: symquiver::Error| e.to_string())?;
    let dim = parse_dim(dim)?;
    symquiver::rep::check_symmetric_dim(&q, kind, &dim).map_err(|e| e.to_string())?;
    Ok((q, dim, kind))
}

pub fn generators_json(quiver: &str, dim: &str, kind: &str) -> Result<String, String> {
    let (q, dim, kind) = target(quiver, dim, kind)?;
    let gens = enumerate_generators(&q, &dim, kind).map_err(|e| e.to_string())?;
    let rows: Vec<_> = gens
        .iter()
        .map(|g| {
            json!({
                "code": g.code(),
                "weight": symquiver::generators::format_weight(&g.weight),
                "degree": g.degree,
            })
        })
        .collect();
    Ok(serde_json::Value::from(rows).to_string())
}

pub fn lr_json(lambda: &str, mu: &str) -> Result<String, String> {
    let l: Partition = lambda.parse().map_err(|e: symquiver::Error| e.to_string())?;
    let m: Partition = mu.parse().map_err(|e: symquiver::Error| e.to_string())?;
    if l.size() + m.size() > 16 {
        return Err("keep |lambda| + |mu| at most 16".into());
    }
    let rows: Vec<_> = lr_decompose(&l, &m, l.height() + m.height())
        .into_iter()
        .map(|(p, c)| json!({"partition": p.to_string(), "multiplicity": c}))
        .collect();
    Ok(serde_json::Value::from(rows).to_string())
}

pub fn weight_space_json(quiver: &str, dim: &str, kind: &str, degree: usize) -> Result<String, String> {
    let (q, dim, kind) = target(quiver, dim, kind)?;
    if degree > 4 {
        return Err("degree is capped at 4 in the browser".into());
    }
    let rows = weight_space_table(&q, kind, &dim, degree).map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn generators(quiver: &str, dim: &str, kind: &str) -> Result<String, JsError> {
    generators_json(quiver, dim, kind).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lr(lambda: &str, mu: &str) -> Result<String, JsError> {
    lr_json(lambda, mu).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn weight_space(quiver: &str, dim: &str, kind: &str, degree: usize) -> Result<String, JsError> {
    weight_space_json(quiver, dim, kind, degree).map_err(|e| JsError::new(&e))
}

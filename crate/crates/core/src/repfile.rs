//! JSON representation files.
//!
//! ```json
//! {"quiver": "A4:>>>", "kind": "symplectic", "dim": [1, 2, 2, 1],
//!  "maps": {"a1": [["1"], ["2"]], "a2": [["0", "1"], ["1", "0"]]}}
//! ```
//!
//! Entries are rational strings (`"p"` or `"p/q"`); integers are accepted on
//! input. Only the arrows of `Q_1^+` and the fixed arrow may appear.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::quiver::SymmetricQuiver;
use crate::rational::Rational;
use crate::rep::{Kind, Representation, SymmetricRepresentation};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub quiver: String,
    pub kind: String,
    pub dim: Vec<usize>,
    pub maps: BTreeMap<String, Vec<Vec<Value>>>,
}

impl RepFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("representation file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_rep(sw: &SymmetricRepresentation) -> Self {
        let maps = sw
            .maps()
            .iter()
            .map(|(k, m)| {
                let rows = m
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| Value::String(x.to_string())).collect())
                    .collect();
                (format!("a{k}"), rows)
            })
            .collect();
        RepFile {
            quiver: sw.quiver().to_string(),
            kind: sw.kind().name().to_string(),
            dim: sw.dim().to_vec(),
            maps,
        }
    }

    pub fn to_rep(&self) -> Result<SymmetricRepresentation> {
        let q: SymmetricQuiver = self.quiver.parse()?;
        let kind: Kind = self.kind.parse()?;
        q.quiver().check_dim(&self.dim)?;
        let mut maps = BTreeMap::new();
        for (name, rows) in &self.maps {
            let k = name
                .strip_prefix('a')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&k| k >= 1 && k < q.m())
                .ok_or_else(|| Error::Parse(format!("unknown arrow name {name:?}")))?;
            let (r, c) = (self.dim[q.quiver().head(k) - 1], self.dim[q.quiver().tail(k) - 1]);
            maps.insert(k, parse_matrix(name, rows, r, c)?);
        }
        SymmetricRepresentation::new(q, kind, self.dim.clone(), maps)
    }
}

fn parse_matrix(name: &str, rows: &[Vec<Value>], r: usize, c: usize) -> Result<RatMatrix> {
    let bad_shape = || Error::Representation(format!("map on {name} must be {r}x{c}"));
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(bad_shape());
    }
    let mut parsed = Vec::with_capacity(r);
    for row in rows {
        let mut out = Vec::with_capacity(c);
        for v in row {
            out.push(match v {
                Value::String(s) => s.parse::<Rational>()?,
                Value::Number(n) if n.is_i64() => Rational::from_int(n.as_i64().expect("checked")),
                other => return Err(Error::Parse(format!("entry {other} of {name} is not a rational string"))),
            });
        }
        parsed.push(out);
    }
    RatMatrix::from_rows(parsed, c)
}

/// Reads back the independent maps of an unfolded representation, checking
/// that the remaining arrows are determined by them.
pub fn fold(q: &SymmetricQuiver, kind: Kind, v: &Representation) -> Result<SymmetricRepresentation> {
    if v.quiver() != q.quiver() {
        return Err(Error::Quiver(format!("representation lives on {}, not {q}", v.quiver())));
    }
    let maps = q.data_arrows().into_iter().map(|k| (k, v.map(k).clone())).collect();
    let sw = SymmetricRepresentation::new(q.clone(), kind, v.dim().to_vec(), maps)?;
    if sw.unfold() != *v {
        return Err(Error::Representation(format!(
            "representation on {q} is not in unfolded {kind} form"
        )));
    }
    Ok(sw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"quiver":"A4:>>>","kind":"symplectic","dim":[1,2,2,1],
            "maps":{"a1":[["1"],["2"]],"a2":[["0","1"],["1","3/2"]]}}"#;
        let f = RepFile::from_json(text).unwrap();
        let sw = f.to_rep().unwrap();
        let g = RepFile::from_rep(&sw);
        assert_eq!(g.to_rep().unwrap(), sw);
        assert_eq!(RepFile::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn rejects_dependent_arrow() {
        let text = r#"{"quiver":"A2:>","kind":"symplectic","dim":[1,1],"maps":{"a1":[["1"]],"a2":[["1"]]}}"#;
        assert!(RepFile::from_json(text).unwrap().to_rep().is_err());
    }
}

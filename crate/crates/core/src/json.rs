//! JSON schemas shared by the CLI and the browser demo.
//!
//! Formats:
//! - poset: `{"elements": ["x1","x2"], "covers": [["x1","x2"]]}`
//! - marking: `{"poset": <poset>, "marked": ["x1"], "values": {"x1": 0}}`
//! - graph: `{"vertices": ["u","v"], "edges": [["u","v"]]}`
//! - coloring: `{"k": 2, "colors": {"u": 1}}`
//! - triangle: `{"n": 3, "rows": [[5],[4,5],[3,5,7]]}` (rows top to bottom)
//! - polynomial: `{"vars": ["x1","x3"], "terms": [{"exps": {"x3": 1},
//!   "coeff": "1"}, ...]}` with rational coefficients as `p` or `p/q`
//!   strings and terms in canonical order.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{ColoringError, Graph, PartialColoring};
use crate::marked::{Marking, MarkingError};
use crate::poly::{format_rat, MultiPoly, PolyError, Rat};
use crate::poset::{PosetBuild, PosetError};
use crate::triangles::{Triangle, TriangleError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("ParseError({0})")]
    Parse(String),
    #[error("MarkedMismatch({0})")]
    MarkedMismatch(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Marking(#[from] MarkingError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<serde_json::Error> for JsonError {
    fn from(e: serde_json::Error) -> Self {
        JsonError::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MarkingJson {
    pub poset: PosetJson,
    pub marked: Vec<String>,
    pub values: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoringJson {
    pub k: u32,
    pub colors: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleJson {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exps: BTreeMap<String, u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<PolyTermJson>,
}

pub fn poset_from_json(json: &PosetJson) -> Result<PosetBuild, JsonError> {
    Ok(crate::poset::Poset::build(&json.elements, &json.covers)?)
}

pub fn poset_from_str(s: &str) -> Result<PosetBuild, JsonError> {
    poset_from_json(&serde_json::from_str(s)?)
}

pub fn poset_to_json(p: &crate::poset::Poset) -> PosetJson {
    PosetJson {
        elements: p.labels().to_vec(),
        covers: p
            .covers()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

/// Parse a marking; the `marked` list must agree with the value map's keys.
/// Returns the marking along with any input covers dropped as redundant.
pub fn marking_from_json(
    json: &MarkingJson,
) -> Result<(Marking, Vec<(String, String)>), JsonError> {
    let built = poset_from_json(&json.poset)?;
    let mut listed = json.marked.clone();
    listed.sort();
    let mut keys: Vec<String> = json.values.keys().cloned().collect();
    keys.sort();
    if listed != keys {
        let witness = listed
            .iter()
            .find(|l| !keys.contains(l))
            .or_else(|| keys.iter().find(|k| !listed.contains(k)))
            .cloned()
            .unwrap_or_default();
        return Err(JsonError::MarkedMismatch(witness));
    }
    let values: Vec<(String, i64)> = json.values.iter().map(|(k, &v)| (k.clone(), v)).collect();
    let marking = Marking::new(built.poset, &values)?;
    Ok((marking, built.removed_covers))
}

pub fn marking_from_str(s: &str) -> Result<(Marking, Vec<(String, String)>), JsonError> {
    marking_from_json(&serde_json::from_str(s)?)
}

pub fn marking_to_json(m: &Marking) -> MarkingJson {
    MarkingJson {
        poset: poset_to_json(m.poset()),
        marked: m.marked_labels(),
        values: m.marker_values().map(|(l, v)| (l.to_string(), v)).collect(),
    }
}

pub fn graph_from_json(json: &GraphJson) -> Result<Graph, JsonError> {
    Ok(Graph::build(&json.vertices, &json.edges)?)
}

pub fn graph_from_str(s: &str) -> Result<Graph, JsonError> {
    graph_from_json(&serde_json::from_str(s)?)
}

pub fn graph_to_json(g: &Graph) -> GraphJson {
    GraphJson {
        vertices: g.vertices().to_vec(),
        edges: g
            .edges()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

pub fn coloring_from_json(json: &ColoringJson) -> PartialColoring {
    PartialColoring {
        k: json.k,
        colors: json.colors.clone(),
    }
}

pub fn coloring_from_str(s: &str) -> Result<PartialColoring, JsonError> {
    Ok(coloring_from_json(&serde_json::from_str(s)?))
}

pub fn triangle_from_json(json: &TriangleJson) -> Result<Triangle, JsonError> {
    let t = Triangle::new(json.rows.clone())?;
    if t.n != json.n {
        return Err(JsonError::Parse(format!(
            "declared order {} but {} rows",
            json.n, t.n
        )));
    }
    Ok(t)
}

pub fn triangle_from_str(s: &str) -> Result<Triangle, JsonError> {
    triangle_from_json(&serde_json::from_str(s)?)
}

pub fn triangle_to_json(t: &Triangle) -> TriangleJson {
    TriangleJson {
        n: t.n,
        rows: t.rows.clone(),
    }
}

pub fn poly_to_json(p: &MultiPoly) -> PolyJson {
    PolyJson {
        vars: p.vars().to_vec(),
        terms: p
            .terms()
            .map(|(m, c)| PolyTermJson {
                exps: p.named_exponents(m),
                coeff: format_rat(c),
            })
            .collect(),
    }
}

pub fn poly_from_json(json: &PolyJson) -> Result<MultiPoly, JsonError> {
    let mut terms = Vec::with_capacity(json.terms.len());
    for t in &json.terms {
        let coeff = Rat::from_str(&t.coeff)
            .map_err(|e| JsonError::Parse(format!("bad coefficient {}: {e}", t.coeff)))?;
        terms.push((t.exps.clone(), coeff));
    }
    Ok(MultiPoly::from_terms(&json.vars, &terms)?)
}

pub fn poly_from_str(s: &str) -> Result<MultiPoly, JsonError> {
    poly_from_json(&serde_json::from_str(s)?)
}

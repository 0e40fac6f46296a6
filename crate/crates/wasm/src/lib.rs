//! Browser demo bindings: JSON strings in, JSON report strings out.
//!
//! The report functions are plain Rust so they build and test natively; the
//! `wasm-bindgen` exports are compiled only for the `wasm32` target. Build
//! the web bundle with
//! `wasm-pack build crates/wasm --target web --out-dir www/pkg`.

use serde::Serialize;

use markedord::coloring::{
    chi_polynomial, constrained_acyclic_count, count_proper_extensions, eval_chi,
    orientation_sum_count, reciprocity_pairs,
};
use markedord::json::{
    coloring_from_str, graph_from_str, marking_from_str, poly_to_json, PolyJson,
};
use markedord::marked::symbolic_polynomial;
use markedord::triangles::{
    alpha_polynomial, alpha_via_moebius, collect_mt, count_mt_direct, enumerate_dmt, eval_alpha,
    signed_dmt_sum, Triangle,
};

const SAMPLE_LIMIT: usize = 24;
const POLY_ORDER_LIMIT: usize = 4;

#[derive(Serialize)]
struct MarkedReport {
    count: String,
    strict_count: String,
    reciprocity: String,
    chain_polytope_count: String,
    dimension: usize,
    cell: Vec<Vec<String>>,
    polynomial: String,
    polynomial_json: PolyJson,
    removed_covers: Vec<(String, String)>,
}

/// Full report for a marking JSON document.
pub fn marked_report(marking_json: &str) -> Result<String, String> {
    let (marking, removed) = marking_from_str(marking_json).map_err(|e| e.to_string())?;
    marking.validate().map_err(|e| e.to_string())?;
    let cell = marking.cell_of().map_err(|e| e.to_string())?;
    let poly = symbolic_polynomial(marking.poset(), &marking.marked_labels(), &cell)
        .map_err(|e| e.to_string())?;
    let report = MarkedReport {
        count: marking
            .count_extensions()
            .map_err(|e| e.to_string())?
            .to_string(),
        strict_count: marking
            .count_strict_extensions()
            .map_err(|e| e.to_string())?
            .to_string(),
        reciprocity: marking
            .reciprocity_count()
            .map_err(|e| e.to_string())?
            .to_string(),
        chain_polytope_count: marking
            .count_chain_polytope_points()
            .map_err(|e| e.to_string())?
            .to_string(),
        dimension: marking.dimension().map_err(|e| e.to_string())?,
        cell: cell.blocks().to_vec(),
        polynomial: poly.to_string(),
        polynomial_json: poly_to_json(&poly),
        removed_covers: removed,
    };
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct TriangleReport {
    n: usize,
    bottom: Vec<i64>,
    direction: &'static str,
    count: Option<String>,
    count_via_moebius: Option<String>,
    signed_dmt_sum: Option<String>,
    polynomial: Option<String>,
    polynomial_at_bottom: Option<String>,
    samples: Vec<Vec<Vec<i64>>>,
    sample_kind: &'static str,
    samples_truncated: bool,
}

fn triangle_rows(ts: &[Triangle]) -> Vec<Vec<Vec<i64>>> {
    ts.iter().map(|t| t.rows.clone()).collect()
}

/// Report for a bottom row: counts for weakly increasing rows, the signed
/// enumeration for weakly decreasing rows, and the polynomial side for both
/// while the order is small enough to build it.
pub fn triangle_report(n: usize, bottom: &str) -> Result<String, String> {
    let k: Vec<i64> = bottom
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad entry {p:?}: {e}"))
        })
        .collect::<Result<_, _>>()?;
    if k.len() != n {
        return Err(format!("expected {n} entries, got {}", k.len()));
    }
    let increasing = k.windows(2).all(|w| w[0] <= w[1]);
    let decreasing = k.windows(2).all(|w| w[0] >= w[1]);
    if !increasing && !decreasing {
        return Err("bottom row must be weakly increasing or weakly decreasing".to_string());
    }
    let poly = if n <= POLY_ORDER_LIMIT {
        Some(alpha_polynomial(n).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let mut report = TriangleReport {
        n,
        bottom: k.clone(),
        direction: if increasing {
            "increasing"
        } else {
            "decreasing"
        },
        count: None,
        count_via_moebius: None,
        signed_dmt_sum: None,
        polynomial: poly.as_ref().map(|p| p.to_string()),
        polynomial_at_bottom: None,
        samples: Vec::new(),
        sample_kind: "",
        samples_truncated: false,
    };
    if let Some(p) = &poly {
        report.polynomial_at_bottom =
            Some(eval_alpha(p, &k).map_err(|e| e.to_string())?.to_string());
    }
    if increasing {
        report.count = Some(
            count_mt_direct(n, &k)
                .map_err(|e| e.to_string())?
                .to_string(),
        );
        report.count_via_moebius = Some(
            alpha_via_moebius(n, &k)
                .map_err(|e| e.to_string())?
                .to_string(),
        );
        let samples = collect_mt(n, &k, SAMPLE_LIMIT + 1).map_err(|e| e.to_string())?;
        report.samples_truncated = samples.len() > SAMPLE_LIMIT;
        report.samples = triangle_rows(&samples[..samples.len().min(SAMPLE_LIMIT)]);
        report.sample_kind = "monotone";
    }
    if decreasing {
        report.signed_dmt_sum = Some(
            signed_dmt_sum(n, &k)
                .map_err(|e| e.to_string())?
                .to_string(),
        );
        if !increasing {
            let mut samples: Vec<Triangle> = Vec::new();
            for t in enumerate_dmt(n, &k).map_err(|e| e.to_string())? {
                if samples.len() > SAMPLE_LIMIT {
                    break;
                }
                samples.push(t);
            }
            report.samples_truncated = samples.len() > SAMPLE_LIMIT;
            samples.truncate(SAMPLE_LIMIT);
            report.samples = triangle_rows(&samples);
            report.sample_kind = "decreasing";
        }
    }
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ColoringReport {
    vertex_count: usize,
    marked_count: usize,
    chi: String,
    chi_degree: Option<u32>,
    m: i64,
    chi_at_m: String,
    proper_extensions_at_m: Option<String>,
    orientation_sum_at_m: Option<String>,
    reciprocity_pairs_at_m: Option<String>,
    chi_at_minus_one: String,
    constrained_acyclic: String,
}

/// Report for a graph plus partial coloring at palette size `m`.
pub fn coloring_report(graph_json: &str, coloring_json: &str, m: i64) -> Result<String, String> {
    let g = graph_from_str(graph_json).map_err(|e| e.to_string())?;
    let c = coloring_from_str(coloring_json).map_err(|e| e.to_string())?;
    let chi = chi_polynomial(&g, &c).map_err(|e| e.to_string())?;
    let in_palette = m >= c.k as i64;
    let report = ColoringReport {
        vertex_count: g.vertex_count(),
        marked_count: c.domain_size(),
        chi: match &chi {
            Some(p) => p.to_string(),
            None => "0".to_string(),
        },
        chi_degree: match &chi {
            Some(p) => Some(p.degree_in("m").map_err(|e| e.to_string())?),
            None => None,
        },
        m,
        chi_at_m: eval_chi(&chi, m).to_string(),
        proper_extensions_at_m: if in_palette {
            Some(
                count_proper_extensions(&g, &c, m)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            )
        } else {
            None
        },
        orientation_sum_at_m: if in_palette {
            Some(
                orientation_sum_count(&g, &c, m)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            )
        } else {
            None
        },
        reciprocity_pairs_at_m: if in_palette {
            Some(
                reciprocity_pairs(&g, &c, m)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            )
        } else {
            None
        },
        chi_at_minus_one: eval_chi(&chi, -1).to_string(),
        constrained_acyclic: constrained_acyclic_count(&g, &c)
            .map_err(|e| e.to_string())?
            .to_string(),
    };
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    #[wasm_bindgen]
    pub fn mop_report(marking_json: &str) -> Result<String, JsValue> {
        super::marked_report(marking_json).map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen]
    pub fn mt_report(n: u32, bottom: &str) -> Result<String, JsValue> {
        super::triangle_report(n as usize, bottom).map_err(|e| JsValue::from_str(&e))
    }

    // m comes in as a plain JS number; i32 covers every sensible palette
    #[wasm_bindgen]
    pub fn chrom_report(graph_json: &str, coloring_json: &str, m: i32) -> Result<String, JsValue> {
        super::coloring_report(graph_json, coloring_json, m as i64)
            .map_err(|e| JsValue::from_str(&e))
    }
}

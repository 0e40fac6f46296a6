//! Extensions of partial graph colorings and their reciprocity.
//!
//! For a graph with a partial coloring `c : A -> [k]`, the number of proper
//! `m`-colorings extending `c` is a polynomial in `m` of degree `|V| - |A|`
//! (or identically zero). [`chi_polynomial`] builds it by exact
//! interpolation; [`orientation_sum_count`] recomputes the count through the
//! suspension construction — summing strict marked-poset extension counts
//! over constrained acyclic orientations — and serves as the structural
//! cross-check. Negative evaluations are matched by [`reciprocity_pairs`]
//! and [`constrained_acyclic_count`].

use std::collections::BTreeMap;

use num::traits::{One, Zero};
use thiserror::Error;

use crate::marked::{Marking, MarkingError};
use crate::poly::{interpolate_univariate, Int, MultiPoly, PolyError, Rat};
use crate::poset::{Poset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("PaletteTooSmall({0},{1})")]
    PaletteTooSmall(i64, u32),
    #[error("UnknownVertex({0})")]
    UnknownVertex(String),
    #[error("DuplicateVertex({0})")]
    DuplicateVertex(String),
    #[error("LoopEdge({0})")]
    LoopEdge(String),
    #[error("DuplicateEdge({0},{1})")]
    DuplicateEdge(String, String),
    #[error("ColorOutOfRange({0},{1})")]
    ColorOutOfRange(String, u32),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Marking(#[from] MarkingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Simple graph with labelled vertices. Edges are stored with the
/// lower-index endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn build<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, ColoringError> {
        let mut owned: Vec<String> = Vec::with_capacity(vertices.len());
        for v in vertices {
            let v = v.as_ref().to_string();
            if owned.contains(&v) {
                return Err(ColoringError::DuplicateVertex(v));
            }
            owned.push(v);
        }
        let index = |name: &str| -> Result<usize, ColoringError> {
            owned
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| ColoringError::UnknownVertex(name.to_string()))
        };
        let mut out = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let ui = index(u.as_ref())?;
            let vi = index(v.as_ref())?;
            if ui == vi {
                return Err(ColoringError::LoopEdge(u.as_ref().to_string()));
            }
            let e = (ui.min(vi), ui.max(vi));
            if out.contains(&e) {
                return Err(ColoringError::DuplicateEdge(
                    owned[e.0].clone(),
                    owned[e.1].clone(),
                ));
            }
            out.push(e);
        }
        out.sort_unstable();
        Ok(Graph {
            vertices: owned,
            edges: out,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> {
        self.edges
            .iter()
            .map(move |&(u, v)| (self.vertices[u].as_str(), self.vertices[v].as_str()))
    }

    pub fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn index_of(&self, name: &str) -> Result<usize, ColoringError> {
        self.vertices
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| ColoringError::UnknownVertex(name.to_string()))
    }
}

/// Colors `1..=k` on a subset of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    pub k: u32,
    pub colors: BTreeMap<String, u32>,
}

impl PartialColoring {
    pub fn new(k: u32, colors: &[(&str, u32)]) -> Self {
        PartialColoring {
            k,
            colors: colors.iter().map(|&(v, c)| (v.to_string(), c)).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.colors.len()
    }
}

/// Vertex-indexed colors, None on the free vertices.
fn resolve(g: &Graph, c: &PartialColoring) -> Result<Vec<Option<u32>>, ColoringError> {
    let mut fixed = vec![None; g.vertex_count()];
    for (name, &color) in &c.colors {
        let i = g.index_of(name)?;
        if color == 0 || color > c.k {
            return Err(ColoringError::ColorOutOfRange(name.clone(), color));
        }
        fixed[i] = Some(color);
    }
    Ok(fixed)
}

/// Count proper `m`-colorings of `g` that extend `c`, by direct enumeration.
pub fn count_proper_extensions(
    g: &Graph,
    c: &PartialColoring,
    m: i64,
) -> Result<Int, ColoringError> {
    if m < c.k as i64 {
        return Err(ColoringError::PaletteTooSmall(m, c.k));
    }
    let fixed = resolve(g, c)?;
    let n = g.vertex_count();
    let mut assigned: Vec<u32> = vec![0; n];
    fn conflict(g: &Graph, assigned: &[u32], v: usize, color: u32) -> bool {
        g.edge_indices().iter().any(|&(a, b)| {
            (b == v && a < v && assigned[a] == color) || (a == v && b < v && assigned[b] == color)
        })
    }
    fn rec(g: &Graph, fixed: &[Option<u32>], assigned: &mut Vec<u32>, v: usize, m: i64) -> Int {
        if v == fixed.len() {
            return Int::one();
        }
        let mut total = Int::zero();
        match fixed[v] {
            Some(color) => {
                if !conflict(g, assigned, v, color) {
                    assigned[v] = color;
                    total += rec(g, fixed, assigned, v + 1, m);
                }
            }
            None => {
                for color in 1..=(m as u32) {
                    if !conflict(g, assigned, v, color) {
                        assigned[v] = color;
                        total += rec(g, fixed, assigned, v + 1, m);
                    }
                }
            }
        }
        total
    }
    Ok(rec(g, &fixed, &mut assigned, 0, m))
}

/// The extension-counting polynomial in `m`, of degree `|V| - |A|` when any
/// proper extension exists; `None` when there are none for any palette.
pub fn chi_polynomial(g: &Graph, c: &PartialColoring) -> Result<Option<MultiPoly>, ColoringError> {
    resolve(g, c)?;
    let degree_bound = g.vertex_count() - c.domain_size();
    let k = c.k as i64;
    let mut samples = Vec::with_capacity(degree_bound + 1);
    let mut all_zero = true;
    for m in k..=k + degree_bound as i64 {
        let count = count_proper_extensions(g, c, m)?;
        if !count.is_zero() {
            all_zero = false;
        }
        samples.push((m, Rat::from_integer(count)));
    }
    if all_zero {
        return Ok(None);
    }
    Ok(Some(interpolate_univariate("m", &samples)?))
}

/// Evaluate a chi polynomial at an integer, `0` for the zero flag.
pub fn eval_chi(poly: &Option<MultiPoly>, m: i64) -> Int {
    match poly {
        None => Int::zero(),
        Some(p) => {
            let mut point = BTreeMap::new();
            point.insert("m".to_string(), m);
            let v = p.eval_int(&point).expect("univariate in m");
            debug_assert!(v.denom().is_one());
            v.numer().clone()
        }
    }
}

/// Repeatedly identify non-adjacent equal-colored marked vertices; `None`
/// when two adjacent marked vertices share a color (no proper extension can
/// exist). The result carries an injective partial coloring.
pub fn contract_equal_colors(
    g: &Graph,
    c: &PartialColoring,
) -> Result<Option<(Graph, PartialColoring)>, ColoringError> {
    let mut vertices = g.vertices.to_vec();
    let mut edges = g.edges.clone();
    let mut colors: Vec<Option<u32>> = resolve(g, c)?;
    loop {
        let mut merge: Option<(usize, usize)> = None;
        'outer: for a in 0..vertices.len() {
            for b in a + 1..vertices.len() {
                if let (Some(ca), Some(cb)) = (colors[a], colors[b]) {
                    if ca == cb {
                        if edges.contains(&(a, b)) {
                            return Ok(None);
                        }
                        merge = Some((a, b));
                        break 'outer;
                    }
                }
            }
        }
        let Some((a, b)) = merge else { break };
        vertices[a] = format!("{}{}", vertices[a], vertices[b]);
        let mut bump = 1usize;
        while vertices
            .iter()
            .enumerate()
            .any(|(i, v)| i != a && *v == vertices[a])
        {
            bump += 1;
            vertices[a] = format!("{}~{}", vertices[a], bump);
        }
        vertices.remove(b);
        colors.remove(b);
        let remap = |x: usize| {
            if x > b {
                x - 1
            } else if x == b {
                a
            } else {
                x
            }
        };
        let mut new_edges: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (u, v) = (remap(u), remap(v));
                (u.min(v), u.max(v))
            })
            .filter(|&(u, v)| u != v)
            .collect();
        new_edges.sort_unstable();
        new_edges.dedup();
        edges = new_edges;
    }
    let coloring = PartialColoring {
        k: c.k,
        colors: vertices
            .iter()
            .enumerate()
            .filter_map(|(i, v)| colors[i].map(|col| (v.clone(), col)))
            .collect(),
    };
    let labeled: Vec<(String, String)> = edges
        .iter()
        .map(|&(u, v)| (vertices[u].clone(), vertices[v].clone()))
        .collect();
    let graph = Graph::build(&vertices, &labeled)?;
    Ok(Some((graph, coloring)))
}

/// Reachability bitmasks of an oriented edge set over `n` vertices.
fn reach(n: usize, arcs: &[(usize, usize)]) -> Vec<u128> {
    let mut r: Vec<u128> = (0..n).map(|i| 1u128 << i).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in arcs {
            let nr = r[u] | r[v];
            if nr != r[u] {
                r[u] = nr;
                changed = true;
            }
        }
    }
    r
}

fn is_acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let r = reach(n, arcs);
    arcs.iter().all(|&(u, v)| r[v] & (1 << u) == 0)
}

/// The suspension route to the same count: acyclic orientations of the graph
/// plus a global source and sink, each contributing the strict extension
/// count of the induced reachability poset marked by the colors.
pub fn orientation_sum_count(g: &Graph, c: &PartialColoring, m: i64) -> Result<Int, ColoringError> {
    if m < c.k as i64 {
        return Err(ColoringError::PaletteTooSmall(m, c.k));
    }
    let Some((g, c)) = contract_equal_colors(g, c)? else {
        return Ok(Int::zero());
    };
    let fixed = resolve(&g, &c)?;
    let n = g.vertex_count();
    let mut bot = "_bot".to_string();
    while g.vertices.contains(&bot) {
        bot.push('_');
    }
    let mut top = "_top".to_string();
    while g.vertices.contains(&top) {
        top.push('_');
    }
    let marked: Vec<usize> = (0..n).filter(|&v| fixed[v].is_some()).collect();
    let edges = g.edge_indices();
    let mut total = Int::zero();
    for bits in 0u64..(1u64 << edges.len()) {
        let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            if bits & (1 << e) != 0 {
                arcs.push((v, u));
            } else {
                arcs.push((u, v));
            }
        }
        if !is_acyclic(n, &arcs) {
            continue;
        }
        let r = reach(n, &arcs);
        // no directed path between markers against the color order
        let mut ok = true;
        'pairs: for &a in &marked {
            for &b in &marked {
                if fixed[a] > fixed[b] && r[a] & (1 << b) != 0 {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if !ok {
            continue;
        }
        // the reachability poset of the suspension is the closure of the
        // arcs plus the source/sink edges; the builder strips what is
        // transitively implied
        let mut labels: Vec<String> = g.vertices.to_vec();
        labels.push(bot.clone());
        labels.push(top.clone());
        let bot_i = n;
        let top_i = n + 1;
        let mut relations: Vec<(String, String)> = Vec::new();
        for v in 0..n {
            relations.push((labels[bot_i].clone(), labels[v].clone()));
            relations.push((labels[v].clone(), labels[top_i].clone()));
        }
        if n == 0 {
            relations.push((labels[bot_i].clone(), labels[top_i].clone()));
        }
        for &(u, v) in &arcs {
            relations.push((labels[u].clone(), labels[v].clone()));
        }
        let poset = Poset::build(&labels, &relations)
            .expect("acyclic orientation yields a poset")
            .poset;
        let mut values: Vec<(String, i64)> =
            vec![(labels[bot_i].clone(), 0), (labels[top_i].clone(), m + 1)];
        for &a in &marked {
            values.push((labels[a].clone(), fixed[a].unwrap() as i64));
        }
        let marking = Marking::new(poset, &values)?;
        total += marking.count_strict_extensions()?;
    }
    Ok(total)
}

/// Pairs of an arbitrary extension and a weakly compatible acyclic
/// orientation with no directed path inside a color class; the count matched
/// by `(-1)^{|V - A|} chi(-m)`.
pub fn reciprocity_pairs(g: &Graph, c: &PartialColoring, m: i64) -> Result<Int, ColoringError> {
    if m < c.k as i64 {
        return Err(ColoringError::PaletteTooSmall(m, c.k));
    }
    let fixed = resolve(g, c)?;
    let n = g.vertex_count();
    let free: Vec<usize> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let mut classes: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (v, f) in fixed.iter().enumerate() {
        if let Some(color) = f {
            classes.entry(*color).or_default().push(v);
        }
    }
    let edges = g.edge_indices();
    let mut colors: Vec<u32> = fixed.iter().map(|f| f.unwrap_or(1)).collect();
    let mut total = Int::zero();
    // odometer over the free colorings [1..m]^free
    loop {
        let eq_edges: Vec<usize> = (0..edges.len())
            .filter(|&e| colors[edges[e].0] == colors[edges[e].1])
            .collect();
        for bits in 0u64..(1u64 << eq_edges.len()) {
            let mut arcs: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
            for (e, &(u, v)) in edges.iter().enumerate() {
                if colors[u] < colors[v] {
                    arcs.push((u, v));
                } else if colors[v] < colors[u] {
                    arcs.push((v, u));
                } else {
                    let pos = eq_edges.iter().position(|&x| x == e).unwrap();
                    if bits & (1 << pos) != 0 {
                        arcs.push((v, u));
                    } else {
                        arcs.push((u, v));
                    }
                }
            }
            if !is_acyclic(n, &arcs) {
                continue;
            }
            let r = reach(n, &arcs);
            let mut ok = true;
            'classes: for members in classes.values() {
                for &a in members {
                    for &b in members {
                        if a != b && r[a] & (1 << b) != 0 {
                            ok = false;
                            break 'classes;
                        }
                    }
                }
            }
            if ok {
                total += Int::one();
            }
        }
        // advance
        let mut pos = 0;
        loop {
            if pos == free.len() {
                return Ok(total);
            }
            let v = free[pos];
            if (colors[v] as i64) < m {
                colors[v] += 1;
                break;
            }
            colors[v] = 1;
            pos += 1;
        }
    }
}

/// Acyclic orientations with no directed path `a -> b` between markers with
/// `c(a) >= c(b)`; matches `|chi(-1)|`.
pub fn constrained_acyclic_count(g: &Graph, c: &PartialColoring) -> Result<Int, ColoringError> {
    let fixed = resolve(g, c)?;
    let n = g.vertex_count();
    let marked: Vec<usize> = (0..n).filter(|&v| fixed[v].is_some()).collect();
    let edges = g.edge_indices();
    let mut total = Int::zero();
    for bits in 0u64..(1u64 << edges.len()) {
        let arcs: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| if bits & (1 << e) != 0 { (v, u) } else { (u, v) })
            .collect();
        if !is_acyclic(n, &arcs) {
            continue;
        }
        let r = reach(n, &arcs);
        let mut ok = true;
        'pairs: for &a in &marked {
            for &b in &marked {
                if a != b && fixed[a] >= fixed[b] && r[a] & (1 << b) != 0 {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            total += Int::one();
        }
    }
    Ok(total)
}

/// The chromatic polynomial by deletion and contraction; the independent
/// route used to cross-check `chi_polynomial` with an empty marked set.
pub fn chromatic_polynomial(g: &Graph) -> MultiPoly {
    fn rec(n: usize, edges: &[(usize, usize)]) -> MultiPoly {
        let vars = vec!["m".to_string()];
        match edges.first().copied() {
            None => {
                let m = MultiPoly::var(&vars, "m").expect("m in universe");
                let mut acc = MultiPoly::constant_int(&vars, 1);
                for _ in 0..n {
                    acc = acc.mul(&m).expect("universe");
                }
                acc
            }
            Some((u, v)) => {
                let without = rec(n, &edges[1..]);
                // contract v into u; v's slot disappears
                let mut contracted: Vec<(usize, usize)> = edges[1..]
                    .iter()
                    .map(|&(a, b)| {
                        let a = if a == v { u } else { a };
                        let b = if b == v { u } else { b };
                        let a2 = if a > v { a - 1 } else { a };
                        let b2 = if b > v { b - 1 } else { b };
                        (a2.min(b2), a2.max(b2))
                    })
                    .filter(|&(a, b)| a != b)
                    .collect();
                contracted.sort_unstable();
                contracted.dedup();
                let merged = rec(n - 1, &contracted);
                without.sub(&merged).expect("universe")
            }
        }
    }
    rec(g.vertex_count(), &g.edges)
}

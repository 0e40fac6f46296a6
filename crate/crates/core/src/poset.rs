//! Finite posets stored by Hasse diagram, with order ideals, chains of
//! ideals, face partitions, and quotients.
//!
//! A [`Poset`] keeps its elements in input order; every iteration and output
//! order in the crate derives from that order, so identical inputs give
//! byte-identical outputs. Closure queries go through cached down-set /
//! up-set bitmasks since they dominate the counting loops.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Element sets are bitmasks over element indices, capping posets at 128
/// elements. Everything here is desk scale; the cap is checked at build.
pub type Mask = u128;

pub const MAX_ELEMENTS: usize = 128;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("CycleError({})", .0.join(","))]
    CycleError(Vec<String>),
    #[error("UnknownLabel({0})")]
    UnknownLabel(String),
    #[error("DuplicateLabel({0})")]
    DuplicateLabel(String),
    #[error("NotACover({0},{1})")]
    NotACover(String, String),
    #[error("NotAFacePartition({0},{1})")]
    NotAFacePartition(String, String),
    #[error("TooManyElements({0})")]
    TooManyElements(usize),
}

/// Finite poset with cached transitive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    covers: Vec<(usize, usize)>,
    below: Vec<Mask>,
    above: Vec<Mask>,
}

/// Poset plus the input covers that were dropped as duplicates or
/// transitively implied. Dropping is reported, never silent.
#[derive(Debug, Clone)]
pub struct PosetBuild {
    pub poset: Poset,
    pub removed_covers: Vec<(String, String)>,
}

impl Poset {
    /// Build from labels and cover pairs `(lower, upper)`. Transitive or
    /// duplicate input covers are stripped and reported in the result;
    /// directed cycles are an error.
    pub fn build<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<PosetBuild, PosetError> {
        if labels.len() > MAX_ELEMENTS {
            return Err(PosetError::TooManyElements(labels.len()));
        }
        let mut index = BTreeMap::new();
        let mut owned = Vec::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            let l = l.as_ref().to_string();
            if index.insert(l.clone(), i).is_some() {
                return Err(PosetError::DuplicateLabel(l));
            }
            owned.push(l);
        }
        let n = owned.len();
        let mut edges: Vec<(usize, usize)> = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            let lo = lo.as_ref();
            let hi = hi.as_ref();
            let &li = index
                .get(lo)
                .ok_or_else(|| PosetError::UnknownLabel(lo.to_string()))?;
            let &hi_i = index
                .get(hi)
                .ok_or_else(|| PosetError::UnknownLabel(hi.to_string()))?;
            if li == hi_i {
                return Err(PosetError::CycleError(vec![lo.to_string()]));
            }
            edges.push((li, hi_i));
        }

        if let Some(cycle) = find_cycle(n, &edges) {
            return Err(PosetError::CycleError(
                cycle.into_iter().map(|i| owned[i].clone()).collect(),
            ));
        }

        let (below, above) = closure(n, &edges);

        // A cover (u, v) is redundant when some w strictly between u and v
        // witnesses a longer path, or when it duplicates an earlier cover.
        let mut kept: Vec<(usize, usize)> = Vec::new();
        let mut removed: Vec<(String, String)> = Vec::new();
        for &(u, v) in &edges {
            let between = above[u] & below[v] & !(1 << u) & !(1 << v);
            if between != 0 || kept.contains(&(u, v)) {
                removed.push((owned[u].clone(), owned[v].clone()));
            } else {
                kept.push((u, v));
            }
        }
        kept.sort_unstable();
        kept.dedup();

        Ok(PosetBuild {
            poset: Poset {
                labels: owned,
                index,
                covers: kept,
                below,
                above,
            },
            removed_covers: removed,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    pub fn covers(&self) -> impl Iterator<Item = (&str, &str)> {
        self.covers
            .iter()
            .map(move |&(u, v)| (self.labels[u].as_str(), self.labels[v].as_str()))
    }

    pub fn cover_indices(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// `p <= q` in the transitive-reflexive closure.
    pub fn leq(&self, p: &str, q: &str) -> Result<bool, PosetError> {
        let pi = self.index_of(p)?;
        let qi = self.index_of(q)?;
        Ok(self.leq_idx(pi, qi))
    }

    #[inline]
    pub fn leq_idx(&self, p: usize, q: usize) -> bool {
        self.below[q] & (1 << p) != 0
    }

    /// Down-set of `i`, including `i`.
    #[inline]
    pub fn below_mask(&self, i: usize) -> Mask {
        self.below[i]
    }

    /// Up-set of `i`, including `i`.
    #[inline]
    pub fn above_mask(&self, i: usize) -> Mask {
        self.above[i]
    }

    pub fn full_mask(&self) -> Mask {
        if self.labels.is_empty() {
            0
        } else {
            (Mask::MAX >> (MAX_ELEMENTS - self.labels.len())) as Mask
        }
    }

    pub fn minimal_mask(&self) -> Mask {
        let mut m = self.full_mask();
        for i in 0..self.len() {
            if self.below[i] != (1 << i) {
                m &= !(1 << i);
            }
        }
        m
    }

    pub fn maximal_mask(&self) -> Mask {
        let mut m = self.full_mask();
        for i in 0..self.len() {
            if self.above[i] != (1 << i) {
                m &= !(1 << i);
            }
        }
        m
    }

    /// Whether `mask` is downward closed.
    pub fn is_ideal(&self, mask: Mask) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.below[i] & !mask != 0 {
                return false;
            }
        }
        true
    }

    /// All nonempty subsets `b` of `candidates` such that `base | b` stays an
    /// ideal, in increasing mask order. `base` must itself be an ideal.
    pub(crate) fn ideal_blocks(&self, base: Mask, candidates: Mask) -> Vec<Mask> {
        let mut bits = Vec::new();
        let mut rest = candidates;
        while rest != 0 {
            bits.push(rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
        let mut out = Vec::new();
        for sub in 1u64..(1u64 << bits.len()) {
            let mut b: Mask = 0;
            for (k, &bit) in bits.iter().enumerate() {
                if sub & (1 << k) != 0 {
                    b |= 1 << bit;
                }
            }
            if self.is_ideal(base | b) {
                out.push(b);
            }
        }
        out.sort_unstable();
        out
    }

    /// Stream every chain of order ideals `I_0 ⊊ … ⊊ I_k = P` (nonempty
    /// ideals), depth first, in a deterministic order. `max_len` caps the
    /// number of ideals per chain.
    pub fn ideal_chains(&self, max_len: Option<usize>) -> IdealChains<'_> {
        IdealChains::new(self, max_len)
    }

    /// Face partition test: contracting the chosen covers in the Hasse
    /// diagram must leave an acyclic digraph. The interval condition of the
    /// usual characterization is implied (see [`Poset::interval_closed`]).
    pub fn is_face_partition<S: AsRef<str>>(&self, covers: &[(S, S)]) -> Result<bool, PosetError> {
        let resolved = self.resolve_cover_subset(covers)?;
        Ok(self.contraction_components(&resolved).is_some())
    }

    /// The interval condition on a cover subset: whenever `p ⪯ q` inside one
    /// contracted component, every element of `[p, q]` lies in that
    /// component. Necessary for a face partition but strictly weaker than
    /// the contraction-acyclicity test; crossing cover pairs between two
    /// components can pass here yet force extra equalities geometrically.
    pub fn interval_closed<S: AsRef<str>>(&self, covers: &[(S, S)]) -> Result<bool, PosetError> {
        let resolved = self.resolve_cover_subset(covers)?;
        let comp = components(self.len(), &resolved);
        for p in 0..self.len() {
            for q in 0..self.len() {
                if comp[p] == comp[q] && self.leq_idx(p, q) {
                    let interval = self.above[p] & self.below[q];
                    let mut rest = interval;
                    while rest != 0 {
                        let m = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        if comp[m] != comp[p] {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    fn resolve_cover_subset<S: AsRef<str>>(
        &self,
        covers: &[(S, S)],
    ) -> Result<Vec<(usize, usize)>, PosetError> {
        let mut out = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            let li = self.index_of(lo.as_ref())?;
            let hi_i = self.index_of(hi.as_ref())?;
            if !self.covers.contains(&(li, hi_i)) {
                return Err(PosetError::NotACover(
                    lo.as_ref().to_string(),
                    hi.as_ref().to_string(),
                ));
            }
            out.push((li, hi_i));
        }
        Ok(out)
    }

    /// Component assignment if contraction is acyclic, else None.
    fn contraction_components(&self, chosen: &[(usize, usize)]) -> Option<Vec<usize>> {
        let comp = components(self.len(), chosen);
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut edges = Vec::new();
        for &(u, v) in &self.covers {
            if comp[u] != comp[v] {
                edges.push((comp[u], comp[v]));
            }
        }
        if find_cycle(ncomp, &edges).is_some() {
            None
        } else {
            Some(comp)
        }
    }

    /// Validate a cover subset as a face partition.
    pub fn face_partition<S: AsRef<str>>(
        &self,
        covers: &[(S, S)],
    ) -> Result<FacePartition, PosetError> {
        let resolved = self.resolve_cover_subset(covers)?;
        match self.contraction_components(&resolved) {
            Some(comp) => Ok(FacePartition {
                covers: resolved,
                comp_of: comp,
            }),
            None => {
                let (u, v) = resolved.first().copied().unwrap_or((0, 0));
                Err(PosetError::NotAFacePartition(
                    self.labels.get(u).cloned().unwrap_or_default(),
                    self.labels.get(v).cloned().unwrap_or_default(),
                ))
            }
        }
    }

    /// Contract the components of a face partition. Component classes are
    /// labelled by concatenating member labels in element order; the second
    /// value maps each element index to its class index in the quotient.
    pub fn quotient(&self, fp: &FacePartition) -> (Poset, Vec<usize>) {
        self.quotient_from_components(&fp.comp_of)
    }

    /// Contract an arbitrary cover subset, saturating forced equalities: if
    /// the contraction digraph has cycles, their members are identified as
    /// well (the condensation). For a face partition this is the plain
    /// quotient; otherwise it is the quotient carrying the lattice points of
    /// the corresponding cut of the order cone.
    pub fn contraction_quotient<S: AsRef<str>>(
        &self,
        covers: &[(S, S)],
    ) -> Result<(Poset, Vec<usize>), PosetError> {
        let resolved = self.resolve_cover_subset(covers)?;
        let mut comp = components(self.len(), &resolved);
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut edges = Vec::new();
        for &(u, v) in &self.covers {
            if comp[u] != comp[v] {
                edges.push((comp[u], comp[v]));
            }
        }
        let scc = condense(ncomp, &edges);
        for c in comp.iter_mut() {
            *c = scc[*c];
        }
        Ok(self.quotient_from_components(&comp))
    }

    fn quotient_from_components(&self, comp_of: &[usize]) -> (Poset, Vec<usize>) {
        let ncomp = comp_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
        for (i, &c) in comp_of.iter().enumerate() {
            members[c].push(i);
        }
        // order classes by smallest member so quotient element order follows
        // the original element order
        let mut order: Vec<usize> = (0..ncomp).collect();
        order.sort_by_key(|&c| members[c][0]);
        let mut class_index = vec![0usize; ncomp];
        for (new_idx, &c) in order.iter().enumerate() {
            class_index[c] = new_idx;
        }
        let mut labels: Vec<String> = Vec::with_capacity(ncomp);
        for &c in &order {
            labels.push(
                members[c]
                    .iter()
                    .map(|&i| self.labels[i].as_str())
                    .collect::<Vec<_>>()
                    .concat(),
            );
        }
        // label collisions from concatenation get a deterministic suffix
        for i in 0..labels.len() {
            let mut bump = 1usize;
            while labels[..i].contains(&labels[i]) {
                bump += 1;
                labels[i] = format!("{}~{}", labels[i], bump);
            }
        }
        let mut edges: Vec<(String, String)> = Vec::new();
        for &(u, v) in &self.covers {
            let cu = class_index[comp_of[u]];
            let cv = class_index[comp_of[v]];
            if cu != cv {
                edges.push((labels[cu].clone(), labels[cv].clone()));
            }
        }
        edges.sort();
        edges.dedup();
        let built = Poset::build(&labels, &edges).expect("condensed contraction is acyclic");
        let map = comp_of.iter().map(|&c| class_index[c]).collect();
        (built.poset, map)
    }

    /// Convenience: quotient by raw covers, validating them first.
    pub fn quotient_by_covers<S: AsRef<str>>(
        &self,
        covers: &[(S, S)],
    ) -> Result<(Poset, Vec<usize>), PosetError> {
        let fp = self.face_partition(covers)?;
        Ok(self.quotient(&fp))
    }

    /// Deterministic linear extension: repeatedly take the smallest-index
    /// minimal element.
    pub fn topo_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed: Mask = 0;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            for i in 0..n {
                if placed & (1 << i) == 0 && self.below[i] & !placed == 1 << i {
                    out.push(i);
                    placed |= 1 << i;
                    break;
                }
            }
        }
        out
    }

    pub fn mask_labels(&self, mask: Mask) -> Vec<String> {
        (0..self.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.labels[i].clone())
            .collect()
    }
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for &(u, v) in edges {
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        if ru != rv {
            let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
            parent[hi] = lo;
        }
    }
    // compact ids in order of first appearance
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        let r = find(&mut parent, x);
        if id[r] == usize::MAX {
            id[r] = next;
            next += 1;
        }
        id[x] = id[r];
    }
    id
}

/// Strongly connected components by Kosaraju, compacted in order of first
/// appearance. Nodes on a common directed cycle share an id.
fn condense(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    let mut radj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        radj[v].push(u);
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    fn dfs1(u: usize, adj: &[Vec<usize>], seen: &mut [bool], order: &mut Vec<usize>) {
        seen[u] = true;
        for &v in &adj[u] {
            if !seen[v] {
                dfs1(v, adj, seen, order);
            }
        }
        order.push(u);
    }
    for s in 0..n {
        if !seen[s] {
            dfs1(s, &adj, &mut seen, &mut order);
        }
    }
    let mut scc = vec![usize::MAX; n];
    fn dfs2(u: usize, radj: &[Vec<usize>], scc: &mut [usize], id: usize) {
        scc[u] = id;
        for &v in &radj[u] {
            if scc[v] == usize::MAX {
                dfs2(v, radj, scc, id);
            }
        }
    }
    let mut raw = 0;
    for &u in order.iter().rev() {
        if scc[u] == usize::MAX {
            dfs2(u, &radj, &mut scc, raw);
            raw += 1;
        }
    }
    // compact in order of first appearance
    let mut remap = vec![usize::MAX; raw];
    let mut next = 0;
    for x in 0..n {
        if remap[scc[x]] == usize::MAX {
            remap[scc[x]] = next;
            next += 1;
        }
        scc[x] = remap[scc[x]];
    }
    scc
}

fn find_cycle(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack = Vec::new();
    fn dfs(
        u: usize,
        adj: &[Vec<usize>],
        state: &mut [u8],
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        state[u] = 1;
        stack.push(u);
        for &v in &adj[u] {
            if state[v] == 1 {
                let start = stack.iter().position(|&x| x == v).unwrap();
                return Some(stack[start..].to_vec());
            }
            if state[v] == 0 {
                if let Some(c) = dfs(v, adj, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[u] = 2;
        None
    }
    for s in 0..n {
        if state[s] == 0 {
            if let Some(c) = dfs(s, &adj, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}

fn closure(n: usize, edges: &[(usize, usize)]) -> (Vec<Mask>, Vec<Mask>) {
    let mut below: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
    let mut above: Vec<Mask> = below.clone();
    // iterate to fixpoint; n is small
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in edges {
            let nb = below[v] | below[u];
            if nb != below[v] {
                below[v] = nb;
                changed = true;
            }
            let na = above[u] | above[v];
            if na != above[u] {
                above[u] = na;
                changed = true;
            }
        }
    }
    (below, above)
}

/// Downward-closed subset, materialized with labels in element order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderIdeal {
    pub members: Vec<String>,
}

/// Strictly increasing chain of nonempty order ideals ending at the full
/// ground set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealChain {
    pub ideals: Vec<OrderIdeal>,
}

impl IdealChain {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// Successive differences `I_j \ I_{j-1}`.
    pub fn blocks(&self) -> Vec<Vec<String>> {
        let mut out = Vec::with_capacity(self.ideals.len());
        let mut prev: Vec<String> = Vec::new();
        for ideal in &self.ideals {
            out.push(
                ideal
                    .members
                    .iter()
                    .filter(|m| !prev.contains(m))
                    .cloned()
                    .collect(),
            );
            prev = ideal.members.clone();
        }
        out
    }
}

impl fmt::Display for IdealChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ideals
            .iter()
            .map(|i| format!("{{{}}}", i.members.join(",")))
            .collect();
        write!(f, "{}", parts.join(" < "))
    }
}

/// Validated face partition: a subset of the Hasse diagram whose contraction
/// is acyclic, together with the component of every element.
#[derive(Debug, Clone)]
pub struct FacePartition {
    covers: Vec<(usize, usize)>,
    comp_of: Vec<usize>,
}

impl FacePartition {
    pub fn component_of(&self, element: usize) -> usize {
        self.comp_of[element]
    }

    pub fn cover_indices(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn component_count(&self) -> usize {
        self.comp_of.iter().copied().max().map_or(0, |m| m + 1)
    }
}

/// Depth-first streaming enumeration of ideal chains.
pub struct IdealChains<'a> {
    poset: &'a Poset,
    max_len: Option<usize>,
    path: Vec<Mask>,
    frames: Vec<Frame>,
    started: bool,
}

struct Frame {
    blocks: Vec<Mask>,
    next: usize,
}

impl<'a> IdealChains<'a> {
    fn new(poset: &'a Poset, max_len: Option<usize>) -> Self {
        IdealChains {
            poset,
            max_len,
            path: Vec::new(),
            frames: Vec::new(),
            started: false,
        }
    }

    fn push_frame(&mut self) {
        let cur = self.path.last().copied().unwrap_or(0);
        let rest = self.poset.full_mask() & !cur;
        let blocks = self.poset.ideal_blocks(cur, rest);
        self.frames.push(Frame { blocks, next: 0 });
    }

    fn emit(&self) -> IdealChain {
        IdealChain {
            ideals: self
                .path
                .iter()
                .map(|&m| OrderIdeal {
                    members: self.poset.mask_labels(m),
                })
                .collect(),
        }
    }
}

impl<'a> Iterator for IdealChains<'a> {
    type Item = IdealChain;

    fn next(&mut self) -> Option<IdealChain> {
        if !self.started {
            self.started = true;
            if self.poset.is_empty() {
                return None;
            }
            self.push_frame();
        }
        loop {
            let frame = self.frames.last_mut()?;
            if frame.next >= frame.blocks.len() {
                self.frames.pop();
                self.path.pop();
                continue;
            }
            let block = frame.blocks[frame.next];
            frame.next += 1;
            let cur = self.path.last().copied().unwrap_or(0);
            let widened = cur | block;
            if let Some(cap) = self.max_len {
                if self.path.len() + 1 > cap {
                    continue;
                }
            }
            self.path.push(widened);
            if widened == self.poset.full_mask() {
                let chain = self.emit();
                self.path.pop();
                return Some(chain);
            }
            self.push_frame();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn chain(n: usize) -> Poset {
        let labels: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let covers: Vec<(String, String)> = (1..n)
            .map(|i| (format!("x{i}"), format!("x{}", i + 1)))
            .collect();
        Poset::build(&labels, &covers).unwrap().poset
    }

    pub(crate) fn diamond() -> Poset {
        let labels = ["bot", "p", "q", "top"];
        let covers = [("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")];
        Poset::build(&labels, &covers).unwrap().poset
    }

    /// Independent linear-extension counter by backtracking over minimal
    /// elements; used as the oracle for maximal ideal chains.
    fn count_linear_extensions(p: &Poset) -> u64 {
        fn rec(p: &Poset, placed: Mask) -> u64 {
            if placed == p.full_mask() {
                return 1;
            }
            let mut total = 0;
            for i in 0..p.len() {
                if placed & (1 << i) == 0 && p.below_mask(i) & !placed == 1 << i {
                    total += rec(p, placed | (1 << i));
                }
            }
            total
        }
        rec(p, 0)
    }

    #[test]
    fn build_singleton_and_chain() {
        let single = Poset::build(&["a"], &[]).unwrap();
        assert_eq!(single.poset.len(), 1);
        assert!(single.removed_covers.is_empty());

        let c3 = chain(3);
        assert!(c3.leq("x1", "x3").unwrap());
        assert!(!c3.leq("x3", "x1").unwrap());
        assert!(c3.leq("x2", "x2").unwrap());
    }

    #[test]
    fn build_reports_transitive_cover() {
        let built = Poset::build(
            &["x1", "x2", "x3"],
            &[("x1", "x2"), ("x2", "x3"), ("x1", "x3")],
        )
        .unwrap();
        assert_eq!(
            built.removed_covers,
            vec![("x1".to_string(), "x3".to_string())]
        );
        assert_eq!(built.poset.cover_indices().len(), 2);
        assert!(built.poset.leq("x1", "x3").unwrap());
    }

    #[test]
    fn build_rejects_cycles_and_unknowns() {
        let err = Poset::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::CycleError(_)));
        let err = Poset::build(&["a"], &[("a", "z")]).unwrap_err();
        assert_eq!(err, PosetError::UnknownLabel("z".to_string()));
        let err = Poset::build(&["a", "a"], &[]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateLabel("a".to_string()));
    }

    #[test]
    fn ideal_chains_antichain_and_chain() {
        let anti = Poset::build(&["p", "q"], &[]).unwrap().poset;
        let chains: Vec<String> = anti.ideal_chains(None).map(|c| c.to_string()).collect();
        assert_eq!(
            chains,
            vec!["{p} < {p,q}", "{q} < {p,q}", "{p,q}"]
                .into_iter()
                .map(String::from)
                .collect::<Vec<_>>()
        );

        let c2 = chain(2);
        let chains: Vec<String> = c2.ideal_chains(None).map(|c| c.to_string()).collect();
        assert_eq!(
            chains,
            vec!["{x1} < {x1,x2}".to_string(), "{x1,x2}".to_string()]
        );
    }

    #[test]
    fn maximal_chains_match_linear_extensions() {
        let anti = Poset::build(&["p", "q"], &[]).unwrap().poset;
        let maximal = anti
            .ideal_chains(None)
            .filter(|c| c.len() == anti.len())
            .count() as u64;
        assert_eq!(maximal, 2);
        assert_eq!(maximal, count_linear_extensions(&anti));

        // a spread of shapes up to 6 elements
        let shapes: Vec<Poset> = vec![
            chain(4),
            diamond(),
            Poset::build(&["a", "b", "c"], &[]).unwrap().poset,
            Poset::build(
                &["a", "b", "c", "d", "e", "f"],
                &[("a", "c"), ("b", "c"), ("c", "d"), ("d", "e"), ("d", "f")],
            )
            .unwrap()
            .poset,
            Poset::build(&["a", "b", "c", "d"], &[("a", "b"), ("c", "b"), ("c", "d")])
                .unwrap()
                .poset,
        ];
        for p in &shapes {
            let maximal = p.ideal_chains(None).filter(|c| c.len() == p.len()).count() as u64;
            assert_eq!(
                maximal,
                count_linear_extensions(p),
                "poset {:?}",
                p.labels()
            );
        }
    }

    #[test]
    fn ideal_chain_cap() {
        let c3 = chain(3);
        let all: Vec<_> = c3.ideal_chains(None).collect();
        assert_eq!(all.len(), 4); // compositions of 3
        let capped: Vec<_> = c3.ideal_chains(Some(2)).collect();
        assert!(capped.iter().all(|c| c.len() <= 2));
        assert_eq!(capped.len(), 3);
    }

    #[test]
    fn face_partition_examples() {
        let c3 = chain(3);
        let empty: Vec<(&str, &str)> = vec![];
        assert!(c3.is_face_partition(&empty).unwrap());
        assert!(c3.is_face_partition(&[("x1", "x2"), ("x2", "x3")]).unwrap());

        let d = diamond();
        assert!(!d.is_face_partition(&[("bot", "p"), ("p", "top")]).unwrap());
        // and the forbidden contraction also fails the interval condition
        assert!(!d.interval_closed(&[("bot", "p"), ("p", "top")]).unwrap());
    }

    #[test]
    fn face_partition_rejects_non_covers() {
        let c3 = chain(3);
        let err = c3.is_face_partition(&[("x1", "x3")]).unwrap_err();
        assert_eq!(
            err,
            PosetError::NotACover("x1".to_string(), "x3".to_string())
        );
    }

    #[test]
    fn acyclicity_implies_interval_condition_small() {
        // exhaustively on a corpus of posets with <= 5 elements
        let shapes: Vec<Poset> = vec![
            chain(3),
            chain(4),
            chain(5),
            diamond(),
            Poset::build(&["a", "b", "c"], &[]).unwrap().poset,
            Poset::build(&["a", "b", "c", "d"], &[("a", "b"), ("c", "b"), ("c", "d")])
                .unwrap()
                .poset,
            Poset::build(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")],
            )
            .unwrap()
            .poset,
            Poset::build(
                &["a", "b", "c", "d", "e"],
                &[("a", "b"), ("b", "e"), ("c", "b"), ("c", "d"), ("d", "e")],
            )
            .unwrap()
            .poset,
        ];
        for p in &shapes {
            let covers: Vec<(String, String)> = p
                .covers()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            for subset in 0u32..(1 << covers.len()) {
                let chosen: Vec<(String, String)> = covers
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| subset & (1 << i) != 0)
                    .map(|(_, c)| c.clone())
                    .collect();
                if p.is_face_partition(&chosen).unwrap() {
                    assert!(
                        p.interval_closed(&chosen).unwrap(),
                        "subset {:?} of {:?}",
                        chosen,
                        p.labels()
                    );
                }
            }
        }
    }

    #[test]
    fn interval_condition_is_strictly_weaker_on_crossing_covers() {
        // Oriented K_{2,2}: contracting {(a,b),(c,d)} links the two
        // components in a directed cycle, which forces the two cross covers
        // equal as well, so this subset does not arise from a face. The
        // interval condition alone does not see it.
        let p = Poset::build(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "d"), ("c", "b"), ("c", "d")],
        )
        .unwrap()
        .poset;
        let chosen = [("a", "b"), ("c", "d")];
        assert!(p.interval_closed(&chosen).unwrap());
        assert!(!p.is_face_partition(&chosen).unwrap());
    }

    #[test]
    fn quotient_identity_and_single_contraction() {
        let c3 = chain(3);
        let empty: Vec<(&str, &str)> = vec![];
        let (q, map) = c3.quotient_by_covers(&empty).unwrap();
        assert_eq!(q.labels(), c3.labels());
        assert_eq!(map, vec![0, 1, 2]);

        let (q, map) = c3.quotient_by_covers(&[("x1", "x2")]).unwrap();
        assert_eq!(q.labels(), &["x1x2".to_string(), "x3".to_string()]);
        assert_eq!(map, vec![0, 0, 1]);
        assert!(q.leq("x1x2", "x3").unwrap());
    }

    #[test]
    fn quotient_preserves_order() {
        let shapes = [diamond(), chain(4)];
        for p in &shapes {
            let covers: Vec<(String, String)> = p
                .covers()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect();
            for subset in 0u32..(1 << covers.len()) {
                let chosen: Vec<(String, String)> = covers
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| subset & (1 << i) != 0)
                    .map(|(_, c)| c.clone())
                    .collect();
                if !p.is_face_partition(&chosen).unwrap() {
                    continue;
                }
                let (q, map) = p.quotient_by_covers(&chosen).unwrap();
                for a in 0..p.len() {
                    for b in 0..p.len() {
                        if p.leq_idx(a, b) {
                            assert!(q.leq_idx(map[a], map[b]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn topo_order_is_a_linear_extension() {
        let d = diamond();
        let order = d.topo_order();
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[pos + 1..] {
                assert!(!d.leq_idx(j, i) || i == j);
            }
        }
    }
}

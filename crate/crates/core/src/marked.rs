//! Counting integer order-preserving extensions of marked posets.
//!
//! A [`Marking`] fixes integer values on a subposet `A` that contains every
//! minimal and maximal element. The number of integer extensions to the whole
//! poset is computed by summing, over all chains of order ideals compatible
//! with the marking, a product of binomial factors: a gap between consecutive
//! marker values `t_j < t_{j+1}` crossed by `d` intermediate blocks
//! contributes `C(t_{j+1} - t_j - 1, d)`. The same walk with symbolic factors
//! produces the cell polynomial, which is what reciprocity evaluates at the
//! negated marking.
//!
//! Every counting routine here is exact; brute-force counterparts
//! ([`Marking::count_extensions_bruteforce`], strict counting, chain-polytope
//! counting) stay independent of the chain-walk path so they can serve as
//! oracles.

use std::collections::{BTreeMap, HashMap};

use num::traits::{One, Zero};
use thiserror::Error;

use crate::poly::{rising_binomial, Int, LinForm, MultiPoly, PolyError, Rat};
use crate::poset::{Mask, Poset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MarkingError {
    #[error("MissingExtremes({0})")]
    MissingExtremes(String),
    #[error("NotOrderPreserving({0},{1})")]
    NotOrderPreserving(String, String),
    #[error("DuplicateMarker({0})")]
    DuplicateMarker(String),
    #[error("InvalidCell({0})")]
    InvalidCell(String),
    #[error("NotAChain({0},{1})")]
    NotAChain(String, String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A poset together with integer values on a marked subposet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marking {
    poset: Poset,
    values: BTreeMap<usize, i64>,
}

/// The cell of the marking inside the order cone of `A`: the chain of level
/// sets of the marking, listed as blocks of equal value in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSignature {
    blocks: Vec<Vec<String>>,
}

/// Gap coordinates of a chain marking: `mu_0 = lambda(a_0)` and
/// `mu_i = lambda(a_i) - lambda(a_{i-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuCoords {
    pub mu: Vec<i64>,
}

impl CellSignature {
    pub fn new(blocks: Vec<Vec<String>>) -> Self {
        CellSignature { blocks }
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    /// Blocks resolved to masks, checking that the cumulative unions are
    /// order ideals of the induced subposet on the union of all blocks.
    fn level_masks(&self, poset: &Poset) -> Result<Vec<Mask>, MarkingError> {
        let mut masks = Vec::with_capacity(self.blocks.len());
        let mut seen: Mask = 0;
        for block in &self.blocks {
            if block.is_empty() {
                return Err(MarkingError::InvalidCell("empty block".into()));
            }
            let mut m: Mask = 0;
            for label in block {
                let i = poset.index_of(label)?;
                if (seen | m) & (1 << i) != 0 {
                    return Err(MarkingError::InvalidCell(format!(
                        "repeated element {label}"
                    )));
                }
                m |= 1 << i;
            }
            masks.push(m);
            seen |= m;
        }
        let marked = seen;
        let mut cumulative: Mask = 0;
        for &m in &masks {
            cumulative |= m;
            // downward closed within the marked subposet
            let mut rest = cumulative;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if poset.below_mask(i) & marked & !cumulative != 0 {
                    return Err(MarkingError::InvalidCell(format!(
                        "not an ideal chain of the marked subposet at {}",
                        poset.label(i)
                    )));
                }
            }
        }
        Ok(masks)
    }

    pub fn is_strict(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

impl std::fmt::Display for CellSignature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect();
        write!(f, "{}", parts.join(" < "))
    }
}

impl Marking {
    pub fn new<S: AsRef<str>>(poset: Poset, values: &[(S, i64)]) -> Result<Self, MarkingError> {
        let mut map = BTreeMap::new();
        for (label, v) in values {
            let i = poset.index_of(label.as_ref())?;
            if map.insert(i, *v).is_some() {
                return Err(MarkingError::DuplicateMarker(label.as_ref().to_string()));
            }
        }
        Ok(Marking { poset, values: map })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn marked_mask(&self) -> Mask {
        self.values.keys().fold(0, |m, &i| m | (1 << i))
    }

    pub fn marked_labels(&self) -> Vec<String> {
        self.values
            .keys()
            .map(|&i| self.poset.label(i).to_string())
            .collect()
    }

    pub fn value_of(&self, label: &str) -> Result<Option<i64>, MarkingError> {
        let i = self.poset.index_of(label)?;
        Ok(self.values.get(&i).copied())
    }

    pub fn marker_values(&self) -> impl Iterator<Item = (&str, i64)> {
        self.values
            .iter()
            .map(move |(&i, &v)| (self.poset.label(i), v))
    }

    /// Scale all marker values by `n`.
    pub fn dilate(&self, n: i64) -> Marking {
        Marking {
            poset: self.poset.clone(),
            values: self.values.iter().map(|(&i, &v)| (i, v * n)).collect(),
        }
    }

    /// Negate all marker values.
    pub fn negate(&self) -> Marking {
        self.dilate(-1)
    }

    /// Both marking invariants: the marked set contains every minimal and
    /// maximal element, and the values are order preserving on it.
    pub fn validate(&self) -> Result<(), MarkingError> {
        let marked = self.marked_mask();
        let extremes = self.poset.minimal_mask() | self.poset.maximal_mask();
        let missing = extremes & !marked;
        if missing != 0 {
            let i = missing.trailing_zeros() as usize;
            return Err(MarkingError::MissingExtremes(
                self.poset.label(i).to_string(),
            ));
        }
        for (&a, &va) in &self.values {
            for (&b, &vb) in &self.values {
                if a != b && self.poset.leq_idx(a, b) && va > vb {
                    return Err(MarkingError::NotOrderPreserving(
                        self.poset.label(a).to_string(),
                        self.poset.label(b).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Marker level sets by increasing value.
    fn levels(&self) -> Vec<(i64, Mask)> {
        let mut by_value: BTreeMap<i64, Mask> = BTreeMap::new();
        for (&i, &v) in &self.values {
            *by_value.entry(v).or_insert(0) |= 1 << i;
        }
        by_value.into_iter().collect()
    }

    /// The number of integer order-preserving maps on the whole poset that
    /// agree with the marking, via the compatible-chain sum.
    pub fn count_extensions(&self) -> Result<Int, MarkingError> {
        self.validate()?;
        if self.poset.is_empty() {
            return Ok(Int::one());
        }
        let levels = self.levels();
        let masks: Vec<Mask> = levels.iter().map(|&(_, m)| m).collect();
        let deltas: Vec<i64> = levels.windows(2).map(|w| w[1].0 - w[0].0).collect();
        Ok(chain_sum(&self.poset, &masks, &NumericGaps { deltas }))
    }

    /// Definitional oracle: enumerate all integer extensions directly along a
    /// linear extension with bound propagation.
    pub fn count_extensions_bruteforce(&self) -> Result<Int, MarkingError> {
        self.brute_count(false)
    }

    /// Strict extensions: equalities along strict relations are only allowed
    /// when sandwiched between equal-valued markers.
    pub fn count_strict_extensions(&self) -> Result<Int, MarkingError> {
        self.brute_count(true)
    }

    fn brute_count(&self, strict: bool) -> Result<Int, MarkingError> {
        self.validate()?;
        let n = self.poset.len();
        if n == 0 {
            return Ok(Int::one());
        }
        let marked = self.marked_mask();
        // static marker bounds below and above every element
        let mut static_lb = vec![i64::MIN; n];
        let mut static_ub = vec![i64::MAX; n];
        for p in 0..n {
            for (&a, &va) in &self.values {
                if self.poset.leq_idx(a, p) {
                    static_lb[p] = static_lb[p].max(va);
                }
                if self.poset.leq_idx(p, a) {
                    static_ub[p] = static_ub[p].min(va);
                }
            }
        }
        let excused = if strict {
            self.excused_pairs()
        } else {
            Vec::new()
        };
        let topo = self.poset.topo_order();
        let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in self.poset.cover_indices() {
            lower_covers[v].push(u);
        }
        struct Search<'a> {
            marking: &'a Marking,
            topo: Vec<usize>,
            lower_covers: Vec<Vec<usize>>,
            static_lb: Vec<i64>,
            static_ub: Vec<i64>,
            marked: Mask,
            strict: bool,
            excused: Vec<Vec<bool>>,
        }
        impl Search<'_> {
            fn count_from(&self, pos: usize, assigned: &mut Vec<i64>) -> Int {
                if pos == self.topo.len() {
                    return Int::one();
                }
                let p = self.topo[pos];
                let mut lb = self.static_lb[p];
                for &q in &self.lower_covers[p] {
                    let step = if self.strict && !self.excused[q][p] {
                        1
                    } else {
                        0
                    };
                    lb = lb.max(assigned[q] + step);
                }
                let mut total = Int::zero();
                if self.marked & (1 << p) != 0 {
                    let v = self.marking.values[&p];
                    if v >= lb {
                        assigned[p] = v;
                        total += self.count_from(pos + 1, assigned);
                    }
                } else {
                    for v in lb..=self.static_ub[p] {
                        assigned[p] = v;
                        total += self.count_from(pos + 1, assigned);
                    }
                }
                total
            }
        }
        let search = Search {
            marking: self,
            topo,
            lower_covers,
            static_lb,
            static_ub,
            marked,
            strict,
            excused,
        };
        let mut assigned = vec![0i64; n];
        Ok(search.count_from(0, &mut assigned))
    }

    /// `excused[q][p]`: an equality `phi(q) = phi(p)` across `q < p` is
    /// permitted because some pair of equal-valued markers sandwiches it.
    /// Checking covers suffices: equal values propagate along the chain and
    /// the witnessing markers compose.
    fn excused_pairs(&self) -> Vec<Vec<bool>> {
        let n = self.poset.len();
        let mut excused = vec![vec![false; n]; n];
        for (&a, &va) in &self.values {
            for (&b, &vb) in &self.values {
                if va != vb {
                    continue;
                }
                let above_a = self.poset.above_mask(a);
                let below_b = self.poset.below_mask(b);
                for (q, row) in excused.iter_mut().enumerate() {
                    if above_a & (1 << q) == 0 {
                        continue;
                    }
                    for (p, flag) in row.iter_mut().enumerate() {
                        if below_b & (1 << p) != 0 {
                            *flag = true;
                        }
                    }
                }
            }
        }
        excused
    }

    /// Dimension of the marked order polytope: the number of elements not
    /// sandwiched between equal-valued markers (markers sandwich themselves).
    pub fn dimension(&self) -> Result<usize, MarkingError> {
        self.validate()?;
        Ok(self.poset.len() - self.sandwiched_mask().count_ones() as usize)
    }

    fn sandwiched_mask(&self) -> Mask {
        let mut sandwiched: Mask = 0;
        for (&a, &va) in &self.values {
            for (&b, &vb) in &self.values {
                if va == vb && self.poset.leq_idx(a, b) {
                    sandwiched |= self.poset.above_mask(a) & self.poset.below_mask(b);
                }
            }
        }
        sandwiched
    }

    /// The cell of the order cone of `A` whose relative interior contains the
    /// marking: level sets in increasing value order.
    pub fn cell_of(&self) -> Result<CellSignature, MarkingError> {
        self.validate()?;
        let blocks = self
            .levels()
            .into_iter()
            .map(|(_, m)| self.poset.mask_labels(m))
            .collect();
        Ok(CellSignature::new(blocks))
    }

    /// `(-1)^dim * poly(-lambda)` for the cell polynomial of this marking;
    /// by reciprocity this equals the number of strict extensions.
    pub fn reciprocity_count(&self) -> Result<Int, MarkingError> {
        let dim = self.dimension()?;
        let cell = self.cell_of()?;
        let poly = symbolic_polynomial(&self.poset, &self.marked_labels(), &cell)?;
        let point: BTreeMap<String, Rat> = self
            .values
            .iter()
            .map(|(&i, &v)| {
                (
                    self.poset.label(i).to_string(),
                    Rat::from_integer(Int::from(-v)),
                )
            })
            .collect();
        let value = poly.eval(&point)?;
        if !value.denom().is_one() {
            unreachable!("cell polynomial takes integer values at integer markings");
        }
        let signed = if dim % 2 == 0 {
            value.numer().clone()
        } else {
            -value.numer().clone()
        };
        Ok(signed)
    }

    /// Lattice points of the marked chain polytope: nonnegative integer maps
    /// whose sums along chains between markers respect the marker gaps.
    pub fn count_chain_polytope_points(&self) -> Result<Int, MarkingError> {
        self.validate()?;
        let n = self.poset.len();
        if n == 0 {
            return Ok(Int::one());
        }
        // constraints: for every marker pair a <= b, each saturated chain of
        // [a, b] gives  sum phi <= lambda(b) - lambda(a)
        let mut constraints: Vec<(Mask, i64)> = Vec::new();
        for (&a, &va) in &self.values {
            for (&b, &vb) in &self.values {
                if !self.poset.leq_idx(a, b) {
                    continue;
                }
                let bound = vb - va;
                let interval = self.poset.above_mask(a) & self.poset.below_mask(b);
                let mut stack = vec![(a, 1u128 << a)];
                while let Some((u, mask)) = stack.pop() {
                    if u == b {
                        constraints.push((mask, bound));
                        continue;
                    }
                    for &(x, y) in self.poset.cover_indices() {
                        if x == u && interval & (1 << y) != 0 {
                            stack.push((y, mask | (1 << y)));
                        }
                    }
                }
            }
        }
        constraints.sort_unstable();
        constraints.dedup();
        // per-element cap from singleton participation
        let mut cap = vec![i64::MAX; n];
        for &(mask, bound) in &constraints {
            let mut rest = mask;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                cap[i] = cap[i].min(bound);
            }
        }
        if cap.contains(&i64::MAX) {
            // every element lies between markers, so this cannot happen for a
            // valid marking
            unreachable!("element not covered by any marker chain");
        }
        fn rec(
            p: usize,
            n: usize,
            cap: &[i64],
            constraints: &[(Mask, i64)],
            slack: &mut Vec<i64>,
        ) -> Int {
            if p == n {
                return Int::one();
            }
            let mut total = Int::zero();
            let mut vmax = cap[p];
            for (ci, &(mask, _)) in constraints.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    vmax = vmax.min(slack[ci]);
                }
            }
            for v in 0..=vmax {
                for (ci, &(mask, _)) in constraints.iter().enumerate() {
                    if mask & (1 << p) != 0 {
                        slack[ci] -= v;
                    }
                }
                total += rec(p + 1, n, cap, constraints, slack);
                for (ci, &(mask, _)) in constraints.iter().enumerate() {
                    if mask & (1 << p) != 0 {
                        slack[ci] += v;
                    }
                }
            }
            total
        }
        let mut slack: Vec<i64> = constraints.iter().map(|&(_, b)| b).collect();
        Ok(rec(0, n, &cap, &constraints, &mut slack))
    }

    /// Gap coordinates for a chain marking.
    pub fn mu_coords(&self) -> Result<MuCoords, MarkingError> {
        self.validate()?;
        let chain = chain_order(&self.poset, &self.marked_labels())?;
        let vals: Vec<i64> = chain.iter().map(|&i| self.values[&i]).collect();
        let mut mu = Vec::with_capacity(vals.len());
        if let Some(&first) = vals.first() {
            mu.push(first);
            for w in vals.windows(2) {
                mu.push(w[1] - w[0]);
            }
        }
        Ok(MuCoords { mu })
    }
}

/// Sort marker labels into chain order, failing on an incomparable pair.
fn chain_order(poset: &Poset, labels: &[String]) -> Result<Vec<usize>, MarkingError> {
    let mut idx: Vec<usize> = Vec::with_capacity(labels.len());
    for l in labels {
        idx.push(poset.index_of(l)?);
    }
    for (k, &a) in idx.iter().enumerate() {
        for &b in &idx[k + 1..] {
            if !poset.leq_idx(a, b) && !poset.leq_idx(b, a) {
                return Err(MarkingError::NotAChain(
                    poset.label(a).to_string(),
                    poset.label(b).to_string(),
                ));
            }
        }
    }
    idx.sort_by_key(|&i| poset.below_mask(i).count_ones());
    Ok(idx)
}

// ---------------------------------------------------------------------------
// The compatible-chain walk, shared by numeric and symbolic counting.
// ---------------------------------------------------------------------------

trait GapAlgebra {
    type Value: Clone;
    fn one(&self) -> Self::Value;
    fn zero(&self) -> Self::Value;
    fn add_assign(&self, acc: &mut Self::Value, v: Self::Value);
    /// `value * C(gap width - 1, d) * paths`, or None when the factor is 0.
    fn close_gap(
        &self,
        value: &Self::Value,
        gap: usize,
        d: usize,
        paths: &Int,
    ) -> Option<Self::Value>;
    /// Largest useful number of intermediate blocks for a gap.
    fn max_d(&self, gap: usize) -> Option<usize>;
}

struct NumericGaps {
    deltas: Vec<i64>,
}

impl GapAlgebra for NumericGaps {
    type Value = Int;

    fn one(&self) -> Int {
        Int::one()
    }

    fn zero(&self) -> Int {
        Int::zero()
    }

    fn add_assign(&self, acc: &mut Int, v: Int) {
        *acc += v;
    }

    fn close_gap(&self, value: &Int, gap: usize, d: usize, paths: &Int) -> Option<Int> {
        let delta = self.deltas[gap];
        let factor = crate::poly::binomial(delta - 1, d);
        if factor.is_zero() {
            return None;
        }
        Some(value * factor * paths)
    }

    fn max_d(&self, gap: usize) -> Option<usize> {
        Some((self.deltas[gap] - 1).max(0) as usize)
    }
}

struct SymbolicGaps {
    vars: Vec<String>,
    reps: Vec<String>,
}

impl GapAlgebra for SymbolicGaps {
    type Value = MultiPoly;

    fn one(&self) -> MultiPoly {
        MultiPoly::constant_int(&self.vars, 1)
    }

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(&self.vars)
    }

    fn add_assign(&self, acc: &mut MultiPoly, v: MultiPoly) {
        *acc = acc.add(&v).expect("shared universe");
    }

    fn close_gap(&self, value: &MultiPoly, gap: usize, d: usize, paths: &Int) -> Option<MultiPoly> {
        // C(delta - 1, d) with delta = x_upper - x_lower, written as the
        // rising binomial C(t + d, d) at t = delta - 1 - d
        let form = LinForm::difference(&self.reps[gap + 1], &self.reps[gap], -1 - d as i64);
        let factor = rising_binomial(&self.vars, &form, d).expect("universe");
        Some(value.mul(&factor).expect("universe").scale_int(paths))
    }

    fn max_d(&self, _gap: usize) -> Option<usize> {
        None
    }
}

/// Sum the gap-factor products over every chain of order ideals compatible
/// with the marker levels. States that share an ideal prefix are merged, so
/// the walk is a DP over (ideal, level) rather than a raw enumeration.
fn chain_sum<A: GapAlgebra>(poset: &Poset, levels: &[Mask], algebra: &A) -> A::Value {
    let full = poset.full_mask();
    if levels.is_empty() {
        // no markers means an empty poset (extremes are always marked)
        return algebra.one();
    }
    let marked: Mask = levels.iter().fold(0, |m, &l| m | l);
    let free = full & !marked;

    let mut frontier: HashMap<Mask, A::Value> = HashMap::new();
    for block in marker_blocks(poset, 0, levels[0], free) {
        merge(&mut frontier, block, algebra.one(), algebra);
    }

    for gap in 0..levels.len() - 1 {
        let mut next: HashMap<Mask, A::Value> = HashMap::new();
        for (ideal, value) in frontier.drain() {
            let mut depth: HashMap<Mask, Int> = HashMap::new();
            depth.insert(ideal, Int::one());
            let mut d = 0usize;
            loop {
                for (&k, paths) in &depth {
                    for block in marker_blocks(poset, k, levels[gap + 1], free) {
                        if let Some(v) = algebra.close_gap(&value, gap, d, paths) {
                            merge(&mut next, k | block, v, algebra);
                        }
                    }
                }
                if let Some(cap) = algebra.max_d(gap) {
                    if d >= cap {
                        break;
                    }
                }
                let mut deeper: HashMap<Mask, Int> = HashMap::new();
                for (&k, paths) in &depth {
                    for f in poset.ideal_blocks(k, free & !k) {
                        *deeper.entry(k | f).or_insert_with(Int::zero) += paths;
                    }
                }
                if deeper.is_empty() {
                    break;
                }
                depth = deeper;
                d += 1;
            }
        }
        frontier = next;
    }

    frontier.remove(&full).unwrap_or_else(|| algebra.zero())
}

fn merge<A: GapAlgebra>(map: &mut HashMap<Mask, A::Value>, key: Mask, v: A::Value, algebra: &A) {
    match map.entry(key) {
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::hash_map::Entry::Occupied(mut e) => {
            algebra.add_assign(e.get_mut(), v);
        }
    }
}

/// Blocks that place the given marker level on top of `base`: the markers
/// plus any free elements that keep the union an ideal.
fn marker_blocks(poset: &Poset, base: Mask, markers: Mask, free: Mask) -> Vec<Mask> {
    debug_assert_eq!(base & markers, 0);
    let cands = free & !base;
    let mut bits = Vec::new();
    let mut rest = cands;
    while rest != 0 {
        bits.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    let mut out = Vec::new();
    for sub in 0u64..(1u64 << bits.len()) {
        let mut f: Mask = 0;
        for (k, &bit) in bits.iter().enumerate() {
            if sub & (1 << k) != 0 {
                f |= 1 << bit;
            }
        }
        let block = markers | f;
        if poset.is_ideal(base | block) {
            out.push(block);
        }
    }
    out.sort_unstable();
    out
}

/// The polynomial in the marker variables that equals the extension count on
/// every integer marking whose cell is `cell`. Variables are one per marked
/// element, in element order; within a cell block the first element acts as
/// the representative for the gap forms.
pub fn symbolic_polynomial(
    poset: &Poset,
    marked: &[String],
    cell: &CellSignature,
) -> Result<MultiPoly, MarkingError> {
    let mut marked_mask: Mask = 0;
    for label in marked {
        marked_mask |= 1 << poset.index_of(label)?;
    }
    let extremes = poset.minimal_mask() | poset.maximal_mask();
    if extremes & !marked_mask != 0 {
        let i = (extremes & !marked_mask).trailing_zeros() as usize;
        return Err(MarkingError::MissingExtremes(poset.label(i).to_string()));
    }
    let levels = cell.level_masks(poset)?;
    let cell_mask: Mask = levels.iter().fold(0, |m, &l| m | l);
    if cell_mask != marked_mask {
        return Err(MarkingError::InvalidCell(
            "cell blocks do not partition the marked set".into(),
        ));
    }
    // variables in element order
    let mut vars: Vec<String> = Vec::new();
    for i in 0..poset.len() {
        if marked_mask & (1 << i) != 0 {
            vars.push(poset.label(i).to_string());
        }
    }
    let reps: Vec<String> = levels
        .iter()
        .map(|&m| poset.label(m.trailing_zeros() as usize).to_string())
        .collect();
    if poset.is_empty() {
        return Ok(MultiPoly::constant_int(&vars, 1));
    }
    let algebra = SymbolicGaps { vars, reps };
    Ok(chain_sum(poset, &levels, &algebra))
}

/// Degrees of the cell polynomial of a chain marking in the gap coordinates
/// `mu_1, ..., mu_k`, computed by substituting `x_{a_i} = mu_0 + ... + mu_i`.
pub fn mu_degrees(
    poset: &Poset,
    marked: &[String],
    cell: &CellSignature,
) -> Result<Vec<u32>, MarkingError> {
    let chain = chain_order(poset, marked)?;
    if !cell.is_strict() {
        return Err(MarkingError::InvalidCell(
            "gap degrees need a strict cell".into(),
        ));
    }
    let f = symbolic_polynomial(poset, marked, cell)?;
    let mu_vars: Vec<String> = (0..chain.len()).map(|i| format!("mu{i}")).collect();
    let mut images: BTreeMap<String, MultiPoly> = BTreeMap::new();
    for (i, &elem) in chain.iter().enumerate() {
        let mut acc = MultiPoly::zero(&mu_vars);
        for var in mu_vars.iter().take(i + 1) {
            acc = acc.add(&MultiPoly::var(&mu_vars, var)?)?;
        }
        images.insert(poset.label(elem).to_string(), acc);
    }
    let g = f.substitute(&images, &mu_vars)?;
    let mut out = Vec::with_capacity(chain.len().saturating_sub(1));
    for i in 1..chain.len() {
        out.push(g.degree_in(&format!("mu{i}"))?);
    }
    Ok(out)
}

/// `|P \ (P_{<= a_{i-1}} union P_{>= a_i})|` for each gap of a chain marking:
/// the contracted value of [`mu_degrees`].
pub fn mu_degree_formula(poset: &Poset, marked: &[String]) -> Result<Vec<usize>, MarkingError> {
    let chain = chain_order(poset, marked)?;
    let mut out = Vec::with_capacity(chain.len().saturating_sub(1));
    for i in 1..chain.len() {
        let covered = poset.below_mask(chain[i - 1]) | poset.above_mask(chain[i]);
        out.push(poset.len() - covered.count_ones() as usize);
    }
    Ok(out)
}

/// Does the affine slice of the marking meet the face of this face partition
/// in the relative interior? Condition i): components of markers with
/// strictly ordered values have disjoint down/up hulls; condition ii): equal
/// comparable markers share a component.
pub fn check_compatible_face_partition<S: AsRef<str>>(
    marking: &Marking,
    covers: &[(S, S)],
) -> Result<bool, MarkingError> {
    marking.validate()?;
    let fp = marking.poset().face_partition(covers)?;
    let poset = marking.poset();
    let n = poset.len();
    let ncomp = fp.component_count();
    let mut down_hull: Vec<Mask> = vec![0; ncomp];
    let mut up_hull: Vec<Mask> = vec![0; ncomp];
    for p in 0..n {
        down_hull[fp.component_of(p)] |= poset.below_mask(p);
        up_hull[fp.component_of(p)] |= poset.above_mask(p);
    }
    for (a, va) in marking.marker_values() {
        for (b, vb) in marking.marker_values() {
            let ai = poset.index_of(a)?;
            let bi = poset.index_of(b)?;
            let ca = fp.component_of(ai);
            let cb = fp.component_of(bi);
            if va < vb && down_hull[ca] & up_hull[cb] != 0 {
                return Ok(false);
            }
            if va == vb && ai != bi && (poset.leq_idx(ai, bi) || poset.leq_idx(bi, ai)) && ca != cb
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

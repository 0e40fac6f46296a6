//! Monotone triangles over Gelfand-Tsetlin posets.
//!
//! A monotone triangle with bottom row `k` is an integer triangular array
//! that weakly increases along both diagonal directions and strictly
//! increases inside interior rows. Counting them for weakly increasing `k`
//! goes two ways here:
//! - [`count_mt_direct`]: row-by-row enumeration (the oracle), and
//! - [`alpha_via_moebius`]: the alternating sum of marked-poset extension
//!   counts over quotients of `GT_n` by essential diamond sets.
//!
//! The signed enumeration of decreasing monotone triangles
//! ([`signed_dmt_sum`]) evaluates the same polynomial at weakly decreasing
//! arguments; [`alpha_polynomial`] builds that polynomial symbolically.

use std::collections::{BTreeMap, HashMap};

use num::traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::marked::{symbolic_polynomial, CellSignature, Marking, MarkingError};
use crate::poly::{Int, MultiPoly, PolyError};
use crate::poset::{Poset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangleError {
    #[error("NotIncreasing")]
    NotIncreasing,
    #[error("NotDecreasing")]
    NotDecreasing,
    #[error("NotADMT")]
    NotADmt,
    #[error("WrongLength({0},{1})")]
    WrongLength(usize, usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Marking(#[from] MarkingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Triangular integer array, rows listed top to bottom; row `i` (1-based)
/// has `i` entries. Monotonicity is checked by the classification methods,
/// not at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl Triangle {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, TriangleError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(TriangleError::WrongLength(i + 1, row.len()));
            }
        }
        Ok(Triangle { n, rows })
    }

    pub fn bottom_row(&self) -> &[i64] {
        &self.rows[self.n - 1]
    }

    /// Weak increase along both diagonals, strict increase inside every row
    /// above the bottom.
    pub fn is_monotone(&self) -> bool {
        let n = self.n;
        for i in 2..=n {
            for j in 1..i {
                // entry (i, j) below entry (i-1, j)
                if self.rows[i - 1][j - 1] > self.rows[i - 2][j - 1] {
                    return false;
                }
            }
        }
        for i in 1..n {
            for j in 1..=i {
                if self.rows[i - 1][j - 1] > self.rows[i][j] {
                    return false;
                }
            }
        }
        for i in 1..n {
            for j in 1..i {
                if self.rows[i - 1][j - 1] >= self.rows[i - 1][j] {
                    return false;
                }
            }
        }
        true
    }

    /// The four decreasing-triangle conditions: weak decrease along both
    /// diagonals, no three identical entries in a row, and no integer
    /// appearing exactly once in each of two consecutive rows.
    pub fn is_decreasing_monotone(&self) -> bool {
        let n = self.n;
        for i in 2..=n {
            for j in 1..i {
                if self.rows[i - 1][j - 1] < self.rows[i - 2][j - 1] {
                    return false;
                }
            }
        }
        for i in 1..n {
            for j in 1..=i {
                if self.rows[i - 1][j - 1] < self.rows[i][j] {
                    return false;
                }
            }
        }
        for row in &self.rows {
            if has_triple(row) {
                return false;
            }
        }
        for i in 0..n.saturating_sub(1) {
            if violates_single_single(&self.rows[i], &self.rows[i + 1]) {
                return false;
            }
        }
        true
    }

    /// Duplicate-descendants: adjacent identical pairs that sit in the last
    /// row or whose value appears as a pair again in the row below.
    pub fn duplicate_descendants(&self) -> Result<usize, TriangleError> {
        if !self.is_decreasing_monotone() {
            return Err(TriangleError::NotADmt);
        }
        let mut count = 0;
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..row.len().saturating_sub(1) {
                if row[j] != row[j + 1] {
                    continue;
                }
                let v = row[j];
                if i + 1 == self.n {
                    count += 1;
                } else {
                    let below = &self.rows[i + 1];
                    if below.iter().filter(|&&x| x == v).count() == 2 {
                        count += 1;
                    }
                }
            }
        }
        Ok(count)
    }
}

fn has_triple(row: &[i64]) -> bool {
    row.windows(3).any(|w| w[0] == w[1] && w[1] == w[2])
}

fn violates_single_single(upper: &[i64], lower: &[i64]) -> bool {
    for &v in upper {
        if upper.iter().filter(|&&x| x == v).count() == 1
            && lower.iter().filter(|&&x| x == v).count() == 1
        {
            return true;
        }
    }
    false
}

pub fn gt_label(i: usize, j: usize) -> String {
    format!("{i},{j}")
}

/// The Gelfand-Tsetlin poset of order `n`: elements `(i, j)` with
/// `1 <= j <= i <= n`, covers `(i,j) < (i-1,j)` and `(i,j) < (i+1,j+1)`.
/// The bottom row `(n,1), ..., (n,n)` is the marked chain.
pub fn gt_poset(n: usize) -> Poset {
    let mut labels = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            labels.push(gt_label(i, j));
        }
    }
    let mut covers = Vec::new();
    for i in 1..=n {
        for j in 1..=i {
            if j < i {
                covers.push((gt_label(i, j), gt_label(i - 1, j)));
            }
            if i < n {
                covers.push((gt_label(i, j), gt_label(i + 1, j + 1)));
            }
        }
    }
    let built = Poset::build(&labels, &covers).expect("GT covers form a Hasse diagram");
    debug_assert!(built.removed_covers.is_empty());
    built.poset
}

/// Marked bottom-row labels of `GT_n`.
pub fn gt_marked_labels(n: usize) -> Vec<String> {
    (1..=n).map(|j| gt_label(n, j)).collect()
}

/// The bottom-row marking of `GT_n` by `k`.
pub fn gt_marking(n: usize, k: &[i64]) -> Result<Marking, TriangleError> {
    check_len(n, k)?;
    let values: Vec<(String, i64)> = (1..=n).map(|j| (gt_label(n, j), k[j - 1])).collect();
    Ok(Marking::new(gt_poset(n), &values)?)
}

fn check_len(n: usize, k: &[i64]) -> Result<(), TriangleError> {
    if k.len() != n {
        return Err(TriangleError::WrongLength(n, k.len()));
    }
    Ok(())
}

fn check_increasing(n: usize, k: &[i64]) -> Result<(), TriangleError> {
    check_len(n, k)?;
    if k.windows(2).any(|w| w[0] > w[1]) {
        return Err(TriangleError::NotIncreasing);
    }
    Ok(())
}

fn check_decreasing(n: usize, k: &[i64]) -> Result<(), TriangleError> {
    check_len(n, k)?;
    if k.windows(2).any(|w| w[0] < w[1]) {
        return Err(TriangleError::NotDecreasing);
    }
    Ok(())
}

/// Count monotone triangles with bottom row `k` by row-by-row enumeration.
/// This is the oracle side of the Moebius formula.
pub fn count_mt_direct(n: usize, k: &[i64]) -> Result<Int, TriangleError> {
    check_increasing(n, k)?;
    let mut memo: HashMap<Vec<i64>, Int> = HashMap::new();
    fn count(row: &[i64], memo: &mut HashMap<Vec<i64>, Int>) -> Int {
        if row.len() == 1 {
            return Int::one();
        }
        if let Some(hit) = memo.get(row) {
            return hit.clone();
        }
        let mut total = Int::zero();
        let mut above = vec![0i64; row.len() - 1];
        fn rec(
            row: &[i64],
            above: &mut Vec<i64>,
            pos: usize,
            total: &mut Int,
            memo: &mut HashMap<Vec<i64>, Int>,
        ) {
            if pos == above.len() {
                let next = above.clone();
                *total += count(&next, memo);
                return;
            }
            let lo = if pos == 0 {
                row[pos]
            } else {
                row[pos].max(above[pos - 1] + 1)
            };
            for v in lo..=row[pos + 1] {
                above[pos] = v;
                rec(row, above, pos + 1, total, memo);
            }
        }
        rec(row, &mut above, 0, &mut total, memo);
        memo.insert(row.to_vec(), total.clone());
        total
    }
    Ok(count(k, &mut memo))
}

/// Materialize monotone triangles with bottom row `k`, stopping after
/// `limit` of them. Same search as [`count_mt_direct`], kept separate so the
/// counter stays memoized.
pub fn collect_mt(n: usize, k: &[i64], limit: usize) -> Result<Vec<Triangle>, TriangleError> {
    check_increasing(n, k)?;
    let mut out: Vec<Triangle> = Vec::new();
    // rows bottom-up while searching
    fn rec(stack: &mut Vec<Vec<i64>>, n: usize, limit: usize, out: &mut Vec<Triangle>) {
        if out.len() >= limit {
            return;
        }
        if stack.len() == n {
            let mut rows = stack.clone();
            rows.reverse();
            out.push(Triangle { n, rows });
            return;
        }
        let row = stack.last().unwrap().clone();
        let mut above = vec![0i64; row.len() - 1];
        fn fill(
            row: &[i64],
            above: &mut Vec<i64>,
            pos: usize,
            stack: &mut Vec<Vec<i64>>,
            n: usize,
            limit: usize,
            out: &mut Vec<Triangle>,
        ) {
            if out.len() >= limit {
                return;
            }
            if pos == above.len() {
                stack.push(above.clone());
                rec(stack, n, limit, out);
                stack.pop();
                return;
            }
            let lo = if pos == 0 {
                row[pos]
            } else {
                row[pos].max(above[pos - 1] + 1)
            };
            for v in lo..=row[pos + 1] {
                above[pos] = v;
                fill(row, above, pos + 1, stack, n, limit, out);
            }
        }
        fill(&row, &mut above, 0, stack, n, limit, out);
    }
    let mut stack = vec![k.to_vec()];
    if n >= 1 {
        rec(&mut stack, n, limit, &mut out);
    }
    Ok(out)
}

/// Interior positions of `GT_n` whose row-strictness can fail.
pub fn bad_positions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 2..n {
        for j in 1..i {
            out.push((i, j));
        }
    }
    out
}

/// A set of diamond positions with no two horizontally adjacent; these are
/// exactly the intersections with nonzero Moebius value `(-1)^{|I|}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondSet {
    pub n: usize,
    pub positions: Vec<(usize, usize)>,
}

impl DiamondSet {
    pub fn mobius_sign(&self) -> i32 {
        if self.positions.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// The face-partition covers of the union of this set's diamonds. The
    /// diamond at `(i,j)` identifies `a_{i,j} = a_{i,j+1}` and spans the four
    /// elements `(i,j), (i-1,j), (i+1,j+1), (i,j+1)`.
    pub fn covers(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for &(i, j) in &self.positions {
            out.push((gt_label(i, j), gt_label(i - 1, j)));
            out.push((gt_label(i, j), gt_label(i + 1, j + 1)));
            out.push((gt_label(i - 1, j), gt_label(i, j + 1)));
            out.push((gt_label(i + 1, j + 1), gt_label(i, j + 1)));
        }
        out.sort();
        out.dedup();
        out
    }
}

/// All essential diamond sets of `GT_n`, in increasing subset order over the
/// lexicographically sorted positions.
pub fn enumerate_qess(n: usize) -> Vec<DiamondSet> {
    let positions = bad_positions(n);
    let mut out = Vec::new();
    'subsets: for subset in 0u64..(1u64 << positions.len()) {
        let chosen: Vec<(usize, usize)> = positions
            .iter()
            .enumerate()
            .filter(|(b, _)| subset & (1 << b) != 0)
            .map(|(_, &p)| p)
            .collect();
        for &(i, j) in &chosen {
            if chosen.contains(&(i, j + 1)) {
                continue 'subsets;
            }
        }
        out.push(DiamondSet {
            n,
            positions: chosen,
        });
    }
    out
}

/// Covers merging each pair of equal adjacent bottom-row markers with the
/// element between them, completing a diamond set to a face partition
/// compatible with a non-strict bottom row.
fn completion_covers(n: usize, k: &[i64]) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for j in 1..n {
        if k[j - 1] == k[j] {
            out.push((gt_label(n, j), gt_label(n - 1, j)));
            out.push((gt_label(n - 1, j), gt_label(n, j + 1)));
        }
    }
    out
}

/// One signed summand of the Moebius formula: the extension count of the
/// quotient marking, or zero when the quotient merges markers inconsistently
/// or the pushed marking stops being order preserving. The saturating
/// quotient handles bottom rows with triples, where the completed cover set
/// forces further equalities.
fn moebius_summand(
    gt: &Poset,
    n: usize,
    k: &[i64],
    ds: &DiamondSet,
    completions: &[(String, String)],
) -> Result<Int, TriangleError> {
    let mut covers = ds.covers();
    covers.extend_from_slice(completions);
    covers.sort();
    covers.dedup();
    let (q, map) = gt.contraction_quotient(&covers)?;
    let mut values: BTreeMap<String, i64> = BTreeMap::new();
    for j in 1..=n {
        let idx = gt.index_of(&gt_label(n, j))?;
        let class = q.label(map[idx]).to_string();
        if let Some(&prev) = values.get(&class) {
            if prev != k[j - 1] {
                return Ok(Int::zero());
            }
        } else {
            values.insert(class, k[j - 1]);
        }
    }
    let pairs: Vec<(String, i64)> = values.into_iter().collect();
    let marking = Marking::new(q, &pairs)?;
    match marking.validate() {
        Ok(()) => Ok(marking.count_extensions()?),
        Err(MarkingError::NotOrderPreserving(_, _)) => Ok(Int::zero()),
        Err(e) => Err(e.into()),
    }
}

/// The number of monotone triangles with bottom row `k` as the alternating
/// sum over essential diamond sets of quotient extension counts.
pub fn alpha_via_moebius(n: usize, k: &[i64]) -> Result<Int, TriangleError> {
    check_increasing(n, k)?;
    let gt = gt_poset(n);
    let completions = completion_covers(n, k);
    let qess = enumerate_qess(n);
    let terms: Result<Vec<(i32, Int)>, TriangleError> = qess
        .par_iter()
        .map(|ds| {
            Ok((
                ds.mobius_sign(),
                moebius_summand(&gt, n, k, ds, &completions)?,
            ))
        })
        .collect();
    let mut total = Int::zero();
    for (sign, term) in terms? {
        if sign >= 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// The polynomial in `k_1, ..., k_n` that agrees with the monotone-triangle
/// count on strictly increasing bottom rows; evaluating it at weakly
/// decreasing arguments matches the signed DMT enumeration.
pub fn alpha_polynomial(n: usize) -> Result<MultiPoly, TriangleError> {
    let gt = gt_poset(n);
    let target_vars: Vec<String> = (1..=n).map(|j| format!("k{j}")).collect();
    let qess = enumerate_qess(n);
    let terms: Result<Vec<(i32, MultiPoly)>, TriangleError> = qess
        .par_iter()
        .map(|ds| {
            let fp = gt.face_partition(&ds.covers())?;
            let (q, map) = gt.quotient(&fp);
            let mut class_labels = Vec::with_capacity(n);
            for j in 1..=n {
                let idx = gt.index_of(&gt_label(n, j))?;
                class_labels.push(q.label(map[idx]).to_string());
            }
            // marked classes stay distinct for essential diamond sets
            let marked: Vec<String> = {
                let mut v: Vec<(usize, String)> = class_labels
                    .iter()
                    .map(|l| (q.index_of(l).expect("class label"), l.clone()))
                    .collect();
                v.sort();
                v.dedup();
                debug_assert_eq!(v.len(), n);
                v.into_iter().map(|(_, l)| l).collect()
            };
            let cell = CellSignature::new(class_labels.iter().map(|l| vec![l.clone()]).collect());
            let poly = symbolic_polynomial(&q, &marked, &cell)?;
            let rename: BTreeMap<String, String> = class_labels
                .iter()
                .zip(&target_vars)
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect();
            Ok((ds.mobius_sign(), poly.rename_vars(&rename, &target_vars)?))
        })
        .collect();
    let mut total = MultiPoly::zero(&target_vars);
    for (sign, term) in terms? {
        let term = if sign >= 0 { term } else { term.neg() };
        total = total.add(&term)?;
    }
    Ok(total)
}

/// Evaluate [`alpha_polynomial`]'s output at an integer point `k`.
pub fn eval_alpha(poly: &MultiPoly, k: &[i64]) -> Result<Int, TriangleError> {
    let point: BTreeMap<String, i64> = k
        .iter()
        .enumerate()
        .map(|(j, &v)| (format!("k{}", j + 1), v))
        .collect();
    let value = poly.eval_int(&point)?;
    debug_assert!(value.denom().is_one());
    Ok(value.numer().clone())
}

/// Stream all decreasing monotone triangles with bottom row `k`.
pub fn enumerate_dmt(n: usize, k: &[i64]) -> Result<DmtIter, TriangleError> {
    check_decreasing(n, k)?;
    Ok(DmtIter::new(n, k))
}

pub struct DmtIter {
    n: usize,
    // rows bottom-up: rows[0] is the bottom row
    rows: Vec<Vec<i64>>,
    frames: Vec<DmtFrame>,
    dead: bool,
    started: bool,
}

struct DmtFrame {
    candidates: Vec<Vec<i64>>,
    next: usize,
}

impl DmtIter {
    fn new(n: usize, k: &[i64]) -> Self {
        let dead = has_triple(k);
        DmtIter {
            n,
            rows: vec![k.to_vec()],
            frames: Vec::new(),
            dead,
            started: false,
        }
    }

    fn push_frame(&mut self) {
        let top = self.rows.last().unwrap();
        let candidates = rows_above_dmt(top);
        self.frames.push(DmtFrame {
            candidates,
            next: 0,
        });
    }

    fn emit(&self) -> Triangle {
        let mut rows = self.rows.clone();
        rows.reverse();
        Triangle { n: self.n, rows }
    }
}

impl Iterator for DmtIter {
    type Item = Triangle;

    fn next(&mut self) -> Option<Triangle> {
        if self.dead {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 1 {
                self.dead = true;
                return Some(self.emit());
            }
            self.push_frame();
        }
        loop {
            let frame = self.frames.last_mut()?;
            if frame.next >= frame.candidates.len() {
                self.frames.pop();
                self.rows.pop();
                continue;
            }
            let row = frame.candidates[frame.next].clone();
            frame.next += 1;
            self.rows.push(row);
            if self.rows.len() == self.n {
                let t = self.emit();
                self.rows.pop();
                return Some(t);
            }
            self.push_frame();
        }
    }
}

/// Candidate rows above `row` in a decreasing triangle: entrywise between the
/// two lower neighbours, no triple, and no value sitting alone in both rows.
fn rows_above_dmt(row: &[i64]) -> Vec<Vec<i64>> {
    let len = row.len() - 1;
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut cur = vec![0i64; len];
    fn rec(row: &[i64], cur: &mut Vec<i64>, pos: usize, out: &mut Vec<Vec<i64>>) {
        if pos == cur.len() {
            if !violates_single_single(cur, row) {
                out.push(cur.clone());
            }
            return;
        }
        // weak decrease along both diagonals; rows come out weakly
        // decreasing automatically
        let hi = if pos == 0 {
            row[pos]
        } else {
            row[pos].min(cur[pos - 1])
        };
        let lo = row[pos + 1];
        let mut v = hi;
        while v >= lo {
            if pos >= 2 && cur[pos - 2] == v && cur[pos - 1] == v {
                // three identical entries
                v -= 1;
                continue;
            }
            cur[pos] = v;
            rec(row, cur, pos + 1, out);
            v -= 1;
        }
    }
    rec(row, &mut cur, 0, &mut out);
    out
}

/// `(-1)^C(n,2) * sum over decreasing monotone triangles of (-1)^dd`.
pub fn signed_dmt_sum(n: usize, k: &[i64]) -> Result<Int, TriangleError> {
    let mut sum = Int::zero();
    for t in enumerate_dmt(n, k)? {
        let dd = t
            .duplicate_descendants()
            .expect("enumerated DMTs are valid");
        if dd % 2 == 0 {
            sum += Int::one();
        } else {
            sum -= Int::one();
        }
    }
    if (n * (n - 1) / 2) % 2 == 1 {
        sum = -sum;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gt_poset_shapes() {
        let g1 = gt_poset(1);
        assert_eq!(g1.len(), 1);
        let g2 = gt_poset(2);
        assert_eq!(g2.len(), 3);
        let covers: Vec<(String, String)> = g2
            .covers()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert!(covers.contains(&("2,1".to_string(), "1,1".to_string())));
        assert!(covers.contains(&("1,1".to_string(), "2,2".to_string())));
        assert_eq!(covers.len(), 2);
        let g3 = gt_poset(3);
        assert_eq!(g3.len(), 6);
        assert_eq!(g3.cover_indices().len(), 6);
    }

    #[test]
    fn gt_marking_is_valid() {
        let m = gt_marking(3, &[1, 2, 3]).unwrap();
        assert!(m.validate().is_ok());
        assert_eq!(m.count_extensions().unwrap(), Int::from(8));
    }

    #[test]
    fn count_mt_examples() {
        assert_eq!(count_mt_direct(2, &[1, 2]).unwrap(), Int::from(2));
        assert_eq!(count_mt_direct(3, &[1, 2, 3]).unwrap(), Int::from(7));
        assert_eq!(count_mt_direct(3, &[0, 0, 0]).unwrap(), Int::from(0));
        assert_eq!(
            count_mt_direct(3, &[3, 2, 1]).unwrap_err(),
            TriangleError::NotIncreasing
        );
    }

    #[test]
    fn asm_counts() {
        // bottom row 1..n counts alternating sign matrices
        let expected = [1i64, 2, 7, 42];
        for (n, &want) in expected.iter().enumerate().map(|(i, w)| (i + 1, w)) {
            let k: Vec<i64> = (1..=n as i64).collect();
            assert_eq!(count_mt_direct(n, &k).unwrap(), Int::from(want));
        }
    }

    #[test]
    fn collect_matches_count() {
        let all = collect_mt(3, &[1, 2, 3], usize::MAX).unwrap();
        assert_eq!(all.len(), 7);
        for t in &all {
            assert!(t.is_monotone());
            assert_eq!(t.bottom_row(), &[1, 2, 3]);
        }
        let capped = collect_mt(3, &[1, 2, 3], 2).unwrap();
        assert_eq!(capped.len(), 2);
    }

    #[test]
    fn five_row_display_is_monotone() {
        let t = Triangle::new(vec![
            vec![5],
            vec![4, 5],
            vec![3, 5, 7],
            vec![3, 4, 7, 8],
            vec![1, 4, 6, 8, 9],
        ])
        .unwrap();
        assert!(t.is_monotone());
        assert!(!t.is_decreasing_monotone());
    }

    #[test]
    fn diamond_contraction_of_gt3() {
        // contracting the single diamond of GT_3 merges its four elements
        // into one class and leaves a 3-chain
        let gt = gt_poset(3);
        let ds = DiamondSet {
            n: 3,
            positions: vec![(2, 1)],
        };
        let (q, map) = gt.quotient_by_covers(&ds.covers()).unwrap();
        assert_eq!(q.len(), 3);
        let class_of = |label: &str| map[gt.index_of(label).unwrap()];
        assert_eq!(class_of("1,1"), class_of("2,1"));
        assert_eq!(class_of("1,1"), class_of("2,2"));
        assert_eq!(class_of("1,1"), class_of("3,2"));
        assert_ne!(class_of("3,1"), class_of("1,1"));
        assert_ne!(class_of("3,3"), class_of("1,1"));
        // the quotient is the chain (3,1) < class < (3,3)
        let merged = q.label(class_of("1,1")).to_string();
        assert!(q.leq("3,1", &merged).unwrap());
        assert!(q.leq(&merged, "3,3").unwrap());
        // marked by k = (1,2,3) it admits exactly one extension
        let marking = Marking::new(
            q,
            &[("3,1".to_string(), 1), (merged.clone(), 2), ("3,3".to_string(), 3)],
        )
        .unwrap();
        assert_eq!(marking.count_extensions().unwrap(), Int::from(1));
    }

    #[test]
    fn qess_counts() {
        assert_eq!(enumerate_qess(1).len(), 1);
        assert_eq!(enumerate_qess(2).len(), 1);
        assert_eq!(bad_positions(3), vec![(2, 1)]);
        assert_eq!(enumerate_qess(3).len(), 2);
        assert_eq!(bad_positions(4).len(), 3);
        // all 8 subsets minus the 2 containing both (3,1) and (3,2)
        assert_eq!(enumerate_qess(4).len(), 6);
    }

    #[test]
    fn moebius_matches_direct_small() {
        assert_eq!(alpha_via_moebius(3, &[1, 2, 3]).unwrap(), Int::from(7));
        assert_eq!(alpha_via_moebius(3, &[0, 0, 0]).unwrap(), Int::from(0));
        for k2 in 0..=3i64 {
            for k1 in 0..=k2 {
                let k = [k1, k2];
                assert_eq!(
                    alpha_via_moebius(2, &k).unwrap(),
                    Int::from(k2 - k1 + 1),
                    "k = {k:?}"
                );
            }
        }
        // a non-strict row for n = 3
        assert_eq!(
            alpha_via_moebius(3, &[1, 1, 2]).unwrap(),
            count_mt_direct(3, &[1, 1, 2]).unwrap()
        );
    }

    #[test]
    fn alpha_polynomial_small() {
        let p1 = alpha_polynomial(1).unwrap();
        assert_eq!(format!("{p1}"), "1");
        let p2 = alpha_polynomial(2).unwrap();
        assert_eq!(format!("{p2}"), "1*k2 - 1*k1 + 1");
        let p3 = alpha_polynomial(3).unwrap();
        assert_eq!(eval_alpha(&p3, &[1, 2, 3]).unwrap(), Int::from(7));
        // agrees with direct counts on increasing rows
        for k in [[0i64, 1, 2], [0, 0, 3], [1, 3, 5], [2, 2, 2]] {
            assert_eq!(
                eval_alpha(&p3, &k).unwrap(),
                count_mt_direct(3, &k).unwrap(),
                "k = {k:?}"
            );
        }
    }

    #[test]
    fn five_row_dmt_display() {
        let t = Triangle::new(vec![
            vec![3],
            vec![3, 3],
            vec![4, 3, 3],
            vec![4, 4, 3, 2],
            vec![4, 4, 3, 3, 1],
        ])
        .unwrap();
        assert!(t.is_decreasing_monotone());
        assert_eq!(t.duplicate_descendants().unwrap(), 4);
        // and the enumeration with that bottom row produces it
        let all: Vec<Triangle> = enumerate_dmt(5, &[4, 4, 3, 3, 1]).unwrap().collect();
        assert!(all.contains(&t));
    }

    #[test]
    fn dmt_constant_pair() {
        for c in [-1i64, 0, 4] {
            let all: Vec<Triangle> = enumerate_dmt(2, &[c, c]).unwrap().collect();
            assert_eq!(all.len(), 1);
            assert_eq!(all[0].rows, vec![vec![c], vec![c, c]]);
            assert_eq!(all[0].duplicate_descendants().unwrap(), 1);
            assert_eq!(signed_dmt_sum(2, &[c, c]).unwrap(), Int::from(1));
        }
    }

    #[test]
    fn dd_edge_cases() {
        let single = Triangle::new(vec![vec![7]]).unwrap();
        assert_eq!(single.duplicate_descendants().unwrap(), 0);
        let distinct = Triangle::new(vec![vec![3], vec![4, 2], vec![5, 3, 1]]).unwrap();
        assert!(distinct.is_decreasing_monotone());
        assert_eq!(distinct.duplicate_descendants().unwrap(), 0);
        let not_dmt = Triangle::new(vec![vec![0], vec![0, 1]]).unwrap();
        assert_eq!(
            not_dmt.duplicate_descendants().unwrap_err(),
            TriangleError::NotADmt
        );
    }

    #[test]
    fn dmt_reciprocity_small() {
        assert_eq!(signed_dmt_sum(1, &[5]).unwrap(), Int::from(1));
        let p3 = alpha_polynomial(3).unwrap();
        for k in [[3i64, 2, 1], [2, 2, 1], [4, 1, 0], [1, 1, 0], [2, 1, 1]] {
            assert_eq!(
                signed_dmt_sum(3, &k).unwrap(),
                eval_alpha(&p3, &k).unwrap(),
                "k = {k:?}"
            );
        }
    }
}

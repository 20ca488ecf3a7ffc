//! Colored partitions (exponent maps of PBW monomials), their total order,
//! difference-condition checking, leading-term embedding, and enumeration of
//! the condition-satisfying sets under two gradings.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::cascades::{enumerate_leading_terms, DifferenceCondition, LeadingTerm};
use crate::root_system::{Algebra, PointId};

/// A colored partition: finitely many parts, each a basis point (the color)
/// at a scale `j >= 1` standing for the generator `X_point(-j)`.
///
/// Canonical storage is runs `(scale, point, mult)` sorted by scale
/// descending then point id descending, which reads left-to-right as the
/// ascending part listing (degree `-j` ascending, then color ascending).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredPartition {
    parts: Vec<(u32, PointId, u32)>,
}

impl ColoredPartition {
    pub fn empty() -> ColoredPartition {
        ColoredPartition { parts: Vec::new() }
    }

    pub fn single(scale: u32, point: PointId) -> ColoredPartition {
        assert!(scale >= 1);
        ColoredPartition { parts: vec![(scale, point, 1)] }
    }

    /// Build from arbitrary `(scale, point, mult)` triples: merges runs,
    /// drops zero multiplicities, sorts canonically.
    pub fn from_mults<I: IntoIterator<Item = (u32, PointId, u32)>>(iter: I) -> ColoredPartition {
        let mut parts: Vec<(u32, PointId, u32)> =
            iter.into_iter().filter(|&(_, _, m)| m > 0).collect();
        for &(j, _, _) in &parts {
            assert!(j >= 1, "part scales must be at least 1");
        }
        parts.sort_unstable_by(|a, b| (b.0, b.1).cmp(&(a.0, a.1)));
        let mut merged: Vec<(u32, PointId, u32)> = Vec::with_capacity(parts.len());
        for (j, p, m) in parts {
            match merged.last_mut() {
                Some(last) if last.0 == j && last.1 == p => last.2 += m,
                _ => merged.push((j, p, m)),
            }
        }
        ColoredPartition { parts: merged }
    }

    /// Runs `(scale, point, mult)` in canonical order.
    pub fn parts(&self) -> &[(u32, PointId, u32)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn mult(&self, scale: u32, point: PointId) -> u32 {
        self.parts
            .iter()
            .find(|&&(j, p, _)| j == scale && p == point)
            .map_or(0, |&(_, _, m)| m)
    }

    /// Number of parts.
    pub fn length(&self) -> u64 {
        self.parts.iter().map(|&(_, _, m)| m as u64).sum()
    }

    /// Sum of part scales; the homogeneous degree is its negative.
    pub fn scale_sum(&self) -> u64 {
        self.parts.iter().map(|&(j, _, m)| j as u64 * m as u64).sum()
    }

    pub fn max_scale(&self) -> u32 {
        self.parts.first().map_or(0, |&(j, _, _)| j)
    }

    /// Total degree under the principal grading.
    pub fn principal_degree(&self, alg: &Algebra) -> u64 {
        self.parts
            .iter()
            .map(|&(j, p, m)| alg.principal_degree(p, j) * m as u64)
            .sum()
    }

    /// Monoid product: merge the two multiplicity maps.
    pub fn product(&self, other: &ColoredPartition) -> ColoredPartition {
        ColoredPartition::from_mults(
            self.parts.iter().chain(other.parts.iter()).copied(),
        )
    }

    /// Replace one part `(scale, from)` by `(scale, to)`; multiplicity of
    /// `from` must be positive.
    pub fn replace_part(&self, scale: u32, from: PointId, to: PointId) -> ColoredPartition {
        debug_assert!(self.mult(scale, from) > 0);
        let mut parts = self.parts.clone();
        for e in parts.iter_mut() {
            if e.0 == scale && e.1 == from {
                e.2 -= 1;
                break;
            }
        }
        parts.push((scale, to, 1));
        ColoredPartition::from_mults(parts)
    }

    /// The colored-integer form: each part maps to its principal degree as
    /// the value and its row position as the color; sorted by value then
    /// color, descending.
    pub fn to_colored_integers(&self, alg: &Algebra) -> Vec<(u64, u8)> {
        let mut out = Vec::new();
        for &(j, p, m) in &self.parts {
            let value = alg.principal_degree(p, j);
            let color = alg.point(p).row.pos;
            for _ in 0..m {
                out.push((value, color));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// `"4_3+1_1"` style rendering of the colored-integer form; the empty
    /// partition renders as `"0"`.
    pub fn format_colored(&self, alg: &Algebra) -> String {
        if self.parts.is_empty() {
            return String::from("0");
        }
        let mut pieces = Vec::new();
        for (v, c) in self.to_colored_integers(alg) {
            pieces.push(format!("{}_{}", v, c));
        }
        pieces.join("+")
    }

    /// Native rendering `"1.1(-3)^2 1.u1(-2)"` in the canonical listing.
    pub fn format_native(&self, alg: &Algebra) -> String {
        if self.parts.is_empty() {
            return String::from("1");
        }
        let mut pieces = Vec::new();
        for &(j, p, m) in &self.parts {
            let head = format!("{}(-{})", alg.point(p).label(), j);
            if m == 1 {
                pieces.push(head);
            } else {
                pieces.push(format!("{}^{}", head, m));
            }
        }
        pieces.join(" ")
    }
}

/// The total order: longer partitions are smaller; then more negative
/// homogeneous degree is smaller; then the shape, scanned from the largest
/// degree end, with the more negative part degree smaller at the first
/// difference; then colors, scanned the same way, with the smaller color
/// (larger point id) smaller at the first difference.
impl Ord for ColoredPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.length().cmp(&other.length()) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
        match self.scale_sum().cmp(&other.scale_sum()) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
        // Shape pass: both run lists scanned from the end (largest part
        // degrees first).  At the first differing scale, the larger scale
        // (more negative degree) makes the partition smaller.
        let mut ca = RunCursor::new(&self.parts);
        let mut cb = RunCursor::new(&other.parts);
        loop {
            match (ca.peek(), cb.peek()) {
                (None, None) => break,
                (Some((ja, _, _)), Some((jb, _, _))) => {
                    if ja != jb {
                        return jb.cmp(&ja);
                    }
                    let step = ca.remaining().min(cb.remaining());
                    ca.consume(step);
                    cb.consume(step);
                }
                // lengths are equal, so the cursors exhaust together
                _ => unreachable!("equal-length partitions with unequal part counts"),
            }
        }
        // Color pass: shapes are identical, so scales stay aligned; at the
        // first differing color the larger point id (smaller basis point)
        // makes the partition smaller.
        let mut ca = RunCursor::new(&self.parts);
        let mut cb = RunCursor::new(&other.parts);
        loop {
            match (ca.peek(), cb.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((ja, pa, _)), Some((jb, pb, _))) => {
                    debug_assert_eq!(ja, jb);
                    if pa != pb {
                        return pb.cmp(&pa);
                    }
                    let step = ca.remaining().min(cb.remaining());
                    ca.consume(step);
                    cb.consume(step);
                }
                _ => unreachable!(),
            }
        }
    }
}

impl PartialOrd for ColoredPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Walks a canonical run list from the end, one run at a time.
struct RunCursor<'a> {
    parts: &'a [(u32, PointId, u32)],
    idx: usize,
    used: u32,
}

impl<'a> RunCursor<'a> {
    fn new(parts: &'a [(u32, PointId, u32)]) -> RunCursor<'a> {
        RunCursor { parts, idx: parts.len(), used: 0 }
    }
    fn peek(&self) -> Option<(u32, PointId, u32)> {
        if self.idx == 0 && self.used == 0 {
            return None;
        }
        // once partially consumed, self.idx points at the active run
        let ix = if self.used == 0 { self.idx - 1 } else { self.idx };
        Some(self.parts[ix])
    }
    fn remaining(&self) -> u32 {
        if self.used == 0 {
            self.parts[self.idx - 1].2
        } else {
            self.parts[self.idx].2 - self.used
        }
    }
    fn consume(&mut self, amount: u32) {
        if self.used == 0 {
            self.idx -= 1;
        }
        self.used += amount;
        debug_assert!(self.used <= self.parts[self.idx].2);
        if self.used == self.parts[self.idx].2 {
            self.used = 0;
        }
    }
}

/// True when every difference condition holds at every window `j >= 1`:
/// parts of the condition's upper cascade at scale `j+1` plus parts of its
/// lower cascade at scale `j` total at most `k`.
pub fn satisfies_conditions(
    part: &ColoredPartition,
    k: u32,
    conds: &[DifferenceCondition],
) -> bool {
    let jmax = part.max_scale();
    for cond in conds {
        for j in 1..=jmax {
            let mut total: u64 = 0;
            for &p in &cond.upper {
                total += part.mult(j + 1, p) as u64;
            }
            for &p in &cond.lower {
                total += part.mult(j, p) as u64;
            }
            if total > k as u64 {
                return false;
            }
        }
    }
    true
}

/// The minimal violating monomials for level `k`, materialized for
/// embedding tests.  Shapes with an empty shallow side are skipped: such an
/// embedding at window `j` is the same as an all-shallow embedding at
/// window `j+1`.
pub struct LeadingTermTable {
    pub k: u32,
    entries: Vec<LeadingTerm>,
}

impl LeadingTermTable {
    pub fn new(alg: &Algebra, k: u32) -> LeadingTermTable {
        let mut entries = Vec::new();
        for b in 0..=k {
            let a = k + 1 - b;
            entries.extend(enumerate_leading_terms(alg, b, a));
        }
        LeadingTermTable { k, entries }
    }

    pub fn entries(&self) -> &[LeadingTerm] {
        &self.entries
    }

    /// True when some leading term embeds into `part` at some window:
    /// multiplicities of the upper side at scale `j+1` and of the lower side
    /// at scale `j` are all available in `part`.
    pub fn contains(&self, part: &ColoredPartition) -> bool {
        let jmax = part.max_scale();
        for lt in &self.entries {
            for j in 1..=jmax {
                let upper_ok = lt
                    .upper
                    .iter()
                    .all(|&(p, m)| part.mult(j + 1, p) >= m);
                let lower_ok = lt
                    .lower
                    .iter()
                    .all(|&(p, m)| part.mult(j, p) >= m);
                if upper_ok && lower_ok {
                    return true;
                }
            }
        }
        false
    }
}

/// True when some leading term for level `k` embeds in `part`.
pub fn contains_leading_term(alg: &Algebra, part: &ColoredPartition, k: u32) -> bool {
    LeadingTermTable::new(alg, k).contains(part)
}

/// Which degree the enumeration fixes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Grading {
    /// Part `(p, j)` weighs its principal degree `2n(j-1)+pos(col)+pos(row)-1`.
    Principal,
    /// Part `(p, j)` weighs `j` (absolute value of the homogeneous degree).
    Homogeneous,
}

/// All condition-satisfying colored partitions of every total weight up to
/// `max_m`, bucketed by weight and sorted canonically inside each bucket.
pub fn enumerate_d_up_to(
    alg: &Algebra,
    k: u32,
    max_m: u64,
    grading: Grading,
) -> Vec<Vec<ColoredPartition>> {
    let conds = crate::cascades::difference_conditions(alg);
    let two_n = 2 * alg.n as u64;
    let weight = |j: u32, p: PointId| -> u64 {
        match grading {
            Grading::Principal => alg.principal_degree(p, j),
            Grading::Homogeneous => j as u64,
        }
    };
    let min_weight_at_scale = |j: u32| -> u64 {
        match grading {
            Grading::Principal => two_n * (j as u64 - 1) + 1,
            Grading::Homogeneous => j as u64,
        }
    };

    // Part kinds ordered scale-ascending (so a budget cutoff ends the whole
    // search) and id-ascending inside a scale.
    let mut kinds: Vec<(u32, PointId)> = Vec::new();
    let mut j = 1u32;
    while min_weight_at_scale(j) <= max_m {
        for p in 0..alg.size() {
            if weight(j, p) <= max_m {
                kinds.push((j, p));
            }
        }
        j += 1;
    }

    // Window sums per condition: windows[c][j] accumulates upper parts at
    // scale j+1 and lower parts at scale j.  A part at scale j feeds window
    // j as lower and window j-1 as upper.
    let jmax = j as usize; // one beyond the largest generated scale
    let mut upper_of: Vec<Vec<usize>> = vec![Vec::new(); alg.size()];
    let mut lower_of: Vec<Vec<usize>> = vec![Vec::new(); alg.size()];
    for (ci, c) in conds.iter().enumerate() {
        for &p in &c.upper {
            upper_of[p].push(ci);
        }
        for &p in &c.lower {
            lower_of[p].push(ci);
        }
    }

    struct Dfs<'a> {
        kinds: &'a [(u32, PointId)],
        weights: Vec<u64>,
        min_at_scale: Vec<u64>,
        upper_of: &'a [Vec<usize>],
        lower_of: &'a [Vec<usize>],
        k: u32,
        max_m: u64,
        sums: Vec<Vec<u32>>,
        stack: Vec<(u32, PointId, u32)>,
        buckets: Vec<Vec<ColoredPartition>>,
    }

    impl<'a> Dfs<'a> {
        fn record(&mut self, used: u64) {
            // the stack is (scale asc, id asc); canonical order is the exact
            // reverse
            let parts: Vec<(u32, PointId, u32)> =
                self.stack.iter().rev().copied().collect();
            self.buckets[used as usize].push(ColoredPartition { parts });
        }

        fn run(&mut self, kind_idx: usize, used: u64) {
            if kind_idx == self.kinds.len() {
                self.record(used);
                return;
            }
            let (j, p) = self.kinds[kind_idx];
            let budget = self.max_m - used;
            if budget < self.min_at_scale[j as usize] {
                // every remaining kind weighs at least this much
                self.record(used);
                return;
            }
            // mult 0 branch
            self.run(kind_idx + 1, used);
            let w = self.weights[kind_idx];
            if w > budget {
                return;
            }
            // cap from the budget and from every window this part feeds
            let mut cap = (budget / w) as u32;
            for &ci in &self.lower_of[p] {
                cap = cap.min(self.k - self.sums[ci][j as usize]);
            }
            if j >= 2 {
                for &ci in &self.upper_of[p] {
                    cap = cap.min(self.k - self.sums[ci][(j - 1) as usize]);
                }
            }
            for mu in 1..=cap {
                for &ci in &self.lower_of[p] {
                    self.sums[ci][j as usize] += 1;
                }
                if j >= 2 {
                    for &ci in &self.upper_of[p] {
                        self.sums[ci][(j - 1) as usize] += 1;
                    }
                }
                self.stack.push((j, p, mu));
                self.run(kind_idx + 1, used + w * mu as u64);
                self.stack.pop();
            }
            // revert all cap increments at once
            for &ci in &self.lower_of[p] {
                self.sums[ci][j as usize] -= cap;
            }
            if j >= 2 {
                for &ci in &self.upper_of[p] {
                    self.sums[ci][(j - 1) as usize] -= cap;
                }
            }
        }
    }

    let weights: Vec<u64> = kinds.iter().map(|&(j, p)| weight(j, p)).collect();
    let min_at_scale: Vec<u64> = (0..=jmax as u32).map(|s| min_weight_at_scale(s.max(1))).collect();
    let mut dfs = Dfs {
        kinds: &kinds,
        weights,
        min_at_scale,
        upper_of: &upper_of,
        lower_of: &lower_of,
        k,
        max_m,
        sums: vec![vec![0; jmax + 1]; conds.len()],
        stack: Vec::new(),
        buckets: vec![Vec::new(); max_m as usize + 1],
    };
    dfs.run(0, 0);
    let mut buckets = dfs.buckets;
    for b in buckets.iter_mut() {
        b.sort();
    }
    buckets
}

/// The condition-satisfying colored partitions of weight exactly `m`,
/// sorted canonically.
pub fn enumerate_d(alg: &Algebra, k: u32, m: u64, grading: Grading) -> Vec<ColoredPartition> {
    enumerate_d_up_to(alg, k, m, grading).pop().unwrap()
}

/// The leading-term monomial of a violating shape bound at scales
/// `(j+1, j)`: upper parts at scale `j+1`, lower parts at scale `j`.
pub fn leading_term_monomial(lt: &LeadingTerm, j: u32) -> ColoredPartition {
    let upper = lt.upper.iter().map(|&(p, m)| (j + 1, p, m));
    let lower = lt.lower.iter().map(|&(p, m)| (j, p, m));
    ColoredPartition::from_mults(upper.chain(lower))
}

/// Convenience for tests: every colored partition (no conditions) with the
/// given bounds, sorted canonically.
pub fn all_partitions_bounded(
    alg: &Algebra,
    max_len: u32,
    max_scale: u32,
) -> Vec<ColoredPartition> {
    let mut kinds: Vec<(u32, PointId)> = Vec::new();
    for j in 1..=max_scale {
        for p in 0..alg.size() {
            kinds.push((j, p));
        }
    }
    let mut out = Vec::new();
    let mut stack: Vec<(u32, PointId, u32)> = Vec::new();
    fn rec(
        kinds: &[(u32, PointId)],
        idx: usize,
        left: u32,
        stack: &mut Vec<(u32, PointId, u32)>,
        out: &mut Vec<ColoredPartition>,
    ) {
        if idx == kinds.len() {
            out.push(ColoredPartition::from_mults(stack.iter().copied()));
            return;
        }
        rec(kinds, idx + 1, left, stack, out);
        let (j, p) = kinds[idx];
        for mu in 1..=left {
            stack.push((j, p, mu));
            rec(kinds, idx + 1, left - mu, stack, out);
            stack.pop();
        }
    }
    rec(&kinds, 0, max_len, &mut stack, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Distinct colored partitions as a set, for equality tests.
pub fn as_set(list: &[ColoredPartition]) -> BTreeSet<ColoredPartition> {
    list.iter().cloned().collect()
}

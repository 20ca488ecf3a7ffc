//! Cascades: descending staircase sequences of basis points, the pairs of
//! maximal cascades that cut out difference conditions, and the enumeration
//! of minimal violating monomial shapes ("leading terms").

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::root_system::{Algebra, Index, PointId};

/// True when consecutive points share a column going strictly down or share
/// a row going strictly left (jumps of any size are allowed).
pub fn is_cascade(alg: &Algebra, seq: &[PointId]) -> bool {
    seq.windows(2).all(|w| {
        let p = alg.point(w[0]);
        let q = alg.point(w[1]);
        let same_col_down = p.col.pos == q.col.pos && q.row.pos > p.row.pos;
        let same_row_left = p.row.pos == q.row.pos && q.col.pos < p.col.pos;
        same_col_down || same_row_left
    })
}

/// Two points lie on a common cascade exactly when one is weakly below and
/// weakly left of the other: the position deltas have opposite signs.
pub fn compatible(alg: &Algebra, x: PointId, y: PointId) -> bool {
    let p = alg.point(x);
    let q = alg.point(y);
    let du = p.col.pos as i32 - q.col.pos as i32;
    let dv = p.row.pos as i32 - q.row.pos as i32;
    du * dv <= 0
}

/// All maximal cascades inside an arbitrary region of points, as sequences
/// in cascade order, sorted for determinism.
///
/// In a maximal cascade consecutive points must be nearest neighbours of the
/// region along their shared line (anything in between could be inserted),
/// so a depth-first walk that only takes nearest steps finds each maximal
/// cascade exactly once.
pub fn maximal_cascades(alg: &Algebra, region: &BTreeSet<PointId>) -> Vec<Vec<PointId>> {
    let has_pred = |p: PointId| {
        let pp = alg.point(p);
        region.iter().any(|&q| {
            let qq = alg.point(q);
            (qq.col.pos == pp.col.pos && qq.row.pos < pp.row.pos)
                || (qq.row.pos == pp.row.pos && qq.col.pos > pp.col.pos)
        })
    };
    // Nearest region point strictly below in the same column, and nearest
    // strictly left in the same row.
    let steps = |p: PointId| -> Vec<PointId> {
        let pp = alg.point(p);
        let mut down: Option<&crate::root_system::BasisPoint> = None;
        let mut left: Option<&crate::root_system::BasisPoint> = None;
        for &q in region.iter() {
            let qq = alg.point(q);
            if qq.col.pos == pp.col.pos && qq.row.pos > pp.row.pos {
                if down.map_or(true, |d| qq.row.pos < d.row.pos) {
                    down = Some(qq);
                }
            }
            if qq.row.pos == pp.row.pos && qq.col.pos < pp.col.pos {
                if left.map_or(true, |l| qq.col.pos > l.col.pos) {
                    left = Some(qq);
                }
            }
        }
        let mut out = Vec::new();
        if let Some(d) = down {
            out.push(d.id);
        }
        if let Some(l) = left {
            out.push(l.id);
        }
        out
    };

    let mut out = Vec::new();
    let mut stack: Vec<Vec<PointId>> = region
        .iter()
        .copied()
        .filter(|&p| !has_pred(p))
        .map(|p| alloc::vec![p])
        .collect();
    while let Some(path) = stack.pop() {
        let nexts = steps(*path.last().unwrap());
        if nexts.is_empty() {
            out.push(path);
            continue;
        }
        for q in nexts {
            let mut longer = path.clone();
            longer.push(q);
            stack.push(longer);
        }
    }
    out.sort();
    out
}

/// One difference condition: for every scale `j >= 1`, the parts of a
/// monomial lying on `upper` at degree `j + 1` plus the parts lying on
/// `lower` at degree `j` may total at most the level `k`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct DifferenceCondition {
    pub pivot: Index,
    /// A maximal cascade of the upper triangle of the pivot.
    pub upper: Vec<PointId>,
    /// A maximal cascade of the lower triangle of the pivot.
    pub lower: Vec<PointId>,
}

/// Every pair (maximal cascade of the upper triangle, maximal cascade of the
/// lower triangle) over all `2n` pivot indices.  The pairs are pairwise
/// distinct and there are `2n * 2^(2n-1)` of them.
pub fn difference_conditions(alg: &Algebra) -> Vec<DifferenceCondition> {
    let mut out = Vec::new();
    for pos in 1..=(2 * alg.n as u8) {
        let pivot = Index::from_pos(pos, alg.n as u8);
        let up_region: BTreeSet<PointId> = alg.upper_triangle(pivot).into_iter().collect();
        let lo_region: BTreeSet<PointId> = alg.lower_triangle(pivot).into_iter().collect();
        let ups = maximal_cascades(alg, &up_region);
        let los = maximal_cascades(alg, &lo_region);
        for u in &ups {
            for l in &los {
                out.push(DifferenceCondition {
                    pivot,
                    upper: u.clone(),
                    lower: l.clone(),
                });
            }
        }
    }
    out
}

/// A minimal violating shape: a compatible multiset `upper` placed at degree
/// `-(j+1)` and a compatible multiset `lower` at degree `-j`, written as
/// sorted `(point, multiplicity)` lists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LeadingTerm {
    pub upper: Vec<(PointId, u32)>,
    pub lower: Vec<(PointId, u32)>,
}

impl LeadingTerm {
    pub fn upper_size(&self) -> u32 {
        self.upper.iter().map(|&(_, m)| m).sum()
    }
    pub fn lower_size(&self) -> u32 {
        self.lower.iter().map(|&(_, m)| m).sum()
    }
}

/// All compatible multisets of a given size, as chains in the staircase
/// order (row position ascending, column position descending).  Each entry
/// is the sorted `(point, mult)` form plus the last chain point (which
/// carries both the maximal row position and the minimal column position).
fn compatible_multisets(alg: &Algebra, size: u32) -> Vec<(Vec<(PointId, u32)>, PointId)> {
    if size == 0 {
        return Vec::new();
    }
    let mut order: Vec<PointId> = (0..alg.size()).collect();
    order.sort_by_key(|&p| {
        let pt = alg.point(p);
        (pt.row.pos, core::cmp::Reverse(pt.col.pos))
    });
    let mut out = Vec::new();
    // chain = indices into `order`, non-decreasing, consecutive compatible
    let mut chain: Vec<usize> = Vec::new();
    fn dfs(
        alg: &Algebra,
        order: &[PointId],
        chain: &mut Vec<usize>,
        size: u32,
        out: &mut Vec<(Vec<(PointId, u32)>, PointId)>,
    ) {
        if chain.len() == size as usize {
            let mut multi: Vec<(PointId, u32)> = Vec::new();
            for &ix in chain.iter() {
                let p = order[ix];
                match multi.iter_mut().find(|e| e.0 == p) {
                    Some(e) => e.1 += 1,
                    None => multi.push((p, 1)),
                }
            }
            multi.sort_unstable_by_key(|&(p, _)| p);
            out.push((multi, order[*chain.last().unwrap()]));
            return;
        }
        let lo = chain.last().map_or(0, |&ix| ix);
        for ix in lo..order.len() {
            if let Some(&last) = chain.last() {
                if !compatible(alg, order[last], order[ix]) {
                    continue;
                }
            }
            chain.push(ix);
            dfs(alg, order, chain, size, out);
            chain.pop();
        }
    }
    dfs(alg, &order, &mut chain, size, &mut out);
    out
}

/// Enumerate the minimal violating monomial shapes with `b` parts at the
/// deeper degree and `a` parts at the shallower one: both multisets must be
/// compatible, and when both are nonempty some pivot must fit between them
/// (largest row position of `upper` at most smallest column position of
/// `lower`).  Sorted and duplicate-free.
pub fn enumerate_leading_terms(alg: &Algebra, b: u32, a: u32) -> Vec<LeadingTerm> {
    let mut out = Vec::new();
    match (b, a) {
        (0, 0) => {}
        (_, 0) => {
            for (multi, _) in compatible_multisets(alg, b) {
                out.push(LeadingTerm { upper: multi, lower: Vec::new() });
            }
        }
        (0, _) => {
            for (multi, _) in compatible_multisets(alg, a) {
                out.push(LeadingTerm { upper: Vec::new(), lower: multi });
            }
        }
        _ => {
            let ups = compatible_multisets(alg, b);
            let los = compatible_multisets(alg, a);
            for (u, u_last) in &ups {
                let max_rp = alg.point(*u_last).row.pos;
                for (l, l_last) in &los {
                    let min_cp = alg.point(*l_last).col.pos;
                    if max_rp <= min_cp {
                        out.push(LeadingTerm { upper: u.clone(), lower: l.clone() });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Counts of `enumerate_leading_terms` for every shape `(b, a)` with
/// `b + a = k + 1`, reported as `(b, a, count)` with `b` descending.
pub fn count_leading_terms(alg: &Algebra, k: u32) -> Vec<(u32, u32, u64)> {
    let total = k + 1;
    let mut out = Vec::new();
    for b in (0..=total).rev() {
        let a = total - b;
        out.push((b, a, enumerate_leading_terms(alg, b, a).len() as u64));
    }
    out
}

#[cfg(test)]
mod test {
    use super::*;
    use crate::root_system::Algebra;

    fn pt(alg: &Algebra, s: &str) -> PointId {
        alg.parse_point(s).unwrap()
    }

    #[test]
    fn cascade_recognition() {
        let alg = Algebra::new(2).unwrap();
        // straight column, with a jump
        assert!(is_cascade(&alg, &[pt(&alg, "1.1"), pt(&alg, "1.2"), pt(&alg, "1.u1")]));
        // staircase: down, left, down
        assert!(is_cascade(
            &alg,
            &[pt(&alg, "2.2"), pt(&alg, "2.u2"), pt(&alg, "1.u2"), pt(&alg, "1.u1")]
        ));
        // wrong direction (up)
        assert!(!is_cascade(&alg, &[pt(&alg, "1.2"), pt(&alg, "1.1")]));
        // rightward is not allowed
        assert!(!is_cascade(&alg, &[pt(&alg, "1.u2"), pt(&alg, "2.u2")]));
        // diagonal neighbours share nothing
        assert!(!is_cascade(&alg, &[pt(&alg, "1.1"), pt(&alg, "2.2")]));
        // single points and empty sequences are cascades
        assert!(is_cascade(&alg, &[pt(&alg, "2.2")]));
        assert!(is_cascade(&alg, &[]));
    }

    #[test]
    fn compatibility_is_the_common_cascade_relation() {
        let alg = Algebra::new(2).unwrap();
        // (1,1) and (2,2): strictly right and strictly down - incompatible
        assert!(!compatible(&alg, pt(&alg, "1.1"), pt(&alg, "2.2")));
        assert!(compatible(&alg, pt(&alg, "1.1"), pt(&alg, "1.2")));
        assert!(compatible(&alg, pt(&alg, "2.2"), pt(&alg, "1.2")));
        assert!(compatible(&alg, pt(&alg, "1.1"), pt(&alg, "1.1")));
        // down-and-left with no shared line still lies on a common staircase
        assert!(compatible(&alg, pt(&alg, "2.2"), pt(&alg, "1.u2")));
        // exhaustive cross-check: compatible iff some maximal cascade of the
        // whole triangle carries both points
        let full: BTreeSet<PointId> = (0..alg.size()).collect();
        let cascades = maximal_cascades(&alg, &full);
        for x in 0..alg.size() {
            for y in 0..alg.size() {
                let expect = cascades
                    .iter()
                    .any(|c| c.contains(&x) && c.contains(&y));
                assert_eq!(compatible(&alg, x, y), expect, "{} {}", x, y);
            }
        }
    }

    #[test]
    fn maximal_cascades_of_triangles_are_unit_staircases() {
        for n in 1..=4usize {
            let alg = Algebra::new(n).unwrap();
            for pos in 1..=(2 * n as u8) {
                let r = Index::from_pos(pos, n as u8);
                let region: BTreeSet<PointId> =
                    alg.upper_triangle(r).into_iter().collect();
                let cascades = maximal_cascades(&alg, &region);
                // count 2^(q-1) for a triangle of q rows
                assert_eq!(cascades.len(), 1 << (pos - 1) as usize);
                for c in &cascades {
                    assert!(is_cascade(&alg, c));
                    // unit steps only: consecutive positions differ by one
                    for w in c.windows(2) {
                        let p = alg.point(w[0]);
                        let q = alg.point(w[1]);
                        let step = (q.col.pos as i32 - p.col.pos as i32).abs()
                            + (q.row.pos as i32 - p.row.pos as i32).abs();
                        assert_eq!(step, 1);
                    }
                    // starts on the diagonal, ends at the bottom-left corner
                    let first = alg.point(c[0]);
                    assert_eq!(first.col.pos, first.row.pos);
                    let last = alg.point(*c.last().unwrap());
                    assert_eq!(last.col.pos, 1);
                    assert_eq!(last.row.pos, pos);
                }
                // pairwise distinct as sets
                let sets: BTreeSet<BTreeSet<PointId>> = cascades
                    .iter()
                    .map(|c| c.iter().copied().collect())
                    .collect();
                assert_eq!(sets.len(), cascades.len());
            }
        }
    }

    #[test]
    fn maximal_cascades_jump_over_holes() {
        let alg = Algebra::new(2).unwrap();
        // column with a hole: (1,1) and (1,u1), missing (1,2) and (1,u2)
        let region: BTreeSet<PointId> =
            [pt(&alg, "1.1"), pt(&alg, "1.u1")].into_iter().collect();
        let cascades = maximal_cascades(&alg, &region);
        assert_eq!(cascades, alloc::vec![alloc::vec![pt(&alg, "1.1"), pt(&alg, "1.u1")]]);
        // an L of three points has a single maximal cascade through all
        let region: BTreeSet<PointId> =
            [pt(&alg, "2.2"), pt(&alg, "2.u1"), pt(&alg, "1.u1")].into_iter().collect();
        let cascades = maximal_cascades(&alg, &region);
        assert_eq!(
            cascades,
            alloc::vec![alloc::vec![pt(&alg, "2.2"), pt(&alg, "2.u1"), pt(&alg, "1.u1")]]
        );
        // two incomparable points give two singleton cascades
        let region: BTreeSet<PointId> =
            [pt(&alg, "1.1"), pt(&alg, "2.2")].into_iter().collect();
        let cascades = maximal_cascades(&alg, &region);
        assert_eq!(cascades.len(), 2);
    }

    #[test]
    fn difference_condition_counts() {
        for (n, expect) in [(1usize, 4usize), (2, 32), (3, 192)] {
            let alg = Algebra::new(n).unwrap();
            let conds = difference_conditions(&alg);
            assert_eq!(conds.len(), expect);
            assert_eq!(expect, 2 * n * (1 << (2 * n - 1)));
            // pairwise distinct as (upper, lower) pairs even ignoring pivots
            let pairs: BTreeSet<(Vec<PointId>, Vec<PointId>)> = conds
                .iter()
                .map(|c| (c.upper.clone(), c.lower.clone()))
                .collect();
            assert_eq!(pairs.len(), conds.len());
        }
    }

    #[test]
    fn rank_one_conditions_match_the_pinned_supports() {
        // x = (1,1), h = (1,u1), y = (u1,u1)
        let alg = Algebra::new(1).unwrap();
        let x = pt(&alg, "1.1");
        let h = pt(&alg, "1.u1");
        let y = pt(&alg, "u1.u1");
        let mut got: Vec<(Vec<PointId>, Vec<PointId>)> = difference_conditions(&alg)
            .into_iter()
            .map(|c| {
                let mut u = c.upper;
                let mut l = c.lower;
                u.sort();
                l.sort();
                (u, l)
            })
            .collect();
        got.sort();
        let mut expect = alloc::vec![
            (alloc::vec![x], alloc::vec![x, h]),
            (alloc::vec![x], alloc::vec![h, y]),
            (alloc::vec![x, h], alloc::vec![y]),
            (alloc::vec![h, y], alloc::vec![y]),
        ];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn leading_term_counts_per_shape() {
        // Every shape (b, a) with b + a = m gives the same count, equal to
        // binomial(2n + 2m - 1, 2m).
        let binom = |top: u64, bot: u64| -> u64 {
            let mut v = 1u64;
            for i in 0..bot {
                v = v * (top - i) / (i + 1);
            }
            v
        };
        for n in 1..=3usize {
            let alg = Algebra::new(n).unwrap();
            for m in 2..=3u32 {
                let expect = binom(2 * n as u64 + 2 * m as u64 - 1, 2 * m as u64);
                for b in 0..=m {
                    let got = enumerate_leading_terms(&alg, b, m - b).len() as u64;
                    assert_eq!(got, expect, "n={} shape=({},{})", n, b, m - b);
                }
            }
        }
        // the pinned rows: level 1 then level 2
        let counts = |n: usize, k: u32| {
            let alg = Algebra::new(n).unwrap();
            count_leading_terms(&alg, k)
        };
        for (n, expect) in [(1usize, 5u64), (2, 35), (3, 126)] {
            for (_, _, c) in counts(n, 1) {
                assert_eq!(c, expect);
            }
        }
        for (n, expect) in [(1usize, 7u64), (2, 84), (3, 462)] {
            for (_, _, c) in counts(n, 2) {
                assert_eq!(c, expect);
            }
        }
    }

    #[test]
    fn rank_one_mixed_shape_by_hand() {
        // b = a = 1 for rank 1: upper x pairs with all three lower points;
        // upper h and upper y only pair with lower y.
        let alg = Algebra::new(1).unwrap();
        let x = pt(&alg, "1.1");
        let h = pt(&alg, "1.u1");
        let y = pt(&alg, "u1.u1");
        let got = enumerate_leading_terms(&alg, 1, 1);
        let mk = |u: PointId, l: PointId| LeadingTerm {
            upper: alloc::vec![(u, 1)],
            lower: alloc::vec![(l, 1)],
        };
        let mut expect = alloc::vec![mk(x, x), mk(x, h), mk(x, y), mk(h, y), mk(y, y)];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn leading_terms_have_compatible_sides() {
        let alg = Algebra::new(2).unwrap();
        for lt in enumerate_leading_terms(&alg, 2, 1) {
            for side in [&lt.upper, &lt.lower] {
                for i in 0..side.len() {
                    for j in (i + 1)..side.len() {
                        assert!(compatible(&alg, side[i].0, side[j].0));
                    }
                }
            }
            let max_rp = lt.upper.iter().map(|&(p, _)| alg.point(p).row.pos).max().unwrap();
            let min_cp = lt.lower.iter().map(|&(p, _)| alg.point(p).col.pos).min().unwrap();
            assert!(max_rp <= min_cp);
        }
    }
}

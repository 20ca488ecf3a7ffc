//! The triangular basis of `sp_2n` and its exact structure constants.
//!
//! Indices are totally ordered `1 > 2 > ... > n > nbar > ... > 1bar` and a
//! basis point is an unordered pair of indices written `(col, row)` with
//! `pos(col) <= pos(row)`.  Laying the points out as a staircase triangle
//! (row `r` holds the points with row position `r`) gives the triangular
//! basis; its points are root vectors except on the antidiagonal, where the
//! slot `(i, ibar)` houses the simple-coroot direction `h_i`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::One;

use crate::Error;

/// Largest supported rank.  The dense bracket table for rank `n` holds
/// `(n(2n+1))^2` slots, which stays small through this bound.
pub const MAX_RANK: usize = 16;

/// Identifier of a basis point: row-major over the staircase triangle, so id
/// 0 is the top point `(1,1)` and ids increase as points get smaller.
pub type PointId = usize;

/// One of the `2n` ordered indices `1, 2, ..., n, nbar, ..., 2bar, 1bar`.
///
/// `pos` is the 1-based position in that descending order, so `pos(i) = i`
/// and `pos(ibar) = 2n + 1 - i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Index {
    pub pos: u8,
    pub n: u8,
}

impl Index {
    /// The index at a given 1-based position of the descending order.
    pub fn from_pos(pos: u8, n: u8) -> Index {
        assert!(pos >= 1 && pos <= 2 * n, "index position out of range");
        Index { pos, n }
    }

    /// The unbarred index `i` (so `1 <= i <= n`).
    pub fn unbarred(i: u8, n: u8) -> Index {
        assert!(i >= 1 && i <= n);
        Index { pos: i, n }
    }

    /// The barred index `ibar` (so `1 <= i <= n`).
    pub fn barred(i: u8, n: u8) -> Index {
        assert!(i >= 1 && i <= n);
        Index { pos: 2 * n + 1 - i, n }
    }

    /// The numeric part: `i` for both `i` and `ibar`.
    pub fn number(self) -> u8 {
        if self.is_barred() {
            2 * self.n + 1 - self.pos
        } else {
            self.pos
        }
    }

    pub fn is_barred(self) -> bool {
        self.pos > self.n
    }

    /// Swap `i <-> ibar`.
    pub fn mirror(self) -> Index {
        Index { pos: 2 * self.n + 1 - self.pos, n: self.n }
    }

    /// Text form used everywhere: `"3"` for the index 3, `"u3"` for 3bar.
    pub fn label(self) -> String {
        if self.is_barred() {
            format!("u{}", self.number())
        } else {
            format!("{}", self.number())
        }
    }

    /// Parse the `label()` form back.
    pub fn parse(s: &str, n: u8) -> Option<Index> {
        let (barred, digits) = match s.strip_prefix('u') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let i: u8 = digits.parse().ok()?;
        if i < 1 || i > n {
            return None;
        }
        Some(if barred { Index::barred(i, n) } else { Index::unbarred(i, n) })
    }
}

/// What kind of direction a basis point carries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RootKind {
    /// `eps_a + eps_b` (both indices unbarred; includes the doubled `2 eps_a`).
    PlusRoot,
    /// `-(eps_a + eps_b)` (both indices barred).
    MinusRoot,
    /// `eps_a - eps_b` with `a != b` (one index of each parity).
    MixedRoot,
    /// The antidiagonal slot `(i, ibar)`, housing the simple coroot `h_i`.
    Coroot,
}

/// A point of the triangular basis.
#[derive(Clone, Debug)]
pub struct BasisPoint {
    pub id: PointId,
    /// Column index `a` of `(a, b)`; `pos(col) <= pos(row)`.
    pub col: Index,
    /// Row index `b` of `(a, b)`.
    pub row: Index,
    pub kind: RootKind,
    /// Root height `2n + 1 - pos(col) - pos(row)`; 0 exactly on coroot slots.
    pub height: i32,
    /// Coefficients of `eps_1 ... eps_n` of the attached root (zero vector on
    /// coroot slots).
    pub root: Vec<i8>,
}

impl BasisPoint {
    /// Text form `"col.row"`, e.g. `"1.u3"` for the point `(1, 3bar)`.
    pub fn label(&self) -> String {
        format!("{}.{}", self.col.label(), self.row.label())
    }
}

/// The algebra `sp_2n` with its triangular basis and exact bracket table.
pub struct Algebra {
    pub n: usize,
    points: Vec<BasisPoint>,
    /// `brackets[x * size + y]` is `[X_x, X_y]` expanded over the basis;
    /// coefficients on coroot slots are coefficients of the simple coroots.
    brackets: Vec<Vec<(PointId, i64)>>,
}

impl Algebra {
    /// Build the basis and the full bracket table for rank `n`.
    pub fn new(n: usize) -> Result<Algebra, Error> {
        if n < 1 || n > MAX_RANK {
            return Err(Error::RankOutOfRange { n });
        }
        let points = build_points(n);
        let size = points.len();

        // Sparse 2n x 2n matrix for every basis direction.
        let mats: Vec<SparseMat> = points.iter().map(|p| point_matrix(n, p)).collect();

        // A witness entry per non-coroot point: root spaces have pairwise
        // disjoint matrix support, so one entry pins the coefficient.
        let witness: Vec<Option<(usize, usize, i64)>> = points
            .iter()
            .zip(&mats)
            .map(|(p, m)| {
                if p.kind == RootKind::Coroot {
                    None
                } else {
                    Some(m.entries[0])
                }
            })
            .collect();

        let mut brackets = vec![Vec::new(); size * size];
        for x in 0..size {
            for y in 0..size {
                let comm = mats[x].commutator(&mats[y], 2 * n);
                let expansion = decompose(n, &points, &witness, comm);
                // Exactness check: rebuilding the commutator from the
                // expansion must give back the matrix we decomposed.
                debug_assert!({
                    let mut rebuilt = SparseMat { entries: Vec::new() };
                    for &(pid, c) in &expansion {
                        rebuilt = rebuilt.add_scaled(&mats[pid], c);
                    }
                    rebuilt.normalized() == mats[x].commutator(&mats[y], 2 * n).normalized()
                });
                brackets[x * size + y] = expansion;
            }
        }
        Ok(Algebra { n, points, brackets })
    }

    /// Number of basis points, `n(2n + 1)`.
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, id: PointId) -> &BasisPoint {
        &self.points[id]
    }

    pub fn points(&self) -> &[BasisPoint] {
        &self.points
    }

    /// Id of the point `(a, b)`; accepts the two indices in either order.
    pub fn point_id(&self, a: Index, b: Index) -> PointId {
        let (cp, rp) = if a.pos <= b.pos { (a.pos, b.pos) } else { (b.pos, a.pos) };
        id_from_positions(cp, rp)
    }

    /// Id of the point at column position `cp`, row position `rp` (`cp <= rp`).
    pub fn point_at(&self, cp: u8, rp: u8) -> PointId {
        assert!(1 <= cp && cp <= rp && rp as usize <= 2 * self.n);
        id_from_positions(cp, rp)
    }

    /// The coroot slot `(s, sbar)`.
    pub fn coroot_point(&self, s: u8) -> PointId {
        let n = self.n as u8;
        self.point_id(Index::unbarred(s, n), Index::barred(s, n))
    }

    /// `[X_x, X_y]` over the basis.  Coefficients sitting on coroot slots are
    /// coefficients of the simple coroots `h_1 ... h_n`.
    pub fn bracket(&self, x: PointId, y: PointId) -> &[(PointId, i64)] {
        &self.brackets[x * self.size() + y]
    }

    /// The basis order: id 0 = `(1,1)` is the largest point, the last id
    /// `(1bar, 1bar)` the smallest.
    pub fn point_compare(&self, x: PointId, y: PointId) -> Ordering {
        y.cmp(&x)
    }

    /// Points of the upper triangle of a pivot index `r`: all rows above and
    /// including the row of `r`.
    pub fn upper_triangle(&self, r: Index) -> Vec<PointId> {
        let mut out = Vec::new();
        for p in &self.points {
            if p.row.pos <= r.pos {
                out.push(p.id);
            }
        }
        out
    }

    /// Points of the lower triangle of a pivot index `r`: all columns at and
    /// right of the column of `r`.  It meets `upper_triangle(r)` exactly in
    /// the diagonal point `(r, r)`.
    pub fn lower_triangle(&self, r: Index) -> Vec<PointId> {
        let mut out = Vec::new();
        for p in &self.points {
            if p.col.pos >= r.pos {
                out.push(p.id);
            }
        }
        out
    }

    /// Degree of the generator `X_p(-j)` in the principal grading:
    /// `2n(j - 1) + pos(col) + pos(row) - 1`, i.e. `2nj - height`.
    pub fn principal_degree(&self, p: PointId, j: u32) -> u64 {
        let pt = &self.points[p];
        2 * self.n as u64 * (j as u64 - 1) + pt.col.pos as u64 + pt.row.pos as u64 - 1
    }

    /// Parse a point label of the `"col.row"` form.
    pub fn parse_point(&self, s: &str) -> Option<PointId> {
        let (a, b) = s.split_once('.')?;
        let n = self.n as u8;
        let a = Index::parse(a, n)?;
        let b = Index::parse(b, n)?;
        if a.pos > b.pos {
            return None;
        }
        Some(self.point_id(a, b))
    }
}

/// Row-major id of the point at column position `cp`, row position `rp`.
fn id_from_positions(cp: u8, rp: u8) -> PointId {
    let (cp, rp) = (cp as usize, rp as usize);
    rp * (rp - 1) / 2 + cp - 1
}

fn build_points(n: usize) -> Vec<BasisPoint> {
    let mut points = Vec::with_capacity(n * (2 * n + 1));
    for rp in 1..=(2 * n as u8) {
        for cp in 1..=rp {
            let col = Index::from_pos(cp, n as u8);
            let row = Index::from_pos(rp, n as u8);
            let mut root = vec![0i8; n];
            for ix in [col, row] {
                let sign = if ix.is_barred() { -1 } else { 1 };
                root[ix.number() as usize - 1] += sign;
            }
            let kind = match (col.is_barred(), row.is_barred()) {
                (false, false) => RootKind::PlusRoot,
                (true, true) => RootKind::MinusRoot,
                (false, true) => {
                    if col.number() == row.number() {
                        RootKind::Coroot
                    } else {
                        RootKind::MixedRoot
                    }
                }
                (true, false) => unreachable!("column position exceeds row position"),
            };
            let id = points.len();
            debug_assert_eq!(id, id_from_positions(cp, rp));
            points.push(BasisPoint {
                id,
                col,
                row,
                kind,
                height: 2 * n as i32 + 1 - cp as i32 - rp as i32,
                root,
            });
        }
    }
    points
}

/// A sparse integer matrix, entries sorted by (row, col).
#[derive(Clone, PartialEq, Eq, Debug)]
struct SparseMat {
    entries: Vec<(usize, usize, i64)>,
}

impl SparseMat {
    fn from_entries(mut entries: Vec<(usize, usize, i64)>) -> SparseMat {
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMat { entries }
    }

    fn normalized(mut self) -> SparseMat {
        self.entries.retain(|&(_, _, v)| v != 0);
        self.entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        self
    }

    fn add_scaled(&self, other: &SparseMat, scale: i64) -> SparseMat {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|&(r, c, v)| (r, c, v * scale)));
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, i64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|&(_, _, v)| v != 0);
        SparseMat { entries: merged }
    }

    /// `self * other - other * self` for `dim x dim` matrices.
    fn commutator(&self, other: &SparseMat, dim: usize) -> SparseMat {
        let mut acc: Vec<(usize, usize, i64)> = Vec::new();
        let mut mul = |a: &SparseMat, b: &SparseMat, sign: i64, acc: &mut Vec<_>| {
            for &(r, k, v) in &a.entries {
                for &(k2, c, w) in &b.entries {
                    if k == k2 {
                        debug_assert!(r < dim && c < dim);
                        acc.push((r, c, sign * v * w));
                    }
                }
            }
        };
        mul(self, other, 1, &mut acc);
        mul(other, self, -1, &mut acc);
        SparseMat::from_entries(acc).normalized_merge()
    }

    fn normalized_merge(self) -> SparseMat {
        let mut merged: Vec<(usize, usize, i64)> = Vec::with_capacity(self.entries.len());
        for (r, c, v) in self.entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|&(_, _, v)| v != 0);
        SparseMat { entries: merged }
    }
}

/// The matrix of a basis direction inside `sp_2n` with symplectic form
/// `[[0, I], [-I, 0]]`:
///   eps_i - eps_j  ->  E_ij - E_{n+j, n+i}
///   eps_i + eps_j  ->  E_{i, n+j} + E_{j, n+i}   (i < j)
///   2 eps_i        ->  E_{i, n+i}
/// negatives transpose block-wise, and the coroot slot `(s, sbar)` carries
/// the simple coroot `h_s`.
fn point_matrix(n: usize, p: &BasisPoint) -> SparseMat {
    let i = p.col.number() as usize - 1; // 0-based numeric parts
    let j = p.row.number() as usize - 1;
    let entries = match p.kind {
        RootKind::PlusRoot => {
            if i == j {
                vec![(i, n + i, 1)]
            } else {
                vec![(i, n + j, 1), (j, n + i, 1)]
            }
        }
        RootKind::MinusRoot => {
            // col = abar, row = bbar with pos(col) <= pos(row) means a >= b,
            // so the root is -(eps_b + eps_a) with b <= a.
            if i == j {
                vec![(n + i, i, 1)]
            } else {
                vec![(n + j, i, 1), (n + i, j, 1)]
            }
        }
        RootKind::MixedRoot => {
            // col unbarred = i+1, row barred with number j+1: root
            // eps_{i+1} - eps_{j+1}.
            vec![(i, j, 1), (n + j, n + i, -1)]
        }
        RootKind::Coroot => simple_coroot_entries(n, i),
    };
    SparseMat::from_entries(entries)
}

/// Matrix of the simple coroot `h_{s+1}` (0-based `s`):
/// `diag(t) - diag(t)` pattern with `t_{s+1} = 1, t_{s+2} = -1` for `s < n-1`
/// and `t_n = 1` for the long simple root.
fn simple_coroot_entries(n: usize, s: usize) -> Vec<(usize, usize, i64)> {
    let mut entries = vec![(s, s, 1), (n + s, n + s, -1)];
    if s + 1 < n {
        entries.push((s + 1, s + 1, -1));
        entries.push((n + s + 1, n + s + 1, 1));
    }
    entries
}

/// Expand a commutator matrix over the basis: witness entries pin every root
/// vector coefficient; what remains must be diagonal and splits over the
/// simple coroots by partial sums of the `eps` coordinates.
fn decompose(
    n: usize,
    points: &[BasisPoint],
    witness: &[Option<(usize, usize, i64)>],
    m: SparseMat,
) -> Vec<(PointId, i64)> {
    let mut out = Vec::new();
    let mut rest = m;
    for (pid, w) in witness.iter().enumerate() {
        let &(r, c, unit) = match w {
            Some(w) => w,
            None => continue,
        };
        let found = rest
            .entries
            .iter()
            .find(|&&(er, ec, _)| er == r && ec == c)
            .map(|&(_, _, v)| v)
            .unwrap_or(0);
        if found == 0 {
            continue;
        }
        assert_eq!(found % unit, 0, "bracket does not lie in the basis span");
        let coeff = found / unit;
        let root_mat = point_matrix(n, &points[pid]);
        rest = rest.add_scaled(&root_mat, -coeff);
        out.push((pid, coeff));
    }
    // The remainder is in the Cartan: diag(d_1..d_n, -d_1..-d_n).
    let mut d = vec![0i64; n];
    for &(r, c, v) in &rest.entries {
        assert_eq!(r, c, "non-diagonal remainder in bracket expansion");
        if r < n {
            d[r] = v;
        } else {
            assert_eq!(d[r - n], -v, "remainder is not symplectic-diagonal");
        }
    }
    // d = sum over s of coeff_s * (coroot pattern): coeff on h_s is the
    // partial sum d_1 + ... + d_s.
    let mut partial = 0i64;
    for s in 0..n {
        partial += d[s];
        if partial != 0 {
            let pid = id_from_positions(s as u8 + 1, 2 * n as u8 - s as u8);
            out.push((pid, partial));
        }
    }
    out.sort_unstable_by_key(|&(pid, _)| pid);
    out
}

/// Dimension of the irreducible `sp_2n` module with highest weight
/// `2k eps_1` (the `k`-th multiple of the highest root), by the Weyl
/// dimension formula, computed exactly.
pub fn weyl_dim(n: usize, k: u32) -> BigUint {
    // lambda = (2k, 0, ..., 0), rho = (n, n-1, ..., 1) in eps coordinates.
    let lam = |i: usize| if i == 0 { 2 * k as i64 } else { 0 };
    let rho = |i: usize| (n - i) as i64;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let mut push = |nv: i64, dv: i64| {
        num *= BigUint::from(nv as u64);
        den *= BigUint::from(dv as u64);
    };
    for i in 0..n {
        // long roots 2 eps_i: pairing with the coroot is the i-th coordinate
        push(lam(i) + rho(i), rho(i));
        for j in (i + 1)..n {
            // eps_i - eps_j and eps_i + eps_j
            push(lam(i) - lam(j) + rho(i) - rho(j), rho(i) - rho(j));
            push(lam(i) + lam(j) + rho(i) + rho(j), rho(i) + rho(j));
        }
    }
    let q = &num / &den;
    assert!(&q * &den == num, "Weyl dimension must be integral");
    q
}

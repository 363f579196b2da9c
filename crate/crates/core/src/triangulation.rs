//! Triangulations of a properly labelled convex `N`-gon `v_0 .. v_{N-1}`,
//! including the family `K(N, -m)` in which the `m` consecutive span-2 edges
//! (ears) `e_0 .. e_{m-1}` are unavailable, `e_i = v_{i-1} v_{i+1}`.
//!
//! A node `(n, m)` of the walker tree is a convex polygon on `r = n + 2`
//! vertices whose missing ears are exactly `e_0 .. e_{m-1}` in current
//! labels. Its triangulations split on the next ear `e_m`: those using it
//! (cut off vertex `v_m`, left child) and those avoiding it (forbid `e_m`
//! too, right child). After cutting `v_m` the survivors are relabelled by
//! skipping the deleted vertex, which leaves the missing ears at
//! `e_0 .. e_{m-2}`.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::BitSource;
use crate::table::BcTable;
use crate::walker::{self, BranchPath, Code, NodeState, Step};
use crate::Natural;

/// Chord `{lo, hi}` between two vertices, `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Diagonal {
    pub lo: usize,
    pub hi: usize,
}

impl Diagonal {
    pub fn new(a: usize, b: usize) -> Self {
        Self {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    /// Whether the chord is a diagonal (not a side, not degenerate) of the `n`-gon.
    pub fn is_diagonal_of(self, n: usize) -> bool {
        self.hi < n && self.hi - self.lo >= 2 && !(self.lo == 0 && self.hi == n - 1)
    }

    /// Strict interleaving of endpoints: the open chords intersect.
    pub fn crosses(self, other: Diagonal) -> bool {
        let inside = |v: usize| self.lo < v && v < self.hi;
        let shared = self.lo == other.lo
            || self.lo == other.hi
            || self.hi == other.lo
            || self.hi == other.hi;
        !shared && (inside(other.lo) != inside(other.hi))
    }
}

impl From<Diagonal> for [usize; 2] {
    fn from(d: Diagonal) -> Self {
        [d.lo, d.hi]
    }
}

impl From<[usize; 2]> for Diagonal {
    fn from([a, b]: [usize; 2]) -> Self {
        Diagonal::new(a, b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.lo, self.hi)
    }
}

/// Span-2 edge `e_i = v_{i-1} v_{i+1}` of the `n`-gon.
pub fn ear(n: usize, i: usize) -> Diagonal {
    Diagonal::new((i + n - 1) % n, (i + 1) % n)
}

/// Diagonal set in canonical form: normalized pairs, sorted, deduplicated
/// only by validation (duplicates are kept so that they can be reported).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    pub n: usize,
    pub diagonals: Vec<Diagonal>,
}

impl Triangulation {
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Self {
        let mut diagonals: Vec<Diagonal> = diagonals.into_iter().collect();
        diagonals.sort_unstable();
        Self { n, diagonals }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        Self::new(n, pairs.iter().map(|&(a, b)| Diagonal::new(a, b)))
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }

    /// Number of ears `e_i` present.
    pub fn ear_count(&self) -> usize {
        if self.n < 4 {
            return 0;
        }
        let set: HashSet<Diagonal> = self.diagonals.iter().copied().collect();
        (0..self.n)
            .map(|i| ear(self.n, i))
            .filter(|e| set.contains(e))
            .collect::<HashSet<_>>()
            .len()
    }

    pub fn to_record(&self, forbidden: usize) -> TriangulationRecord {
        TriangulationRecord {
            n: self.n,
            forbidden,
            diagonals: self.diagonals.clone(),
        }
    }
}

/// JSON shape `{"n": N, "forbidden": m, "diagonals": [[i, j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationRecord {
    pub n: usize,
    #[serde(default)]
    pub forbidden: usize,
    pub diagonals: Vec<Diagonal>,
}

impl TriangulationRecord {
    pub fn into_parts(self) -> (Triangulation, usize) {
        (Triangulation::new(self.n, self.diagonals), self.forbidden)
    }
}

/// First rule a candidate triangulation breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    PolygonMismatch { expected: usize, found: usize },
    NotADiagonal(Diagonal),
    Duplicate(Diagonal),
    WrongSize { expected: usize, found: usize },
    NoTriangulationExists { vertices: usize, forbidden: usize },
    ForbiddenEar { index: usize, diagonal: Diagonal },
    Crossing(Diagonal, Diagonal),
    TooFewEars(usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PolygonMismatch { expected, found } => {
                write!(
                    f,
                    "triangulation is for a {found}-gon, context is a {expected}-gon"
                )
            }
            Self::NotADiagonal(d) => write!(f, "{d} is not a diagonal"),
            Self::Duplicate(d) => write!(f, "{d} appears twice"),
            Self::WrongSize { expected, found } => {
                write!(f, "{found} diagonals, a triangulation needs {expected}")
            }
            Self::NoTriangulationExists {
                vertices,
                forbidden,
            } => write!(
                f,
                "a {vertices}-gon with {forbidden} consecutive ears forbidden has no triangulation"
            ),
            Self::ForbiddenEar { index, diagonal } => {
                write!(f, "uses forbidden ear e_{index} = {diagonal}")
            }
            Self::Crossing(a, b) => write!(f, "{a} crosses {b}"),
            Self::TooFewEars(k) => write!(f, "only {k} ears, at least 2 required"),
        }
    }
}

/// A convex `vertices`-gon with ears `e_0 .. e_{forbidden-1}` unavailable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolygonContext {
    pub vertices: usize,
    pub forbidden: usize,
}

impl PolygonContext {
    pub fn new(vertices: usize, forbidden: usize) -> Result<Self> {
        if vertices < 3 {
            return Err(Error::PolygonTooSmall(vertices));
        }
        if forbidden > vertices {
            return Err(Error::TooManyForbidden {
                vertices,
                missing: forbidden,
            });
        }
        Ok(Self {
            vertices,
            forbidden,
        })
    }

    /// Root node `(N-2, m)`; `None` when `m > N-2`, where no triangulation exists.
    pub fn root(&self) -> Option<NodeState> {
        NodeState::new(self.vertices - 2, self.forbidden).ok()
    }

    fn live_root(&self) -> Result<NodeState> {
        let root = self.root().unwrap_or(NodeState {
            n: self.vertices - 2,
            m: self.vertices - 2,
        });
        if !root.is_live() {
            return Err(Error::EmptyClass(root));
        }
        Ok(root)
    }

    pub fn forbidden_ears(&self) -> impl Iterator<Item = Diagonal> + '_ {
        (0..self.forbidden).map(move |i| ear(self.vertices, i))
    }
}

/// Number of triangulations of `K(N, -m)`, i.e. `a[N-2][m]`.
pub fn count_triangulations(table: &BcTable, vertices: usize, forbidden: usize) -> Result<Natural> {
    let ctx = PolygonContext::new(vertices, forbidden)?;
    match ctx.root() {
        Some(root) => table.count(root).cloned(),
        None => Ok(Natural::zero()),
    }
}

pub fn validate(ctx: &PolygonContext, t: &Triangulation) -> std::result::Result<(), Violation> {
    let n = ctx.vertices;
    if t.n != n {
        return Err(Violation::PolygonMismatch {
            expected: n,
            found: t.n,
        });
    }
    let mut diags = t.diagonals.clone();
    diags.sort_unstable();
    if let Some(d) = diags.iter().find(|d| !d.is_diagonal_of(n)) {
        return Err(Violation::NotADiagonal(*d));
    }
    if let Some(w) = diags.windows(2).find(|w| w[0] == w[1]) {
        return Err(Violation::Duplicate(w[0]));
    }
    if diags.len() != n - 3 {
        return Err(Violation::WrongSize {
            expected: n - 3,
            found: diags.len(),
        });
    }
    // a[N-2][m] = 0 for m >= N-2: no triangulation avoids that many ears.
    if ctx.forbidden >= n - 2 {
        return Err(Violation::NoTriangulationExists {
            vertices: n,
            forbidden: ctx.forbidden,
        });
    }
    for (index, e) in ctx.forbidden_ears().enumerate() {
        if diags.binary_search(&e).is_ok() {
            return Err(Violation::ForbiddenEar { index, diagonal: e });
        }
    }
    check_non_crossing(n, &diags)?;
    if n >= 5 {
        let ears = t.ear_count();
        if ears < 2 {
            return Err(Violation::TooFewEars(ears));
        }
    }
    Ok(())
}

/// Chords form a non-crossing family iff they nest like parentheses when
/// sweeping the vertices in order. Expects sorted, duplicate-free input.
fn check_non_crossing(n: usize, sorted: &[Diagonal]) -> std::result::Result<(), Violation> {
    let mut by_hi: Vec<Vec<Diagonal>> = vec![Vec::new(); n];
    for &d in sorted {
        by_hi[d.hi].push(d);
    }
    let mut next_open = 0;
    let mut stack: Vec<Diagonal> = Vec::new();
    for (v, closing) in by_hi.iter().enumerate() {
        // Inner chords (larger lo) close first.
        for &d in closing.iter().rev() {
            match stack.pop() {
                Some(top) if top == d => {}
                Some(top) => return Err(Violation::Crossing(d, top)),
                None => unreachable!("every chord is opened before it closes"),
            }
        }
        // Outer chords (larger hi) open first.
        let start = next_open;
        while next_open < sorted.len() && sorted[next_open].lo == v {
            next_open += 1;
        }
        stack.extend(sorted[start..next_open].iter().rev());
    }
    Ok(())
}

/// Work done by one decode.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeStats {
    /// Tree edges followed.
    pub transitions: usize,
    /// Label-map entries shifted by vertex deletions.
    pub label_shifts: usize,
}

pub fn decode(ctx: &PolygonContext, path: &BranchPath) -> Result<Triangulation> {
    decode_traced(ctx, path).map(|(t, _)| t)
}

pub fn decode_traced(
    ctx: &PolygonContext,
    path: &BranchPath,
) -> Result<(Triangulation, DecodeStats)> {
    let root = ctx.live_root()?;
    let states = path.replay(root)?;
    let mut labels: Vec<usize> = (0..ctx.vertices).collect();
    let mut diagonals = Vec::with_capacity(ctx.vertices - 3);
    let mut stats = DecodeStats::default();
    for (s, &step) in states.iter().zip(path.steps()) {
        stats.transitions += 1;
        let r = labels.len();
        debug_assert_eq!(r, s.n + 2);
        if step == Step::L && r >= 4 {
            let m = s.m;
            diagonals.push(Diagonal::new(labels[(m + r - 1) % r], labels[(m + 1) % r]));
            labels.remove(m);
            stats.label_shifts += r - m - 1;
        }
    }
    Ok((Triangulation::new(ctx.vertices, diagonals), stats))
}

/// Inverse of [`decode`]: at each node, go left iff the next ear of the
/// current polygon is one of the diagonals.
pub fn encode(ctx: &PolygonContext, t: &Triangulation) -> Result<BranchPath> {
    validate(ctx, t).map_err(Error::InvalidTriangulation)?;
    let root = ctx.live_root()?;
    let set: HashSet<Diagonal> = t.diagonals.iter().copied().collect();
    let mut labels: Vec<usize> = (0..ctx.vertices).collect();
    let mut steps = Vec::with_capacity(2 * root.n);
    let mut s = root;
    while !s.is_leaf() {
        let r = labels.len();
        let m = s.m;
        let take =
            r == 3 || set.contains(&Diagonal::new(labels[(m + r - 1) % r], labels[(m + 1) % r]));
        if take {
            if r >= 4 {
                labels.remove(m);
            }
            steps.push(Step::L);
            s = s.left_child()?;
        } else {
            steps.push(Step::R);
            s = s.right_child()?;
            if !s.is_live() {
                // A validated triangulation always contains one of the remaining ears.
                return Err(Error::InvalidPath {
                    index: steps.len() - 1,
                    reason: format!("encoding entered empty subtree {s}"),
                });
            }
        }
    }
    Ok(BranchPath(steps))
}

pub fn unrank_triangulation(
    table: &BcTable,
    ctx: &PolygonContext,
    code: &Natural,
) -> Result<Triangulation> {
    let root = ctx.live_root()?;
    decode(ctx, &walker::unrank(table, root, code)?)
}

pub fn rank_triangulation(
    table: &BcTable,
    ctx: &PolygonContext,
    t: &Triangulation,
) -> Result<Code> {
    let root = ctx.live_root()?;
    walker::rank(table, root, &encode(ctx, t)?)
}

/// Exactly uniform triangulation of `K(N, -m)`, with its code.
pub fn sample_triangulation<S: BitSource + ?Sized>(
    table: &BcTable,
    ctx: &PolygonContext,
    src: &mut S,
) -> Result<(Code, Triangulation)> {
    let root = ctx.live_root()?;
    let (code, path) = walker::sample_path(table, root, src)?;
    Ok((code, decode(ctx, &path)?))
}

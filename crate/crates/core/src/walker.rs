//! Bijection between integers in `[0, a[root])` and root-to-leaf paths of
//! the branching tree, plus fixed-width codeword serialization.
//!
//! Node `(n, m)` has left child `(n-1, m-1)` (or `(n-1, 0)` when `m = 0`) and
//! right child `(n, m+1)`; the single leaf is `(0, 0)`. Left subtrees take
//! the low end of the code interval, so codes order paths lexicographically
//! with `L < R`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::random::{draw_width, uniform_below, BitSource};
use crate::table::BcTable;
use crate::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeState {
    pub n: usize,
    pub m: usize,
}

impl fmt::Display for NodeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.m)
    }
}

impl NodeState {
    pub const LEAF: NodeState = NodeState { n: 0, m: 0 };

    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m > n {
            return Err(Error::InvalidState { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn is_leaf(self) -> bool {
        self == Self::LEAF
    }

    /// Whether the subtree below is non-empty. Every `(n, m)` with `m < n`
    /// has at least one leaf; `(n, n)` has none for `n >= 1`.
    pub fn is_live(self) -> bool {
        self.is_leaf() || self.m < self.n
    }

    pub fn left_child(self) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::NoChild(self, "left"));
        }
        Ok(Self {
            n: self.n - 1,
            m: self.m.saturating_sub(1),
        })
    }

    pub fn right_child(self) -> Result<Self> {
        if self.n == 0 || self.m + 1 > self.n {
            return Err(Error::NoChild(self, "right"));
        }
        Ok(Self {
            n: self.n,
            m: self.m + 1,
        })
    }

    pub fn child(self, step: Step) -> Result<Self> {
        match step {
            Step::L => self.left_child(),
            Step::R => self.right_child(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    L,
    R,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchPath(pub Vec<Step>);

impl BranchPath {
    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn lefts(&self) -> usize {
        self.0.iter().filter(|&&s| s == Step::L).count()
    }

    /// Replays the path from `root` without a table, rejecting illegal
    /// moves, entries into empty subtrees, and paths that do not end on the
    /// leaf. Returns the visited states, `root` first.
    pub fn replay(&self, root: NodeState) -> Result<Vec<NodeState>> {
        if !root.is_live() {
            return Err(Error::EmptyClass(root));
        }
        let mut states = Vec::with_capacity(self.len() + 1);
        let mut s = root;
        states.push(s);
        for (index, &step) in self.0.iter().enumerate() {
            s = s.child(step).map_err(|e| Error::InvalidPath {
                index,
                reason: e.to_string(),
            })?;
            if !s.is_live() {
                return Err(Error::InvalidPath {
                    index,
                    reason: format!("enters empty subtree {s}"),
                });
            }
            states.push(s);
        }
        if !s.is_leaf() {
            return Err(Error::InvalidPath {
                index: self.len(),
                reason: format!("ends at {s}, not at the leaf"),
            });
        }
        Ok(states)
    }
}

impl fmt::Display for BranchPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::L => "L",
                Step::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for BranchPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(index, c)| match c {
                'L' | 'l' => Ok(Step::L),
                'R' | 'r' => Ok(Step::R),
                other => Err(Error::InvalidPath {
                    index,
                    reason: format!("unknown step {other:?}"),
                }),
            })
            .collect::<Result<_>>()
            .map(BranchPath)
    }
}

/// A leaf's rank below `root`: `0 <= value < a[root]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    pub value: Natural,
    pub root: NodeState,
}

impl Code {
    pub fn new(table: &BcTable, root: NodeState, value: Natural) -> Result<Self> {
        let count = table.count(root)?;
        if &value >= count {
            return Err(Error::CodeOutOfRange {
                code: value.to_string(),
                count: count.to_string(),
            });
        }
        Ok(Self { value, root })
    }

    /// Codeword width `ceil(log2 a[root])`.
    pub fn width(table: &BcTable, root: NodeState) -> Result<u64> {
        Ok(draw_width(table.count(root)?))
    }

    /// Fixed-width big-endian bits, zero padded; empty when `a[root] = 1`.
    pub fn to_bits(&self, table: &BcTable) -> Result<Vec<bool>> {
        let width = Self::width(table, self.root)?;
        Ok((0..width).rev().map(|b| self.value.bit(b)).collect())
    }

    pub fn from_bits(table: &BcTable, root: NodeState, bits: &[bool]) -> Result<Self> {
        let width = Self::width(table, root)?;
        if bits.len() as u64 != width {
            return Err(Error::CodeWidth {
                expected: width,
                actual: bits.len() as u64,
            });
        }
        let mut value = Natural::zero();
        for &b in bits {
            value <<= 1u32;
            if b {
                value += 1u32;
            }
        }
        Self::new(table, root, value)
    }

    /// Codeword as a `0`/`1` string.
    pub fn to_bit_string(&self, table: &BcTable) -> Result<String> {
        Ok(self
            .to_bits(table)?
            .into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect())
    }

    pub fn from_bit_string(table: &BcTable, root: NodeState, s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::BadBits(format!("unexpected {other:?} in codeword"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(table, root, &bits)
    }

    /// Wire format: bits packed MSB-first, final byte zero padded on the right.
    pub fn to_bytes(&self, table: &BcTable) -> Result<Vec<u8>> {
        Ok(pack_bits(&self.to_bits(table)?))
    }

    pub fn from_bytes(table: &BcTable, root: NodeState, bytes: &[u8]) -> Result<Self> {
        let width = Self::width(table, root)? as usize;
        if bytes.len() != width.div_ceil(8) {
            return Err(Error::CodeWidth {
                expected: width as u64,
                actual: 8 * bytes.len() as u64,
            });
        }
        let bits = unpack_bits(bytes, width);
        if unpack_bits(bytes, 8 * bytes.len())[width..]
            .iter()
            .any(|&b| b)
        {
            return Err(Error::BadBits("non-zero padding".into()));
        }
        Self::from_bits(table, root, &bits)
    }
}

pub fn pack_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
        })
        .collect()
}

pub fn unpack_bits(bytes: &[u8], len: usize) -> Vec<bool> {
    (0..len)
        .map(|i| (bytes[i / 8] >> (7 - i % 8)) & 1 == 1)
        .collect()
}

/// Table lookups performed by one walk.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WalkStats {
    pub lookups: usize,
}

pub fn unrank(table: &BcTable, root: NodeState, code: &Natural) -> Result<BranchPath> {
    unrank_with_stats(table, root, code).map(|(p, _)| p)
}

pub fn unrank_with_stats(
    table: &BcTable,
    root: NodeState,
    code: &Natural,
) -> Result<(BranchPath, WalkStats)> {
    let total = table.count(root)?;
    if total.is_zero() {
        return Err(Error::EmptyClass(root));
    }
    if code >= total {
        return Err(Error::CodeOutOfRange {
            code: code.to_string(),
            count: total.to_string(),
        });
    }
    let mut stats = WalkStats::default();
    let mut steps = Vec::with_capacity(2 * root.n);
    let mut residual = code.clone();
    let mut s = root;
    while !s.is_leaf() {
        let left = s.left_child()?;
        let left_count = table.count(left)?;
        stats.lookups += 1;
        if &residual < left_count {
            steps.push(Step::L);
            s = left;
        } else {
            residual -= left_count;
            steps.push(Step::R);
            // residual < a[s] - a[left] = a[right], so the right child exists.
            s = s.right_child()?;
        }
    }
    debug_assert!(residual.is_zero());
    Ok((BranchPath(steps), stats))
}

pub fn rank(table: &BcTable, root: NodeState, path: &BranchPath) -> Result<Code> {
    let states = path.replay(root)?;
    table.count(root)?;
    let mut value = Natural::zero();
    for (s, step) in states.iter().zip(path.steps()) {
        if *step == Step::R {
            value += table.count(s.left_child()?)?;
        }
    }
    Ok(Code { value, root })
}

/// One uniform draw below `a[root]`, then [`unrank`].
pub fn sample_path<S: BitSource + ?Sized>(
    table: &BcTable,
    root: NodeState,
    src: &mut S,
) -> Result<(Code, BranchPath)> {
    let total = table.count(root)?;
    if total.is_zero() {
        return Err(Error::EmptyClass(root));
    }
    let value = uniform_below(total, src)?;
    let path = unrank(table, root, &value)?;
    Ok((Code { value, root }, path))
}

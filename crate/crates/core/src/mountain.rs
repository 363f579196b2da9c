//! Mountain ranges (Dyck words) of semilength `n` on the walker tree rooted
//! at `(n, 0)`.
//!
//! State `(n, m)` stands for a partial range at height `m + 1` with `n`
//! downstrokes still to draw. The first upstroke is forced. A right step is
//! an upstroke. A left step is a downstroke; from height 1 (`m = 0`) the
//! range touches the horizon and, unless it is finished, must go up again,
//! so that step emits `DU`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::random::BitSource;
use crate::table::BcTable;
use crate::walker::{self, BranchPath, Code, NodeState, Step};
use crate::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stroke {
    Down,
    Up,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum LatticeStep {
    Right,
    Up,
}

/// Balanced word over `{U, D}` whose every prefix has at least as many `U`s.
/// Ordered lexicographically with `D < U`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord(Vec<Stroke>);

impl DyckWord {
    pub fn new(strokes: Vec<Stroke>) -> Result<Self> {
        check_strokes(&strokes)?;
        Ok(Self(strokes))
    }

    pub fn strokes(&self) -> &[Stroke] {
        &self.0
    }

    pub fn semilength(&self) -> usize {
        self.0.len() / 2
    }

    pub fn max_height(&self) -> usize {
        self.0
            .iter()
            .scan(0usize, |h, s| {
                match s {
                    Stroke::Up => *h += 1,
                    Stroke::Down => *h -= 1,
                }
                Some(*h)
            })
            .max()
            .unwrap_or(0)
    }

    /// `U -> (`, `D -> )`.
    pub fn to_parentheses(&self) -> String {
        self.0
            .iter()
            .map(|s| if *s == Stroke::Up { '(' } else { ')' })
            .collect()
    }

    pub fn from_parentheses(s: &str) -> Result<Self> {
        let strokes = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                '(' => Ok(Stroke::Up),
                ')' => Ok(Stroke::Down),
                other => Err(Error::InvalidDyck {
                    position,
                    reason: format!("unexpected {other:?}"),
                }),
            })
            .collect::<Result<_>>()?;
        Self::new(strokes)
    }

    /// `U -> RIGHT`, `D -> UP`: a monotone path from `(0,0)` to `(n,n)` that
    /// stays weakly below the diagonal.
    pub fn to_lattice_path(&self) -> Vec<LatticeStep> {
        self.0
            .iter()
            .map(|s| {
                if *s == Stroke::Up {
                    LatticeStep::Right
                } else {
                    LatticeStep::Up
                }
            })
            .collect()
    }

    pub fn from_lattice_path(steps: &[LatticeStep]) -> Result<Self> {
        Self::new(
            steps
                .iter()
                .map(|s| {
                    if *s == LatticeStep::Right {
                        Stroke::Up
                    } else {
                        Stroke::Down
                    }
                })
                .collect(),
        )
    }
}

fn check_strokes(strokes: &[Stroke]) -> Result<()> {
    let mut height = 0usize;
    for (position, s) in strokes.iter().enumerate() {
        match s {
            Stroke::Up => height += 1,
            Stroke::Down if height == 0 => {
                return Err(Error::InvalidDyck {
                    position,
                    reason: "dips below the horizon".into(),
                })
            }
            Stroke::Down => height -= 1,
        }
    }
    if height != 0 {
        return Err(Error::InvalidDyck {
            position: strokes.len(),
            reason: format!("ends at height {height}"),
        });
    }
    Ok(())
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Stroke::Up { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let strokes = s
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                'U' | 'u' => Ok(Stroke::Up),
                'D' | 'd' => Ok(Stroke::Down),
                other => Err(Error::InvalidDyck {
                    position,
                    reason: format!("unexpected {other:?}"),
                }),
            })
            .collect::<Result<_>>()?;
        Self::new(strokes)
    }
}

pub fn decode_dyck(n: usize, path: &BranchPath) -> Result<DyckWord> {
    decode_dyck_traced(n, path).map(|(w, _)| w)
}

/// Decodes and also returns the number of strokes emitted (always `2n`).
pub fn decode_dyck_traced(n: usize, path: &BranchPath) -> Result<(DyckWord, usize)> {
    let root = NodeState { n, m: 0 };
    let states = path.replay(root)?;
    let mut strokes = Vec::with_capacity(2 * n);
    if n >= 1 {
        strokes.push(Stroke::Up);
    }
    for (pair, &step) in states.windows(2).zip(path.steps()) {
        let (from, to) = (pair[0], pair[1]);
        match step {
            Step::R => strokes.push(Stroke::Up),
            Step::L => {
                strokes.push(Stroke::Down);
                if from.m == 0 && !to.is_leaf() {
                    strokes.push(Stroke::Up);
                }
            }
        }
    }
    let emitted = strokes.len();
    debug_assert_eq!(emitted, 2 * n);
    Ok((DyckWord(strokes), emitted))
}

/// Inverse of [`decode_dyck`].
pub fn encode_dyck(w: &DyckWord) -> BranchPath {
    let strokes = w.strokes();
    let mut steps = Vec::with_capacity(strokes.len());
    // strokes[0] is the forced initial upstroke.
    let mut height = 1usize;
    let mut i = 1;
    while i < strokes.len() {
        match strokes[i] {
            Stroke::Up => {
                steps.push(Step::R);
                height += 1;
            }
            Stroke::Down => {
                steps.push(Step::L);
                height -= 1;
                if height == 0 && i + 1 < strokes.len() {
                    // Forced upstroke off the horizon.
                    i += 1;
                    height = 1;
                }
            }
        }
        i += 1;
    }
    BranchPath(steps)
}

pub fn unrank_dyck(table: &BcTable, n: usize, code: &Natural) -> Result<DyckWord> {
    decode_dyck(n, &walker::unrank(table, NodeState { n, m: 0 }, code)?)
}

pub fn rank_dyck(table: &BcTable, w: &DyckWord) -> Result<Code> {
    walker::rank(
        table,
        NodeState {
            n: w.semilength(),
            m: 0,
        },
        &encode_dyck(w),
    )
}

pub fn sample_dyck<S: BitSource + ?Sized>(
    table: &BcTable,
    n: usize,
    src: &mut S,
) -> Result<(Code, DyckWord)> {
    let (code, path) = walker::sample_path(table, NodeState { n, m: 0 }, src)?;
    Ok((code, decode_dyck(n, &path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    fn path(s: &str) -> BranchPath {
        s.parse().unwrap()
    }

    #[test]
    fn decode_examples() {
        let t = BcTable::build(3).unwrap();
        assert_eq!(decode_dyck(1, &path("L")).unwrap(), w("UD"));
        assert_eq!(unrank_dyck(&t, 2, &0u32.into()).unwrap(), w("UDUD"));
        assert_eq!(unrank_dyck(&t, 2, &1u32.into()).unwrap(), w("UUDD"));
        assert_eq!(unrank_dyck(&t, 3, &4u32.into()).unwrap(), w("UUUDDD"));
        assert_eq!(unrank_dyck(&t, 0, &0u32.into()).unwrap(), w(""));
        let all: Vec<String> = (0..5u32)
            .map(|c| unrank_dyck(&t, 3, &c.into()).unwrap().to_string())
            .collect();
        assert_eq!(all, ["UDUDUD", "UDUUDD", "UUDDUD", "UUDUDD", "UUUDDD"]);
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_dyck(&w("UD")), path("L"));
        assert_eq!(encode_dyck(&w("UUDD")), path("RLL"));
        assert_eq!(encode_dyck(&w("UUDDUD")), path("RLLL"));
        assert_eq!(encode_dyck(&w("")), path(""));
        let t = BcTable::build(3).unwrap();
        assert_eq!(
            rank_dyck(&t, &w("UUDDUD")).unwrap().value,
            Natural::from(2u32)
        );
    }

    #[test]
    fn invalid_words() {
        assert!(matches!(
            "UDD".parse::<DyckWord>(),
            Err(Error::InvalidDyck { position: 2, .. })
        ));
        assert!(matches!(
            "DU".parse::<DyckWord>(),
            Err(Error::InvalidDyck { position: 0, .. })
        ));
        assert!(matches!(
            "UUD".parse::<DyckWord>(),
            Err(Error::InvalidDyck { position: 3, .. })
        ));
        assert!(matches!(
            "UXD".parse::<DyckWord>(),
            Err(Error::InvalidDyck { position: 1, .. })
        ));
        assert!(decode_dyck(2, &path("LR")).is_err());
    }

    #[test]
    fn recodings() {
        use LatticeStep::{Right, Up};
        assert_eq!(w("UD").to_lattice_path(), vec![Right, Up]);
        assert_eq!(w("UD").to_parentheses(), "()");
        assert_eq!(w("UUDD").to_lattice_path(), vec![Right, Right, Up, Up]);
        assert_eq!(w("UUDD").to_parentheses(), "(())");
        assert_eq!(w("UDUD").to_parentheses(), "()()");
        assert_eq!(DyckWord::from_parentheses("(()())").unwrap(), w("UUDUDD"));
        assert_eq!(
            DyckWord::from_lattice_path(&[Right, Up, Right, Up]).unwrap(),
            w("UDUD")
        );
        assert!(DyckWord::from_lattice_path(&[Up, Right]).is_err());
        assert_eq!(
            serde_json::to_string(&w("UD").to_lattice_path()).unwrap(),
            r#"["RIGHT","UP"]"#
        );
    }

    #[test]
    fn stroke_count_is_linear() {
        let t = BcTable::build(40).unwrap();
        let code = t.lookup(40, 0).unwrap() / 3u32;
        let p = walker::unrank(&t, NodeState { n: 40, m: 0 }, &code).unwrap();
        let (word, emitted) = decode_dyck_traced(40, &p).unwrap();
        assert_eq!(emitted, 80);
        assert!(word.max_height() <= 40);
    }
}

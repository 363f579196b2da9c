//! Brute-force enumerators used as ground truth. They share nothing with the
//! table or the walker: triangulations come from the classical split on the
//! triangle over the base edge, Dyck words from plain backtracking.

use crate::error::{Error, Result};
use crate::mountain::{DyckWord, Stroke};
use crate::triangulation::{Diagonal, Triangulation};
use crate::Natural;

/// Default largest polygon for [`enumerate_triangulations`] (`C_11 = 58786`).
pub const MAX_ORACLE_VERTICES: usize = 13;
/// Default largest semilength for [`enumerate_dyck`] (`C_14 = 2674440`).
pub const MAX_ORACLE_SEMILENGTH: usize = 14;

pub fn enumerate_triangulations(vertices: usize) -> Result<Vec<Triangulation>> {
    enumerate_triangulations_with_limit(vertices, MAX_ORACLE_VERTICES)
}

/// Like [`enumerate_triangulations`] with an explicit upper guard.
pub fn enumerate_triangulations_with_limit(
    vertices: usize,
    limit: usize,
) -> Result<Vec<Triangulation>> {
    if vertices < 3 || vertices > limit {
        return Err(Error::OracleGuard {
            size: vertices,
            min: 3,
            max: limit,
        });
    }
    let mut out: Vec<Triangulation> = split(0, vertices - 1)
        .into_iter()
        .map(|d| Triangulation::new(vertices, d))
        .collect();
    out.sort();
    Ok(out)
}

/// All diagonal sets triangulating the sub-polygon `lo..=hi` above its base
/// edge `{lo, hi}`.
fn split(lo: usize, hi: usize) -> Vec<Vec<Diagonal>> {
    if hi - lo < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for apex in lo + 1..hi {
        let left = split(lo, apex);
        let right = split(apex, hi);
        for l in &left {
            for r in &right {
                let mut d = Vec::with_capacity(l.len() + r.len() + 2);
                d.extend_from_slice(l);
                d.extend_from_slice(r);
                if apex - lo >= 2 {
                    d.push(Diagonal::new(lo, apex));
                }
                if hi - apex >= 2 {
                    d.push(Diagonal::new(apex, hi));
                }
                out.push(d);
            }
        }
    }
    out
}

/// Triangulations containing none of `forbidden`.
pub fn count_avoiding(vertices: usize, forbidden: &[Diagonal]) -> Result<Natural> {
    let all = enumerate_triangulations(vertices)?;
    let n = all
        .iter()
        .filter(|t| t.diagonals.iter().all(|d| !forbidden.contains(d)))
        .count();
    Ok(Natural::from(n))
}

pub fn enumerate_dyck(n: usize) -> Result<Vec<DyckWord>> {
    enumerate_dyck_with_limit(n, MAX_ORACLE_SEMILENGTH)
}

/// All Dyck words of semilength `n` in lexicographic order (`D < U`).
pub fn enumerate_dyck_with_limit(n: usize, limit: usize) -> Result<Vec<DyckWord>> {
    if n > limit {
        return Err(Error::OracleGuard {
            size: n,
            min: 0,
            max: limit,
        });
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(2 * n);
    backtrack(n, 0, 0, &mut buf, &mut out);
    Ok(out)
}

fn backtrack(n: usize, ups: usize, downs: usize, buf: &mut Vec<Stroke>, out: &mut Vec<DyckWord>) {
    if downs == n {
        out.push(DyckWord::new(buf.clone()).expect("backtracking keeps the prefix property"));
        return;
    }
    if downs < ups {
        buf.push(Stroke::Down);
        backtrack(n, ups, downs + 1, buf, out);
        buf.pop();
    }
    if ups < n {
        buf.push(Stroke::Up);
        backtrack(n, ups + 1, downs, buf, out);
        buf.pop();
    }
}

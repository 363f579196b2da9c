//! The table of counts `a[n][m]`, `0 <= m <= n <= n_max`.
//!
//! ```text
//! a[0][0] = 1,  a[n][n] = 0                      (n >= 1)
//! a[n][0] = a[n-1][0]   + a[n][1]                (n >= 1)
//! a[n][m] = a[n-1][m-1] + a[n][m+1]              (1 <= m <= n-1)
//! ```
//!
//! Column 0 holds the Catalan numbers. Cells are stored row-major in a dense
//! triangular layout; total storage grows roughly as `n^3 / 8` bytes since
//! entries have `O(n)` bits.

use std::io::{Read, Write};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::walker::NodeState;
use crate::Natural;

/// Largest `n_max` built without an explicit cap override (roughly 0.5 GB).
pub const DEFAULT_MAX_N: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BcTable {
    n_max: usize,
    cells: Vec<Natural>,
}

#[inline]
fn row_start(n: usize) -> usize {
    n * (n + 1) / 2
}

impl BcTable {
    /// Builds the table up to `n_max`, refusing sizes above [`DEFAULT_MAX_N`].
    pub fn build(n_max: usize) -> Result<Self> {
        Self::build_with_cap(n_max, DEFAULT_MAX_N)
    }

    pub fn build_with_cap(n_max: usize, cap: usize) -> Result<Self> {
        if n_max > cap {
            return Err(Error::TableTooLarge {
                requested: n_max,
                cap,
            });
        }
        let mut cells = Vec::with_capacity(row_start(n_max + 1));
        cells.push(Natural::one());
        for n in 1..=n_max {
            let prev = row_start(n - 1);
            let base = row_start(n);
            cells.resize(base + n + 1, Natural::zero());
            // Right to left: a[n][n] = 0 is already in place.
            for m in (1..n).rev() {
                let v = &cells[prev + m - 1] + &cells[base + m + 1];
                cells[base + m] = v;
            }
            let v = &cells[prev] + &cells[base + 1];
            cells[base] = v;
        }
        Ok(Self { n_max, cells })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `a[n][m]`; indices with `m > n` or `n > n_max` are rejected.
    pub fn lookup(&self, n: usize, m: usize) -> Result<&Natural> {
        if m > n || n > self.n_max {
            return Err(Error::IndexOutOfRange {
                n,
                m,
                n_max: self.n_max,
            });
        }
        Ok(&self.cells[row_start(n) + m])
    }

    /// Number of leaves below `state`.
    pub fn count(&self, state: NodeState) -> Result<&Natural> {
        self.lookup(state.n, state.m)
    }

    pub fn row(&self, n: usize) -> Option<&[Natural]> {
        (n <= self.n_max).then(|| &self.cells[row_start(n)..row_start(n) + n + 1])
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Natural]> + '_ {
        (0..=self.n_max).map(move |n| &self.cells[row_start(n)..row_start(n) + n + 1])
    }

    /// Re-evaluates the defining recursion on every stored cell. Returns the
    /// first offending cell, if any.
    pub fn recheck(&self) -> std::result::Result<(), (usize, usize)> {
        let cell = |n: usize, m: usize| &self.cells[row_start(n) + m];
        if !cell(0, 0).is_one() {
            return Err((0, 0));
        }
        for n in 1..=self.n_max {
            if !cell(n, n).is_zero() {
                return Err((n, n));
            }
            if *cell(n, 0) != cell(n - 1, 0) + cell(n, 1) {
                return Err((n, 0));
            }
            for m in 1..n {
                if *cell(n, m) != cell(n - 1, m - 1) + cell(n, m + 1) {
                    return Err((n, m));
                }
            }
        }
        Ok(())
    }

    /// CSV export: a header `n,0,1,...,n_max`, then one line per row with
    /// empty fields for `m > n`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Import(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["n".to_string()];
        header.extend((0..=self.n_max).map(|m| m.to_string()));
        w.write_record(&header).map_err(io)?;
        for (n, row) in self.rows().enumerate() {
            let mut rec = Vec::with_capacity(self.n_max + 2);
            rec.push(n.to_string());
            rec.extend(row.iter().map(|v| v.to_string()));
            rec.resize(self.n_max + 2, String::new());
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Import(e.to_string()))?;
        Ok(())
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rd = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(input);
        let mut rows = Vec::new();
        for (n, rec) in rd.records().enumerate() {
            let rec = rec.map_err(|e| Error::Import(e.to_string()))?;
            let label = rec.get(0).unwrap_or_default();
            if label != n.to_string() {
                return Err(Error::Import(format!("row {n} labelled {label:?}")));
            }
            let row: Vec<String> = rec.iter().skip(1).take(n + 1).map(str::to_string).collect();
            if rec.iter().skip(n + 2).any(|f| !f.is_empty()) {
                return Err(Error::Import(format!("row {n} has cells beyond m = n")));
            }
            rows.push(row);
        }
        Self::from_decimal_rows(rows)
    }

    /// JSON export: an array of rows, each an array of decimal strings.
    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect();
        serde_json::to_string(&rows).expect("string matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<String>> =
            serde_json::from_str(text).map_err(|e| Error::Import(e.to_string()))?;
        Self::from_decimal_rows(rows)
    }

    fn from_decimal_rows(rows: Vec<Vec<String>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Import("no rows".into()));
        }
        let n_max = rows.len() - 1;
        let mut cells = Vec::with_capacity(row_start(n_max + 1));
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::Import(format!(
                    "row {n} has {} cells, expected {}",
                    row.len(),
                    n + 1
                )));
            }
            for (m, s) in row.iter().enumerate() {
                let v = Natural::from_str(s).map_err(|_| {
                    Error::Import(format!("cell ({n}, {m}): {s:?} is not a decimal"))
                })?;
                cells.push(v);
            }
        }
        let table = Self { n_max, cells };
        table
            .recheck()
            .map_err(|(n, m)| Error::Import(format!("cell ({n}, {m}) violates the recursion")))?;
        Ok(table)
    }
}

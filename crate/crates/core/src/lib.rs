//! Exact counting, uniform sampling and optimal-length coding of Catalan
//! structures.
//!
//! Everything is driven by a single precomputed triangular table of counts
//! `a[n][m]` ([`BcTable`]). A node `(n, m)` of the implied binary branching
//! tree has a left child `(n-1, max(m-1, 0))` and a right child `(n, m+1)`,
//! and `a[n][m]` is the number of leaves below it. Ranking a leaf is then a
//! single walk from the root, and sampling reduces to drawing one uniform
//! integer below `a[root]`.
//!
//! Two families are instantiated on top of the generic [`walker`]:
//!
//! * [`triangulation`]: triangulations of a convex `N`-gon, optionally with
//!   `m` consecutive span-2 edges (ears) forbidden; counted by `a[N-2][m]`.
//! * [`mountain`]: mountain ranges / Dyck words of semilength `n`, with
//!   conversions to balanced parentheses and monotone lattice paths.
//!
//! Brute-force reference enumerators live in [`oracle`].

#![forbid(unsafe_code)]

pub mod closed_form;
pub mod error;
pub mod mountain;
pub mod oracle;
pub mod random;
pub mod series;
pub mod table;
pub mod triangulation;
pub mod walker;

pub use closed_form::{ballot, binomial, catalan};
pub use error::{Error, Result};
pub use mountain::{DyckWord, LatticeStep, Stroke};
pub use random::{uniform_below, BitSource, ReplayBitSource, SeededBitSource};
pub use series::{verify_generating_function, GfReport};
pub use table::{BcTable, DEFAULT_MAX_N};
pub use triangulation::{Diagonal, PolygonContext, Triangulation, Violation};
pub use walker::{BranchPath, Code, NodeState, Step};

/// Arbitrary-precision non-negative integer used for every count and code.
pub type Natural = num_bigint::BigUint;

//! Closed forms that are independent of the table: binomials, Catalan and
//! ballot numbers. The table builder never calls into this module, so these
//! serve as a second route to every count.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Natural;

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut acc = Natural::one();
    for t in 0..k {
        // acc * (n - t) is always divisible by t + 1 at this point.
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> Natural {
    let (q, r) = binomial(2 * n, n).div_rem(&BigUint::from(n + 1));
    debug_assert!(r.is_zero());
    q
}

/// Ballot number `N(i, j) = (i+1-j)/(i+1+j) * binom(i+1+j, j)`, with
/// `N(i, -1) = 0`. Arguments `j > i` are outside the contract and rejected.
///
/// Relates to the table by `a[n][m] = N(n, n-1-m)` for `n >= 1`.
pub fn ballot(i: u64, j: i64) -> Result<Natural> {
    if j < -1 || j > i as i64 {
        return Err(Error::BallotDomain { i: i as usize, j });
    }
    if j == -1 {
        return Ok(Natural::zero());
    }
    let j = j as u64;
    let numerator = binomial(i + 1 + j, j) * (i + 1 - j);
    let (q, r) = numerator.div_rem(&BigUint::from(i + 1 + j));
    assert!(
        r.is_zero(),
        "ballot closed form left a remainder at ({i}, {j})"
    );
    Ok(q)
}

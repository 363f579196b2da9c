//! Truncated bivariate integer power series, used to check the closed
//! generating function of the table numerically.
//!
//! With `Cat(x) = sum C_n x^n` the generating function of `a[n][m]` is
//!
//! ```text
//! G(x, y) = (1 - x y) (Cat(x) - y) / (1 - y + x y^2)
//! ```
//!
//! which keeps every intermediate coefficient integral. The denominator has
//! constant term 1, so its inverse exists in the truncated ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::closed_form::catalan;
use crate::table::BcTable;
use crate::Natural;

/// Series in `x, y` truncated to degree `d` in each variable separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series2 {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl Series2 {
    pub fn zero(degree: usize) -> Self {
        let side = degree + 1;
        Self {
            degree,
            coeffs: vec![BigInt::zero(); side * side],
        }
    }

    /// Builds a series from `(i, j, c)` terms for `c x^i y^j`; terms past the
    /// truncation are dropped.
    pub fn from_terms(degree: usize, terms: &[(usize, usize, i64)]) -> Self {
        let mut s = Self::zero(degree);
        for &(i, j, c) in terms {
            if i <= degree && j <= degree {
                *s.at_mut(i, j) += c;
            }
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[i * (self.degree + 1) + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.coeffs[i * (self.degree + 1) + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "truncation mismatch");
        let d = self.degree;
        let mut out = Self::zero(d);
        for i1 in 0..=d {
            for j1 in 0..=d {
                let a = self.coeff(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=d - i1 {
                    for j2 in 0..=d - j1 {
                        let b = other.coeff(i2, j2);
                        if !b.is_zero() {
                            *out.at_mut(i1 + i2, j1 + j2) += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Multiplicative inverse; `None` unless the constant term is `+-1`.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0, 0).clone();
        if c0.magnitude() != &Natural::one() {
            return None;
        }
        let d = self.degree;
        let mut inv = Self::zero(d);
        // Solve (self * inv)[i][j] = [i == j == 0] in lexicographic order.
        for i in 0..=d {
            for j in 0..=d {
                let mut acc = if i == 0 && j == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
                for p in 0..=i {
                    for q in 0..=j {
                        if p == 0 && q == 0 {
                            continue;
                        }
                        let a = self.coeff(p, q);
                        if !a.is_zero() {
                            acc -= a * inv.coeff(i - p, j - q);
                        }
                    }
                }
                *inv.at_mut(i, j) = acc * &c0;
            }
        }
        Some(inv)
    }
}

/// `G(x, y)` expanded to degree `d` in each variable.
pub fn generating_function(d: usize) -> Series2 {
    let mut cat_minus_y = Series2::zero(d);
    for i in 0..=d {
        *cat_minus_y.at_mut(i, 0) = BigInt::from(catalan(i as u64));
    }
    if d >= 1 {
        *cat_minus_y.at_mut(0, 1) -= 1;
    }
    let one_minus_xy = Series2::from_terms(d, &[(0, 0, 1), (1, 1, -1)]);
    let denom = Series2::from_terms(d, &[(0, 0, 1), (0, 1, -1), (1, 2, 1)]);
    let inv = denom.inverse().expect("denominator has unit constant term");
    one_minus_xy.mul(&cat_minus_y).mul(&inv)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub expected: Natural,
    pub found: BigInt,
}

#[derive(Debug, Clone)]
pub struct GfReport {
    pub degree: usize,
    pub series: Series2,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl GfReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Expands `G` to degree `d` and compares every coefficient `x^i y^j`,
/// `0 <= i, j <= d`, with `a[i][j]` (zero above the diagonal).
pub fn verify_generating_function(d: usize) -> GfReport {
    let series = generating_function(d);
    let table = BcTable::build_with_cap(d, usize::MAX).expect("no cap");
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for i in 0..=d {
        for j in 0..=d {
            let expected = if j <= i {
                table.lookup(i, j).expect("in range").clone()
            } else {
                Natural::zero()
            };
            let found = series.coeff(i, j);
            checked += 1;
            if *found != BigInt::from(expected.clone()) {
                mismatches.push(Mismatch {
                    i,
                    j,
                    expected,
                    found: found.clone(),
                });
            }
        }
    }
    GfReport {
        degree: d,
        series,
        checked,
        mismatches,
    }
}

//! Exact determinant signs over integers.
//!
//! Rational inputs are brought to integer form by scaling columns with a
//! positive factor, which leaves the sign of the determinant untouched.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use super::Rational;

/// Fraction-free Gaussian elimination (Bareiss). Consumes the matrix.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Sign of the determinant of a square rational matrix given by columns.
pub(crate) fn rational_det_sign(columns: &[Vec<Rational>]) -> Ordering {
    let n = columns.len();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (j, col) in columns.iter().enumerate() {
        debug_assert_eq!(col.len(), n);
        let lcm = col.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        for (i, r) in col.iter().enumerate() {
            m[i][j] = r.numer() * (&lcm / r.denom());
        }
    }
    bareiss_det(m).sign_ordering()
}

pub(crate) trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

#[inline]
pub(crate) fn det2_i128(a: [i128; 2], b: [i128; 2]) -> i128 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub(crate) fn det3_i128(a: [i128; 3], b: [i128; 3], c: [i128; 3]) -> i128 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) + c[0] * (a[1] * b[2] - a[2] * b[1])
}

//! Scalar fields the library can compute over.
//!
//! Every structure in the crate is generic over an exact field [`Scalar`].
//! The default is [`num_rational::BigRational`]; [`num_rational::Rational64`]
//! also works for small fixtures.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, One, Zero};

use crate::linalg::{gaussian_rank, Matrix};

/// An exact field.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    /// Rank of a matrix over this field. Defaults to Gauss-Jordan.
    fn rank(m: &Matrix<Self>) -> usize {
        gaussian_rank(m)
    }

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar field")
    }
}

impl Scalar for BigRational {
    fn rank(m: &Matrix<Self>) -> usize {
        sparse_rank(m)
    }
}

impl Scalar for Rational64 {}

/// `(-1)^k` as a scalar.
pub fn sign<T: Scalar>(k: usize) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `(-1)^k` for a possibly negative integer exponent.
pub fn sign_i<T: Scalar>(k: i64) -> T {
    sign(k.rem_euclid(2) as usize)
}

/// Fraction-free (Bareiss) rank over the rationals. Rows are scaled to
/// integers first; every division by the previous pivot is exact.
pub fn bareiss_rank(m: &Matrix<BigRational>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .filter(|x| !x.is_zero())
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|x| !x.is_zero()))
        .collect();

    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for i in rank + 1..a.len() {
            let factor = a[i][col].clone();
            for j in col..cols {
                let v = &pivot * &a[i][j] - &factor * &a[rank][j];
                a[i][j] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// A row as `(column, entry)` pairs with increasing columns.
type SparseRow = Vec<(usize, BigInt)>;

fn integer_rows(m: &Matrix<BigRational>) -> impl Iterator<Item = SparseRow> + '_ {
    (0..m.rows()).map(move |i| {
        let row = m.row(i);
        let lcm = row
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, (x * BigRational::from_integer(lcm.clone())).to_integer()))
            .collect();
        primitive(scaled)
    })
}

/// Divides out the content and makes the leading entry positive.
fn primitive(mut row: SparseRow) -> SparseRow {
    let Some(first) = row.first() else {
        return row;
    };
    let mut g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if first.1 < BigInt::zero() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in &mut row {
            *x = &*x / &g;
        }
    }
    row
}

/// `a·row − b·pivot`, dropping the cancelled leading entry.
fn combine(row: &SparseRow, a: &BigInt, pivot: &SparseRow, b: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &row[i - 1].1 - b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    primitive(out)
}

/// Fraction-free rank over the rationals on sparse integer rows. Rows are
/// bucketed by leading column; each bucket keeps its shortest row as pivot
/// and cross-multiplies the others against it, removing the content after
/// every step so entries stay small.
pub fn sparse_rank(m: &Matrix<BigRational>) -> usize {
    let mut buckets: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
    for row in integer_rows(m).filter(|r| !r.is_empty()) {
        buckets.entry(row[0].0).or_default().push(row);
    }
    let mut rank = 0;
    while let Some((_, mut rows)) = buckets.pop_first() {
        let best = (0..rows.len()).min_by_key(|&k| (rows[k].len(), k)).expect("buckets are nonempty");
        let pivot = rows.swap_remove(best);
        rank += 1;
        let lead = &pivot[0].1;
        for row in rows {
            let g = lead.gcd(&row[0].1);
            let reduced = combine(&row, &(lead / &g), &pivot, &(&row[0].1 / &g));
            if let Some(&(c, _)) = reduced.first() {
                buckets.entry(c).or_default().push(reduced);
            }
        }
    }
    rank
}

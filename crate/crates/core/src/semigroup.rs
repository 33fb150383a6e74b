//! Finite semigroups given by a multiplication table, and Ω^n label tuples.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::Report;

/// A finite semigroup Ω on elements `0..size`.
#[derive(Clone, PartialEq, Eq)]
pub struct Semigroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Semigroup")
            .field("names", &self.names)
            .field("table", &self.table)
            .finish()
    }
}

impl Semigroup {
    /// Builds a table, checking only its shape and range. Associativity is
    /// left to [`check_semigroup`].
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let names = (0..table.len()).map(|i| format!("w{i}")).collect();
        Self::with_names(names, table)
    }

    pub fn with_names(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Shape("semigroup must have at least one element".into()));
        }
        if names.len() != n {
            return Err(Error::Shape(format!(
                "{} names for a semigroup of size {n}",
                names.len()
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "semigroup row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::OutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        size: n,
                    });
                }
            }
        }
        Ok(Semigroup { names, table })
    }

    /// The one-element semigroup.
    pub fn trivial() -> Self {
        Semigroup {
            names: vec!["e".into()],
            table: vec![vec![0]],
        }
    }

    /// The cyclic group Z/n with element `k` standing for k mod n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        Semigroup {
            names: (0..n).map(|k| k.to_string()).collect(),
            table: (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
        }
    }

    /// The left-zero band: αβ = α.
    pub fn left_zero_band(n: usize) -> Self {
        assert!(n > 0);
        Semigroup {
            names: (0..n).map(|k| format!("l{k}")).collect(),
            table: (0..n).map(|i| vec![i; n]).collect(),
        }
    }

    /// The right-zero band: αβ = β.
    pub fn right_zero_band(n: usize) -> Self {
        assert!(n > 0);
        Semigroup {
            names: (0..n).map(|k| format!("r{k}")).collect(),
            table: (0..n).map(|_| (0..n).collect()).collect(),
        }
    }

    /// The two-element semilattice {1, 0} under multiplication.
    pub fn semilattice2() -> Self {
        Semigroup {
            names: vec!["1".into(), "0".into()],
            table: vec![vec![0, 1], vec![1, 1]],
        }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// The left-to-right product of a nonempty label word.
    pub fn product(&self, word: &[usize]) -> usize {
        let (&first, rest) = word.split_first().expect("empty label word");
        rest.iter().fold(first, |acc, &b| self.table[acc][b])
    }

    /// Number of label tuples of length `n`.
    pub fn tuple_count(&self, n: usize) -> usize {
        self.size().pow(n as u32)
    }

    /// Index of a label tuple; the first label is the most significant digit.
    pub fn tuple_index(&self, labels: &[usize]) -> usize {
        labels.iter().fold(0, |acc, &a| acc * self.size() + a)
    }

    /// Inverse of [`Semigroup::tuple_index`].
    pub fn tuple_at(&self, n: usize, mut index: usize) -> Vec<usize> {
        let s = self.size();
        let mut out = vec![0; n];
        for slot in out.iter_mut().rev() {
            *slot = index % s;
            index /= s;
        }
        out
    }

    /// All label tuples of length `n` in index order.
    pub fn tuples(&self, n: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.tuple_count(n)).map(move |i| self.tuple_at(n, i))
    }
}

/// Reports every triple (i, j, k) with (ij)k ≠ i(jk).
pub fn check_semigroup(s: &Semigroup) -> Report {
    let mut report = Report::new("semigroup associativity");
    let n = s.size();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let left = s.mul(s.mul(i, j), k);
                let right = s.mul(i, s.mul(j, k));
                if left != right {
                    report.record("associativity", || {
                        format!("({i},{j},{k}): (ab)c = {left}, a(bc) = {right}")
                    });
                }
            }
        }
    }
    report
}

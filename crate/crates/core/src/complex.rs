//! Rank bookkeeping for finite truncations of cochain complexes.

use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::tensor::unit;

/// The matrix of a linear map given as a function on coordinate vectors.
pub fn matrix_of<T: Scalar>(source_dim: usize, target_dim: usize, f: impl Fn(&[T]) -> Vec<T>) -> Matrix<T> {
    let columns: Vec<Vec<T>> = (0..source_dim)
        .map(|k| {
            let v = f(&unit(source_dim, k));
            assert_eq!(v.len(), target_dim, "image length");
            v
        })
        .collect();
    Matrix::from_columns(target_dim, &columns)
}

/// Dimensions of cochains, cocycles, coboundaries and cohomology in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeDims {
    pub degree: usize,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
}

impl DegreeDims {
    /// From the ranks of the outgoing and incoming differentials.
    pub fn from_ranks(degree: usize, cochains: usize, rank_out: usize, rank_in: usize) -> Self {
        let cocycles = cochains - rank_out;
        DegreeDims {
            degree,
            cochains,
            cocycles,
            coboundaries: rank_in,
            cohomology: cocycles - rank_in,
        }
    }
}

/// A truncated complex `C^first → … → C^{first+k}` given by its differentials;
/// `maps[k]` goes out of degree `first + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Truncation<T> {
    pub first: usize,
    pub maps: Vec<Matrix<T>>,
}

impl<T: Scalar> Truncation<T> {
    /// Dimensions for every degree that has an outgoing map, treating the
    /// incoming map of degree `first` as zero.
    pub fn dims(&self) -> Vec<DegreeDims> {
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        self.maps
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let rank_in = if k == 0 { 0 } else { ranks[k - 1] };
                DegreeDims::from_ranks(self.first + k, d.cols(), ranks[k], rank_in)
            })
            .collect()
    }

    /// The first product `maps[k+1]·maps[k]` that is nonzero, by source degree.
    pub fn square_defect(&self) -> Option<usize> {
        self.maps
            .windows(2)
            .position(|w| !w[1].mul(&w[0]).is_zero())
            .map(|k| self.first + k)
    }
}

/// Rank of the map on cohomology induced by `f`, given the cocycles of the
/// source as columns of `kernel_x` and the coboundaries of the target as
/// columns of `boundary_y`.
pub fn induced_rank<T: Scalar>(f: &Matrix<T>, kernel_x: &Matrix<T>, boundary_y: &Matrix<T>) -> usize {
    let image = f.mul(kernel_x);
    boundary_y.hcat(&image).rank() - boundary_y.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn matrix_of_records_columns() {
        let m = matrix_of::<Q>(2, 3, |v| vec![v[0].clone(), v[1].clone(), v[0].clone() + v[1].clone()]);
        assert_eq!(m, Matrix::from_rows(vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]]));
    }

    #[test]
    fn dims_of_short_exact_complex() {
        // k → k² → k, injective then surjective: all cohomology vanishes.
        let d0 = Matrix::from_rows(vec![vec![q(1)], vec![q(1)]]);
        let d1 = Matrix::from_rows(vec![vec![q(1), q(-1)]]);
        let d2 = Matrix::<Q>::zeros(0, 1);
        let t = Truncation { first: 0, maps: vec![d0, d1, d2] };
        assert_eq!(t.square_defect(), None);
        let h: Vec<usize> = t.dims().iter().map(|d| d.cohomology).collect();
        assert_eq!(h, vec![0, 0, 0]);
    }
}

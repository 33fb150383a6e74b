//! Small named structures used by the examples, tests and the CLI.

use std::sync::Arc;

use crate::algebra::{AssocAlgebra, Bimodule, OperatorFamily, RBFamily, RelRBFamily};
use crate::dendriform::one_dim_search;
use crate::homotopy::{suspend_dend, AInfStructure, DendInfFamily, GradedSpace};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::semigroup::Semigroup;
use crate::tensor::Multilinear;

fn n<T: Scalar>(k: i64) -> T {
    T::from_int(k)
}

fn table<T: Scalar>(rows: &[[[i64; 2]; 2]; 2]) -> Vec<Vec<Vec<T>>> {
    rows.iter()
        .map(|r| r.iter().map(|v| v.iter().map(|&x| n(x)).collect()).collect())
        .collect()
}

/// `k[x]/(x²)` on the basis `e1 = 1`, `e2 = x`.
pub fn dual_numbers<T: Scalar>() -> AssocAlgebra<T> {
    AssocAlgebra::new(2, table(&[[[1, 0], [0, 1]], [[0, 1], [0, 0]]])).unwrap()
}

/// The dual numbers with `e1·e1` changed to `e2`; not associative.
pub fn perturbed_dual_numbers<T: Scalar>() -> AssocAlgebra<T> {
    AssocAlgebra::new(2, table(&[[[0, 1], [0, 1]], [[0, 1], [0, 0]]])).unwrap()
}

/// `k` itself.
pub fn ground_field<T: Scalar>() -> AssocAlgebra<T> {
    AssocAlgebra::new(1, vec![vec![vec![T::one()]]]).unwrap()
}

/// The nilpotent operator `N(e1) = e2`, `N(e2) = 0` on the dual numbers.
pub fn nilpotent<T: Scalar>() -> Matrix<T> {
    Matrix::from_rows(vec![vec![n(0), n(0)], vec![n(1), n(0)]])
}

/// `R_α = c_α N` on the dual numbers; a Rota-Baxter family for any `c`.
pub fn nilpotent_family<T: Scalar>(omega: Semigroup, coeffs: &[i64]) -> RBFamily<T> {
    assert_eq!(coeffs.len(), omega.size());
    let ops = coeffs
        .iter()
        .map(|&c| {
            let mut m = nilpotent::<T>();
            m.set(1, 0, n(c));
            m
        })
        .collect();
    RBFamily::new(omega, dual_numbers(), OperatorFamily::new(ops).unwrap()).unwrap()
}

/// The dual numbers with the zero operator family.
pub fn dual_numbers_zero<T: Scalar>(omega: Semigroup) -> RBFamily<T> {
    let size = omega.size();
    RBFamily::new(omega, dual_numbers(), OperatorFamily::zero(size, 2, 2)).unwrap()
}

/// The zero algebra of dimension `dim` with arbitrary operators; every
/// family is Rota-Baxter because all products vanish.
pub fn zero_algebra_family<T: Scalar>(omega: Semigroup, ops: Vec<Matrix<T>>) -> RBFamily<T> {
    let dim = ops[0].rows();
    RBFamily::new(omega, AssocAlgebra::zero(dim), OperatorFamily::new(ops).unwrap()).unwrap()
}

/// `M = k` over the dual numbers through the augmentation `e1 ↦ 1, e2 ↦ 0`,
/// with `R_α(1) = c_α e2`.
pub fn augmentation_family<T: Scalar>(omega: Semigroup, coeffs: &[i64]) -> RelRBFamily<T> {
    assert_eq!(coeffs.len(), omega.size());
    let left = vec![vec![vec![n(1)]], vec![vec![n(0)]]];
    let right = vec![vec![vec![n(1)], vec![n(0)]]];
    let module = Bimodule::from_tables(2, 1, left, right).unwrap();
    let ops = coeffs
        .iter()
        .map(|&c| Matrix::from_rows(vec![vec![n(0)], vec![n(c)]]))
        .collect();
    RelRBFamily::new(omega, dual_numbers(), module, OperatorFamily::new(ops).unwrap()).unwrap()
}

/// Upper triangular 2×2 matrices on the basis `e11, e12, e22`.
pub fn upper_triangular<T: Scalar>() -> AssocAlgebra<T> {
    let e = |i: usize| -> Vec<T> { (0..3).map(|j| n(i64::from(i == j))).collect() };
    let z = || vec![T::zero(); 3];
    let table = vec![vec![e(0), e(1), z()], vec![z(), z(), e(1)], vec![z(), z(), e(2)]];
    AssocAlgebra::new(3, table).unwrap()
}

/// `R_α = c_α E` on [`upper_triangular`] with `E(e22) = e12` and `E = 0`
/// elsewhere.
pub fn triangular_family<T: Scalar>(omega: Semigroup, coeffs: &[i64]) -> RBFamily<T> {
    assert_eq!(coeffs.len(), omega.size());
    let ops = coeffs
        .iter()
        .map(|&c| {
            let mut m = Matrix::zeros(3, 3);
            m.set(1, 2, n(c));
            m
        })
        .collect();
    RBFamily::new(omega, upper_triangular(), OperatorFamily::new(ops).unwrap()).unwrap()
}

/// `k[x]/(x³)` on the basis `1, x, x²`.
pub fn truncated_polynomials<T: Scalar>() -> AssocAlgebra<T> {
    let e = |i: usize| -> Vec<T> { (0..3).map(|j| n(i64::from(i == j))).collect() };
    let table = (0..3).map(|i| (0..3).map(|j| if i + j < 3 { e(i + j) } else { vec![T::zero(); 3] }).collect()).collect();
    AssocAlgebra::new(3, table).unwrap()
}

/// Integration `xⁿ ↦ xⁿ⁺¹/(n+1)` on [`truncated_polynomials`].
pub fn integration<T: Scalar>() -> Matrix<T> {
    let mut m = Matrix::zeros(3, 3);
    m.set(1, 0, T::one());
    m.set(2, 1, T::one() / n(2));
    m
}

/// `R_α = c·J` for every label, `J` the integration operator.
pub fn integration_family<T: Scalar>(omega: Semigroup, c: i64) -> RBFamily<T> {
    let j: Matrix<T> = integration();
    let m = Matrix::from_rows((0..3).map(|i| j.row(i).iter().map(|x| x.clone() * n(c)).collect()).collect());
    let ops = OperatorFamily::new(vec![m; omega.size()]).unwrap();
    RBFamily::new(omega, truncated_polynomials(), ops).unwrap()
}

/// Rota-Baxter family fixtures with their names.
pub fn rb_fixtures<T: Scalar>() -> Vec<(String, RBFamily<T>)> {
    let z = |k: i64| n::<T>(k);
    vec![
        ("dual-trivial-zero".into(), dual_numbers_zero(Semigroup::trivial())),
        ("dual-z2-zero".into(), dual_numbers_zero(Semigroup::cyclic(2))),
        ("dual-trivial-nilpotent".into(), nilpotent_family(Semigroup::trivial(), &[1])),
        ("dual-z2-nilpotent".into(), nilpotent_family(Semigroup::cyclic(2), &[1, 2])),
        ("dual-band-nilpotent".into(), nilpotent_family(Semigroup::left_zero_band(2), &[1, -1])),
        ("triangular-z2".into(), triangular_family(Semigroup::cyclic(2), &[1, -2])),
        ("poly3-z2-integration".into(), integration_family(Semigroup::cyclic(2), 1)),
        (
            "zero-algebra-z2".into(),
            zero_algebra_family(
                Semigroup::cyclic(2),
                vec![
                    Matrix::from_rows(vec![vec![z(1), z(2)], vec![z(0), z(1)]]),
                    Matrix::from_rows(vec![vec![z(0), z(1)], vec![z(-1), z(0)]]),
                ],
            ),
        ),
    ]
}

/// Relative fixtures: the Rota-Baxter ones on their adjoint bimodules and
/// the augmentation module.
pub fn rel_fixtures<T: Scalar>() -> Vec<(String, RelRBFamily<T>)> {
    let mut out: Vec<(String, RelRBFamily<T>)> = rb_fixtures()
        .into_iter()
        .map(|(name, rb)| (name, rb.as_relative()))
        .collect();
    out.push(("augmentation-trivial".into(), augmentation_family(Semigroup::trivial(), &[1])));
    out.push(("augmentation-z2".into(), augmentation_family(Semigroup::cyclic(2), &[1, 3])));
    out.push(("augmentation-semilattice".into(), augmentation_family(Semigroup::semilattice2(), &[2, -1])));
    out
}

/// A degree 1 map `V^⊗k → V` given by its degree-compatible coefficients in
/// lexicographic order of (input tuple, output index).
pub fn graded_map<T: Scalar>(space: &GradedSpace, k: usize, coeffs: &[i64]) -> Multilinear<T> {
    let d = space.dim();
    let mut it = coeffs.iter();
    let m = Multilinear::from_fn(vec![d; k], d, |idx| {
        let total: i32 = idx.iter().map(|&i| space.degree(i)).sum::<i32>() + 1;
        (0..d)
            .map(|o| if space.degree(o) == total { n(*it.next().expect("enough coefficients")) } else { T::zero() })
            .collect()
    });
    assert!(it.next().is_none(), "too many coefficients");
    m
}

/// One vector in degree −1, one in degree 0.
pub fn two_term_space() -> GradedSpace {
    GradedSpace::new(vec![-1, 0])
}

/// An A∞-algebra on [`two_term_space`] with `μ₁`, `μ₂`, `μ₃`, `μ₄` all nonzero.
pub fn ainf_fixture<T: Scalar>() -> AInfStructure<T> {
    let s = two_term_space();
    let coeffs: [&[i64]; 4] = [&[-1], &[-1, -1, 0], &[-1, -1, 0, 0, 1, 1], &[-1, -1, -1, -1, 0, 0, 1, 0, 1, 0]];
    let mu = (1..).zip(coeffs).map(|(k, c)| graded_map(&s, k, c)).collect();
    AInfStructure::new(s, mu).unwrap()
}

/// A Dend∞ structure on [`two_term_space`] with `θ₁`, `θ₂`, `θ₃` nonzero,
/// the same for every label tuple.
pub fn dendinf_fixture<T: Scalar>(omega: Arc<Semigroup>) -> DendInfFamily<T> {
    let s = two_term_space();
    let coeffs: [&[&[i64]]; 3] = [
        &[&[-1]],
        &[&[-1, -1, 0], &[-1, -1, 0]],
        &[&[-1, -1, -1, -1, -1, 0], &[-1, -1, -1, 0, 0, 0], &[0, -1, 0, 0, 1, 1]],
    ];
    let maps: Vec<Vec<Multilinear<T>>> = (1..).zip(coeffs).map(|(k, sel)| sel.iter().map(|c| graded_map(&s, k, c)).collect()).collect();
    DendInfFamily::constant(omega, s, &maps).unwrap()
}

/// Dend∞ fixtures truncated at arity 3: the graded ones above, the zero
/// family, and the suspended one-dimensional dendriform families over `Z/2`.
pub fn dendinf_fixtures<T: Scalar>() -> Vec<(String, DendInfFamily<T>)> {
    let z2 = Arc::new(Semigroup::cyclic(2));
    let mut out = vec![
        ("two-term, trivial Ω".to_string(), dendinf_fixture(Arc::new(Semigroup::trivial()))),
        ("two-term, Z/2".to_string(), dendinf_fixture(z2.clone())),
        ("zero, Z/2".to_string(), DendInfFamily::zero(z2.clone(), two_term_space(), 3)),
    ];
    let values: Vec<T> = (-1..=1).map(n).collect();
    for (i, d) in one_dim_search(&z2, &values).into_iter().enumerate() {
        out.push((format!("suspended 1-dim #{i}"), suspend_dend(&d, 3)));
    }
    out
}

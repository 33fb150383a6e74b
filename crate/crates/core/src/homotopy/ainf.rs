//! A∞-algebras, their representations, and the degree −1 embedding of
//! associative algebras and bimodules.

use std::sync::Arc;

use crate::algebra::{AssocAlgebra, Bimodule};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::rbfam_cohomology::block_source;
use crate::scalar::Scalar;
use crate::semigroup::Semigroup;
use crate::tensor::{axpy, tuples, Multilinear};

use super::graded::{degree_violations, position_sign, unit_sign, GradedFamily, GradedSpace};

/// `(A, {μ_k})` truncated at arity `mu.len()`; `mu[k−1]` has arity `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfStructure<T> {
    space: GradedSpace,
    mu: Vec<Multilinear<T>>,
}

impl<T: Scalar> AInfStructure<T> {
    pub fn new(space: GradedSpace, mu: Vec<Multilinear<T>>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::Shape("need at least μ₁".into()));
        }
        let d = space.dim();
        for (k, m) in (1..).zip(&mu) {
            if m.arity() != k || m.target() != d || m.source().iter().any(|&s| s != d) {
                return Err(Error::Shape(format!("μ_{k} must map A^⊗{k} → A with dim A = {d}")));
            }
        }
        Ok(AInfStructure { space, mu })
    }

    pub fn zero(space: GradedSpace, max_arity: usize) -> Self {
        let d = space.dim();
        let mu = (1..=max_arity).map(|k| Multilinear::zeros(vec![d; k], d)).collect();
        AInfStructure { space, mu }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn max_arity(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self, k: usize) -> &Multilinear<T> {
        &self.mu[k - 1]
    }

    pub fn mus(&self) -> &[Multilinear<T>] {
        &self.mu
    }

    /// The operations as a constant family over `omega`.
    pub fn as_family(&self, omega: Arc<Semigroup>) -> GradedFamily<T> {
        GradedFamily::constant(omega, self.space.clone(), 1, &self.mu).expect("shapes checked")
    }
}

/// `(M, {η_k})`; `eta[k−1][p]` is the block of `η_k` with `M` in slot `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct AInfRepresentation<T> {
    space: GradedSpace,
    eta: Vec<Vec<Multilinear<T>>>,
}

impl<T: Scalar> AInfRepresentation<T> {
    pub fn new(space: GradedSpace, algebra: &GradedSpace, eta: Vec<Vec<Multilinear<T>>>) -> Result<Self> {
        if eta.is_empty() {
            return Err(Error::Shape("need at least η₁".into()));
        }
        let (da, dm) = (algebra.dim(), space.dim());
        for (k, blocks) in (1..).zip(&eta) {
            if blocks.len() != k {
                return Err(Error::Shape(format!("η_{k} needs {k} blocks")));
            }
            for (p, b) in blocks.iter().enumerate() {
                if b.source() != block_source(da, dm, k, p).as_slice() || b.target() != dm {
                    return Err(Error::Shape(format!("block {p} of η_{k} has the wrong shape")));
                }
            }
        }
        Ok(AInfRepresentation { space, eta })
    }

    pub fn zero(space: GradedSpace, algebra: &GradedSpace, max_arity: usize) -> Self {
        let (da, dm) = (algebra.dim(), space.dim());
        let eta = (1..=max_arity)
            .map(|k| (0..k).map(|p| Multilinear::zeros(block_source(da, dm, k, p), dm)).collect())
            .collect();
        AInfRepresentation { space, eta }
    }

    /// `M = A` with `η_k = μ_k` in every block.
    pub fn adjoint(a: &AInfStructure<T>) -> Self {
        let eta = a.mu.iter().map(|m| vec![m.clone(); m.arity()]).collect();
        AInfRepresentation {
            space: a.space.clone(),
            eta,
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn max_arity(&self) -> usize {
        self.eta.len()
    }

    /// Block of `η_k` with `M` in slot `p` (0-based).
    pub fn eta(&self, k: usize, p: usize) -> &Multilinear<T> {
        &self.eta[k - 1][p]
    }
}

fn structural<T: Scalar>(a: &AInfStructure<T>) -> Report {
    let mut report = Report::new("A∞ degrees");
    for m in &a.mu {
        let sources = vec![&a.space; m.arity()];
        degree_violations(m, &sources, &a.space, 1, &format!("μ_{} has degree 1", m.arity()), &mut report);
    }
    report
}

/// `Σ_{k+l=n+1} Σᵢ ±μ_k(a₁, …, μ_l(aᵢ, …), …)` as a map `A^⊗n → A`.
pub fn stasheff_residual<T: Scalar>(a: &AInfStructure<T>, n: usize) -> Result<Multilinear<T>> {
    if n == 0 || n > a.max_arity() {
        return Err(Error::Precondition(format!("identity {n} needs μ up to arity {n}, have {}", a.max_arity())));
    }
    let d = a.dim();
    let mut outer_idx = Vec::with_capacity(n);
    Ok(Multilinear::from_fn(vec![d; n], d, |x| {
        let degrees: Vec<i32> = x.iter().map(|&i| a.space.degree(i)).collect();
        let mut out = vec![T::zero(); d];
        for k in 1..=n {
            let l = n + 1 - k;
            for i in 0..k {
                let inner = a.mu[l - 1].at(&x[i..i + l]);
                outer_idx.clear();
                outer_idx.extend_from_slice(&x[..i]);
                outer_idx.push(0);
                outer_idx.extend_from_slice(&x[i + l..]);
                let v = a.mu[k - 1].eval_with(&outer_idx, i, inner);
                axpy(&mut out, &unit_sign(position_sign(&degrees, i + 1, 1)), &v);
            }
        }
        out
    }))
}

fn scan<T: Scalar>(report: &mut Report, m: &Multilinear<T>, rule: &str) {
    let dims = m.source().to_vec();
    for idx in tuples(&dims) {
        if m.at(&idx).iter().any(|c| !c.is_zero()) {
            report.record(rule, || format!("basis tuple {idx:?}"));
        }
    }
}

/// Checks degrees and the Stasheff identities for `n ≤ max_n`.
pub fn check_ainf<T: Scalar>(a: &AInfStructure<T>, max_n: usize) -> Result<Report> {
    if max_n > a.max_arity() {
        return Err(Error::Precondition(format!("asked for n ≤ {max_n}, structure stops at arity {}", a.max_arity())));
    }
    let mut report = Report::new("A∞ identities");
    let deg = structural(a);
    if !deg.is_ok() {
        report.absorb(deg);
        return Ok(report);
    }
    for n in 1..=max_n {
        scan(&mut report, &stasheff_residual(a, n)?, &format!("Stasheff identity n={n}"));
    }
    Ok(report)
}

/// The representation identities for `n` inputs with `M` in slot `q`.
pub fn representation_residual<T: Scalar>(a: &AInfStructure<T>, m: &AInfRepresentation<T>, n: usize, q: usize) -> Result<Multilinear<T>> {
    if n == 0 || n > a.max_arity() || n > m.max_arity() || q >= n {
        return Err(Error::Precondition(format!("identity n={n}, slot {q} is outside the truncation")));
    }
    let (da, dm) = (a.dim(), m.dim());
    let mut outer_idx = Vec::with_capacity(n);
    Ok(Multilinear::from_fn(block_source(da, dm, n, q), dm, |x| {
        let degrees: Vec<i32> = x
            .iter()
            .enumerate()
            .map(|(s, &i)| if s == q { m.space.degree(i) } else { a.space.degree(i) })
            .collect();
        let mut out = vec![T::zero(); dm];
        for k in 1..=n {
            let l = n + 1 - k;
            for i in 0..k {
                let (inner, outer_block) = if (i..i + l).contains(&q) {
                    (m.eta[l - 1][q - i].at(&x[i..i + l]), i)
                } else {
                    let p = if q < i { q } else { q - l + 1 };
                    (a.mu[l - 1].at(&x[i..i + l]), p)
                };
                outer_idx.clear();
                outer_idx.extend_from_slice(&x[..i]);
                outer_idx.push(0);
                outer_idx.extend_from_slice(&x[i + l..]);
                let v = m.eta[k - 1][outer_block].eval_with(&outer_idx, i, inner);
                axpy(&mut out, &unit_sign(position_sign(&degrees, i + 1, 1)), &v);
            }
        }
        out
    }))
}

/// Checks degrees and the representation identities for `n ≤ max_n`, every
/// placement of the `M` argument.
pub fn check_representation<T: Scalar>(a: &AInfStructure<T>, m: &AInfRepresentation<T>, max_n: usize) -> Result<Report> {
    if max_n > a.max_arity() || max_n > m.max_arity() {
        return Err(Error::Precondition(format!("asked for n ≤ {max_n}, data stops earlier")));
    }
    let mut report = Report::new("A∞ representation identities");
    for (k, blocks) in (1..).zip(&m.eta) {
        for (p, b) in blocks.iter().enumerate() {
            let sources: Vec<&GradedSpace> = (0..k).map(|s| if s == p { &m.space } else { &a.space }).collect();
            degree_violations(b, &sources, &m.space, 1, &format!("η_{k} has degree 1"), &mut report);
        }
    }
    if !report.is_ok() {
        return Ok(report);
    }
    for n in 1..=max_n {
        for q in 0..n {
            scan(&mut report, &representation_residual(a, m, n, q)?, &format!("representation identity n={n}, M in slot {}", q + 1));
        }
    }
    Ok(report)
}

/// `A ⊕ M` with `μ_k + η_k` on inputs with at most one `M` argument and zero
/// elsewhere; basis of `A` first.
pub fn combined<T: Scalar>(a: &AInfStructure<T>, m: &AInfRepresentation<T>) -> Result<AInfStructure<T>> {
    let k_max = a.max_arity().min(m.max_arity());
    let (da, dm) = (a.dim(), m.dim());
    let d = da + dm;
    let mu = (1..=k_max)
        .map(|k| {
            Multilinear::from_fn(vec![d; k], d, |x| {
                let mut out = vec![T::zero(); d];
                let ms: Vec<usize> = (0..k).filter(|&s| x[s] >= da).collect();
                match ms.as_slice() {
                    [] => out[..da].clone_from_slice(a.mu[k - 1].at(x)),
                    [p] => {
                        let idx: Vec<usize> = x.iter().enumerate().map(|(s, &i)| if s == *p { i - da } else { i }).collect();
                        out[da..].clone_from_slice(m.eta[k - 1][*p].at(&idx));
                    }
                    _ => {}
                }
                out
            })
        })
        .collect();
    AInfStructure::new(a.space.direct_sum(&m.space), mu)
}

/// An associative algebra on `s⁻¹A` (degree −1) with `μ₂(s⁻¹a, s⁻¹b) = s⁻¹(ab)`.
pub fn suspend_algebra<T: Scalar>(alg: &AssocAlgebra<T>, max_arity: usize) -> AInfStructure<T> {
    let mut a = AInfStructure::zero(GradedSpace::concentrated(alg.dim(), -1), max_arity.max(2));
    a.mu[1] = alg.mul_map().clone();
    a.mu.truncate(max_arity.max(1));
    a
}

/// The bimodule on `s⁻¹M` with `η₂` given by the two actions.
pub fn suspend_bimodule<T: Scalar>(alg: &AssocAlgebra<T>, module: &Bimodule<T>, max_arity: usize) -> AInfRepresentation<T> {
    let a_space = GradedSpace::concentrated(alg.dim(), -1);
    let mut m = AInfRepresentation::zero(GradedSpace::concentrated(module.dim(), -1), &a_space, max_arity.max(2));
    m.eta[1] = vec![module.right().clone(), module.left().clone()];
    m.eta.truncate(max_arity.max(1));
    m
}

/// Recovers the algebra from a structure concentrated in degree −1 with only `μ₂`.
pub fn unsuspend_algebra<T: Scalar>(a: &AInfStructure<T>) -> Result<AssocAlgebra<T>> {
    if a.space.degrees().iter().any(|&d| d != -1) {
        return Err(Error::Precondition("structure is not concentrated in degree −1".into()));
    }
    if a.max_arity() < 2 || a.mu.iter().enumerate().any(|(k, m)| k != 1 && !m.is_zero()) {
        return Err(Error::Precondition("only μ₂ may be nonzero".into()));
    }
    AssocAlgebra::from_multilinear(a.mu[1].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{adjoint_bimodule, check_algebra};
    use crate::samples;
    use crate::Q;

    #[test]
    fn suspended_algebra_matches_associativity() {
        for (alg, ok) in [(samples::dual_numbers::<Q>(), true), (samples::perturbed_dual_numbers(), false)] {
            let a = suspend_algebra(&alg, 4);
            assert_eq!(check_ainf(&a, 4).unwrap().is_ok(), ok);
            assert_eq!(check_algebra(&alg).is_ok(), ok);
            assert_eq!(unsuspend_algebra(&a).unwrap(), alg);
        }
    }

    #[test]
    fn zero_structure_is_valid() {
        let a = AInfStructure::<Q>::zero(GradedSpace::new(vec![0, 1, -2]), 3);
        assert!(check_ainf(&a, 3).unwrap().is_ok());
        assert!(check_ainf(&a, 4).is_err());
    }

    #[test]
    fn adjoint_and_suspended_bimodules_are_representations() {
        let alg = samples::dual_numbers::<Q>();
        let a = suspend_algebra(&alg, 3);
        assert!(check_representation(&a, &AInfRepresentation::adjoint(&a), 3).unwrap().is_ok());
        let m = suspend_bimodule(&alg, &adjoint_bimodule(&alg), 3);
        assert!(check_representation(&a, &m, 3).unwrap().is_ok());
        assert_eq!(m, AInfRepresentation::adjoint(&a));
        let c = combined(&a, &m).unwrap();
        assert!(check_ainf(&c, 3).unwrap().is_ok());
    }

    #[test]
    fn wrong_degree_is_reported() {
        let space = GradedSpace::new(vec![0, 0]);
        let mu1 = Multilinear::from_fn(vec![2], 2, |i| if i[0] == 0 { vec![Q::from_integer(1.into()), Q::from_integer(0.into())] } else { vec![Q::from_integer(0.into()); 2] });
        let a = AInfStructure::new(space, vec![mu1]).unwrap();
        let r = check_ainf(&a, 1).unwrap();
        assert!(!r.is_ok());
        assert!(r.violations()[0].rule.contains("degree"));
    }
}

//! The derived bracket on `⊕ₙ Hom_Ω(M^⊗n, A)`, Maurer-Cartan elements and
//! the differential `d_R` with its cohomology.

use std::sync::Arc;

use crate::algebra::{AssocAlgebra, Bimodule, RelRBFamily};
use crate::complex::{matrix_of, DegreeDims, Truncation};
use crate::error::{Error, Limits, Result};
use crate::linalg::Matrix;
use crate::omega_hom::{family_dim, gerstenhaber_bracket, same_omega, OmegaMap};
use crate::report::Report;
use crate::scalar::{sign, Scalar};
use crate::semigroup::Semigroup;
use crate::tensor::{add_into, axpy, is_zero_vec, sub_into, Multilinear};

/// `a ·_M e_u`.
fn left_basis<T: Scalar>(module: &Bimodule<T>, a: &[T], u: usize) -> Vec<T> {
    module.left().eval_with(&[0, u], 0, a)
}

/// `e_u ·_M a`.
fn right_basis<T: Scalar>(module: &Bimodule<T>, u: usize, a: &[T]) -> Vec<T> {
    module.right().eval_with(&[u, 0], 1, a)
}

fn check_cochain<T: Scalar>(f: &OmegaMap<T>, algebra: &AssocAlgebra<T>, module: &Bimodule<T>) -> Result<()> {
    if f.target() != algebra.dim() || f.source().iter().any(|&d| d != module.dim()) {
        return Err(Error::Shape(format!(
            "expected a map M^⊗n → A with dim M = {}, dim A = {}; got {:?} → {}",
            module.dim(),
            algebra.dim(),
            f.source(),
            f.target()
        )));
    }
    Ok(())
}

/// `R` as an arity-1 cochain.
pub fn operator_cochain<T: Scalar>(s: &RelRBFamily<T>) -> OmegaMap<T> {
    OmegaMap::from_fn(s.omega_arc().clone(), vec![s.dim_m()], s.dim_a(), |l| {
        Multilinear::from_matrix(s.ops().matrix(l[0]))
    })
}

/// Labels of the outer map after merging positions `s..=s+n` into one.
fn merged(omega: &Semigroup, labels: &[usize], s: usize, n: usize, out: &mut Vec<usize>) {
    out.clear();
    out.extend_from_slice(&labels[..s]);
    out.push(omega.product(&labels[s..=s + n]));
    out.extend_from_slice(&labels[s + n + 1..]);
}

/// `Σᵢ (−1)^{(i−1)n} f(…, g(…)·u, …) − Σᵢ (−1)^{in} f(…, u·g(…), …)` at one
/// label and basis tuple, accumulated into `out` with factor `c`.
#[allow(clippy::too_many_arguments)]
fn insertions<T: Scalar>(
    f: &OmegaMap<T>,
    g: &OmegaMap<T>,
    module: &Bimodule<T>,
    labels: &[usize],
    u: &[usize],
    c: &T,
    out: &mut [T],
) {
    let (m, n) = (f.arity(), g.arity());
    let omega = f.omega();
    let mut lab = Vec::with_capacity(m);
    let mut basis = vec![0; m];
    for s in 0..m {
        merged(omega, labels, s, n, &mut lab);
        let entry = f.entry(&lab);
        if entry.is_zero() {
            continue;
        }
        basis[..s].copy_from_slice(&u[..s]);
        basis[s + 1..].copy_from_slice(&u[s + n + 1..]);
        let inner = g.entry(&labels[s..s + n]).at(&u[s..s + n]);
        if !is_zero_vec(inner) {
            let y = left_basis(module, inner, u[s + n]);
            let coeff = sign::<T>(s * n) * c.clone();
            axpy(out, &coeff, &entry.eval_with(&basis, s, &y));
        }
        let inner = g.entry(&labels[s + 1..=s + n]).at(&u[s + 1..=s + n]);
        if !is_zero_vec(inner) {
            let y = right_basis(module, u[s], inner);
            let coeff = -(sign::<T>((s + 1) * n) * c.clone());
            axpy(out, &coeff, &entry.eval_with(&basis, s, &y));
        }
    }
}

/// `⟦f, a⟧` for `a ∈ A`.
fn bracket_with_element<T: Scalar>(
    f: &OmegaMap<T>,
    a: &[T],
    algebra: &AssocAlgebra<T>,
    module: &Bimodule<T>,
) -> OmegaMap<T> {
    let m = f.arity();
    OmegaMap::from_fn(f.omega().clone(), f.source().to_vec(), f.target(), |labels| {
        let entry = f.entry(labels);
        Multilinear::from_fn(f.source().to_vec(), f.target(), |u| {
            let mut out = vec![T::zero(); f.target()];
            if entry.is_zero() {
                return out;
            }
            for s in 0..m {
                let mut y = left_basis(module, a, u[s]);
                sub_into(&mut y, &right_basis(module, u[s], a));
                add_into(&mut out, &entry.eval_with(u, s, &y));
            }
            let fu = entry.at(u);
            add_into(&mut out, &algebra.product(fu, a));
            sub_into(&mut out, &algebra.product(a, fu));
            out
        })
    })
}

/// The derived bracket `⟦f, g⟧` of `f ∈ Hom_Ω(M^⊗m, A)` and
/// `g ∈ Hom_Ω(M^⊗n, A)`, evaluated term by term. Arity 0 means an element
/// of `A`. Degrees are arities.
pub fn derived_bracket<T: Scalar>(
    f: &OmegaMap<T>,
    g: &OmegaMap<T>,
    algebra: &AssocAlgebra<T>,
    module: &Bimodule<T>,
) -> Result<OmegaMap<T>> {
    check_cochain(f, algebra, module)?;
    check_cochain(g, algebra, module)?;
    if !same_omega(f.omega(), g.omega()) {
        return Err(Error::Shape("cochains are indexed by different semigroups".into()));
    }
    let (m, n) = (f.arity(), g.arity());
    let omega = f.omega().clone();
    Ok(match (m, n) {
        (0, 0) => {
            let (a, b) = (f.as_element(), g.as_element());
            let mut v = algebra.product(a, b);
            sub_into(&mut v, &algebra.product(b, a));
            OmegaMap::element(omega, v)
        }
        (_, 0) => bracket_with_element(f, g.as_element(), algebra, module),
        (0, _) => bracket_with_element(g, f.as_element(), algebra, module).neg(),
        _ => {
            let e: T = sign(m * n);
            let back = -e.clone();
            let total = m + n;
            let (da, dm) = (algebra.dim(), module.dim());
            OmegaMap::from_fn(omega, vec![dm; total], da, |labels| {
                Multilinear::from_fn(vec![dm; total], da, |u| {
                    let mut out = vec![T::zero(); da];
                    insertions(f, g, module, labels, u, &T::one(), &mut out);
                    insertions(g, f, module, labels, u, &back, &mut out);
                    let fg = algebra.product(f.entry(&labels[..m]).at(&u[..m]), g.entry(&labels[m..]).at(&u[m..]));
                    let gf = algebra.product(g.entry(&labels[..n]).at(&u[..n]), f.entry(&labels[n..]).at(&u[n..]));
                    axpy(&mut out, &e, &fg);
                    sub_into(&mut out, &gf);
                    out
                })
            })
        }
    })
}

/// The product `(a,u)·(b,v) = (ab, av + ub)` on `A ⊕ M`, lifted constantly.
pub fn semidirect_product<T: Scalar>(omega: Arc<Semigroup>, algebra: &AssocAlgebra<T>, module: &Bimodule<T>) -> OmegaMap<T> {
    let (da, dm) = (algebra.dim(), module.dim());
    let dv = da + dm;
    let mul = Multilinear::from_fn(vec![dv, dv], dv, |idx| {
        let mut out = vec![T::zero(); dv];
        match (idx[0] < da, idx[1] < da) {
            (true, true) => out[..da].clone_from_slice(algebra.basis_product(idx[0], idx[1])),
            (true, false) => out[da..].clone_from_slice(module.left().at(&[idx[0], idx[1] - da])),
            (false, true) => out[da..].clone_from_slice(module.right().at(&[idx[0] - da, idx[1]])),
            (false, false) => {}
        }
        out
    });
    OmegaMap::constant_lift(omega, &mul)
}

/// `f ∈ Hom_Ω(M^⊗n, A)` as a map on `A ⊕ M` that ignores `A`-components
/// and lands in `A`.
pub fn embed_cochain<T: Scalar>(f: &OmegaMap<T>, dim_a: usize, dim_m: usize) -> OmegaMap<T> {
    let dv = dim_a + dim_m;
    let n = f.arity();
    let mut shifted = vec![0; n];
    OmegaMap::from_fn(f.omega().clone(), vec![dv; n], dv, |labels| {
        let entry = f.entry(labels);
        Multilinear::from_fn(vec![dv; n], dv, |idx| {
            let mut out = vec![T::zero(); dv];
            if idx.iter().all(|&i| i >= dim_a) {
                for (s, &i) in shifted.iter_mut().zip(idx) {
                    *s = i - dim_a;
                }
                out[..dim_a].clone_from_slice(entry.at(&shifted));
            }
            out
        })
    })
}

/// `(−1)^m [[△, f]_Ω, g]_Ω` computed with Ω-Gerstenhaber brackets on
/// `A ⊕ M`. For `m, n ≥ 1` this equals `embed_cochain(⟦f, g⟧)`.
pub fn derived_bracket_via_composition<T: Scalar>(
    f: &OmegaMap<T>,
    g: &OmegaMap<T>,
    algebra: &AssocAlgebra<T>,
    module: &Bimodule<T>,
) -> Result<OmegaMap<T>> {
    check_cochain(f, algebra, module)?;
    check_cochain(g, algebra, module)?;
    if f.arity() == 0 || g.arity() == 0 {
        return Err(Error::Precondition("the composition route needs arities ≥ 1".into()));
    }
    let (da, dm) = (algebra.dim(), module.dim());
    let delta = semidirect_product(f.omega().clone(), algebra, module);
    let inner = gerstenhaber_bracket(&delta, &embed_cochain(f, da, dm))?;
    let out = gerstenhaber_bracket(&inner, &embed_cochain(g, da, dm))?;
    Ok(out.scale(&sign(f.arity())))
}

/// Reports label and basis pairs where `⟦R, R⟧` is nonzero.
pub fn mc_check<T: Scalar>(s: &RelRBFamily<T>) -> Report {
    let mut report = Report::new("Maurer-Cartan equation");
    let r = operator_cochain(s);
    let rr = derived_bracket(&r, &r, s.algebra(), s.module()).expect("shapes fixed by the family");
    let dm = s.dim_m();
    for labels in s.omega().tuples(2) {
        let entry = rr.entry(&labels);
        for u in 0..dm {
            for v in 0..dm {
                let val = entry.at(&[u, v]);
                if !is_zero_vec(val) {
                    report.record("⟦R,R⟧ = 0", || {
                        let parts: Vec<String> = val.iter().map(ToString::to_string).collect();
                        format!("(α={},β={},m{u},m{v}) value [{}]", labels[0], labels[1], parts.join(", "))
                    });
                }
            }
        }
    }
    report
}

/// `d_R` on `Hom_Ω(M^⊗n, A)` by its explicit formula, without checking that
/// `R` is Maurer-Cartan.
pub fn d_r_raw<T: Scalar>(f: &OmegaMap<T>, s: &RelRBFamily<T>) -> Result<OmegaMap<T>> {
    check_cochain(f, s.algebra(), s.module())?;
    if !same_omega(f.omega(), s.omega_arc()) {
        return Err(Error::Shape("cochain is indexed by a different semigroup".into()));
    }
    let (alg, module, omega) = (s.algebra(), s.module(), s.omega());
    let n = f.arity();
    let (da, dm) = (s.dim_a(), s.dim_m());
    let ops: Vec<Vec<Vec<T>>> = (0..omega.size())
        .map(|a| (0..dm).map(|u| s.ops().column(a, u)).collect())
        .collect();
    let nonzero: Vec<bool> = f.entries().iter().map(|e| !e.is_zero()).collect();
    let live = |labels: &[usize]| nonzero[omega.tuple_index(labels)];
    let last: T = sign(n + 1);
    let mut lab = Vec::with_capacity(n);
    let mut basis = vec![0; n];
    Ok(OmegaMap::from_fn(s.omega_arc().clone(), vec![dm; n + 1], da, |labels| {
        let top = omega.product(labels);
        Multilinear::from_fn(vec![dm; n + 1], da, |u| {
            let mut out = vec![T::zero(); da];
            if live(&labels[1..]) {
                let t = f.entry(&labels[1..]).at(&u[1..]);
                add_into(&mut out, &alg.product(&ops[labels[0]][u[0]], t));
                sub_into(&mut out, &s.ops().apply(top, &right_basis(module, u[0], t)));
            }
            for j in 0..n {
                merged(omega, labels, j, 1, &mut lab);
                if !live(&lab) {
                    continue;
                }
                basis[..j].copy_from_slice(&u[..j]);
                basis[j + 1..].copy_from_slice(&u[j + 2..]);
                let mut y = left_basis(module, &ops[labels[j]][u[j]], u[j + 1]);
                add_into(&mut y, &right_basis(module, u[j], &ops[labels[j + 1]][u[j + 1]]));
                axpy(&mut out, &sign(j + 1), &f.entry(&lab).eval_with(&basis, j, &y));
            }
            if live(&labels[..n]) {
                let t = f.entry(&labels[..n]).at(&u[..n]);
                axpy(&mut out, &last, &alg.product(t, &ops[labels[n]][u[n]]));
                let back = s.ops().apply(top, &left_basis(module, t, u[n]));
                axpy(&mut out, &-last.clone(), &back);
            }
            out
        })
    }))
}

/// `d_R(f) = (−1)^n ⟦R, f⟧`; refused unless `R` is Maurer-Cartan.
pub fn d_r<T: Scalar>(f: &OmegaMap<T>, s: &RelRBFamily<T>) -> Result<OmegaMap<T>> {
    let report = mc_check(s);
    if !report.is_ok() {
        return Err(Error::invalid("operator family", report));
    }
    d_r_raw(f, s)
}

/// Number of coordinates of `Hom_Ω(M^⊗n, A)`.
pub fn cochain_dim<T: Scalar>(s: &RelRBFamily<T>, n: usize) -> usize {
    family_dim(s.omega(), &vec![s.dim_m(); n], s.dim_a())
}

/// The matrix of `d_R : C^n → C^{n+1}` in the coordinates of
/// [`OmegaMap::to_vector`].
pub fn d_r_matrix<T: Scalar>(s: &RelRBFamily<T>, n: usize) -> Matrix<T> {
    let omega = s.omega_arc().clone();
    let (da, dm) = (s.dim_a(), s.dim_m());
    matrix_of(cochain_dim(s, n), cochain_dim(s, n + 1), |v| {
        let f = OmegaMap::from_vector(omega.clone(), vec![dm; n], da, v);
        d_r_raw(&f, s).expect("shapes fixed by the family").to_vector()
    })
}

/// Both readings of `H^•_R(M, A)`: with elements of `A` as degree-0
/// cochains, and with the complex starting in degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorCohomology {
    /// Degrees `0..=N`.
    pub with_elements: Vec<DegreeDims>,
    /// Degrees `1..=N`.
    pub without_elements: Vec<DegreeDims>,
}

/// Guards the coordinate count of the largest cochain space `C^{N+1}`.
pub(crate) fn guard_operator_degree<T: Scalar>(s: &RelRBFamily<T>, top: usize, limits: &Limits) -> Result<()> {
    let needed = (s.omega().size() * s.dim_m())
        .checked_pow(top as u32)
        .and_then(|x| x.checked_mul(s.dim_a()))
        .unwrap_or(usize::MAX);
    limits.guard(|| format!("Hom_Ω(M^⊗{top}, A)"), needed)
}

/// The truncation `C^0 → C^1 → … → C^{N+1}` of the `d_R` complex.
pub fn operator_truncation<T: Scalar>(s: &RelRBFamily<T>, max_degree: usize, limits: &Limits) -> Result<Truncation<T>> {
    let report = mc_check(s);
    if !report.is_ok() {
        return Err(Error::invalid("operator family", report));
    }
    guard_operator_degree(s, max_degree + 1, limits)?;
    Ok(Truncation {
        first: 0,
        maps: (0..=max_degree).map(|n| d_r_matrix(s, n)).collect(),
    })
}

/// Dimensions of `H^n_R(M, A)` for `n ≤ max_degree` in both conventions.
pub fn cohomology_r<T: Scalar>(s: &RelRBFamily<T>, max_degree: usize, limits: &Limits) -> Result<OperatorCohomology> {
    if max_degree == 0 {
        return Err(Error::Precondition("max_degree must be at least 1".into()));
    }
    let t = operator_truncation(s, max_degree, limits)?;
    let with_elements = t.dims();
    let mut without_elements = with_elements[1..].to_vec();
    let first = &mut without_elements[0];
    *first = DegreeDims::from_ranks(1, first.cochains, first.cochains - first.cocycles, 0);
    Ok(OperatorCohomology {
        with_elements,
        without_elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_rel_rbf;
    use crate::samples;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn bracket_of_r_with_itself_is_minus_twice_the_defect() {
        let s = samples::nilpotent_family::<Q>(Semigroup::cyclic(2), &[1, 2]).as_relative();
        let s = s.with_ops(crate::algebra::OperatorFamily::constant(2, Matrix::identity(2))).unwrap();
        let r = operator_cochain(&s);
        let rr = derived_bracket(&r, &r, s.algebra(), s.module()).unwrap();
        for l in s.omega().tuples(2) {
            for u in 0..2 {
                for v in 0..2 {
                    let e = |i| crate::tensor::unit::<Q>(2, i);
                    let defect = s.identity_defect(l[0], l[1], &e(u), &e(v));
                    let want: Vec<Q> = defect.iter().map(|x| x * q(-2)).collect();
                    assert_eq!(rr.entry(&l).at(&[u, v]), want.as_slice());
                }
            }
        }
    }

    #[test]
    fn zero_operator_gives_zero_differential() {
        let s = samples::dual_numbers_zero::<Q>(Semigroup::cyclic(2)).as_relative();
        for n in 0..3 {
            assert!(d_r_matrix(&s, n).is_zero());
        }
    }

    #[test]
    fn mc_matches_identity_on_fixtures() {
        for (name, s) in samples::rel_fixtures::<Q>() {
            assert!(mc_check(&s).is_ok(), "{name}");
        }
        let bad = samples::dual_numbers_zero::<Q>(Semigroup::trivial())
            .as_relative()
            .with_ops(crate::algebra::OperatorFamily::constant(1, Matrix::identity(2)))
            .unwrap();
        assert!(!mc_check(&bad).is_ok());
        assert!(!check_rel_rbf(&bad).is_ok());
        assert!(d_r(&operator_cochain(&bad), &bad).is_err());
    }

    #[test]
    fn element_brackets() {
        let s = samples::dual_numbers_zero::<Q>(Semigroup::trivial()).as_relative();
        let om = s.omega_arc().clone();
        let a = OmegaMap::element(om.clone(), vec![q(1), q(3)]);
        let aa = derived_bracket(&a, &a, s.algebra(), s.module()).unwrap();
        assert!(aa.is_zero());
        let f = OmegaMap::zeros(om, vec![2], 2);
        assert!(derived_bracket(&f, &a, s.algebra(), s.module()).unwrap().is_zero());
    }

    #[test]
    fn square_zero_on_nilpotent_family() {
        let s = samples::nilpotent_family::<Q>(Semigroup::cyclic(2), &[1, 2]).as_relative();
        let t = operator_truncation(&s, 2, &Limits::default()).unwrap();
        assert_eq!(t.square_defect(), None);
    }

    #[test]
    fn differential_matches_bracket() {
        let s = samples::nilpotent_family::<Q>(Semigroup::left_zero_band(2), &[1, -1]).as_relative();
        let r = operator_cochain(&s);
        let mut k = 0i64;
        let f = OmegaMap::from_fn(s.omega_arc().clone(), vec![2, 2], 2, |_| {
            Multilinear::from_fn(vec![2, 2], 2, |_| {
                k += 1;
                vec![q(k % 3 - 1), q(k % 5 - 2)]
            })
        });
        let via = derived_bracket(&r, &f, s.algebra(), s.module()).unwrap();
        assert_eq!(d_r(&f, &s).unwrap(), via);
    }

    #[test]
    fn composition_route_matches_explicit_bracket() {
        let s = samples::augmentation_family::<Q>(Semigroup::cyclic(2), &[1, 3]);
        let mut k = 3i64;
        let mut gen = |arity: usize| {
            OmegaMap::from_fn(s.omega_arc().clone(), vec![1; arity], 2, |_| {
                Multilinear::from_fn(vec![1; arity], 2, |_| {
                    k = (k * 7 + 5) % 11;
                    vec![q(k % 3 - 1), q(k % 4 - 2)]
                })
            })
        };
        let (f, g) = (gen(1), gen(2));
        for (a, b) in [(&f, &g), (&g, &f), (&f, &f)] {
            let explicit = derived_bracket(a, b, s.algebra(), s.module()).unwrap();
            let via = derived_bracket_via_composition(a, b, s.algebra(), s.module()).unwrap();
            assert_eq!(via, embed_cochain(&explicit, 2, 1));
        }
    }
}

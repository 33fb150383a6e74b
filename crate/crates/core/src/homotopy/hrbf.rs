//! Homotopy relative Rota-Baxter families: an A∞-algebra `A`, a
//! representation `M`, and degree 0 maps `R_k: M^⊗k → A` labelled by `Ωᵏ`.

use std::sync::Arc;

use crate::algebra::RelRBFamily;
use crate::error::{require, Error, Result};
use crate::omega_hom::{same_omega, OmegaMap};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::semigroup::Semigroup;
use crate::tensor::{axpy, tuples, unit, Multilinear};

use super::ainf::{check_ainf, check_representation, combined, suspend_algebra, suspend_bimodule, AInfRepresentation, AInfStructure};
use super::graded::{degree_violations, graded_omega_bracket, position_sign, unit_sign, GradedFamily, GradedSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyRBFamily<T> {
    omega: Arc<Semigroup>,
    algebra: AInfStructure<T>,
    module: AInfRepresentation<T>,
    r: Vec<OmegaMap<T>>,
}

impl<T: Scalar> HomotopyRBFamily<T> {
    /// `r[k−1]` is `R_k`, an Ω-family `M^⊗k → A`.
    pub fn new(omega: Arc<Semigroup>, algebra: AInfStructure<T>, module: AInfRepresentation<T>, r: Vec<OmegaMap<T>>) -> Result<Self> {
        if r.is_empty() {
            return Err(Error::Shape("need at least R₁".into()));
        }
        let (da, dm) = (algebra.dim(), module.dim());
        for (k, rk) in (1..).zip(&r) {
            if rk.arity() != k || rk.target() != da || rk.source().iter().any(|&s| s != dm) {
                return Err(Error::Shape(format!("R_{k} must map M^⊗{k} → A")));
            }
            if !same_omega(rk.omega(), &omega) {
                return Err(Error::Shape(format!("R_{k} is labelled by a different semigroup")));
            }
        }
        Ok(HomotopyRBFamily { omega, algebra, module, r })
    }

    pub fn omega(&self) -> &Arc<Semigroup> {
        &self.omega
    }

    pub fn algebra(&self) -> &AInfStructure<T> {
        &self.algebra
    }

    pub fn module(&self) -> &AInfRepresentation<T> {
        &self.module
    }

    pub fn r(&self, k: usize) -> &OmegaMap<T> {
        &self.r[k - 1]
    }

    pub fn rs(&self) -> &[OmegaMap<T>] {
        &self.r
    }

    /// Largest `n` for which every ingredient is present.
    pub fn max_arity(&self) -> usize {
        self.algebra.max_arity().min(self.module.max_arity()).min(self.r.len())
    }

    /// Only `R₁` is nonzero.
    pub fn is_strict(&self) -> bool {
        self.r.iter().skip(1).all(OmegaMap::is_zero)
    }

    fn a_space(&self) -> &GradedSpace {
        self.algebra.space()
    }

    fn m_space(&self) -> &GradedSpace {
        self.module.space()
    }
}

/// A relative Rota-Baxter family placed in degree −1, with `R₁ = R` and the
/// higher `R_k` zero.
pub fn classical_embed<T: Scalar>(s: &RelRBFamily<T>, max_arity: usize) -> HomotopyRBFamily<T> {
    let max_arity = max_arity.max(1);
    let omega = s.omega_arc().clone();
    let algebra = suspend_algebra(s.algebra(), max_arity);
    let module = suspend_bimodule(s.algebra(), s.module(), max_arity);
    let (da, dm) = (s.dim_a(), s.dim_m());
    let mut r = vec![OmegaMap::from_fn(omega.clone(), vec![dm], da, |lab| Multilinear::from_matrix(s.ops().matrix(lab[0])))];
    r.extend((2..=max_arity).map(|k| OmegaMap::zeros(omega.clone(), vec![dm; k], da)));
    HomotopyRBFamily { omega, algebra, module, r }
}

fn check_range<T: Scalar>(h: &HomotopyRBFamily<T>, max_n: usize) -> Result<()> {
    if max_n == 0 || max_n > h.max_arity() {
        return Err(Error::Precondition(format!("asked for n ≤ {max_n}, data stops at arity {}", h.max_arity())));
    }
    Ok(())
}

/// `R` as a degree 0 family on `A ⊕ M`: `R_k` on all-`M` inputs, landing in `A`.
fn embedded_r<T: Scalar>(h: &HomotopyRBFamily<T>, space: &GradedSpace, max_n: usize) -> GradedFamily<T> {
    let (da, dm) = (h.algebra.dim(), h.module.dim());
    let d = da + dm;
    let parts = (1..=max_n)
        .map(|k| {
            OmegaMap::from_fn(h.omega.clone(), vec![d; k], d, |lab| {
                let rk = h.r[k - 1].entry(lab);
                Multilinear::from_fn(vec![d; k], d, |x| {
                    let mut out = vec![T::zero(); d];
                    if x.iter().all(|&i| i >= da) {
                        let u: Vec<usize> = x.iter().map(|&i| i - da).collect();
                        out[..da].clone_from_slice(rk.at(&u));
                    }
                    out
                })
            })
        })
        .collect();
    GradedFamily::new(space.clone(), 0, parts).expect("shapes built above")
}

/// `Σ_{k=1}^{n} 1/k! · P[⋯[[△, R], R], ⋯, R]` with `k` copies of `R`, where `△`
/// is the A∞ structure on `A ⊕ M` and `P` keeps all-`M` inputs and the `A`
/// output. Entry `n − 1` is the arity `n` residual.
pub fn hrbf_residuals<T: Scalar>(h: &HomotopyRBFamily<T>, max_n: usize) -> Result<Vec<OmegaMap<T>>> {
    check_range(h, max_n)?;
    let (da, dm) = (h.algebra.dim(), h.module.dim());
    let total = combined(&h.algebra, &h.module)?;
    let space = total.space().clone();
    let delta = GradedFamily::constant(h.omega.clone(), space.clone(), 1, &total.mus()[..max_n])?;
    let r = embedded_r(h, &space, max_n);
    let mut x = delta;
    let mut acc: Option<GradedFamily<T>> = None;
    let mut factorial = T::one();
    for k in 1..=max_n {
        x = graded_omega_bracket(&x, &r, max_n)?;
        factorial = factorial * T::from_int(k as i64);
        let term = x.scale(&(T::one() / factorial.clone()));
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    let acc = acc.expect("max_n ≥ 1");
    Ok((1..=max_n)
        .map(|n| {
            let part = acc.part(n);
            OmegaMap::from_fn(h.omega.clone(), vec![dm; n], da, |lab| {
                let e = part.entry(lab);
                Multilinear::from_fn(vec![dm; n], da, |u| {
                    let x: Vec<usize> = u.iter().map(|&i| i + da).collect();
                    e.at(&x)[..da].to_vec()
                })
            })
        })
        .collect())
}

/// Coefficients attached to the two sides of the explicit identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weighting {
    /// Every term with coefficient one.
    Plain,
    /// `1/k!` on the `μ_k` side and `1/(k−1)!` on the `R(η_k)` side.
    Factorial,
}

/// Ordered tuples of `parts` positive integers summing to `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn merged_labels(omega: &Semigroup, labels: &[usize], lo: usize, hi: usize) -> Vec<usize> {
    let mut out = labels[..lo].to_vec();
    out.push(omega.product(&labels[lo..hi]));
    out.extend_from_slice(&labels[hi..]);
    out
}

/// The arity `n` residual written out term by term:
/// `Σ μ_k(R, …, R) − Σ ±R(u, …, η_k(R, …, u, …, R), …, u)`.
pub fn hrbf_residual_explicit<T: Scalar>(h: &HomotopyRBFamily<T>, n: usize, weighting: Weighting) -> Result<OmegaMap<T>> {
    check_range(h, n)?;
    let (da, dm) = (h.algebra.dim(), h.module.dim());
    let omega = h.omega.clone();
    let mut factorials = vec![T::one()];
    for k in 1..=n {
        let next = factorials[k - 1].clone() * T::from_int(k as i64);
        factorials.push(next);
    }
    let (w_mu, w_eta): (Vec<T>, Vec<T>) = (1..=n)
        .map(|k| match weighting {
            Weighting::Plain => (T::one(), T::one()),
            Weighting::Factorial => (T::one() / factorials[k].clone(), T::one() / factorials[k - 1].clone()),
        })
        .unzip();
    let r_value = |t_lab: &[usize], t_u: &[usize]| -> Vec<T> { h.r[t_lab.len() - 1].entry(t_lab).at(t_u).to_vec() };
    Ok(OmegaMap::from_fn(omega.clone(), vec![dm; n], da, |lab| {
        Multilinear::from_fn(vec![dm; n], da, |u| {
            let degrees: Vec<i32> = u.iter().map(|&i| h.m_space().degree(i)).collect();
            let mut out = vec![T::zero(); da];
            // Σ μ_k(R_{t₁}, …, R_{t_k})
            for k in 1..=n {
                for ts in compositions(n, k) {
                    let mut start = 0;
                    let args: Vec<Vec<T>> = ts
                        .iter()
                        .map(|&t| {
                            let v = r_value(&lab[start..start + t], &u[start..start + t]);
                            start += t;
                            v
                        })
                        .collect();
                    let refs: Vec<&[T]> = args.iter().map(Vec::as_slice).collect();
                    axpy(&mut out, &w_mu[k - 1], &h.algebra.mu(k).eval(&refs));
                }
            }
            // Σ ±R_{j+1+t}(u₁, …, u_j, η_k(…), u_{n−t+1}, …)
            for j in 0..n {
                for t in 0..n - j {
                    let outer = j + 1 + t;
                    let (lo, hi) = (j, n - t);
                    let len = hi - lo;
                    let outer_lab = merged_labels(&omega, lab, lo, hi);
                    let outer_map = h.r[outer - 1].entry(&outer_lab);
                    let sign: T = unit_sign(position_sign(&degrees, j + 1, 1));
                    for k in 1..=len {
                        for i in 0..k {
                            for ts in compositions(len - 1, k - 1) {
                                let mut args: Vec<Vec<T>> = Vec::with_capacity(k);
                                let mut pos = lo;
                                let mut next = ts.iter();
                                for s in 0..k {
                                    if s == i {
                                        args.push(unit(dm, u[pos]));
                                        pos += 1;
                                    } else {
                                        let t_s = *next.next().expect("k − 1 parts");
                                        args.push(r_value(&lab[pos..pos + t_s], &u[pos..pos + t_s]));
                                        pos += t_s;
                                    }
                                }
                                let refs: Vec<&[T]> = args.iter().map(Vec::as_slice).collect();
                                let w = h.module.eta(k, i).eval(&refs);
                                let mut basis: Vec<usize> = u[..lo].to_vec();
                                basis.push(0);
                                basis.extend_from_slice(&u[hi..]);
                                let v = outer_map.eval_with(&basis, j, &w);
                                axpy(&mut out, &-(sign.clone() * w_eta[k - 1].clone()), &v);
                            }
                        }
                    }
                }
            }
            out
        })
    }))
}

fn scan_family<T: Scalar>(report: &mut Report, m: &OmegaMap<T>, rule: &str) {
    for lab in m.omega().tuples(m.arity()) {
        let e = m.entry(&lab);
        for idx in tuples(e.source()) {
            if e.at(&idx).iter().any(|c| !c.is_zero()) {
                report.record(rule, || format!("labels {lab:?}, basis tuple {idx:?}"));
            }
        }
    }
}

fn structural<T: Scalar>(h: &HomotopyRBFamily<T>, max_n: usize) -> Result<Report> {
    require(check_ainf(&h.algebra, max_n)?, "A∞-algebra")?;
    require(check_representation(&h.algebra, &h.module, max_n)?, "A∞ representation")?;
    let mut report = Report::new("homotopy Rota-Baxter family");
    for rk in &h.r[..max_n] {
        let sources = vec![h.m_space(); rk.arity()];
        for lab in rk.omega().tuples(rk.arity()) {
            degree_violations(rk.entry(&lab), &sources, h.a_space(), 0, &format!("R_{} has degree 0", rk.arity()), &mut report);
        }
    }
    Ok(report)
}

/// Checks the Maurer-Cartan identities for `n ≤ max_n` through graded
/// brackets on `A ⊕ M`. The A∞ data must be valid up to `max_n`.
pub fn check_homotopy_rbf<T: Scalar>(h: &HomotopyRBFamily<T>, max_n: usize) -> Result<Report> {
    check_range(h, max_n)?;
    let mut report = structural(h, max_n)?;
    if !report.is_ok() {
        return Ok(report);
    }
    for (n, m) in (1..).zip(hrbf_residuals(h, max_n)?) {
        scan_family(&mut report, &m, &format!("homotopy Rota-Baxter identity n={n}"));
    }
    Ok(report)
}

/// `μ_n(R u₁, …, R u_n) − Σ_r R_{α₁⋯α_n}(η_n(R u₁, …, u_r, …, R u_n))` for
/// strict families.
pub fn strict_residual<T: Scalar>(h: &HomotopyRBFamily<T>, n: usize) -> Result<OmegaMap<T>> {
    check_range(h, n)?;
    if !h.is_strict() {
        return Err(Error::Precondition("some R_k with k ≥ 2 is nonzero".into()));
    }
    let (da, dm) = (h.algebra.dim(), h.module.dim());
    let omega = h.omega.clone();
    let r1 = &h.r[0];
    Ok(OmegaMap::from_fn(omega.clone(), vec![dm; n], da, |lab| {
        let images: Vec<Vec<Vec<T>>> = lab.iter().map(|&a| (0..dm).map(|x| r1.entry(&[a]).at(&[x]).to_vec()).collect()).collect();
        let outer = r1.entry(&[omega.product(lab)]);
        Multilinear::from_fn(vec![dm; n], da, |u| {
            let ru: Vec<&[T]> = u.iter().enumerate().map(|(s, &x)| images[s][x].as_slice()).collect();
            let mut out = h.algebra.mu(n).eval(&ru);
            for r in 0..n {
                let e = unit(dm, u[r]);
                let mut args = ru.clone();
                args[r] = &e;
                let w = h.module.eta(n, r).eval(&args);
                let v = outer.eval_with(&[0], 0, &w);
                axpy(&mut out, &-T::one(), &v);
            }
            out
        })
    }))
}

/// The strict identities for `n ≤ max_n`.
pub fn check_strict<T: Scalar>(h: &HomotopyRBFamily<T>, max_n: usize) -> Result<Report> {
    check_range(h, max_n)?;
    let mut report = structural(h, max_n)?;
    if !report.is_ok() {
        return Ok(report);
    }
    for n in 1..=max_n {
        scan_family(&mut report, &strict_residual(h, n)?, &format!("strict identity n={n}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_rel_rbf;
    use crate::samples;
    use crate::Q;

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(4, 2).len(), 3);
        assert_eq!(compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(compositions(2, 3).is_empty());
        assert_eq!(compositions(5, 3).len(), 6);
    }

    #[test]
    fn classical_families_embed() {
        for (name, s) in samples::rel_fixtures::<Q>() {
            let h = classical_embed(&s, 3);
            let ok = check_rel_rbf(&s).is_ok();
            assert_eq!(check_homotopy_rbf(&h, 3).unwrap().is_ok(), ok, "{name}");
            assert_eq!(check_strict(&h, 3).unwrap().is_ok(), ok, "{name}");
        }
    }

    #[test]
    fn routes_agree_on_fixtures() {
        for (name, s) in samples::rel_fixtures::<Q>() {
            let h = classical_embed(&s, 3);
            let two = hrbf_residuals(&h, 3).unwrap();
            for n in 1..=3 {
                let one = hrbf_residual_explicit(&h, n, Weighting::Plain).unwrap();
                assert_eq!(one, two[n - 1], "{name}, n={n}");
                assert_eq!(strict_residual(&h, n).unwrap(), two[n - 1], "{name}, n={n}");
            }
        }
    }

    #[test]
    fn factorial_weights_disagree_once_products_survive() {
        let s = samples::integration_family::<Q>(Semigroup::cyclic(2), 1).as_relative();
        assert!(check_rel_rbf(&s).is_ok());
        let h = classical_embed(&s, 2);
        assert!(hrbf_residual_explicit(&h, 2, Weighting::Plain).unwrap().is_zero());
        assert!(!hrbf_residual_explicit(&h, 2, Weighting::Factorial).unwrap().is_zero());
    }

    #[test]
    fn truncation_is_an_error() {
        let (_, s) = samples::rel_fixtures::<Q>().remove(0);
        let h = classical_embed(&s, 2);
        assert!(check_homotopy_rbf(&h, 3).is_err());
    }
}

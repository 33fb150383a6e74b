//! Dend∞-family algebras, Ω-A∞-algebras, and the constructions linking them
//! to strict homotopy relative Rota-Baxter families.

use std::sync::Arc;

use crate::dendriform::DendFamily;
use crate::error::{Error, Result};
use crate::omega_hom::{same_omega, OmegaMap};
use crate::rbfam_cohomology::block_source;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::semigroup::Semigroup;
use crate::tensor::{tuples, unit, Multilinear};

use super::ainf::{AInfRepresentation, AInfStructure};
use super::graded::{degree_violations, graded_compose_at, GradedSpace};
use super::hrbf::HomotopyRBFamily;

/// `(D, {θ_k^{[r]}})`; `theta[k−1][r−1]` is the selector `[r]` part of `θ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DendInfFamily<T> {
    space: GradedSpace,
    omega: Arc<Semigroup>,
    theta: Vec<Vec<OmegaMap<T>>>,
}

fn check_parts<T: Scalar>(omega: &Arc<Semigroup>, d: usize, k: usize, m: &OmegaMap<T>, name: &str) -> Result<()> {
    if m.arity() != k || m.target() != d || m.source().iter().any(|&s| s != d) {
        return Err(Error::Shape(format!("{name} must map D^⊗{k} → D with dim D = {d}")));
    }
    if !same_omega(m.omega(), omega) {
        return Err(Error::Shape(format!("{name} is labelled by a different semigroup")));
    }
    Ok(())
}

impl<T: Scalar> DendInfFamily<T> {
    pub fn new(space: GradedSpace, omega: Arc<Semigroup>, theta: Vec<Vec<OmegaMap<T>>>) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::Shape("need at least θ₁".into()));
        }
        for (k, sel) in (1..).zip(&theta) {
            if sel.len() != k {
                return Err(Error::Shape(format!("θ_{k} needs {k} selectors")));
            }
            for (r, m) in (1..).zip(sel) {
                check_parts(&omega, space.dim(), k, m, &format!("θ_{k}^[{r}]"))?;
            }
        }
        Ok(DendInfFamily { space, omega, theta })
    }

    pub fn zero(omega: Arc<Semigroup>, space: GradedSpace, max_arity: usize) -> Self {
        let d = space.dim();
        let theta = (1..=max_arity)
            .map(|k| (0..k).map(|_| OmegaMap::zeros(omega.clone(), vec![d; k], d)).collect())
            .collect();
        DendInfFamily { space, omega, theta }
    }

    /// The same unlabelled selector maps for every label tuple.
    pub fn constant(omega: Arc<Semigroup>, space: GradedSpace, maps: &[Vec<Multilinear<T>>]) -> Result<Self> {
        let theta = maps
            .iter()
            .map(|sel| sel.iter().map(|m| OmegaMap::constant_lift(omega.clone(), m)).collect())
            .collect();
        Self::new(space, omega, theta)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn omega(&self) -> &Arc<Semigroup> {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn max_arity(&self) -> usize {
        self.theta.len()
    }

    /// `θ_k^{[r]}`, `r` 1-based.
    pub fn theta(&self, k: usize, r: usize) -> &OmegaMap<T> {
        &self.theta[k - 1][r - 1]
    }

    /// `ν_k = Σ_r θ_k^{[r]}`.
    pub fn nu(&self, k: usize) -> OmegaMap<T> {
        let mut out = self.theta[k - 1][0].clone();
        for m in &self.theta[k - 1][1..] {
            out.add_assign(m);
        }
        out
    }
}

/// Records every `θ_k^{[r]}` that reads the label in slot `r`.
pub fn independence_report<T: Scalar>(d: &DendInfFamily<T>) -> Report {
    let mut report = Report::new("Dend∞ selector independence");
    for (k, sel) in (1..).zip(&d.theta) {
        for (r, m) in sel.iter().enumerate() {
            for lab in d.omega.tuples(k) {
                let mut base = lab.clone();
                base[r] = 0;
                if m.entry(&lab) != m.entry(&base) {
                    report.record(&format!("θ_{k}^[{}] ignores α_{}", r + 1, r + 1), || format!("labels {lab:?}"));
                }
            }
        }
    }
    report
}

/// The selector `[r]` identity on `n` inputs: `Σ_{k+l=n+1} Σᵢ ±θ_k ⋄ᵢ θ_l`,
/// where the inner map is the selector covering `r` when `i ≤ r < i+l` and
/// `ν_l` otherwise.
pub fn dendinf_residual<T: Scalar>(d: &DendInfFamily<T>, n: usize, r: usize) -> Result<OmegaMap<T>> {
    if n == 0 || n > d.max_arity() || r == 0 || r > n {
        return Err(Error::Precondition(format!("identity n={n}, selector {r} is outside the truncation")));
    }
    let dim = d.dim();
    let mut out = OmegaMap::zeros(d.omega.clone(), vec![dim; n], dim);
    for k in 1..=n {
        let l = n + 1 - k;
        let nu = d.nu(l);
        for i in 1..=k {
            let (outer, inner) = if r < i {
                (r, &nu)
            } else if r < i + l {
                (i, d.theta(l, r - i + 1))
            } else {
                (r - l + 1, &nu)
            };
            out.add_assign(&graded_compose_at(d.theta(k, outer), inner, i, 1, &d.space)?);
        }
    }
    Ok(out)
}

fn scan<T: Scalar>(report: &mut Report, m: &OmegaMap<T>, rule: &str) {
    for lab in m.omega().tuples(m.arity()) {
        let e = m.entry(&lab);
        for idx in tuples(e.source()) {
            if e.at(&idx).iter().any(|c| !c.is_zero()) {
                report.record(rule, || format!("labels {lab:?}, basis tuple {idx:?}"));
            }
        }
    }
}

fn degree_report<T: Scalar>(space: &GradedSpace, maps: &[(String, &OmegaMap<T>)], report: &mut Report) {
    for (name, m) in maps {
        let sources = vec![space; m.arity()];
        for lab in m.omega().tuples(m.arity()) {
            degree_violations(m.entry(&lab), &sources, space, 1, &format!("{name} has degree 1"), report);
        }
    }
}

/// Degrees, selector independence, and every identity with `n ≤ max_n`.
pub fn check_dendinf<T: Scalar>(d: &DendInfFamily<T>, max_n: usize) -> Result<Report> {
    if max_n > d.max_arity() {
        return Err(Error::Precondition(format!("asked for n ≤ {max_n}, family stops at arity {}", d.max_arity())));
    }
    let mut report = Report::new("Dend∞-family identities");
    let named: Vec<(String, &OmegaMap<T>)> = d
        .theta
        .iter()
        .enumerate()
        .flat_map(|(k, sel)| sel.iter().enumerate().map(move |(r, m)| (format!("θ_{}^[{}]", k + 1, r + 1), m)))
        .collect();
    degree_report(&d.space, &named, &mut report);
    report.absorb(independence_report(d));
    if !report.is_ok() {
        return Ok(report);
    }
    for n in 1..=max_n {
        for r in 1..=n {
            scan(&mut report, &dendinf_residual(d, n, r)?, &format!("Dend∞ identity n={n}, selector [{r}]"));
        }
    }
    Ok(report)
}

/// `(A, {ν_k})` with labelled degree 1 operations; `nu[k−1]` has arity `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaAInf<T> {
    space: GradedSpace,
    omega: Arc<Semigroup>,
    nu: Vec<OmegaMap<T>>,
}

impl<T: Scalar> OmegaAInf<T> {
    pub fn new(space: GradedSpace, omega: Arc<Semigroup>, nu: Vec<OmegaMap<T>>) -> Result<Self> {
        if nu.is_empty() {
            return Err(Error::Shape("need at least ν₁".into()));
        }
        for (k, m) in (1..).zip(&nu) {
            check_parts(&omega, space.dim(), k, m, &format!("ν_{k}"))?;
        }
        Ok(OmegaAInf { space, omega, nu })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn omega(&self) -> &Arc<Semigroup> {
        &self.omega
    }

    pub fn max_arity(&self) -> usize {
        self.nu.len()
    }

    pub fn nu(&self, k: usize) -> &OmegaMap<T> {
        &self.nu[k - 1]
    }
}

/// `Σ_{k+l=n+1} Σᵢ ±ν_k ∘ᵢ ν_l` with labels multiplied under composition.
pub fn omega_ainf_residual<T: Scalar>(a: &OmegaAInf<T>, n: usize) -> Result<OmegaMap<T>> {
    if n == 0 || n > a.max_arity() {
        return Err(Error::Precondition(format!("identity {n} is outside the truncation")));
    }
    let dim = a.space.dim();
    let mut out = OmegaMap::zeros(a.omega.clone(), vec![dim; n], dim);
    for k in 1..=n {
        let l = n + 1 - k;
        for i in 1..=k {
            out.add_assign(&graded_compose_at(&a.nu[k - 1], &a.nu[l - 1], i, 1, &a.space)?);
        }
    }
    Ok(out)
}

pub fn check_omega_ainf<T: Scalar>(a: &OmegaAInf<T>, max_n: usize) -> Result<Report> {
    if max_n > a.max_arity() {
        return Err(Error::Precondition(format!("asked for n ≤ {max_n}, structure stops at arity {}", a.max_arity())));
    }
    let mut report = Report::new("Ω-A∞ identities");
    let named: Vec<(String, &OmegaMap<T>)> = (1..).zip(&a.nu).map(|(k, m)| (format!("ν_{k}"), m)).collect();
    degree_report(&a.space, &named, &mut report);
    if !report.is_ok() {
        return Ok(report);
    }
    for n in 1..=max_n {
        scan(&mut report, &omega_ainf_residual(a, n)?, &format!("Ω-A∞ identity n={n}"));
    }
    Ok(report)
}

/// `ν_k = Σ_r θ_k^{[r]}`.
pub fn dendinf_to_omega_ainf<T: Scalar>(d: &DendInfFamily<T>) -> OmegaAInf<T> {
    OmegaAInf {
        space: d.space.clone(),
        omega: d.omega.clone(),
        nu: (1..=d.max_arity()).map(|k| d.nu(k)).collect(),
    }
}

/// The A∞-algebra on `A ⊗ kΩ` with `μ_k(a₁⊗α₁, …, a_k⊗α_k) = ν_k;α(a)⊗α₁⋯α_k`.
/// Basis vector `e_x ⊗ α` sits at `x·|Ω| + α`.
pub fn omega_ainf_to_ainf<T: Scalar>(a: &OmegaAInf<T>) -> AInfStructure<T> {
    let w = a.omega.size();
    let dim = a.space.dim();
    let big = dim * w;
    let mu = (1..=a.max_arity())
        .map(|k| {
            Multilinear::from_fn(vec![big; k], big, |idx| {
                let xs: Vec<usize> = idx.iter().map(|i| i / w).collect();
                let labels: Vec<usize> = idx.iter().map(|i| i % w).collect();
                let gamma = a.omega.product(&labels);
                let mut out = vec![T::zero(); big];
                for (y, c) in a.nu[k - 1].entry(&labels).at(&xs).iter().enumerate() {
                    out[y * w + gamma] = c.clone();
                }
                out
            })
        })
        .collect();
    AInfStructure::new(a.space.tensor_omega(w), mu).expect("shapes built above")
}

/// The strict homotopy relative Rota-Baxter family on `(D⊗kΩ, D)` with
/// `R_α(x) = x⊗α`, `η_k` in slot `p` given by `θ_k^{[p+1]}`.
pub fn dendinf_to_strict<T: Scalar>(d: &DendInfFamily<T>) -> HomotopyRBFamily<T> {
    let w = d.omega.size();
    let dim = d.dim();
    let big = dim * w;
    let algebra = omega_ainf_to_ainf(&dendinf_to_omega_ainf(d));
    let eta = (1..=d.max_arity())
        .map(|k| {
            (0..k)
                .map(|p| {
                    let th = d.theta(k, p + 1);
                    Multilinear::from_fn(block_source(big, dim, k, p), dim, |idx| {
                        let xs: Vec<usize> = idx.iter().enumerate().map(|(s, &i)| if s == p { i } else { i / w }).collect();
                        let labels: Vec<usize> = idx.iter().enumerate().map(|(s, &i)| if s == p { 0 } else { i % w }).collect();
                        th.entry(&labels).at(&xs).to_vec()
                    })
                })
                .collect()
        })
        .collect();
    let module = AInfRepresentation::new(d.space.clone(), algebra.space(), eta).expect("shapes built above");
    let mut r = vec![OmegaMap::from_fn(d.omega.clone(), vec![dim], big, |lab| {
        Multilinear::from_fn(vec![dim], big, |x| unit(big, x[0] * w + lab[0]))
    })];
    r.extend((2..=d.max_arity()).map(|k| OmegaMap::zeros(d.omega.clone(), vec![dim; k], big)));
    HomotopyRBFamily::new(d.omega.clone(), algebra, module, r).expect("shapes built above")
}

/// `θ_k^{[r]}_α(u) = η_k(R_{α₁}u₁, …, u_r, …, R_{α_k}u_k)` on `M`.
pub fn strict_to_dendinf<T: Scalar>(h: &HomotopyRBFamily<T>) -> Result<DendInfFamily<T>> {
    if !h.is_strict() {
        return Err(Error::Precondition("some R_k with k ≥ 2 is nonzero".into()));
    }
    let omega = h.omega().clone();
    let dm = h.module().dim();
    let r1 = h.r(1);
    let images: Vec<Vec<Vec<T>>> = (0..omega.size()).map(|a| (0..dm).map(|x| r1.entry(&[a]).at(&[x]).to_vec()).collect()).collect();
    let theta = (1..=h.max_arity())
        .map(|k| {
            (0..k)
                .map(|p| {
                    let eta = h.module().eta(k, p);
                    OmegaMap::from_fn(omega.clone(), vec![dm; k], dm, |lab| {
                        Multilinear::from_fn(vec![dm; k], dm, |u| {
                            let e = unit(dm, u[p]);
                            let args: Vec<&[T]> = (0..k).map(|s| if s == p { e.as_slice() } else { images[lab[s]][u[s]].as_slice() }).collect();
                            eta.eval(&args)
                        })
                    })
                })
                .collect()
        })
        .collect();
    DendInfFamily::new(h.module().space().clone(), omega, theta)
}

/// A dendriform family placed in degree −1:
/// `θ₂^{[1]}_{α,β} = ≺_β` and `θ₂^{[2]}_{α,β} = ≻_α`, everything else zero.
pub fn suspend_dend<T: Scalar>(d: &DendFamily<T>, max_arity: usize) -> DendInfFamily<T> {
    let omega = d.omega_arc().clone();
    let space = GradedSpace::concentrated(d.dim(), -1);
    let mut out = DendInfFamily::zero(omega.clone(), space, max_arity.max(2));
    let dim = d.dim();
    out.theta[1][0] = OmegaMap::from_fn(omega.clone(), vec![dim; 2], dim, |lab| d.prec(lab[1]).clone());
    out.theta[1][1] = OmegaMap::from_fn(omega, vec![dim; 2], dim, |lab| d.succ(lab[0]).clone());
    out.theta.truncate(max_arity.max(1));
    out
}

/// Inverse of [`suspend_dend`].
pub fn unsuspend_dend<T: Scalar>(d: &DendInfFamily<T>) -> Result<DendFamily<T>> {
    if d.space.degrees().iter().any(|&x| x != -1) {
        return Err(Error::Precondition("family is not concentrated in degree −1".into()));
    }
    if d.max_arity() < 2 || d.theta.iter().enumerate().any(|(k, sel)| k != 1 && sel.iter().any(|m| !m.is_zero())) {
        return Err(Error::Precondition("only θ₂ may be nonzero".into()));
    }
    if !independence_report(d).is_ok() {
        return Err(Error::Precondition("θ₂ reads the label of its selected slot".into()));
    }
    let w = d.omega.size();
    let prec = (0..w).map(|b| d.theta[1][0].entry(&[0, b]).clone()).collect();
    let succ = (0..w).map(|a| d.theta[1][1].entry(&[a, 0]).clone()).collect();
    DendFamily::new(d.omega.clone(), prec, succ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendriform::{check_dend_family, induced_dend_family, one_dim_search};
    use crate::homotopy::hrbf::{check_homotopy_rbf, check_strict, classical_embed};
    use crate::samples;
    use crate::Q;

    fn z2() -> Arc<Semigroup> {
        Arc::new(Semigroup::cyclic(2))
    }

    fn values() -> Vec<Q> {
        (-1..=1).map(|n| Q::from_integer(n.into())).collect()
    }

    #[test]
    fn suspension_matches_dendriform_axioms() {
        for d in one_dim_search::<Q>(&z2(), &values()).into_iter().take(3) {
            let s = suspend_dend(&d, 3);
            assert!(check_dendinf(&s, 3).unwrap().is_ok());
            assert_eq!(unsuspend_dend(&s).unwrap(), d);
        }
        let one = vec![values()[2].clone(); 2];
        let bad = DendFamily::one_dim(z2(), &one, &one).unwrap();
        assert!(!check_dend_family(&bad).is_ok());
        assert!(!check_dendinf(&suspend_dend(&bad, 3), 3).unwrap().is_ok());
    }

    #[test]
    fn classical_transfer_square() {
        for (name, s) in samples::rel_fixtures::<Q>() {
            if let Ok(d) = induced_dend_family(&s) {
                let via_strict = strict_to_dendinf(&classical_embed(&s, 3)).unwrap();
                assert_eq!(via_strict, suspend_dend(&d, 3), "{name}");
            }
        }
    }

    #[test]
    fn strict_round_trip() {
        for d in one_dim_search::<Q>(&z2(), &values()) {
            let s = suspend_dend(&d, 3);
            let h = dendinf_to_strict(&s);
            assert!(check_homotopy_rbf(&h, 3).unwrap().is_ok());
            assert!(check_strict(&h, 3).unwrap().is_ok());
            assert_eq!(strict_to_dendinf(&h).unwrap(), s);
        }
    }

    #[test]
    fn selector_reading_its_label_is_reported() {
        let omega = z2();
        let space = GradedSpace::concentrated(1, 0);
        let mut d = DendInfFamily::<Q>::zero(omega.clone(), space, 2);
        d.theta[0][0] = OmegaMap::from_fn(omega, vec![1], 1, |lab| Multilinear::from_fn(vec![1], 1, |_| vec![Q::from_integer((lab[0] as i64).into())]));
        assert!(!independence_report(&d).is_ok());
    }

    #[test]
    fn graded_fixtures_and_their_transfers() {
        for (name, d) in samples::dendinf_fixtures::<Q>() {
            assert!(check_dendinf(&d, 3).unwrap().is_ok(), "{name}");
            let o = dendinf_to_omega_ainf(&d);
            assert!(check_omega_ainf(&o, 3).unwrap().is_ok(), "{name}");
            assert!(crate::homotopy::check_ainf(&omega_ainf_to_ainf(&o), 3).unwrap().is_ok(), "{name}");
            let h = dendinf_to_strict(&d);
            assert!(check_homotopy_rbf(&h, 3).unwrap().is_ok(), "{name}");
            assert_eq!(strict_to_dendinf(&h).unwrap(), d, "{name}");
        }
        assert!(crate::homotopy::check_ainf(&samples::ainf_fixture::<Q>(), 4).unwrap().is_ok());
    }
}

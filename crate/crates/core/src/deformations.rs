//! Formal deformations of relative Rota-Baxter family algebras truncated at a
//! finite order, their equivalences, and the classification of first-order
//! deformations by degree-2 cohomology.

use std::fmt;

use crate::algebra::{check_rel_rbf, OperatorFamily, RelRBFamily};
use crate::error::{require, Error, Limits, Result};
use crate::linalg::Matrix;
use crate::omega_hom::OmegaMap;
use crate::report::Report;
use crate::rbfam_cohomology::{delta_rrbf, delta_rrbf_matrix, mixed_dim, MixedCochain};
use crate::scalar::Scalar;
use crate::tensor::Multilinear;

/// The structure maps `μ_t, l_t, r_t, (R_t)_α` up to `t^order`. Slice 0 is
/// the base family.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationJet<T> {
    base: RelRBFamily<T>,
    mu: Vec<Multilinear<T>>,
    l: Vec<Multilinear<T>>,
    r: Vec<Multilinear<T>>,
    ops: Vec<OperatorFamily<T>>,
}

impl<T: Scalar> DeformationJet<T> {
    /// Builds a jet from its higher slices `1..=order`; slice 0 is taken from
    /// `base`.
    pub fn new(
        base: RelRBFamily<T>,
        mu: Vec<Multilinear<T>>,
        l: Vec<Multilinear<T>>,
        r: Vec<Multilinear<T>>,
        ops: Vec<OperatorFamily<T>>,
    ) -> Result<Self> {
        let order = mu.len();
        if l.len() != order || r.len() != order || ops.len() != order {
            return Err(Error::Shape("all four series need the same number of slices".into()));
        }
        let (da, dm) = (base.dim_a(), base.dim_m());
        for k in 0..order {
            if mu[k].source() != [da, da] || mu[k].target() != da {
                return Err(Error::Shape(format!("μ_{} must map A⊗A → A", k + 1)));
            }
            if l[k].source() != [da, dm] || l[k].target() != dm {
                return Err(Error::Shape(format!("l_{} must map A⊗M → M", k + 1)));
            }
            if r[k].source() != [dm, da] || r[k].target() != dm {
                return Err(Error::Shape(format!("r_{} must map M⊗A → M", k + 1)));
            }
            if ops[k].len() != base.omega().size() || ops[k].dim_target() != da || ops[k].dim_source() != dm {
                return Err(Error::Shape(format!("R_{} must be a family of M → A maps over Ω", k + 1)));
            }
        }
        let mut jet = Self::constant(base, 0);
        jet.mu.extend(mu);
        jet.l.extend(l);
        jet.r.extend(r);
        jet.ops.extend(ops);
        Ok(jet)
    }

    /// The undeformed jet: every higher slice vanishes.
    pub fn constant(base: RelRBFamily<T>, order: usize) -> Self {
        let (da, dm, n) = (base.dim_a(), base.dim_m(), base.omega().size());
        let mut mu = vec![base.algebra().mul_map().clone()];
        let mut l = vec![base.module().left().clone()];
        let mut r = vec![base.module().right().clone()];
        let mut ops = vec![base.ops().clone()];
        for _ in 0..order {
            mu.push(Multilinear::zeros(vec![da, da], da));
            l.push(Multilinear::zeros(vec![da, dm], dm));
            r.push(Multilinear::zeros(vec![dm, da], dm));
            ops.push(OperatorFamily::zero(n, da, dm));
        }
        DeformationJet { base, mu, l, r, ops }
    }

    pub fn order(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn base(&self) -> &RelRBFamily<T> {
        &self.base
    }

    pub fn mu(&self, i: usize) -> &Multilinear<T> {
        &self.mu[i]
    }

    pub fn l(&self, i: usize) -> &Multilinear<T> {
        &self.l[i]
    }

    pub fn r(&self, i: usize) -> &Multilinear<T> {
        &self.r[i]
    }

    pub fn ops(&self, i: usize) -> &OperatorFamily<T> {
        &self.ops[i]
    }

    /// The same jet cut down to `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Precondition(format!("jet has order {}, asked for {order}", self.order())));
        }
        let k = order + 1;
        Ok(DeformationJet {
            base: self.base.clone(),
            mu: self.mu[..k].to_vec(),
            l: self.l[..k].to_vec(),
            r: self.r[..k].to_vec(),
            ops: self.ops[..k].to_vec(),
        })
    }
}

/// `φ_t = Σ tⁱφᵢ` on `A` and `ψ_t = Σ tⁱψᵢ` on `M` with `φ₀, ψ₀` identities.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceJet<T> {
    phi: Vec<Matrix<T>>,
    psi: Vec<Matrix<T>>,
}

impl<T: Scalar> EquivalenceJet<T> {
    /// From the higher slices; slice 0 is the identity.
    pub fn new(dim_a: usize, dim_m: usize, phi: Vec<Matrix<T>>, psi: Vec<Matrix<T>>) -> Result<Self> {
        if phi.len() != psi.len() {
            return Err(Error::Shape("φ and ψ need the same number of slices".into()));
        }
        let square = |m: &Matrix<T>, d| m.rows() == d && m.cols() == d;
        if !phi.iter().all(|m| square(m, dim_a)) || !psi.iter().all(|m| square(m, dim_m)) {
            return Err(Error::Shape(format!("φᵢ must be {dim_a}x{dim_a} and ψᵢ {dim_m}x{dim_m}")));
        }
        let mut e = Self::identity(dim_a, dim_m, 0);
        e.phi.extend(phi);
        e.psi.extend(psi);
        Ok(e)
    }

    pub fn identity(dim_a: usize, dim_m: usize, order: usize) -> Self {
        let mut phi = vec![Matrix::identity(dim_a)];
        let mut psi = vec![Matrix::identity(dim_m)];
        phi.extend((0..order).map(|_| Matrix::zeros(dim_a, dim_a)));
        psi.extend((0..order).map(|_| Matrix::zeros(dim_m, dim_m)));
        EquivalenceJet { phi, psi }
    }

    /// `(id + tφ₁, id + tψ₁)`.
    pub fn first_order(phi1: Matrix<T>, psi1: Matrix<T>) -> Result<Self> {
        Self::new(phi1.rows(), psi1.rows(), vec![phi1], vec![psi1])
    }

    pub fn order(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self, i: usize) -> &Matrix<T> {
        &self.phi[i]
    }

    pub fn psi(&self, i: usize) -> &Matrix<T> {
        &self.psi[i]
    }

    /// The degree-1 cochain `(φ₁, ψ₁)`.
    pub fn first_cochain(&self, s: &RelRBFamily<T>) -> Result<MixedCochain<T>> {
        if self.order() < 1 {
            return Err(Error::Precondition("equivalence has no first-order slice".into()));
        }
        MixedCochain::new(
            Multilinear::from_matrix(&self.phi[1]),
            vec![Multilinear::from_matrix(&self.psi[1])],
            None,
            s,
        )
    }
}

/// Which deformation equation a residual belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Equation {
    Associativity,
    LeftModule,
    Bimodule,
    RightModule,
    Operator,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Associativity => "associativity",
            Equation::LeftModule => "left action",
            Equation::Bimodule => "bimodule compatibility",
            Equation::RightModule => "right action",
            Equation::Operator => "Rota-Baxter family identity",
        })
    }
}

/// The order-`k` coefficient of every deformation equation, oriented so that
/// at order 1 it equals `δ_rRBf` of the infinitesimal.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual<T> {
    pub order: usize,
    /// On `A⊗A⊗A`.
    pub associativity: Multilinear<T>,
    /// Blocks on `M⊗A⊗A`, `A⊗M⊗A`, `A⊗A⊗M`.
    pub actions: Vec<Multilinear<T>>,
    /// On `M⊗M`, labelled by `(α, β)`.
    pub operator: OmegaMap<T>,
}

impl<T: Scalar> Residual<T> {
    pub fn is_zero(&self) -> bool {
        self.associativity.is_zero() && self.actions.iter().all(Multilinear::is_zero) && self.operator.is_zero()
    }

    /// As a degree-3 cochain, for comparison with `δ_rRBf`.
    pub fn to_cochain(&self, s: &RelRBFamily<T>) -> Result<MixedCochain<T>> {
        MixedCochain::new(self.associativity.clone(), self.actions.clone(), Some(self.operator.clone()), s)
    }
}

fn op_map<T: Scalar>(ops: &OperatorFamily<T>, alpha: usize) -> Multilinear<T> {
    Multilinear::from_matrix(ops.matrix(alpha))
}

/// `Σ_{i+j=k} outer_i ∘_slot inner_j`.
fn convolve<T: Scalar>(outer: &[Multilinear<T>], slot: usize, inner: &[Multilinear<T>], k: usize) -> Multilinear<T> {
    let mut acc = outer[0].compose_at(slot, &inner[k]);
    for i in 1..=k {
        acc.add_assign(&outer[i].compose_at(slot, &inner[k - i]));
    }
    acc
}

/// The order-`k` residual of the deformation equations.
pub fn residual<T: Scalar>(j: &DeformationJet<T>, k: usize) -> Result<Residual<T>> {
    if k > j.order() {
        return Err(Error::Precondition(format!("jet has order {}, asked for order {k}", j.order())));
    }
    let (mu, l, r) = (&j.mu, &j.l, &j.r);
    let associativity = convolve(mu, 1, mu, k).sub(&convolve(mu, 0, mu, k));
    // (u,a,b): r(u, ab) − r(ua, b); (a,u,b): l(a, ub) − r(au, b); (a,b,u): l(a, bu) − l(ab, u).
    let actions = vec![
        convolve(r, 1, mu, k).sub(&convolve(r, 0, r, k)),
        convolve(l, 1, r, k).sub(&convolve(r, 0, l, k)),
        convolve(l, 1, l, k).sub(&convolve(l, 0, mu, k)),
    ];
    let s = &j.base;
    let omega = s.omega();
    let dm = s.dim_m();
    let operator = OmegaMap::from_fn(s.omega_arc().clone(), vec![dm, dm], s.dim_a(), |labels| {
        let (alpha, beta) = (labels[0], labels[1]);
        let top = omega.mul(alpha, beta);
        let mut acc = Multilinear::zeros(vec![dm, dm], s.dim_a());
        for i in 0..=k {
            for jj in 0..=k - i {
                let kk = k - i - jj;
                let lhs = mu[i].compose_at(1, &op_map(&j.ops[kk], beta)).compose_at(0, &op_map(&j.ops[jj], alpha));
                acc.add_assign(&lhs);
                let inner = l[jj]
                    .compose_at(0, &op_map(&j.ops[kk], alpha))
                    .add(&r[jj].compose_at(1, &op_map(&j.ops[kk], beta)));
                acc.sub_assign(&op_map(&j.ops[i], top).compose_at(0, &inner));
            }
        }
        acc
    });
    Ok(Residual {
        order: k,
        associativity,
        actions,
        operator,
    })
}

fn record_residual<T: Scalar>(report: &mut Report, res: &Residual<T>) {
    let k = res.order;
    let mut scan = |eq: Equation, m: &Multilinear<T>, label: &str| {
        for flat in 0..m.input_count() {
            if m.row(flat).iter().any(|x| !x.is_zero()) {
                report.record(&format!("order {k}: {eq}"), || format!("{label}input #{flat}"));
            }
        }
    };
    scan(Equation::Associativity, &res.associativity, "");
    scan(Equation::RightModule, &res.actions[0], "");
    scan(Equation::Bimodule, &res.actions[1], "");
    scan(Equation::LeftModule, &res.actions[2], "");
    let n = res.operator.omega().size();
    for alpha in 0..n {
        for beta in 0..n {
            scan(Equation::Operator, res.operator.entry(&[alpha, beta]), &format!("(α={alpha},β={beta}) "));
        }
    }
}

/// Evaluates the deformation equations at every order `0..=n`; the report is
/// empty iff the jet is a deformation modulo `t^{n+1}`.
pub fn check_deformation<T: Scalar>(j: &DeformationJet<T>, n: usize) -> Result<Report> {
    if n > j.order() {
        return Err(Error::Precondition(format!("jet has order {}, asked for order {n}", j.order())));
    }
    require(check_rel_rbf(&j.base), "base of the deformation")?;
    let mut report = Report::new("deformation equations");
    for k in 0..=n {
        record_residual(&mut report, &residual(j, k)?);
    }
    Ok(report)
}

/// The infinitesimal `(μ₁, β₁, R₁)`, with `β₁` given by `r₁` on `M⊗A` and by
/// `l₁` on `A⊗M`.
pub fn infinitesimal_of<T: Scalar>(j: &DeformationJet<T>) -> Result<MixedCochain<T>> {
    let report = check_deformation(j, 1)?;
    require(report, "order-1 deformation")?;
    let s = &j.base;
    let ops = &j.ops[1];
    let gamma = OmegaMap::from_fn(s.omega_arc().clone(), vec![s.dim_m()], s.dim_a(), |labels| op_map(ops, labels[0]));
    MixedCochain::new(j.mu[1].clone(), vec![j.r[1].clone(), j.l[1].clone()], Some(gamma), s)
}

/// The jet `μ + tμ₁, l + tl₁, r + tr₁, R + tR₁` of a degree-2 cocycle.
pub fn infinitesimal_from_cocycle<T: Scalar>(z: &MixedCochain<T>, s: &RelRBFamily<T>) -> Result<DeformationJet<T>> {
    if z.degree() != 2 {
        return Err(Error::Precondition(format!("expected a degree-2 cochain, got degree {}", z.degree())));
    }
    if !delta_rrbf(z, s)?.is_zero() {
        return Err(Error::Precondition("cochain is not a cocycle".into()));
    }
    let gamma = z.gamma().expect("degree 2 carries γ");
    let maps = (0..s.omega().size()).map(|a| gamma.entry(&[a]).to_matrix()).collect();
    DeformationJet::new(
        s.clone(),
        vec![z.f().clone()],
        vec![z.g()[1].clone()],
        vec![z.g()[0].clone()],
        vec![OperatorFamily::new(maps)?],
    )
}

fn same_shape<T: Scalar>(j: &DeformationJet<T>, j2: &DeformationJet<T>) -> Result<()> {
    let (a, b) = (&j.base, &j2.base);
    if a.dim_a() != b.dim_a() || a.dim_m() != b.dim_m() || a.omega() != b.omega() {
        return Err(Error::Shape("jets live over different spaces".into()));
    }
    Ok(())
}

fn compose_series<T: Scalar>(outer: &[Matrix<T>], inner: &[Matrix<T>], k: usize) -> Matrix<T> {
    let mut acc = outer[0].mul(&inner[k]);
    for i in 1..=k {
        let t = outer[i].mul(&inner[k - i]);
        acc = add_matrices(&acc, &t);
    }
    acc
}

fn add_matrices<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(i, c, a.get(i, c).clone() + b.get(i, c).clone());
        }
    }
    out
}

/// `Σ_{i+j+k=n} m_i(x_j, y_k)` with `x`, `y` series of linear maps into the slots.
fn bilinear_series<T: Scalar>(m: &[Multilinear<T>], x: &[Matrix<T>], y: &[Matrix<T>], n: usize) -> Multilinear<T> {
    let mut acc: Option<Multilinear<T>> = None;
    for i in 0..=n {
        for jj in 0..=n - i {
            let t = m[i].map_input(0, &x[jj]).map_input(1, &y[n - i - jj]);
            match &mut acc {
                Some(a) => a.add_assign(&t),
                None => acc = Some(t),
            }
        }
    }
    acc.expect("n ≥ 0")
}

/// `Σ_{i+j=n} p_i ∘ m_j` with `p` a series of maps on the target.
fn after_series<T: Scalar>(p: &[Matrix<T>], m: &[Multilinear<T>], n: usize) -> Multilinear<T> {
    let mut acc = m[n].map_output(&p[0]);
    for i in 1..=n {
        acc.add_assign(&m[n - i].map_output(&p[i]));
    }
    acc
}

/// Evaluates the equations making `(φ_t, ψ_t)` a morphism from `j` to `j2` at
/// every order `0..=n`.
pub fn check_equivalence<T: Scalar>(
    j: &DeformationJet<T>,
    j2: &DeformationJet<T>,
    e: &EquivalenceJet<T>,
    n: usize,
) -> Result<Report> {
    same_shape(j, j2)?;
    if n > j.order() || n > j2.order() || n > e.order() {
        return Err(Error::Precondition(format!(
            "order {n} exceeds the data (jets {} and {}, equivalence {})",
            j.order(),
            j2.order(),
            e.order()
        )));
    }
    if e.phi[0].rows() != j.base.dim_a() || e.psi[0].rows() != j.base.dim_m() {
        return Err(Error::Shape("equivalence does not match the jets".into()));
    }
    require(check_deformation(j, n)?, "source deformation")?;
    require(check_deformation(j2, n)?, "target deformation")?;
    let (phi, psi) = (&e.phi, &e.psi);
    let mut report = Report::new("equivalence equations");
    let mut scan = |rule: &str, m: &Multilinear<T>, k: usize| {
        for flat in 0..m.input_count() {
            if m.row(flat).iter().any(|x| !x.is_zero()) {
                report.record(&format!("order {k}: {rule}"), || format!("input #{flat}"));
            }
        }
    };
    for k in 0..=n {
        let mult = after_series(phi, &j.mu, k).sub(&bilinear_series(&j2.mu, phi, phi, k));
        scan("algebra map", &mult, k);
        let left = after_series(psi, &j.l, k).sub(&bilinear_series(&j2.l, phi, psi, k));
        scan("left action", &left, k);
        let right = after_series(psi, &j.r, k).sub(&bilinear_series(&j2.r, psi, phi, k));
        scan("right action", &right, k);
        for alpha in 0..j.base.omega().size() {
            let src: Vec<Matrix<T>> = j.ops.iter().map(|o| o.matrix(alpha).clone()).collect();
            let dst: Vec<Matrix<T>> = j2.ops.iter().map(|o| o.matrix(alpha).clone()).collect();
            let d = compose_series(phi, &src, k);
            let d2 = compose_series(&dst, psi, k);
            let diff = Multilinear::from_matrix(&d).sub(&Multilinear::from_matrix(&d2));
            scan(&format!("operator α={alpha}"), &diff, k);
        }
    }
    Ok(report)
}

/// The inverse power series of `id + Σ_{i≥1} tⁱ pᵢ`, up to the same order.
fn invert_series<T: Scalar>(p: &[Matrix<T>]) -> Vec<Matrix<T>> {
    let d = p[0].rows();
    let mut inv = vec![Matrix::identity(d)];
    for n in 1..p.len() {
        let mut acc = Matrix::zeros(d, d);
        for i in 1..=n {
            acc = add_matrices(&acc, &p[i].mul(&inv[n - i]));
        }
        let neg = Matrix::from_rows((0..d).map(|r| acc.row(r).iter().map(|x| -x.clone()).collect()).collect());
        inv.push(neg);
    }
    inv
}

/// The jet `j2` for which `e` is a morphism `j → j2`:
/// `μ'_t = φ_t ∘ μ_t ∘ (φ_t⁻¹ ⊗ φ_t⁻¹)` and so on, cut at the common order.
pub fn transport<T: Scalar>(j: &DeformationJet<T>, e: &EquivalenceJet<T>) -> Result<DeformationJet<T>> {
    let n = j.order().min(e.order());
    let (da, dm) = (j.base.dim_a(), j.base.dim_m());
    if e.phi[0].rows() != da || e.psi[0].rows() != dm {
        return Err(Error::Shape("equivalence does not match the jet".into()));
    }
    let (phi, psi) = (&e.phi[..=n], &e.psi[..=n]);
    let (phi_inv, psi_inv) = (invert_series(phi), invert_series(psi));
    let conj = |m: &[Multilinear<T>], out: &[Matrix<T>], x: &[Matrix<T>], y: &[Matrix<T>], k: usize| {
        let mut acc: Option<Multilinear<T>> = None;
        for i in 0..=k {
            let inner = bilinear_series(m, x, y, k - i);
            let t = inner.map_output(&out[i]);
            match &mut acc {
                Some(a) => a.add_assign(&t),
                None => acc = Some(t),
            }
        }
        acc.expect("k ≥ 0")
    };
    let mut mu = Vec::new();
    let mut l = Vec::new();
    let mut r = Vec::new();
    let mut ops = Vec::new();
    let m_ord = &j.mu[..=n];
    let l_ord = &j.l[..=n];
    let r_ord = &j.r[..=n];
    for k in 1..=n {
        mu.push(conj(m_ord, phi, &phi_inv, &phi_inv, k));
        l.push(conj(l_ord, psi, &phi_inv, &psi_inv, k));
        r.push(conj(r_ord, psi, &psi_inv, &phi_inv, k));
        let maps = (0..j.base.omega().size())
            .map(|alpha| {
                let src: Vec<Matrix<T>> = j.ops[..=n].iter().map(|o| o.matrix(alpha).clone()).collect();
                let mut acc = Matrix::zeros(da, dm);
                for i in 0..=k {
                    acc = add_matrices(&acc, &phi[i].mul(&compose_series(&src, &psi_inv, k - i)));
                }
                acc
            })
            .collect();
        ops.push(OperatorFamily::new(maps)?);
    }
    DeformationJet::new(j.base.clone(), mu, l, r, ops)
}

/// First-order deformations up to equivalence.
#[derive(Clone, Debug)]
pub struct Classification<T> {
    family: RelRBFamily<T>,
    /// Columns span `Z²`.
    cocycles: Matrix<T>,
    /// Columns form a basis of `B²`.
    coboundaries: Matrix<T>,
    /// Cocycles whose classes form a basis of `H²`.
    representatives: Vec<MixedCochain<T>>,
}

impl<T: Scalar> Classification<T> {
    /// `dim H²_rRBf`, the number of independent classes.
    pub fn dimension(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[MixedCochain<T>] {
        &self.representatives
    }

    /// One order-1 jet per basis class.
    pub fn representative_jets(&self) -> Result<Vec<DeformationJet<T>>> {
        self.representatives
            .iter()
            .map(|z| infinitesimal_from_cocycle(z, &self.family))
            .collect()
    }

    pub fn cocycle_basis(&self) -> &Matrix<T> {
        &self.cocycles
    }

    pub fn coboundary_basis(&self) -> &Matrix<T> {
        &self.coboundaries
    }

    /// Coordinates of the class of a cocycle in the basis of representatives.
    pub fn class_of(&self, z: &MixedCochain<T>) -> Result<Vec<T>> {
        if !delta_rrbf(z, &self.family)?.is_zero() {
            return Err(Error::Precondition("cochain is not a cocycle".into()));
        }
        let reps: Vec<Vec<T>> = self.representatives.iter().map(MixedCochain::to_vector).collect();
        let rows = mixed_dim(&self.family, 2);
        let m = Matrix::from_columns(rows, &reps).hcat(&self.coboundaries);
        let x = m.solve(&z.to_vector()).expect("representatives and coboundaries span the cocycles");
        Ok(x[..reps.len()].to_vec())
    }

    /// `(φ₁, ψ₁)` with `z − z2 = δ_rRBf(φ₁, ψ₁)`, or `None` if the classes differ.
    pub fn equivalence_witness(&self, z: &MixedCochain<T>, z2: &MixedCochain<T>) -> Result<Option<EquivalenceJet<T>>> {
        let s = &self.family;
        for c in [z, z2] {
            if c.degree() != 2 || !delta_rrbf(c, s)?.is_zero() {
                return Err(Error::Precondition("expected degree-2 cocycles".into()));
            }
        }
        let diff: Vec<T> = z.to_vector().into_iter().zip(z2.to_vector()).map(|(a, b)| a - b).collect();
        let Some(x) = delta_rrbf_matrix(s, 1).solve(&diff) else {
            return Ok(None);
        };
        let c = MixedCochain::from_vector(s, 1, &x);
        EquivalenceJet::first_order(c.f().to_matrix(), c.g()[0].to_matrix()).map(Some)
    }

    /// A witness between two order-1 jets, from their infinitesimals.
    pub fn jet_witness(&self, j: &DeformationJet<T>, j2: &DeformationJet<T>) -> Result<Option<EquivalenceJet<T>>> {
        self.equivalence_witness(&infinitesimal_of(j)?, &infinitesimal_of(j2)?)
    }
}

/// Computes `Z²`, `B²` and a basis of representatives for `H²_rRBf`.
pub fn classify_infinitesimals<T: Scalar>(s: &RelRBFamily<T>, limits: &Limits) -> Result<Classification<T>> {
    require(check_rel_rbf(s), "relative Rota-Baxter family")?;
    for n in 1..=3 {
        limits.guard(|| format!("degree-{n} cochains"), mixed_dim(s, n))?;
    }
    let cocycles = delta_rrbf_matrix(s, 2).kernel();
    let coboundaries = delta_rrbf_matrix(s, 1).column_basis();
    let mut span = coboundaries.clone();
    let mut rank = span.rank();
    let mut representatives = Vec::new();
    for col in cocycles.columns() {
        let grown = span.hcat(&Matrix::from_columns(col.len(), std::slice::from_ref(&col)));
        let r = grown.rank();
        if r > rank {
            rank = r;
            span = grown;
            representatives.push(MixedCochain::from_vector(s, 2, &col));
        }
    }
    Ok(Classification {
        family: s.clone(),
        cocycles,
        coboundaries,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rbfam_cohomology::cohomology_rrbf;
    use crate::samples;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn d2_z2() -> RelRBFamily<Q> {
        samples::dual_numbers_zero::<Q>(crate::Semigroup::cyclic(2)).as_relative()
    }

    #[test]
    fn constant_jet_is_a_deformation() {
        for (name, s) in samples::rel_fixtures::<Q>() {
            let j = DeformationJet::constant(s, 2);
            assert!(check_deformation(&j, 2).unwrap().is_ok(), "{name}");
        }
    }

    #[test]
    fn residual_at_order_one_is_the_coboundary() {
        // A random order-1 jet is usually not a deformation; its residual is
        // still δ_rRBf of the would-be infinitesimal.
        let s = d2_z2();
        let (da, dm) = (s.dim_a(), s.dim_m());
        let v: Vec<Q> = (0..mixed_dim(&s, 2)).map(|i| q((i as i64 * 7 + 3) % 5 - 2)).collect();
        let z = MixedCochain::from_vector(&s, 2, &v);
        let gamma = z.gamma().unwrap();
        let maps = (0..2).map(|a| gamma.entry(&[a]).to_matrix()).collect();
        let j = DeformationJet::new(
            s.clone(),
            vec![z.f().clone()],
            vec![z.g()[1].clone()],
            vec![z.g()[0].clone()],
            vec![OperatorFamily::new(maps).unwrap()],
        )
        .unwrap();
        assert_eq!((da, dm), (2, 2));
        let res = residual(&j, 1).unwrap().to_cochain(&s).unwrap();
        assert_eq!(res, delta_rrbf(&z, &s).unwrap());
    }

    #[test]
    fn classification_matches_cohomology() {
        let s = d2_z2();
        let c = classify_infinitesimals(&s, &Limits::default()).unwrap();
        let h = cohomology_rrbf(&s, 2, &Limits::default()).unwrap();
        assert_eq!(c.dimension(), h[1].cohomology);
        for (z, j) in c.representatives().iter().zip(c.representative_jets().unwrap()) {
            assert!(check_deformation(&j, 1).unwrap().is_ok());
            assert_eq!(&infinitesimal_of(&j).unwrap(), z);
        }
    }

    #[test]
    fn exact_cocycle_is_trivial() {
        let s = d2_z2();
        let phi1 = Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(0), q(-1)]]);
        let psi1 = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(3), q(1)]]);
        let e = EquivalenceJet::first_order(phi1, psi1).unwrap();
        let z = delta_rrbf(&e.first_cochain(&s).unwrap(), &s).unwrap();
        let j = infinitesimal_from_cocycle(&z, &s).unwrap();
        let trivial = DeformationJet::constant(s.clone(), 1);
        assert!(check_equivalence(&j, &trivial, &e, 1).unwrap().is_ok());
        let c = classify_infinitesimals(&s, &Limits::default()).unwrap();
        let w = c.equivalence_witness(&z, &MixedCochain::zero(&s, 2)).unwrap().unwrap();
        assert!(check_equivalence(&j, &trivial, &w, 1).unwrap().is_ok());
    }

    #[test]
    fn transport_is_an_equivalence() {
        let s = d2_z2();
        let c = classify_infinitesimals(&s, &Limits::default()).unwrap();
        let phi1 = Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(-1), q(0)]]);
        let psi1 = Matrix::from_rows(vec![vec![q(1), q(0)], vec![q(1), q(1)]]);
        let e = EquivalenceJet::first_order(phi1, psi1).unwrap();
        for j in c.representative_jets().unwrap() {
            let j2 = transport(&j, &e).unwrap();
            assert!(check_deformation(&j2, 1).unwrap().is_ok());
            assert!(check_equivalence(&j, &j2, &e, 1).unwrap().is_ok());
            let diff = infinitesimal_of(&j).unwrap().to_vector();
            let diff2 = infinitesimal_of(&j2).unwrap().to_vector();
            let d: Vec<Q> = diff.into_iter().zip(diff2).map(|(a, b)| a - b).collect();
            let expected = delta_rrbf(&e.first_cochain(&s).unwrap(), &s).unwrap().to_vector();
            assert_eq!(d, expected);
        }
    }

    #[test]
    fn order_guard() {
        let j = DeformationJet::constant(d2_z2(), 1);
        assert!(check_deformation(&j, 2).is_err());
        assert!(residual(&j, 2).is_err());
    }
}

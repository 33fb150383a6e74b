//! Dendriform family algebras, the structure induced on the module of a
//! relative Rota-Baxter family algebra, and the Tot construction `D⊗kΩ`.

use std::sync::Arc;

use crate::algebra::{check_rel_rbf, AssocAlgebra, Bimodule, OperatorFamily, RelRBFamily};
use crate::error::{require, Error, Result};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::semigroup::{check_semigroup, Semigroup};
use crate::tensor::{add_into, unit, Multilinear};

/// `(D, {≺_α, ≻_α})`: one pair of bilinear maps `D⊗D → D` per label.
#[derive(Clone, Debug, PartialEq)]
pub struct DendFamily<T> {
    omega: Arc<Semigroup>,
    prec: Vec<Multilinear<T>>,
    succ: Vec<Multilinear<T>>,
}

impl<T: Scalar> DendFamily<T> {
    pub fn new(omega: Arc<Semigroup>, prec: Vec<Multilinear<T>>, succ: Vec<Multilinear<T>>) -> Result<Self> {
        let n = omega.size();
        if prec.len() != n || succ.len() != n {
            return Err(Error::Shape(format!("need {n} pairs of operations, got {} and {}", prec.len(), succ.len())));
        }
        let d = prec[0].target();
        if prec.iter().chain(&succ).any(|m| m.source() != [d, d] || m.target() != d) {
            return Err(Error::Shape(format!("operations must all map {d}x{d} → {d}")));
        }
        Ok(DendFamily { omega, prec, succ })
    }

    pub fn zero(omega: Arc<Semigroup>, dim: usize) -> Self {
        let n = omega.size();
        let z = Multilinear::zeros(vec![dim, dim], dim);
        DendFamily {
            omega,
            prec: vec![z.clone(); n],
            succ: vec![z; n],
        }
    }

    /// A dendriform algebra viewed as a family with the same operations for every label.
    pub fn constant(omega: Arc<Semigroup>, prec: Multilinear<T>, succ: Multilinear<T>) -> Result<Self> {
        let n = omega.size();
        Self::new(omega, vec![prec; n], vec![succ; n])
    }

    /// One-dimensional family `x ≺_α x = a_α x`, `x ≻_α x = b_α x`.
    pub fn one_dim(omega: Arc<Semigroup>, a: &[T], b: &[T]) -> Result<Self> {
        let lift = |c: &T| Multilinear::from_coords(vec![1, 1], 1, vec![c.clone()]);
        Self::new(omega, a.iter().map(lift).collect(), b.iter().map(lift).collect())
    }

    pub fn omega(&self) -> &Semigroup {
        &self.omega
    }

    pub fn omega_arc(&self) -> &Arc<Semigroup> {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.prec[0].target()
    }

    pub fn prec(&self, alpha: usize) -> &Multilinear<T> {
        &self.prec[alpha]
    }

    pub fn succ(&self, alpha: usize) -> &Multilinear<T> {
        &self.succ[alpha]
    }

    /// `x ≺_α y` on coordinate vectors.
    pub fn apply_prec(&self, alpha: usize, x: &[T], y: &[T]) -> Vec<T> {
        self.prec[alpha].eval(&[x, y])
    }

    /// `x ≻_α y` on coordinate vectors.
    pub fn apply_succ(&self, alpha: usize, x: &[T], y: &[T]) -> Vec<T> {
        self.succ[alpha].eval(&[x, y])
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<T>) -> Result<Self> {
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Precondition("dendriform basis change: matrix is not invertible".into()))?;
        let conj = |m: &Multilinear<T>| m.change_basis(&[p, p], &inv);
        Ok(DendFamily {
            omega: self.omega.clone(),
            prec: self.prec.iter().map(conj).collect(),
            succ: self.succ.iter().map(conj).collect(),
        })
    }
}

/// Checks the three dendriform family axioms on every basis triple and label pair.
pub fn check_dend_family<T: Scalar>(d: &DendFamily<T>) -> Report {
    let mut report = Report::new("dendriform family");
    let sg = check_semigroup(&d.omega);
    if !sg.is_ok() {
        report.absorb(sg);
        return report;
    }
    let (dim, n) = (d.dim(), d.omega.size());
    let e: Vec<Vec<T>> = (0..dim).map(|i| unit(dim, i)).collect();
    for alpha in 0..n {
        for beta in 0..n {
            let ab = d.omega.mul(alpha, beta);
            for x in 0..dim {
                for y in 0..dim {
                    let xy_prec_b = d.apply_prec(beta, &e[x], &e[y]);
                    let xy_succ_a = d.apply_succ(alpha, &e[x], &e[y]);
                    let xy_prec_a = d.apply_prec(alpha, &e[x], &e[y]);
                    let mut sum = xy_prec_b.clone();
                    add_into(&mut sum, &xy_succ_a);
                    for z in 0..dim {
                        let mut inner = d.apply_prec(beta, &e[y], &e[z]);
                        add_into(&mut inner, &d.apply_succ(alpha, &e[y], &e[z]));
                        let lhs1 = d.apply_prec(beta, &xy_prec_a, &e[z]);
                        let rhs1 = d.apply_prec(ab, &e[x], &inner);
                        if lhs1 != rhs1 {
                            report.record("(x ≺α y) ≺β z = x ≺αβ (y ≺β z + y ≻α z)", || {
                                format!("(α={alpha},β={beta},e{x},e{y},e{z})")
                            });
                        }
                        let lhs2 = d.apply_prec(beta, &xy_succ_a, &e[z]);
                        let rhs2 = d.apply_succ(alpha, &e[x], &d.apply_prec(beta, &e[y], &e[z]));
                        if lhs2 != rhs2 {
                            report.record("(x ≻α y) ≺β z = x ≻α (y ≺β z)", || {
                                format!("(α={alpha},β={beta},e{x},e{y},e{z})")
                            });
                        }
                        let lhs3 = d.apply_succ(ab, &sum, &e[z]);
                        let rhs3 = d.apply_succ(alpha, &e[x], &d.apply_succ(beta, &e[y], &e[z]));
                        if lhs3 != rhs3 {
                            report.record("(x ≺β y + x ≻α y) ≻αβ z = x ≻α (y ≻β z)", || {
                                format!("(α={alpha},β={beta},e{x},e{y},e{z})")
                            });
                        }
                    }
                }
            }
        }
    }
    report
}

/// `u ≺_α v = u·R_α(v)` and `u ≻_α v = R_α(u)·v` on `M`.
pub fn induced_dend_family<T: Scalar>(s: &RelRBFamily<T>) -> Result<DendFamily<T>> {
    require(check_rel_rbf(s), "relative Rota-Baxter family")?;
    Ok(induced_unchecked(s))
}

pub(crate) fn induced_unchecked<T: Scalar>(s: &RelRBFamily<T>) -> DendFamily<T> {
    let dm = s.dim_m();
    let (module, ops) = (s.module(), s.ops());
    let n = s.omega().size();
    let prec = (0..n)
        .map(|a| Multilinear::from_fn(vec![dm, dm], dm, |i| module.act_right(&unit(dm, i[0]), &ops.column(a, i[1]))))
        .collect();
    let succ = (0..n)
        .map(|a| Multilinear::from_fn(vec![dm, dm], dm, |i| module.act_left(&ops.column(a, i[0]), &unit(dm, i[1]))))
        .collect();
    DendFamily {
        omega: s.omega_arc().clone(),
        prec,
        succ,
    }
}

/// Index of `e_x ⊗ α` in `D⊗kΩ`.
pub fn tot_index(omega_size: usize, x: usize, alpha: usize) -> usize {
    x * omega_size + alpha
}

/// The Tot algebra, bimodule and operators built from `d` without checking
/// the axioms.
pub fn tot_parts<T: Scalar>(d: &DendFamily<T>) -> (AssocAlgebra<T>, Bimodule<T>, OperatorFamily<T>) {
    let (dim, n) = (d.dim(), d.omega.size());
    let tot = dim * n;
    let omega = &d.omega;
    let mul = Multilinear::from_fn(vec![tot, tot], tot, |i| {
        let (x, alpha) = (i[0] / n, i[0] % n);
        let (y, beta) = (i[1] / n, i[1] % n);
        let mut v = d.prec[beta].at(&[x, y]).to_vec();
        add_into(&mut v, d.succ[alpha].at(&[x, y]));
        let ab = omega.mul(alpha, beta);
        let mut out = vec![T::zero(); tot];
        for (z, c) in v.into_iter().enumerate() {
            out[tot_index(n, z, ab)] = c;
        }
        out
    });
    let left = Multilinear::from_fn(vec![tot, dim], dim, |i| d.succ[i[0] % n].at(&[i[0] / n, i[1]]).to_vec());
    let right = Multilinear::from_fn(vec![dim, tot], dim, |i| d.prec[i[1] % n].at(&[i[0], i[1] / n]).to_vec());
    let maps = (0..n)
        .map(|alpha| {
            let mut m = Matrix::zeros(tot, dim);
            for x in 0..dim {
                m.set(tot_index(n, x, alpha), x, T::one());
            }
            m
        })
        .collect();
    (
        AssocAlgebra::from_multilinear(mul).expect("square by construction"),
        Bimodule::new(left, right).expect("shapes by construction"),
        OperatorFamily::new(maps).expect("one map per label"),
    )
}

/// `((D⊗kΩ)_Tot, D, {R_α(x) = x⊗α})` as a relative Rota-Baxter family.
pub fn tot_construction<T: Scalar>(d: &DendFamily<T>) -> Result<RelRBFamily<T>> {
    require(check_dend_family(d), "dendriform family")?;
    let (algebra, module, ops) = tot_parts(d);
    RelRBFamily::with_shared(d.omega.clone(), algebra, module, ops)
}

/// All one-dimensional families `x ≺_α x = a_α x`, `x ≻_α x = b_α x` with
/// coefficients drawn from `values` that pass [`check_dend_family`].
pub fn one_dim_search<T: Scalar>(omega: &Arc<Semigroup>, values: &[T]) -> Vec<DendFamily<T>> {
    let n = omega.size();
    let slots = 2 * n;
    let total = values.len().pow(slots as u32);
    let mut found = Vec::new();
    for mut code in 0..total {
        let mut coeffs = Vec::with_capacity(slots);
        for _ in 0..slots {
            coeffs.push(values[code % values.len()].clone());
            code /= values.len();
        }
        let d = DendFamily::one_dim(omega.clone(), &coeffs[..n], &coeffs[n..]).expect("shapes");
        if check_dend_family(&d).is_ok() {
            found.push(d);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn z2() -> Arc<Semigroup> {
        Arc::new(Semigroup::cyclic(2))
    }

    #[test]
    fn zero_family_is_valid_and_tot_is_trivial() {
        let d = DendFamily::<Q>::zero(z2(), 2);
        assert!(check_dend_family(&d).is_ok());
        let s = tot_construction(&d).unwrap();
        assert!(s.algebra().mul_map().is_zero());
        assert_eq!(s.dim_a(), 4);
        assert_eq!(induced_dend_family(&s).unwrap(), d);
    }

    #[test]
    fn induced_from_fixtures_is_dendriform() {
        for (name, s) in samples::rel_fixtures::<Q>() {
            let d = induced_dend_family(&s).unwrap();
            assert!(check_dend_family(&d).is_ok(), "{name}");
        }
    }

    #[test]
    fn zero_operator_induces_zero() {
        let s = samples::dual_numbers_zero::<Q>(Semigroup::cyclic(2)).as_relative();
        let d = induced_dend_family(&s).unwrap();
        assert_eq!(d, DendFamily::zero(s.omega_arc().clone(), 2));
    }

    #[test]
    fn one_dim_round_trip() {
        let found = one_dim_search(&z2(), &[q(-1), q(0), q(1)]);
        assert!(found.len() > 1);
        for d in &found {
            let s = tot_construction(d).unwrap();
            assert!(check_rel_rbf(&s).is_ok());
            assert_eq!(&induced_dend_family(&s).unwrap(), d);
        }
    }

    #[test]
    fn invalid_family_breaks_tot() {
        // x ≺ x = x ≻ x = x breaks the first and third axioms.
        let d = DendFamily::one_dim(z2(), &[q(1), q(1)], &[q(1), q(1)]).unwrap();
        assert!(!check_dend_family(&d).is_ok());
        assert!(tot_construction(&d).is_err());
        let (a, m, r) = tot_parts(&d);
        let s = RelRBFamily::with_shared(z2(), a, m, r).unwrap();
        assert!(!check_rel_rbf(&s).is_ok());
    }
}

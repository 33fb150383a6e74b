//! Associative algebras, bimodules, operator families and their axioms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::semigroup::{check_semigroup, Semigroup};
use crate::tensor::{add_into, is_zero_vec, sub_into, unit, Multilinear};

fn fmt_vec<T: Scalar>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

/// A finite-dimensional algebra given by structure constants; `mul` maps
/// `(e_i, e_j)` to the coordinates of `e_i · e_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssocAlgebra<T> {
    mul: Multilinear<T>,
}

impl<T: Scalar> AssocAlgebra<T> {
    /// `table[i][j]` holds the coordinates of `e_i · e_j`.
    pub fn new(dim: usize, table: Vec<Vec<Vec<T>>>) -> Result<Self> {
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Shape(format!("multiplication table must be {dim}x{dim}x{dim}")));
        }
        Ok(AssocAlgebra {
            mul: Multilinear::from_fn(vec![dim, dim], dim, |idx| table[idx[0]][idx[1]].clone()),
        })
    }

    pub fn from_multilinear(mul: Multilinear<T>) -> Result<Self> {
        let d = mul.target();
        if mul.source() != [d, d] {
            return Err(Error::Shape(format!(
                "multiplication must map {d}x{d} to {d}, got {:?} -> {d}",
                mul.source()
            )));
        }
        Ok(AssocAlgebra { mul })
    }

    /// The algebra with zero product.
    pub fn zero(dim: usize) -> Self {
        AssocAlgebra {
            mul: Multilinear::zeros(vec![dim, dim], dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mul.target()
    }

    pub fn mul_map(&self) -> &Multilinear<T> {
        &self.mul
    }

    pub fn table(&self) -> Vec<Vec<Vec<T>>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.mul.at(&[i, j]).to_vec()).collect())
            .collect()
    }

    pub fn product(&self, a: &[T], b: &[T]) -> Vec<T> {
        self.mul.eval(&[a, b])
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[T] {
        self.mul.at(&[i, j])
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<T>) -> Result<Self> {
        let inv = invert(p, "algebra basis change")?;
        Ok(AssocAlgebra {
            mul: self.mul.change_basis(&[p, p], &inv),
        })
    }
}

fn invert<T: Scalar>(p: &Matrix<T>, what: &str) -> Result<Matrix<T>> {
    p.inverse()
        .ok_or_else(|| Error::Precondition(format!("{what}: matrix is not invertible")))
}

/// Reports basis triples where `(e_i e_j) e_k ≠ e_i (e_j e_k)`.
pub fn check_algebra<T: Scalar>(alg: &AssocAlgebra<T>) -> Report {
    let mut report = Report::new("algebra associativity");
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let ij = alg.basis_product(i, j).to_vec();
            for k in 0..d {
                let left = alg.product(&ij, &unit(d, k));
                let right = alg.product(&unit(d, i), alg.basis_product(j, k));
                if left != right {
                    report.record("associativity", || {
                        format!("(e{i},e{j},e{k}): {} vs {}", fmt_vec(&left), fmt_vec(&right))
                    });
                }
            }
        }
    }
    report
}

/// A bimodule `M` over an algebra: `left` is `A ⊗ M → M`, `right` is `M ⊗ A → M`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bimodule<T> {
    left: Multilinear<T>,
    right: Multilinear<T>,
}

impl<T: Scalar> Bimodule<T> {
    pub fn new(left: Multilinear<T>, right: Multilinear<T>) -> Result<Self> {
        let dm = left.target();
        if left.arity() != 2 || right.arity() != 2 {
            return Err(Error::Shape("actions must be bilinear".into()));
        }
        let da = left.source()[0];
        if left.source()[1] != dm || right.source() != [dm, da] || right.target() != dm {
            return Err(Error::Shape(format!(
                "actions must be {da}x{dm} -> {dm} and {dm}x{da} -> {dm}"
            )));
        }
        Ok(Bimodule { left, right })
    }

    /// `left[a][u]` and `right[u][a]` hold coordinates in `M`.
    pub fn from_tables(dim_a: usize, dim_m: usize, left: Vec<Vec<Vec<T>>>, right: Vec<Vec<Vec<T>>>) -> Result<Self> {
        let ok_left = left.len() == dim_a && left.iter().all(|r| r.len() == dim_m && r.iter().all(|v| v.len() == dim_m));
        let ok_right = right.len() == dim_m && right.iter().all(|r| r.len() == dim_a && r.iter().all(|v| v.len() == dim_m));
        if !ok_left || !ok_right {
            return Err(Error::Shape(format!("action tables must be {dim_a}x{dim_m}x{dim_m} and {dim_m}x{dim_a}x{dim_m}")));
        }
        Bimodule::new(
            Multilinear::from_fn(vec![dim_a, dim_m], dim_m, |i| left[i[0]][i[1]].clone()),
            Multilinear::from_fn(vec![dim_m, dim_a], dim_m, |i| right[i[0]][i[1]].clone()),
        )
    }

    pub fn zero(dim_a: usize, dim_m: usize) -> Self {
        Bimodule {
            left: Multilinear::zeros(vec![dim_a, dim_m], dim_m),
            right: Multilinear::zeros(vec![dim_m, dim_a], dim_m),
        }
    }

    pub fn dim(&self) -> usize {
        self.left.target()
    }

    pub fn dim_algebra(&self) -> usize {
        self.left.source()[0]
    }

    pub fn left(&self) -> &Multilinear<T> {
        &self.left
    }

    pub fn right(&self) -> &Multilinear<T> {
        &self.right
    }

    pub fn act_left(&self, a: &[T], u: &[T]) -> Vec<T> {
        self.left.eval(&[a, u])
    }

    pub fn act_right(&self, u: &[T], a: &[T]) -> Vec<T> {
        self.right.eval(&[u, a])
    }

    /// Actions in new bases: columns of `p` for `A`, columns of `q` for `M`.
    pub fn change_basis(&self, p: &Matrix<T>, q: &Matrix<T>) -> Result<Self> {
        let qi = invert(q, "module basis change")?;
        Ok(Bimodule {
            left: self.left.change_basis(&[p, q], &qi),
            right: self.right.change_basis(&[q, p], &qi),
        })
    }
}

/// The algebra acting on itself by multiplication on both sides.
pub fn adjoint_bimodule<T: Scalar>(alg: &AssocAlgebra<T>) -> Bimodule<T> {
    Bimodule {
        left: alg.mul.clone(),
        right: alg.mul.clone(),
    }
}

fn shape_check<T: Scalar>(alg: &AssocAlgebra<T>, module: &Bimodule<T>) -> Result<()> {
    if module.dim_algebra() != alg.dim() {
        return Err(Error::Shape(format!(
            "bimodule expects a {}-dimensional algebra, got {}",
            module.dim_algebra(),
            alg.dim()
        )));
    }
    Ok(())
}

/// Reports the three bimodule axioms on all basis triples.
pub fn check_bimodule<T: Scalar>(alg: &AssocAlgebra<T>, module: &Bimodule<T>) -> Result<Report> {
    shape_check(alg, module)?;
    let mut report = Report::new("bimodule axioms");
    let (da, dm) = (alg.dim(), module.dim());
    for a in 0..da {
        let ea = unit::<T>(da, a);
        for b in 0..da {
            let eb = unit::<T>(da, b);
            let ab = alg.basis_product(a, b);
            for u in 0..dm {
                let eu = unit::<T>(dm, u);
                let l1 = module.act_left(ab, &eu);
                let l2 = module.act_left(&ea, module.left.at(&[b, u]));
                if l1 != l2 {
                    report.record("(ab)u = a(bu)", || format!("(e{a},e{b},m{u})"));
                }
                let m1 = module.act_right(module.left.at(&[a, u]), &eb);
                let m2 = module.act_left(&ea, module.right.at(&[u, b]));
                if m1 != m2 {
                    report.record("(au)b = a(ub)", || format!("(e{a},m{u},e{b})"));
                }
                let r1 = module.act_right(module.right.at(&[u, a]), &eb);
                let r2 = module.act_right(&eu, ab);
                if r1 != r2 {
                    report.record("(ua)b = u(ab)", || format!("(m{u},e{a},e{b})"));
                }
            }
        }
    }
    Ok(report)
}

/// A family `{R_α : M → A}` with one `dim_A × dim_M` matrix per element of Ω.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorFamily<T> {
    maps: Vec<Matrix<T>>,
}

impl<T: Scalar> OperatorFamily<T> {
    pub fn new(maps: Vec<Matrix<T>>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::Shape("operator family needs at least one map".into()));
        };
        let (r, c) = (first.rows(), first.cols());
        if maps.iter().any(|m| m.rows() != r || m.cols() != c) {
            return Err(Error::Shape("operator maps must share one shape".into()));
        }
        Ok(OperatorFamily { maps })
    }

    pub fn zero(omega_size: usize, dim_a: usize, dim_m: usize) -> Self {
        OperatorFamily {
            maps: vec![Matrix::zeros(dim_a, dim_m); omega_size],
        }
    }

    /// The same map for every label.
    pub fn constant(omega_size: usize, m: Matrix<T>) -> Self {
        OperatorFamily {
            maps: vec![m; omega_size],
        }
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn dim_target(&self) -> usize {
        self.maps[0].rows()
    }

    pub fn dim_source(&self) -> usize {
        self.maps[0].cols()
    }

    pub fn matrix(&self, alpha: usize) -> &Matrix<T> {
        &self.maps[alpha]
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.maps
    }

    pub fn apply(&self, alpha: usize, u: &[T]) -> Vec<T> {
        self.maps[alpha].mul_vec(u)
    }

    /// `R_α(e_u)`.
    pub fn column(&self, alpha: usize, u: usize) -> Vec<T> {
        self.maps[alpha].column(u)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        OperatorFamily {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| {
                    let mut m = a.clone();
                    for i in 0..m.rows() {
                        for j in 0..m.cols() {
                            let mut v = m.get(i, j).clone();
                            v += b.get(i, j);
                            m.set(i, j, v);
                        }
                    }
                    m
                })
                .collect(),
        }
    }

    /// `P⁻¹ R_α Q` for new bases `p` of `A` and `q` of `M`.
    pub fn change_basis(&self, p: &Matrix<T>, q: &Matrix<T>) -> Result<Self> {
        let pi = invert(p, "algebra basis change")?;
        Ok(OperatorFamily {
            maps: self.maps.iter().map(|m| pi.mul(m).mul(q)).collect(),
        })
    }
}

/// `(A, M, {R_α})` over a finite semigroup.
#[derive(Clone, Debug, PartialEq)]
pub struct RelRBFamily<T> {
    omega: Arc<Semigroup>,
    algebra: AssocAlgebra<T>,
    module: Bimodule<T>,
    ops: OperatorFamily<T>,
}

impl<T: Scalar> RelRBFamily<T> {
    /// Assembles the data after checking that all dimensions agree.
    pub fn new(omega: Semigroup, algebra: AssocAlgebra<T>, module: Bimodule<T>, ops: OperatorFamily<T>) -> Result<Self> {
        Self::with_shared(Arc::new(omega), algebra, module, ops)
    }

    pub fn with_shared(omega: Arc<Semigroup>, algebra: AssocAlgebra<T>, module: Bimodule<T>, ops: OperatorFamily<T>) -> Result<Self> {
        shape_check(&algebra, &module)?;
        if ops.len() != omega.size() {
            return Err(Error::Shape(format!(
                "{} operators for a semigroup of size {}",
                ops.len(),
                omega.size()
            )));
        }
        if ops.dim_target() != algebra.dim() || ops.dim_source() != module.dim() {
            return Err(Error::Shape(format!(
                "operators must be {}x{} matrices",
                algebra.dim(),
                module.dim()
            )));
        }
        Ok(RelRBFamily {
            omega,
            algebra,
            module,
            ops,
        })
    }

    pub fn omega(&self) -> &Semigroup {
        &self.omega
    }

    pub fn omega_arc(&self) -> &Arc<Semigroup> {
        &self.omega
    }

    pub fn algebra(&self) -> &AssocAlgebra<T> {
        &self.algebra
    }

    pub fn module(&self) -> &Bimodule<T> {
        &self.module
    }

    pub fn ops(&self) -> &OperatorFamily<T> {
        &self.ops
    }

    pub fn dim_a(&self) -> usize {
        self.algebra.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.module.dim()
    }

    pub fn with_ops(&self, ops: OperatorFamily<T>) -> Result<Self> {
        Self::with_shared(self.omega.clone(), self.algebra.clone(), self.module.clone(), ops)
    }

    /// The same structure in new bases: columns of `p` for `A`, of `q` for `M`.
    pub fn change_basis(&self, p: &Matrix<T>, q: &Matrix<T>) -> Result<Self> {
        Self::with_shared(
            self.omega.clone(),
            self.algebra.change_basis(p)?,
            self.module.change_basis(p, q)?,
            self.ops.change_basis(p, q)?,
        )
    }

    /// `R_α(u)·R_β(v) − R_{αβ}(R_α(u)·v + u·R_β(v))` on vectors.
    pub fn identity_defect(&self, alpha: usize, beta: usize, u: &[T], v: &[T]) -> Vec<T> {
        let ru = self.ops.apply(alpha, u);
        let rv = self.ops.apply(beta, v);
        let mut inner = self.module.act_left(&ru, v);
        add_into(&mut inner, &self.module.act_right(u, &rv));
        let mut out = self.algebra.product(&ru, &rv);
        sub_into(&mut out, &self.ops.apply(self.omega.mul(alpha, beta), &inner));
        out
    }
}

/// Reports the components first; if they are valid, the relative Rota-Baxter
/// family identity on every basis pair and label pair.
pub fn check_rel_rbf<T: Scalar>(s: &RelRBFamily<T>) -> Report {
    let mut report = Report::new("relative Rota-Baxter family");
    if components_invalid(s, &mut report) {
        return report;
    }
    let (dm, n) = (s.dim_m(), s.omega.size());
    for a in 0..n {
        for b in 0..n {
            for u in 0..dm {
                for v in 0..dm {
                    let d = s.identity_defect(a, b, &unit(dm, u), &unit(dm, v));
                    if !is_zero_vec(&d) {
                        report.record("Rota-Baxter family identity", || {
                            format!("(α={a},β={b},m{u},m{v}) defect {}", fmt_vec(&d))
                        });
                    }
                }
            }
        }
    }
    report
}

/// Absorbs component reports; true if any failed.
pub(crate) fn components_invalid<T: Scalar>(s: &RelRBFamily<T>, report: &mut Report) -> bool {
    let parts = [
        check_semigroup(&s.omega),
        check_algebra(&s.algebra),
        check_bimodule(&s.algebra, &s.module).expect("shapes checked at construction"),
    ];
    let mut bad = false;
    for p in parts {
        bad |= !p.is_ok();
        report.absorb(p);
    }
    bad
}

/// `(A, {R_α : A → A})`, a Rota-Baxter family algebra candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct RBFamily<T> {
    omega: Arc<Semigroup>,
    algebra: AssocAlgebra<T>,
    ops: OperatorFamily<T>,
}

impl<T: Scalar> RBFamily<T> {
    pub fn new(omega: Semigroup, algebra: AssocAlgebra<T>, ops: OperatorFamily<T>) -> Result<Self> {
        let d = algebra.dim();
        if ops.len() != omega.size() || ops.dim_source() != d || ops.dim_target() != d {
            return Err(Error::Shape(format!(
                "need {} operators of shape {d}x{d}",
                omega.size()
            )));
        }
        Ok(RBFamily {
            omega: Arc::new(omega),
            algebra,
            ops,
        })
    }

    pub fn omega(&self) -> &Semigroup {
        &self.omega
    }

    pub fn omega_arc(&self) -> &Arc<Semigroup> {
        &self.omega
    }

    pub fn algebra(&self) -> &AssocAlgebra<T> {
        &self.algebra
    }

    pub fn ops(&self) -> &OperatorFamily<T> {
        &self.ops
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The relative structure on the adjoint bimodule.
    pub fn as_relative(&self) -> RelRBFamily<T> {
        RelRBFamily {
            omega: self.omega.clone(),
            algebra: self.algebra.clone(),
            module: adjoint_bimodule(&self.algebra),
            ops: self.ops.clone(),
        }
    }

    pub fn change_basis(&self, p: &Matrix<T>) -> Result<Self> {
        Ok(RBFamily {
            omega: self.omega.clone(),
            algebra: self.algebra.change_basis(p)?,
            ops: self.ops.change_basis(p, p)?,
        })
    }
}

pub fn check_rb_family<T: Scalar>(rb: &RBFamily<T>) -> Report {
    check_rel_rbf(&rb.as_relative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::Q;

    #[test]
    fn dual_numbers_valid_and_perturbed_invalid() {
        assert!(check_algebra(&samples::dual_numbers::<Q>()).is_ok());
        assert!(!check_algebra(&samples::perturbed_dual_numbers::<Q>()).is_ok());
    }

    #[test]
    fn adjoint_is_bimodule() {
        let a = samples::dual_numbers::<Q>();
        assert!(check_bimodule(&a, &adjoint_bimodule(&a)).unwrap().is_ok());
    }

    #[test]
    fn bad_left_action_detected() {
        let a = samples::dual_numbers::<Q>();
        let q = |n: i64| Q::from_integer(n.into());
        let m = Bimodule::<Q>::from_tables(1, 1, vec![], vec![]).err();
        assert!(m.is_some());
        let left = vec![vec![vec![q(0)]], vec![vec![q(1)]]];
        let right = vec![vec![vec![q(0)], vec![q(0)]]];
        let m = Bimodule::from_tables(2, 1, left, right).unwrap();
        assert!(!check_bimodule(&a, &m).unwrap().is_ok());
    }

    #[test]
    fn identity_operator_on_dual_numbers_fails() {
        let s = RBFamily::new(
            Semigroup::trivial(),
            samples::dual_numbers(),
            OperatorFamily::constant(1, Matrix::<Q>::identity(2)),
        )
        .unwrap();
        assert!(!check_rb_family(&s).is_ok());
    }

    #[test]
    fn dimension_mismatch_is_error() {
        let a = samples::dual_numbers::<Q>();
        let m = Bimodule::<Q>::zero(3, 1);
        assert!(check_bimodule(&a, &m).is_err());
    }
}

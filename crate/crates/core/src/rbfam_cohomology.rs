//! Cochain complexes of relative Rota-Baxter family algebras and of
//! Rota-Baxter family algebras, and the long exact sequence relating the
//! latter to Hochschild and operator cohomology.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{check_rb_family, check_rel_rbf, AssocAlgebra, Bimodule, RBFamily, RelRBFamily};
use crate::complex::{induced_rank, matrix_of, DegreeDims, Truncation};
use crate::error::{require, Error, Limits, Result};
use crate::linalg::Matrix;
use crate::omega_hom::{family_dim, OmegaMap};
use crate::operator_complex::d_r_raw;
use crate::report::Report;
use crate::scalar::{sign, Scalar};
use crate::semigroup::Semigroup;
use crate::tensor::{axpy, box_size, unit, Multilinear};

/// The Hochschild coboundary of `f : A^⊗n → A` with values in `A`.
pub fn delta_hoch<T: Scalar>(f: &Multilinear<T>, algebra: &AssocAlgebra<T>) -> Multilinear<T> {
    let n = f.arity();
    let d = algebra.dim();
    assert!(f.source().iter().all(|&x| x == d) && f.target() == d, "cochain shape");
    let mul = algebra.mul_map();
    let last: T = sign(n + 1);
    let mut basis = vec![0; n];
    Multilinear::from_fn(vec![d; n + 1], d, |a| {
        let mut out = mul.eval_with(&[a[0], 0], 1, f.at(&a[1..]));
        for j in 0..n {
            basis[..j].copy_from_slice(&a[..j]);
            basis[j + 1..].copy_from_slice(&a[j + 2..]);
            axpy(&mut out, &sign(j + 1), &f.eval_with(&basis, j, algebra.basis_product(a[j], a[j + 1])));
        }
        axpy(&mut out, &last, &mul.eval_with(&[0, a[n]], 0, f.at(&a[..n])));
        out
    })
}

/// Slot dimensions of the block of `𝒜^{n−1,1}` with `M` at position `p`.
pub fn block_source(dim_a: usize, dim_m: usize, n: usize, p: usize) -> Vec<usize> {
    let mut s = vec![dim_a; n];
    s[p] = dim_m;
    s
}

fn check_blocks<T: Scalar>(g: &[Multilinear<T>], n: usize, dim_a: usize, dim_m: usize) -> Result<()> {
    if g.len() != n {
        return Err(Error::Shape(format!("expected {n} blocks, got {}", g.len())));
    }
    for (p, b) in g.iter().enumerate() {
        if b.source() != block_source(dim_a, dim_m, n, p).as_slice() || b.target() != dim_m {
            return Err(Error::Shape(format!(
                "block {p} must map {:?} → {dim_m}, got {:?} → {}",
                block_source(dim_a, dim_m, n, p),
                b.source(),
                b.target()
            )));
        }
    }
    Ok(())
}

/// `δ^f_Hoch(g)` for `f : A^⊗n → A` and `g` given by its `n` blocks; block
/// `p` of the output has the `M`-argument at position `p`.
pub fn delta_hoch_f<T: Scalar>(
    g: &[Multilinear<T>],
    f: &Multilinear<T>,
    algebra: &AssocAlgebra<T>,
    module: &Bimodule<T>,
) -> Result<Vec<Multilinear<T>>> {
    let n = f.arity();
    let (da, dm) = (algebra.dim(), module.dim());
    if f.source().iter().any(|&x| x != da) || f.target() != da {
        return Err(Error::Shape("f must map A^⊗n → A".into()));
    }
    check_blocks(g, n, da, dm)?;
    let (left, right) = (module.left(), module.right());
    let last: T = sign(n + 1);
    let mut basis = vec![0; n];
    Ok((0..=n)
        .map(|q| {
            Multilinear::from_fn(block_source(da, dm, n + 1, q), dm, |a| {
                let mut out = if q == 0 {
                    right.eval_with(&[a[0], 0], 1, f.at(&a[1..]))
                } else {
                    left.eval_with(&[a[0], 0], 1, g[q - 1].at(&a[1..]))
                };
                for j in 0..n {
                    basis[..j].copy_from_slice(&a[..j]);
                    basis[j + 1..].copy_from_slice(&a[j + 2..]);
                    let merged = if q == j {
                        module.right().at(&[a[j], a[j + 1]])
                    } else if q == j + 1 {
                        module.left().at(&[a[j], a[j + 1]])
                    } else {
                        algebra.basis_product(a[j], a[j + 1])
                    };
                    let p = if q <= j { q } else { q - 1 };
                    axpy(&mut out, &sign(j + 1), &g[p].eval_with(&basis, j, merged));
                }
                let tail = if q == n {
                    left.eval_with(&[0, a[n]], 0, f.at(&a[..n]))
                } else {
                    right.eval_with(&[0, a[n]], 0, g[q].at(&a[..n]))
                };
                axpy(&mut out, &last, &tail);
                out
            })
        })
        .collect())
}

/// `h_R(f, g)`, an element of `Hom_Ω(M^⊗n, A)`.
pub fn h_r<T: Scalar>(f: &Multilinear<T>, g: &[Multilinear<T>], s: &RelRBFamily<T>) -> Result<OmegaMap<T>> {
    let n = f.arity();
    let (da, dm) = (s.dim_a(), s.dim_m());
    if f.source().iter().any(|&x| x != da) || f.target() != da {
        return Err(Error::Shape("f must map A^⊗n → A".into()));
    }
    check_blocks(g, n, da, dm)?;
    let omega = s.omega();
    let ops = s.ops();
    let outer: T = sign(n);
    Ok(OmegaMap::from_fn(s.omega_arc().clone(), vec![dm; n], da, |labels| {
        let top = if n == 0 { None } else { Some(omega.product(labels)) };
        Multilinear::from_fn(vec![dm; n], da, |u| {
            let images: Vec<Vec<T>> = (0..n).map(|k| ops.column(labels[k], u[k])).collect();
            let mut args: Vec<&[T]> = images.iter().map(Vec::as_slice).collect();
            let mut out = f.eval(&args);
            let mut inner = vec![T::zero(); dm];
            let units: Vec<Vec<T>> = u.iter().map(|&x| unit(dm, x)).collect();
            for r in 0..n {
                args[r] = &units[r];
                axpy(&mut inner, &T::one(), &g[r].eval(&args));
                args[r] = &images[r];
            }
            if let Some(top) = top {
                axpy(&mut out, &-T::one(), &ops.apply(top, &inner));
            }
            out.iter().map(|x| x.clone() * outer.clone()).collect()
        })
    }))
}

/// A cochain `(f, g, γ)` of degree `n ≥ 1`; `γ` is absent in degree 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedCochain<T> {
    f: Multilinear<T>,
    g: Vec<Multilinear<T>>,
    gamma: Option<OmegaMap<T>>,
}

/// The shape data of the cochain spaces of one relative family.
#[derive(Clone, Debug)]
struct Shape {
    omega: Arc<Semigroup>,
    dim_a: usize,
    dim_m: usize,
}

impl Shape {
    fn of<T: Scalar>(s: &RelRBFamily<T>) -> Self {
        Shape {
            omega: s.omega_arc().clone(),
            dim_a: s.dim_a(),
            dim_m: s.dim_m(),
        }
    }

    fn f_len(&self, n: usize) -> usize {
        box_size(&vec![self.dim_a; n]) * self.dim_a
    }

    fn block_len(&self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            box_size(&block_source(self.dim_a, self.dim_m, n, 0)) * self.dim_m
        }
    }

    fn gamma_len(&self, n: usize) -> usize {
        if n < 2 {
            0
        } else {
            family_dim(&self.omega, &vec![self.dim_m; n - 1], self.dim_a)
        }
    }
}

impl<T: Scalar> MixedCochain<T> {
    pub fn new(f: Multilinear<T>, g: Vec<Multilinear<T>>, gamma: Option<OmegaMap<T>>, s: &RelRBFamily<T>) -> Result<Self> {
        let n = f.arity();
        if n == 0 {
            return Err(Error::Shape("cochains start in degree 1".into()));
        }
        let (da, dm) = (s.dim_a(), s.dim_m());
        if f.source().iter().any(|&x| x != da) || f.target() != da {
            return Err(Error::Shape("f must map A^⊗n → A".into()));
        }
        check_blocks(&g, n, da, dm)?;
        match (&gamma, n) {
            (None, 1) => {}
            (Some(c), _) if n >= 2 => {
                if c.arity() != n - 1 || c.target() != da || c.source().iter().any(|&x| x != dm) {
                    return Err(Error::Shape(format!("γ must lie in Hom_Ω(M^⊗{}, A)", n - 1)));
                }
            }
            _ => return Err(Error::Shape("γ is present exactly in degrees ≥ 2".into())),
        }
        Ok(MixedCochain { f, g, gamma })
    }

    pub fn zero(s: &RelRBFamily<T>, n: usize) -> Self {
        Self::from_vector(s, n, &vec![T::zero(); mixed_dim(s, n)])
    }

    /// The cochain with coordinates `v` in the layout `[f, g-blocks, γ]`.
    pub fn from_vector(s: &RelRBFamily<T>, n: usize, v: &[T]) -> Self {
        assert!(n >= 1, "cochains start in degree 1");
        let sh = Shape::of(s);
        assert_eq!(v.len(), mixed_dim(s, n), "coordinate count");
        let (fl, bl) = (sh.f_len(n), sh.block_len(n));
        let f = Multilinear::from_coords(vec![sh.dim_a; n], sh.dim_a, v[..fl].to_vec());
        let g = (0..n)
            .map(|p| {
                let start = fl + p * bl;
                Multilinear::from_coords(block_source(sh.dim_a, sh.dim_m, n, p), sh.dim_m, v[start..start + bl].to_vec())
            })
            .collect();
        let gamma = (n >= 2).then(|| OmegaMap::from_vector(sh.omega.clone(), vec![sh.dim_m; n - 1], sh.dim_a, &v[fl + n * bl..]));
        MixedCochain { f, g, gamma }
    }

    pub fn to_vector(&self) -> Vec<T> {
        let mut v = self.f.coords().to_vec();
        for b in &self.g {
            v.extend_from_slice(b.coords());
        }
        if let Some(c) = &self.gamma {
            v.extend(c.to_vector());
        }
        v
    }

    pub fn degree(&self) -> usize {
        self.f.arity()
    }

    pub fn f(&self) -> &Multilinear<T> {
        &self.f
    }

    pub fn g(&self) -> &[Multilinear<T>] {
        &self.g
    }

    pub fn gamma(&self) -> Option<&OmegaMap<T>> {
        self.gamma.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.g.iter().all(Multilinear::is_zero) && self.gamma.as_ref().is_none_or(OmegaMap::is_zero)
    }
}

impl<T: Scalar> fmt::Display for MixedCochain<T> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.to_vector().iter().map(ToString::to_string).collect();
        write!(out, "degree {} [{}]", self.degree(), v.join(", "))
    }
}

/// `dim C^n_rRBf`.
pub fn mixed_dim<T: Scalar>(s: &RelRBFamily<T>, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let sh = Shape::of(s);
    sh.f_len(n) + n * sh.block_len(n) + sh.gamma_len(n)
}

fn delta_rrbf_unchecked<T: Scalar>(c: &MixedCochain<T>, s: &RelRBFamily<T>) -> MixedCochain<T> {
    let f = delta_hoch(&c.f, s.algebra());
    let g = delta_hoch_f(&c.g, &c.f, s.algebra(), s.module()).expect("shapes checked");
    let mut gamma = h_r(&c.f, &c.g, s).expect("shapes checked");
    if let Some(old) = &c.gamma {
        gamma.add_assign(&d_r_raw(old, s).expect("shapes checked"));
    }
    MixedCochain {
        f,
        g,
        gamma: Some(gamma),
    }
}

/// `δ_rRBf(f, g, γ) = (δ_Hoch f, δ^f_Hoch g, d_R γ + h_R(f, g))`.
pub fn delta_rrbf<T: Scalar>(c: &MixedCochain<T>, s: &RelRBFamily<T>) -> Result<MixedCochain<T>> {
    require(check_rel_rbf(s), "relative Rota-Baxter family")?;
    if c.g.first().map(|b| b.target()) != Some(s.dim_m()) || c.f.target() != s.dim_a() {
        return Err(Error::Shape("cochain does not belong to this family".into()));
    }
    Ok(delta_rrbf_unchecked(c, s))
}

/// The matrix of `δ_rRBf : C^n → C^{n+1}`.
pub fn delta_rrbf_matrix<T: Scalar>(s: &RelRBFamily<T>, n: usize) -> Matrix<T> {
    matrix_of(mixed_dim(s, n), mixed_dim(s, n + 1), |v| {
        delta_rrbf_unchecked(&MixedCochain::from_vector(s, n, v), s).to_vector()
    })
}

/// A cochain `(f, γ)` of a Rota-Baxter family algebra; `γ` is absent in
/// degree 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RBCochain<T> {
    f: Multilinear<T>,
    gamma: Option<OmegaMap<T>>,
}

impl<T: Scalar> RBCochain<T> {
    pub fn new(f: Multilinear<T>, gamma: Option<OmegaMap<T>>, rb: &RBFamily<T>) -> Result<Self> {
        let rel = rb.as_relative();
        let n = f.arity();
        let blocks = vec![f.clone(); n];
        let c = MixedCochain::new(f, blocks, gamma, &rel)?;
        Ok(RBCochain { f: c.f, gamma: c.gamma })
    }

    pub fn from_vector(rb: &RBFamily<T>, n: usize, v: &[T]) -> Self {
        assert!(n >= 1, "cochains start in degree 1");
        let d = rb.dim();
        let fl = box_size(&vec![d; n]) * d;
        assert_eq!(v.len(), rb_dim(rb, n), "coordinate count");
        let f = Multilinear::from_coords(vec![d; n], d, v[..fl].to_vec());
        let gamma = (n >= 2).then(|| OmegaMap::from_vector(rb_omega(rb), vec![d; n - 1], d, &v[fl..]));
        RBCochain { f, gamma }
    }

    pub fn to_vector(&self) -> Vec<T> {
        let mut v = self.f.coords().to_vec();
        if let Some(c) = &self.gamma {
            v.extend(c.to_vector());
        }
        v
    }

    pub fn degree(&self) -> usize {
        self.f.arity()
    }

    pub fn f(&self) -> &Multilinear<T> {
        &self.f
    }

    pub fn gamma(&self) -> Option<&OmegaMap<T>> {
        self.gamma.as_ref()
    }

    /// `i(f, γ) = (f, f, γ)`.
    pub fn embed(&self) -> MixedCochain<T> {
        MixedCochain {
            f: self.f.clone(),
            g: vec![self.f.clone(); self.degree()],
            gamma: self.gamma.clone(),
        }
    }
}

fn rb_omega<T: Scalar>(rb: &RBFamily<T>) -> Arc<Semigroup> {
    rb.omega_arc().clone()
}

/// `dim C^n_RBf`.
pub fn rb_dim<T: Scalar>(rb: &RBFamily<T>, n: usize) -> usize {
    let d = rb.dim();
    match n {
        0 => 0,
        1 => d * d,
        _ => d.pow(n as u32 + 1) + family_dim(rb.omega(), &vec![d; n - 1], d),
    }
}

/// `h_R(f)` of a Rota-Baxter family algebra, i.e. `h_R(f, g)` with every
/// block of `g` equal to `f`.
pub fn h_r_rb<T: Scalar>(f: &Multilinear<T>, rb: &RBFamily<T>) -> Result<OmegaMap<T>> {
    h_r(f, &vec![f.clone(); f.arity()], &rb.as_relative())
}

fn delta_rbf_unchecked<T: Scalar>(c: &RBCochain<T>, rel: &RelRBFamily<T>) -> RBCochain<T> {
    let f = delta_hoch(&c.f, rel.algebra());
    let mut gamma = h_r(&c.f, &vec![c.f.clone(); c.degree()], rel).expect("shapes checked");
    if let Some(old) = &c.gamma {
        gamma.add_assign(&d_r_raw(old, rel).expect("shapes checked"));
    }
    RBCochain { f, gamma: Some(gamma) }
}

/// `δ_RBf(f, γ) = (δ_Hoch f, d_R γ + h_R(f))`.
pub fn delta_rbf<T: Scalar>(c: &RBCochain<T>, rb: &RBFamily<T>) -> Result<RBCochain<T>> {
    require(check_rb_family(rb), "Rota-Baxter family algebra")?;
    if c.f.target() != rb.dim() {
        return Err(Error::Shape("cochain does not belong to this family".into()));
    }
    Ok(delta_rbf_unchecked(c, &rb.as_relative()))
}

/// The matrix of `δ_RBf : C^n → C^{n+1}`.
pub fn delta_rbf_matrix<T: Scalar>(rb: &RBFamily<T>, n: usize) -> Matrix<T> {
    let rel = rb.as_relative();
    matrix_of(rb_dim(rb, n), rb_dim(rb, n + 1), |v| {
        delta_rbf_unchecked(&RBCochain::from_vector(rb, n, v), &rel).to_vector()
    })
}

/// The matrix of `δ_Hoch` on `Hom(A^⊗n, A)`.
pub fn delta_hoch_matrix<T: Scalar>(algebra: &AssocAlgebra<T>, n: usize) -> Matrix<T> {
    let d = algebra.dim();
    let len = |k: usize| d.pow(k as u32 + 1);
    matrix_of(len(n), len(n + 1), |v| {
        let f = Multilinear::from_coords(vec![d; n], d, v.to_vec());
        delta_hoch(&f, algebra).into_coords()
    })
}

fn guard(limits: &Limits, what: &str, needed: usize) -> Result<()> {
    limits.guard(|| what.to_string(), needed)
}

/// `C^1_rRBf → … → C^{N+1}_rRBf`.
pub fn rrbf_truncation<T: Scalar>(s: &RelRBFamily<T>, max_degree: usize, limits: &Limits) -> Result<Truncation<T>> {
    require(check_rel_rbf(s), "relative Rota-Baxter family")?;
    guard(limits, "C_rRBf", mixed_dim(s, max_degree + 1))?;
    Ok(Truncation {
        first: 1,
        maps: (1..=max_degree).map(|n| delta_rrbf_matrix(s, n)).collect(),
    })
}

/// `C^1_RBf → … → C^{N+1}_RBf`.
pub fn rbf_truncation<T: Scalar>(rb: &RBFamily<T>, max_degree: usize, limits: &Limits) -> Result<Truncation<T>> {
    require(check_rb_family(rb), "Rota-Baxter family algebra")?;
    guard(limits, "C_RBf", rb_dim(rb, max_degree + 1))?;
    Ok(Truncation {
        first: 1,
        maps: (1..=max_degree).map(|n| delta_rbf_matrix(rb, n)).collect(),
    })
}

/// `Hom(A, A) → … → Hom(A^⊗{N+1}, A)`; the complex starts in degree 1.
pub fn hochschild_truncation<T: Scalar>(algebra: &AssocAlgebra<T>, max_degree: usize, limits: &Limits) -> Result<Truncation<T>> {
    guard(limits, "Hom(A^⊗n, A)", algebra.dim().pow(max_degree as u32 + 2))?;
    Ok(Truncation {
        first: 1,
        maps: (1..=max_degree).map(|n| delta_hoch_matrix(algebra, n)).collect(),
    })
}

fn checked_degree(max_degree: usize) -> Result<()> {
    if max_degree == 0 {
        Err(Error::Precondition("max_degree must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Dimensions of `H^n_rRBf` for `1 ≤ n ≤ max_degree`.
pub fn cohomology_rrbf<T: Scalar>(s: &RelRBFamily<T>, max_degree: usize, limits: &Limits) -> Result<Vec<DegreeDims>> {
    checked_degree(max_degree)?;
    Ok(rrbf_truncation(s, max_degree, limits)?.dims())
}

/// Dimensions of `H^n_RBf` for `1 ≤ n ≤ max_degree`.
pub fn cohomology_rbf<T: Scalar>(rb: &RBFamily<T>, max_degree: usize, limits: &Limits) -> Result<Vec<DegreeDims>> {
    checked_degree(max_degree)?;
    Ok(rbf_truncation(rb, max_degree, limits)?.dims())
}

/// Dimensions of `H^n_Hoch(A, A)` for `1 ≤ n ≤ max_degree`, with no
/// degree-0 cochains.
pub fn cohomology_hoch<T: Scalar>(algebra: &AssocAlgebra<T>, max_degree: usize, limits: &Limits) -> Result<Vec<DegreeDims>> {
    checked_degree(max_degree)?;
    Ok(hochschild_truncation(algebra, max_degree, limits)?.dims())
}

/// The three groups of the long exact sequence in one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LesGroup {
    /// `H^{n−1}_R(A, A)`, the cohomology of the shifted operator complex.
    Operator,
    /// `H^n_RBf`.
    RBFamily,
    /// `H^n_Hoch(A, A)`.
    Hochschild,
}

impl fmt::Display for LesGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LesGroup::Operator => "H_R",
            LesGroup::RBFamily => "H_RBf",
            LesGroup::Hochschild => "H_Hoch",
        })
    }
}

/// One node of the long exact sequence with the ranks of its incoming and
/// outgoing maps on cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LesNode {
    pub degree: usize,
    pub group: LesGroup,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    /// The composite of the incoming and outgoing maps vanishes.
    pub composite_zero: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    /// Degree `n` holds `H^{n−1}_R(A, A)` in the convention without
    /// degree-0 cochains.
    pub operator: Vec<DegreeDims>,
    pub rb_family: Vec<DegreeDims>,
    pub hochschild: Vec<DegreeDims>,
    pub nodes: Vec<LesNode>,
    pub report: Report,
}

/// Per-degree data of one complex: `d[n]`, kernel basis and spanning set of
/// coboundaries, for `n = 1..=N`.
struct Layer<T> {
    dims: Vec<usize>,
    maps: Vec<Matrix<T>>,
    kernels: Vec<Matrix<T>>,
}

impl<T: Scalar> Layer<T> {
    /// `maps[k]` goes out of degree `k + 1`.
    fn new(dims: Vec<usize>, maps: Vec<Matrix<T>>) -> Self {
        let kernels = maps.iter().map(Matrix::kernel).collect();
        Layer { dims, maps, kernels }
    }

    /// Coboundaries in degree `n ≥ 1`, as columns.
    fn boundaries(&self, n: usize) -> Matrix<T> {
        if n == 1 {
            Matrix::zeros(self.dims[0], 0)
        } else {
            self.maps[n - 2].clone()
        }
    }

    fn kernel(&self, n: usize) -> &Matrix<T> {
        &self.kernels[n - 1]
    }

    fn cohomology(&self, n: usize) -> usize {
        self.kernel(n).cols() - self.boundaries(n).rank()
    }

    fn degree_dims(&self, n: usize) -> DegreeDims {
        let cocycles = self.kernel(n).cols();
        let coboundaries = self.boundaries(n).rank();
        DegreeDims {
            degree: n,
            cochains: self.dims[n - 1],
            cocycles,
            coboundaries,
            cohomology: cocycles - coboundaries,
        }
    }
}

fn contained<T: Scalar>(span: &Matrix<T>, cols: &Matrix<T>) -> bool {
    span.hcat(cols).rank() == span.rank()
}

/// Checks exactness of
/// `… → H^{n−1}_R → H^n_RBf → H^n_Hoch → H^n_R → …` at every node of degree
/// `1 ≤ n ≤ max_degree`.
pub fn les_check<T: Scalar>(rb: &RBFamily<T>, max_degree: usize, limits: &Limits) -> Result<LesReport> {
    checked_degree(max_degree)?;
    require(check_rb_family(rb), "Rota-Baxter family algebra")?;
    let big_n = max_degree;
    let rel = rb.as_relative();
    let d = rb.dim();
    guard(limits, "C_RBf", rb_dim(rb, big_n + 2))?;

    let op_dim = |n: usize| if n < 2 { 0 } else { family_dim(rb.omega(), &vec![d; n - 1], d) };
    let hoch_dim = |n: usize| d.pow(n as u32 + 1);

    // The shifted operator complex S^n = Hom_Ω(A^⊗{n−1}, A) for n ≥ 2, S^1 = 0,
    // built one degree further so that coboundaries of S^{N+1} are known.
    let s_maps: Vec<Matrix<T>> = (1..=big_n + 1)
        .map(|n| {
            if n == 1 {
                Matrix::zeros(op_dim(2), 0)
            } else {
                let src = op_dim(n);
                matrix_of(src, op_dim(n + 1), |v| {
                    let g = OmegaMap::from_vector(rb_omega(rb), vec![d; n - 1], d, v);
                    d_r_raw(&g, &rel).expect("shapes checked").to_vector()
                })
            }
        })
        .collect();
    let s_layer = Layer::new((1..=big_n + 1).map(op_dim).collect(), s_maps);
    let c_layer = Layer::new(
        (1..=big_n).map(|n| rb_dim(rb, n)).collect(),
        (1..=big_n).map(|n| delta_rbf_matrix(rb, n)).collect(),
    );
    let h_layer = Layer::new(
        (1..=big_n).map(hoch_dim).collect(),
        (1..=big_n).map(|n| delta_hoch_matrix(rb.algebra(), n)).collect(),
    );

    let incl = |n: usize| {
        let (src, dst, off) = (op_dim(n), rb_dim(rb, n), hoch_dim(n));
        matrix_of::<T>(src, dst, |v| {
            let mut out = vec![T::zero(); dst];
            out[off..].clone_from_slice(v);
            out
        })
    };
    let proj = |n: usize| {
        let (src, dst) = (rb_dim(rb, n), hoch_dim(n));
        matrix_of::<T>(src, dst, |v| v[..dst].to_vec())
    };
    let connecting = |n: usize| {
        let (src, dst) = (hoch_dim(n), op_dim(n + 1));
        matrix_of::<T>(src, dst, |v| {
            let mut lift = vec![T::zero(); rb_dim(rb, n)];
            lift[..src].clone_from_slice(v);
            let image = delta_rbf_unchecked(&RBCochain::from_vector(rb, n, &lift), &rel).to_vector();
            image[hoch_dim(n + 1)..].to_vec()
        })
    };

    let i_maps: Vec<Matrix<T>> = (1..=big_n).map(incl).collect();
    let p_maps: Vec<Matrix<T>> = (1..=big_n).map(proj).collect();
    let c_maps: Vec<Matrix<T>> = (1..=big_n).map(connecting).collect();

    let rank_i: Vec<usize> = (1..=big_n)
        .map(|n| induced_rank(&i_maps[n - 1], s_layer.kernel(n), &c_layer.boundaries(n)))
        .collect();
    let rank_p: Vec<usize> = (1..=big_n)
        .map(|n| induced_rank(&p_maps[n - 1], c_layer.kernel(n), &h_layer.boundaries(n)))
        .collect();
    let rank_c: Vec<usize> = (1..=big_n)
        .map(|n| induced_rank(&c_maps[n - 1], h_layer.kernel(n), &s_layer.boundaries(n + 1)))
        .collect();

    let mut nodes = Vec::new();
    let mut report = Report::new("long exact sequence");
    for n in 1..=big_n {
        let (ri, rp, rc) = (rank_i[n - 1], rank_p[n - 1], rank_c[n - 1]);
        let rc_prev = if n == 1 { 0 } else { rank_c[n - 2] };
        let comp_s = n == 1
            || contained(
                &c_layer.boundaries(n),
                &i_maps[n - 1].mul(&c_maps[n - 2]).mul(h_layer.kernel(n - 1)),
            );
        let comp_c = contained(&h_layer.boundaries(n), &p_maps[n - 1].mul(&i_maps[n - 1]).mul(s_layer.kernel(n)));
        let comp_h = contained(&s_layer.boundaries(n + 1), &c_maps[n - 1].mul(&p_maps[n - 1]).mul(c_layer.kernel(n)));
        let entries = [
            (LesGroup::Operator, s_layer.cohomology(n), rc_prev, ri, comp_s),
            (LesGroup::RBFamily, c_layer.cohomology(n), ri, rp, comp_c),
            (LesGroup::Hochschild, h_layer.cohomology(n), rp, rc, comp_h),
        ];
        for (group, dim, rank_in, rank_out, composite_zero) in entries {
            let exact = composite_zero && rank_in + rank_out == dim;
            if !exact {
                report.record("image equals kernel", || {
                    format!("{group}^{n}: dim {dim}, incoming rank {rank_in}, outgoing rank {rank_out}, composite zero {composite_zero}")
                });
            }
            nodes.push(LesNode {
                degree: n,
                group,
                dim,
                rank_in,
                rank_out,
                composite_zero,
                exact,
            });
        }
    }
    Ok(LesReport {
        operator: (1..=big_n).map(|n| s_layer.degree_dims(n)).collect(),
        rb_family: (1..=big_n).map(|n| c_layer.degree_dims(n)).collect(),
        hochschild: (1..=big_n).map(|n| h_layer.degree_dims(n)).collect(),
        nodes,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn hochschild_squares_to_zero_and_kills_product() {
        let a = samples::dual_numbers::<Q>();
        assert!(delta_hoch(a.mul_map(), &a).is_zero());
        let bad = samples::perturbed_dual_numbers::<Q>();
        assert!(!delta_hoch(bad.mul_map(), &bad).is_zero());
        for n in 1..3 {
            assert!(delta_hoch_matrix(&a, n + 1).mul(&delta_hoch_matrix(&a, n)).is_zero());
        }
    }

    #[test]
    fn mixed_differential_squares_to_zero() {
        for (name, s) in samples::rel_fixtures::<Q>() {
            let t = rrbf_truncation(&s, 2, &Limits::default()).unwrap();
            assert_eq!(t.square_defect(), None, "{name}");
        }
    }

    #[test]
    fn rb_differential_restricts_mixed_one() {
        let rb = samples::nilpotent_family::<Q>(Semigroup::cyclic(2), &[1, 2]);
        let rel = rb.as_relative();
        for n in 1..3 {
            for k in 0..rb_dim(&rb, n) {
                let c = RBCochain::from_vector(&rb, n, &unit::<Q>(rb_dim(&rb, n), k));
                let lhs = delta_rbf(&c, &rb).unwrap().embed();
                let rhs = delta_rrbf(&c.embed(), &rel).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn vector_layout_round_trip() {
        let s = samples::augmentation_family::<Q>(Semigroup::cyclic(2), &[1, 3]);
        let n = 2;
        let v: Vec<Q> = (0..mixed_dim(&s, n)).map(|i| q(i as i64 % 5 - 2)).collect();
        assert_eq!(MixedCochain::from_vector(&s, n, &v).to_vector(), v);
    }

    #[test]
    fn degree_one_third_component_is_h_r() {
        let s = samples::augmentation_family::<Q>(Semigroup::trivial(), &[1]);
        let f = Multilinear::from_fn(vec![2], 2, |i| vec![q(i[0] as i64), q(1)]);
        let g = vec![Multilinear::from_fn(vec![1], 1, |_| vec![q(2)])];
        let c = MixedCochain::new(f.clone(), g.clone(), None, &s).unwrap();
        let out = delta_rrbf(&c, &s).unwrap();
        assert_eq!(out.gamma().unwrap(), &h_r(&f, &g, &s).unwrap());
    }

    #[test]
    fn les_exact_on_zero_operator() {
        let rb = samples::dual_numbers_zero::<Q>(Semigroup::trivial());
        let les = les_check(&rb, 3, &Limits::default()).unwrap();
        assert!(les.report.is_ok(), "{}", les.report);
    }
}

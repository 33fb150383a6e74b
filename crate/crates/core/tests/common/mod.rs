//! Generators and hand-rolled oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's evaluation helpers: they work
//! on plain coefficient tables and nested loops.

#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rbfam::algebra::{adjoint_bimodule, AssocAlgebra, Bimodule, OperatorFamily, RelRBFamily};
use rbfam::homotopy::{AInfRepresentation, AInfStructure, GradedSpace, HomotopyRBFamily};
use rbfam::{samples, Matrix, Multilinear, OmegaMap, Semigroup, Q};

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mostly small integers, sometimes halves.
pub fn small(r: &mut impl Rng) -> Q {
    let n = r.gen_range(-2..=2);
    if r.gen_bool(0.2) {
        frac(n, 2)
    } else {
        q(n)
    }
}

pub fn sparse(r: &mut impl Rng) -> Q {
    if r.gen_bool(0.6) {
        q(0)
    } else {
        small(r)
    }
}

pub fn semigroups() -> Vec<Semigroup> {
    vec![
        Semigroup::trivial(),
        Semigroup::cyclic(2),
        Semigroup::cyclic(3),
        Semigroup::left_zero_band(2),
        Semigroup::right_zero_band(2),
        Semigroup::semilattice2(),
        Semigroup::left_zero_band(3),
    ]
}

pub fn random_matrix(r: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Q> {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| sparse(r)).collect()).collect())
}

pub fn random_multilinear(r: &mut impl Rng, source: Vec<usize>, target: usize) -> Multilinear<Q> {
    Multilinear::from_fn(source, target, |_| (0..target).map(|_| sparse(r)).collect())
}

pub fn random_omega_map(r: &mut impl Rng, omega: &Arc<Semigroup>, source: Vec<usize>, target: usize) -> OmegaMap<Q> {
    OmegaMap::from_fn(omega.clone(), source.clone(), target, |_| random_multilinear(r, source.clone(), target))
}

/// `L U` with unit lower `L` and upper `U` with nonzero diagonal.
pub fn random_invertible(r: &mut impl Rng, n: usize) -> Matrix<Q> {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                l.set(i, j, small(r));
            } else if i < j {
                u.set(i, j, small(r));
            } else {
                let mut d = small(r);
                while d == q(0) {
                    d = small(r);
                }
                u.set(i, i, d);
            }
        }
    }
    l.mul(&u)
}

/// Associative algebras of dimension ≤ 3 (plus their zero-product cousins).
pub fn algebras() -> Vec<AssocAlgebra<Q>> {
    vec![
        samples::ground_field(),
        samples::dual_numbers(),
        samples::upper_triangular(),
        AssocAlgebra::zero(2),
    ]
}

fn augmentation(alg: &AssocAlgebra<Q>) -> Option<Bimodule<Q>> {
    // `M = k` through the character sending the first basis vector to 1.
    let d = alg.dim();
    let chi: Vec<Q> = (0..d).map(|i| if i == 0 { q(1) } else { q(0) }).collect();
    let is_char = (0..d).all(|i| (0..d).all(|j| {
        let p = alg.basis_product(i, j);
        let lhs: Q = p.iter().zip(&chi).map(|(a, b)| a * b).sum();
        lhs == &chi[i] * &chi[j]
    }));
    if !is_char {
        return None;
    }
    let left = (0..d).map(|i| vec![vec![chi[i].clone()]]).collect();
    let right = vec![(0..d).map(|i| vec![chi[i].clone()]).collect()];
    Some(Bimodule::from_tables(d, 1, left, right).unwrap())
}

/// A random operator family over a random fixture. About a third of the
/// draws scale a known Rota-Baxter operator, a third are zero.
pub fn random_rel_family(r: &mut impl Rng) -> RelRBFamily<Q> {
    let omegas = semigroups();
    let omega = omegas[r.gen_range(0..omegas.len())].clone();
    let algs = algebras();
    let alg = algs[r.gen_range(0..algs.len())].clone();
    let (module, adjoint) = match r.gen_range(0..3) {
        0 => match augmentation(&alg) {
            Some(m) => (m, false),
            None => (adjoint_bimodule(&alg), true),
        },
        1 => (Bimodule::zero(alg.dim(), r.gen_range(1..=2)), false),
        _ => (adjoint_bimodule(&alg), true),
    };
    let (da, dm) = (alg.dim(), module.dim());
    let w = omega.size();
    let ops: Vec<Matrix<Q>> = match r.gen_range(0..3) {
        0 => {
            let base = if adjoint && alg == samples::dual_numbers() {
                samples::nilpotent()
            } else if adjoint && alg == samples::upper_triangular() {
                samples::triangular_family::<Q>(Semigroup::trivial(), &[1]).ops().matrix(0).clone()
            } else {
                random_matrix(r, da, dm)
            };
            (0..w).map(|_| scale_matrix(&base, &small(r))).collect()
        }
        1 => vec![Matrix::zeros(da, dm); w],
        _ => (0..w).map(|_| random_matrix(r, da, dm)).collect(),
    };
    RelRBFamily::with_shared(Arc::new(omega), alg, module, OperatorFamily::new(ops).unwrap()).unwrap()
}

fn scale_matrix(m: &Matrix<Q>, c: &Q) -> Matrix<Q> {
    Matrix::from_rows((0..m.rows()).map(|i| m.row(i).iter().map(|x| x * c).collect()).collect())
}

// ---- oracles -------------------------------------------------------------

/// Rank by plain row reduction with the first nonzero pivot.
pub fn oracle_rank(m: &Matrix<Q>) -> usize {
    let mut rows: Vec<Vec<Q>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != q(0)) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c] != q(0) {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn table_of(alg: &AssocAlgebra<Q>) -> Vec<Vec<Vec<Q>>> {
    alg.table()
}

fn mul(t: &[Vec<Vec<Q>>], a: &[Q], b: &[Q]) -> Vec<Q> {
    let d = a.len();
    let mut out = vec![q(0); t[0][0].len()];
    for i in 0..d {
        if a[i] == q(0) {
            continue;
        }
        for j in 0..b.len() {
            if b[j] == q(0) {
                continue;
            }
            let c = &a[i] * &b[j];
            for (o, v) in out.iter_mut().zip(&t[i][j]) {
                *o += &c * v;
            }
        }
    }
    out
}

fn matvec(m: &Matrix<Q>, v: &[Q]) -> Vec<Q> {
    (0..m.rows()).map(|i| m.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn bimodule_tables(module: &Bimodule<Q>) -> (Vec<Vec<Vec<Q>>>, Vec<Vec<Vec<Q>>>) {
    let (da, dm) = (module.dim_algebra(), module.dim());
    let left = (0..da).map(|a| (0..dm).map(|u| module.left().at(&[a, u]).to_vec()).collect()).collect();
    let right = (0..dm).map(|u| (0..da).map(|a| module.right().at(&[u, a]).to_vec()).collect()).collect();
    (left, right)
}

/// `R_α(u)R_β(v) = R_{αβ}(R_α(u)·v + u·R_β(v))` on basis vectors.
pub fn oracle_rel_rbf(s: &RelRBFamily<Q>) -> bool {
    let t = table_of(s.algebra());
    let (left, right) = bimodule_tables(s.module());
    let (da, dm) = (s.dim_a(), s.dim_m());
    let omega = s.omega();
    let e = |i: usize, n: usize| -> Vec<Q> { (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect() };
    for a in 0..omega.size() {
        for b in 0..omega.size() {
            let ab = omega.mul(a, b);
            for u in 0..dm {
                for v in 0..dm {
                    let ru = matvec(s.ops().matrix(a), &e(u, dm));
                    let rv = matvec(s.ops().matrix(b), &e(v, dm));
                    let lhs = mul(&t, &ru, &rv);
                    let mut inner = vec![q(0); dm];
                    for x in 0..da {
                        for (o, w) in inner.iter_mut().zip(&left[x][v]) {
                            *o += &ru[x] * w;
                        }
                        for (o, w) in inner.iter_mut().zip(&right[u][x]) {
                            *o += &rv[x] * w;
                        }
                    }
                    if lhs != matvec(s.ops().matrix(ab), &inner) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Associativity on basis triples.
pub fn oracle_associative(alg: &AssocAlgebra<Q>) -> bool {
    let t = table_of(alg);
    let d = alg.dim();
    let e = |i: usize| -> Vec<Q> { (0..d).map(|j| if i == j { q(1) } else { q(0) }).collect() };
    (0..d).all(|a| (0..d).all(|b| (0..d).all(|c| mul(&t, &mul(&t, &e(a), &e(b)), &e(c)) == mul(&t, &e(a), &mul(&t, &e(b), &e(c))))))
}

/// Dense graded operation: coefficient lookup by basis tuple.
pub struct Dense {
    pub arity: usize,
    pub dim: usize,
    pub coeffs: Vec<Vec<Q>>,
}

impl Dense {
    pub fn from(m: &Multilinear<Q>) -> Self {
        let arity = m.arity();
        let dim = m.target();
        let n = m.source().iter().product();
        Dense {
            arity,
            dim,
            coeffs: (0..n).map(|i| m.row(i).to_vec()).collect(),
        }
    }

    fn index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Multilinear evaluation on arbitrary vectors by full expansion.
    pub fn apply(&self, args: &[Vec<Q>]) -> Vec<Q> {
        let mut out = vec![q(0); self.dim];
        let mut idx = vec![0; self.arity];
        loop {
            let mut c = q(1);
            for (a, &i) in args.iter().zip(&idx) {
                c *= &a[i];
                if c == q(0) {
                    break;
                }
            }
            if c != q(0) {
                for (o, v) in out.iter_mut().zip(&self.coeffs[self.index(&idx)]) {
                    *o += &c * v;
                }
            }
            let mut s = self.arity;
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                idx[s] += 1;
                if idx[s] < self.dim {
                    break;
                }
                idx[s] = 0;
            }
        }
    }
}

fn unit_vec(dim: usize, i: usize) -> Vec<Q> {
    (0..dim).map(|j| if i == j { q(1) } else { q(0) }).collect()
}

fn all_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| (0..dim).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

fn parity(space: &GradedSpace, idx: &[usize]) -> bool {
    idx.iter().map(|&i| space.degree(i)).sum::<i32>().rem_euclid(2) == 1
}

/// The Stasheff identity on `n` inputs by direct expansion.
pub fn oracle_stasheff(space: &GradedSpace, mu: &[Multilinear<Q>], n: usize) -> bool {
    let ops: Vec<Dense> = mu.iter().map(Dense::from).collect();
    let d = space.dim();
    for idx in all_tuples(d, n) {
        let mut total = vec![q(0); d];
        for k in 1..=n {
            let l = n + 1 - k;
            for i in 0..k {
                let inner = ops[l - 1].apply(&idx[i..i + l].iter().map(|&j| unit_vec(d, j)).collect::<Vec<_>>());
                let mut args: Vec<Vec<Q>> = idx[..i].iter().map(|&j| unit_vec(d, j)).collect();
                args.push(inner);
                args.extend(idx[i + l..].iter().map(|&j| unit_vec(d, j)));
                let v = ops[k - 1].apply(&args);
                let neg = parity(space, &idx[..i]);
                for (t, x) in total.iter_mut().zip(v) {
                    if neg {
                        *t -= x;
                    } else {
                        *t += x;
                    }
                }
            }
        }
        if total.iter().any(|x| *x != q(0)) {
            return false;
        }
    }
    true
}

/// The Dend∞ identities with labels erased: `theta[k−1][r−1]` unlabelled.
pub fn oracle_dendinf(space: &GradedSpace, theta: &[Vec<Multilinear<Q>>], n: usize) -> bool {
    let ops: Vec<Vec<Dense>> = theta.iter().map(|sel| sel.iter().map(Dense::from).collect()).collect();
    let d = space.dim();
    let nu = |l: usize, args: &[Vec<Q>]| -> Vec<Q> {
        let mut out = vec![q(0); d];
        for op in &ops[l - 1] {
            for (o, v) in out.iter_mut().zip(op.apply(args)) {
                *o += v;
            }
        }
        out
    };
    for r in 1..=n {
        for idx in all_tuples(d, n) {
            let mut total = vec![q(0); d];
            for k in 1..=n {
                let l = n + 1 - k;
                for i in 1..=k {
                    let inner_args: Vec<Vec<Q>> = idx[i - 1..i - 1 + l].iter().map(|&j| unit_vec(d, j)).collect();
                    let (outer, inner) = if r < i {
                        (r, nu(l, &inner_args))
                    } else if r <= i + l - 1 {
                        (i, ops[l - 1][r - i].apply(&inner_args))
                    } else {
                        (r - l + 1, nu(l, &inner_args))
                    };
                    let mut args: Vec<Vec<Q>> = idx[..i - 1].iter().map(|&j| unit_vec(d, j)).collect();
                    args.push(inner);
                    args.extend(idx[i - 1 + l..].iter().map(|&j| unit_vec(d, j)));
                    let v = ops[k - 1][outer - 1].apply(&args);
                    let neg = parity(space, &idx[..i - 1]);
                    for (t, x) in total.iter_mut().zip(v) {
                        if neg {
                            *t -= x;
                        } else {
                            *t += x;
                        }
                    }
                }
            }
            if total.iter().any(|x| *x != q(0)) {
                return false;
            }
        }
    }
    true
}

/// The three dendriform family axioms for a one-dimensional `D` with
/// `e ≺_α e = a_α e` and `e ≻_α e = b_α e`, expanded by hand.
pub fn oracle_one_dim_dend(omega: &Semigroup, a: &[Q], b: &[Q]) -> bool {
    let n = omega.size();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = omega.mul(x, y);
            let first = &a[x] * &a[y] == &a[xy] * (&a[y] + &b[x]);
            let second = &b[x] * &a[y] == &b[x] * &a[y];
            let third = (&a[y] + &b[x]) * &b[xy] == &b[x] * &b[y];
            first && second && third
        })
    })
}

// ---- graded generators ---------------------------------------------------

/// A random map `⊗ sources → target` that raises degree by `degree`.
pub fn random_graded(r: &mut impl Rng, sources: &[&GradedSpace], target: &GradedSpace, degree: i32) -> Multilinear<Q> {
    let dims: Vec<usize> = sources.iter().map(|s| s.dim()).collect();
    Multilinear::from_fn(dims, target.dim(), |idx| {
        let total: i32 = idx.iter().zip(sources).map(|(&i, s)| s.degree(i)).sum::<i32>() + degree;
        (0..target.dim()).map(|o| if target.degree(o) == total { sparse(r) } else { q(0) }).collect()
    })
}

pub fn random_space(r: &mut impl Rng) -> GradedSpace {
    let d = r.gen_range(1..=2);
    GradedSpace::new((0..d).map(|_| r.gen_range(-1..=0)).collect())
}

pub fn small_semigroups() -> Vec<Semigroup> {
    vec![
        Semigroup::trivial(),
        Semigroup::cyclic(2),
        Semigroup::left_zero_band(2),
        Semigroup::right_zero_band(2),
        Semigroup::semilattice2(),
    ]
}

/// Random graded data up to arity `k_max`, no identities imposed.
pub fn random_hrbf(r: &mut impl Rng, k_max: usize, strict: bool) -> HomotopyRBFamily<Q> {
    let omegas = small_semigroups();
    let omega = Arc::new(omegas[r.gen_range(0..omegas.len())].clone());
    let (a, m) = (random_space(r), random_space(r));
    let mu = (1..=k_max).map(|k| random_graded(r, &vec![&a; k], &a, 1)).collect();
    let eta = (1..=k_max)
        .map(|k| {
            (0..k)
                .map(|p| {
                    let sources: Vec<&GradedSpace> = (0..k).map(|s| if s == p { &m } else { &a }).collect();
                    random_graded(r, &sources, &m, 1)
                })
                .collect()
        })
        .collect();
    let rs = (1..=k_max)
        .map(|k| {
            if strict && k > 1 {
                OmegaMap::zeros(omega.clone(), vec![m.dim(); k], a.dim())
            } else {
                let sources = vec![&m; k];
                OmegaMap::from_fn(omega.clone(), vec![m.dim(); k], a.dim(), |_| random_graded(r, &sources, &a, 0))
            }
        })
        .collect();
    let algebra = AInfStructure::new(a.clone(), mu).unwrap();
    let module = AInfRepresentation::new(m, &a, eta).unwrap();
    HomotopyRBFamily::new(omega, algebra, module, rs).unwrap()
}

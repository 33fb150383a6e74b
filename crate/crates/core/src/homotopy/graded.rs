//! Graded spaces with a homogeneous basis, Koszul signs, and the graded
//! Ω-bracket on families of multilinear maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::omega_hom::{compose_at, same_omega, OmegaMap};
use crate::report::Report;
use crate::scalar::{sign_i, Scalar};
use crate::semigroup::Semigroup;
use crate::tensor::{tuples, Multilinear};

/// A finite-dimensional graded space given by the degree of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    degrees: Vec<i32>,
}

impl GradedSpace {
    pub fn new(degrees: Vec<i32>) -> Self {
        GradedSpace { degrees }
    }

    /// `dim` basis vectors, all in degree `degree`.
    pub fn concentrated(dim: usize, degree: i32) -> Self {
        GradedSpace {
            degrees: vec![degree; dim],
        }
    }

    /// Basis vectors listed degree by degree.
    pub fn from_support(support: &[(i32, usize)]) -> Self {
        GradedSpace {
            degrees: support.iter().flat_map(|&(d, n)| std::iter::repeat_n(d, n)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Degree → dimension.
    pub fn support(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    /// `self ⊕ other`, basis of `self` first.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        GradedSpace { degrees }
    }

    /// `self ⊗ kΩ` with `e_x ⊗ α` at index `x·|Ω| + α`.
    pub fn tensor_omega(&self, omega_size: usize) -> GradedSpace {
        GradedSpace {
            degrees: self
                .degrees
                .iter()
                .flat_map(|&d| std::iter::repeat_n(d, omega_size))
                .collect(),
        }
    }

    /// Every degree moved by `by`.
    pub fn shift(&self, by: i32) -> GradedSpace {
        GradedSpace {
            degrees: self.degrees.iter().map(|d| d + by).collect(),
        }
    }
}

/// Sign of reordering homogeneous elements: position `i` of the result holds
/// the element originally at `perm[i]`. Each inversion of a pair contributes
/// `(−1)^{|x||y|}`.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> i32 {
    assert_eq!(perm.len(), degrees.len(), "one degree per element");
    let mut odd = false;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && degrees[perm[a]] % 2 != 0 && degrees[perm[b]] % 2 != 0 {
                odd = !odd;
            }
        }
    }
    if odd {
        -1
    } else {
        1
    }
}

/// `(−1)^{|g|·(|x₁|+⋯+|x_{i−1}|)}`: the sign of moving a map of degree `g`
/// past the first `i − 1` inputs.
pub fn position_sign(degrees: &[i32], i: usize, g: i32) -> i32 {
    let before: i64 = degrees[..i.saturating_sub(1)].iter().map(|&d| d as i64).sum();
    if (before * g as i64).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `±1` as a scalar.
pub fn unit_sign<T: Scalar>(s: i32) -> T {
    if s < 0 {
        -T::one()
    } else {
        T::one()
    }
}

/// Records every nonzero coefficient of `m` that breaks the degree rule
/// `|output| = Σ|inputs| + degree`.
pub fn degree_violations<T: Scalar>(
    m: &Multilinear<T>,
    sources: &[&GradedSpace],
    target: &GradedSpace,
    degree: i32,
    rule: &str,
    report: &mut Report,
) {
    let dims: Vec<usize> = sources.iter().map(|s| s.dim()).collect();
    assert_eq!(m.source(), dims.as_slice(), "graded source shape");
    for idx in tuples(&dims) {
        let total: i32 = idx.iter().zip(sources).map(|(&i, s)| s.degree(i)).sum::<i32>() + degree;
        for (o, c) in m.at(&idx).iter().enumerate() {
            if !c.is_zero() && target.degree(o) != total {
                report.record(rule, || format!("input {idx:?} has a component in basis vector {o}"));
            }
        }
    }
}

/// `f ∘ᵢ g` with the Koszul sign `(−1)^{|g|(|x₁|+⋯+|x_{i−1}|)}` applied per
/// homogeneous input tuple; `i` is 1-based.
pub fn graded_compose_at<T: Scalar>(f: &OmegaMap<T>, g: &OmegaMap<T>, i: usize, g_degree: i32, space: &GradedSpace) -> Result<OmegaMap<T>> {
    let mut out = compose_at(f, g, i)?;
    if g_degree % 2 == 0 {
        return Ok(out);
    }
    let n = out.arity();
    let dims = vec![space.dim(); n];
    let labels: Vec<Vec<usize>> = out.omega().tuples(n).collect();
    for lab in labels {
        let entry = out.entry_mut(&lab);
        for idx in tuples(&dims) {
            let degrees: Vec<i32> = idx.iter().map(|&x| space.degree(x)).collect();
            if position_sign(&degrees, i, g_degree) < 0 {
                for c in entry.at_mut(&idx) {
                    *c = -c.clone();
                }
            }
        }
    }
    Ok(out)
}

/// `Σ_k f_k` with `f_k ∈ Hom_Ω(V^⊗k, V)` all of one degree; `parts[k−1]` has
/// arity `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFamily<T> {
    space: GradedSpace,
    degree: i32,
    parts: Vec<OmegaMap<T>>,
}

impl<T: Scalar> GradedFamily<T> {
    pub fn new(space: GradedSpace, degree: i32, parts: Vec<OmegaMap<T>>) -> Result<Self> {
        let Some(first) = parts.first() else {
            return Err(Error::Shape("a graded family needs at least arity 1".into()));
        };
        let d = space.dim();
        for (k, p) in parts.iter().enumerate() {
            if p.arity() != k + 1 || p.target() != d || p.source().iter().any(|&s| s != d) {
                return Err(Error::Shape(format!("part {} must map V^⊗{} → V with dim V = {d}", k + 1, k + 1)));
            }
            if !same_omega(p.omega(), first.omega()) {
                return Err(Error::Shape("parts are indexed by different semigroups".into()));
            }
        }
        Ok(GradedFamily { space, degree, parts })
    }

    pub fn zero(omega: Arc<Semigroup>, space: GradedSpace, degree: i32, max_arity: usize) -> Self {
        let d = space.dim();
        let parts = (1..=max_arity).map(|k| OmegaMap::zeros(omega.clone(), vec![d; k], d)).collect();
        GradedFamily { space, degree, parts }
    }

    /// The same unlabelled maps for every label tuple.
    pub fn constant(omega: Arc<Semigroup>, space: GradedSpace, degree: i32, maps: &[Multilinear<T>]) -> Result<Self> {
        let parts = maps.iter().map(|m| OmegaMap::constant_lift(omega.clone(), m)).collect();
        Self::new(space, degree, parts)
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn omega(&self) -> &Arc<Semigroup> {
        self.parts[0].omega()
    }

    pub fn max_arity(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, k: usize) -> &OmegaMap<T> {
        &self.parts[k - 1]
    }

    pub fn parts(&self) -> &[OmegaMap<T>] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(OmegaMap::is_zero)
    }

    pub fn scale(&self, c: &T) -> Self {
        GradedFamily {
            space: self.space.clone(),
            degree: self.degree,
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Componentwise sum; the shorter family is padded with zeros.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.space != other.space || self.degree != other.degree {
            return Err(Error::Shape("sum of families of different spaces or degrees".into()));
        }
        let (long, short) = if self.parts.len() >= other.parts.len() { (self, other) } else { (other, self) };
        let mut parts = long.parts.clone();
        for (p, q) in parts.iter_mut().zip(&short.parts) {
            p.add_assign(q);
        }
        Ok(GradedFamily {
            space: self.space.clone(),
            degree: self.degree,
            parts,
        })
    }

    /// Records coefficients that break homogeneity of the stated degree.
    pub fn degree_report(&self, name: &str) -> Report {
        let mut report = Report::new(name);
        for p in &self.parts {
            let sources = vec![&self.space; p.arity()];
            for lab in p.omega().tuples(p.arity()) {
                degree_violations(p.entry(&lab), &sources, &self.space, self.degree, "degree", &mut report);
            }
        }
        report
    }
}

/// `Σ_{k+l=p+1} Σᵢ f_k ∘ᵢ g_l` up to arity `max_arity`.
fn circle_family<T: Scalar>(f: &GradedFamily<T>, g: &GradedFamily<T>, max_arity: usize) -> Result<Vec<OmegaMap<T>>> {
    let d = f.space.dim();
    let mut out: Vec<OmegaMap<T>> = (1..=max_arity).map(|p| OmegaMap::zeros(f.omega().clone(), vec![d; p], d)).collect();
    for (k, fk) in (1..).zip(&f.parts) {
        for (l, gl) in (1..).zip(&g.parts) {
            let p = k + l - 1;
            if p > max_arity || (fk.is_zero() || gl.is_zero()) {
                continue;
            }
            for i in 1..=k {
                out[p - 1].add_assign(&graded_compose_at(fk, gl, i, g.degree, &f.space)?);
            }
        }
    }
    Ok(out)
}

/// `{![f, g]!}_Ω = Σ (f_k ∘ g_l − (−1)^{|f||g|} g_l ∘ f_k)`, truncated to
/// output arity `max_arity`.
pub fn graded_omega_bracket<T: Scalar>(f: &GradedFamily<T>, g: &GradedFamily<T>, max_arity: usize) -> Result<GradedFamily<T>> {
    if f.space != g.space {
        return Err(Error::Shape("bracket of families on different spaces".into()));
    }
    if !same_omega(f.omega(), g.omega()) {
        return Err(Error::Shape("bracket of families over different semigroups".into()));
    }
    let mut parts = circle_family(f, g, max_arity)?;
    let back = circle_family(g, f, max_arity)?;
    let s: T = sign_i(f.degree as i64 * g.degree as i64);
    for (p, b) in parts.iter_mut().zip(back) {
        p.sub_assign(&b.scale(&s));
    }
    Ok(GradedFamily {
        space: f.space.clone(),
        degree: f.degree + g.degree,
        parts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn koszul_basics() {
        assert_eq!(koszul_sign(&[1, 0], &[2, 4]), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 2]), 1);
        // (0 1 2) → (1 2 0) as two adjacent swaps: each of odd·odd gives −1.
        assert_eq!(koszul_sign(&[1, 2, 0], &[1, 1, 1]), 1);
        assert_eq!(koszul_sign(&[2, 1, 0], &[1, 1, 1]), -1);
    }

    #[test]
    fn position_sign_counts_preceding_degrees() {
        assert_eq!(position_sign(&[1, 1, 0], 1, 1), 1);
        assert_eq!(position_sign(&[1, 1, 0], 2, 1), -1);
        assert_eq!(position_sign(&[1, 1, 0], 3, 1), 1);
        assert_eq!(position_sign(&[-1, 3], 2, 0), 1);
    }

    #[test]
    fn odd_self_bracket_is_twice_the_square() {
        let omega = Arc::new(Semigroup::cyclic(2));
        let space = GradedSpace::new(vec![-1, 0]);
        let m1 = Multilinear::from_fn(vec![2], 2, |i| if i[0] == 0 { vec![q(0), q(1)] } else { vec![q(0), q(0)] });
        let m2 = Multilinear::from_fn(vec![2, 2], 2, |i| if i == [0, 0] { vec![q(3), q(0)] } else { vec![q(0), q(0)] });
        let x = GradedFamily::constant(omega, space, 1, &[m1, m2]).unwrap();
        let b = graded_omega_bracket(&x, &x, 3).unwrap();
        let sq = circle_family(&x, &x, 3).unwrap();
        for (p, s) in b.parts().iter().zip(sq) {
            assert_eq!(p, &s.scale(&q(2)));
        }
        assert_eq!(b.degree(), 2);
    }
}

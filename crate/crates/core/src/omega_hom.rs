//! Ω-indexed families of multilinear maps, their partial compositions and
//! the Ω-Gerstenhaber bracket.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{sign, Scalar};
use crate::semigroup::Semigroup;
use crate::tensor::{box_size, Multilinear};

/// A family `{f_{α₁…αₙ}}` of multilinear maps indexed by `Ω^n`, stored densely
/// in the label order of [`Semigroup::tuple_index`]. Arity 0 holds one
/// constant map, i.e. a vector of the target.
#[derive(Clone, Debug, PartialEq)]
pub struct OmegaMap<T> {
    omega: Arc<Semigroup>,
    source: Vec<usize>,
    target: usize,
    entries: Vec<Multilinear<T>>,
}

pub(crate) fn same_omega(a: &Arc<Semigroup>, b: &Arc<Semigroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<T: Scalar> OmegaMap<T> {
    pub fn zeros(omega: Arc<Semigroup>, source: Vec<usize>, target: usize) -> Self {
        let count = omega.tuple_count(source.len());
        let zero = Multilinear::zeros(source.clone(), target);
        OmegaMap {
            omega,
            source,
            target,
            entries: vec![zero; count],
        }
    }

    /// Builds the family from one map per label tuple.
    pub fn from_fn(
        omega: Arc<Semigroup>,
        source: Vec<usize>,
        target: usize,
        mut f: impl FnMut(&[usize]) -> Multilinear<T>,
    ) -> Self {
        let n = source.len();
        let entries = omega
            .tuples(n)
            .map(|labels| {
                let m = f(&labels);
                assert!(m.source() == source.as_slice() && m.target() == target, "entry shape");
                m
            })
            .collect();
        OmegaMap {
            omega,
            source,
            target,
            entries,
        }
    }

    /// Entries in label order; they must share one shape.
    pub fn from_entries(omega: Arc<Semigroup>, entries: Vec<Multilinear<T>>) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::Shape("an Ω-family needs at least one entry".into()))?;
        let (source, target) = (first.source().to_vec(), first.target());
        let want = omega.tuple_count(source.len());
        if entries.len() != want {
            return Err(Error::Shape(format!(
                "arity {} over |Ω| = {} needs {want} entries, got {}",
                source.len(),
                omega.size(),
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.source() != source.as_slice() || e.target() != target) {
            return Err(Error::Shape("entries of an Ω-family must share one shape".into()));
        }
        Ok(OmegaMap {
            omega,
            source,
            target,
            entries,
        })
    }

    /// `I_α = id_V` for every α.
    pub fn identity(omega: Arc<Semigroup>, dim: usize) -> Self {
        Self::constant_lift(omega, &Multilinear::from_matrix(&Matrix::identity(dim)))
    }

    /// The family taking the same value `f` at every label tuple.
    pub fn constant_lift(omega: Arc<Semigroup>, f: &Multilinear<T>) -> Self {
        Self::from_fn(omega, f.source().to_vec(), f.target(), |_| f.clone())
    }

    /// An arity-0 element.
    pub fn element(omega: Arc<Semigroup>, v: Vec<T>) -> Self {
        let target = v.len();
        OmegaMap {
            omega,
            source: Vec::new(),
            target,
            entries: vec![Multilinear::constant(v)],
        }
    }

    /// Reassembles a family from [`OmegaMap::to_vector`].
    pub fn from_vector(omega: Arc<Semigroup>, source: Vec<usize>, target: usize, v: &[T]) -> Self {
        let per = box_size(&source) * target;
        let count = omega.tuple_count(source.len());
        assert_eq!(v.len(), per * count, "coordinate count");
        let entries = (0..count)
            .map(|k| Multilinear::from_coords(source.clone(), target, v[k * per..(k + 1) * per].to_vec()))
            .collect();
        OmegaMap {
            omega,
            source,
            target,
            entries,
        }
    }

    pub fn omega(&self) -> &Arc<Semigroup> {
        &self.omega
    }

    pub fn arity(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn entries(&self) -> &[Multilinear<T>] {
        &self.entries
    }

    pub fn entry(&self, labels: &[usize]) -> &Multilinear<T> {
        &self.entries[self.omega.tuple_index(labels)]
    }

    pub fn entry_mut(&mut self, labels: &[usize]) -> &mut Multilinear<T> {
        let i = self.omega.tuple_index(labels);
        &mut self.entries[i]
    }

    /// The arity-0 value.
    pub fn as_element(&self) -> &[T] {
        assert_eq!(self.arity(), 0, "as_element needs arity 0");
        self.entries[0].coords()
    }

    pub fn eval(&self, labels: &[usize], args: &[&[T]]) -> Vec<T> {
        self.entry(labels).eval(args)
    }

    pub fn to_vector(&self) -> Vec<T> {
        self.entries.iter().flat_map(|e| e.coords().iter().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Multilinear::is_zero)
    }

    /// True when all entries coincide.
    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }

    fn check_same(&self, other: &Self) {
        assert!(same_omega(&self.omega, &other.omega), "Ω mismatch");
        assert_eq!(self.source, other.source, "source mismatch");
        assert_eq!(self.target, other.target, "target mismatch");
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_assign(b);
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.check_same(other);
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.sub_assign(b);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map_entries(self.source.clone(), self.target, |e| e.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map_entries(self.source.clone(), self.target, Multilinear::neg)
    }

    fn map_entries(&self, source: Vec<usize>, target: usize, f: impl Fn(&Multilinear<T>) -> Multilinear<T>) -> Self {
        OmegaMap {
            omega: self.omega.clone(),
            source,
            target,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Postcomposes every entry with `m`.
    pub fn map_output(&self, m: &Matrix<T>) -> Self {
        self.map_entries(self.source.clone(), m.rows(), |e| e.map_output(m))
    }

    /// Precomposes slot `slot` (0-based) of every entry with `m`.
    pub fn map_input(&self, slot: usize, m: &Matrix<T>) -> Self {
        let mut source = self.source.clone();
        source[slot] = m.cols();
        self.map_entries(source, self.target, |e| e.map_input(slot, m))
    }

    /// See [`Multilinear::change_basis`].
    pub fn change_basis(&self, inputs: &[&Matrix<T>], output_inverse: &Matrix<T>) -> Self {
        let source = inputs.iter().map(|m| m.cols()).collect();
        self.map_entries(source, output_inverse.rows(), |e| e.change_basis(inputs, output_inverse))
    }
}

/// Number of coordinates of a family with the given shape.
pub fn family_dim(omega: &Semigroup, source: &[usize], target: usize) -> usize {
    omega.tuple_count(source.len()) * box_size(source) * target
}

/// `f ∘_i g` with `i` 1-based: slot `i` of `f` receives `g` and the label
/// `αᵢ⋯α_{i+n−1}`; the other labels pass through.
pub fn compose_at<T: Scalar>(f: &OmegaMap<T>, g: &OmegaMap<T>, i: usize) -> Result<OmegaMap<T>> {
    let (m, n) = (f.arity(), g.arity());
    if i == 0 || i > m {
        return Err(Error::Precondition(format!("slot {i} out of range 1..={m}")));
    }
    if n == 0 {
        return Err(Error::Precondition("cannot compose an arity-0 element into a slot".into()));
    }
    if !same_omega(&f.omega, &g.omega) {
        return Err(Error::Shape("maps are indexed by different semigroups".into()));
    }
    if g.target != f.source[i - 1] {
        return Err(Error::Shape(format!(
            "slot {i} expects dimension {}, inner map lands in {}",
            f.source[i - 1],
            g.target
        )));
    }
    let s = i - 1;
    let mut source = f.source[..s].to_vec();
    source.extend_from_slice(&g.source);
    source.extend_from_slice(&f.source[i..]);
    let omega = f.omega.clone();
    let mut outer = vec![0; m];
    Ok(OmegaMap::from_fn(omega.clone(), source, f.target, |labels| {
        outer[..s].copy_from_slice(&labels[..s]);
        outer[s] = omega.product(&labels[s..s + n]);
        outer[s + 1..].copy_from_slice(&labels[s + n..]);
        f.entry(&outer).compose_at(s, g.entry(&labels[s..s + n]))
    }))
}

fn endomorphism_dim<T: Scalar>(f: &OmegaMap<T>) -> Result<usize> {
    if f.arity() == 0 || f.source.iter().any(|&d| d != f.target) {
        return Err(Error::Shape(format!(
            "bracket needs maps V^⊗n → V with n ≥ 1, got {:?} → {}",
            f.source, f.target
        )));
    }
    Ok(f.target)
}

/// `Σᵢ ±f∘ᵢg` with sign `(−1)^{(i−1)(n−1)}`.
fn circle<T: Scalar>(f: &OmegaMap<T>, g: &OmegaMap<T>) -> Result<OmegaMap<T>> {
    let (m, n) = (f.arity(), g.arity());
    let mut out = OmegaMap::zeros(f.omega.clone(), vec![f.target; m + n - 1], f.target);
    for i in 1..=m {
        let term = compose_at(f, g, i)?;
        if (i - 1) * (n - 1) % 2 == 0 {
            out.add_assign(&term);
        } else {
            out.sub_assign(&term);
        }
    }
    Ok(out)
}

/// `[f,g]_Ω = f∘g − (−1)^{(m−1)(n−1)} g∘f` on `Hom_Ω(V^⊗•, V)`.
pub fn gerstenhaber_bracket<T: Scalar>(f: &OmegaMap<T>, g: &OmegaMap<T>) -> Result<OmegaMap<T>> {
    let (df, dg) = (endomorphism_dim(f)?, endomorphism_dim(g)?);
    if df != dg {
        return Err(Error::Shape(format!("bracket of maps on spaces of dimension {df} and {dg}")));
    }
    let (m, n) = (f.arity(), g.arity());
    let mut out = circle(f, g)?;
    let back = circle(g, f)?;
    let s: T = sign((m - 1) * (n - 1));
    out.sub_assign(&back.scale(&s));
    Ok(out)
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

    fn sample(omega: &Arc<Semigroup>, arity: usize, seed: i64) -> OmegaMap<Q> {
        let mut k = seed;
        OmegaMap::from_fn(omega.clone(), vec![2; arity], 2, |_| {
            Multilinear::from_fn(vec![2; arity], 2, |_| {
                k = (k * 37 + 11) % 23;
                vec![q(k % 5 - 2), q(k % 3 - 1)]
            })
        })
    }

    #[test]
    fn identity_is_unit_for_composition() {
        let om = z2();
        let f = sample(&om, 2, 3);
        let id = OmegaMap::identity(om, 2);
        assert_eq!(compose_at(&f, &id, 1).unwrap(), f);
        assert_eq!(compose_at(&f, &id, 2).unwrap(), f);
        assert_eq!(compose_at(&id, &f, 1).unwrap(), f);
    }

    #[test]
    fn composition_label_is_product() {
        let om = Arc::new(Semigroup::left_zero_band(2));
        let f = sample(&om, 1, 1);
        let g = sample(&om, 2, 2);
        let c = compose_at(&f, &g, 1).unwrap();
        for l in om.tuples(2) {
            let want = f.entry(&[om.product(&l)]).compose_at(0, g.entry(&l));
            assert_eq!(c.entry(&l), &want);
        }
    }

    #[test]
    fn bad_slot_and_arity_zero() {
        let om = z2();
        let f = sample(&om, 2, 1);
        assert!(compose_at(&f, &f, 3).is_err());
        assert!(compose_at(&f, &f, 0).is_err());
        let a = OmegaMap::element(om, vec![q(1), q(0)]);
        assert!(compose_at(&f, &a, 1).is_err());
    }

    #[test]
    fn vector_round_trip() {
        let om = z2();
        let f = sample(&om, 2, 5);
        let v = f.to_vector();
        assert_eq!(v.len(), family_dim(&om, &[2, 2], 2));
        assert_eq!(OmegaMap::from_vector(om, vec![2, 2], 2, &v), f);
    }

    #[test]
    fn lifted_product_squares_to_zero_iff_associative() {
        let om = z2();
        let mu = samples::dual_numbers::<Q>().mul_map().clone();
        let lift = OmegaMap::constant_lift(om.clone(), &mu);
        assert!(gerstenhaber_bracket(&lift, &lift).unwrap().is_zero());
        let bad = samples::perturbed_dual_numbers::<Q>().mul_map().clone();
        let lift = OmegaMap::constant_lift(om, &bad);
        let b = gerstenhaber_bracket(&lift, &lift).unwrap();
        assert!(!b.is_zero());
        assert!(b.is_constant());
    }
}

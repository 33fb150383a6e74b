//! Dense multilinear maps between finite-dimensional coordinate spaces.

use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// The `i`-th standard basis vector of length `dim`.
pub fn unit<T: Scalar>(dim: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); dim];
    v[i] = T::one();
    v
}

pub fn is_zero_vec<T: Scalar>(v: &[T]) -> bool {
    v.iter().all(T::is_zero)
}

/// `acc += c * v`.
pub fn axpy<T: Scalar>(acc: &mut [T], c: &T, v: &[T]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            let mut p = x.clone();
            p *= c;
            *a += &p;
        }
    }
}

pub fn add_into<T: Scalar>(acc: &mut [T], v: &[T]) {
    debug_assert_eq!(acc.len(), v.len());
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += x;
        }
    }
}

pub fn sub_into<T: Scalar>(acc: &mut [T], v: &[T]) {
    debug_assert_eq!(acc.len(), v.len());
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a -= x;
        }
    }
}

pub fn scaled<T: Scalar>(c: &T, v: &[T]) -> Vec<T> {
    v.iter()
        .map(|x| {
            let mut p = x.clone();
            p *= c;
            p
        })
        .collect()
}

/// Number of tuples in a mixed-radix box.
pub fn box_size(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// The tuple at a flat index; the first coordinate is the most significant.
pub fn unflatten(dims: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    out
}

pub fn flatten(dims: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), idx.len());
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

/// All tuples of a mixed-radix box in flat-index order.
pub fn tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..box_size(dims)).map(move |i| unflatten(dims, i))
}

/// Nonzero coordinates of a vector.
fn support<T: Scalar>(v: &[T]) -> Vec<(usize, &T)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// A multilinear map `V_1 ⊗ … ⊗ V_n → W` stored as one output vector per
/// tuple of input basis indices. Arity 0 holds a single vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Multilinear<T> {
    source: Vec<usize>,
    target: usize,
    data: Vec<T>,
}

impl<T: Scalar> Multilinear<T> {
    pub fn zeros(source: Vec<usize>, target: usize) -> Self {
        let len = box_size(&source) * target;
        Multilinear {
            source,
            target,
            data: vec![T::zero(); len],
        }
    }

    /// Builds the map from its values on basis tuples.
    pub fn from_fn(source: Vec<usize>, target: usize, mut f: impl FnMut(&[usize]) -> Vec<T>) -> Self {
        let mut m = Self::zeros(source, target);
        for flat in 0..m.input_count() {
            let idx = unflatten(&m.source, flat);
            let v = f(&idx);
            assert_eq!(v.len(), target, "value length");
            m.data[flat * target..(flat + 1) * target].clone_from_slice(&v);
        }
        m
    }

    /// The arity-0 map holding `v`.
    pub fn constant(v: Vec<T>) -> Self {
        Multilinear {
            source: Vec::new(),
            target: v.len(),
            data: v,
        }
    }

    /// Reassembles a map from [`Multilinear::coords`].
    pub fn from_coords(source: Vec<usize>, target: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), box_size(&source) * target, "coordinate count");
        Multilinear {
            source,
            target,
            data,
        }
    }

    /// The linear map of a matrix, as an arity-1 multilinear map.
    pub fn from_matrix(m: &Matrix<T>) -> Self {
        Self::from_fn(vec![m.cols()], m.rows(), |idx| m.column(idx[0]))
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        assert_eq!(self.arity(), 1, "to_matrix needs arity 1");
        Matrix::from_columns(self.target, &(0..self.source[0]).map(|j| self.row(j).to_vec()).collect::<Vec<_>>())
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

    pub fn input_count(&self) -> usize {
        box_size(&self.source)
    }

    /// Number of coefficients.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn coords(&self) -> &[T] {
        &self.data
    }

    pub fn coords_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_coords(self) -> Vec<T> {
        self.data
    }

    /// Output on the basis tuple with flat index `flat`.
    pub fn row(&self, flat: usize) -> &[T] {
        &self.data[flat * self.target..(flat + 1) * self.target]
    }

    pub fn row_mut(&mut self, flat: usize) -> &mut [T] {
        let t = self.target;
        &mut self.data[flat * t..(flat + 1) * t]
    }

    /// Output on a basis tuple.
    pub fn at(&self, idx: &[usize]) -> &[T] {
        self.row(flatten(&self.source, idx))
    }

    pub fn at_mut(&mut self, idx: &[usize]) -> &mut [T] {
        let flat = flatten(&self.source, idx);
        self.row_mut(flat)
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// Evaluates on arbitrary vectors, skipping zero coordinates.
    pub fn eval(&self, args: &[&[T]]) -> Vec<T> {
        assert_eq!(args.len(), self.arity(), "argument count");
        for (a, &d) in args.iter().zip(&self.source) {
            assert_eq!(a.len(), d, "argument length");
        }
        let supports: Vec<Vec<(usize, &T)>> = args.iter().map(|a| support(a)).collect();
        let mut out = vec![T::zero(); self.target];
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let mut pos = vec![0usize; supports.len()];
        loop {
            let mut flat = 0;
            let mut coeff = T::one();
            for (s, (&p, sup)) in pos.iter().zip(&supports).enumerate() {
                let (i, c) = sup[p];
                flat = flat * self.source[s] + i;
                coeff *= c;
            }
            axpy(&mut out, &coeff, self.row(flat));
            let mut s = supports.len();
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                pos[s] += 1;
                if pos[s] < supports[s].len() {
                    break;
                }
                pos[s] = 0;
            }
        }
    }

    /// Evaluates with basis vectors in every slot except `slot`, which gets `v`.
    pub fn eval_with(&self, basis: &[usize], slot: usize, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.source[slot], "slot vector length");
        let mut idx = basis.to_vec();
        let mut out = vec![T::zero(); self.target];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx[slot] = k;
            axpy(&mut out, c, self.at(&idx));
        }
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.source, other.source, "source mismatch");
        assert_eq!(self.target, other.target, "target mismatch");
        add_into(&mut self.data, &other.data);
    }

    pub fn sub_assign(&mut self, other: &Self) {
        assert_eq!(self.source, other.source, "source mismatch");
        assert_eq!(self.target, other.target, "target mismatch");
        sub_into(&mut self.data, &other.data);
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
        Multilinear {
            source: self.source.clone(),
            target: self.target,
            data: scaled(c, &self.data),
        }
    }

    pub fn neg(&self) -> Self {
        Multilinear {
            source: self.source.clone(),
            target: self.target,
            data: self.data.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// Classical partial composition: `g` feeds slot `slot` (0-based).
    pub fn compose_at(&self, slot: usize, g: &Multilinear<T>) -> Multilinear<T> {
        assert_eq!(g.target, self.source[slot], "composition space mismatch");
        let n = g.arity();
        let mut source = self.source[..slot].to_vec();
        source.extend_from_slice(&g.source);
        source.extend_from_slice(&self.source[slot + 1..]);
        let mut outer = vec![0; self.arity()];
        Multilinear::from_fn(source, self.target, |idx| {
            let inner = g.at(&idx[slot..slot + n]);
            outer[..slot].copy_from_slice(&idx[..slot]);
            outer[slot + 1..].copy_from_slice(&idx[slot + n..]);
            self.eval_with(&outer, slot, inner)
        })
    }

    /// Postcomposes with a linear map on the target.
    pub fn map_output(&self, m: &Matrix<T>) -> Multilinear<T> {
        assert_eq!(m.cols(), self.target, "output map shape");
        Multilinear::from_fn(self.source.clone(), m.rows(), |idx| m.mul_vec(self.at(idx)))
    }

    /// Precomposes slot `slot` with a linear map into that slot.
    pub fn map_input(&self, slot: usize, m: &Matrix<T>) -> Multilinear<T> {
        assert_eq!(m.rows(), self.source[slot], "input map shape");
        let mut source = self.source.clone();
        source[slot] = m.cols();
        Multilinear::from_fn(source, self.target, |idx| {
            self.eval_with(idx, slot, &m.column(idx[slot]))
        })
    }

    /// Expresses the map in new bases: `inputs[s]` has the new basis of slot
    /// `s` as columns, and `output_inverse` converts old target coordinates to
    /// new ones.
    pub fn change_basis(&self, inputs: &[&Matrix<T>], output_inverse: &Matrix<T>) -> Multilinear<T> {
        assert_eq!(inputs.len(), self.arity(), "one basis per slot");
        let mut out = self.clone();
        for (s, m) in inputs.iter().enumerate() {
            out = out.map_input(s, m);
        }
        out.map_output(output_inverse)
    }
}

//! Dense tensor proxies and the small fixed-size linear algebra used by the kernel.

use crate::scalar::Real;

pub type Vec2<T> = [T; 2];
pub type Vec3<T> = [T; 3];
pub type Mat2<T> = [[T; 2]; 2];
pub type Mat3<T> = [[T; 3]; 3];

/// Dense proxy of a rank-`n` tensor over a `dim`-dimensional index range.
///
/// Components are stored row-major: slot 0 is the most significant digit.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    dim: usize,
    rank: usize,
    data: Vec<T>,
}

impl<T: Real> Tensor<T> {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        let len = dim.pow(rank as u32);
        Self { dim, rank, data: vec![T::zero(); len] }
    }

    pub fn scalar(x: T) -> Self {
        Self { dim: 2, rank: 0, data: vec![x] }
    }

    pub fn from_vec(dim: usize, rank: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), dim.pow(rank as u32), "tensor data length");
        Self { dim, rank, data }
    }

    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut out = Self::zeros(dim, rank);
        let mut idx = vec![0usize; rank];
        for lin in 0..out.data.len() {
            out.unflatten_into(lin, &mut idx);
            out.data[lin] = f(&idx);
        }
        out
    }

    pub fn vector(v: &[T]) -> Self {
        Self { dim: v.len(), rank: 1, data: v.to_vec() }
    }

    pub fn matrix2(m: &Mat2<T>) -> Self {
        Self { dim: 2, rank: 2, data: vec![m[0][0], m[0][1], m[1][0], m[1][1]] }
    }

    pub fn matrix3(m: &Mat3<T>) -> Self {
        Self { dim: 3, rank: 2, data: m.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn unflatten_into(&self, mut lin: usize, idx: &mut [usize]) {
        for s in (0..self.rank).rev() {
            idx[s] = lin % self.dim;
            lin /= self.dim;
        }
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.data[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], x: T) {
        let k = self.flatten(idx);
        self.data[k] = x;
    }

    /// Stride of `slot` in the flat layout.
    fn stride(&self, slot: usize) -> usize {
        self.dim.pow((self.rank - 1 - slot) as u32)
    }

    /// Applies the square linear map `m` (row-major `dim × dim`) to one slot.
    pub fn apply_slot(&self, slot: usize, m: &[T]) -> Self {
        assert!(slot < self.rank);
        assert_eq!(m.len(), self.dim * self.dim);
        let mut out = Self::zeros(self.dim, self.rank);
        let st = self.stride(slot);
        let d = self.dim;
        for lin in 0..self.data.len() {
            let i = (lin / st) % d;
            let base = lin - i * st;
            let mut acc = T::zero();
            for k in 0..d {
                acc += m[i * d + k] * self.data[base + k * st];
            }
            out.data[lin] = acc;
        }
        out
    }

    /// Applies the same `out_dim × dim` map (row-major) to every slot, changing the dimension.
    pub fn map_all_slots(&self, m: &[T], out_dim: usize) -> Self {
        assert_eq!(m.len(), out_dim * self.dim);
        let mut shape = vec![self.dim; self.rank];
        let mut buf = self.data.clone();
        for slot in 0..self.rank {
            let outer: usize = shape[..slot].iter().product();
            let inner: usize = shape[slot + 1..].iter().product();
            let din = shape[slot];
            let mut next = vec![T::zero(); outer * out_dim * inner];
            for a in 0..outer {
                for i in 0..out_dim {
                    for b in 0..inner {
                        let mut acc = T::zero();
                        for k in 0..din {
                            acc += m[i * din + k] * buf[(a * din + k) * inner + b];
                        }
                        next[(a * out_dim + i) * inner + b] = acc;
                    }
                }
            }
            shape[slot] = out_dim;
            buf = next;
        }
        Self { dim: out_dim, rank: self.rank, data: buf }
    }

    /// Contracts `slot` with the covector `w`, removing the slot.
    pub fn contract_slot(&self, slot: usize, w: &[T]) -> Self {
        assert!(slot < self.rank);
        assert_eq!(w.len(), self.dim);
        let mut src = vec![0usize; self.rank];
        Self::from_fn(self.dim, self.rank - 1, |idx| {
            src[..slot].copy_from_slice(&idx[..slot]);
            src[slot + 1..].copy_from_slice(&idx[slot..]);
            let mut acc = T::zero();
            for (k, &wk) in w.iter().enumerate() {
                src[slot] = k;
                acc += wk * self.get(&src);
            }
            acc
        })
    }

    /// Inserts a new slot at position `slot` carrying the vector `v`: out = v ⊗ self at `slot`.
    pub fn insert_slot(&self, slot: usize, v: &[T]) -> Self {
        assert!(slot <= self.rank);
        assert_eq!(v.len(), self.dim);
        let mut src = vec![0usize; self.rank];
        Self::from_fn(self.dim, self.rank + 1, |idx| {
            src[..slot].copy_from_slice(&idx[..slot]);
            src[slot..].copy_from_slice(&idx[slot + 1..]);
            v[idx[slot]] * self.get(&src)
        })
    }

    /// Swaps two slots.
    pub fn swap_slots(&self, a: usize, b: usize) -> Self {
        let mut src = vec![0usize; self.rank];
        Self::from_fn(self.dim, self.rank, |idx| {
            src.copy_from_slice(idx);
            src.swap(a, b);
            self.get(&src)
        })
    }

    pub fn scale(&self, s: T) -> Self {
        Self { dim: self.dim, rank: self.rank, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_shape(o);
        Self {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_shape(o);
        Self {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        self.check_shape(o);
        for (a, &b) in self.data.iter_mut().zip(&o.data) {
            *a += b;
        }
    }

    pub fn axpy(&mut self, s: T, o: &Self) {
        self.check_shape(o);
        for (a, &b) in self.data.iter_mut().zip(&o.data) {
            *a += s * b;
        }
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        self.check_shape(o);
        self.data.iter().zip(&o.data).fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    fn check_shape(&self, o: &Self) {
        assert!(self.dim == o.dim && self.rank == o.rank, "tensor shape mismatch");
    }
}

impl<T: Real> std::ops::Index<usize> for Tensor<T> {
    type Output = T;
    fn index(&self, k: usize) -> &T {
        &self.data[k]
    }
}

impl<T: Real> std::ops::IndexMut<usize> for Tensor<T> {
    fn index_mut(&mut self, k: usize) -> &mut T {
        &mut self.data[k]
    }
}

pub fn dot3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm3<T: Real>(a: &Vec3<T>) -> T {
    dot3(a, a).sqrt()
}

pub fn axpy3<T: Real>(s: T, a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [s * a[0] + b[0], s * a[1] + b[1], s * a[2] + b[2]]
}

pub fn scale3<T: Real>(s: T, a: &Vec3<T>) -> Vec3<T> {
    [s * a[0], s * a[1], s * a[2]]
}

pub fn det2<T: Real>(m: &Mat2<T>) -> T {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn inv2<T: Real>(m: &Mat2<T>) -> Mat2<T> {
    let d = det2(m);
    [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]
}

pub fn mul2<T: Real>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn transpose2<T: Real>(a: &Mat2<T>) -> Mat2<T> {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

pub fn matvec2<T: Real>(a: &Mat2<T>, v: &Vec2<T>) -> Vec2<T> {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

pub fn dot2<T: Real>(a: &Vec2<T>, b: &Vec2<T>) -> T {
    a[0] * b[0] + a[1] * b[1]
}

pub fn det3<T: Real>(m: &Mat3<T>) -> T {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn inv3<T: Real>(m: &Mat3<T>) -> Mat3<T> {
    let d = det3(m);
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 2, 1, 2) / d, -c(0, 2, 1, 2) / d, c(0, 1, 1, 2) / d],
        [-c(1, 2, 0, 2) / d, c(0, 2, 0, 2) / d, -c(0, 1, 0, 2) / d],
        [c(1, 2, 0, 1) / d, -c(0, 2, 0, 1) / d, c(0, 1, 0, 1) / d],
    ]
}

pub fn mul3<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = [[T::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

/// Row-major flattening of a 2×2 matrix for [`Tensor::apply_slot`].
pub fn flat2<T: Real>(m: &Mat2<T>) -> [T; 4] {
    [m[0][0], m[0][1], m[1][0], m[1][1]]
}

pub fn flat3<T: Real>(m: &Mat3<T>) -> [T; 9] {
    [m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]]
}

//! Dense matrices over a finite field: rank, kernels, fixed spaces and
//! eigenvalue multiplicities.
//!
//! Everything is plain Gauss-Jordan with partial pivoting by the first
//! nonzero entry.  The fields are tiny, so no fraction-free tricks are
//! needed; the one concession to speed is a zero-skip in the row loops and an
//! integer-accumulation product for prime fields.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over a finite field.
#[derive(Clone)]
pub struct FpMatrix {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FpMatrix {
    pub fn zeros(field: Arc<Field>, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from integer rows, reducing into the prime subfield.
    pub fn from_rows(field: Arc<Field>, rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged rows".into()));
        }
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = m.field.from_integer(v);
            }
        }
        Ok(m)
    }

    pub fn from_fn(field: Arc<Field>, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u8) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        debug_assert!((v as u32) < self.field.size());
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.add(*a, b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.field.sub(*a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u8) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = self.field.mul(*a, c);
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.field.clone(), self.rows, other.cols);
        if self.field.is_prime_field() {
            // accumulate dot products as integers, reduce once per entry
            let p = self.field.characteristic();
            let oc = other.cols;
            let mut acc = vec![0u32; oc];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                for k in 0..self.cols {
                    let a = self.data[i * self.cols + k] as u32;
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.data[k * oc..(k + 1) * oc];
                    for (accj, &b) in acc.iter_mut().zip(brow) {
                        *accj += a * b as u32;
                    }
                }
                for (j, &a) in acc.iter().enumerate() {
                    out.data[i * oc + j] = (a % p) as u8;
                }
            }
        } else {
            let oc = other.cols;
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.data[i * self.cols + k];
                    if a == 0 {
                        continue;
                    }
                    let brow = &other.data[k * oc..(k + 1) * oc];
                    let orow = &mut out.data[i * oc..(i + 1) * oc];
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        if b != 0 {
                            *o = self.field.add(*o, self.field.mul(a, b));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[u8]) -> Result<Vec<u8>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(self.rows, self.cols, v.len(), 1));
        }
        let mut out = vec![0u8; self.rows];
        if self.field.is_prime_field() {
            let p = self.field.characteristic();
            for i in 0..self.rows {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let mut acc = 0u32;
                for (&a, &x) in row.iter().zip(v) {
                    acc += a as u32 * x as u32;
                }
                out[i] = (acc % p) as u8;
            }
        } else {
            for i in 0..self.rows {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let mut acc = 0u8;
                for (&a, &x) in row.iter().zip(v) {
                    if a != 0 && x != 0 {
                        acc = self.field.add(acc, self.field.mul(a, x));
                    }
                }
                out[i] = acc;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(self.field.clone(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order; errors out past `bound` iterations.
    pub fn order(&self, bound: usize) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let mut x = self.clone();
        for ord in 1..=bound {
            if x.is_identity() {
                return Ok(ord);
            }
            x = x.mul(self)?;
        }
        Err(Error::OrderBound(bound))
    }

    /// Stack matrices vertically.
    pub fn stack(blocks: &[&FpMatrix]) -> Result<Self> {
        let field = blocks[0].field.clone();
        let cols = blocks[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch);
            }
            if b.cols != cols {
                return Err(Error::ShapeMismatch(b.rows, b.cols, rows, cols));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(FpMatrix { field, rows, cols, data })
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let pivot = self.data[r * cols + c];
            if pivot != 1 {
                let pinv = f.inv(pivot);
                for j in c..cols {
                    let v = self.data[r * cols + j];
                    if v != 0 {
                        self.data[r * cols + j] = f.mul(v, pinv);
                    }
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = self.data[r * cols + j];
                    if v != 0 {
                        let cur = self.data[i * cols + j];
                        self.data[i * cols + j] = f.sub(cur, f.mul(factor, v));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of the right null space, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let f = &self.field;
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        let mut is_pivot = vec![usize::MAX; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = r;
        }
        for free in 0..self.cols {
            if is_pivot[free] != usize::MAX {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.data[r * self.cols + free]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let n = self.rows;
        let mut aug = Self::zeros(self.field.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.data[i * n + j];
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::Singular);
        }
        let mut out = Self::zeros(self.field.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = aug.data[i * 2 * n + n + j];
            }
        }
        Ok(out)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Re-express the matrix over an extension of its own field.
    /// Only the prime-subfield embedding is needed here, where indices agree.
    pub fn lift_to(&self, ext: Arc<Field>) -> Result<Self> {
        if !self.field.is_prime_field() || ext.characteristic() != self.field.characteristic() {
            return Err(Error::FieldMismatch);
        }
        Ok(FpMatrix {
            field: ext,
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        })
    }

    /// Geometric multiplicity of `theta` (an element of `ext`) as an
    /// eigenvalue of this matrix over F_p, computed after scalar extension.
    pub fn eigen_multiplicity(&self, ext: &Arc<Field>, theta: u8) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(self.rows, self.cols, self.cols, self.rows));
        }
        let mut m = self.lift_to(ext.clone())?;
        for i in 0..m.rows {
            let v = m.get(i, i);
            m.set(i, i, ext.sub(v, theta));
        }
        Ok(m.cols - m.rank())
    }
}

impl std::fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FpMatrix {}x{} over size-{}:", self.rows, self.cols, self.field.size())?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl PartialEq for FpMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}
impl Eq for FpMatrix {}

impl std::hash::Hash for FpMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

/// Basis of the simultaneous fixed space of a family of square matrices,
/// computed by stacking the blocks `g - I`.
pub fn fixed_space(gens: &[FpMatrix]) -> Result<Vec<Vec<u8>>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::InvalidParameter("fixed_space of an empty family".into()))?;
    if !first.is_square() {
        return Err(Error::ShapeMismatch(first.rows(), first.cols(), first.cols(), first.rows()));
    }
    let n = first.rows();
    let id = FpMatrix::identity(first.field().clone(), n);
    let mut blocks = Vec::with_capacity(gens.len());
    for g in gens {
        if g.rows() != n || g.cols() != n {
            return Err(Error::ShapeMismatch(g.rows(), g.cols(), n, n));
        }
        blocks.push(g.sub(&id)?);
    }
    let refs: Vec<&FpMatrix> = blocks.iter().collect();
    Ok(FpMatrix::stack(&refs)?.kernel_basis())
}

/// Incremental row-echelon basis used to track growing subspaces.
pub struct EchelonBasis {
    field: Arc<Field>,
    dim: usize,
    /// (pivot position, reduced vector with leading 1 at that position)
    rows: Vec<(usize, Vec<u8>)>,
}

impl EchelonBasis {
    pub fn new(field: Arc<Field>, dim: usize) -> Self {
        EchelonBasis { field, dim, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduce `v` against the basis; if a nonzero remainder survives, absorb
    /// it and return true.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let f = &self.field;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[piv]);
        for x in v.iter_mut() {
            if *x != 0 {
                *x = f.mul(*x, inv);
            }
        }
        self.rows.push((piv, v));
        true
    }

    /// Membership test: does `v` lie in the current span?
    pub fn contains(&self, v: &[u8]) -> bool {
        let f = &self.field;
        let mut v = v.to_vec();
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = f.sub(*x, f.mul(c, r));
                    }
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Arc<Field> {
        Field::prime(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        let id3 = FpMatrix::identity(f(3), 3);
        assert_eq!(id3.rank(), 3);
        assert_eq!(FpMatrix::zeros(f(3), 3, 3).rank(), 0);
        let m = FpMatrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(f(2), 4).kernel_basis().is_empty());
        assert_eq!(FpMatrix::zeros(f(2), 2, 2).kernel_basis().len(), 2);
        let m = FpMatrix::from_rows(f(2), &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn fixed_space_examples() {
        let id = FpMatrix::identity(f(3), 4);
        assert_eq!(fixed_space(&[id]).unwrap().len(), 4);

        // 5-cycle permutation acting on F_5^5 fixes exactly the constants
        let p5 = FpMatrix::from_fn(f(5), 5, 5, |i, j| u8::from(j == (i + 1) % 5));
        let fs = fixed_space(std::slice::from_ref(&p5)).unwrap();
        assert_eq!(fs.len(), 1);
        assert!(fs[0].iter().all(|&x| x == fs[0][0] && x != 0));
    }

    #[test]
    fn regular_representation_of_c3_has_one_fixed_line() {
        // permutation matrix of the regular action of a 3-cycle over F_3
        let g = FpMatrix::from_rows(f(3), &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        // brute-force oracle: count fixed vectors among all 27
        let mut fixed = Vec::new();
        for a in 0..3i64 {
            for b in 0..3i64 {
                for c in 0..3i64 {
                    let v = [a as u8, b as u8, c as u8];
                    if g.apply(&v).unwrap() == v {
                        fixed.push(v);
                    }
                }
            }
        }
        assert_eq!(fixed.len(), 3); // a line: zero plus two scalings
        assert_eq!(fixed_space(std::slice::from_ref(&g)).unwrap().len(), 1);
    }

    #[test]
    fn eigen_multiplicity_examples() {
        let id = FpMatrix::identity(f(7), 4);
        let f7 = id.field().clone();
        assert_eq!(id.eigen_multiplicity(&f7, 1).unwrap(), 4);

        // companion matrix of t^2 + t + 1 over F_2, eigenvalues are the
        // primitive cube roots in F_4
        let g = FpMatrix::from_rows(f(2), &[vec![0, 1], vec![1, 1]]).unwrap();
        let f4 = Field::extension(2, 2).unwrap();
        // brute-force oracle over all of F_4^2 for each cube root
        for &(_, theta) in f4.roots_of_unity(3).unwrap().iter() {
            let lifted = g.lift_to(f4.clone()).unwrap();
            let mut count = 0;
            for x in 0..4u8 {
                for y in 0..4u8 {
                    let v = [x, y];
                    let gv = lifted.apply(&v).unwrap();
                    let tv = [f4.mul(theta, x), f4.mul(theta, y)];
                    if gv == tv {
                        count += 1;
                    }
                }
            }
            let dim = g.eigen_multiplicity(&f4, theta).unwrap();
            assert_eq!(4usize.pow(dim as u32), count);
            if theta != 1 {
                assert_eq!(dim, 1);
            } else {
                assert_eq!(dim, 0);
            }
        }

        // theta not a root of the characteristic polynomial
        let m = FpMatrix::from_rows(f(3), &[vec![1, 0], vec![0, 1]]).unwrap();
        let f3 = m.field().clone();
        assert_eq!(m.eigen_multiplicity(&f3, 2).unwrap(), 0);
    }

    #[test]
    fn inverse_and_product() {
        let m = FpMatrix::from_rows(f(5), &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
        let s = FpMatrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(s.inverse().is_err());
    }

    #[test]
    fn echelon_basis_tracks_spans() {
        let mut e = EchelonBasis::new(f(3), 3);
        assert!(e.insert(&[1, 2, 0]));
        assert!(!e.insert(&[2, 1, 0]));
        assert!(e.insert(&[0, 0, 2]));
        assert_eq!(e.len(), 2);
        assert!(e.contains(&[1, 2, 2]));
        assert!(!e.contains(&[0, 1, 0]));
    }

    #[test]
    fn extension_field_products() {
        let f4 = Field::extension(2, 2).unwrap();
        let a = FpMatrix::from_fn(f4.clone(), 2, 2, |i, j| ((i * 2 + j) % 4) as u8);
        let id = FpMatrix::identity(f4, 2);
        assert_eq!(a.mul(&id).unwrap(), a);
    }
}

//! Exact dense matrices.
//!
//! [`Mat<T>`] is a generic row-major dense matrix over any [`RingElem`];
//! multiplication, Kronecker products, the division-free Laplace determinant
//! and characteristic coefficients work over any commutative ring (so they
//! also run on polynomial entries). [`ExactMatrix`] specializes to
//! [`FieldScalar`] entries and adds field-only routines: Gaussian
//! elimination, rank/nullspace, determinant and inverse.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{check_field, Field, FieldScalar, RingElem};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type ExactMatrix = Mat<FieldScalar>;

impl<T: RingElem> Mat<T> {
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Mat { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Some entry to inherit ring context from; matrices here are never 0x0.
    fn sample(&self) -> &T {
        &self.entries[0]
    }

    pub fn mul(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = self.sample().zero_like();
        let mut out = vec![zero; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out[idx] = out[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        Mat::from_entries(self.rows, rhs.cols, out)
    }

    pub fn add(&self, rhs: &Mat<T>) -> Result<Mat<T>> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch("matrix addition".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add_ref(b))
            .collect();
        Mat::from_entries(self.rows, self.cols, entries)
    }

    pub fn scale(&self, s: &T) -> Mat<T> {
        let entries = self.entries.iter().map(|a| a.mul_ref(s)).collect();
        Mat { rows: self.rows, cols: self.cols, entries }
    }

    /// Kronecker product with block convention
    /// `(A⊗B)[(u-1)q + a, (v-1)r + b] = A[u,v]·B[a,b]`.
    pub fn kronecker(&self, rhs: &Mat<T>) -> Mat<T> {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let zero = self.sample().zero_like();
        let mut out = vec![zero; rows * cols];
        for u in 0..self.rows {
            for v in 0..self.cols {
                let a = self.at(u, v);
                if a.is_zero_elem() {
                    continue;
                }
                for r in 0..rhs.rows {
                    for c in 0..rhs.cols {
                        out[(u * rhs.rows + r) * cols + (v * rhs.cols + c)] =
                            a.mul_ref(rhs.at(r, c));
                    }
                }
            }
        }
        Mat { rows, cols, entries: out }
    }

    /// Division-free determinant by Laplace expansion memoized over row
    /// subsets. Exponential in the size, fine for the small square matrices
    /// this crate works with (≤ 12 or so).
    pub fn det_laplace(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let one = self.sample().one_like();
        if n == 0 {
            return one;
        }
        // minor[mask] = det of the submatrix with rows in `mask` and the
        // first popcount(mask) columns.
        let mut minor: Vec<Option<T>> = vec![None; 1 << n];
        minor[0] = Some(one);
        for mask in 1usize..(1 << n) {
            let col = (mask as u32).count_ones() as usize - 1;
            let mut acc = self.sample().zero_like();
            let mut sign_pos = true;
            for r in 0..n {
                if mask & (1 << r) == 0 {
                    continue;
                }
                let a = self.at(r, col);
                if !a.is_zero_elem() {
                    let sub = minor[mask ^ (1 << r)]
                        .as_ref()
                        .expect("smaller minors already computed");
                    let term = a.mul_ref(sub);
                    acc = if sign_pos { acc.add_ref(&term) } else { acc.sub_ref(&term) };
                }
                sign_pos = !sign_pos;
            }
            minor[mask] = Some(acc);
        }
        minor[(1 << n) - 1].take().expect("full minor computed")
    }

    /// Characteristic coefficients σ_0..σ_n of det(tI − A): σ_j is the
    /// coefficient of t^j, so σ_n = 1, tr(A) = −σ_{n−1}, det(A) = (−1)^n σ_0.
    /// Computed as signed sums of principal minors, which needs no division
    /// and is therefore valid over every coefficient ring, small prime
    /// fields included.
    pub fn char_coeffs(&self) -> Vec<T> {
        assert!(self.is_square(), "characteristic coefficients of a non-square matrix");
        let n = self.rows;
        let zero = self.sample().zero_like();
        let one = self.sample().one_like();
        let mut coeffs = vec![zero; n + 1];
        coeffs[n] = one;
        // e_k = sum of principal k-minors; σ_{n−k} = (−1)^k e_k.
        for mask in 1usize..(1 << n) {
            let k = (mask as u32).count_ones() as usize;
            let rows: Vec<usize> = (0..n).filter(|r| mask & (1 << r) != 0).collect();
            let sub_entries: Vec<T> = rows
                .iter()
                .flat_map(|&r| rows.iter().map(move |&c| self.at(r, c).clone()))
                .collect();
            let sub = Mat { rows: k, cols: k, entries: sub_entries };
            let d = sub.det_laplace();
            let idx = n - k;
            coeffs[idx] = if k % 2 == 0 { coeffs[idx].add_ref(&d) } else { coeffs[idx].sub_ref(&d) };
        }
        coeffs
    }
}

impl ExactMatrix {
    /// Validated constructor: checks the entry count and that all entries
    /// share one field.
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldScalar>, field: Field) -> Result<Self> {
        check_field(&entries, field)?;
        Mat::from_entries(rows, cols, entries)
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        Mat { rows: n, cols: n, entries }
    }

    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        Mat { rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64], field: Field) -> Self {
        let entries = vals.iter().map(|&v| field.from_i64(v)).collect();
        Mat { rows, cols, entries }
    }

    pub fn field(&self) -> Field {
        self.sample().field()
    }

    fn validate_uniform(&self) -> Result<Field> {
        let field = self.field();
        check_field(&self.entries, field)?;
        Ok(field)
    }

    /// Row-reduces a copy to reduced row echelon form; returns (rref, rank,
    /// pivot columns).
    pub fn rref(&self) -> Result<(ExactMatrix, usize, Vec<usize>)> {
        self.validate_uniform()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.at(r, c).inv().expect("pivot nonzero");
            for j in c..m.cols {
                *m.at_mut(r, j) = m.at(r, j) * &inv;
            }
            for i in 0..m.rows {
                if i != r && !m.at(i, c).is_zero() {
                    let f = m.at(i, c).clone();
                    for j in c..m.cols {
                        *m.at_mut(i, j) = m.at(i, j) - &(&f * m.at(r, j));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok((m, r, pivots))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank together with the canonical nullspace basis read off the reduced
    /// echelon form: one vector per free column, carrying 1 at the free
    /// column and the negated pivot-row entries at the pivot columns.
    pub fn rank_and_nullspace(&self) -> Result<(usize, Vec<Vec<FieldScalar>>)> {
        let field = self.validate_uniform()?;
        let (rref, rank, pivots) = self.rref()?;
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -rref.at(row, free);
            }
            basis.push(v);
        }
        Ok((rank, basis))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1)
    }

    /// Elimination determinant (field entries only).
    pub fn det(&self) -> Result<FieldScalar> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of non-square matrix".into()));
        }
        let field = self.validate_uniform()?;
        let mut m = self.clone();
        let mut det = field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                return Ok(field.zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det = &det * m.at(c, c);
            let inv = m.at(c, c).inv().expect("pivot nonzero");
            for i in c + 1..m.rows {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c) * &inv;
                for j in c..m.cols {
                    *m.at_mut(i, j) = m.at(i, j) - &(&f * m.at(c, j));
                }
            }
        }
        Ok(det)
    }

    /// Inverse via Gauss–Jordan on `[A | I]`; `Err(Singular)` when rank < n.
    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let field = self.validate_uniform()?;
        let n = self.rows;
        let mut aug = ExactMatrix::zero(n, 2 * n, field);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = field.one();
        }
        let (r, rank, pivots) = aug.rref()?;
        if rank < n || pivots.iter().take(n).ne((0..n).collect::<Vec<_>>().iter()) {
            return Err(Error::Singular);
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(r.at(i, n + j).clone());
            }
        }
        Mat::from_entries(n, n, entries)
    }

    /// Entry-wise reduction into 𝔽_p (for randomized membership trials).
    pub fn reduce_mod(&self, p: u64) -> Result<ExactMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.reduce_mod(p))
            .collect::<Result<Vec<_>>>()?;
        Mat::from_entries(self.rows, self.cols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: usize, cols: usize, vals: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(rows, cols, vals, Field::Q)
    }

    #[test]
    fn rank_identity() {
        let (rank, ns) = ExactMatrix::identity(2, Field::Q).rank_and_nullspace().unwrap();
        assert_eq!(rank, 2);
        assert!(ns.is_empty());
    }

    #[test]
    fn rank_zero_matrix() {
        let (rank, ns) = ExactMatrix::zero(2, 2, Field::Q).rank_and_nullspace().unwrap();
        assert_eq!(rank, 0);
        assert_eq!(ns.len(), 2);
    }

    #[test]
    fn nullspace_proportional_rows() {
        let m = qm(2, 2, &[1, 2, 2, 4]);
        let (rank, ns) = m.rank_and_nullspace().unwrap();
        assert_eq!(rank, 1);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0][0].to_wire(), "-2");
        assert_eq!(ns[0][1].to_wire(), "1");
    }

    #[test]
    fn nullspace_members_are_annihilated() {
        let m = qm(3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 1]);
        let (rank, ns) = m.rank_and_nullspace().unwrap();
        assert_eq!(rank + ns.len(), 4);
        for v in &ns {
            for i in 0..3 {
                let mut acc = Field::Q.zero();
                for j in 0..4 {
                    acc = &acc + &(m.at(i, j) * &v[j]);
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn mixed_fields_rejected() {
        let entries = vec![Field::Q.one(), Field::Fp(7).one()];
        assert_eq!(
            ExactMatrix::new(1, 2, entries, Field::Q).unwrap_err(),
            Error::FieldMismatch
        );
    }

    #[test]
    fn det_and_inverse() {
        let m = qm(2, 2, &[1, 2, 3, 4]);
        assert_eq!(m.det().unwrap().to_wire(), "-2");
        let inv = m.inverse().unwrap();
        let prod = m.mul(&inv).unwrap();
        assert_eq!(prod, ExactMatrix::identity(2, Field::Q));
        assert!(qm(2, 2, &[1, 2, 2, 4]).inverse().is_err());
    }

    #[test]
    fn laplace_matches_elimination() {
        let m = qm(3, 3, &[2, -1, 0, 3, 5, 1, 0, 7, -2]);
        assert_eq!(m.det_laplace(), m.det().unwrap());
    }

    #[test]
    fn char_coeffs_examples() {
        let zero = qm(2, 2, &[0, 0, 0, 0]);
        let c = zero.char_coeffs();
        assert_eq!(
            c.iter().map(|x| x.to_wire()).collect::<Vec<_>>(),
            ["0", "0", "1"]
        );
        let id = ExactMatrix::identity(2, Field::Q);
        assert_eq!(
            id.char_coeffs().iter().map(|x| x.to_wire()).collect::<Vec<_>>(),
            ["1", "-2", "1"]
        );
        let d = qm(2, 2, &[1, 0, 0, 2]);
        assert_eq!(
            d.char_coeffs().iter().map(|x| x.to_wire()).collect::<Vec<_>>(),
            ["2", "-3", "1"]
        );
    }

    #[test]
    fn char_coeffs_over_small_prime_field() {
        // Division-free path must work over F_3 where n! is not invertible.
        let f = Field::fp(3).unwrap();
        let m = ExactMatrix::from_i64(3, 3, &[1, 2, 0, 0, 1, 1, 2, 0, 1], f);
        let c = m.char_coeffs();
        assert_eq!(c.len(), 4);
        assert!(c[3].is_one());
        // det(tI - A) at t=0 is det(-A) = -det(A) over F_3.
        let neg_det = -&m.det().unwrap();
        assert_eq!(c[0], neg_det);
    }

    #[test]
    fn kronecker_block_convention() {
        let a = qm(2, 2, &[0, 1, 0, 0]);
        let b = qm(2, 2, &[1, 2, 3, 4]);
        let k = a.kronecker(&b);
        // A[1,2]·B lands in block row 1, block column 2.
        assert_eq!(k.at(0, 2).to_wire(), "1");
        assert_eq!(k.at(1, 2).to_wire(), "3");
        assert_eq!(k.at(0, 0).to_wire(), "0");
    }
}

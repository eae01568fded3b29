//! Dense matrices over a [`Field`] with exact elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, Scalar};
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form with its rank and 0-based pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format_scalar(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().position(|x| !field.contains(x)) {
            return Err(Error::FieldMismatch(format!(
                "entry ({}, {}) does not lie in {field}",
                bad / cols.max(1),
                bad % cols.max(1)
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Matrix::eye(field, n, n)
    }

    /// `I_{k,n}`: ones on the main diagonal.
    pub fn eye(field: &Field, rows: usize, cols: usize) -> Self {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows.min(cols) {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Panics on ragged input; meant for literals.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        if rows.is_empty() {
            return Matrix::zeros(field, 0, 0);
        }
        Matrix::from_rows(field, data).expect("rectangular literal")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn neg(&self) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(o, &f.mul(a, self.get(i, j)));
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Columns `start..end`.
    pub fn column_range(&self, start: usize, end: usize) -> Matrix {
        let cols: Vec<usize> = (start..end).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn embed(&self, emb: &Embedding) -> Matrix {
        Matrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| emb.apply(x)).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row-reduces in place, mirroring every row operation on `shadow` if given.
    fn reduce(&mut self, mut shadow: Option<&mut Matrix>) -> (usize, Vec<usize>) {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, p);
            if let Some(s) = shadow.as_deref_mut() {
                s.swap_rows(r, p);
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            if let Some(s) = shadow.as_deref_mut() {
                for j in 0..s.cols {
                    let v = f.mul(s.get(r, j), &inv);
                    s.set(r, j, v);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let t = self.get(i, c).clone();
                if f.is_zero(&t) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&t, self.get(r, j)));
                    self.set(i, j, v);
                }
                if let Some(s) = shadow.as_deref_mut() {
                    for j in 0..s.cols {
                        let v = f.sub(s.get(i, j), &f.mul(&t, s.get(r, j)));
                        s.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rank, pivots) = m.reduce(None);
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    /// Reduced form `R` together with an invertible `T` such that `T · self = R`.
    pub fn rref_with_transform(&self) -> (Rref, Matrix) {
        let mut m = self.clone();
        let mut t = Matrix::identity(&self.field, self.rows);
        let (rank, pivots) = m.reduce(Some(&mut t));
        (
            Rref {
                matrix: m,
                rank,
                pivots,
            },
            t,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of the reduced form: a canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        let r = self.rref();
        let rows: Vec<usize> = (0..r.rank).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        r.matrix.submatrix(&rows, &cols)
    }

    /// Basis (as rows, in reduced echelon form) of `{v : v · self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        let (r, t) = self.rref_with_transform();
        let rows: Vec<usize> = (r.rank..self.rows).collect();
        let cols: Vec<usize> = (0..self.rows).collect();
        t.submatrix(&rows, &cols).row_space()
    }

    /// Basis (as rows, in reduced echelon form) of `{x : self · xᵀ = 0}`.
    pub fn right_kernel(&self) -> Matrix {
        let f = &self.field;
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            k.set(row, fc, f.one());
            for (pi, &pc) in r.pivots.iter().enumerate() {
                k.set(row, pc, f.neg(r.matrix.get(pi, fc)));
            }
        }
        k.row_space()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let (r, t) = self.rref_with_transform();
        (r.rank == self.rows).then_some(t)
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let f = self.field.clone();
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).unwrap();
            for i in c + 1..n {
                let t = f.mul(m.get(i, c), &inv);
                if f.is_zero(&t) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&t, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(x·I − self)`, via reduction to Hessenberg form.
    pub fn char_poly(&self) -> Polynomial {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j)).unwrap();
            for r in j + 2..n {
                let t = f.mul(h.get(r, j), &inv);
                if f.is_zero(&t) {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), &f.mul(&t, h.get(j + 1, c)));
                    h.set(r, c, v);
                }
                for i in 0..n {
                    let v = f.add(h.get(i, j + 1), &f.mul(&t, h.get(i, r)));
                    h.set(i, j + 1, v);
                }
            }
        }
        // p[m] is the characteristic polynomial of the leading m×m block
        let x = Polynomial::x(&f);
        let mut p = vec![Polynomial::one(&f)];
        for m in 0..n {
            let mut next = x
                .sub(&Polynomial::constant(&f, h.get(m, m).clone()))
                .mul(&p[m]);
            let mut sub_prod = f.one();
            for i in (0..m).rev() {
                sub_prod = f.mul(&sub_prod, h.get(i + 1, i));
                let coeff = f.mul(h.get(i, m), &sub_prod);
                if !f.is_zero(&coeff) {
                    next = next.sub(&p[i].scale(&coeff));
                }
            }
            p.push(next);
        }
        p.pop().unwrap()
    }

    pub fn display(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| self.field.format_scalar(x)).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

/// Dimension of the span of the rows of `a` and `b` together.
pub fn joint_rank(a: &Matrix, b: &Matrix) -> usize {
    a.vstack(b).expect("same column count").rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let q = Field::rationals();
        let m = Matrix::from_ints(&q, &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!((r.rank, r.pivots.clone()), (1, vec![0]));
        assert_eq!(Matrix::identity(&q, 3).rank(), 3);
        let f2 = Field::prime(2).unwrap();
        let r = Matrix::from_ints(&f2, &[&[0, 1], &[0, 0]]).rref();
        assert_eq!((r.rank, r.pivots), (1, vec![1]));
    }

    #[test]
    fn kernels() {
        let q = Field::rationals();
        let m = Matrix::from_ints(&q, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(m.left_kernel().rows(), 0);
        let m = Matrix::from_ints(&q, &[&[1, 2], &[2, 4]]);
        let k = m.left_kernel();
        assert_eq!(k.rows(), 1);
        // proportional to (2, -1)
        assert_eq!(q.mul(k.get(0, 0), &q.from_i64(-1)), q.mul(k.get(0, 1), &q.from_i64(2)));
        assert!(m.transpose().mul(&k.transpose()).unwrap().is_zero());
        assert_eq!(Matrix::zeros(&q, 3, 2).left_kernel().rows(), 3);
        let rk = m.right_kernel();
        assert_eq!(rk.rows(), 1);
        assert!(m.mul(&rk.transpose()).unwrap().is_zero());
    }

    #[test]
    fn char_poly_examples() {
        let f5 = Field::prime(5).unwrap();
        let d = Matrix::from_ints(&f5, &[&[2, 0], &[0, 2]]);
        assert_eq!(d.char_poly(), Polynomial::from_ints(&f5, &[4, -4, 1]));
        let q = Field::rationals();
        let n = Matrix::from_ints(&q, &[&[0, 1], &[0, 0]]);
        assert_eq!(n.char_poly(), Polynomial::from_ints(&q, &[0, 0, 1]));
        let f3 = Field::prime(3).unwrap();
        let c = Matrix::from_ints(&f3, &[&[0, -1], &[1, 0]]);
        assert_eq!(c.char_poly(), Polynomial::from_ints(&f3, &[1, 0, 1]));
    }

    #[test]
    fn inverse_and_det() {
        let q = Field::rationals();
        let m = Matrix::from_ints(&q, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&q, 3));
        assert_eq!(m.det(), q.from_i64(18));
        let s = Matrix::from_ints(&q, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert!(q.is_zero(&s.det()));
    }
}

//! Alternating forms, subspaces in canonical echelon form, and the usual
//! symplectic constructions: radical, Darboux basis, restriction, orthogonal
//! complement.

use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A subspace of `F^r`, stored by the reduced row-echelon form of a basis.
/// Two subspaces are equal exactly when their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.rows().hash(state);
        self.basis.entries().hash(state);
    }
}

impl Subspace {
    /// Row span of `vectors`.
    pub fn span(vectors: &Matrix) -> Subspace {
        Subspace {
            ambient: vectors.cols(),
            basis: vectors.row_space(),
        }
    }

    pub fn from_vectors(field: &Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Subspace> {
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient));
        }
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch(format!("vectors must have length {ambient}")));
        }
        Ok(Subspace::span(&Matrix::from_rows(field, vectors)?))
    }

    /// Wraps a basis already in reduced row-echelon form with independent rows.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Subspace {
        Subspace {
            ambient: basis.cols(),
            basis,
        }
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn whole(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Span of the unit vectors with the given 0-based indices.
    pub fn coordinate(field: &Field, ambient: usize, indices: &[usize]) -> Subspace {
        let mut m = Matrix::zeros(field, indices.len(), ambient);
        for (row, &i) in indices.iter().enumerate() {
            m.set(row, i, field.one());
        }
        Subspace::span(&m)
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let m = Matrix::from_rows(self.field(), vec![v.to_vec()]).expect("vector");
        self.basis.vstack(&m).unwrap().rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.vstack(&other.basis).expect("same ambient space"))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let stacked = self.basis.vstack(&other.basis).expect("same ambient space");
        let kernel = stacked.left_kernel();
        let rows: Vec<usize> = (0..kernel.rows()).collect();
        let cols: Vec<usize> = (0..self.dim()).collect();
        let coeffs = kernel.submatrix(&rows, &cols);
        Subspace::span(&coeffs.mul(&self.basis).unwrap())
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }
}

/// A square Gram matrix that is antisymmetric with zero diagonal, together with
/// its radical. The pairing is `⟨x, y⟩ = x · G · yᵀ` on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingForm {
    gram: Matrix,
    radical: Subspace,
    rank: usize,
}

impl AlternatingForm {
    pub fn new(gram: Matrix) -> Result<AlternatingForm> {
        if !gram.is_square() {
            return Err(Error::NotAlternating(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let f = gram.field().clone();
        for i in 0..gram.rows() {
            if !f.is_zero(gram.get(i, i)) {
                return Err(Error::NotAlternating(format!(
                    "diagonal entry ({i}, {i}) is {}",
                    f.format_scalar(gram.get(i, i))
                )));
            }
            for j in i + 1..gram.cols() {
                if f.add(gram.get(i, j), gram.get(j, i)) != f.zero() {
                    return Err(Error::NotAlternating(format!(
                        "entries ({i}, {j}) = {} and ({j}, {i}) = {} are not opposite",
                        f.format_scalar(gram.get(i, j)),
                        f.format_scalar(gram.get(j, i))
                    )));
                }
            }
        }
        let radical = Subspace::from_rref_unchecked(gram.left_kernel());
        let rank = gram.rows() - radical.dim();
        Ok(AlternatingForm {
            gram,
            radical,
            rank,
        })
    }

    /// Block-diagonal `J_2 ⊕ … ⊕ J_2 ⊕ 0` with `delta` copies of `[[0,1],[-1,0]]` on `F^r`.
    pub fn standard(field: &Field, r: usize, delta: usize) -> AlternatingForm {
        assert!(2 * delta <= r, "rank exceeds dimension");
        AlternatingForm::new(standard_gram(field, r, delta)).expect("standard form is alternating")
    }

    pub fn zero(field: &Field, r: usize) -> AlternatingForm {
        AlternatingForm::new(Matrix::zeros(field, r, r)).unwrap()
    }

    pub fn field(&self) -> &Field {
        self.gram.field()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// The rank `2δ`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn delta(&self) -> usize {
        self.rank / 2
    }

    /// Degeneracy rank `p = r − 2δ`.
    pub fn degeneracy(&self) -> usize {
        self.dim() - self.rank
    }

    pub fn radical(&self) -> &Subspace {
        &self.radical
    }

    pub fn is_symplectic(&self) -> bool {
        self.rank == self.dim()
    }

    pub fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = self.field();
        let xg = self.gram.vec_mul(x);
        xg.iter().zip(y).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    pub fn add(&self, other: &AlternatingForm) -> Result<AlternatingForm> {
        AlternatingForm::new(self.gram.add(&other.gram)?)
    }

    pub fn scale(&self, c: &Scalar) -> AlternatingForm {
        AlternatingForm::new(self.gram.scale(c)).unwrap()
    }

    fn check_ambient(&self, v: &Subspace) -> Result<()> {
        if v.ambient() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of F^{} against a form on F^{}",
                v.ambient(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Gram matrix of the restriction, in the echelon basis of `v`.
    pub fn restrict(&self, v: &Subspace) -> Result<AlternatingForm> {
        self.check_ambient(v)?;
        let b = v.basis();
        AlternatingForm::new(b.mul(&self.gram)?.mul(&b.transpose())?)
    }

    pub fn is_isotropic(&self, v: &Subspace) -> Result<bool> {
        self.check_ambient(v)?;
        let b = v.basis();
        Ok(b.mul(&self.gram)?.mul(&b.transpose())?.is_zero())
    }

    pub fn orthogonal_complement(&self, v: &Subspace) -> Result<Subspace> {
        self.check_ambient(v)?;
        let m = v.basis().mul(&self.gram)?;
        if m.rows() == 0 {
            return Ok(Subspace::whole(self.field(), self.dim()));
        }
        Ok(Subspace::from_rref_unchecked(m.right_kernel()))
    }

    /// Basis change `B` (columns are the new basis) with `Bᵀ G B` standard, and the rank.
    pub fn darboux_basis(&self) -> (Matrix, usize) {
        let f = self.field().clone();
        let r = self.dim();
        let mut pool: Vec<Vec<Scalar>> = Matrix::identity(&f, r).to_rows();
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(r);
        loop {
            let found = (0..pool.len()).find_map(|i| {
                (i + 1..pool.len())
                    .find(|&j| !f.is_zero(&self.pair(&pool[i], &pool[j])))
                    .map(|j| (i, j))
            });
            let Some((i, j)) = found else { break };
            let u = pool[i].clone();
            let scale = f.inv(&self.pair(&pool[i], &pool[j])).unwrap();
            let v: Vec<Scalar> = pool[j].iter().map(|x| f.mul(x, &scale)).collect();
            pool.remove(j);
            pool.remove(i);
            for w in pool.iter_mut() {
                let wv = self.pair(w, &v);
                let wu = self.pair(w, &u);
                for (idx, x) in w.iter_mut().enumerate() {
                    let t = f.sub(x, &f.mul(&wv, &u[idx]));
                    *x = f.add(&t, &f.mul(&wu, &v[idx]));
                }
            }
            columns.push(u);
            columns.push(v);
        }
        let rank = columns.len();
        columns.extend(self.radical.basis().to_rows());
        let b = Matrix::from_rows(&f, columns).unwrap().transpose();
        (b, rank)
    }
}

pub fn standard_gram(field: &Field, r: usize, delta: usize) -> Matrix {
    let mut g = Matrix::zeros(field, r, r);
    for b in 0..delta {
        g.set(2 * b, 2 * b + 1, field.one());
        g.set(2 * b + 1, 2 * b, field.neg(&field.one()));
    }
    g
}

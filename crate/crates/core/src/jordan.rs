//! Generalized Jordan normal form of a `k × n` matrix (`k ≤ n`): the leftmost
//! `k × k` block is brought to Jordan form by a similarity, and the remaining
//! columns are column-reduced using the column operations that fix `[I | 0]`.

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct Gjnf {
    /// Field the normal form lives over; an extension of the input field when
    /// the characteristic polynomial only splits there.
    pub field: Field,
    pub embedding: Embedding,
    pub row_change: Matrix,
    pub col_change: Matrix,
    pub normal_form: Matrix,
    /// Diagonal entry of each row of the leftmost block.
    pub eigenvalues: Vec<Scalar>,
    /// `epsilon[i]` is the entry at `(i, i+1)` in 1-based terms, so
    /// `epsilon[0] = epsilon[k] = 0`.
    pub epsilon: Vec<bool>,
}

impl Gjnf {
    pub fn k(&self) -> usize {
        self.normal_form.rows()
    }

    /// Row ranges `[start, end)` of the Jordan blocks.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        jordan_blocks(&self.epsilon)
    }
}

fn jordan_blocks(epsilon: &[bool]) -> Vec<(usize, usize)> {
    let k = epsilon.len() - 1;
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..k {
        // rows i and i+1 (0-based) share a block iff epsilon[i+1]
        if i + 1 == k || !epsilon[i + 1] {
            out.push((start, i + 1));
            start = i + 1;
        }
    }
    out
}

/// Reads off eigenvalues and superdiagonal flags if `a` is in generalized Jordan
/// normal form, `None` otherwise.
pub fn jordan_data(a: &Matrix) -> Option<(Vec<Scalar>, Vec<bool>)> {
    let k = a.rows();
    if k > a.cols() {
        return None;
    }
    let f = a.field();
    let mut eps = vec![false; k + 1];
    for i in 0..k {
        for j in 0..k {
            let x = a.get(i, j);
            if j == i + 1 {
                if f.is_one(x) {
                    if a.get(i, i) != a.get(j, j) {
                        return None;
                    }
                    eps[i + 1] = true;
                } else if !f.is_zero(x) {
                    return None;
                }
            } else if j != i && !f.is_zero(x) {
                return None;
            }
        }
    }
    let lambdas = (0..k).map(|i| a.get(i, i).clone()).collect();
    Some((lambdas, eps))
}

pub fn is_gjnf(a: &Matrix) -> bool {
    jordan_data(a).is_some()
}

/// Computes the generalized Jordan normal form. Over a finite field the
/// result may live over an extension; over the rationals an irrational
/// eigenvalue gives [`Error::SplitFailure`].
pub fn generalized_jordan_form(a: &Matrix) -> Result<Gjnf> {
    let k = a.rows();
    let n = a.cols();
    if k > n {
        return Err(Error::DimensionMismatch(format!("GJNF needs k <= n, got {k}x{n}")));
    }
    let left: Vec<usize> = (0..k).collect();
    let rows: Vec<usize> = (0..k).collect();
    let a1 = a.submatrix(&rows, &left);
    let fac = a1.char_poly().factor_squarefree_roots()?;
    let field = fac.field.clone();
    let embedding = fac.embedding.clone();
    let a_ext = a.embed(&embedding);
    let a1 = a1.embed(&embedding);

    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(k);
    let mut eigenvalues = Vec::with_capacity(k);
    let mut epsilon = vec![false; k + 1];
    for (lambda, mult) in &fac.roots {
        let nil = a1.sub(&Matrix::identity(&field, k).scale(lambda))?;
        for chain in jordan_chains(&nil, *mult) {
            let start = columns.len();
            for (pos, v) in chain.into_iter().enumerate() {
                if pos > 0 {
                    epsilon[start + pos] = true;
                }
                columns.push(v);
                eigenvalues.push(lambda.clone());
            }
        }
    }
    let s = Matrix::from_rows(&field, columns)?.transpose();
    let p = s.inverse().ok_or_else(|| {
        Error::InvariantViolation("Jordan basis is not invertible".into())
    })?;

    let right = a_ext.column_range(k, n);
    let r = p.mul(&right)?;
    let (_, t) = r.transpose().rref_with_transform();
    let col_change = s.direct_sum(&t.transpose());
    let normal_form = p.mul(&a_ext)?.mul(&col_change)?;
    Ok(Gjnf {
        field,
        embedding,
        row_change: p,
        col_change,
        normal_form,
        eigenvalues,
        epsilon,
    })
}

/// Jordan chains `(N^{s-1} x, ..., N x, x)` of a nilpotent-on-its-block map
/// `nil` acting on column vectors, for the generalized eigenspace of dimension
/// `mult`, longest chains first.
fn jordan_chains(nil: &Matrix, mult: usize) -> Vec<Vec<Vec<Scalar>>> {
    let f = nil.field().clone();
    let k = nil.rows();
    // kernels[j] = ker N^j as a row-basis of column vectors
    let mut powers = vec![Matrix::identity(&f, k)];
    let mut kernels = vec![Matrix::zeros(&f, 0, k)];
    while kernels.last().unwrap().rows() < mult {
        let next = powers.last().unwrap().mul(nil).unwrap();
        kernels.push(next.right_kernel());
        powers.push(next);
    }
    let top = kernels.len() - 1;
    let apply = |v: &[Scalar]| -> Vec<Scalar> { nil.transpose().vec_mul(v) };

    let mut chains: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for s in (1..=top).rev() {
        // span of ker N^{s-1} and the level-s members of longer chains
        let mut span = kernels[s - 1].clone();
        for chain in &chains {
            let v = &chain[s - 1];
            span = span.vstack(&Matrix::from_rows(&f, vec![v.clone()]).unwrap()).unwrap();
        }
        let mut rank = span.rank();
        for cand in kernels[s].to_rows() {
            let trial = span.vstack(&Matrix::from_rows(&f, vec![cand.clone()]).unwrap()).unwrap();
            let r = trial.rank();
            if r > rank {
                span = trial;
                rank = r;
                let mut chain = vec![cand];
                for _ in 1..s {
                    let prev = apply(&chain[0]);
                    chain.insert(0, prev);
                }
                chains.push(chain);
            }
        }
    }
    chains
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_round_trip(a: &Matrix, g: &Gjnf) {
        let lifted = a.embed(&g.embedding);
        let rebuilt = g.row_change.mul(&lifted).unwrap().mul(&g.col_change).unwrap();
        assert_eq!(rebuilt, g.normal_form);
        let (lambdas, eps) = jordan_data(&g.normal_form).expect("normal form");
        assert_eq!(lambdas, g.eigenvalues);
        assert_eq!(eps, g.epsilon);
    }

    #[test]
    fn fixed_points() {
        let q = Field::rationals();
        let a = Matrix::from_ints(&q, &[&[0, 1, 0], &[0, 0, 0]]);
        let g = generalized_jordan_form(&a).unwrap();
        check_round_trip(&a, &g);
        assert_eq!(g.normal_form, a);
        assert_eq!(g.epsilon, vec![false, true, false]);

        let i = Matrix::eye(&q, 2, 3);
        let g = generalized_jordan_form(&i).unwrap();
        assert_eq!(g.normal_form, i);
        assert_eq!(g.eigenvalues, vec![q.one(), q.one()]);
        assert_eq!(g.epsilon, vec![false; 3]);

        let f5 = Field::prime(5).unwrap();
        let j = Matrix::from_ints(&f5, &[&[2, 1], &[0, 2]]);
        let g = generalized_jordan_form(&j).unwrap();
        assert_eq!(g.normal_form, j);
    }

    #[test]
    fn needs_extension() {
        let f3 = Field::prime(3).unwrap();
        let a = Matrix::from_ints(&f3, &[&[0, -1, 1], &[1, 0, 2]]);
        let g = generalized_jordan_form(&a).unwrap();
        assert_eq!(g.field.order(), Some(9));
        check_round_trip(&a, &g);
        let q = Field::rationals();
        let a = Matrix::from_ints(&q, &[&[0, 2], &[1, 0]]);
        assert_eq!(generalized_jordan_form(&a).unwrap_err(), Error::SplitFailure);
    }

    #[test]
    fn mixed_blocks() {
        let q = Field::rationals();
        // conjugate of J_2(1) ⊕ J_1(1) ⊕ J_1(3), with extra columns
        let j = Matrix::from_ints(
            &q,
            &[&[1, 1, 0, 0, 2], &[0, 1, 0, 0, 1], &[0, 0, 1, 0, 0], &[0, 0, 0, 3, 5]],
        );
        let p = Matrix::from_ints(&q, &[&[1, 2, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]]);
        let pinv = p.inverse().unwrap();
        let left = pinv.mul(&j.column_range(0, 4)).unwrap().mul(&p).unwrap();
        let a = left.hstack(&pinv.mul(&j.column_range(4, 5)).unwrap()).unwrap();
        let g = generalized_jordan_form(&a).unwrap();
        check_round_trip(&a, &g);
        assert_eq!(g.blocks(), vec![(0, 2), (2, 3), (3, 4)]);
        assert_eq!(g.eigenvalues[3], q.from_i64(3));
    }
}

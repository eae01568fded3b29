//! The one-parameter family moving an isotropic subspace from stratum `i` to
//! stratum `i − 1`.
//!
//! Choose a basis `e_1, …, e_k` of `F0` whose first `i` vectors span `F0 ∩ K`,
//! and a vector `e ∈ F0^⊥` outside `K + F0` (it exists because
//! `dim F0^⊥ = r − k + i` exceeds `dim(K + F0) = p + k − i` whenever
//! `i > k − δ`). Then `F_t = span(e_1, …, e_i + t e, …, e_k)` stays isotropic,
//! meets `K` in dimension `i − 1` for `t ≠ 0`, and equals `F0` at `t = 0`.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::forms::{AlternatingForm, Subspace};
use crate::matrix::Matrix;

/// Observed properties of `F_t` at one parameter value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyCheck {
    pub t: Scalar,
    pub isotropic: bool,
    pub dim: usize,
    pub radical_intersection: usize,
    pub equals_start: bool,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub e: Vec<Scalar>,
    /// 1-based index of the replaced basis vector (equal to the stratum index `i`).
    pub replaced: usize,
    /// Rows `e_1, …, e_k` of the adapted basis of `F0`.
    pub basis: Matrix,
    pub checks: Vec<FamilyCheck>,
}

impl Witness {
    /// Whether every check agrees with the degeneration statement.
    pub fn holds(&self, k: usize) -> bool {
        let i = self.replaced;
        self.checks.iter().all(|c| {
            let zero = c.t == self.basis.field().zero();
            c.isotropic
                && c.dim == k
                && if zero {
                    c.equals_start && c.radical_intersection == i
                } else {
                    c.radical_intersection == i - 1
                }
        })
    }
}

/// The family `F_t` as a subspace.
pub fn family_member(w: &Witness, t: &Scalar) -> Subspace {
    let f = w.basis.field();
    let mut rows = w.basis.to_rows();
    let row = &mut rows[w.replaced - 1];
    for (x, e) in row.iter_mut().zip(&w.e) {
        *x = f.add(x, &f.mul(t, e));
    }
    Subspace::span(&Matrix::from_rows(f, rows).unwrap())
}

/// Builds and verifies the degeneration family for an isotropic `f0`. Over a
/// finite field every parameter value is checked; over the rationals a fixed
/// window `t ∈ {−2, …, 2}`.
pub fn degeneration_witness(form: &AlternatingForm, f0: &Subspace) -> Result<Witness> {
    if !form.is_isotropic(f0)? {
        return Err(Error::NotIsotropic);
    }
    let f = form.field().clone();
    let k = f0.dim();
    let radical = form.radical();
    let meet = f0.intersection(radical);
    let i = meet.dim();
    let minimal = k.saturating_sub(form.delta());
    if i <= minimal {
        return Err(Error::NoWitnessNeeded { i });
    }

    // adapted basis: F0 ∩ K first, then completed from F0's echelon rows
    let mut rows = meet.basis().to_rows();
    for cand in f0.basis().to_rows() {
        let mut trial = rows.clone();
        trial.push(cand);
        if Matrix::from_rows(&f, trial.clone())?.rank() == trial.len() {
            rows = trial;
        }
    }
    let basis = Matrix::from_rows(&f, rows)?;

    let perp = form.orthogonal_complement(f0)?;
    let blocked = radical.sum(f0);
    let e = perp
        .basis()
        .to_rows()
        .into_iter()
        .find(|v| !blocked.contains(v))
        .ok_or_else(|| {
            Error::InvariantViolation(format!(
                "F0^perp has dimension {} but lies inside K + F0 of dimension {}",
                perp.dim(),
                blocked.dim()
            ))
        })?;

    let params: Vec<Scalar> = match f.elements() {
        Some(all) => all,
        None => (-2..=2).map(|t| f.from_i64(t)).collect(),
    };
    let mut w = Witness {
        e,
        replaced: i,
        basis,
        checks: Vec::with_capacity(params.len()),
    };
    for t in params {
        let ft = family_member(&w, &t);
        w.checks.push(FamilyCheck {
            isotropic: form.is_isotropic(&ft)?,
            dim: ft.dim(),
            radical_intersection: ft.intersection_dim(radical),
            equals_start: &ft == f0,
            t,
        });
    }
    Ok(w)
}

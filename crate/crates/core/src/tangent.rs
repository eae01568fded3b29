//! Symmetry conditions on `φ ∈ Hom(V, W)` imposed by pairings `ψ_i : W → V*`,
//! their linear dependences, and the pencil criterion for such dependences.
//!
//! A pairing is a `k × n` matrix with `ψ[l][c] = ψ(w_c)(v_l)`. A map `φ` is a
//! `k × n` matrix with `φ[j][c]` the `w_c`-coordinate of `φ(v_j)`, flattened
//! to column `j·n + c`. The condition indexed by `(i, j, l)`, `j < l`, is
//! `ψ_i(φ(v_j))(v_l) − ψ_i(φ(v_l))(v_j)`.

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, Scalar};
use crate::forms::{AlternatingForm, Subspace};
use crate::jordan::jordan_data;
use crate::matrix::Matrix;
use crate::poly::{binary_form_common_root, BinaryForm, CommonRoot, Polynomial};

pub fn choose2(m: usize) -> usize {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

/// Pairs `(j, l)` with `j < l < k`, lexicographically.
pub fn pairs(k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|j| (j + 1..k).map(move |l| (j, l))).collect()
}

#[derive(Clone, Debug)]
pub struct FormPencil {
    pub psi: [Matrix; 2],
    pub surjective: [bool; 2],
}

impl FormPencil {
    pub fn new(psi1: Matrix, psi2: Matrix) -> Result<FormPencil> {
        if psi1.field() != psi2.field() {
            return Err(Error::FieldMismatch("pencil matrices over different fields".into()));
        }
        if (psi1.rows(), psi1.cols()) != (psi2.rows(), psi2.cols()) {
            return Err(Error::DimensionMismatch("pencil matrices of different shapes".into()));
        }
        let k = psi1.rows();
        let surjective = [psi1.rank() == k, psi2.rank() == k];
        Ok(FormPencil {
            psi: [psi1, psi2],
            surjective,
        })
    }

    pub fn field(&self) -> &Field {
        self.psi[0].field()
    }

    pub fn k(&self) -> usize {
        self.psi[0].rows()
    }

    pub fn n(&self) -> usize {
        self.psi[0].cols()
    }

    /// `λ ψ_1 + μ ψ_2`.
    pub fn combine(&self, lambda: &Scalar, mu: &Scalar) -> Matrix {
        self.psi[0].scale(lambda).add(&self.psi[1].scale(mu)).unwrap()
    }

    pub fn embed(&self, emb: &Embedding) -> FormPencil {
        FormPencil {
            psi: [self.psi[0].embed(emb), self.psi[1].embed(emb)],
            surjective: self.surjective,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConditionSystem {
    pub matrix: Matrix,
    /// `(i, j, l)` per row, 0-based.
    pub labels: Vec<(usize, usize, usize)>,
    pub k: usize,
    pub n: usize,
}

pub fn condition_matrix(psis: &[Matrix]) -> Result<ConditionSystem> {
    let first = psis
        .first()
        .ok_or_else(|| Error::Malformed("at least one pairing is required".into()))?;
    let (k, n) = (first.rows(), first.cols());
    let f = first.field().clone();
    if psis.iter().any(|p| (p.rows(), p.cols()) != (k, n) || p.field() != &f) {
        return Err(Error::DimensionMismatch("pairings must share shape and field".into()));
    }
    let mut labels = Vec::new();
    let mut m = Matrix::zeros(&f, psis.len() * choose2(k), k * n);
    let mut row = 0;
    for (i, psi) in psis.iter().enumerate() {
        for (j, l) in pairs(k) {
            for c in 0..n {
                m.set(row, j * n + c, psi.get(l, c).clone());
                m.set(row, l * n + c, f.neg(psi.get(j, c)));
            }
            labels.push((i, j, l));
            row += 1;
        }
    }
    Ok(ConditionSystem {
        matrix: m,
        labels,
        k,
        n,
    })
}

/// Left kernel of the stacked condition matrix of a pencil, echelonized. A
/// kernel vector `x` splits as `(x_1, x_2)`; in the form
/// `Σ c_{jl}(B_{jl} − B_{lj}) = Σ c'_{jl}((AB)_{jl} − (AB)_{lj})` for
/// `ψ_1 = [I | 0]`, `ψ_2 = A`, it reads `c = x_1`, `c' = −x_2`.
pub fn dependence_space(p: &FormPencil) -> Matrix {
    let sys = condition_matrix(&p.psi).expect("pencil shapes agree");
    sys.matrix.left_kernel()
}

/// `(c, c')` in the convention of [`dependence_space`].
pub fn split_dependence(field: &Field, k: usize, x: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let m = choose2(k);
    let c = x[..m].to_vec();
    let cp = x[m..2 * m].iter().map(|v| field.neg(v)).collect();
    (c, cp)
}

/// A point `(λ:μ)` where the pencil drops rank by two, with a plane `V'` in the left kernel.
#[derive(Clone, Debug)]
pub struct PencilWitness {
    pub lambda: (Scalar, Scalar),
    pub field: Field,
    pub embedding: Embedding,
    pub degree: u32,
    /// Two rows spanning `V'` in coordinates of the basis of `V`.
    pub v_prime: Matrix,
    /// Explicit dependence among the conditions built from `V'` and `(λ:μ)`,
    /// in the coordinates of the condition rows (over `field`).
    pub coefficients: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub enum DependenceCertificate {
    Independent,
    Dependent {
        witness: Option<PencilWitness>,
        /// gcd of the dehomogenized minors when no rational witness exists.
        gcd: Option<Polynomial>,
    },
}

impl DependenceCertificate {
    pub fn is_dependent(&self) -> bool {
        matches!(self, DependenceCertificate::Dependent { .. })
    }

    pub fn witness(&self) -> Option<&PencilWitness> {
        match self {
            DependenceCertificate::Dependent { witness, .. } => witness.as_ref(),
            DependenceCertificate::Independent => None,
        }
    }
}

/// Determinant of a square matrix of binary forms of degree 1, by expansion
/// over column subsets.
fn binary_det(entries: &[Vec<BinaryForm>], field: &Field) -> BinaryForm {
    let m = entries.len();
    let mut dp: Vec<Option<BinaryForm>> = vec![None; 1 << m];
    dp[0] = Some(BinaryForm::constant(field, field.one()));
    for mask in 0usize..(1 << m) {
        let Some(cur) = dp[mask].clone() else { continue };
        let row = mask.count_ones() as usize;
        if row == m {
            continue;
        }
        for c in 0..m {
            if mask & (1 << c) != 0 {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let mut term = cur.mul(&entries[row][c]);
            if above % 2 == 1 {
                term = term.neg();
            }
            let next = mask | (1 << c);
            dp[next] = Some(match dp[next].take() {
                None => term,
                Some(acc) => acc.add(&term),
            });
        }
    }
    dp[(1 << m) - 1].clone().unwrap()
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            rec(c + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// All `(k−1)`-minors of `λψ_1 + μψ_2` as binary forms.
pub fn pencil_minors(p: &FormPencil) -> Vec<BinaryForm> {
    let f = p.field();
    let k = p.k();
    let size = k.saturating_sub(1);
    let lin: Vec<Vec<BinaryForm>> = (0..k)
        .map(|a| {
            (0..p.n())
                .map(|c| BinaryForm::linear(f, p.psi[0].get(a, c).clone(), p.psi[1].get(a, c).clone()))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for rows in subsets(k, size) {
        for cols in subsets(p.n(), size) {
            let sub: Vec<Vec<BinaryForm>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| lin[r][c].clone()).collect())
                .collect();
            out.push(binary_det(&sub, f));
        }
    }
    out
}

/// Explicit dependence `x_{i,j,l} = λ_i (a_l b_j − a_j b_l)` for `V' = span(a, b)`.
pub fn msg_easy_coefficients(field: &Field, k: usize, lambdas: &[Scalar], a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(lambdas.len() * choose2(k));
    for lam in lambdas {
        for (j, l) in pairs(k) {
            let wedge = field.sub(&field.mul(&a[l], &b[j]), &field.mul(&a[j], &b[l]));
            out.push(field.mul(lam, &wedge));
        }
    }
    out
}

/// Decides dependence through the rank drop of the pencil, without touching
/// the condition matrix.
pub fn pencil_rank_drop(p: &FormPencil) -> Result<DependenceCertificate> {
    if !(p.surjective[0] && p.surjective[1]) {
        return Err(Error::NotSurjective);
    }
    let k = p.k();
    if k > p.n() {
        return Err(Error::DimensionMismatch(format!("k = {k} exceeds n = {}", p.n())));
    }
    if k < 2 {
        return Ok(DependenceCertificate::Independent);
    }
    let f = p.field().clone();
    let minors = pencil_minors(p);
    let (lambda, field, embedding, degree) = match binary_form_common_root(&f, &minors) {
        CommonRoot::None => return Ok(DependenceCertificate::Independent),
        CommonRoot::Irrational { gcd } => {
            return Ok(DependenceCertificate::Dependent {
                witness: None,
                gcd: Some(gcd),
            })
        }
        CommonRoot::AllZero => (
            (f.one(), f.zero()),
            f.clone(),
            Embedding::identity(f.clone()),
            1,
        ),
        CommonRoot::Root {
            lambda,
            field,
            embedding,
            degree,
        } => (lambda, field, embedding, degree),
    };
    let lifted = p.embed(&embedding);
    let combo = lifted.combine(&lambda.0, &lambda.1);
    let kernel = combo.left_kernel();
    if kernel.rows() < 2 {
        return Err(Error::InvariantViolation(format!(
            "minors vanish at the witness but the left kernel has dimension {}",
            kernel.rows()
        )));
    }
    let v_prime = kernel.submatrix(&[0, 1], &(0..k).collect::<Vec<_>>());
    let coefficients = msg_easy_coefficients(
        &field,
        k,
        &[lambda.0.clone(), lambda.1.clone()],
        v_prime.row(0),
        v_prime.row(1),
    );
    Ok(DependenceCertificate::Dependent {
        witness: Some(PencilWitness {
            lambda,
            field,
            embedding,
            degree,
            v_prime,
            coefficients,
        }),
        gcd: None,
    })
}

/// Pairings `ψ_i(w)(v) = ⟨v, w⟩_i` on `V × E/V`, with `E/V` represented by the
/// unit vectors at the non-pivot columns of `V`'s echelon basis.
pub fn induced_pairings(forms: &[&AlternatingForm], v: &Subspace) -> Result<Vec<Matrix>> {
    let f = v.field().clone();
    let r = v.ambient();
    let pivots = v.basis().rref().pivots;
    let comp: Vec<usize> = (0..r).filter(|c| !pivots.contains(c)).collect();
    let w = Subspace::coordinate(&f, r, &comp);
    forms
        .iter()
        .map(|form| v.basis().mul(form.gram())?.mul(&w.basis().transpose()))
        .collect()
}

/// Tangent space to the symplectic Grassmannian at an isotropic `V`, as a row
/// basis of the solutions `φ` (flattened `k × (r−k)`).
pub fn sg_tangent(form: &AlternatingForm, v: &Subspace) -> Result<Matrix> {
    if !form.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    if !form.is_isotropic(v)? {
        return Err(Error::NotIsotropic);
    }
    let psi = induced_pairings(&[form], v)?;
    let sys = condition_matrix(&psi)?;
    Ok(sys.matrix.right_kernel())
}

#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub k: usize,
    pub tangent_codimension: usize,
    pub expected_codimension: usize,
    pub dependence_dim: usize,
    pub certificate: DependenceCertificate,
    /// Whether `codim = 2·C(k,2)` exactly when the pencil criterion says independent.
    pub agreement: bool,
}

impl SmoothnessReport {
    pub fn smooth(&self) -> bool {
        self.tangent_codimension == self.expected_codimension
    }
}

pub fn msg_smoothness_at(f1: &AlternatingForm, f2: &AlternatingForm, v: &Subspace) -> Result<SmoothnessReport> {
    if !f1.is_symplectic() || !f2.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    if !f1.is_isotropic(v)? || !f2.is_isotropic(v)? {
        return Err(Error::NotIsotropic);
    }
    let k = v.dim();
    let psi = induced_pairings(&[f1, f2], v)?;
    let pencil = FormPencil::new(psi[0].clone(), psi[1].clone())?;
    let dependence_dim = dependence_space(&pencil).rows();
    let expected = 2 * choose2(k);
    let codim = expected - dependence_dim;
    let certificate = pencil_rank_drop(&pencil)?;
    let agreement = (codim == expected) == !certificate.is_dependent();
    Ok(SmoothnessReport {
        k,
        tangent_codimension: codim,
        expected_codimension: expected,
        dependence_dim,
        certificate,
        agreement,
    })
}

/// For `A` in generalized Jordan normal form and a dependence `x` of the
/// pencil `([I | 0], A)`, returns `(i, v_i)` for the minimal row `i` of each
/// Jordan block with a nonzero `c'_{i,·}`, where `v_i = (c'_{i,1}, …, c'_{i,k})`.
/// Each `v_i` is checked to satisfy `v_i (A − λ_i I_{k,n}) = 0`, and the
/// vectors are checked to span at least a plane.
pub fn extract_dependence_vectors(a: &Matrix, x: &[Scalar]) -> Result<Vec<(usize, Vec<Scalar>)>> {
    let (lambdas, eps) = jordan_data(a).ok_or_else(|| Error::Malformed("matrix is not in generalized Jordan normal form".into()))?;
    let f = a.field().clone();
    let k = a.rows();
    if x.len() != 2 * choose2(k) {
        return Err(Error::DimensionMismatch(format!(
            "dependence vector has length {}, expected {}",
            x.len(),
            2 * choose2(k)
        )));
    }
    let (_, cp_flat) = split_dependence(&f, k, x);
    let mut cp = vec![vec![f.zero(); k]; k];
    for ((j, l), v) in pairs(k).into_iter().zip(cp_flat) {
        cp[l][j] = f.neg(&v);
        cp[j][l] = v;
    }
    if cp.iter().flatten().all(|v| f.is_zero(v)) {
        return Err(Error::Malformed("dependence has c' = 0".into()));
    }
    let mut out = Vec::new();
    let mut start = 0;
    for end in 1..=k {
        if end < k && eps[end] {
            continue;
        }
        if let Some(i) = (start..end).find(|&i| cp[i].iter().any(|v| !f.is_zero(v))) {
            out.push((i, cp[i].clone()));
        }
        start = end;
    }
    for (i, v) in &out {
        let shifted = a.sub(&Matrix::eye(&f, k, a.cols()).scale(&lambdas[*i]))?;
        if shifted.vec_mul(v).iter().any(|y| !f.is_zero(y)) {
            return Err(Error::InvariantViolation(format!(
                "v_{} does not annihilate A − λ I",
                i + 1
            )));
        }
    }
    let span = Matrix::from_rows(&f, out.iter().map(|(_, v)| v.clone()).collect())?;
    if span.rank() < 2 {
        return Err(Error::InvariantViolation(format!(
            "extracted vectors span dimension {}",
            span.rank()
        )));
    }
    Ok(out)
}

/// An invertible `Q` with `ψ Q = [I | 0]` for a surjective `k × n` matrix `ψ`.
pub fn normalizing_change(psi: &Matrix) -> Result<Matrix> {
    let f = psi.field().clone();
    let (k, n) = (psi.rows(), psi.cols());
    let mut m = psi.clone();
    for c in 0..n {
        if m.rows() == n {
            break;
        }
        let mut unit = Matrix::zeros(&f, 1, n);
        unit.set(0, c, f.one());
        let trial = m.vstack(&unit)?;
        if trial.rank() == trial.rows() {
            m = trial;
        }
    }
    if m.rows() != n || m.rank() != n || psi.rank() != k {
        return Err(Error::NotSurjective);
    }
    Ok(m.inverse().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn condition_rows() {
        let f = q();
        let sys = condition_matrix(&[Matrix::identity(&f, 2)]).unwrap();
        assert_eq!(sys.matrix, Matrix::from_ints(&f, &[&[0, 1, -1, 0]]));
        let psi2 = Matrix::from_ints(&f, &[&[0, 1], &[0, 0]]);
        let sys = condition_matrix(&[Matrix::identity(&f, 2), psi2]).unwrap();
        assert_eq!(sys.matrix.rank(), 2);
        assert_eq!(sys.matrix.row(1).to_vec(), vec![f.zero(), f.zero(), f.zero(), f.from_i64(-1)]);
    }

    #[test]
    fn identical_pairings_are_dependent() {
        let f = q();
        let p = FormPencil::new(Matrix::identity(&f, 2), Matrix::identity(&f, 2)).unwrap();
        let d = dependence_space(&p);
        assert_eq!(d.rows(), 1);
        assert_eq!(d.row(0).to_vec(), vec![f.one(), f.from_i64(-1)]);
        let cert = pencil_rank_drop(&p).unwrap();
        let w = cert.witness().unwrap();
        assert_eq!(w.lambda, (f.one(), f.from_i64(-1)));
    }

    #[test]
    fn independent_example() {
        let f = q();
        let p = FormPencil::new(
            Matrix::eye(&f, 2, 3),
            Matrix::from_ints(&f, &[&[0, 1, 0], &[0, 0, 0]]),
        )
        .unwrap();
        assert!(matches!(pencil_rank_drop(&p), Err(Error::NotSurjective)));
        assert_eq!(dependence_space(&p).rows(), 0);
    }

    #[test]
    fn diagonal_example() {
        let f = q();
        let p = FormPencil::new(
            Matrix::identity(&f, 3),
            Matrix::from_ints(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]),
        )
        .unwrap();
        let cert = pencil_rank_drop(&p).unwrap();
        let w = cert.witness().unwrap();
        assert_eq!(w.lambda, (f.one(), f.from_i64(-1)));
        let sys = condition_matrix(&p.psi).unwrap();
        assert!(sys.matrix.vec_mul(&w.coefficients).iter().all(|x| f.is_zero(x)));
        let d = dependence_space(&p);
        assert_eq!(d.rows(), 1);
        let a = p.psi[1].clone();
        let v = extract_dependence_vectors(&a, d.row(0)).unwrap();
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn extraction_on_identity_pencil() {
        let f = q();
        let a = Matrix::eye(&f, 2, 3);
        let p = FormPencil::new(a.clone(), a.clone()).unwrap();
        let d = dependence_space(&p);
        let v = extract_dependence_vectors(&a, d.row(0)).unwrap();
        let (_, cp) = split_dependence(&f, 2, d.row(0));
        assert_eq!(v[0], (0, vec![f.zero(), cp[0].clone()]));
        assert_eq!(v[1], (1, vec![f.neg(&cp[0]), f.zero()]));
        let zero = vec![f.one(), f.zero()];
        assert!(matches!(extract_dependence_vectors(&a, &zero), Err(Error::Malformed(_))));
    }

    #[test]
    fn tangent_dimensions() {
        let f3 = Field::prime(3).unwrap();
        let j = AlternatingForm::standard(&f3, 4, 2);
        let lag = Subspace::coordinate(&f3, 4, &[0, 2]);
        assert_eq!(sg_tangent(&j, &lag).unwrap().rows(), 3);
        let line = Subspace::coordinate(&f3, 4, &[1]);
        assert_eq!(sg_tangent(&j, &line).unwrap().rows(), 3);
        let j2 = AlternatingForm::standard(&f3, 2, 1);
        assert_eq!(sg_tangent(&j2, &Subspace::coordinate(&f3, 2, &[0])).unwrap().rows(), 1);
        let bad = Subspace::coordinate(&f3, 4, &[0, 1]);
        assert_eq!(sg_tangent(&j, &bad).unwrap_err(), Error::NotIsotropic);
    }

    #[test]
    fn smoothness_with_equal_forms() {
        let f3 = Field::prime(3).unwrap();
        let j = AlternatingForm::standard(&f3, 4, 2);
        let lag = Subspace::coordinate(&f3, 4, &[0, 2]);
        let rep = msg_smoothness_at(&j, &j, &lag).unwrap();
        assert_eq!(rep.tangent_codimension, 1);
        assert!(!rep.smooth());
        assert!(rep.agreement);
        let line = Subspace::coordinate(&f3, 4, &[0]);
        let rep = msg_smoothness_at(&j, &j, &line).unwrap();
        assert_eq!(rep.tangent_codimension, 0);
        assert!(rep.smooth() && rep.agreement);
    }

    #[test]
    fn normalizing() {
        let f = q();
        let psi = Matrix::from_ints(&f, &[&[1, 2, 3], &[0, 1, 4]]);
        let qm = normalizing_change(&psi).unwrap();
        assert_eq!(psi.mul(&qm).unwrap(), Matrix::eye(&f, 2, 3));
    }
}

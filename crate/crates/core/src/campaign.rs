//! Seeded verification campaigns over the library's constructions. Each
//! campaign returns a serializable report listing every exception it met;
//! reports are deterministic functions of their configuration.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bn::{binom2, codim_bound_single, rho, rho_omega};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{AlternatingForm, Subspace};
use crate::grassmann::{
    degeneration_witness, fit_dimension_holdout, strata_counts, CountOptions, DimensionFit, StratumReport,
    SubspaceStream, DEFAULT_CEILING,
};
use crate::jordan::generalized_jordan_form;
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::residue::{
    build_residue_model, global_section_subspace, h0_line, pencil_injectivity, RationalFunction, SplitBundle,
};
use crate::tangent::{
    condition_matrix, dependence_space, msg_smoothness_at, normalizing_change, pencil_rank_drop,
    extract_dependence_vectors, FormPencil,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sample orders tried by the dimension sweep, in order.
pub const SWEEP_Q_LIST: [u64; 15] = [2, 3, 5, 7, 4, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27];

fn c2(m: i64) -> i64 {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

/// Expected dimension of the isotropic locus: `k(r−k) − C(k,2) + C(k−δ,2)`.
pub fn expected_total_degree(r: usize, delta: usize, k: usize) -> i64 {
    let (r, delta, k) = (r as i64, delta as i64, k as i64);
    k * (r - k) - c2(k) + c2(k - delta)
}

/// Expected dimension of the stratum `T_i`: `i(p−i) + (k−i)(r−k) − C(k−i,2)`.
pub fn expected_stratum_degree(r: usize, p: usize, k: usize, i: usize) -> i64 {
    let (r, p, k, i) = (r as i64, p as i64, k as i64, i as i64);
    i * (p - i) + (k - i) * (r - k) - c2(k - i)
}

/// `max(0, k−δ) ..= min(k, p)`.
pub fn stratum_window(r: usize, delta: usize, k: usize) -> (usize, usize) {
    let p = r - 2 * delta;
    (k.saturating_sub(delta), k.min(p))
}

fn random_scalar(field: &Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field.order() {
        Some(q) => {
            let all = field.elements().unwrap();
            all[rng.gen_range(0..q as usize)].clone()
        }
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn random_matrix(field: &Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data = (0..rows * cols).map(|_| random_scalar(field, rng)).collect();
    Matrix::new(field, rows, cols, data).unwrap()
}

fn random_invertible(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

fn random_alternating(field: &Field, r: usize, rng: &mut ChaCha8Rng) -> AlternatingForm {
    let mut g = Matrix::zeros(field, r, r);
    for i in 0..r {
        for j in i + 1..r {
            let x = random_scalar(field, rng);
            g.set(j, i, field.neg(&x));
            g.set(i, j, x);
        }
    }
    AlternatingForm::new(g).unwrap()
}

fn random_symplectic(field: &Field, r: usize, rng: &mut ChaCha8Rng) -> AlternatingForm {
    loop {
        let f = random_alternating(field, r, rng);
        if f.is_symplectic() {
            return f;
        }
    }
}

/// `P G Pᵀ` for a random invertible `P`: the same form in a random basis.
fn disguised_standard(field: &Field, r: usize, delta: usize, rng: &mut ChaCha8Rng) -> AlternatingForm {
    let p = random_invertible(field, r, rng);
    let g = AlternatingForm::standard(field, r, delta).gram().clone();
    AlternatingForm::new(p.mul(&g).unwrap().mul(&p.transpose()).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// stratified dimension law

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub max_r: usize,
    pub max_k: usize,
    pub q_list: Vec<u64>,
    /// Samples taken before any fit is attempted.
    pub initial_samples: usize,
    /// Largest samples kept out of the interpolation and used to validate it.
    pub holdout: usize,
    pub ceiling: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_r: 6,
            max_k: 4,
            q_list: SWEEP_Q_LIST.to_vec(),
            initial_samples: 4,
            holdout: 2,
            ceiling: DEFAULT_CEILING,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumFit {
    pub i: usize,
    pub expected_degree: i64,
    pub fit: DimensionFit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub r: usize,
    pub delta: usize,
    pub p: usize,
    pub k: usize,
    pub expected_degree: i64,
    pub samples: Vec<StratumReport>,
    pub total_fit: Option<DimensionFit>,
    pub strata_fits: Vec<StratumFit>,
    /// Why no validated fit was found with every listed sample.
    pub fit_error: Option<String>,
}

impl SweepEntry {
    /// Degree of every fit matches the expected dimension.
    pub fn law_holds(&self) -> bool {
        let total = matches!(&self.total_fit, Some(f) if f.degree.map(|d| d as i64) == Some(self.expected_degree));
        total
            && self
                .strata_fits
                .iter()
                .all(|s| s.fit.degree.map(|d| d as i64) == Some(s.expected_degree))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub tool: String,
    pub version: String,
    pub config: SweepConfig,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            let tag = format!("r={} delta={} k={}", e.r, e.delta, e.k);
            if let Some(err) = &e.fit_error {
                out.push(format!("{tag}: {err}"));
                continue;
            }
            let got = e.total_fit.as_ref().and_then(|f| f.degree);
            if got.map(|d| d as i64) != Some(e.expected_degree) {
                out.push(format!("{tag}: total degree {got:?}, expected {}", e.expected_degree));
            }
            for s in &e.strata_fits {
                if s.fit.degree.map(|d| d as i64) != Some(s.expected_degree) {
                    out.push(format!(
                        "{tag} i={}: degree {:?}, expected {}",
                        s.i, s.fit.degree, s.expected_degree
                    ));
                }
            }
        }
        out
    }
}

fn fit_all(
    samples: &[StratumReport],
    window: (usize, usize),
    holdout: usize,
) -> Result<(DimensionFit, Vec<(usize, DimensionFit)>)> {
    let totals: BTreeMap<u64, u64> = samples.iter().map(|s| (s.params.q, s.total)).collect();
    let total = fit_dimension_holdout(&totals, holdout)?;
    let mut strata = Vec::new();
    for i in window.0..=window.1 {
        let pts: BTreeMap<u64, u64> = samples
            .iter()
            .map(|s| (s.params.q, s.strata.get(&i).copied().unwrap_or(0)))
            .collect();
        strata.push((i, fit_dimension_holdout(&pts, holdout)?));
    }
    Ok((total, strata))
}

/// Counts the standard form of every rank on `F_q^r` for `r ≤ max_r` and
/// `k ≤ min(max_k, r−δ)`, adding sample orders from the list until the total
/// and every stratum in the nonemptiness window admit a validated fit.
pub fn dimension_sweep(cfg: &SweepConfig, jobs: usize) -> Result<SweepReport> {
    let opts = CountOptions {
        ceiling: cfg.ceiling,
        jobs,
    };
    let mut fields: BTreeMap<u64, Field> = BTreeMap::new();
    for &q in &cfg.q_list {
        fields.insert(q, Field::of_order(q)?);
    }
    let mut entries = Vec::new();
    for r in 1..=cfg.max_r {
        for delta in 0..=r / 2 {
            let p = r - 2 * delta;
            for k in 0..=cfg.max_k.min(r - delta) {
                let window = stratum_window(r, delta, k);
                let mut samples: Vec<StratumReport> = Vec::new();
                let mut outcome = Err(Error::FitMismatch("no samples".into()));
                for (idx, &q) in cfg.q_list.iter().enumerate() {
                    let form = AlternatingForm::standard(&fields[&q], r, delta);
                    samples.push(strata_counts(&form, k, opts)?);
                    if idx + 1 < cfg.initial_samples.max(cfg.holdout + 2) {
                        continue;
                    }
                    let mut sorted = samples.clone();
                    sorted.sort_by_key(|s| s.params.q);
                    outcome = fit_all(&sorted, window, cfg.holdout);
                    if outcome.is_ok() {
                        break;
                    }
                }
                samples.sort_by_key(|s| s.params.q);
                let (total_fit, strata_fits, fit_error) = match outcome {
                    Ok((t, s)) => (
                        Some(t),
                        s.into_iter()
                            .map(|(i, fit)| StratumFit {
                                i,
                                expected_degree: expected_stratum_degree(r, p, k, i),
                                fit,
                            })
                            .collect(),
                        None,
                    ),
                    Err(e) => (None, Vec::new(), Some(e.to_string())),
                };
                entries.push(SweepEntry {
                    r,
                    delta,
                    p,
                    k,
                    expected_degree: expected_total_degree(r, delta, k),
                    samples,
                    total_fit,
                    strata_fits,
                    fit_error,
                });
            }
        }
    }
    Ok(SweepReport {
        tool: "symgrass".into(),
        version: VERSION.into(),
        config: cfg.clone(),
        entries,
    })
}

// ---------------------------------------------------------------------------
// nonemptiness window

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub reports_checked: usize,
    pub exceptions: Vec<String>,
}

/// Checks, for every `r ≤ max_r`, every rank, every `k ≤ min(max_k, r)` and
/// every listed `q`, that stratum `i` is populated exactly on the window,
/// and that the isotropic locus is nonempty exactly when `k ≤ r − δ`.
pub fn window_campaign(max_r: usize, max_k: usize, qs: &[u64], opts: CountOptions) -> Result<WindowReport> {
    let mut exceptions = Vec::new();
    let mut checked = 0;
    for &q in qs {
        let field = Field::of_order(q)?;
        for r in 1..=max_r {
            for delta in 0..=r / 2 {
                let form = AlternatingForm::standard(&field, r, delta);
                for k in 0..=max_k.min(r) {
                    let rep = strata_counts(&form, k, opts)?;
                    checked += 1;
                    let tag = format!("q={q} r={r} delta={delta} k={k}");
                    let nonempty = rep.total > 0;
                    if nonempty != (k <= r - delta) {
                        exceptions.push(format!("{tag}: total {} but k ≤ r−δ is {}", rep.total, k <= r - delta));
                    }
                    if k > r - delta {
                        continue;
                    }
                    let (lo, hi) = stratum_window(r, delta, k);
                    for i in 0..=k {
                        let populated = rep.strata.get(&i).is_some_and(|&c| c > 0);
                        if populated != (lo <= i && i <= hi) {
                            exceptions.push(format!("{tag}: stratum {i} populated = {populated}, window {lo}..={hi}"));
                        }
                    }
                }
            }
        }
    }
    Ok(WindowReport {
        reports_checked: checked,
        exceptions,
    })
}

// ---------------------------------------------------------------------------
// degeneration witnesses

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub seed: u64,
    pub subspaces_enumerated: u64,
    pub isotropic: u64,
    pub witnesses_checked: u64,
    pub exceptions: Vec<String>,
}

/// Runs the degeneration family at every isotropic point of every non-minimal
/// stratum, for a randomly based form of each rank on `F_q^r`, `r ≤ max_r`.
pub fn witness_campaign(max_r: usize, qs: &[u64], seed: u64) -> Result<WitnessReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = WitnessReport {
        seed,
        subspaces_enumerated: 0,
        isotropic: 0,
        witnesses_checked: 0,
        exceptions: Vec::new(),
    };
    for &q in qs {
        let field = Field::of_order(q)?;
        for r in 1..=max_r {
            for delta in 0..=r / 2 {
                let form = disguised_standard(&field, r, delta, &mut rng);
                for k in 1..=r {
                    let minimal = k.saturating_sub(delta);
                    for v in SubspaceStream::new(&field, r, k, DEFAULT_CEILING)? {
                        rep.subspaces_enumerated += 1;
                        if !form.is_isotropic(&v)? {
                            continue;
                        }
                        rep.isotropic += 1;
                        let i = v.intersection_dim(form.radical());
                        if i < minimal {
                            rep.exceptions
                                .push(format!("q={q} r={r} delta={delta} k={k}: isotropic point with i = {i}"));
                        }
                        if i <= minimal {
                            continue;
                        }
                        let tag = format!("q={q} r={r} delta={delta} k={k} i={i}");
                        match degeneration_witness(&form, &v) {
                            Ok(w) => {
                                rep.witnesses_checked += 1;
                                if !w.holds(k) {
                                    rep.exceptions.push(format!("{tag}: family check failed"));
                                }
                            }
                            Err(e) => rep.exceptions.push(format!("{tag}: {e}")),
                        }
                    }
                }
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// pencils: dependence of conditions versus rank drop

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PencilKind {
    Random,
    Planted,
    Adversarial,
}

#[derive(Clone, Debug)]
pub struct PencilInstance {
    pub kind: PencilKind,
    pub label: String,
    pub pencil: FormPencil,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilConfig {
    pub seed: u64,
    pub random_per_finite_field: usize,
    pub random_rationals: usize,
    /// Pencils with a planted rank drop, in addition to the random ones.
    pub planted_per_finite_field: usize,
    pub planted_rationals: usize,
}

impl Default for PencilConfig {
    fn default() -> Self {
        PencilConfig {
            seed: 20240611,
            random_per_finite_field: 500,
            random_rationals: 100,
            planted_per_finite_field: 125,
            planted_rationals: 25,
        }
    }
}

/// A surjective pencil; when `planted`, `λ_0 ψ_1 + ψ_2` kills a random plane of `V`.
fn random_pencil(field: &Field, k: usize, n: usize, planted: bool, rng: &mut ChaCha8Rng) -> FormPencil {
    loop {
        let psi1 = random_matrix(field, k, n, rng);
        let psi2 = if planted {
            let lambda = random_scalar(field, rng);
            let u = random_invertible(field, k, rng);
            let mut tail = Matrix::zeros(field, k, n);
            for i in 2..k {
                for c in 0..n {
                    tail.set(i, c, random_scalar(field, rng));
                }
            }
            let c = u.inverse().unwrap().mul(&tail).unwrap();
            c.sub(&psi1.scale(&lambda)).unwrap()
        } else {
            random_matrix(field, k, n, rng)
        };
        let p = FormPencil::new(psi1, psi2).unwrap();
        if p.surjective[0] && p.surjective[1] {
            return p;
        }
    }
}

/// Jordan block layouts as `(size, eigenvalue index)`.
const BLOCK_FAMILIES: [&[(usize, usize)]; 10] = [
    &[(1, 0), (1, 0)],
    &[(2, 0), (2, 0)],
    &[(2, 0), (1, 0)],
    &[(3, 0)],
    &[(2, 0), (1, 1)],
    &[(1, 0), (1, 0), (1, 1)],
    &[(2, 0), (2, 1)],
    &[(1, 0), (1, 0), (2, 0)],
    &[(4, 0)],
    &[(1, 0), (1, 1), (1, 2), (1, 0)],
];

#[derive(Clone, Copy, Debug)]
enum RightPart {
    Zero,
    Random,
    /// One nonzero entry, at the end of a chain.
    ChainEnd,
}

fn jordan_block_matrix(field: &Field, blocks: &[(usize, usize)]) -> Matrix {
    let k: usize = blocks.iter().map(|b| b.0).sum();
    let eig: Vec<Scalar> = (0..3).map(|i| field.from_i64(i as i64 + 1)).collect();
    let mut a = Matrix::zeros(field, k, k);
    let mut row = 0;
    for &(size, e) in blocks {
        for j in 0..size {
            a.set(row + j, row + j, eig[e].clone());
            if j + 1 < size {
                a.set(row + j, row + j + 1, field.one());
            }
        }
        row += size;
    }
    a
}

/// Two copies of the companion matrix of an irreducible `x² − c`: the rank
/// drops by two only at a pair of conjugate points.
fn companion_pair_matrix(field: &Field) -> Matrix {
    let c = (2..)
        .map(|c| field.from_i64(c))
        .find(|c| Polynomial::new(field.clone(), vec![field.neg(c), field.zero(), field.one()]).roots().is_empty())
        .unwrap();
    let mut a = Matrix::zeros(field, 4, 4);
    for b in [0, 2] {
        a.set(b, b + 1, field.one());
        a.set(b + 1, b, c.clone());
    }
    a
}

/// The pencil `([I | 0], [L | R])` in random bases, reparametrized by a random
/// invertible `2 × 2` matrix. `R` is shaped by `right`; `chain_row` is where a
/// `ChainEnd` entry goes.
fn disguised_pencil(
    field: &Field,
    left: &Matrix,
    chain_row: usize,
    right: RightPart,
    extra: usize,
    rng: &mut ChaCha8Rng,
) -> FormPencil {
    let k = left.rows();
    let n = k + extra;
    let mut a = Matrix::zeros(field, k, n);
    for i in 0..k {
        for j in 0..k {
            a.set(i, j, left.get(i, j).clone());
        }
    }
    match right {
        RightPart::Zero => {}
        RightPart::Random => {
            for i in 0..k {
                for c in k..n {
                    a.set(i, c, random_scalar(field, rng));
                }
            }
        }
        RightPart::ChainEnd => {
            if n > k {
                a.set(chain_row, k, field.one());
            }
        }
    }
    let base = FormPencil::new(Matrix::eye(field, k, n), a).unwrap();
    loop {
        let p = random_invertible(field, k, rng);
        let q = random_invertible(field, n, rng);
        let rot = random_invertible(field, 2, rng);
        let m1 = p.mul(&base.psi[0]).unwrap().mul(&q).unwrap();
        let m2 = p.mul(&base.psi[1]).unwrap().mul(&q).unwrap();
        let psi1 = m1.scale(rot.get(0, 0)).add(&m2.scale(rot.get(0, 1))).unwrap();
        let psi2 = m1.scale(rot.get(1, 0)).add(&m2.scale(rot.get(1, 1))).unwrap();
        let out = FormPencil::new(psi1, psi2).unwrap();
        if out.surjective[0] && out.surjective[1] {
            return out;
        }
    }
}

/// The pencil instances of the equivalence campaign, in a fixed order.
pub fn pencil_instances(cfg: &PencilConfig) -> Result<Vec<(Field, Vec<PencilInstance>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for (field, random, planted) in [
        (Field::prime(5)?, cfg.random_per_finite_field, cfg.planted_per_finite_field),
        (Field::prime(7)?, cfg.random_per_finite_field, cfg.planted_per_finite_field),
        (Field::rationals(), cfg.random_rationals, cfg.planted_rationals),
    ] {
        let mut list = Vec::new();
        for idx in 0..random + planted {
            let k = rng.gen_range(2..=4);
            let n = rng.gen_range(k..=7);
            let planted = idx >= random;
            let kind = if planted { PencilKind::Planted } else { PencilKind::Random };
            list.push(PencilInstance {
                kind,
                label: format!("{field} #{idx} k={k} n={n}"),
                pencil: random_pencil(&field, k, n, planted, &mut rng),
            });
        }
        let rights = [RightPart::Zero, RightPart::Random, RightPart::ChainEnd];
        for (fam, blocks) in BLOCK_FAMILIES.iter().enumerate() {
            for (ridx, right) in rights.into_iter().enumerate() {
                let k: usize = blocks.iter().map(|b| b.0).sum();
                let extra = (1 + (fam + ridx) % 3).min(7 - k);
                let left = jordan_block_matrix(&field, blocks);
                list.push(PencilInstance {
                    kind: PencilKind::Adversarial,
                    label: format!("{field} family {fam} right {right:?} n={}", k + extra),
                    pencil: disguised_pencil(&field, &left, blocks[0].0 - 1, right, extra, &mut rng),
                });
            }
        }
        for (ridx, right) in rights.into_iter().enumerate() {
            let extra = 1 + ridx;
            list.push(PencilInstance {
                kind: PencilKind::Adversarial,
                label: format!("{field} companion pair right {right:?} n={}", 4 + extra),
                pencil: disguised_pencil(&field, &companion_pair_matrix(&field), 1, right, extra, &mut rng),
            });
        }
        out.push((field, list));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldTally {
    pub field: String,
    pub random: usize,
    pub planted: usize,
    pub adversarial: usize,
    pub dependent: usize,
    pub witness_in_extension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractionTally {
    pub dependent_instances: usize,
    pub checked: usize,
    pub vectors_checked: usize,
    pub skipped_unsplit: usize,
    pub exceptions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub config: PencilConfig,
    pub fields: Vec<FieldTally>,
    pub disagreements: Vec<String>,
    /// Certificates whose explicit dependence fails to annihilate the conditions.
    pub certificate_failures: Vec<String>,
    pub extraction: ExtractionTally,
}

enum Extraction {
    Checked(usize),
    Unsplit,
}

/// Moves `ψ_1` to `[I | 0]`, puts the transformed `ψ_2` into generalized
/// Jordan form (over an extension when needed) and extracts dependence vectors
/// from every basis vector of the dependence space.
fn extraction_check(p: &FormPencil, expected_dim: usize) -> Result<Extraction> {
    let q = normalizing_change(&p.psi[0])?;
    let a = p.psi[1].mul(&q)?;
    let g = match generalized_jordan_form(&a) {
        Ok(g) => g,
        Err(Error::SplitFailure) => return Ok(Extraction::Unsplit),
        Err(e) => return Err(e),
    };
    let k = p.k();
    let normal = FormPencil::new(Matrix::eye(&g.field, k, p.n()), g.normal_form.clone())?;
    let dep = dependence_space(&normal);
    if dep.rows() != expected_dim {
        return Err(Error::InvariantViolation(format!(
            "dependence dimension {} after normalization, {expected_dim} before",
            dep.rows()
        )));
    }
    let mut vectors = 0;
    for x in dep.to_rows() {
        vectors += extract_dependence_vectors(&g.normal_form, &x)?.len();
    }
    Ok(Extraction::Checked(vectors))
}

pub fn pencil_campaign(cfg: &PencilConfig) -> Result<PencilReport> {
    let mut fields = Vec::new();
    let mut disagreements = Vec::new();
    let mut certificate_failures = Vec::new();
    let mut ext = ExtractionTally {
        dependent_instances: 0,
        checked: 0,
        vectors_checked: 0,
        skipped_unsplit: 0,
        exceptions: Vec::new(),
    };
    for (field, list) in pencil_instances(cfg)? {
        let mut tally = FieldTally {
            field: field.to_string(),
            random: 0,
            planted: 0,
            adversarial: 0,
            dependent: 0,
            witness_in_extension: 0,
        };
        for inst in &list {
            match inst.kind {
                PencilKind::Random => tally.random += 1,
                PencilKind::Planted => tally.planted += 1,
                PencilKind::Adversarial => tally.adversarial += 1,
            }
            let dim = dependence_space(&inst.pencil).rows();
            let cert = pencil_rank_drop(&inst.pencil)?;
            if (dim > 0) != cert.is_dependent() {
                disagreements.push(format!(
                    "{}: dependence dimension {dim}, pencil criterion dependent = {}",
                    inst.label,
                    cert.is_dependent()
                ));
            }
            if let Some(w) = cert.witness() {
                if w.degree > 1 {
                    tally.witness_in_extension += 1;
                }
                let sys = condition_matrix(&inst.pencil.embed(&w.embedding).psi)?;
                if sys.matrix.vec_mul(&w.coefficients).iter().any(|x| !w.field.is_zero(x))
                    || w.coefficients.iter().all(|x| w.field.is_zero(x))
                {
                    certificate_failures.push(format!("{}: witness dependence is not a dependence", inst.label));
                }
            }
            if dim == 0 {
                continue;
            }
            tally.dependent += 1;
            ext.dependent_instances += 1;
            match extraction_check(&inst.pencil, dim) {
                Ok(Extraction::Checked(v)) => {
                    ext.checked += 1;
                    ext.vectors_checked += v;
                }
                Ok(Extraction::Unsplit) => ext.skipped_unsplit += 1,
                Err(e) => ext.exceptions.push(format!("{}: {e}", inst.label)),
            }
        }
        fields.push(tally);
    }
    Ok(PencilReport {
        config: cfg.clone(),
        fields,
        disagreements,
        certificate_failures,
        extraction: ext,
    })
}

// ---------------------------------------------------------------------------
// smoothness of the doubly symplectic Grassmannian

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MsgReport {
    pub seed: u64,
    pub pairs: usize,
    pub planes_checked: usize,
    pub smooth: usize,
    pub singular: usize,
    pub disagreements: Vec<String>,
}

/// Over `F_3^4`, `k = 2`: for each pair of symplectic forms, every plane
/// isotropic for both is checked for agreement between the tangent
/// codimension and the pencil criterion. Pairs alternate between independent
/// random forms, forms sharing a planted isotropic plane, and proportional forms.
pub fn msg_campaign(pairs: usize, seed: u64) -> Result<MsgReport> {
    let f = Field::prime(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planes: Vec<Subspace> = SubspaceStream::new(&f, 4, 2, DEFAULT_CEILING)?.collect();
    let mut rep = MsgReport {
        seed,
        pairs,
        planes_checked: 0,
        smooth: 0,
        singular: 0,
        disagreements: Vec::new(),
    };
    for idx in 0..pairs {
        let f1 = random_symplectic(&f, 4, &mut rng);
        let f2 = match idx % 6 {
            5 => f1.scale(&f.from_i64(2)),
            1 | 3 => {
                let shared: Vec<&Subspace> = planes.iter().filter(|v| f1.is_isotropic(v).unwrap()).collect();
                let v = shared[rng.gen_range(0..shared.len())];
                loop {
                    let g = random_symplectic(&f, 4, &mut rng);
                    if g.is_isotropic(v)? {
                        break g;
                    }
                }
            }
            _ => random_symplectic(&f, 4, &mut rng),
        };
        for v in &planes {
            if !f1.is_isotropic(v)? || !f2.is_isotropic(v)? {
                continue;
            }
            rep.planes_checked += 1;
            let s = msg_smoothness_at(&f1, &f2, v)?;
            if s.smooth() {
                rep.smooth += 1;
            } else {
                rep.singular += 1;
            }
            if !s.agreement {
                rep.disagreements.push(format!(
                    "pair {idx}, plane {:?}: codimension {}, dependent = {}",
                    v.basis().to_rows(),
                    s.tangent_codimension,
                    s.certificate.is_dependent()
                ));
            }
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// residue models

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueCase {
    pub field: String,
    pub bundle: SplitBundle,
    pub d_points: Vec<String>,
    pub delta_points: Vec<String>,
    pub phi: Vec<String>,
    pub dim_tail: usize,
    pub dim_regular: usize,
    pub regular_radical: usize,
    pub sections: usize,
    pub sections_meet_regular: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueCampaignReport {
    pub seed: u64,
    pub cases: Vec<ResidueCase>,
    pub exceptions: Vec<String>,
}

fn random_points(field: &Field, count: usize, avoid: &Polynomial, rng: &mut ChaCha8Rng) -> Option<Vec<Scalar>> {
    let pool: Vec<Scalar> = match field.elements() {
        Some(all) => all,
        None => {
            let mut v = Vec::new();
            for num in -6..=6 {
                for den in 1..=3 {
                    v.push(field.rational(num, den));
                }
            }
            v.sort_by(|a, b| field.cmp_scalars(a, b));
            v.dedup();
            v
        }
    };
    let allowed: Vec<Scalar> = pool.into_iter().filter(|p| !field.is_zero(&avoid.eval(p))).collect();
    if allowed.len() < count {
        return None;
    }
    let mut chosen: Vec<Scalar> = Vec::new();
    while chosen.len() < count {
        let p = allowed[rng.gen_range(0..allowed.len())].clone();
        if !chosen.contains(&p) {
            chosen.push(p);
        }
    }
    Some(chosen)
}

/// Random models with `d ∈ [−4, 0]`, `1 ≤ deg D ≤ 3`, `δ ≤ 2` and twists chosen
/// so that the vanishing conditions hold.
pub fn residue_campaign(per_field: usize, seed: u64) -> Result<ResidueCampaignReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ResidueCampaignReport {
        seed,
        cases: Vec::new(),
        exceptions: Vec::new(),
    };
    for field in [Field::rationals(), Field::prime(7)?] {
        let mut made = 0;
        while made < per_field {
            let n = rng.gen_range(1..=3i64);
            let delta = rng.gen_range(0..=2i64);
            let top = 0.min(delta - 2);
            let d = rng.gen_range(-4..=top);
            let twists: Vec<i64> = (d - 12..=12)
                .filter(|&a| {
                    let b = d - a;
                    [a, b].iter().all(|&t| t + n >= -1 && t - n - delta <= -1)
                })
                .collect();
            if twists.is_empty() {
                continue;
            }
            let a = twists[rng.gen_range(0..twists.len())];
            let bundle = SplitBundle::new(a, d - a);
            let phi_deg = (-2 - d + delta) as usize;
            let phi = loop {
                let c: Vec<Scalar> = (0..=phi_deg).map(|_| random_scalar(&field, &mut rng)).collect();
                let p = Polynomial::new(field.clone(), c);
                if !p.is_zero() {
                    break p;
                }
            };
            let Some(pts) = random_points(&field, (n + delta) as usize, &phi, &mut rng) else {
                continue;
            };
            let (dp, deltap) = pts.split_at(n as usize);
            let tag = format!(
                "{field} O({a})+O({}) D={:?} Delta={:?} phi={}",
                d - a,
                dp.iter().map(|x| field.format_scalar(x)).collect::<Vec<_>>(),
                deltap.iter().map(|x| field.format_scalar(x)).collect::<Vec<_>>(),
                phi.display()
            );
            made += 1;
            let phi_rf = RationalFunction::from_polynomial(phi.clone());
            let model = match build_residue_model(&field, bundle, dp, deltap, &phi_rf) {
                Ok(m) => m,
                Err(e) => {
                    rep.exceptions.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            let s = match global_section_subspace(&model) {
                Ok(s) => s,
                Err(e) => {
                    rep.exceptions.push(format!("{tag}: {e}"));
                    continue;
                }
            };
            let radical = model.regular_radical()?.dim();
            let case = ResidueCase {
                field: field.to_string(),
                bundle,
                d_points: dp.iter().map(|x| field.format_scalar(x)).collect(),
                delta_points: deltap.iter().map(|x| field.format_scalar(x)).collect(),
                phi: phi.coeffs().iter().map(|x| field.format_scalar(x)).collect(),
                dim_tail: model.dim(),
                dim_regular: model.regular.dim(),
                regular_radical: radical,
                sections: s.dim(),
                sections_meet_regular: s.intersection_dim(&model.regular),
            };
            let n = n as usize;
            let delta = delta as usize;
            let checks = [
                (model.form.gram().det() != field.zero(), "Gram matrix is singular".to_string()),
                (case.dim_tail == 4 * n + 2 * delta, format!("tail dimension {}", case.dim_tail)),
                (case.dim_regular == 2 * n + 2 * delta, format!("regular dimension {}", case.dim_regular)),
                (radical == 2 * n, format!("regular radical {radical}")),
                (model.form.is_isotropic(&s)?, "sections not isotropic".to_string()),
                (
                    case.sections as i64 == d + 2 * n as i64 + 2,
                    format!("section dimension {}", case.sections),
                ),
                (
                    case.sections_meet_regular as i64 == h0_line(a) + h0_line(d - a),
                    format!("sections meet regular tails in dimension {}", case.sections_meet_regular),
                ),
            ];
            for (ok, msg) in checks {
                if !ok {
                    rep.exceptions.push(format!("{tag}: {msg}"));
                }
            }
            rep.cases.push(case);
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// injectivity for a pencil of residue forms

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityCase {
    pub field: String,
    pub bundle: SplitBundle,
    pub d_points: Vec<String>,
    pub injective: bool,
    pub min_injective_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityCampaignReport {
    pub seed: u64,
    pub cases: Vec<InjectivityCase>,
    pub failures: Vec<String>,
}

/// `L = O(−3)` with `φ ∈ {1, z}` and random reduced `D` of degree 3 to 5 avoiding `z = 0`.
pub fn injectivity_campaign(per_field: usize, seed: u64) -> Result<InjectivityCampaignReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = InjectivityCampaignReport {
        seed,
        cases: Vec::new(),
        failures: Vec::new(),
    };
    for field in [Field::rationals(), Field::prime(7)?] {
        let phis = [
            RationalFunction::constant(&field, field.one()),
            RationalFunction::from_polynomial(Polynomial::x(&field)),
        ];
        for _ in 0..per_field {
            let n = rng.gen_range(3..=5i64);
            let twists: Vec<i64> = (-1..=1)
                .filter(|&a| {
                    let b = -3 - a;
                    [a, b].iter().all(|&t| t + n >= -1 && t - n <= -1)
                })
                .collect();
            let a = twists[rng.gen_range(0..twists.len())];
            let bundle = SplitBundle::new(a, -3 - a);
            let pts = random_points(&field, n as usize, &Polynomial::x(&field), &mut rng)
                .ok_or_else(|| Error::InvariantViolation("not enough points".into()))?;
            let r = pencil_injectivity(&field, bundle, &pts, &phis)?;
            let case = InjectivityCase {
                field: field.to_string(),
                bundle,
                d_points: pts.iter().map(|x| field.format_scalar(x)).collect(),
                injective: r.injective,
                min_injective_degree: r.min_injective_degree,
            };
            if !r.injective {
                rep.failures.push(format!("{case:?}"));
            }
            rep.cases.push(case);
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// formula identities

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub exceptions: Vec<String>,
}

/// The canonical-determinant identity for `1 ≤ k, g ≤ 50`, the `ρ(2, g−2, 2, g)`
/// identity for `g ≤ 1000`, and positivity of the single-form codimension
/// bound for every admissible parameter set with `r ≤ 12` and `k ≥ 1`.
pub fn identity_campaign() -> IdentityReport {
    let mut checked = 0;
    let mut exceptions = Vec::new();
    for k in 1..=50 {
        for g in 1..=50 {
            checked += 1;
            if rho_omega(k, g) != rho(2, 2 * g - 2, k, g) - g + binom2(k) {
                exceptions.push(format!("rho_omega identity fails at k={k} g={g}"));
            }
        }
    }
    for g in -1000..=1000 {
        checked += 1;
        if rho(2, g - 2, 2, g) - 1 != (2 * g - 8).into() {
            exceptions.push(format!("rho(2, g-2, 2, g) - 1 != 2g - 8 at g={g}"));
        }
    }
    for r in 0..=12 {
        for s in 0..=r {
            for t in 0..=r / 2 {
                for k in 1..=t {
                    for delta in 0..=s / 2 {
                        checked += 1;
                        match codim_bound_single(k, r, s, t, delta) {
                            Ok(v) if v >= 1.into() => {}
                            Ok(v) => exceptions.push(format!("bound {v} at (k,r,s,t,δ)=({k},{r},{s},{t},{delta})")),
                            Err(e) => exceptions.push(format!("{e}")),
                        }
                    }
                }
            }
        }
    }
    IdentityReport { checked, exceptions }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_degrees() {
        assert_eq!(expected_total_degree(4, 2, 2), 3);
        assert_eq!(expected_total_degree(4, 1, 2), 3);
        assert_eq!(expected_stratum_degree(4, 2, 2, 1), 3);
        assert_eq!(expected_stratum_degree(4, 2, 2, 2), 0);
        assert_eq!(stratum_window(4, 1, 2), (1, 2));
    }

    #[test]
    fn small_sweep() {
        let cfg = SweepConfig {
            max_r: 3,
            max_k: 2,
            ..SweepConfig::default()
        };
        let rep = dimension_sweep(&cfg, 1).unwrap();
        assert!(rep.violations().is_empty(), "{:?}", rep.violations());
    }

    #[test]
    fn identities() {
        assert!(identity_campaign().exceptions.is_empty());
    }
}

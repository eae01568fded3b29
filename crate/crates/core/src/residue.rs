//! Residue pairings for split rank-2 bundles on the projective line.
//!
//! Sections of `O(m)` are rational functions in the affine coordinate `z`,
//! regular at infinity when their degree is at most `m`; the canonical bundle
//! is `O(−2)` through `f ↦ f dz`. For `E = O(a) ⊕ O(b)`, reduced divisors `D`
//! and `Δ` of affine points, and `φ` a section of `O(−2 − d + δ)`, the space
//! `E(D)/E(−D−Δ)` is recorded by Laurent tails: orders `−1, 0` at each point of
//! `D` and order `0` at each point of `Δ`, per summand. The pairing of two tails
//! is `Σ_P res_P h (x_1 y_2 − x_2 y_1) dz` with `h = φ / Π_{Q∈Δ}(z − Q)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::forms::{AlternatingForm, Subspace};
use crate::matrix::Matrix;
use crate::poly::{maximal_minors_gcd, Polynomial};

/// `num / den` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<RationalFunction> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch("numerator and denominator over different fields".into()));
        }
        if den.is_zero() {
            return Err(Error::Malformed("zero denominator".into()));
        }
        let f = den.field().clone();
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Polynomial::one(&f),
            });
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let lead = f.inv(den.leading().unwrap()).unwrap();
        Ok(RationalFunction {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_polynomial(p: Polynomial) -> RationalFunction {
        let one = Polynomial::one(p.field());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(field: &Field, c: Scalar) -> RationalFunction {
        Self::from_polynomial(Polynomial::constant(field, c))
    }

    /// `(z − p)^e` for any integer `e`.
    pub fn local_power(field: &Field, p: &Scalar, e: i64) -> RationalFunction {
        let lin = Polynomial::linear(field, p).pow(e.unsigned_abs() as usize);
        if e >= 0 {
            Self::from_polynomial(lin)
        } else {
            RationalFunction {
                num: Polynomial::one(field),
                den: lin,
            }
        }
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg num − deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RationalFunction::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn scale(&self, c: &Scalar) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    /// Value at a point where the function is regular.
    pub fn eval(&self, p: &Scalar) -> Option<Scalar> {
        let f = self.field();
        f.div(&self.num.eval(p), &self.den.eval(p))
    }

    /// Multiplicity of `z − p` in the denominator.
    pub fn pole_order(&self, p: &Scalar) -> usize {
        let lin = Polynomial::linear(self.field(), p);
        let mut d = self.den.clone();
        let mut m = 0;
        while let Some(q) = d.exact_div(&lin) {
            d = q;
            m += 1;
        }
        m
    }

    /// Coefficients of `(z − p)^o` for `o = lo..=hi` in the Laurent expansion at `p`.
    pub fn laurent(&self, p: &Scalar, lo: i64, hi: i64) -> Vec<Scalar> {
        let f = self.field().clone();
        if hi < lo {
            return Vec::new();
        }
        let m = self.pole_order(p);
        let rest = self
            .den
            .exact_div(&Polynomial::linear(&f, p).pow(m))
            .unwrap();
        let terms = (hi + m as i64 + 1).max(0) as usize;
        let series = series_div(&self.num.taylor_shift(p), &rest.taylor_shift(p), terms);
        (lo..=hi)
            .map(|o| {
                let idx = o + m as i64;
                if idx < 0 {
                    f.zero()
                } else {
                    series[idx as usize].clone()
                }
            })
            .collect()
    }
}

/// First `terms` coefficients of the power series `n / r`, with `r(0) ≠ 0`.
fn series_div(n: &Polynomial, r: &Polynomial, terms: usize) -> Vec<Scalar> {
    let f = n.field();
    let inv0 = f.inv(&r.coeff(0)).expect("denominator is a unit at the origin");
    let mut out: Vec<Scalar> = Vec::with_capacity(terms);
    for i in 0..terms {
        let mut acc = n.coeff(i);
        for j in 1..=i.min(r.degree().unwrap_or(0)) {
            acc = f.sub(&acc, &f.mul(&r.coeff(j), &out[i - j]));
        }
        out.push(f.mul(&acc, &inv0));
    }
    out
}

fn reversed(p: &Polynomial) -> Polynomial {
    let mut c = p.coeffs().to_vec();
    c.reverse();
    Polynomial::new(p.field().clone(), c)
}

/// A point of the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(Scalar),
    Infinity,
}

/// Residue of `f dz` at a place; at infinity through `z = 1/w`, `dz = −dw/w²`.
pub fn residue_at(f: &RationalFunction, place: &Place) -> Scalar {
    let field = f.field();
    match place {
        Place::Finite(p) => f.laurent(p, -1, -1).pop().unwrap(),
        Place::Infinity => {
            if f.is_zero() {
                return field.zero();
            }
            let dn = f.num.degree().unwrap() as i64;
            let dd = f.den.degree().unwrap() as i64;
            let idx = dn - dd + 1;
            if idx < 0 {
                return field.zero();
            }
            let s = series_div(&reversed(&f.num), &reversed(&f.den), idx as usize + 1);
            field.neg(&s[idx as usize])
        }
    }
}

/// Sum of the residues of `f dz` over every pole, infinity included. Poles
/// are located in the splitting field of the denominator; over the rationals
/// a denominator without a full set of rational roots is a `SplitFailure`.
pub fn residue_sum(f: &RationalFunction) -> Result<Scalar> {
    let field = f.field();
    let fac = f.den.factor_roots()?;
    if !fac.cofactor.is_constant() {
        return Err(Error::SplitFailure);
    }
    let emb = &fac.embedding;
    let lifted = RationalFunction {
        num: f.num.embed(emb),
        den: f.den.embed(emb),
    };
    let ext = &fac.field;
    let mut total = residue_at(&lifted, &Place::Infinity);
    for (p, _) in &fac.roots {
        total = ext.add(&total, &residue_at(&lifted, &Place::Finite(p.clone())));
    }
    emb.preimage(&total).ok_or_else(|| {
        Error::InvariantViolation(format!(
            "residue sum {} does not lie in {field}",
            ext.format_scalar(&total)
        ))
    })
}

/// `O(a) ⊕ O(b)` on the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplitBundle {
    pub a: i64,
    pub b: i64,
}

impl SplitBundle {
    pub fn new(a: i64, b: i64) -> SplitBundle {
        SplitBundle { a, b }
    }

    pub fn degree(&self) -> i64 {
        self.a + self.b
    }

    pub fn twists(&self) -> [i64; 2] {
        [self.a, self.b]
    }

    /// `h⁰(E(n))`.
    pub fn h0(&self, n: i64) -> i64 {
        h0_line(self.a + n) + h0_line(self.b + n)
    }

    /// `h¹(E(n))`.
    pub fn h1(&self, n: i64) -> i64 {
        h1_line(self.a + n) + h1_line(self.b + n)
    }
}

pub fn h0_line(m: i64) -> i64 {
    (m + 1).max(0)
}

pub fn h1_line(m: i64) -> i64 {
    (-m - 1).max(0)
}

/// One coordinate of the tail space: the `(z − point)^order` tail of a summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinate {
    pub point: Scalar,
    pub in_d: bool,
    pub summand: usize,
    pub order: i64,
}

#[derive(Clone, Debug)]
pub struct ResidueModel {
    pub field: Field,
    pub bundle: SplitBundle,
    pub d_points: Vec<Scalar>,
    pub delta_points: Vec<Scalar>,
    pub phi: RationalFunction,
    pub coordinates: Vec<Coordinate>,
    pub form: AlternatingForm,
    /// Image of `E/E(−D−Δ)`: tails with no polar part.
    pub regular: Subspace,
}

fn check_distinct(field: &Field, pts: &[Scalar], what: &str) -> Result<()> {
    for (i, p) in pts.iter().enumerate() {
        if !field.contains(p) {
            return Err(Error::FieldMismatch(format!("{what} point {} is not in {field}", field.format_scalar(p))));
        }
        if pts[..i].contains(p) {
            return Err(Error::SupportCollision(format!(
                "{what} repeats the point {}",
                field.format_scalar(p)
            )));
        }
    }
    Ok(())
}

/// Builds the residue pairing on the tail space and checks it is symplectic.
pub fn build_residue_model(
    field: &Field,
    bundle: SplitBundle,
    d_points: &[Scalar],
    delta_points: &[Scalar],
    phi: &RationalFunction,
) -> Result<ResidueModel> {
    if phi.field() != field {
        return Err(Error::FieldMismatch("φ is over a different field".into()));
    }
    check_distinct(field, d_points, "D")?;
    check_distinct(field, delta_points, "Δ")?;
    if let Some(p) = d_points.iter().find(|p| delta_points.contains(p)) {
        return Err(Error::SupportCollision(format!(
            "{} lies in both D and Δ",
            field.format_scalar(p)
        )));
    }
    let delta = delta_points.len() as i64;
    let target = -2 - bundle.degree() + delta;
    let Some(deg_phi) = phi.degree() else {
        return Err(Error::DegreeMismatch("φ must be nonzero".into()));
    };
    if !phi.den().is_constant() {
        return Err(Error::DegreeMismatch("φ must be regular on the affine line".into()));
    }
    if deg_phi > target {
        return Err(Error::DegreeMismatch(format!(
            "φ has degree {deg_phi}, but a section of O({target}) has degree at most {target}"
        )));
    }
    for p in d_points.iter().chain(delta_points) {
        if field.is_zero(&phi.num().eval(p)) {
            return Err(Error::SupportCollision(format!(
                "φ vanishes at {}",
                field.format_scalar(p)
            )));
        }
    }

    let mut places: Vec<(Scalar, bool)> = d_points
        .iter()
        .map(|p| (p.clone(), true))
        .chain(delta_points.iter().map(|p| (p.clone(), false)))
        .collect();
    places.sort_by(|x, y| field.cmp_scalars(&x.0, &y.0));
    let mut coordinates = Vec::new();
    for (point, in_d) in &places {
        for summand in 0..2 {
            let orders: &[i64] = if *in_d { &[-1, 0] } else { &[0] };
            for &order in orders {
                coordinates.push(Coordinate {
                    point: point.clone(),
                    in_d: *in_d,
                    summand,
                    order,
                });
            }
        }
    }

    let delta_poly = delta_points
        .iter()
        .fold(Polynomial::one(field), |acc, q| acc.mul(&Polynomial::linear(field, q)));
    let h = phi.mul(&RationalFunction::new(Polynomial::one(field), delta_poly)?);
    let n = coordinates.len();
    let mut gram = Matrix::zeros(field, n, n);
    for (i, ci) in coordinates.iter().enumerate() {
        for (j, cj) in coordinates.iter().enumerate() {
            if ci.point != cj.point || ci.summand == cj.summand {
                continue;
            }
            let local = RationalFunction::local_power(field, &ci.point, ci.order + cj.order);
            let r = residue_at(&h.mul(&local), &Place::Finite(ci.point.clone()));
            let v = if ci.summand == 0 { r } else { field.neg(&r) };
            gram.set(i, j, v);
        }
    }
    let form = AlternatingForm::new(gram)?;
    if !form.is_symplectic() {
        return Err(Error::InvariantViolation(format!(
            "residue pairing has rank {} on a space of dimension {n}",
            form.rank()
        )));
    }
    let regular_idx: Vec<usize> = (0..n).filter(|&i| coordinates[i].order >= 0).collect();
    let regular = Subspace::coordinate(field, n, &regular_idx);
    Ok(ResidueModel {
        field: field.clone(),
        bundle,
        d_points: d_points.to_vec(),
        delta_points: delta_points.to_vec(),
        phi: phi.clone(),
        coordinates,
        form,
        regular,
    })
}

impl ResidueModel {
    pub fn deg_d(&self) -> usize {
        self.d_points.len()
    }

    pub fn delta(&self) -> usize {
        self.delta_points.len()
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    /// Tail coordinates of a rational section `(x, y)`.
    pub fn tail(&self, section: &[RationalFunction; 2]) -> Vec<Scalar> {
        self.coordinates
            .iter()
            .map(|c| {
                section[c.summand]
                    .laurent(&c.point, c.order, c.order)
                    .pop()
                    .unwrap()
            })
            .collect()
    }

    /// Radical of the form restricted to the regular tails.
    pub fn regular_radical(&self) -> Result<Subspace> {
        let restricted = self.form.restrict(&self.regular)?;
        let coords = restricted.radical().basis().mul(self.regular.basis())?;
        Ok(Subspace::span(&coords))
    }

    /// Monomial basis of `H⁰(E(D))`: `z^j / Π_{P∈D}(z − P)` in each summand.
    pub fn global_sections(&self) -> Vec<[RationalFunction; 2]> {
        let f = &self.field;
        let n = self.deg_d() as i64;
        let d_poly = self
            .d_points
            .iter()
            .fold(Polynomial::one(f), |acc, p| acc.mul(&Polynomial::linear(f, p)));
        let zero = RationalFunction::constant(f, f.zero());
        let mut out = Vec::new();
        for (summand, twist) in self.bundle.twists().into_iter().enumerate() {
            for j in 0..h0_line(twist + n) {
                let mono = Polynomial::monomial(f, f.one(), j as usize);
                let s = RationalFunction::new(mono, d_poly.clone()).unwrap();
                let mut pair = [zero.clone(), zero.clone()];
                pair[summand] = s;
                out.push(pair);
            }
        }
        out
    }
}

/// Image of `H⁰(E(D))` among the tails; requires `h¹(E(D)) = h⁰(E(−D−Δ)) = 0`
/// and verifies injectivity, the expected dimension and isotropy.
pub fn global_section_subspace(model: &ResidueModel) -> Result<Subspace> {
    let n = model.deg_d() as i64;
    let delta = model.delta() as i64;
    let h1 = model.bundle.h1(n);
    let h0 = model.bundle.h0(-n - delta);
    if h1 != 0 || h0 != 0 {
        return Err(Error::VanishingViolated(format!(
            "h¹(E(D)) = {h1}, h⁰(E(−D−Δ)) = {h0} for E = O({}) ⊕ O({})",
            model.bundle.a, model.bundle.b
        )));
    }
    let f = &model.field;
    let rows: Vec<Vec<Scalar>> = model.global_sections().iter().map(|s| model.tail(s)).collect();
    let count = rows.len();
    let s = Subspace::from_vectors(f, model.dim(), rows)?;
    let expected = model.bundle.degree() + 2 * n + 2;
    if s.dim() != count || s.dim() as i64 != expected {
        return Err(Error::InvariantViolation(format!(
            "global sections span dimension {} from {count} sections, expected {expected}",
            s.dim()
        )));
    }
    if !model.form.is_isotropic(&s)? {
        return Err(Error::InvariantViolation("global sections are not isotropic".into()));
    }
    Ok(s)
}

/// Dimensions and verdicts of a built model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub bundle: SplitBundle,
    pub deg_d: usize,
    pub delta: usize,
    pub dim_tail: usize,
    pub dim_regular: usize,
    pub regular_radical: usize,
    pub symplectic: bool,
    pub sections: Option<usize>,
    pub sections_isotropic: Option<bool>,
    pub sections_meet_regular: Option<usize>,
    pub h0_bundle: i64,
    /// Present when the vanishing conditions fail and no section space is built.
    pub vanishing: Option<String>,
}

pub fn model_report(model: &ResidueModel) -> Result<ModelReport> {
    let (sections, iso, meet, vanishing) = match global_section_subspace(model) {
        Ok(s) => (
            Some(s.dim()),
            Some(model.form.is_isotropic(&s)?),
            Some(s.intersection_dim(&model.regular)),
            None,
        ),
        Err(Error::VanishingViolated(msg)) => (None, None, None, Some(msg)),
        Err(e) => return Err(e),
    };
    Ok(ModelReport {
        bundle: model.bundle,
        deg_d: model.deg_d(),
        delta: model.delta(),
        dim_tail: model.dim(),
        dim_regular: model.regular.dim(),
        regular_radical: model.regular_radical()?.dim(),
        symplectic: model.form.is_symplectic(),
        sections,
        sections_isotropic: iso,
        sections_meet_regular: meet,
        h0_bundle: model.bundle.h0(0),
        vanishing,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InjectivityMethod {
    Rank,
    MinorGcd,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixVerdict {
    pub deg_d: usize,
    /// `None` when the vanishing conditions fail at this degree.
    pub injective: Option<bool>,
    /// gcd of the maximal minors, for pencils.
    pub minor_gcd: Option<String>,
    /// Whether the rank drops at `(1:0)`, for pencils.
    pub drops_at_infinity: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub m: usize,
    pub method: InjectivityMethod,
    pub injective: bool,
    pub min_injective_degree: Option<usize>,
    pub prefixes: Vec<PrefixVerdict>,
}

/// Whether every nonzero combination `Σ λ_i ⟨,⟩_i` of the forms induced by the
/// `φ_i` maps `H⁰(E(D))` injectively to the dual of the tail space. Every prefix
/// of `D` is checked, and the smallest degree at which injectivity holds is
/// reported. A single form is checked by rank, a pencil through the gcd of
/// maximal minors of `λ A + μ B` together with the point `(1:0)`, and larger
/// nets by sampling.
pub fn pencil_injectivity(
    field: &Field,
    bundle: SplitBundle,
    d_points: &[Scalar],
    phis: &[RationalFunction],
) -> Result<InjectivityReport> {
    let m = phis.len();
    if m == 0 {
        return Err(Error::Malformed("at least one φ is required".into()));
    }
    let method = match m {
        1 => InjectivityMethod::Rank,
        2 => InjectivityMethod::MinorGcd,
        _ => InjectivityMethod::Sampled,
    };
    let mut prefixes = Vec::new();
    for len in 1..=d_points.len() {
        let pts = &d_points[..len];
        let models = phis
            .iter()
            .map(|phi| build_residue_model(field, bundle, pts, &[], phi))
            .collect::<Result<Vec<_>>>()?;
        let s = match global_section_subspace(&models[0]) {
            Ok(s) => s,
            Err(Error::VanishingViolated(_)) => {
                prefixes.push(PrefixVerdict {
                    deg_d: len,
                    injective: None,
                    minor_gcd: None,
                    drops_at_infinity: None,
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let images = models
            .iter()
            .map(|md| s.basis().mul(md.form.gram()))
            .collect::<Result<Vec<_>>>()?;
        let dim = s.dim();
        let verdict = match method {
            InjectivityMethod::Rank => PrefixVerdict {
                deg_d: len,
                injective: Some(images[0].rank() == dim),
                minor_gcd: None,
                drops_at_infinity: None,
            },
            InjectivityMethod::MinorGcd => {
                let (a, b) = (&images[0], &images[1]);
                let rows: Vec<Vec<Polynomial>> = (0..dim)
                    .map(|i| {
                        (0..a.cols())
                            .map(|c| Polynomial::new(field.clone(), vec![b.get(i, c).clone(), a.get(i, c).clone()]))
                            .collect()
                    })
                    .collect();
                let g = maximal_minors_gcd(field, rows);
                let at_inf = a.rank() < dim;
                PrefixVerdict {
                    deg_d: len,
                    injective: Some(!g.is_zero() && g.is_constant() && !at_inf),
                    minor_gcd: Some(g.display()),
                    drops_at_infinity: Some(at_inf),
                }
            }
            InjectivityMethod::Sampled => {
                let ok = sample_combinations(field, m).iter().all(|lams| {
                    let combo = images
                        .iter()
                        .zip(lams)
                        .fold(Matrix::zeros(field, dim, images[0].cols()), |acc, (img, l)| {
                            acc.add(&img.scale(l)).unwrap()
                        });
                    combo.rank() == dim
                });
                PrefixVerdict {
                    deg_d: len,
                    injective: Some(ok),
                    minor_gcd: None,
                    drops_at_infinity: None,
                }
            }
        };
        prefixes.push(verdict);
    }
    let injective = prefixes.last().and_then(|p| p.injective).unwrap_or(false);
    let min_injective_degree = prefixes.iter().find(|p| p.injective == Some(true)).map(|p| p.deg_d);
    Ok(InjectivityReport {
        m,
        method,
        injective,
        min_injective_degree,
        prefixes,
    })
}

/// Representatives of `P^{m−1}`: every point over a field of at most 7 elements
/// (for `m ≤ 4`), otherwise a fixed grid of small integer vectors.
fn sample_combinations(field: &Field, m: usize) -> Vec<Vec<Scalar>> {
    let values: Vec<Scalar> = match field.elements() {
        Some(all) if all.len() <= 7 && m <= 4 => all,
        _ => (-2..=2).map(|v| field.from_i64(v)).collect(),
    };
    let mut out = Vec::new();
    let total = values.len().pow(m as u32);
    for idx in 0..total {
        let mut rest = idx;
        let v: Vec<Scalar> = (0..m)
            .map(|_| {
                let d = rest % values.len();
                rest /= values.len();
                values[d].clone()
            })
            .collect();
        // first nonzero coordinate equal to one
        match v.iter().find(|x| !field.is_zero(x)) {
            Some(x) if field.is_one(x) => out.push(v),
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn rf(f: &Field, num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(f, num), Polynomial::from_ints(f, den)).unwrap()
    }

    #[test]
    fn residues_of_one_over_z() {
        let f = q();
        let g = rf(&f, &[1], &[0, 1]);
        assert_eq!(residue_at(&g, &Place::Finite(f.zero())), f.one());
        assert_eq!(residue_at(&g, &Place::Infinity), f.from_i64(-1));
        let g2 = rf(&f, &[1], &[0, 0, 1]);
        assert_eq!(residue_at(&g2, &Place::Finite(f.zero())), f.zero());
        assert_eq!(residue_sum(&g).unwrap(), f.zero());
    }

    #[test]
    fn residue_theorem_example() {
        let f = q();
        let g = rf(&f, &[1], &[-1, 1]).add(&rf(&f, &[2], &[-3, 1]));
        assert_eq!(residue_at(&g, &Place::Finite(f.from_i64(1))), f.one());
        assert_eq!(residue_at(&g, &Place::Finite(f.from_i64(3))), f.from_i64(2));
        assert_eq!(residue_at(&g, &Place::Infinity), f.from_i64(-3));
        assert_eq!(residue_sum(&g).unwrap(), f.zero());
        assert_eq!(residue_sum(&rf(&f, &[1, 2, 3], &[1])).unwrap(), f.zero());
        assert_eq!(residue_sum(&rf(&f, &[1], &[1, 0, 1])).unwrap_err(), Error::SplitFailure);
    }

    #[test]
    fn residue_sum_in_extension() {
        let f3 = Field::prime(3).unwrap();
        // z^2 + 1 is irreducible over F_3
        let g = rf(&f3, &[0, 0, 0, 1], &[1, 0, 1]);
        assert_eq!(residue_sum(&g).unwrap(), f3.zero());
    }

    #[test]
    fn laurent_tail() {
        let f = q();
        // z / (z - 1)^2 = 1/(z-1)^2 + 1/(z-1)
        let g = rf(&f, &[0, 1], &[1, -2, 1]);
        assert_eq!(g.laurent(&f.one(), -2, 0), vec![f.one(), f.one(), f.zero()]);
    }

    #[test]
    fn example_models() {
        let f = q();
        let b = SplitBundle::new(-1, -1);
        let phi = RationalFunction::constant(&f, f.one());
        let pts = [f.from_i64(1), f.from_i64(-1)];
        let model = build_residue_model(&f, b, &pts, &[], &phi).unwrap();
        let rep = model_report(&model).unwrap();
        assert_eq!((rep.dim_tail, rep.dim_regular, rep.sections), (8, 4, Some(4)));
        assert_eq!(rep.regular_radical, 4);
        assert_eq!(rep.sections_isotropic, Some(true));
        assert_eq!(rep.sections_meet_regular, Some(0));
        let single = build_residue_model(&f, b, &[f.zero()], &[], &phi).unwrap();
        let rep = model_report(&single).unwrap();
        assert_eq!((rep.dim_tail, rep.dim_regular, rep.sections), (4, 2, Some(2)));
    }

    #[test]
    fn model_with_delta() {
        let f7 = Field::prime(7).unwrap();
        // E = O(-1) ⊕ O(-2), δ = 1: φ is a section of O(2)
        let b = SplitBundle::new(-1, -2);
        let phi = rf(&f7, &[1, 0, 1], &[1]);
        let model = build_residue_model(&f7, b, &[f7.from_i64(1), f7.from_i64(2)], &[f7.from_i64(5)], &phi).unwrap();
        let rep = model_report(&model).unwrap();
        assert_eq!(rep.dim_tail, 10);
        assert_eq!(rep.dim_regular, 6);
        assert_eq!(rep.regular_radical, 4);
        assert_eq!(rep.sections, Some(3));
    }

    #[test]
    fn preconditions() {
        let f = q();
        let phi = RationalFunction::constant(&f, f.one());
        let b = SplitBundle::new(-3, 1);
        let model = build_residue_model(&f, b, &[f.zero()], &[], &phi).unwrap();
        assert!(matches!(global_section_subspace(&model), Err(Error::VanishingViolated(_))));
        let z = rf(&f, &[0, 1], &[1]);
        let b3 = SplitBundle::new(-1, -2);
        assert!(matches!(
            build_residue_model(&f, b3, &[f.zero()], &[], &z),
            Err(Error::SupportCollision(_))
        ));
        assert!(matches!(
            build_residue_model(&f, SplitBundle::new(-1, -1), &[f.one()], &[], &z),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn pencil_of_two_forms_is_injective() {
        let f7 = Field::prime(7).unwrap();
        let b = SplitBundle::new(-1, -2);
        let phis = [
            RationalFunction::constant(&f7, f7.one()),
            rf(&f7, &[0, 1], &[1]),
        ];
        let pts: Vec<Scalar> = [1, 2, 3, 5].iter().map(|&v| f7.from_i64(v)).collect();
        let rep = pencil_injectivity(&f7, b, &pts, &phis).unwrap();
        assert!(rep.injective);
        assert_eq!(rep.method, InjectivityMethod::MinorGcd);
    }
}

//! Dense univariate polynomials over a [`Field`], plus binary forms in `(λ:μ)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, Scalar};

/// Coefficients ascending by degree; trailing zeros are always stripped.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Polynomial {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Polynomial::new(field.clone(), coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial::new(field.clone(), Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Polynomial::new(field.clone(), vec![field.one()])
    }

    pub fn constant(field: &Field, c: Scalar) -> Self {
        Polynomial::new(field.clone(), vec![c])
    }

    pub fn x(field: &Field) -> Self {
        Polynomial::new(field.clone(), vec![field.zero(), field.one()])
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: &Scalar) -> Self {
        Polynomial::new(field.clone(), vec![field.neg(a), field.one()])
    }

    pub fn monomial(field: &Field, c: Scalar, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n];
        coeffs.push(c);
        Polynomial::new(field.clone(), coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(&self.coeff(i), &other.coeff(i))).collect();
        Polynomial::new(f.clone(), coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(&self.coeff(i), &other.coeff(i))).collect();
        Polynomial::new(f.clone(), coeffs)
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let f = &self.field;
        Polynomial::new(f.clone(), self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Polynomial::new(f.clone(), out)
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(c).unwrap()),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(&rem[top], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, d));
            }
            quot[top - dd] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(f.clone(), quot), Polynomial::new(f.clone(), rem))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Polynomial {
        self.div_rem(divisor).1
    }

    /// Exact quotient; `None` if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Polynomial::new(f.clone(), coeffs)
    }

    /// Coefficients of `p(z + a)` in powers of `z`.
    pub fn taylor_shift(&self, a: &Scalar) -> Polynomial {
        let f = &self.field;
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = f.mul(&c[j + 1], a);
                c[j] = f.add(&c[j], &t);
            }
        }
        Polynomial::new(f.clone(), c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Polynomial) -> Polynomial {
        let mut base = self.rem(m);
        let mut acc = Polynomial::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn map_coeffs(&self, target: &Field, g: impl Fn(&Scalar) -> Scalar) -> Polynomial {
        Polynomial::new(target.clone(), self.coeffs.iter().map(g).collect())
    }

    pub fn embed(&self, emb: &Embedding) -> Polynomial {
        self.map_coeffs(emb.target(), |c| emb.apply(c))
    }

    /// Degrees of the distinct irreducible factors of a nonzero polynomial over a finite field.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let f = &self.field;
        let q = f.order().expect("finite field");
        let mut h = self.monic();
        let mut degrees = Vec::new();
        let x = Polynomial::x(f);
        let mut frob = x.clone();
        let mut i = 0;
        while h.degree().unwrap_or(0) > 0 {
            i += 1;
            if 2 * i > h.degree().unwrap() {
                // every remaining factor has degree at least i, so h is irreducible
                degrees.push(h.degree().unwrap());
                break;
            }
            frob = frob.pow_mod(q, &h);
            let g = h.gcd(&frob.sub(&x));
            if !g.is_constant() {
                degrees.push(i);
                loop {
                    let c = h.gcd(&g);
                    if c.is_constant() {
                        break;
                    }
                    h = h.exact_div(&c).unwrap();
                }
                frob = frob.rem(&h);
            }
        }
        degrees.sort_unstable();
        degrees.dedup();
        degrees
    }

    /// Irreducibility over a finite field.
    pub fn is_irreducible_finite(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let f = &self.field;
        let q = f.order().expect("finite field");
        let h = self.monic();
        let x = Polynomial::x(f);
        let mut frob = x.clone();
        for _ in 1..=n / 2 {
            frob = frob.pow_mod(q, &h);
            if !h.gcd(&frob.sub(&x)).is_constant() {
                return false;
            }
        }
        true
    }

    /// Smallest `e` such that every irreducible factor splits over the degree-`e` extension.
    pub fn splitting_degree(&self) -> usize {
        self.factor_degrees().into_iter().fold(1, |acc, d| acc.lcm(&d))
    }

    /// Roots lying in the coefficient field, with multiplicities, sorted by the
    /// field's canonical order. Rational roots over `Q`, exhaustive search otherwise.
    pub fn roots(&self) -> Vec<(Scalar, usize)> {
        assert!(!self.is_zero(), "roots of the zero polynomial");
        let candidates = if self.field.is_rational() {
            rational_root_candidates(self)
        } else {
            self.field.elements().unwrap()
        };
        let mut rest = self.clone();
        let mut out = Vec::new();
        for a in candidates {
            if rest.is_constant() {
                break;
            }
            if !self.field.is_zero(&rest.eval(&a)) {
                continue;
            }
            let lin = Polynomial::linear(&self.field, &a);
            let mut mult = 0;
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
                mult += 1;
            }
            out.push((a, mult));
        }
        out.sort_by(|x, y| self.field.cmp_scalars(&x.0, &y.0));
        out
    }

    /// Roots in the smallest field where the polynomial splits (finite fields), or
    /// the rational roots plus an unsplit cofactor (rationals).
    pub fn factor_roots(&self) -> Result<RootFactorization> {
        if self.is_zero() {
            return Err(Error::Malformed("cannot factor the zero polynomial".into()));
        }
        let (field, embedding, poly) = if self.field.is_rational() || self.is_constant() {
            (self.field.clone(), Embedding::identity(self.field.clone()), self.clone())
        } else {
            let e = self.splitting_degree();
            let (ext, emb) = self.field.extension(e as u32)?;
            let lifted = self.embed(&emb);
            (ext, emb, lifted)
        };
        let roots = if poly.is_constant() { Vec::new() } else { poly.roots() };
        let mut cofactor = poly.clone();
        for (a, m) in &roots {
            let lin = Polynomial::linear(&field, a);
            for _ in 0..*m {
                cofactor = cofactor.exact_div(&lin).unwrap();
            }
        }
        Ok(RootFactorization {
            field,
            embedding,
            roots,
            cofactor,
        })
    }

    /// Like [`Polynomial::factor_roots`] but fails if anything is left unsplit.
    pub fn factor_squarefree_roots(&self) -> Result<RootFactorization> {
        let fac = self.factor_roots()?;
        if fac.cofactor.is_constant() {
            Ok(fac)
        } else {
            Err(Error::SplitFailure)
        }
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = self.field.format_scalar(c);
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*z"),
                _ => format!("{cs}*z^{i}"),
            });
        }
        parts.join(" + ")
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn rational_root_candidates(p: &Polynomial) -> Vec<Scalar> {
    let rats: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let lcm = rats
        .iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        out.push(BigRational::zero());
    }
    let a0 = &ints[low];
    let an = ints.last().unwrap();
    if ints.len() - 1 > low {
        for num in divisors(a0) {
            for den in divisors(an) {
                let r = BigRational::new(num.clone(), den.clone());
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(Scalar::Rational).collect()
}

/// `p = cofactor · Π (x − root)^mult` over `field`, which `embedding` maps the input's field into.
#[derive(Clone, Debug)]
pub struct RootFactorization {
    pub field: Field,
    pub embedding: Embedding,
    pub roots: Vec<(Scalar, usize)>,
    pub cofactor: Polynomial,
}

/// Homogeneous form in `(λ:μ)`: `coeffs[j]` multiplies `λ^j μ^(degree−j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub field: Field,
    pub degree: usize,
    pub coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn zero(field: &Field, degree: usize) -> Self {
        BinaryForm {
            field: field.clone(),
            degree,
            coeffs: vec![field.zero(); degree + 1],
        }
    }

    /// `a λ + b μ`.
    pub fn linear(field: &Field, a: Scalar, b: Scalar) -> Self {
        BinaryForm {
            field: field.clone(),
            degree: 1,
            coeffs: vec![b, a],
        }
    }

    pub fn constant(field: &Field, c: Scalar) -> Self {
        BinaryForm {
            field: field.clone(),
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        BinaryForm {
            field: field.clone(),
            degree: coeffs.len() - 1,
            coeffs: coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.is_zero(c))
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree, "forms of different degree");
        let f = &self.field;
        BinaryForm {
            field: f.clone(),
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> BinaryForm {
        let f = &self.field;
        BinaryForm {
            field: f.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| f.neg(a)).collect(),
        }
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let f = &self.field;
        let mut out = BinaryForm::zero(f, self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out.coeffs[i + j] = f.add(&out.coeffs[i + j], &f.mul(a, b));
            }
        }
        out
    }

    pub fn eval(&self, lambda: &Scalar, mu: &Scalar) -> Scalar {
        let f = &self.field;
        let mut acc = f.zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            let term = f.mul(
                c,
                &f.mul(&f.pow(lambda, j as u64), &f.pow(mu, (self.degree - j) as u64)),
            );
            acc = f.add(&acc, &term);
        }
        acc
    }

    /// The polynomial `F(λ, 1)`.
    pub fn dehomogenize(&self) -> Polynomial {
        Polynomial::new(self.field.clone(), self.coeffs.clone())
    }

    /// Whether `(1:0)` is a zero.
    pub fn vanishes_at_infinity(&self) -> bool {
        self.field.is_zero(&self.coeffs[self.degree])
    }
}

/// Outcome of [`binary_form_common_root`].
#[derive(Clone, Debug)]
pub enum CommonRoot {
    /// No common zero over the algebraic closure.
    None,
    /// Every form is identically zero, so every point is a common zero.
    AllZero,
    /// A common zero `(λ:μ)` over `field`, the degree-`degree` extension of the input field.
    Root {
        lambda: (Scalar, Scalar),
        field: Field,
        embedding: Embedding,
        degree: u32,
    },
    /// Common zeros exist but none is rational; `gcd` is the gcd of the dehomogenizations.
    Irrational { gcd: Polynomial },
}

impl CommonRoot {
    pub fn exists(&self) -> bool {
        !matches!(self, CommonRoot::None)
    }
}

/// Normalizes a projective point so its first nonzero coordinate is 1.
pub fn normalize_point(field: &Field, p: (Scalar, Scalar)) -> (Scalar, Scalar) {
    if !field.is_zero(&p.0) {
        let inv = field.inv(&p.0).unwrap();
        (field.one(), field.mul(&p.1, &inv))
    } else {
        (field.zero(), field.one())
    }
}

/// Decides whether binary forms share a zero in `P^1` over the algebraic closure,
/// and produces a witness in the smallest field containing one when possible.
pub fn binary_form_common_root(field: &Field, forms: &[BinaryForm]) -> CommonRoot {
    let nonzero: Vec<&BinaryForm> = forms.iter().filter(|b| !b.is_zero()).collect();
    if nonzero.is_empty() {
        return CommonRoot::AllZero;
    }
    let at_infinity = nonzero.iter().all(|b| b.vanishes_at_infinity());
    let g = nonzero
        .iter()
        .fold(Polynomial::zero(field), |acc, b| acc.gcd(&b.dehomogenize()));
    let mut base_points: Vec<(Scalar, Scalar)> = Vec::new();
    if at_infinity {
        base_points.push((field.one(), field.zero()));
    }
    if !g.is_constant() {
        for (a, _) in g.roots() {
            base_points.push(normalize_point(field, (a, field.one())));
        }
    }
    if let Some(best) = base_points.into_iter().min() {
        return CommonRoot::Root {
            lambda: best,
            field: field.clone(),
            embedding: Embedding::identity(field.clone()),
            degree: 1,
        };
    }
    if g.is_constant() {
        return CommonRoot::None;
    }
    if field.is_rational() {
        return CommonRoot::Irrational { gcd: g };
    }
    let e = *g.factor_degrees().first().unwrap();
    let (ext, emb) = match field.extension(e as u32) {
        Ok(x) => x,
        Err(_) => return CommonRoot::Irrational { gcd: g },
    };
    let lifted = g.embed(&emb);
    let roots = lifted.roots();
    let a = roots.into_iter().map(|(a, _)| a).next().unwrap();
    CommonRoot::Root {
        lambda: normalize_point(&ext, (a, ext.one())),
        field: ext,
        embedding: emb,
        degree: e as u32,
    }
}

/// Monic gcd of all maximal minors of an `s × n` polynomial matrix (`s ≤ n`),
/// or zero when they all vanish. Unimodular column operations preserve the
/// ideal of maximal minors, so reducing to lower-triangular `[L | 0]` leaves
/// the gcd as `det L`.
pub fn maximal_minors_gcd(field: &Field, mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let s = m.len();
    if s == 0 {
        return Polynomial::one(field);
    }
    let n = m[0].len();
    if n < s {
        return Polynomial::zero(field);
    }
    let mut det = Polynomial::one(field);
    for i in 0..s {
        loop {
            let Some(p) = (i..n)
                .filter(|&j| !m[i][j].is_zero())
                .min_by_key(|&j| m[i][j].degree())
            else {
                return Polynomial::zero(field);
            };
            for row in m.iter_mut().skip(i) {
                row.swap(i, p);
            }
            let mut reduced = true;
            for j in i + 1..n {
                if m[i][j].is_zero() {
                    continue;
                }
                let (q, r) = m[i][j].div_rem(&m[i][i]);
                for row in m.iter_mut().skip(i) {
                    let t = q.mul(&row[i]);
                    row[j] = row[j].sub(&t);
                }
                reduced &= r.is_zero();
            }
            if reduced {
                break;
            }
        }
        det = det.mul(&m[i][i]);
    }
    det.monic()
}

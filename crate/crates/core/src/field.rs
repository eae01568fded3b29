//! Exact scalar fields: the rationals and the finite fields `F_{p^e}`.
//!
//! A [`Field`] is a cheap-to-clone handle describing the arithmetic; a
//! [`Scalar`] is a bare value that only makes sense together with its field.
//! Extension elements are polynomials in a generator modulo a stored monic
//! irreducible modulus, encoded as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Largest extension-field order for which log tables are built.
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

/// Extension orders up to this size also get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Finite(u32),
}

impl Scalar {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Finite(_) => None,
        }
    }

    pub fn as_finite(&self) -> Option<u32> {
        match self {
            Scalar::Finite(x) => Some(*x),
            Scalar::Rational(_) => None,
        }
    }
}

/// Arithmetic of `F_{p^e}` on encoded `u32` elements.
pub struct GaloisField {
    p: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u32>>,
}

impl GaloisField {
    fn prime(p: u32) -> Self {
        GaloisField {
            p,
            degree: 1,
            order: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        }
    }

    fn extension(p: u32, degree: u32, modulus: Vec<u32>) -> Self {
        let order = p.pow(degree);
        let mut gf = GaloisField {
            p,
            degree,
            order,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: None,
        };
        gf.build_tables();
        gf
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus, ascending coefficients. `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut out = vec![0; self.degree as usize];
        for d in out.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let e = self.degree as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (e..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (i, &m) in self.modulus[..e].iter().enumerate() {
                let idx = top - e + i;
                prod[idx] = (prod[idx] + p * p - c * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..e].iter().map(|&x| x as u32).collect();
        self.undigits(&low)
    }

    fn build_tables(&mut self) {
        let n = self.order as usize;
        let mut exp = vec![0u32; n - 1];
        for g in 2..self.order {
            let mut x = 1u32;
            let mut ok = true;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = x;
                x = self.mul_slow(x, g);
                if x == 1 && i + 1 < n - 1 {
                    ok = false;
                    break;
                }
            }
            if ok && x == 1 {
                break;
            }
        }
        let mut log = vec![0u32; n];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        self.exp = exp;
        self.log = log;
        if self.order <= ADD_TABLE_LIMIT {
            let mut table = vec![0u32; n * n];
            for a in 0..self.order {
                for b in 0..self.order {
                    table[a as usize * n + b as usize] = self.add_slow(a, b);
                }
            }
            self.add_table = Some(table);
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[a as usize * self.order as usize + b as usize]
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let mut d = self.digits(a);
            for x in d.iter_mut() {
                *x = (self.p - *x) % self.p;
            }
            self.undigits(&d)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            let l = self.log[a as usize] as usize + self.log[b as usize] as usize;
            self.exp[l % (self.order as usize - 1)]
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.degree == 1 {
            Some(self.pow(a, self.p as u64 - 2))
        } else {
            let n = self.order as usize - 1;
            Some(self.exp[(n - self.log[a as usize] as usize) % n])
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The element `n mod p` of the prime subfield.
    pub fn from_u64(&self, n: u64) -> u32 {
        (n % self.p as u64) as u32
    }
}

enum FieldKind {
    Rationals,
    Finite(GaloisField),
}

/// A handle on an exact field. Cloning shares the precomputed tables.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldKind>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        match (&*self.inner, &*other.inner) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::Finite(a), FieldKind::Finite(b)) => a.p == b.p && a.modulus == b.modulus,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.inner {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Finite(g) if g.degree == 1 => write!(f, "F_{}", g.p),
            FieldKind::Finite(g) => write!(f, "F_{}^{}", g.p, g.degree),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q = p^e`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut e = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest == 1 && p <= u32::MAX as u64 {
        Some((p as u32, e))
    } else {
        None
    }
}

impl Field {
    pub fn rationals() -> Field {
        Field {
            inner: Arc::new(FieldKind::Rationals),
        }
    }

    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) || p > (1 << 31) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field {
            inner: Arc::new(FieldKind::Finite(GaloisField::prime(p))),
        })
    }

    /// `F_{p^e}` with the lexicographically first monic irreducible modulus.
    pub fn finite(p: u32, e: u32) -> Result<Field> {
        let base = Field::prime(p)?;
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        if e == 1 {
            return Ok(base);
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if order > MAX_EXTENSION_ORDER {
            return Err(Error::InvalidField(format!(
                "F_{p}^{e} exceeds the supported extension order {MAX_EXTENSION_ORDER}"
            )));
        }
        let modulus = first_irreducible(&base, e);
        Field::with_modulus(p, modulus)
    }

    /// `F_{p^e}` from an explicit monic modulus (ascending coefficients, length `e + 1`).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Field> {
        let base = Field::prime(p)?;
        let e = modulus.len().saturating_sub(1) as u32;
        if e == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus must be monic of positive degree".into()));
        }
        if e == 1 {
            return Ok(base);
        }
        let poly = Polynomial::new(
            base.clone(),
            modulus.iter().map(|&c| Scalar::Finite(c)).collect(),
        );
        if !poly.is_irreducible_finite() {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        if (p as u64).checked_pow(e).map_or(true, |o| o > MAX_EXTENSION_ORDER) {
            return Err(Error::InvalidField("extension too large".into()));
        }
        Ok(Field {
            inner: Arc::new(FieldKind::Finite(GaloisField::extension(p, e, modulus))),
        })
    }

    /// The field with `q` elements for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, e) =
            prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Field::finite(p, e)
    }

    pub fn is_rational(&self) -> bool {
        matches!(&*self.inner, FieldKind::Rationals)
    }

    pub fn galois(&self) -> Option<&GaloisField> {
        match &*self.inner {
            FieldKind::Finite(g) => Some(g),
            FieldKind::Rationals => None,
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        self.galois().map_or(0, |g| g.p)
    }

    pub fn order(&self) -> Option<u64> {
        self.galois().map(|g| g.order as u64)
    }

    /// Degree over the prime field (1 for the rationals).
    pub fn degree(&self) -> u32 {
        self.galois().map_or(1, |g| g.degree)
    }

    pub fn zero(&self) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(BigRational::zero()),
            FieldKind::Finite(_) => Scalar::Finite(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(BigRational::one()),
            FieldKind::Finite(_) => Scalar::Finite(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Finite(g) => {
                let r = n.rem_euclid(g.p as i64) as u64;
                Scalar::Finite(g.from_u64(r))
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Finite(g) => {
                let p = BigInt::from(g.p);
                let r = ((n % &p) + &p) % &p;
                Scalar::Finite(r.to_u32().unwrap())
            }
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> Scalar {
        let n = self.from_i64(num);
        let d = self.from_i64(den);
        self.div(&n, &d).expect("nonzero denominator")
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match (&*self.inner, x) {
            (FieldKind::Rationals, Scalar::Rational(_)) => true,
            (FieldKind::Finite(g), Scalar::Finite(v)) => *v < g.order,
            _ => false,
        }
    }

    fn fin(x: &Scalar) -> u32 {
        match x {
            Scalar::Finite(v) => *v,
            Scalar::Rational(_) => panic!("rational scalar used in a finite field"),
        }
    }

    fn rat(x: &Scalar) -> &BigRational {
        match x {
            Scalar::Rational(r) => r,
            Scalar::Finite(_) => panic!("finite-field scalar used in the rationals"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(Self::rat(a) + Self::rat(b)),
            FieldKind::Finite(g) => Scalar::Finite(g.add(Self::fin(a), Self::fin(b))),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(Self::rat(a) - Self::rat(b)),
            FieldKind::Finite(g) => Scalar::Finite(g.sub(Self::fin(a), Self::fin(b))),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(-Self::rat(a)),
            FieldKind::Finite(g) => Scalar::Finite(g.neg(Self::fin(a))),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match &*self.inner {
            FieldKind::Rationals => Scalar::Rational(Self::rat(a) * Self::rat(b)),
            FieldKind::Finite(g) => Scalar::Finite(g.mul(Self::fin(a), Self::fin(b))),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match &*self.inner {
            FieldKind::Rationals => {
                let r = Self::rat(a);
                (!r.is_zero()).then(|| Scalar::Rational(r.recip()))
            }
            FieldKind::Finite(g) => g.inv(Self::fin(a)).map(Scalar::Finite),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Scalar, e: u64) -> Scalar {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Finite(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Finite(v) => *v == 1,
        }
    }

    /// All elements in encoding order; `None` for the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.galois()
            .map(|g| (0..g.order).map(Scalar::Finite).collect())
    }

    /// The generator of an extension (the class of `x`); `None` for prime fields.
    pub fn generator(&self) -> Option<Scalar> {
        self.galois()
            .filter(|g| g.degree > 1)
            .map(|g| Scalar::Finite(g.p))
    }

    /// Canonical total order used wherever points must be listed deterministically:
    /// numeric order over the rationals, encoding order over finite fields.
    pub fn cmp_scalars(&self, a: &Scalar, b: &Scalar) -> Ordering {
        a.cmp(b)
    }

    /// Degree-`e` extension of a finite field together with the embedding of `self`.
    pub fn extension(&self, e: u32) -> Result<(Field, Embedding)> {
        let g = self
            .galois()
            .ok_or_else(|| Error::InvalidField("the rationals have no finite extensions here".into()))?;
        if e == 1 {
            return Ok((self.clone(), Embedding::identity(self.clone())));
        }
        let target = Field::finite(g.p, g.degree * e)?;
        let emb = Embedding::new(self.clone(), target.clone())?;
        Ok((target, emb))
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match &*self.inner {
            FieldKind::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                let d: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            FieldKind::Finite(g) => {
                if let Some(inner) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                    let mut digits = Vec::new();
                    for part in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                        let v: i64 = part
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad coefficient {part:?}")))?;
                        digits.push(v.rem_euclid(g.p as i64) as u32);
                    }
                    if digits.len() > g.degree as usize {
                        return Err(Error::Parse(format!("too many coefficients in {s:?}")));
                    }
                    digits.resize(g.degree as usize, 0);
                    Ok(Scalar::Finite(g.undigits(&digits)))
                } else {
                    let v: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
                    Ok(self.from_bigint(&v))
                }
            }
        }
    }

    pub fn format_scalar(&self, x: &Scalar) -> String {
        match (&*self.inner, x) {
            (FieldKind::Rationals, Scalar::Rational(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (FieldKind::Finite(g), Scalar::Finite(v)) if g.degree == 1 => v.to_string(),
            (FieldKind::Finite(g), Scalar::Finite(v)) => {
                let d = g.digits(*v);
                let parts: Vec<String> = d.iter().map(|c| c.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
            _ => "?".into(),
        }
    }

    /// Coefficients of an extension element over the prime field.
    pub fn coordinates(&self, x: &Scalar) -> Vec<u32> {
        let g = self.galois().expect("finite field");
        g.digits(Self::fin(x))
    }

    /// Lifts an integer-valued rational into this field, if its denominator is invertible.
    pub fn from_rational(&self, r: &BigRational) -> Option<Scalar> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        self.div(&n, &d)
    }

    pub fn abs_bits(x: &BigRational) -> u64 {
        x.numer().abs().bits() + x.denom().bits()
    }
}

/// Searches monic degree-`e` polynomials over a prime field in lexicographic order
/// of their low coefficients and returns the first irreducible one.
fn first_irreducible(base: &Field, e: u32) -> Vec<u32> {
    let p = base.characteristic();
    let total = (p as u64).pow(e);
    for n in 0..total {
        let mut coeffs = Vec::with_capacity(e as usize + 1);
        let mut m = n;
        for _ in 0..e {
            coeffs.push((m % p as u64) as u32);
            m /= p as u64;
        }
        coeffs.push(1);
        if coeffs[0] == 0 {
            continue;
        }
        let poly = Polynomial::new(base.clone(), coeffs.iter().map(|&c| Scalar::Finite(c)).collect());
        if poly.is_irreducible_finite() {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// A field embedding `source -> target`, determined by the image of the source generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    generator_image: Option<Scalar>,
}

impl Embedding {
    pub fn identity(field: Field) -> Self {
        Embedding {
            source: field.clone(),
            target: field,
            generator_image: None,
        }
    }

    fn new(source: Field, target: Field) -> Result<Self> {
        let sg = source.galois().unwrap();
        if sg.degree == 1 {
            return Ok(Embedding {
                source,
                target,
                generator_image: None,
            });
        }
        let modulus = Polynomial::new(
            source.clone(),
            sg.modulus.iter().map(|&c| Scalar::Finite(c)).collect(),
        );
        // the modulus has prime-field coefficients, so it lifts digit by digit
        let lifted = modulus.map_coeffs(&target, |c| c.clone());
        let root = target
            .elements()
            .unwrap()
            .into_iter()
            .find(|x| target.is_zero(&lifted.eval(x)))
            .ok_or_else(|| Error::InvalidField("no embedding between these fields".into()))?;
        Ok(Embedding {
            source,
            target,
            generator_image: Some(root),
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    pub fn apply(&self, x: &Scalar) -> Scalar {
        if self.is_identity() {
            return x.clone();
        }
        match &self.generator_image {
            None => x.clone(),
            Some(g) => {
                let digits = self.source.coordinates(x);
                let t = &self.target;
                let mut acc = t.zero();
                for &d in digits.iter().rev() {
                    acc = t.add(&t.mul(&acc, g), &t.from_i64(d as i64));
                }
                acc
            }
        }
    }

    /// Inverse image by exhaustive search; `None` if `x` is not in the image.
    pub fn preimage(&self, x: &Scalar) -> Option<Scalar> {
        if self.is_identity() {
            return Some(x.clone());
        }
        self.source
            .elements()?
            .into_iter()
            .find(|s| &self.apply(s) == x)
    }

    pub fn compose(&self, next: &Embedding) -> Result<Embedding> {
        if self.target != next.source {
            return Err(Error::FieldMismatch("embeddings do not compose".into()));
        }
        if self.is_identity() {
            return Ok(next.clone());
        }
        if next.is_identity() {
            return Ok(self.clone());
        }
        Ok(Embedding {
            source: self.source.clone(),
            target: next.target.clone(),
            generator_image: self.generator_image.as_ref().map(|g| next.apply(g)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(f.add(&a, &b), f.from_i64(1));
        assert_eq!(f.mul(&a, &b), f.from_i64(1));
        assert_eq!(f.inv(&a).unwrap(), b);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn extension_field_is_a_field() {
        for (p, e) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2)] {
            let f = Field::finite(p, e).unwrap();
            let q = f.order().unwrap();
            assert_eq!(q, (p as u64).pow(e));
            let elems = f.elements().unwrap();
            for a in &elems {
                if !f.is_zero(a) {
                    let ai = f.inv(a).unwrap();
                    assert!(f.is_one(&f.mul(a, &ai)));
                }
                assert!(f.is_zero(&f.add(a, &f.neg(a))));
                // Frobenius fixes nothing but the prime field... but a^q = a always
                assert_eq!(&f.pow(a, q), a);
            }
            // distributivity on a sample
            for a in elems.iter().take(5) {
                for b in elems.iter().rev().take(5) {
                    for c in elems.iter().skip(1).take(3) {
                        let lhs = f.mul(a, &f.add(b, c));
                        let rhs = f.add(&f.mul(a, b), &f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn first_modulus_is_deterministic() {
        let f4 = Field::finite(2, 2).unwrap();
        assert_eq!(f4.galois().unwrap().modulus(), &[1, 1, 1]);
        let f9 = Field::finite(3, 2).unwrap();
        assert_eq!(f9.galois().unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn embeddings_respect_arithmetic() {
        let f4 = Field::finite(2, 2).unwrap();
        let (f16, emb) = f4.extension(2).unwrap();
        assert_eq!(f16.order(), Some(16));
        for a in f4.elements().unwrap() {
            for b in f4.elements().unwrap() {
                assert_eq!(emb.apply(&f4.mul(&a, &b)), f16.mul(&emb.apply(&a), &emb.apply(&b)));
                assert_eq!(emb.apply(&f4.add(&a, &b)), f16.add(&emb.apply(&a), &emb.apply(&b)));
            }
            assert_eq!(emb.preimage(&emb.apply(&a)), Some(a));
        }
    }

    #[test]
    fn scalar_parsing_round_trips() {
        let q = Field::rationals();
        let x = q.parse_scalar("-6/4").unwrap();
        assert_eq!(q.format_scalar(&x), "-3/2");
        let f9 = Field::finite(3, 2).unwrap();
        let y = f9.parse_scalar("[2,1]").unwrap();
        assert_eq!(f9.format_scalar(&y), "[2,1]");
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("-1").unwrap(), Scalar::Finite(4));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}

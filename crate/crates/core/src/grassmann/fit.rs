//! Recovering a counting polynomial in `q` from point counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer polynomial interpolating point counts, validated on held-out samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionFit {
    /// `(q, count)` pairs in increasing `q`.
    pub samples: Vec<(u64, u64)>,
    /// Sample points not used for the interpolation.
    pub held_out: Vec<u64>,
    /// Ascending coefficients; empty for the zero polynomial.
    pub coefficients: Vec<i64>,
    /// `None` for the zero polynomial.
    pub degree: Option<usize>,
}

impl DimensionFit {
    pub fn eval(&self, q: u64) -> BigInt {
        let q = BigInt::from(q);
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * &q + BigInt::from(c))
    }
}

/// Interpolates through all but the largest sample and checks that one.
pub fn fit_dimension(samples: &BTreeMap<u64, u64>) -> Result<DimensionFit> {
    fit_dimension_holdout(samples, 1)
}

/// Interpolates through all but the `holdout` largest samples, requires
/// integer coefficients, and checks the held-out samples.
pub fn fit_dimension_holdout(samples: &BTreeMap<u64, u64>, holdout: usize) -> Result<DimensionFit> {
    if samples.len() < holdout + 1 || samples.len() < 2 {
        return Err(Error::FitMismatch(format!(
            "{} samples cannot support {holdout} held-out points",
            samples.len()
        )));
    }
    let pts: Vec<(u64, u64)> = samples.iter().map(|(&q, &c)| (q, c)).collect();
    let used = &pts[..pts.len() - holdout];
    let coeffs = interpolate(used);
    let mut ints = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::FitMismatch(format!("coefficient of q^{i} is {c}, not an integer")));
        }
        let v: i64 = c
            .to_integer()
            .try_into()
            .map_err(|_| Error::FitMismatch(format!("coefficient of q^{i} overflows")))?;
        ints.push(v);
    }
    while ints.last() == Some(&0) {
        ints.pop();
    }
    let fit = DimensionFit {
        samples: pts.clone(),
        held_out: pts[pts.len() - holdout..].iter().map(|p| p.0).collect(),
        degree: ints.len().checked_sub(1),
        coefficients: ints,
    };
    for &(q, c) in &pts[pts.len() - holdout..] {
        let predicted = fit.eval(q);
        if predicted != BigInt::from(c) {
            return Err(Error::FitMismatch(format!(
                "held-out sample q = {q}: counted {c}, polynomial gives {predicted}"
            )));
        }
    }
    Ok(fit)
}

/// Coefficients of the Lagrange interpolant, ascending, via Newton divided differences.
fn interpolate(pts: &[(u64, u64)]) -> Vec<BigRational> {
    let n = pts.len();
    let xs: Vec<BigRational> = pts.iter().map(|p| BigRational::from_integer(p.0.into())).collect();
    let mut dd: Vec<BigRational> = pts.iter().map(|p| BigRational::from_integer(p.1.into())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton form
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] = &next[d + 1] + &coeffs[d];
            }
            next[d] = &next[d] - &coeffs[d] * &xs[i];
        }
        next[0] = &next[0] + &dd[i];
        coeffs = next;
    }
    coeffs
}

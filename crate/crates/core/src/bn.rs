//! Brill-Noether numerology for rank-2 bundles with fixed determinant.
//!
//! Binomials `C(m, 2)` are clamped to zero for `m < 2`. Inputs are machine
//! integers; every intermediate value is a `BigInt`.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// `C(m, 2)`, zero for `m < 2`.
pub fn binom2(m: i64) -> BigInt {
    if m < 2 {
        BigInt::from(0)
    } else {
        let m = BigInt::from(m);
        &m * (&m - 1) / 2
    }
}

/// `ρ(r, d, k, g) = r²(g − 1) + 1 − k(k − d + r(g − 1))`.
pub fn rho(r: i64, d: i64, k: i64, g: i64) -> BigInt {
    let (r, d, k, g) = (BigInt::from(r), BigInt::from(d), BigInt::from(k), BigInt::from(g));
    let gm1 = &g - 1;
    &r * &r * &gm1 + 1 - &k * (&k - &d + &r * &gm1)
}

/// `3g − 3 − C(k + 1, 2)`.
pub fn rho_omega(k: i64, g: i64) -> BigInt {
    BigInt::from(3) * g - 3 - binom2(k + 1)
}

/// `ρ(2, d, k, g) − g + C(k − δ, 2)`.
pub fn rho1(d: i64, k: i64, g: i64, delta: i64) -> BigInt {
    rho(2, d, k, g) - g + binom2(k - delta)
}

/// `ρ(2, d, k, g) − g + 2·C(k, 2)`.
pub fn rho2(d: i64, k: i64, g: i64) -> BigInt {
    rho(2, d, k, g) - g + 2 * binom2(k)
}

/// Whether the lower bounds exceed the classical expectation by more than `g`:
/// `C(k − δ, 2) > g`, or `m ≥ 2` and `2·C(k, 2) > g`.
pub fn new_comps(k: i64, g: i64, delta: i64, m: i64) -> bool {
    let g = BigInt::from(g);
    binom2(k - delta) > g || (m >= 2 && 2 * binom2(k) > g)
}

fn check_guards(k: i64, r: i64, s: i64, t: i64) -> Result<()> {
    if k < 0 || r < 0 || s < 0 || t < 0 {
        return Err(Error::GuardViolation(format!(
            "negative parameter in (k, r, s, t) = ({k}, {r}, {s}, {t})"
        )));
    }
    if k > t {
        return Err(Error::GuardViolation(format!("k = {k} exceeds t = {t}")));
    }
    if s > r {
        return Err(Error::GuardViolation(format!("s = {s} exceeds r = {r}")));
    }
    if 2 * t > r {
        return Err(Error::GuardViolation(format!("2t = {} exceeds r = {r}", 2 * t)));
    }
    Ok(())
}

/// `k(2r − s − t) − C(k − δ, 2)`, for subbundles of ranks `s` (degeneracy of
/// rank `s − 2δ`) and `t` (isotropic) in a symplectic bundle of rank `r`.
pub fn codim_bound_single(k: i64, r: i64, s: i64, t: i64, delta: i64) -> Result<BigInt> {
    check_guards(k, r, s, t)?;
    if delta < 0 || 2 * delta > s {
        return Err(Error::GuardViolation(format!(
            "δ = {delta} must satisfy 0 ≤ 2δ ≤ s = {s}"
        )));
    }
    Ok(BigInt::from(k) * (2 * r - s - t) - binom2(k - delta))
}

/// `k(2r − s − t) − 2·C(k, 2)`, for two symplectic forms.
pub fn codim_bound_double(k: i64, r: i64, s: i64, t: i64) -> Result<BigInt> {
    check_guards(k, r, s, t)?;
    Ok(BigInt::from(k) * (2 * r - s - t) - 2 * binom2(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn values() {
        assert_eq!(rho(1, 2, 1, 2), b(2));
        assert_eq!(rho(2, 4, 2, 3), b(5));
        assert_eq!(rho(2, 8, 2, 10) - 1, b(2 * 10 - 8));
        assert_eq!(rho_omega(2, 5), b(9));
        assert_eq!(rho_omega(0, 4), b(9));
        assert_eq!(rho_omega(3, 7), rho(2, 12, 3, 7) - 7 + 3);
    }

    #[test]
    fn corrections() {
        assert_eq!(rho1(8, 3, 5, 0), rho_omega(3, 5));
        assert_eq!(rho1(3, 4, 6, 3), rho(2, 3, 4, 6) - 6);
        assert_eq!(rho2(3, 4, 6) - rho1(3, 4, 6, 0), binom2(4));
    }

    #[test]
    fn new_components() {
        assert!(new_comps(6, 10, 0, 1));
        assert!(!new_comps(3, 10, 0, 2));
        assert!(!new_comps(5, 0, 5, 1));
        assert!(new_comps(4, 11, 4, 2));
    }

    #[test]
    fn codimension_bounds() {
        assert_eq!(codim_bound_single(0, 6, 4, 3, 1).unwrap(), b(0));
        assert_eq!(codim_bound_single(2, 8, 4, 3, 0).unwrap(), b(2 * 9 - 1));
        assert_eq!(codim_bound_double(2, 8, 4, 3).unwrap(), b(2 * 9 - 2));
        assert!(matches!(codim_bound_single(3, 6, 4, 2, 0), Err(Error::GuardViolation(_))));
        assert!(matches!(codim_bound_double(1, 4, 5, 1), Err(Error::GuardViolation(_))));
        assert!(matches!(codim_bound_double(1, 4, 2, 3), Err(Error::GuardViolation(_))));
    }
}

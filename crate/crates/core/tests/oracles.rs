//! Worked examples checked against independent computations: a naive plane
//! counter in machine integers, closed-form point counts, and hand expansions.

use std::collections::BTreeMap;

use symgrass::bn::{binom2, codim_bound_single};
use symgrass::forms::{AlternatingForm, Subspace};
use symgrass::grassmann::{
    count_multi_isotropic, degeneration_witness, fit_dimension_holdout, gaussian_binomial, strata_counts, CountOptions,
};
use symgrass::residue::{
    build_residue_model, global_section_subspace, model_report, pencil_injectivity, residue_sum, RationalFunction,
    SplitBundle,
};
use symgrass::tangent::{
    condition_matrix, dependence_space, extract_dependence_vectors, msg_smoothness_at, pencil_minors, pencil_rank_drop,
    sg_tangent,
    FormPencil,
};
use symgrass::poly::binary_form_common_root;
use symgrass::{Error, Field, Matrix, Polynomial};

/// Counts isotropic planes of `F_p^r` by stratum, from ordered pairs of
/// independent vectors divided by `|GL_2(F_p)|`.
fn naive_planes(p: u64, grams: &[Vec<Vec<u64>>]) -> BTreeMap<usize, u64> {
    let r = grams[0].len();
    let vectors: Vec<Vec<u64>> = (0..p.pow(r as u32))
        .map(|mut n| {
            (0..r)
                .map(|_| {
                    let d = n % p;
                    n /= p;
                    d
                })
                .collect()
        })
        .collect();
    let pair = |g: &Vec<Vec<u64>>, u: &[u64], v: &[u64]| -> u64 {
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s = (s + u[i] * g[i][j] % p * v[j]) % p;
            }
        }
        s
    };
    let image = |u: &[u64]| -> Vec<u64> { (0..r).map(|j| (0..r).map(|i| u[i] * grams[0][i][j]).sum::<u64>() % p).collect() };
    let proportional = |a: &[u64], b: &[u64]| -> bool {
        // a and b span at most a line
        (0..r).all(|i| (0..r).all(|j| (a[i] * b[j] + p * p - a[j] * b[i] % p) % p == 0))
    };
    let mut counts = BTreeMap::new();
    for u in &vectors {
        for v in &vectors {
            if proportional(u, v) {
                continue;
            }
            if grams.iter().any(|g| pair(g, u, v) != 0) {
                continue;
            }
            let (iu, iv) = (image(u), image(v));
            let rank = if iu.iter().chain(&iv).all(|&x| x == 0) {
                0
            } else if proportional(&iu, &iv) {
                1
            } else {
                2
            };
            *counts.entry(2 - rank).or_insert(0u64) += 1;
        }
    }
    let gl2 = (p * p - 1) * (p * p - p);
    counts.values_mut().for_each(|c| *c /= gl2);
    counts
}

fn gram_u64(form: &AlternatingForm, p: u64) -> Vec<Vec<u64>> {
    let g = form.gram();
    (0..g.rows())
        .map(|i| g.row(i).iter().map(|x| x.as_finite().unwrap() as u64 % p).collect())
        .collect()
}

fn q() -> Field {
    Field::rationals()
}

#[test]
fn gaussian_binomials_match_closed_forms() {
    // (q²+1)(q²+q+1) at q=2
    assert_eq!(gaussian_binomial(4, 2, 2), 5 * 7);
    assert_eq!(gaussian_binomial(5, 0, 3), 1);
    assert_eq!(gaussian_binomial(3, 1, 3), (27 - 1) / 2);
}

#[test]
fn lagrangian_planes_over_f2() {
    let f2 = Field::prime(2).unwrap();
    let j = AlternatingForm::standard(&f2, 4, 2);
    let rep = strata_counts(&j, 2, CountOptions::default()).unwrap();
    assert_eq!(rep.strata, naive_planes(2, &[gram_u64(&j, 2)]));
    assert_eq!(rep.strata, BTreeMap::from([(0, (2 + 1) * (4 + 1))]));
}

#[test]
fn rank_two_form_strata() {
    for p in [2u64, 3, 5] {
        let f = Field::prime(p as u32).unwrap();
        let g = AlternatingForm::standard(&f, 4, 1);
        let rep = strata_counts(&g, 2, CountOptions::default()).unwrap();
        assert_eq!(rep.strata, naive_planes(p, &[gram_u64(&g, p)]));
        assert_eq!(rep.total, p * p * p + 2 * p * p + p + 1);
        // all planes minus those meeting no isotropic condition: (q²+1)(q²+q+1) − q⁴
        assert_eq!(rep.total as u128, gaussian_binomial(4, 2, p) - (p as u128).pow(4));
    }
    let f2 = Field::prime(2).unwrap();
    let rep = strata_counts(&AlternatingForm::standard(&f2, 4, 1), 2, CountOptions::default()).unwrap();
    assert_eq!(rep.strata, BTreeMap::from([(1, 18), (2, 1)]));
}

#[test]
fn zero_form_lines() {
    for q in [2u64, 3, 4, 5] {
        let f = Field::of_order(q).unwrap();
        let rep = strata_counts(&AlternatingForm::zero(&f, 2), 1, CountOptions::default()).unwrap();
        assert_eq!(rep.strata, BTreeMap::from([(1, q + 1)]));
    }
}

#[test]
fn fits_of_closed_forms() {
    let lagrangian: BTreeMap<u64, u64> = [2u64, 3, 5, 7, 11].iter().map(|&q| (q, (q + 1) * (q * q + 1))).collect();
    let fit = fit_dimension_holdout(&lagrangian, 1).unwrap();
    assert_eq!(fit.coefficients, vec![1, 1, 1, 1]);
    assert_eq!(fit.degree, Some(3));
    let ones: BTreeMap<u64, u64> = [(2, 1), (3, 1), (5, 1)].into();
    assert_eq!(fit_dimension_holdout(&ones, 1).unwrap().degree, Some(0));
    let rank_two: BTreeMap<u64, u64> = [2u64, 3, 5, 7, 11].iter().map(|&q| (q, q * q * q + 2 * q * q + q + 1)).collect();
    assert_eq!(fit_dimension_holdout(&rank_two, 1).unwrap().coefficients, vec![1, 1, 2, 1]);
}

#[test]
fn three_samples_cannot_certify_a_cubic() {
    let samples: BTreeMap<u64, u64> = [(2, 15), (3, 40), (5, 156)].into();
    assert!(matches!(fit_dimension_holdout(&samples, 1), Err(Error::FitMismatch(_))));
    // with nothing held out the interpolant is a quadratic, not the true count
    let fit = fit_dimension_holdout(&samples, 0).unwrap();
    assert_eq!(fit.degree, Some(2));
    assert_ne!(fit.eval(7), num_bigint::BigInt::from((7 + 1) * (49 + 1)));
}

#[test]
fn radical_plane_witness_over_f3() {
    let f3 = Field::prime(3).unwrap();
    let g = AlternatingForm::standard(&f3, 4, 1);
    let w = degeneration_witness(&g, g.radical()).unwrap();
    assert!(w.holds(2));
    for c in &w.checks {
        if c.t != f3.zero() {
            assert_eq!(c.radical_intersection, 1);
        }
    }
}

#[test]
fn two_forms_on_f3_against_naive_count() {
    let f3 = Field::prime(3).unwrap();
    let j = AlternatingForm::standard(&f3, 4, 2);
    let h = AlternatingForm::new(Matrix::from_ints(
        &f3,
        &[&[0, 1, 0, 1], &[-1, 0, 1, 1], &[0, -1, 0, 1], &[-1, -1, -1, 0]],
    ))
    .unwrap();
    assert!(h.is_symplectic());
    let count = count_multi_isotropic(&[j.clone(), h.clone()], 2, u64::MAX).unwrap();
    let naive: u64 = naive_planes(3, &[gram_u64(&j, 3), gram_u64(&h, 3)]).values().sum();
    assert_eq!(count, naive);
    assert_eq!(count, 10);
    assert_eq!(count_multi_isotropic(&[j.clone(), j.clone()], 2, u64::MAX).unwrap(), 40);
}

#[test]
fn tangent_of_a_lagrangian() {
    let f3 = Field::prime(3).unwrap();
    let j = AlternatingForm::standard(&f3, 4, 2);
    // span{e₁, e₂} in interleaved Darboux coordinates
    let v = Subspace::coordinate(&f3, 4, &[0, 2]);
    assert_eq!(sg_tangent(&j, &v).unwrap().rows(), 2 * 2 - 1);
}

#[test]
fn condition_rows_by_hand() {
    let i2 = Matrix::identity(&q(), 2);
    let n = Matrix::from_ints(&q(), &[&[0, 1], &[0, 0]]);
    let sys = condition_matrix(&[i2.clone(), n]).unwrap();
    // row (1; 1,2) of ψ₁: +ψ₁[2][c] at (1,c) and −ψ₁[1][c] at (2,c) → (0,1,−1,0)
    assert_eq!(sys.matrix.row(0), Matrix::from_ints(&q(), &[&[0, 1, -1, 0]]).row(0));
    // row (2; 1,2) of ψ₂: ψ₂[2] = 0, ψ₂[1] = (0,1) → (0,0,0,−1)
    assert_eq!(sys.matrix.row(1), Matrix::from_ints(&q(), &[&[0, 0, 0, -1]]).row(0));
    assert_eq!(sys.matrix.rank(), 2);
}

#[test]
fn independent_pencil_has_no_dependence() {
    let a = Matrix::eye(&q(), 2, 3);
    let b = Matrix::from_ints(&q(), &[&[0, 1, 0], &[0, 0, 0]]);
    let p = FormPencil::new(a, b).unwrap();
    assert_eq!(dependence_space(&p).rows(), 0);
    // 1×1 minors of [[λ, μ, 0], [0, λ, 0]] are λ, μ and zeros: no common root
    let minors = pencil_minors(&p);
    assert!(!binary_form_common_root(&q(), &minors).exists());
    // the second pairing is not surjective, so the certificate itself is refused
    assert_eq!(pencil_rank_drop(&p).unwrap_err(), Error::NotSurjective);
}

#[test]
fn diagonal_pencil_dependence() {
    let i3 = Matrix::identity(&q(), 3);
    let d = Matrix::from_ints(&q(), &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
    let p = FormPencil::new(i3.clone(), d.clone()).unwrap();
    let dep = dependence_space(&p);
    assert_eq!(dep.rows(), 1);
    let cert = pencil_rank_drop(&p).unwrap();
    let w = cert.witness().unwrap();
    // ψ₁ − ψ₂ = diag(0,0,−1)
    let killed = i3.sub(&d).unwrap();
    assert_eq!(w.v_prime.mul(&killed).unwrap().rank(), 0);
    // the first-block rows are the coordinate vectors e₁, e₂
    let x = dep.row(0).to_vec();
    let vs = extract_dependence_vectors(&d, &x).unwrap();
    let a_minus = d.sub(&i3).unwrap();
    for (_, v) in &vs {
        assert!(a_minus.transpose().mul(&Matrix::from_rows(&q(), vec![v.clone()]).unwrap().transpose()).unwrap().is_zero());
        assert!(v[2] == q().zero());
    }
    assert_eq!(Matrix::from_rows(&q(), vs.into_iter().map(|(_, v)| v).collect()).unwrap().rank(), 2);
}

#[test]
fn equal_forms_are_singular_everywhere() {
    let f3 = Field::prime(3).unwrap();
    let j = AlternatingForm::standard(&f3, 4, 2);
    let h = AlternatingForm::new(Matrix::from_ints(
        &f3,
        &[&[0, 1, 0, 1], &[-1, 0, 1, 1], &[0, -1, 0, 1], &[-1, -1, -1, 0]],
    ))
    .unwrap();
    let mut planes = 0;
    for v in symgrass::grassmann::SubspaceStream::new(&f3, 4, 2, u64::MAX).unwrap() {
        if !j.is_isotropic(&v).unwrap() {
            continue;
        }
        let same = msg_smoothness_at(&j, &j, &v).unwrap();
        assert!(!same.smooth() && same.agreement);
        if h.is_isotropic(&v).unwrap() {
            let rep = msg_smoothness_at(&j, &h, &v).unwrap();
            assert!(rep.agreement);
            assert!(rep.smooth());
            planes += 1;
        }
    }
    assert_eq!(planes, 10);
}

#[test]
fn residue_theorem_on_partial_fractions() {
    let f = q();
    // 1/(z−1) + 2/(z−3) = (3z − 5)/((z−1)(z−3))
    let h = RationalFunction::new(Polynomial::from_ints(&f, &[-5, 3]), Polynomial::from_ints(&f, &[3, -4, 1])).unwrap();
    assert_eq!(residue_sum(&h).unwrap(), f.zero());
    let poly = RationalFunction::from_polynomial(Polynomial::from_ints(&f, &[1, 2, 3]));
    assert_eq!(residue_sum(&poly).unwrap(), f.zero());
    let irrational = RationalFunction::new(Polynomial::one(&f), Polynomial::from_ints(&f, &[-2, 0, 1])).unwrap();
    assert_eq!(residue_sum(&irrational).unwrap_err(), Error::SplitFailure);
}

#[test]
fn canonical_models_by_dimension_count() {
    let f = q();
    let one = RationalFunction::constant(&f, f.one());
    let bundle = SplitBundle::new(-1, -1);
    for (d_points, deg) in [(vec![f.one(), f.from_i64(-1)], 2usize), (vec![f.zero()], 1)] {
        let m = build_residue_model(&f, bundle, &d_points, &[], &one).unwrap();
        let rep = model_report(&m).unwrap();
        assert_eq!(rep.dim_tail, 4 * deg);
        assert_eq!(rep.dim_regular, 2 * deg);
        // δ = 0: the form vanishes on M
        assert_eq!(rep.regular_radical, 2 * deg);
        assert_eq!(rep.sections, Some((-2 + 2 * deg as i64 + 2) as usize));
        assert_eq!(rep.sections_isotropic, Some(true));
        assert!(rep.symplectic);
        let s = global_section_subspace(&m).unwrap();
        let restricted = m.form.restrict(&s).unwrap();
        assert_eq!(restricted.rank(), 0);
    }
}

#[test]
fn vanishing_failure_for_unbalanced_bundle() {
    let f = q();
    let one = RationalFunction::constant(&f, f.one());
    // h¹(O(−3)(D)) = max(0, 3 − 1 − deg D) > 0 for deg D = 1
    let m = build_residue_model(&f, SplitBundle::new(-3, 1), &[f.zero()], &[], &one).unwrap();
    assert!(matches!(global_section_subspace(&m), Err(Error::VanishingViolated(_))));
}

#[test]
fn single_form_injective_from_degree_two() {
    let f = Field::prime(7).unwrap();
    let one = RationalFunction::constant(&f, f.one());
    let pts: Vec<_> = (1..=4).map(|i| f.from_i64(i)).collect();
    let rep = pencil_injectivity(&f, SplitBundle::new(-1, -1), &pts, &[one]).unwrap();
    assert!(rep.injective);
    assert!(rep.min_injective_degree.unwrap() <= 2);
}

#[test]
fn pencil_on_o_minus_three() {
    let f = q();
    let phis = [
        RationalFunction::constant(&f, f.one()),
        RationalFunction::from_polynomial(Polynomial::x(&f)),
    ];
    let pts: Vec<_> = [1, -1, 2, 3].iter().map(|&i| f.from_i64(i)).collect();
    let rep = pencil_injectivity(&f, SplitBundle::new(-1, -2), &pts, &phis).unwrap();
    assert!(rep.injective);
    let collide: Vec<_> = [0, 1, 2].iter().map(|&i| f.from_i64(i)).collect();
    assert!(matches!(
        pencil_injectivity(&f, SplitBundle::new(-1, -2), &collide, &phis),
        Err(Error::SupportCollision(_))
    ));
}

#[test]
fn codimension_bound_in_the_residue_model() {
    // r = dim Ẽ = 4 deg D + 2δ, s = dim M = 2 deg D + 2δ, t = dim S = d + 2 deg D + 2 − 2g
    for (deg_d, delta, d, g, k) in [(3i64, 1i64, -1i64, 1i64, 2i64), (4, 0, 2, 2, 3), (5, 2, 0, 3, 4)] {
        let (r, s, t) = (4 * deg_d + 2 * delta, 2 * deg_d + 2 * delta, d + 2 * deg_d + 2 - 2 * g);
        let bound = codim_bound_single(k, r, s, t, delta).unwrap();
        assert_eq!(bound, k * (4 * deg_d + 2 * delta - d - 2 + 2 * g) - binom2(k - delta));
    }
}

use l2alex_core::fox::{fox_derivative, fox_row, jacobian, pd_from_braid, wirtinger_from_pd};
use l2alex_core::groupring::{
    free_reduce, growth_rate_upper, ring_mul, Gen, GroupRingElem, GroupRingMatrix, HomToZk, Word,
};
use l2alex_core::laurent::{
    abelianize_matrix, kappa_scale, kappa_scale_exact, newton_width_int, one_var_roots, LaurentMatrix, LaurentPoly,
};
use l2alex_core::mahler::{fk_det_abelian, fk_det_poly, induce_index_d, mahler_jensen, FkOptions};
use l2alex_core::pipeline::spectral_radius;
use l2alex_core::torsionfn::{equivalent, sample, ExtReal, Factor, MaxMonomialFn, PosReal};
use l2alex_core::{Exec, Exponent};
use num::{BigRational, One, ToPrimitive, Zero};
use proptest::prelude::*;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn word(gens: Gen, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..gens, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=max_len).prop_map(free_reduce)
}

fn elem(gens: Gen) -> impl Strategy<Value = GroupRingElem> {
    prop::collection::vec((word(gens, 4), -4i64..=4), 1..=3).prop_map(|ts| {
        let mut e = GroupRingElem::zero();
        for (w, c) in ts {
            e.add_term(w, q(c));
        }
        e
    })
}

fn gr_matrix(n: usize) -> impl Strategy<Value = GroupRingMatrix> {
    prop::collection::vec(elem(2), n * n).prop_map(move |v| GroupRingMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, nvars), -5i64..=5), 1..=max_terms)
        .prop_map(move |ts| LaurentPoly::from_int_terms(nvars, &ts))
}

fn nonzero_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    poly(nvars, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Integer one-variable polynomial with nonzero constant and leading terms.
fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(-bound..=bound, 2..=max_deg + 1)
        .prop_filter("nonzero ends", |c| c[0] != 0 && *c.last().unwrap() != 0)
        .prop_map(|c| LaurentPoly::from_coeffs(&c, 0))
}

fn laurent_matrix(n: usize, nvars: usize) -> impl Strategy<Value = LaurentMatrix> {
    prop::collection::vec(poly(nvars, 3), n * n)
        .prop_map(move |v| LaurentMatrix::from_fn(n, n, nvars, |i, j| v[i * n + j].clone()))
}

fn max_mono() -> impl Strategy<Value = MaxMonomialFn> {
    (
        1i64..=5,
        -3i64..=3,
        prop::collection::vec((prop::sample::select(vec![1i64, 2, 3, 5, 7]), 1i64..=3, -3i64..=3), 0..=4),
    )
        .prop_map(|(c, r, fs)| {
            let factors = fs
                .into_iter()
                .map(|(a, b, e)| Factor {
                    c: PosReal::exact(BigRational::new(a.into(), b.into())),
                    e: Exponent::from_integer(e),
                })
                .collect();
            MaxMonomialFn::new(PosReal::int(c), Exponent::from_integer(r), factors)
        })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_mul_is_submultiplicative(a in elem(3), b in elem(3)) {
        prop_assert!(ring_mul(&a, &b).l1_norm() <= a.l1_norm() * b.l1_norm());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fox_fundamental_identity(gens in 1u32..=4, raw in prop::collection::vec((0u32..4, prop_oneof![-3i64..=-1, 1i64..=3]), 0..=30)) {
        let w = free_reduce(raw.into_iter().map(|(g, e)| (g % gens, e)));
        let mut lhs = GroupRingElem::zero();
        for g in 0..gens {
            let gi = &GroupRingElem::from_word(Word::generator(g)) - &GroupRingElem::one();
            lhs = &lhs + &ring_mul(&fox_derivative(&w, g), &gi);
        }
        prop_assert_eq!(lhs, &GroupRingElem::from_word(w) - &GroupRingElem::one());
    }

    #[test]
    fn free_reduce_idempotent_and_inverse(w in word(3, 12)) {
        prop_assert_eq!(free_reduce(w.syllables().iter().copied()), w.clone());
        let prod = ring_mul(&GroupRingElem::from_word(w.clone()), &GroupRingElem::from_word(w.inverse()));
        prop_assert_eq!(prod, GroupRingElem::one());
    }

    #[test]
    fn fox_row_of_product(r in word(3, 10), s in word(3, 10)) {
        let lhs = fox_row(&r.mul(&s), 3);
        let rs = fox_row(&s, 3);
        for (g, (x, y)) in lhs.iter().zip(fox_row(&r, 3)).enumerate() {
            prop_assert_eq!(x, &(&y + &rs[g].left_mul_word(&r)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_norm_is_submultiplicative(a in gr_matrix(2), b in gr_matrix(2)) {
        prop_assert!(a.mul(&b).unwrap().l1_norm() <= a.l1_norm() * b.l1_norm());
    }

    #[test]
    fn growth_bound_dominates_augmented_spectral_radius(a in gr_matrix(2)) {
        let aug: Vec<Vec<i64>> = (0..2)
            .map(|i| (0..2).map(|j| {
                let s: BigRational = a.get(i, j).terms().map(|(_, c)| c.clone()).sum();
                s.to_integer().to_i64().unwrap()
            }).collect())
            .collect();
        let g = growth_rate_upper(&a, 8).unwrap();
        let rho = if aug.iter().flatten().all(|&x| x == 0) { 0.0 } else { spectral_radius(&aug).unwrap() };
        prop_assert!(g.upper() >= rho * (1.0 - 1e-12), "{} < {}", g.upper(), rho);
        for w in g.running_min.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
    }

    #[test]
    fn wirtinger_rows_sum_to_zero(word in prop::collection::vec(prop_oneof![Just(1i64), Just(-1), Just(2), Just(-2)], 1..=8)) {
        let Ok(pd) = pd_from_braid(3, &word) else { return Ok(()); };
        let p = wirtinger_from_pd(&pd).unwrap();
        let m = abelianize_matrix(&jacobian(&p), &p.phi_or_meridional().unwrap()).unwrap();
        for i in 0..m.rows() {
            let s: f64 = (0..m.cols()).map(|j| m.get(i, j).eval_f64(&[1.0])).sum();
            prop_assert_eq!(s, 0.0);
        }
    }

    #[test]
    fn det_is_multiplicative((a, b) in (1usize..=3).prop_flat_map(|n| (laurent_matrix(n, 2), laurent_matrix(n, 2)))) {
        let lhs = a.mul(&b).unwrap().det().unwrap();
        prop_assert_eq!(lhs, &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn det_is_multiplicative_size_four(a in laurent_matrix(4, 1), b in laurent_matrix(4, 1)) {
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }

    #[test]
    fn newton_width_is_additive(p in nonzero_poly(2, 4), r in nonzero_poly(2, 4), psi in prop::collection::vec(-3i64..=3, 2)) {
        let w = newton_width_int(&(&p * &r), &psi).unwrap();
        prop_assert_eq!(w, newton_width_int(&p, &psi).unwrap() + newton_width_int(&r, &psi).unwrap());
    }

    #[test]
    fn kappa_is_a_ring_homomorphism(p in poly(2, 4), r in poly(2, 4), psi in prop::collection::vec(-3i64..=3, 2), num in 1i64..=9, den in 1i64..=9) {
        let t = BigRational::new(num.into(), den.into());
        let k = |x: &LaurentPoly| kappa_scale_exact(x, &psi, &t).unwrap();
        prop_assert_eq!(k(&(&p + &r)), &k(&p) + &k(&r));
        prop_assert_eq!(k(&(&p * &r)), &k(&p) * &k(&r));
        let tf = t.to_f64().unwrap();
        let real = kappa_scale(&p, &psi, tf).unwrap();
        let exact = k(&p);
        prop_assert_eq!(real.terms.len(), exact.num_terms());
        for ((e1, c1), (e2, c2)) in real.terms.iter().zip(exact.terms()) {
            prop_assert_eq!(e1, e2);
            prop_assert!(rel_close(*c1, c2.to_f64().unwrap(), 1e-12));
        }
    }

    #[test]
    fn root_moduli_product_is_exact(p in int_poly(8, 9)) {
        let r = one_var_roots(&p).unwrap();
        let exact = r.exact_product.to_f64().unwrap();
        prop_assert!(rel_close(r.product_f64(), exact, 1e-9), "{} vs {}", r.product_f64(), exact);
    }

    #[test]
    fn jensen_is_multiplicative_and_at_least_one(p in int_poly(5, 9), r in int_poly(5, 9)) {
        let (mp, mr) = (mahler_jensen(&p).unwrap(), mahler_jensen(&r).unwrap());
        let mpr = mahler_jensen(&(&p * &r)).unwrap();
        prop_assert!((mpr.value - mp.value * mr.value).abs() <= 1e-9 * mpr.value + mpr.err + mp.mul(&mr).err);
        prop_assert!(mp.value >= 1.0 - mp.err - 1e-12);
    }

    #[test]
    fn finite_cover_power_law_for_scaled_determinants(p in int_poly(5, 9), d in 2usize..=3, t in 0.2f64..5.0) {
        let opts = FkOptions::default();
        let base = fk_det_poly(&p, &[1], t, &opts).unwrap();
        let induced = fk_det_abelian(&induce_index_d(&p, d).unwrap(), &[d as i64], t).unwrap();
        prop_assert!(rel_close(induced.value, base.value.powi(d as i32), 1e-9));
    }

    #[test]
    fn degree_bound_for_linear_pencils(n in 1usize..=4, a in prop::collection::vec(-3i64..=3, 16), d in prop::collection::vec(-3i64..=3, 4)) {
        let m = LaurentMatrix::from_fn(n, n, 1, |i, j| {
            let dz = if i == j { d[i] } else { 0 };
            LaurentPoly::from_int_terms(1, &[(vec![0], a[i * 4 + j]), (vec![1], dz)])
        });
        let det = m.det().unwrap();
        if !det.is_zero() {
            prop_assert!(newton_width_int(&det, &[1]).unwrap() <= n as i64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn equivalence_is_an_equivalence(f in max_mono(), g in max_mono(), r in -4i64..=4, s in -4i64..=4) {
        let tr = MaxMonomialFn::t_pow(Exponent::from_integer(r));
        let ts = MaxMonomialFn::t_pow(Exponent::from_integer(s));
        prop_assert!(equivalent(&f, &f));
        let f2 = f.multiply(&tr);
        prop_assert!(equivalent(&f, &f2) && equivalent(&f2, &f));
        let f3 = f2.multiply(&ts);
        prop_assert!(equivalent(&f, &f3));
        prop_assert_eq!(equivalent(&f, &g), equivalent(&g, &f));
        prop_assert!(equivalent(&f.multiply(&g), &f2.multiply(&g.multiply(&ts))));
    }

    #[test]
    fn degree_is_additive(f in max_mono(), g in max_mono()) {
        let d = |h: &MaxMonomialFn| h.degree().deg.finite().unwrap();
        prop_assert_eq!(d(&f.multiply(&g)), d(&f) + d(&g));
        prop_assert_eq!(f.multiply(&g).degree_exact(), Some(f.degree_exact().unwrap() + g.degree_exact().unwrap()));
    }

    #[test]
    fn degree_scales_under_reparametrisation(f in max_mono(), a in 1i64..=4, b in 1i64..=4) {
        let rho = Exponent::new(a, b);
        let g = f.reparam_power(rho).unwrap();
        prop_assert_eq!(g.degree_exact(), Some(f.degree_exact().unwrap() * rho));
        for t in [0.05, 0.7, 3.0, 40.0] {
            prop_assert!(rel_close(g.eval(t), f.eval(t.powf(a as f64 / b as f64)), 1e-9));
        }
    }

    #[test]
    fn symmetry_doubles_on_squares(f in max_mono()) {
        let sym = f.multiply(&f.invert_variable());
        let k = sym.symmetry_exponent().expect("f(t) f(1/t) is symmetric");
        let k2 = sym.multiply(&sym).symmetry_exponent().unwrap();
        prop_assert_eq!(k2.k, k.k * 2);
        if let Some(s) = f.symmetry_exponent() {
            prop_assert_eq!(f.multiply(&f).symmetry_exponent().unwrap().k, s.k * 2);
        }
    }

    #[test]
    fn json_round_trip_is_exact(f in max_mono()) {
        prop_assert_eq!(MaxMonomialFn::from_json(&f.to_json()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampled_degrees_match_exact(f in max_mono()) {
        // breakpoints lie in [1/3, 7]; the quartile windows of [1e-4, 1e4] avoid them
        let s = sample(|t| Ok((f.eval(t), 0.0)), 1e-4, 1e4, 121, Exec::Sequential).unwrap();
        let d = s.degree();
        let exact = f.degree();
        let close = |a: ExtReal, b: ExtReal| (a.finite().unwrap() - b.finite().unwrap()).abs() <= 0.02;
        prop_assert!(close(d.deg0, exact.deg0) && close(d.deg_inf, exact.deg_inf), "{d:?} vs {exact:?}");
    }
}

#[test]
fn hom_kernel_check_rejects_bad_images() {
    let r = free_reduce([(0, 1), (1, 1)]);
    assert!(HomToZk::new(1, vec![vec![1], vec![1]], std::slice::from_ref(&r)).is_err());
    assert!(HomToZk::new(1, vec![vec![1], vec![-1]], &[r]).is_ok());
    assert!(BigRational::one() > BigRational::zero());
}

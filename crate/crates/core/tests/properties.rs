use hbsums::certify::{
    certify_interlacing, certify_real_rooted, certify_unit_circle, count_real_roots, squarefree_float_roots, Bound,
};
use hbsums::construct::{
    build_hn_recursive, build_hn_subset, circle_poly, exp_sum_build, lee_yang_poly, orthogonal_h2, polya_shift,
    three_term_step, Limits, DEGREE_DROP_COS_TOL,
};
use hbsums::fuzz::{random_coupling_matrix, random_g, random_instance, random_polya_case, trial_rng};
use hbsums::hb::{hb_from_pair, hb_random, hb_verify_numeric, wronskian};
use hbsums::numeric::{int, rat, ComplexF, GaussianRational, Rational, TolerancePolicy};
use hbsums::poly::{ExactPoly, FloatPoly, RPoly};
use hbsums::roots::{count_zeros_box, find_roots, ContourBox};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn policy() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn arb_rational(bound: i64) -> impl Strategy<Value = Rational> {
    (1i64..=6).prop_flat_map(move |d| (-bound * d..=bound * d).prop_map(move |n| rat(n, d)))
}

fn distinct(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v.dedup();
    v
}

fn linear_product(roots: &[Rational]) -> RPoly {
    RPoly::from_roots(Rational::one(), roots)
}

/// Real roots, nonreal conjugate pairs `u +- v i` with `|v| >= 1/4`, and a
/// complex leading coefficient.
fn arb_planted() -> impl Strategy<Value = (ExactPoly, bool)> {
    (
        prop::collection::vec(arb_rational(6), 0..=8),
        prop::collection::vec((arb_rational(4), (1i64..=12).prop_map(|k| rat(k, 4))), 0..=2),
        (-3i64..=3, 1i64..=3),
    )
        .prop_filter("degree >= 1", |(r, c, _)| !r.is_empty() || !c.is_empty())
        .prop_map(|(real, pairs, (lre, lim))| {
            let mut roots: Vec<GaussianRational> = real.into_iter().map(GaussianRational::from_real).collect();
            let nonreal = !pairs.is_empty();
            for (u, v) in pairs {
                roots.push(GaussianRational::new(u.clone(), v.clone()));
                roots.push(GaussianRational::new(u, -v));
            }
            (ExactPoly::from_roots(GaussianRational::from_ints(lre, lim), &roots), !nonreal)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn sturm_counts_distinct_factors(roots in prop::collection::vec(arb_rational(8), 1..=10)) {
        let roots = distinct(roots);
        let p = linear_product(&roots);
        prop_assert_eq!(count_real_roots(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), roots.len());
    }

    #[test]
    fn real_certificate_agrees_with_float_roots((p, real) in arb_planted()) {
        let cert = certify_real_rooted(&p).unwrap();
        prop_assert_eq!(cert.passed(), real);
        let set = squarefree_float_roots(&p, &policy()).unwrap();
        prop_assert!(set.converged);
        let float_real = set.max_imag_residual().unwrap() < policy().root_residual_tol;
        prop_assert_eq!(cert.passed(), float_real);
    }

    #[test]
    fn circle_certificate_agrees_with_float_roots(
        points in prop::collection::vec((-6i64..=6, 1i64..=6), 1..=5),
        off in prop::option::of(arb_rational(3)),
        minus_one in 0usize..=2,
    ) {
        let mut roots: Vec<GaussianRational> = Vec::new();
        for (u, v) in points {
            let d = u * u + v * v;
            let z = GaussianRational::new(rat(u * u - v * v, d), rat(2 * u * v, d));
            if !roots.contains(&z) {
                roots.push(z);
            }
        }
        roots.extend(std::iter::repeat_n(GaussianRational::from_ints(-1, 0), minus_one));
        let on_circle = off.as_ref().is_none_or(|r| r.abs() == Rational::one());
        if let Some(r) = off {
            roots.push(GaussianRational::from_real(r));
        }
        let p = ExactPoly::from_roots(GaussianRational::one(), &roots);
        let cert = certify_unit_circle(&p).unwrap();
        prop_assert_eq!(cert.passed(), on_circle);
        let set = squarefree_float_roots(&p, &policy()).unwrap();
        prop_assert!(set.converged);
        prop_assert_eq!(cert.passed(), set.max_circle_residual().unwrap() < policy().root_residual_tol);
    }

    #[test]
    fn cayley_maps_real_points_to_the_circle(z0 in arb_rational(50)) {
        let one = GaussianRational::one();
        let iz = GaussianRational::new(Rational::zero(), z0);
        let t0 = (&one + &iz).checked_div(&(&one - &iz)).unwrap();
        prop_assert_eq!(t0.norm_sqr(), Rational::one());
    }

    #[test]
    fn interlacing_means_constant_wronskian_sign(
        points in prop::collection::vec(arb_rational(6), 2..=9),
        samples in prop::collection::vec(arb_rational(20), 32),
    ) {
        let points = distinct(points);
        prop_assume!(points.len() >= 2);
        let p = linear_product(&points.iter().step_by(2).cloned().collect::<Vec<_>>());
        let q = linear_product(&points.iter().skip(1).step_by(2).cloned().collect::<Vec<_>>());
        let cert = certify_interlacing(&p, &q).unwrap();
        prop_assert!(cert.passed());
        let w = wronskian(&p, &q);
        let signs: Vec<bool> = samples.iter().map(|x| w.eval(x).is_positive()).collect();
        prop_assert!(samples.iter().all(|x| !w.eval(x).is_zero()));
        prop_assert!(signs.iter().all(|s| *s == signs[0]));
    }

    #[test]
    fn random_hb_polynomials_live_in_the_upper_half_plane(degree in 1usize..=5, seed in any::<u64>()) {
        let w = hb_random(degree, seed).unwrap();
        let roots = find_roots(&w.omega().to_float().unwrap(), &policy()).unwrap();
        prop_assert!(roots.converged);
        prop_assert!(roots.roots.iter().all(|z| z.im > policy().root_residual_tol));
        let f = w.omega().to_float().unwrap();
        let fs = f.star();
        for k in 0..8 {
            let x = ComplexF::new(k as f64 - 3.7, 0.0);
            let ratio = f.eval(&x).norm() / fs.eval(&x).norm();
            prop_assert!((ratio - 1.0).abs() < 1e-9);
            let z = ComplexF::new(k as f64 - 3.7, 0.05 + k as f64 * 0.4);
            prop_assert!(f.eval(&z).norm() < fs.eval(&z).norm());
        }
    }

    #[test]
    fn hb_construction_matches_numeric_membership(
        p_roots in prop::collection::vec(arb_rational(5), 0..=4),
        q_roots in prop::collection::vec(arb_rational(5), 0..=4),
        lp in prop::sample::select(vec![-2i64, -1, 1, 3]),
        lq in prop::sample::select(vec![-3i64, -1, 1, 2]),
    ) {
        let p = RPoly::from_roots(int(lp), &distinct(p_roots));
        let q = RPoly::from_roots(int(lq), &distinct(q_roots));
        let omega = ExactPoly::from_real_imag(&p, &q);
        let numeric = hb_verify_numeric(&omega, &policy()).unwrap();
        prop_assert_eq!(hb_from_pair(&p, &q).is_ok(), numeric);
    }

    #[test]
    fn orthogonal_step_equals_recurrence(
        degree in 1usize..=4,
        seed in any::<u64>(),
        a in (1i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d)),
        b in arb_rational(3),
        c in (1i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d)),
    ) {
        let w = hb_random(degree, seed).unwrap();
        let h = orthogonal_h2(w.p(), w.q(), &a, &b, &c).unwrap();
        prop_assert_eq!(h, three_term_step(w.p(), w.q(), &a, &b, &c).to_exact());
    }

    #[test]
    fn planted_roots_are_recovered(
        ints in prop::collection::btree_set(-12i64..=12, 1..=8),
        pairs in prop::collection::vec((-6i64..=6, 1i64..=6), 0..=2),
    ) {
        // roots on a grid of spacing 1/2, well separated
        let mut roots: Vec<ComplexF> = ints.iter().map(|&k| ComplexF::new(k as f64 / 2.0, 0.0)).collect();
        for (u, v) in pairs {
            let z = ComplexF::new(u as f64 / 2.0 + 0.25, v as f64 / 2.0);
            if !roots.contains(&z) {
                roots.push(z);
                roots.push(z.conj());
            }
        }
        let exact: Vec<GaussianRational> = roots
            .iter()
            .map(|z| GaussianRational::new(Rational::from_float(z.re).unwrap(), Rational::from_float(z.im).unwrap()))
            .collect();
        let p = ExactPoly::from_roots(GaussianRational::one(), &exact).to_float().unwrap();
        let found = find_roots(&p, &policy()).unwrap();
        prop_assert!(found.converged);
        for r in &roots {
            let nearest = found.roots.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-8 * r.norm().max(1.0), "root {} off by {}", r, nearest);
        }
    }

    #[test]
    fn large_box_counts_every_root(
        roots in prop::collection::vec((-40i64..=40, -40i64..=40), 1..=8),
    ) {
        let roots: Vec<ComplexF> = roots.iter().map(|&(a, b)| ComplexF::new(a as f64 / 10.0 + 0.013, b as f64 / 10.0 + 0.017)).collect();
        let p = FloatPoly::from_roots(ComplexF::new(1.0, 0.0), &roots);
        let b = ContourBox::new(-10.0, 10.0, -10.0, 10.0).unwrap();
        prop_assert_eq!(count_zeros_box(&p, &b, &policy()).unwrap(), roots.len() as i64);
    }

    #[test]
    fn box_counts_add_over_a_partition(
        roots in prop::collection::vec((-30i64..=30, -30i64..=30), 1..=8),
        cut in -25i64..=25,
    ) {
        let roots: Vec<ComplexF> = roots.iter().map(|&(a, b)| ComplexF::new(a as f64 / 10.0, b as f64 / 10.0)).collect();
        // half-integer grid offset keeps roots off the cut and the outer edges
        let cut = cut as f64 / 10.0 + 0.05;
        let p = FloatPoly::from_roots(ComplexF::new(1.0, 0.0), &roots);
        let whole = ContourBox::new(-4.05, 4.05, -4.05, 4.05).unwrap();
        let left = ContourBox::new(-4.05, cut, -4.05, 4.05).unwrap();
        let right = ContourBox::new(cut, 4.05, -4.05, 4.05).unwrap();
        let total = count_zeros_box(&p, &whole, &policy()).unwrap();
        let parts = count_zeros_box(&p, &left, &policy()).unwrap() + count_zeros_box(&p, &right, &policy()).unwrap();
        prop_assert_eq!(total, parts);
        prop_assert_eq!(total, roots.len() as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn subset_and_recursion_agree_and_are_real(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = trial_rng(seed, 0);
        let inst = random_instance(&mut rng, n, 3, 6);
        let subset = build_hn_subset(&inst, &Limits::default()).unwrap();
        prop_assert_eq!(&subset, &build_hn_recursive(&inst, &Rational::zero(), &Limits::default()).unwrap());
        prop_assert_eq!(subset.star(), subset.clone());
        prop_assert!(certify_real_rooted(&subset).unwrap().passed());
    }

    #[test]
    fn offsets_push_roots_off_the_axis(seed in any::<u64>(), n in 1usize..=3, a in prop::sample::select(vec![rat(1, 4), int(1), int(4)])) {
        let mut rng = trial_rng(seed, 1);
        let mut inst = random_instance(&mut rng, n, 2, 6);
        // at least n zeros of G
        while inst.g().zero_count() < n {
            inst = random_instance(&mut rng, n, 2, 6);
        }
        let up = build_hn_recursive(&inst, &a, &Limits::default()).unwrap();
        let down = build_hn_recursive(&inst, &-&a, &Limits::default()).unwrap();
        if up.degree().unwrap_or(0) > 0 {
            let r = squarefree_float_roots(&up, &policy()).unwrap();
            prop_assert!(r.roots.iter().all(|z| z.im > -1e-8));
        }
        if down.degree().unwrap_or(0) > 0 {
            let r = squarefree_float_roots(&down, &policy()).unwrap();
            prop_assert!(r.roots.iter().all(|z| z.im < 1e-8));
        }
    }

    #[test]
    fn circle_polynomials_are_self_inversive_and_certified(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = trial_rng(seed, 2);
        let inst = random_instance(&mut rng, n, 1, 6);
        let p = circle_poly(inst.g(), inst.a(), &Limits::default()).unwrap();
        let c = p.coeffs();
        prop_assert_eq!(c.len(), n + 1);
        for j in 0..=n {
            prop_assert_eq!(&c[j], &c[n - j].conj());
        }
        prop_assert!(certify_unit_circle(&p).unwrap().passed());
        let ly = lee_yang_poly(&random_coupling_matrix(&mut rng, n), &Limits::default()).unwrap();
        prop_assert!(certify_unit_circle(&ly).unwrap().passed());
    }

    #[test]
    fn polya_shift_keeps_roots_real(seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 3);
        let case = random_polya_case(&mut rng);
        let f = case.polynomial();
        let h = polya_shift(&f, case.a, case.b, case.alpha).unwrap();
        let n = f.degree().unwrap();
        let cos = case.phase().cos();
        if cos.abs() < DEGREE_DROP_COS_TOL {
            prop_assert_eq!(h.degree(), Some(n - 1));
        } else {
            let want = 2.0 * f.coeff(n).re * cos;
            prop_assert!((h.coeff(n).re - want).abs() <= 1e-10 * want.abs());
        }
        if h.degree().unwrap_or(0) > 0 {
            let r = find_roots(&h, &policy()).unwrap();
            prop_assert!(r.max_imag_residual().unwrap() < 1e-8);
        }
    }

    #[test]
    fn exponential_sums_have_no_zeros_off_the_axis(
        seed in any::<u64>(),
        n in 1usize..=4,
        r in 1.0f64..=10.0,
    ) {
        let mut rng = trial_rng(seed, 4);
        let g = random_g(&mut rng, 4);
        let ab: Vec<(f64, f64)> = (0..n).map(|k| (0.2 + 0.3 * k as f64 + (seed % 7) as f64 * 0.05, 0.3 + 0.2 * k as f64)).collect();
        let a: Vec<f64> = ab.iter().map(|x| x.0).collect();
        let b: Vec<f64> = ab.iter().map(|x| x.1).collect();
        let e = exp_sum_build(&g, &a, &b, &Limits::default()).unwrap();
        let upper = ContourBox::new(-r, r, 0.1, 3.0).unwrap();
        prop_assert_eq!(count_zeros_box(&e, &upper, &policy()).unwrap(), 0);
        prop_assert_eq!(count_zeros_box(&e, &upper.mirrored(), &policy()).unwrap(), 0);
    }
}

use isoscan_core::elliptic::{
    reduce, sylow2_shape, sylow2_shape_sampled, trace_of_frobenius, trace_of_frobenius_seeded, ReducedCurve, RationalCurve,
};
use isoscan_core::numtheory::{int, prime_stream, rat, Fq, Rational};
use isoscan_core::scanner::{wilson_interval, WILSON_Z99};
use isoscan_core::theory::{predict, CoefficientVector, GaloisImageProfile};
use isoscan_core::torsion_isogeny::{
    exact_order_degree, exact_order_poly_fq, kohel_height, rational_two_torsion, velu2, velu2_fq,
};
use proptest::prelude::*;

fn small_primes() -> Vec<u64> {
    prime_stream(5).take_while(|&p| p < 3000).collect()
}

prop_compose! {
    fn curve_mod_p()(i in 0usize..400, a in any::<u64>(), b in any::<u64>()) -> Option<ReducedCurve> {
        let p = small_primes()[i];
        let f = Fq::prime(p).unwrap();
        ReducedCurve::new(f.from_u64(a % p), f.from_u64(b % p)).ok()
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn trace_is_seed_independent(e in curve_mod_p(), s in any::<u64>()) {
        let Some(e) = e else { return Ok(()) };
        prop_assert_eq!(trace_of_frobenius(&e).unwrap(), trace_of_frobenius_seeded(&e, s).unwrap());
    }

    #[test]
    fn sampled_shape_agrees(e in curve_mod_p(), s in any::<u64>()) {
        let Some(e) = e else { return Ok(()) };
        let n = trace_of_frobenius(&e).unwrap().np as u128;
        prop_assert_eq!(sylow2_shape(&e, n).unwrap(), sylow2_shape_sampled(&e, n, s, 40).unwrap());
    }

    #[test]
    fn exact_order_degrees(e in curve_mod_p()) {
        let Some(e) = e else { return Ok(()) };
        for m in 1..=4 {
            let h = exact_order_poly_fq(&e, m).unwrap();
            prop_assert_eq!(h.poly.degree(), Some(exact_order_degree(m)));
        }
    }

    #[test]
    fn height_grows_by_one_over_quadratic_extension(e in curve_mod_p()) {
        let Some(e) = e else { return Ok(()) };
        let t = trace_of_frobenius(&e).unwrap();
        let p = t.p;
        if t.ap.rem_euclid(4) != 2 || t.ap.rem_euclid(p as i64) == 0 {
            return Ok(());
        }
        let h1 = kohel_height(t.ap as i128, p as u128).unwrap();
        let h2 = kohel_height(t.ap2(), (p as u128) * (p as u128)).unwrap();
        prop_assert_eq!(h2, h1 + 1);
    }

    #[test]
    fn wilson_is_a_sane_interval(n in 1u64..100_000, k in any::<u64>()) {
        let k = k % (n + 1);
        let (lo, hi) = wilson_interval(k, n, WILSON_Z99);
        let ph = k as f64 / n as f64;
        prop_assert!(0.0 <= lo && lo <= ph && ph <= hi && hi <= 1.0);
    }

    /// Reduction commutes with Vélu's formulas at good primes.
    #[test]
    fn velu_commutes_with_reduction(x0 in -20i64..20, c in -20i64..20, i in 0usize..100) {
        // y² = (x - x0)(x² + x0 x + c) with the x² term already zero.
        let a = c - x0 * x0;
        let b = -x0 * c;
        let Ok(e) = RationalCurve::from_ints(a, b) else { return Ok(()) };
        prop_assert!(rational_two_torsion(&e).contains(&int(x0)));
        let img = velu2(&e, &int(x0)).unwrap();
        let p = small_primes()[i];
        let (Ok(er), Ok(ir)) = (reduce(&e, p, 1), reduce(&img, p, 1)) else { return Ok(()) };
        let f = er.field();
        prop_assert_eq!(velu2_fq(&er, f.from_i64(x0)).unwrap(), ir);
    }

    /// The total rises with each coefficient and falls as the images grow.
    #[test]
    fn predict_is_monotone(level in 0usize..3, side in any::<bool>(), grow in 0usize..4) {
        let z = Rational::from_integer(0.into());
        let base = GaloisImageProfile::new([16, 64, 512, 4096], true, false).unwrap();
        let c0 = CoefficientVector::new([z.clone(), z.clone(), z.clone()], [z.clone(), z.clone(), z.clone()]).unwrap();
        let mut c1 = c0.clone();
        if side { c1.c[level] = rat(1, 2) } else { c1.cp[level] = rat(1, 2) }
        let t0 = predict(&base, &base, &c0).unwrap().total;
        let t1 = predict(&base, &base, &c1).unwrap().total;
        prop_assert!(t1 > t0);

        let mut sizes = [16u64, 64, 512, 4096];
        for s in sizes.iter_mut().skip(grow) {
            *s *= 2;
        }
        let big = GaloisImageProfile::new(sizes, true, false).unwrap();
        let t2 = predict(&big, &big, &c1).unwrap().total;
        prop_assert!(t2 < t1);
    }
}

use proptest::prelude::*;
use umbral_core::schrodinger::level_momentum;
use umbral_core::{
    apply_beta, apply_delta, apply_xi, basic_polynomial, basic_polynomial_value,
    basic_polynomial_value_exact, pincherle_derivative, rational, umbral_exp, umbral_exp_series,
    BigRational, Complex64, Correspondence, CorrespondenceKind, ExactCorrespondence, OperatorKind,
    Polynomial, SeriesStatus,
};

fn kind() -> impl Strategy<Value = CorrespondenceKind> {
    prop_oneof![
        Just(CorrespondenceKind::Right),
        Just(CorrespondenceKind::Left),
        Just(CorrespondenceKind::Symmetric),
    ]
}

fn exact_corr() -> impl Strategy<Value = ExactCorrespondence> {
    (kind(), 1i64..12, 1i64..12).prop_map(|(k, n, d)| Correspondence::new(k, rational(n, d)))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..10).prop_map(|(n, d)| rational(n, d))
}

fn poly(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(small_rational(), 1..=max_degree + 1).prop_map(Polynomial::new)
}

/// `x⁽ⁿ⁾(mσ)` as the plain product of its defining factors.
fn product_oracle(kind: CorrespondenceKind, n: i64, m: i64, sigma: &BigRational) -> BigRational {
    let x = BigRational::from_integer(m.into()) * sigma;
    let mut acc = BigRational::from_integer(1.into());
    match kind {
        CorrespondenceKind::Right => {
            for i in 0..n {
                acc *= &x - sigma * BigRational::from_integer(i.into());
            }
        }
        CorrespondenceKind::Left => {
            for i in 0..n {
                acc *= &x + sigma * BigRational::from_integer(i.into());
            }
        }
        CorrespondenceKind::Symmetric => {
            if n > 0 {
                acc = x.clone();
                for i in 0..n - 1 {
                    acc *= &x + sigma * BigRational::from_integer((2 * i - n + 2).into());
                }
            }
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heisenberg_on_arbitrary_polynomials(c in exact_corr(), p in poly(10)) {
        let d = c.delta();
        let lhs = apply_delta(&d, &apply_xi(&c, &p)).unwrap();
        let rhs = apply_xi(&c, &apply_delta(&d, &p).unwrap());
        prop_assert_eq!(&lhs - &rhs, p);
    }

    #[test]
    fn lowering(c in exact_corr(), n in 1usize..=32) {
        let lowered = apply_delta(&c.delta(), &basic_polynomial(&c, n)).unwrap();
        prop_assert_eq!(lowered, basic_polynomial(&c, n - 1).scale(&rational(n as i64, 1)));
    }

    #[test]
    fn basic_polynomials_vanish_at_origin(c in exact_corr(), n in 1usize..=24) {
        prop_assert_eq!(basic_polynomial(&c, n).coeff(0), rational(0, 1));
        prop_assert_eq!(basic_polynomial(&c, n).degree(), n as i64);
    }

    #[test]
    fn delta_drops_degree_by_one(c in exact_corr(), p in poly(12)) {
        let out = apply_delta(&c.delta(), &p).unwrap();
        if p.degree() >= 1 {
            prop_assert_eq!(out.degree(), p.degree() - 1);
        } else {
            prop_assert!(out.is_zero());
        }
    }

    #[test]
    fn delta_is_shift_invariant(c in exact_corr(), p in poly(8), s in small_rational()) {
        let d = c.delta();
        let lhs = apply_delta(&d, &p.shift(&s)).unwrap();
        let rhs = apply_delta(&d, &p).unwrap().shift(&s);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pincherle_derivative_inverts_beta(c in exact_corr(), p in poly(10)) {
        let beta_p = apply_beta(&c, &p);
        let back = pincherle_derivative(&OperatorKind::Delta(c.delta()), &beta_p).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn closed_form_matches_product(c in exact_corr(), n in 0u64..=20, m in -20i64..=20) {
        let expected = product_oracle(c.kind, n as i64, m, &c.sigma);
        prop_assert_eq!(basic_polynomial_value_exact(&c, n, m), expected.clone());
        prop_assert_eq!(basic_polynomial(&c, n as usize).eval(&(BigRational::from_integer(m.into()) * &c.sigma)), expected);
    }

    #[test]
    fn float_closed_form_matches_product(kind in kind(), n in 0u64..=20, m in -20i64..=20, sigma in 0.05f64..3.0) {
        let got = basic_polynomial_value(&Correspondence::new(kind, sigma), n, m).unwrap();
        let x = m as f64 * sigma;
        let want: f64 = match kind {
            CorrespondenceKind::Right => (0..n).map(|i| x - i as f64 * sigma).product(),
            CorrespondenceKind::Left => (0..n).map(|i| x + i as f64 * sigma).product(),
            CorrespondenceKind::Symmetric if n == 0 => 1.0,
            CorrespondenceKind::Symmetric => {
                let n = n as i64;
                x * (0..n - 1).map(|i| x + (2 * i - n + 2) as f64 * sigma).product::<f64>()
            }
        };
        prop_assert!((got - want).abs() <= 1e-12 * want.abs(), "{} vs {}", got, want);
    }

    #[test]
    fn mirror_identity(k in -4.0f64..4.0, m in -30i64..=30, sigma in 0.05f64..0.2) {
        let plus = umbral_exp(&Correspondence::right(sigma), Complex64::new(k, 0.0), m).unwrap();
        let minus = umbral_exp(&Correspondence::left(sigma), Complex64::new(-k, 0.0), -m).unwrap();
        prop_assert!((plus - minus).norm() <= 1e-12 * plus.norm());
        for n in 0..12u64 {
            let a = basic_polynomial_value(&Correspondence::right(sigma), n, m).unwrap();
            let b = basic_polynomial_value(&Correspondence::left(sigma), n, -m).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - sign * b).abs() <= 1e-12 * a.abs());
        }
    }

    #[test]
    fn translation_law(kind in kind(), ks in -0.95f64..0.95, m in -15i64..=15, n in -15i64..=15) {
        let c = Correspondence::new(kind, 0.5);
        let k = Complex64::new(ks / 0.5, 0.0);
        let lhs = umbral_exp(&c, k, m).unwrap() * umbral_exp(&c, k, n).unwrap();
        let rhs = umbral_exp(&c, k, m + n).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn series_agrees_with_closed_form(kind in kind(), ks in -0.92f64..0.92, m in -20i64..=20) {
        let c = Correspondence::new(kind, 0.2);
        let k = Complex64::new(ks / 0.2, 0.0);
        let s = umbral_exp_series(&c, k, m, 1e-12).unwrap();
        let closed = umbral_exp(&c, k, m).unwrap();
        prop_assert_ne!(s.status, SeriesStatus::Diverged);
        prop_assert!((s.value - closed).norm() <= 1e-10 * closed.norm(), "{:?} vs {}", s, closed);
    }

    #[test]
    fn well_levels_are_degenerate(kind in kind(), m_points in 2u64..400, n in 1u64..400) {
        prop_assume!(n < m_points);
        let c = Correspondence::new(kind, 0.7);
        match (level_momentum(&c, n, m_points), level_momentum(&c, m_points - n, m_points)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a * a, b * b),
            (Err(_), Err(_)) => prop_assert!(2 * n == m_points),
            other => prop_assert!(false, "{:?}", other),
        }
    }
}

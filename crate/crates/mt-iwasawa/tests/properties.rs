use mt_iwasawa::arith::resultant::{bareiss_det, ordp_det_mod};
use mt_iwasawa::arith::{ordp_int, ordp_rat, rat, resultant, resultant_valuation, Poly, PrimeContext};
use mt_iwasawa::cyclotomic::{predict_theta_invariants, weight_constants, Iota, SignedInvariants};
use mt_iwasawa::error::MtError;
use mt_iwasawa::extraction::{extract_signed_invariants, ThetaRow, ThetaTable};
use mt_iwasawa::iwasawa::{invariants, project};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(cs: &[i64]) -> Poly<BigRational> {
    Poly::from_ints_q(cs)
}

fn nonzero_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-60i64..60, 1..12).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_idempotent(cs in nonzero_poly(), p in prop::sample::select(vec![2u64, 3, 5]), n in 1u32..3) {
        let ctx = PrimeContext::new(p).unwrap();
        let f = poly(&cs);
        let once = project(&f, &ctx, n).poly;
        prop_assert!(once.len() <= ctx.pn(n) as usize);
        prop_assert_eq!(project(&once, &ctx, n).poly, once);
    }

    #[test]
    fn invariants_are_additive(a in nonzero_poly(), b in nonzero_poly(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let (f, g) = (poly(&a), poly(&b));
        let (x, y, z) = (invariants(&f, p).unwrap(), invariants(&g, p).unwrap(), invariants(&f.mul(&g), p).unwrap());
        prop_assert_eq!(z.lambda, x.lambda + y.lambda);
        prop_assert_eq!(z.mu, x.mu + y.mu);
    }

    #[test]
    fn shift_matches_composition(cs in prop::collection::vec((-50i64..50, 1i64..9), 0..15)) {
        let f = Poly::new(cs.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect());
        prop_assert_eq!(f.shift_one(), f.compose_affine(&rat(1), &rat(1)));
    }

    #[test]
    fn remainder_matches_long_division(
        cs in prop::collection::vec((-50i64..50, 1i64..9), 0..20),
        ms in prop::collection::vec(-9i64..9, 0..6),
        den in 1i64..4,
    ) {
        let f = Poly::new(cs.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect());
        let mut m: Vec<BigRational> = ms.iter().map(|&x| BigRational::new(x.into(), den.into())).collect();
        m.push(rat(1));
        let m = Poly::new(m);
        prop_assert_eq!(f.rem_monic(&m), f.div_rem_monic(&m).1);
    }

    #[test]
    fn resultant_valuation_matches_exact(a in prop::collection::vec(-30i64..30, 1..5), b in nonzero_poly(), p in prop::sample::select(vec![2u64, 3])) {
        let mut a = a;
        a.push(1);
        let (a, b) = (poly(&a), poly(&b));
        let exact = resultant(&a, &b);
        match resultant_valuation(&a, &b, p) {
            Ok(v) => prop_assert_eq!(Some(v), ordp_rat(&exact, p).finite()),
            Err(_) => prop_assert_eq!(exact, rat(0)),
        }
    }

    #[test]
    fn eisenstein_resultant_valuation(lower in prop::collection::vec(-10i64..10, 1..5), u in 1i64..3, b in nonzero_poly()) {
        // p * lower with a constant term of valuation exactly one
        let p = 3i64;
        let mut a: Vec<i64> = lower.iter().map(|x| p * x).collect();
        a[0] = p * (3 * lower[0] + u);
        a.push(1);
        let (a, b) = (poly(&a), poly(&b));
        let exact = resultant(&a, &b);
        if exact != rat(0) {
            prop_assert_eq!(resultant_valuation(&a, &b, 3).ok(), ordp_rat(&exact, 3).finite());
        }
    }

    #[test]
    fn modular_determinant_valuation(m in prop::collection::vec(prop::collection::vec(-40i64..40, 4), 4)) {
        let m: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let exact = ordp_int(&bareiss_det(m.clone()), 3).finite();
        prop_assert_eq!(ordp_det_mod(&m, 3, 40), exact);
    }

    #[test]
    fn extraction_inverts_prediction(
        p in prop::sample::select(vec![2u64, 3, 5]),
        k in 2u32..30,
        lp in 0i64..12,
        lm in 0i64..12,
    ) {
        let ctx = PrimeContext::new(p).unwrap();
        let signed = SignedInvariants { lambda_plus: lp, lambda_minus: lm, mu_plus: 0, mu_minus: 0 };
        let rows: Vec<ThetaRow> = (3..=9)
            .filter_map(|n| {
                let pr = predict_theta_invariants(&ctx, k, 0, &signed, n).ok()?;
                (pr.lambda >= 0 && (pr.lambda as u64) < ctx.pn(n)).then_some(ThetaRow { n, lambda: pr.lambda as u64, mu: Some(pr.mu) })
            })
            .collect();
        prop_assume!(rows.len() == 7);
        // branch taken by each parity class; mixed choices must be refused
        let w = weight_constants(&ctx, k);
        let branch = |s: i32| match w.iota(s) {
            Iota::Branches { .. } => Some(signed.lambda(ctx.star() * s) >= w.nu_sign(s)),
            Iota::Resolved(_) => None,
        };
        let table = ThetaTable { p, k, j: 0, psi: 0, form: "synthetic".into(), rows };
        let got = extract_signed_invariants(&table);
        if branch(1) != branch(-1) {
            prop_assert!(matches!(got, Err(MtError::InconsistentBranches(_))), "{:?}", got);
        } else {
            let r = got.unwrap();
            prop_assert_eq!((r.lambda_plus, r.lambda_minus), (lp, lm));
            prop_assert_eq!((r.mu_plus, r.mu_minus), (Some(0), Some(0)));
        }
    }
}

use proptest::prelude::*;
use twistlab::ncpoly::{mul, normal_form, oracle, parse_expr, star, GenId, Letter, Monomial, NCExpr};
use twistlab::qgroup::{polar_presentation, qtriag_presentation, A, AS, B, BS};
use twistlab::scalar::{gauss, Scalar};

fn letter() -> impl Strategy<Value = (GenId, i32)> {
    prop_oneof![
        (Just(BS), 1..=2i32),
        (Just(B), 1..=2i32),
        (Just(A), prop_oneof![-2..=-1i32, 1..=2i32]),
        (Just(AS), prop_oneof![-2..=-1i32, 1..=2i32]),
    ]
}

fn monomial(max: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(letter(), 0..=max).prop_map(|v| Monomial::from_pairs(&v))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=3, -3i64..=3, -8i32..=8)
        .prop_map(|(re, d, im, k)| Scalar::monomial(gauss((re, d), (im, 1)), k))
}

fn expr() -> impl Strategy<Value = NCExpr> {
    prop::collection::vec((scalar(), monomial(4)), 1..=3).prop_map(|terms| {
        terms
            .into_iter()
            .fold(NCExpr::zero(1), |acc, (c, m)| acc.add(&NCExpr::monomial(m).scale(&c)))
    })
}

fn unit_word(len: usize) -> impl Strategy<Value = Vec<Letter>> {
    let unit = prop_oneof![
        Just(Letter::new(BS, 1)),
        Just(Letter::new(B, 1)),
        Just(Letter::new(A, 1)),
        Just(Letter::new(A, -1)),
        Just(Letter::new(AS, 1)),
        Just(Letter::new(AS, -1)),
    ];
    prop::collection::vec(unit, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_form_is_idempotent(e in expr()) {
        let p = qtriag_presentation();
        let once = normal_form(&e, &p).unwrap();
        prop_assert_eq!(normal_form(&once, &p).unwrap(), once.clone());
        for (factors, _) in once.terms() {
            prop_assert!(factors[0].is_normal());
        }
    }

    #[test]
    fn normal_form_is_linear(e1 in expr(), e2 in expr(), c in scalar()) {
        let p = qtriag_presentation();
        let n1 = normal_form(&e1, &p).unwrap();
        let n2 = normal_form(&e2, &p).unwrap();
        prop_assert_eq!(normal_form(&e1.add(&e2), &p).unwrap(), n1.add(&n2));
        prop_assert_eq!(normal_form(&e1.scale(&c), &p).unwrap(), n1.scale(&c));
    }

    #[test]
    fn length_three_words_are_locally_confluent(w in unit_word(3)) {
        let p = qtriag_presentation();
        let target = normal_form(&NCExpr::monomial(oracle::compress(&w)), &p).unwrap();
        for (c, next) in oracle::single_steps(&w, &p) {
            let via = normal_form(&NCExpr::monomial(oracle::compress(&next)), &p).unwrap().scale(&c);
            prop_assert_eq!(&via, &target);
        }
        let (c, word) = oracle::leftmost_normal_form(&w, &p, 100).unwrap();
        prop_assert_eq!(NCExpr::monomial(oracle::compress(&word)).scale(&c), target);
    }

    #[test]
    fn rewriting_preserves_multidegree(m in monomial(6)) {
        let p = qtriag_presentation();
        let nf = normal_form(&NCExpr::monomial(m.clone()), &p).unwrap();
        let deg = m.multidegree(&p);
        for (factors, _) in nf.terms() {
            prop_assert_eq!(factors[0].multidegree(&p), deg.clone());
        }
    }

    #[test]
    fn star_is_an_antilinear_involution(e in expr(), f in expr()) {
        let p = qtriag_presentation();
        prop_assert_eq!(star(&star(&e, &p).unwrap(), &p).unwrap(), normal_form(&e, &p).unwrap());
        // (ef)* = f* e*
        let lhs = star(&mul(&e, &f, &p).unwrap(), &p).unwrap();
        let rhs = mul(&star(&f, &p).unwrap(), &star(&e, &p).unwrap(), &p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_is_associative(x in expr(), y in expr(), z in expr()) {
        let p = qtriag_presentation();
        let left = mul(&mul(&x, &y, &p).unwrap(), &z, &p).unwrap();
        let right = mul(&x, &mul(&y, &z, &p).unwrap(), &p).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn printed_normal_forms_reparse(e in expr()) {
        let p = qtriag_presentation();
        let nf = normal_form(&e, &p).unwrap();
        let text = nf.display(&p).to_string();
        let back = normal_form(&parse_expr(&text, &p).unwrap(), &p).unwrap();
        prop_assert_eq!(back, nf);
    }

    #[test]
    fn polar_words_normalize_idempotently(v in prop::collection::vec((0usize..4, prop_oneof![-2..=-1i32, 1..=2i32]), 0..6)) {
        let p = polar_presentation();
        let e = NCExpr::monomial(Monomial::from_pairs(&v));
        let once = normal_form(&e, &p).unwrap();
        prop_assert_eq!(normal_form(&once, &p).unwrap(), once);
    }
}

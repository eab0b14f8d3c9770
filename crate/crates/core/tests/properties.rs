use fused_hecke::exactnum::{
    brace_int, format_rational, int, parse_rational, pow, q_binomial, q_int, q_pochhammer, rat, BigRational,
    PowerSeries,
};
use fused_hecke::heckecore::{generator, symmetriser_sum, AlgebraElement, ElementJson};
use fused_hecke::symgroup::{all_permutations, Permutation};
use fused_hecke::tensorrep::{represent, RationalMatrix};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn nonzero_q() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=7).prop_filter_map("q = 0", |(a, b)| (a != 0).then(|| rat(a, b)))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=5).prop_map(|(a, b)| rat(a, b))
}

fn permutation(m: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=m).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn element(m: usize, q: BigRational) -> impl Strategy<Value = AlgebraElement> {
    let perms = all_permutations(m).unwrap();
    prop::collection::vec((0..perms.len(), small_rational()), 0..6).prop_map(move |terms| {
        AlgebraElement::from_terms(m, &q, terms.into_iter().map(|(i, c)| (perms[i], c))).unwrap()
    })
}

fn element_with_q(m: usize) -> impl Strategy<Value = (BigRational, AlgebraElement, AlgebraElement, AlgebraElement)> {
    nonzero_q().prop_flat_map(move |q| (Just(q.clone()), element(m, q.clone()), element(m, q.clone()), element(m, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rational_text_round_trip(a in -1000i64..1000, b in 1i64..1000) {
        let x = rat(a, b);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn q_int_balanced(l in 1u32..9, q in nonzero_q()) {
        let qi = q_int(l, &q).unwrap();
        prop_assert_eq!(&qi, &q_int(l, &q.recip()).unwrap());
        prop_assert_eq!(qi, pow(&q, 1 - l as i64) * brace_int(l, &q));
    }

    #[test]
    fn q_binomial_symmetry_and_pascal(l in 1u32..9, p in 0u32..9, q in nonzero_q()) {
        prop_assume!(p <= l);
        let b = |l, p| q_binomial(l, p, &q).unwrap();
        prop_assert_eq!(b(l, p), b(l, l - p));
        if p >= 1 && p < l {
            let (pi, li) = (p as i64, l as i64);
            prop_assert_eq!(b(l, p), pow(&q, pi) * b(l - 1, p) + pow(&q, pi - li) * b(l - 1, p - 1));
            prop_assert_eq!(b(l, p), pow(&q, -pi) * b(l - 1, p) + pow(&q, li - pi) * b(l - 1, p - 1));
        }
    }

    #[test]
    fn q_pochhammer_step(a in small_rational(), q in nonzero_q(), p in 0u32..7) {
        let next = q_pochhammer(&a, &q, p + 1);
        prop_assert_eq!(next, q_pochhammer(&a, &q, p) * (BigRational::one() - &a * pow(&q, p as i64)));
    }

    #[test]
    fn exp_series_is_a_homomorphism(a in small_rational(), b in small_rational()) {
        let prec = 6;
        let lhs = PowerSeries::exp(&a, prec) * PowerSeries::exp(&b, prec);
        let rhs = PowerSeries::exp(&(&a + &b), prec);
        for n in 0..prec {
            prop_assert_eq!(lhs.coeff(n), rhs.coeff(n));
        }
    }

    #[test]
    fn reduced_word_rebuilds_permutation(w in permutation(6)) {
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        let rebuilt = word.iter().fold(Permutation::identity(6), |acc, &i| acc.compose(&Permutation::simple(i, 6).unwrap()).unwrap());
        prop_assert_eq!(rebuilt, w);
        prop_assert_eq!(w.compose(&w.inverse()).unwrap(), Permutation::identity(6));
        prop_assert_eq!(w.inverse().length(), w.length());
    }

    #[test]
    fn simple_reflection_changes_length_by_one(w in permutation(6), i in 1usize..6) {
        let s = Permutation::simple(i, 6).unwrap();
        let ws = w.compose(&s).unwrap();
        let sw = s.compose(&w).unwrap();
        prop_assert_eq!(ws, w.swap_positions(i));
        prop_assert_eq!(sw, w.swap_values(i));
        let right = if w.right_ascent(i) { w.length() + 1 } else { w.length() - 1 };
        let left = if w.left_ascent(i) { w.length() + 1 } else { w.length() - 1 };
        prop_assert_eq!(ws.length(), right);
        prop_assert_eq!(sw.length(), left);
    }

    #[test]
    fn multiplication_is_associative((_q, x, y, z) in element_with_q(4)) {
        let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn multiplication_is_bilinear((_q, x, y, z) in element_with_q(4), c in small_rational()) {
        let l = x.add(&y.scale(&c)).unwrap().multiply(&z).unwrap();
        let r = x.multiply(&z).unwrap().add(&y.multiply(&z).unwrap().scale(&c)).unwrap();
        prop_assert_eq!(l, r);
        let one = AlgebraElement::unit(4, z.q()).unwrap();
        prop_assert_eq!(one.multiply(&z).unwrap(), z.clone());
        prop_assert_eq!(z.multiply(&one).unwrap(), z);
    }

    #[test]
    fn generators_satisfy_quadratic_relation((q, x, _y, _z) in element_with_q(4), i in 1usize..4) {
        let l = &q - q.recip();
        let twice = x.right_mul_generator(i).unwrap().right_mul_generator(i).unwrap();
        let expected = x.right_mul_generator(i).unwrap().scale(&l).add(&x).unwrap();
        prop_assert_eq!(twice, expected);
        let g = generator(i, 4, &q).unwrap();
        prop_assert_eq!(x.left_mul_generator(i).unwrap(), g.multiply(&x).unwrap());
    }

    #[test]
    fn symmetriser_application_matches_product((q, x, _y, _z) in element_with_q(4), i in 1usize..4, span in 1usize..4) {
        let j = (i + span).min(4);
        let s = symmetriser_sum(i, j, 4, &q).unwrap();
        prop_assert_eq!(x.right_mul_symmetriser(i, j).unwrap(), x.multiply(&s).unwrap());
        prop_assert_eq!(x.left_mul_symmetriser(i, j).unwrap(), s.multiply(&x).unwrap());
    }

    #[test]
    fn embedding_is_multiplicative((_q, x, y, _z) in element_with_q(3), offset in 0usize..3) {
        let e = |a: &AlgebraElement| a.embed_shift(offset, 6).unwrap();
        prop_assert_eq!(e(&x.multiply(&y).unwrap()), e(&x).multiply(&e(&y)).unwrap());
    }

    #[test]
    fn element_json_round_trip((_q, x, _y, _z) in element_with_q(4)) {
        let text = serde_json::to_string(&x.to_json()).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(AlgebraElement::from_json(&back).unwrap(), x);
    }

    #[test]
    fn matrix_csv_round_trip(rows in prop::collection::vec(prop::collection::vec(small_rational(), 3), 1..5)) {
        let m = RationalMatrix::from_rows(rows).unwrap();
        prop_assert_eq!(RationalMatrix::from_csv(&m.to_csv().unwrap()).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn representation_is_a_homomorphism((_q, x, y, _z) in element_with_q(4), n in 2usize..4) {
        let lhs = represent(&x.multiply(&y).unwrap(), n).unwrap();
        let rhs = represent(&x, n).unwrap().mul(&represent(&y, n).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn representation_of_unit_is_identity() {
    for q in [int(2), rat(-3, 5)] {
        let one = AlgebraElement::unit(3, &q).unwrap();
        assert_eq!(represent(&one, 2).unwrap(), RationalMatrix::identity(8));
        let zero = AlgebraElement::zero(3, &q).unwrap();
        assert!(represent(&zero, 2).unwrap().to_rows().iter().flatten().all(Zero::is_zero));
    }
}

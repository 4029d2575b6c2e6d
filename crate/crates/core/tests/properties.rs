use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;

use ashyp::algebra::C64;
use ashyp::asdet::{normalized_det, OffDiagonal, Variant};
use ashyp::experiments::sampling::sample_config;
use ashyp::experiments::Shape;
use ashyp::geometry::{apply_isometry, direction_matrix, endpoint_matrix, random_isometry, Isometry};
use ashyp::poly::{variables, MultiPoly};
use ashyp::star::{apply_perm, expansion_sum_exact, group_sum, random_rational_array, ColumnGroup};
use ashyp::symbolic::{expand_in_gaps, sym_as4, sym_b4, Expansions, OrderingId};
use ashyp::{Caps, Tolerances};

fn rational() -> impl Strategy<Value = BigRational> {
    (-60i64..=60, 1i64..=24).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u8..3, 3), rational()), 0..6)
        .prop_map(|terms| MultiPoly::from_terms(&variables(&["x", "y", "z"]), terms))
}

fn gaps(ordering: OrderingId) -> &'static Expansions {
    static THM1: OnceLock<Expansions> = OnceLock::new();
    static ZHANGMA: OnceLock<Expansions> = OnceLock::new();
    match ordering {
        OrderingId::Thm1 => THM1.get_or_init(|| expand_in_gaps(OrderingId::Thm1)),
        OrderingId::Zhangma => ZHANGMA.get_or_init(|| expand_in_gaps(OrderingId::Zhangma)),
    }
}

fn t_forms() -> &'static (MultiPoly, MultiPoly) {
    static FORMS: OnceLock<(MultiPoly, MultiPoly)> = OnceLock::new();
    FORMS.get_or_init(|| (sym_as4(), sym_b4()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_operations_commute_with_evaluation(
        p in small_poly(),
        q in small_poly(),
        point in prop::collection::vec(rational(), 3),
    ) {
        prop_assert_eq!((p.clone() * q.clone()).eval(&point), p.eval(&point) * q.eval(&point));
        prop_assert_eq!((p.clone() + q.clone()).eval(&point), p.eval(&point) + q.eval(&point));
        prop_assert_eq!((p.clone() - p.clone()).eval(&point), BigRational::zero());
    }

    #[test]
    fn gap_expansions_evaluate_like_direction_forms(
        y in prop::collection::vec(rational(), 12),
        zhangma in any::<bool>(),
    ) {
        let ordering = if zhangma { OrderingId::Zhangma } else { OrderingId::Thm1 };
        let ex = gaps(ordering);
        let (as4, b4) = t_forms();
        let t = ex.substitution.invert(&y);
        prop_assert_eq!(ex.as4.eval(&y), as4.eval(&t));
        prop_assert_eq!(ex.b4.eval(&y), b4.eval(&t));
        prop_assert_eq!(ex.delta4.eval(&y), as4.eval(&t) - b4.eval(&t));
        prop_assert_eq!(ex.substitution.apply(&t), y);
    }

    #[test]
    fn normalized_det_ignores_representative_scaling(
        n in 2usize..7,
        seed in any::<u64>(),
        scales in prop::collection::vec((-3.0f64..3.0, 0.0f64..6.28), 30),
    ) {
        let tol = Tolerances::default();
        let cfg = sample_config(n, Shape::Generic, seed, &tol).unwrap();
        let dm = direction_matrix(&cfg, &tol).unwrap();
        let mut k = 0;
        let scaled = dm.map(|_, _, e| {
            let (r, phi) = scales[k % scales.len()];
            k += 1;
            e.scaled(C64::from_polar(10f64.powf(r), phi))
        });
        for v in [Variant::Observer, Variant::Star] {
            let a = normalized_det(&dm, v, &tol).unwrap();
            let b = normalized_det(&scaled, v, &tol).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm(), "{} vs {}", a, b);
        }
    }

    #[test]
    fn abs_d_is_isometry_invariant(n in 2usize..7, seed in any::<u64>(), iso in any::<u64>()) {
        let tol = Tolerances::default();
        let cfg = sample_config(n, Shape::Generic, seed, &tol).unwrap();
        let moved = apply_isometry(&random_isometry(iso), &cfg);
        let a = normalized_det(&direction_matrix(&cfg, &tol).unwrap(), Variant::Observer, &tol).unwrap();
        let b = normalized_det(&direction_matrix(&moved, &tol).unwrap(), Variant::Observer, &tol).unwrap();
        prop_assert!((a.norm() - b.norm()).abs() <= 1e-9);
    }

    #[test]
    fn endpoints_move_with_the_isometry(seed in any::<u64>(), iso in any::<u64>()) {
        let tol = Tolerances::default();
        let cfg = sample_config(4, Shape::Generic, seed, &tol).unwrap();
        let g = Isometry::random(iso);
        let before = endpoint_matrix(&cfg, &tol).unwrap();
        let after = endpoint_matrix(&apply_isometry(&g, &cfg), &tol).unwrap();
        for (a, b, e) in before.iter() {
            let image = g.apply_direction(e);
            let f = after.get(a, b);
            let gap = ((image.u - f.u).powi(2) + (image.v - f.v).powi(2) + (image.w - f.w).powi(2)).sqrt();
            prop_assert!(gap < 1e-9, "({}, {}) off by {}", a, b, gap);
        }
    }

    #[test]
    fn coplanar_determinants_are_real(n in 2usize..7, seed in any::<u64>()) {
        let tol = Tolerances::default();
        let cfg = sample_config(n, Shape::Coplanar, seed, &tol).unwrap();
        let dm = direction_matrix(&cfg, &tol).unwrap();
        for v in [Variant::Observer, Variant::Star] {
            let d = normalized_det(&dm, v, &tol).unwrap();
            prop_assert!(d.im.abs() <= 1e-9 * d.norm().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn group_sum_is_invariant_under_the_group(
        values in prop::collection::vec(rational(), 12),
        index in 0u64..1296,
        four in any::<bool>(),
    ) {
        let n = if four { 4 } else { 3 };
        let t = OffDiagonal::from_fn(n, |a, b| values[a * 3 + b - usize::from(b > a)].clone());
        let g = ColumnGroup::new(n);
        let sigma = g.element(index % g.order().unwrap());
        prop_assert_eq!(group_sum(&apply_perm(&sigma, &t)), group_sum(&t));
    }
}

#[test]
fn expansion_is_alternating_under_relabeling() {
    let caps = Caps::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for n in [3, 4] {
        for _ in 0..4 {
            let t = random_rational_array(n, &mut rng);
            let base = expansion_sum_exact(&t, &caps).unwrap();
            for (i, j) in [(0, 1), (1, n - 1)] {
                let swap = |k: usize| if k == i { j } else if k == j { i } else { k };
                let relabeled = OffDiagonal::from_fn(n, |a, b| t.get(swap(a), swap(b)).clone());
                assert_eq!(expansion_sum_exact(&relabeled, &caps).unwrap(), -base.clone(), "n={n} ({i} {j})");
            }
        }
    }
}

#[test]
fn action_laws_hold_exhaustively_for_three_points() {
    let g = ColumnGroup::new(3);
    let labels = OffDiagonal::from_fn(3, |a, b| (a, b));
    let elems: Vec<_> = (0..8).map(|i| g.element(i)).collect();
    for s in &elems {
        assert_eq!(apply_perm(&s.compose(&s.inverse()), &labels), labels);
        for t in &elems {
            let st = s.compose(t);
            assert!(elems.contains(&st));
            assert_eq!(apply_perm(s, &apply_perm(t, &labels)), apply_perm(&t.compose(s), &labels));
        }
    }
}

use std::collections::BTreeSet;

use hkeq::exterior::*;
use hkeq::moduli::*;
use hkeq::WeightVector;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn gens(n: u32) -> Vec<Label> {
    (1..=n).map(Label::Alpha).collect()
}

prop_compose! {
    /// Random element of `Λ(α_1..α_4)` with small coefficients.
    fn element()(coeffs in prop::collection::vec(-3i64..=3, 16)) -> ExtElement {
        exterior_basis(&gens(4))
            .iter()
            .zip(coeffs)
            .fold(ExtElement::zero(), |acc, (b, c)| &acc + &b.scale(&BigInt::from(c)))
    }
}

fn mono(labels: &[Label], c: i64) -> ExtElement {
    ExtElement::monomial(labels.to_vec(), BigInt::from(c))
}

prop_compose! {
    /// Degree-preserving map on `α_1..α_4` whose images mix generators and
    /// triple products (`1 + 1 + 3 = 5`, `1 + 3 + 3 = 7`).
    fn algebra_map()(c in prop::collection::vec(-2i64..=2, 8)) -> AlgebraMap {
        use Label::*;
        let images = [
            (Alpha(1), &mono(&[Alpha(1)], c[0]) + &mono(&[AlphaPrime(1)], c[1])),
            (Alpha(2), &mono(&[Alpha(2)], c[2]) + &mono(&[AlphaPrime(2)], c[3])),
            (Alpha(3), &mono(&[Alpha(3)], c[4]) + &mono(&[Alpha(1), AlphaPrime(1), Alpha(2)], c[5])),
            (Alpha(4), &mono(&[Alpha(4)], c[6]) + &mono(&[Alpha(1), Alpha(2), AlphaPrime(2)], c[7])),
        ];
        AlgebraMap::new(images, false).unwrap()
    }
}

/// Sign of the permutation sorting `xs`, by counting inversions.
fn inversion_sign(xs: &[u32]) -> i64 {
    let inversions = (0..xs.len())
        .flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| xs[i] > xs[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

prop_compose! {
    /// A valid exact shape: ranks `t_1..t_{L−1}` in `0..=3`, dims `t_{i−1} + t_i`.
    fn shape()(ranks in prop::collection::vec(0usize..=3, 1..=6))
        (weights in ranks.iter().chain([&0]).scan(0usize, |prev, &t| {
            let dim = *prev + t;
            *prev = t;
            Some(prop::collection::vec(-4i64..=4, dim))
        }).collect::<Vec<_>>()) -> ExactShape {
        derive_ranks(weights.into_iter().map(WeightVector::new).collect()).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extension_is_multiplicative(m in algebra_map(), a in element(), b in element()) {
        let lhs = extend_algebra_map(&m, &wedge_product(&a, &b)).unwrap();
        let rhs = wedge_product(&extend_algebra_map(&m, &a).unwrap(), &extend_algebra_map(&m, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sign_coherence(order in Just((1..=6u32).collect::<Vec<_>>()).prop_shuffle()) {
        let product = order.iter().fold(ExtElement::one(), |acc, &k| {
            wedge_product(&acc, &ExtElement::generator(Label::Alpha(k)))
        });
        let sorted = gens(6);
        prop_assert_eq!(product.coefficient(&sorted), BigInt::from(inversion_sign(&order)));
        prop_assert_eq!(product.len(), 1);
    }

    #[test]
    fn generator_count_and_rank(s in shape()) {
        let total: usize = s.ranks().iter().sum();
        prop_assert_eq!(kappa_generators(&s).len(), total);
        prop_assert_eq!(s.cohomology_rank(), BigUint::from(2u8).pow(total as u32));
    }

    #[test]
    fn kappa_columns_never_collide(s in shape()) {
        let labels: BTreeSet<(usize, usize)> = kappa_generators(&s).iter().map(|k| (k.i, k.j)).collect();
        for &(i, j) in &labels {
            if i == 1 {
                prop_assert!(!labels.contains(&(2, j)), "κ_1,{} and κ_2,{} coexist", j, j);
            }
        }
    }

    #[test]
    fn fold_is_degree_preserving_and_multiplicative(s in shape()) {
        prop_assume!(s.len() >= 3);
        let fold = fold_once(&s).unwrap();
        let labels = kappa_labels(&fold.shape);
        for label in &labels {
            let image = fold.pullback.image(label).unwrap();
            prop_assert!(image.is_zero() || image.homogeneous_degree() == Some(label.degree()));
        }
        if labels.len() >= 2 {
            let (a, b) = (ExtElement::generator(labels[0]), ExtElement::generator(labels[labels.len() - 1]));
            let lhs = extend_algebra_map(&fold.pullback, &wedge_product(&a, &b)).unwrap();
            let rhs = wedge_product(
                &extend_algebra_map(&fold.pullback, &a).unwrap(),
                &extend_algebra_map(&fold.pullback, &b).unwrap(),
            );
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn folds_compose_to_prefix_merge(s in shape(), q_seed in 0usize..8) {
        let q = 1 + q_seed % s.pairs();
        let mut folded = s.clone();
        for _ in 0..2 * q - 2 {
            folded = fold_once(&folded).unwrap().shape;
        }
        prop_assert_eq!(folded, prefix_merge(&s, q).unwrap());
    }

    #[test]
    fn stiefel_images_keep_degree(s in shape()) {
        prop_assume!(s.dim(1) >= 1);
        let comparison = stiefel_comparison(&s);
        for (label, image) in comparison.map.generators() {
            prop_assert!(image.is_zero() || image.homogeneous_degree() == Some(label.degree()));
        }
    }
}

#[test]
fn basis_sizes() {
    for k in 0..=10u32 {
        let basis = exterior_basis(&gens(k));
        assert_eq!(basis.len(), 1 << k);
        let distinct: BTreeSet<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(distinct.len(), 1 << k);
    }
}

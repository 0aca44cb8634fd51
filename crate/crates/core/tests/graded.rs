use hkeq::graded::*;
use hkeq::linalg::RationalMatrix;
use hkeq::WeightVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

prop_compose! {
    fn graded_hom()(rows in 1usize..=4, cols in 1usize..=4)
        (target in prop::collection::vec(-5i64..=5, rows),
         source in prop::collection::vec(-5i64..=5, cols),
         entries in prop::collection::vec((-3i64..=3, -4i64..=4), rows * cols),
         rows in Just(rows), cols in Just(cols)) -> GradedHom {
        let monomials = entries.into_iter().map(|(c, e)| Monomial::new(q(c, 1), e)).collect();
        let matrix = MonomialMatrix::new(rows, cols, monomials).unwrap();
        GradedHom::new(WeightVector::new(source), WeightVector::new(target), matrix).unwrap()
    }
}

/// Rank as the size of the largest nonzero minor, by cofactor expansion.
fn naive_rank(m: &RationalMatrix) -> usize {
    fn det(m: &RationalMatrix, rows: &[usize], cols: &[usize]) -> BigRational {
        if rows.is_empty() {
            return BigRational::one();
        }
        let mut total = BigRational::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let entry = m.get(rows[0], c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = entry * det(m, &rows[1..], &rest);
            if idx % 2 == 0 {
                total += minor
            } else {
                total -= minor
            }
        }
        total
    }
    fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|mask| mask.count_ones() as usize == k)
            .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
            .collect()
    }
    (1..=m.rows().min(m.cols()))
        .rev()
        .find(|&k| {
            choose(m.rows(), k).iter().any(|rows| {
                choose(m.cols(), k)
                    .iter()
                    .any(|cols| !det(m, rows, cols).is_zero())
            })
        })
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dual_commutes_with_action(h in graded_hom()) {
        prop_assert_eq!(
            conjugate_dual(&apply_left_right_action(&h)),
            apply_left_right_action(&conjugate_dual(&h))
        );
    }

    #[test]
    fn dual_is_involutive(h in graded_hom()) {
        prop_assert_eq!(conjugate_dual(&conjugate_dual(&h)), h);
    }

    #[test]
    fn action_preserves_rank(h in graded_hom(), num in prop::sample::select(vec![-3i64, -1, 1, 2, 5]), den in 1i64..=4) {
        let z = q(num, den);
        let acted = apply_left_right_action(&h).matrix().specialize(&z).unwrap();
        let plain = h.matrix().specialize(&z).unwrap();
        prop_assert_eq!(acted.rank(), plain.rank());
        prop_assert_eq!(plain.rank(), naive_rank(&plain));
        let left = apply_left_action(&h).matrix().specialize(&z).unwrap();
        prop_assert_eq!(left.rank(), naive_rank(&plain));
    }

    #[test]
    fn left_action_is_row_scaling(h in graded_hom()) {
        let z = q(2, 1);
        let acted = apply_left_action(&h).matrix().specialize(&z).unwrap();
        let plain = h.matrix().specialize(&z).unwrap();
        for r in 0..plain.rows() {
            let w = h.target().entries()[r];
            let base = if w >= 0 { z.clone() } else { z.recip() };
            let factor = num_traits::pow(base, w.unsigned_abs() as usize);
            for c in 0..plain.cols() {
                prop_assert_eq!(acted.get(r, c), &(plain.get(r, c) * &factor));
            }
        }
    }
}

#[test]
fn specialize_rejects_zero() {
    let m = MonomialMatrix::new(1, 1, vec![Monomial::new(q(1, 1), 0)]).unwrap();
    assert_eq!(m.specialize(&q(0, 1)), Err(GradedError::ZeroSpecialization));
}

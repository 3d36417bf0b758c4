use num_bigint::BigInt;
use num_rational::BigRational;
use p2bundles::field::{Field, PrimeField, Rationals};
use p2bundles::linalg::{kernel_basis, rank, rref, DenseMatrix};
use p2bundles::schemes::{forms_dim, random_scheme, Constraint, SchemeSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_matrix() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(prop::collection::vec(-3i64..4, c), r)))
}

fn over<F: Field>(f: &F, cols: usize, rows: &[Vec<i64>]) -> DenseMatrix<F::Elem> {
    DenseMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rank_nullity((cols, rows) in int_matrix()) {
        let f = PrimeField::default();
        let m = over(&f, cols, &rows);
        let kernel = kernel_basis(&f, &m);
        prop_assert_eq!(rank(&f, &m) + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(&f, v).iter().all(|x| f.is_zero(x)));
        }
    }

    #[test]
    fn rref_is_idempotent((cols, rows) in int_matrix()) {
        let q = Rationals;
        let m = over(&q, cols, &rows);
        let (once, pivots) = rref(&q, &m);
        let (twice, pivots2) = rref(&q, &once);
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn prime_and_rational_ranks_agree((cols, rows) in int_matrix()) {
        // entries are tiny, so no minor is divisible by a 31-bit prime
        let f = PrimeField::default();
        prop_assert_eq!(rank(&f, &over(&f, cols, &rows)), rank(&Rationals, &over(&Rationals, cols, &rows)));
    }

    #[test]
    fn evaluation_rank_monotone(seed in any::<u64>(), u in 1usize..8, arc in any::<bool>()) {
        let f = PrimeField::default();
        let constraint = if arc && u >= 2 { Constraint::WithArc(2) } else { Constraint::Generic };
        let z = random_scheme(&f, &SchemeSpec::new(u, constraint), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let mut last = 0;
        for d in 0..=u as i64 {
            let c = z.conditions(d);
            prop_assert!(c >= last && c <= u.min(forms_dim(d)));
            last = c;
        }
        // independence from degree u - 1 on
        prop_assert_eq!(z.conditions(u as i64 - 1), u);
    }
}

#[test]
fn rational_entries_parse() {
    let q = Rationals;
    assert_eq!(q.parse("-6/4").unwrap(), BigRational::new(BigInt::from(-3), BigInt::from(2)));
}

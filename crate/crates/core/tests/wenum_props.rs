use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use wstab::wenum::{classify, divisibility, fixed_by_d_delta, is_formally_self_dual, macwilliams};
use wstab::{Classification, LinearCode};

fn code_strategy(max_n: usize) -> impl Strategy<Value = LinearCode> {
    (prop::sample::select(vec![2u32, 3, 4, 5]), 1usize..=max_n)
        .prop_flat_map(|(q, n)| {
            // keep both the code and its dual small enough to enumerate
            let side = (2e5f64.ln() / f64::from(q).ln()) as usize;
            let k = n.saturating_sub(side)..=n.min(side);
            (Just(q), Just(n), k)
        })
        .prop_flat_map(|(q, n, k)| (Just(q), Just(n), prop::collection::vec(prop::collection::vec(0..q, n), k)))
        .prop_filter_map("full rank", |(q, n, rows)| LinearCode::from_indices(q, n, &rows).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn macwilliams_matches_the_dual(code in code_strategy(12)) {
        let q = code.field().order();
        let w = code.enumerate_weights().unwrap();
        let dual = code.dual();
        let transformed = macwilliams(&w, q, &code.size()).unwrap();
        prop_assert_eq!(&transformed, &dual.enumerate_weights().unwrap());
        prop_assert_eq!(macwilliams(&transformed, q, &dual.size()).unwrap(), w);
    }

    #[test]
    fn divisibility_is_the_largest_common_divisor(code in code_strategy(12)) {
        let w = code.enumerate_weights().unwrap();
        let n = w.n();
        let delta = divisibility(&w);
        let weights: Vec<usize> = (0..n).filter(|&i| !w.coeffs()[i].is_zero()).map(|i| n - i).collect();
        if weights.is_empty() {
            prop_assert_eq!(delta, 0);
        } else {
            prop_assert!(weights.iter().all(|&wt| (wt as u64).is_multiple_of(delta)));
            for larger in delta + 1..=n as u64 {
                prop_assert!(weights.iter().any(|&wt| !(wt as u64).is_multiple_of(larger)));
            }
            prop_assert!(fixed_by_d_delta(&w, delta));
        }
    }

    #[test]
    fn formally_self_dual_divisible_codes_over_gf5_are_pair_sums(code in code_strategy(10)) {
        let q = code.field().order();
        let w = code.enumerate_weights().unwrap();
        if q == 5 && divisibility(&w) > 1 && is_formally_self_dual(&w, q, &code.size()) {
            let pair_sum = matches!(classify(&w, q).unwrap(), Classification::PairSum { .. });
            prop_assert!(pair_sum);
        }
    }
}

#[test]
fn self_dual_pair_sums_over_gf5() {
    // <(1,2)>^3 is self-dual over GF(5) since 1 + 4 = 0, and 2-divisible
    let rows: Vec<Vec<u32>> = (0..3)
        .map(|b| {
            let mut r = vec![0; 6];
            r[2 * b] = 1;
            r[2 * b + 1] = 2;
            r
        })
        .collect();
    let code = LinearCode::from_indices(5, 6, &rows).unwrap();
    let w = code.enumerate_weights().unwrap();
    assert_eq!(divisibility(&w), 2);
    assert!(is_formally_self_dual(&w, 5, &BigInt::from(125)));
    assert_eq!(classify(&w, 5).unwrap(), Classification::PairSum { n: 6, q: 5 });
}

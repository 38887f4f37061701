use num_bigint::BigInt;
use proptest::prelude::*;

use wstab::roots::{find_roots, square_free};
use wstab::stab::group::{distance, identity, is_group, mat_mul, position, root_of_unity, scalar};
use wstab::stab::{certify_trivial, compute_stabilizer};
use wstab::wenum::{classify, divisibility, is_formally_self_dual, InvariantMatrix};
use wstab::{LinearCode, StabOptions, Verdict};

const TOL: f64 = 1e-6;

fn code_strategy() -> impl Strategy<Value = LinearCode> {
    (prop::sample::select(vec![2u32, 3, 4, 5]), 3usize..=9, 1usize..=4)
        .prop_flat_map(|(q, n, k)| (Just(q), Just(n), prop::collection::vec(prop::collection::vec(0..q, n), k.min(n))))
        .prop_filter_map("full rank", |(q, n, rows)| LinearCode::from_indices(q, n, &rows).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stabilizer_invariants(code in code_strategy()) {
        let q = code.field().order();
        let w = code.enumerate_weights().unwrap();
        let n = w.n();
        let class = classify(&w, q).unwrap();
        let report = compute_stabilizer::<f64>(&w, q, StabOptions::default()).unwrap();
        prop_assert_eq!(report.verdict == Verdict::Infinite, class.has_infinite_stabilizer());
        if report.verdict == Verdict::Infinite {
            return Ok(());
        }

        let group = report.matrices();
        prop_assert!(group.len() <= report.bound.clone().unwrap().try_into().unwrap_or(usize::MAX));
        prop_assert!(position(&group, &identity(), TOL).is_some());
        prop_assert!(is_group(&group, TOL));
        for e in &report.elements {
            prop_assert!(e.residual <= 1e-8);
        }

        // each projective class appears with all n scalar twists
        prop_assert_eq!(group.len() % n, 0);
        for g in &group {
            for k in 1..n {
                let twisted = mat_mul(&scalar(root_of_unity::<f64>(k, n)), g);
                prop_assert!(position(&group, &twisted, TOL).is_some());
            }
        }

        let delta = divisibility(&w);
        if delta > 1 {
            let d = InvariantMatrix::Divisibility { delta }.to_complex::<f64>();
            prop_assert!(position(&group, &d, TOL).is_some());
            prop_assert_eq!(report.contains_d_delta, Some(true));
        }
        if is_formally_self_dual(&w, q, &code.size()) {
            let s = InvariantMatrix::SelfDuality { q }.to_complex::<f64>();
            prop_assert!(position(&group, &s, TOL).is_some());
            prop_assert_eq!(report.contains_s_q, Some(true));
        }

        // the induced Moebius maps permute the roots, keeping multiplicities
        let roots = find_roots::<f64>(&square_free(&w), 1e-12).unwrap();
        for g in &group {
            let mut hit = vec![false; roots.len()];
            for r in &roots.roots {
                let z = r.center;
                let image = (g[0][0] * z + g[0][1]) / (g[1][0] * z + g[1][1]);
                let j = roots.roots.iter().position(|s| (s.center - image).norm() <= TOL * (1.0 + image.norm()));
                prop_assert!(j.is_some_and(|j| roots.roots[j].multiplicity == r.multiplicity));
                hit[j.unwrap()] = true;
            }
            prop_assert!(hit.iter().all(|&h| h));
        }

        // a trivial certificate means every element is a scalar matrix
        if let Ok(t) = certify_trivial::<f64>(&w, q, StabOptions::default()) {
            prop_assert_eq!(t.verdict, Verdict::TrivialCertified);
            prop_assert_eq!(group.len(), n);
            for g in &group {
                prop_assert!(distance(g, &scalar(g[0][0])) <= TOL);
            }
        }
    }
}

#[test]
fn scalar_group_matches_certificate_on_rm4_2_2() {
    let w = wstab::rm::reed_muller(4, 2, 2).unwrap().enumerate_weights().unwrap();
    let full = compute_stabilizer::<f64>(&w, 4, StabOptions::default()).unwrap();
    let cert = certify_trivial::<f64>(&w, 4, StabOptions::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::TrivialCertified);
    assert_eq!(full.order(), 16);
    assert_eq!(cert.order(), 16);
    for (a, b) in full.matrices().iter().zip(cert.matrices()) {
        assert!(distance(a, &b) <= TOL);
    }
    let bound: BigInt = full.bound.unwrap();
    assert!(bound >= BigInt::from(16));
}

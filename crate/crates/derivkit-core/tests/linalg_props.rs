//! Quantified properties of the canonical subspace arithmetic.

mod common;

use derivkit_core::matrix::Matrix;
use derivkit_core::rational::{rat, Rational};
use derivkit_core::subspace::{
    kernel, membership_with_coords, span_canonical, subspace_meet_join, subspace_sum,
};
use num_traits::Zero;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| derivkit_core::rational::ratio(n, d))
}

fn vectors(ambient: usize, count: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    proptest::collection::vec(proptest::collection::vec(small_rat(), ambient), 0..=count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // permuting or rescaling a generating set leaves the canonical form
    // byte-identical
    #[test]
    fn canonical_form_is_permutation_and_scale_invariant(
        mut gens in vectors(5, 6),
        seed in any::<u64>(),
    ) {
        let base = span_canonical(&gens, 5).unwrap();
        let mut rng = common::rng(seed);
        use rand::seq::SliceRandom;
        use rand::Rng;
        gens.shuffle(&mut rng);
        for g in gens.iter_mut() {
            let c = rat(rng.random_range(1..=5));
            for e in g.iter_mut() {
                *e *= &c;
            }
        }
        let again = span_canonical(&gens, 5).unwrap();
        prop_assert_eq!(base, again);
    }

    // membership holds exactly when adjoining the vector does not grow
    // the span
    #[test]
    fn membership_matches_span_growth(gens in vectors(4, 5), v in proptest::collection::vec(small_rat(), 4)) {
        let s = span_canonical(&gens, 4).unwrap();
        let mut extended = gens.clone();
        extended.push(v.clone());
        let grown = span_canonical(&extended, 4).unwrap();
        let member = membership_with_coords(&v, &s).unwrap().is_some();
        prop_assert_eq!(member, grown == s);
        if let Some(coords) = membership_with_coords(&v, &s).unwrap() {
            // the coordinates reproduce the vector exactly
            let mut rebuilt = vec![Rational::zero(); 4];
            for (c, row) in coords.iter().zip(s.basis()) {
                for (r, e) in rebuilt.iter_mut().zip(row) {
                    *r += c * e;
                }
            }
            prop_assert_eq!(rebuilt, v);
        }
    }

    // dim(meet) + dim(join) = dim(S1) + dim(S2), with the meet checked
    // against an independent stacked-kernel oracle
    #[test]
    fn meet_join_dimension_identity(g1 in vectors(5, 4), g2 in vectors(5, 4)) {
        let s1 = span_canonical(&g1, 5).unwrap();
        let s2 = span_canonical(&g2, 5).unwrap();
        let (meet, join) = subspace_meet_join(&s1, &s2).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), s1.dim() + s2.dim());
        prop_assert!(s1.contains_subspace(&meet).unwrap());
        prop_assert!(s2.contains_subspace(&meet).unwrap());
        prop_assert!(join.contains_subspace(&s1).unwrap());
        prop_assert!(join.contains_subspace(&s2).unwrap());
        prop_assert_eq!(subspace_sum(&s1, &s2).unwrap(), join.clone());

        // oracle: v ∈ S1 ∩ S2 iff v = Σα·basis1 = Σβ·basis2; solve the
        // stacked system [basis1ᵀ | −basis2ᵀ] and read the meet off the
        // kernel's basis1-coefficients
        let d1 = s1.dim();
        let d2 = s2.dim();
        let mut stacked = Matrix::zeros(5, d1 + d2);
        for (j, row) in s1.basis().iter().enumerate() {
            for i in 0..5 {
                stacked[(i, j)] = row[i].clone();
            }
        }
        for (j, row) in s2.basis().iter().enumerate() {
            for i in 0..5 {
                stacked[(i, d1 + j)] = -row[i].clone();
            }
        }
        let null = kernel(&stacked);
        let mut meet_gens = Vec::new();
        for k in null.basis() {
            let mut v = vec![Rational::zero(); 5];
            for (j, row) in s1.basis().iter().enumerate() {
                for (e, b) in v.iter_mut().zip(row) {
                    *e += &k[j] * b;
                }
            }
            meet_gens.push(v);
        }
        let oracle_meet = span_canonical(&meet_gens, 5).unwrap();
        prop_assert_eq!(oracle_meet, meet);
    }
}

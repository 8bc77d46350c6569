use std::sync::Arc;

use proptest::prelude::*;

use filtforge::comparison::{bottleneck, linf_distance, pseudo_distance_cycle, sublevel_pd0};
use filtforge::corpus::{random_space, random_stable_filtration};
use filtforge::space::cycle_space;
use filtforge::subset::Subset;
use filtforge::synthesis::{induce_1d, sublevel_sets, verify_induction_1d, FilteringFunction};

fn subset_from_mask(mask: &[bool]) -> Subset {
    Subset::from_indices(
        mask.len(),
        mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interior_closure_duality(seed in 0u64..1000, mask in prop::collection::vec(any::<bool>(), 20)) {
        let space = random_space::<f64>(seed, 20).unwrap();
        let x = subset_from_mask(&mask);
        let interior = space.interior(&x).unwrap();
        let closure_c = space.closure_complement(&x).unwrap();
        // int(X) is inside X and cl(X^c) is the complement of int(X)
        prop_assert!(interior.is_subset(&x));
        prop_assert_eq!(closure_c, interior.complement());
        // the boundary is exactly the part of X outside its interior
        let boundary = space.boundary(&x).unwrap();
        prop_assert_eq!(boundary, x.difference(&interior));
    }

    #[test]
    fn hausdorff_is_a_pseudometric(
        seed in 0u64..1000,
        a in prop::collection::vec(any::<bool>(), 15),
        b in prop::collection::vec(any::<bool>(), 15),
        c in prop::collection::vec(any::<bool>(), 15),
    ) {
        prop_assume!(a.iter().any(|&x| x) && b.iter().any(|&x| x) && c.iter().any(|&x| x));
        let space = random_space::<f64>(seed, 15).unwrap();
        let (a, b, c) = (subset_from_mask(&a), subset_from_mask(&b), subset_from_mask(&c));
        let ab = space.hausdorff(&a, &b).unwrap();
        prop_assert_eq!(ab, space.hausdorff(&b, &a).unwrap());
        prop_assert_eq!(space.hausdorff(&a, &a).unwrap(), 0.0);
        let through = ab + space.hausdorff(&b, &c).unwrap();
        prop_assert!(space.hausdorff(&a, &c).unwrap() <= through + 1e-9);
    }

    #[test]
    fn synthesis_round_trips_exactly(seed in 0u64..5000, count in 8usize..40, levels in 3usize..8) {
        let space = Arc::new(random_space::<f64>(seed, count).unwrap());
        let f = random_stable_filtration(space, seed ^ 0x7777, levels).unwrap();
        let phi = induce_1d(&f).unwrap();
        prop_assert!(verify_induction_1d(&f, &phi).unwrap().passed());
    }

    #[test]
    fn sublevel_sets_are_monotone(
        seed in 0u64..1000,
        values in prop::collection::vec(0.0f64..4.0, 12),
        i in 0.0f64..4.0,
        j in 0.0f64..4.0,
    ) {
        prop_assume!(i <= j);
        let space = random_space::<f64>(seed, 12).unwrap();
        let phi = FilteringFunction::from_scalar(values);
        let low = sublevel_sets(&space, &phi, &[i]).unwrap();
        let high = sublevel_sets(&space, &phi, &[j]).unwrap();
        prop_assert!(low.is_subset(&high));
    }

    #[test]
    fn pseudo_distance_on_cycles_is_sane(
        a in prop::collection::vec(0.0f64..4.0, 12),
        b in prop::collection::vec(0.0f64..4.0, 12),
        rotation in 0usize..12,
    ) {
        let space = cycle_space::<f64>(12, 1.0, 1.0).unwrap();
        let fa = FilteringFunction::from_scalar(a.clone());
        let fb = FilteringFunction::from_scalar(b.clone());
        let d = pseudo_distance_cycle(&space, &fa, &fb).unwrap();
        // symmetric, below the max norm, invariant under rotating one input
        prop_assert!((d - pseudo_distance_cycle(&space, &fb, &fa).unwrap()).abs() <= 1e-12);
        prop_assert!(d <= linf_distance(&fa, &fb).unwrap() + 1e-12);
        let rotated: Vec<f64> = (0..12).map(|k| b[(k + rotation) % 12]).collect();
        let fr = FilteringFunction::from_scalar(rotated);
        prop_assert!((d - pseudo_distance_cycle(&space, &fa, &fr).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn bottleneck_is_bounded_by_function_distance(
        seed in 0u64..1000,
        a in prop::collection::vec(0.0f64..4.0, 14),
        b in prop::collection::vec(0.0f64..4.0, 14),
    ) {
        let space = random_space::<f64>(seed, 14).unwrap();
        let fa = FilteringFunction::from_scalar(a);
        let fb = FilteringFunction::from_scalar(b);
        let pda = sublevel_pd0(&space, &fa).unwrap();
        let pdb = sublevel_pd0(&space, &fb).unwrap();
        prop_assert!(bottleneck(&pda, &pdb).unwrap() <= linf_distance(&fa, &fb).unwrap() + 1e-9);
    }
}

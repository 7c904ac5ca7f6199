mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use incgen_core::degree::erdos_gallai;
use incgen_core::multigraph::compute_p2;
use incgen_core::switching::{
    apply_d_switching, apply_l_switching, b_d_1, b_l_0, b_l_1, sample_d_candidate,
    sample_l_candidate, Workspace,
};
use incgen_core::verification::{
    chi_square_uniformity, enumerate_graphs, enumerate_graphs_brute_force, level_one_anchors,
    oracle_b0, oracle_b1, DenseMultigraph,
};
use incgen_core::{generate_pairing, inc_gen, DegreeSequence, Multigraph, SwitchingKind};

fn small_sequence() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=5, 1..=8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_graph_keeps_degrees(seq in small_sequence(), seed in any::<u64>()) {
        let ds = DegreeSequence::from_degrees(seq);
        prop_assume!(ds.total().is_multiple_of(2) && ds.is_graphical());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = inc_gen(&ds, &mut rng, None).unwrap();
        prop_assert_eq!(g.degrees(), ds.degrees().to_vec());
    }

    #[test]
    fn switchings_keep_degrees_and_p2(
        seq in prop::collection::vec(2u32..=6, 8..=30),
        seed in any::<u64>(),
    ) {
        let mut d = seq;
        if d.iter().sum::<u32>() % 2 == 1 {
            d[0] += 1;
        }
        let ds = DegreeSequence::from_degrees(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Multigraph::from_pairing(generate_pairing(&ds, &mut rng).unwrap());
        for _ in 0..200 {
            if g.loop_total() > 0 {
                if let Some(a) = sample_l_candidate(&g, &mut rng) {
                    apply_l_switching(&mut g, &a).unwrap();
                }
            } else if g.double_total() > 0 {
                if let Some(a) = sample_d_candidate(&g, &mut rng) {
                    apply_d_switching(&mut g, &a).unwrap();
                }
            }
            prop_assert_eq!(g.degrees(), ds.degrees().to_vec());
            prop_assert_eq!(g.p2(), compute_p2(&g));
            prop_assert!(g.check_consistency().is_ok());
        }
    }

    #[test]
    fn graphical_iff_some_graph_exists(seq in prop::collection::vec(0u32..=7, 1..=8)) {
        prop_assume!(seq.iter().sum::<u32>() % 2 == 0);
        let ds = DegreeSequence::from_degrees(seq.clone());
        let exists = !enumerate_graphs(&ds).unwrap().is_empty();
        prop_assert_eq!(erdos_gallai(&seq), exists);
        prop_assert_eq!(ds.is_graphical(), exists);
    }

    #[test]
    fn fast_counts_match_oracle(seq in prop::collection::vec(1u32..=4, 5..=12), seed in any::<u64>()) {
        let mut d = seq;
        if d.iter().sum::<u32>() % 2 == 1 {
            d[0] += 1;
        }
        let ds = DegreeSequence::from_degrees(d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Multigraph::from_pairing(generate_pairing(&ds, &mut rng).unwrap());
        let dense = DenseMultigraph::from_multigraph(&g);
        prop_assume!(!dense.profile().has_bad_multiplicity);
        prop_assert_eq!(b_l_0(&g), oracle_b0(&dense, SwitchingKind::Loop));
        let mut ws = Workspace::default();
        for path in level_one_anchors(&dense, SwitchingKind::Loop).into_iter().take(20) {
            prop_assert_eq!(b_l_1(&g, &path).unwrap(), oracle_b1(&dense, SwitchingKind::Loop, path));
            prop_assert_eq!(
                b_d_1(&g, &path, &mut ws).unwrap(),
                oracle_b1(&dense, SwitchingKind::Double, path)
            );
        }
    }

    #[test]
    fn chi_square_ignores_cell_order(
        counts in prop::collection::vec(0u64..500, 2..=20),
        rot in 0usize..20,
    ) {
        prop_assume!(counts.iter().sum::<u64>() > 0);
        let mut shuffled = counts.clone();
        shuffled.reverse();
        let r = rot % shuffled.len();
        shuffled.rotate_left(r);
        let a = chi_square_uniformity(&counts, 0.01).unwrap();
        let b = chi_square_uniformity(&shuffled, 0.01).unwrap();
        prop_assert!((a.statistic - b.statistic).abs() < 1e-9 * (1.0 + a.statistic));
        prop_assert_eq!(a.df, b.df);
        prop_assert_eq!(a.pass, b.pass);
    }

    #[test]
    fn enumeration_invariant_under_relabelling(seq in prop::collection::vec(0u32..=4, 1..=6)) {
        prop_assume!(seq.iter().sum::<u32>() % 2 == 0);
        let fast = enumerate_graphs(&DegreeSequence::from_degrees(seq.clone())).unwrap();
        let brute = enumerate_graphs_brute_force(&DegreeSequence::from_degrees(seq.clone())).unwrap();
        prop_assert_eq!(fast.len(), brute.len());
        let mut rev = seq;
        rev.reverse();
        let relabelled = enumerate_graphs(&DegreeSequence::from_degrees(rev)).unwrap();
        prop_assert_eq!(fast.len(), relabelled.len());
    }
}

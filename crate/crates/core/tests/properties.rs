mod common;

use nilgraph::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use nilgraph::isometry::{bracket_residual, fingerprint, random_block_orthogonal, transform};
use nilgraph::lie::{three_step, two_step, AlgebraDoc, NilpotentLieAlgebra, TAssignment};
use nilgraph::linalg::{q_frac, QMatrix};
use nilgraph::perm::Permutation;
use nilgraph::schreier::{GraphDoc, SchreierGraph};
use nilgraph::surd::Surd;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn perm_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..9).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    (3usize..6)
        .prop_flat_map(|n| prop::collection::vec(perm(n), 1..3))
        .prop_map(|gens| FiniteGroup::generate(&gens, DEFAULT_ELEMENT_CAP).unwrap())
}

fn random_algebra(seed: u64) -> NilpotentLieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(g) = common::random_graph(&mut rng) {
            if g.vertex_count() > 14 {
                continue;
            }
            return three_step(&g, &TAssignment::generic(&g)).unwrap_or_else(|_| two_step(&g));
        }
    }
}

fn random_graph(seed: u64) -> SchreierGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(g) = common::random_graph(&mut rng) {
            return g;
        }
    }
}

fn rational() -> impl Strategy<Value = nilgraph::linalg::Q> {
    (-20i64..20, 1i64..8).prop_map(|(n, d)| q_frac(n, d))
}

fn surd() -> impl Strategy<Value = Surd> {
    (rational(), rational()).prop_map(|(a, b)| Surd::new(a, b, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((a, b, c) in perm_triple()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels((a, _, _) in perm_triple()) {
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.order() % a.cycles().iter().map(Vec::len).max().unwrap_or(1), 0);
    }

    #[test]
    fn cycle_notation_round_trips((a, _, _) in perm_triple()) {
        let text = a.to_cycle_string();
        prop_assert_eq!(Permutation::parse_cycles(&text, a.degree()).unwrap(), a);
    }

    #[test]
    fn class_sizes_partition_the_group(g in small_group()) {
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(Vec::len).sum();
        prop_assert_eq!(total, g.order());
        for c in &classes {
            prop_assert_eq!(g.order() % c.len(), 0);
        }
    }

    #[test]
    fn cosets_are_invariant_under_the_subgroup(g in small_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let h_gens: Vec<Permutation> = picks.iter().map(|i| g.elements()[i.index(g.order())].clone()).collect();
        let h = g.subgroup(&h_gens).unwrap();
        let table = g.right_cosets(&h_gens).unwrap();
        prop_assert_eq!(table.len() * h.len(), g.order());
        for x in g.elements().iter().take(24) {
            let c = table.index_of(x).unwrap();
            for y in &h {
                prop_assert_eq!(table.index_of(&y.compose(x).unwrap()), Some(c));
            }
        }
    }

    #[test]
    fn schreier_labels_act_as_permutations(seed in any::<u64>()) {
        let g = random_graph(seed);
        for l in 0..g.labels().len() {
            let mut seen = vec![false; g.vertex_count()];
            for &w in g.succ(l) {
                prop_assert!(!seen[w]);
                seen[w] = true;
            }
            let z = &g.label_elements()[l];
            for v in 0..g.vertex_count() {
                prop_assert_eq!(g.act(z, v), Some(g.succ(l)[v]));
            }
        }
    }

    #[test]
    fn graph_documents_round_trip(seed in any::<u64>()) {
        let g = random_graph(seed);
        let text = serde_json::to_string(&g.to_doc()).unwrap();
        let doc: GraphDoc = serde_json::from_str(&text).unwrap();
        let back = SchreierGraph::from_doc(&doc).unwrap();
        prop_assert_eq!(back.succ_all(), g.succ_all());
        prop_assert_eq!(back.vertex_names(), g.vertex_names());
    }

    #[test]
    fn algebra_documents_round_trip(seed in any::<u64>()) {
        let a = random_algebra(seed);
        let text = serde_json::to_string(&a.to_doc()).unwrap();
        let doc: AlgebraDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(NilpotentLieAlgebra::from_doc(&doc).unwrap(), a);
    }

    #[test]
    fn fingerprint_is_block_orthogonal_invariant(seed in any::<u64>()) {
        let a = random_algebra(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let phi = random_block_orthogonal(&a, &mut rng);
        let b = transform(&a, &phi).unwrap();
        prop_assert!(fingerprint(&a).matches(&fingerprint(&b)));
    }

    #[test]
    fn residual_is_symmetric_under_inversion(seed in any::<u64>()) {
        let a = random_algebra(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let b = transform(&a, &random_block_orthogonal(&a, &mut rng)).unwrap();
        let rows = random_block_orthogonal(&a, &mut rng).to_f64_rows();
        let phi = nalgebra::DMatrix::from_fn(a.dim(), a.dim(), |i, j| rows[i][j]);
        let r1 = bracket_residual(&phi, &a, &b).unwrap();
        let r2 = bracket_residual(&phi.transpose(), &b, &a).unwrap();
        prop_assert!((r1 - r2).abs() <= 1e-9 * (1.0 + r1.abs()));
    }

    #[test]
    fn surd_field_operations(a in surd(), b in surd()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if let Some(inv) = b.recip() {
            prop_assert_eq!(&(&a * &b) * &inv, a.clone());
        }
        prop_assert_eq!(Surd::parse(&a.to_text()), Some(a.clone()));
        let sq = &a * &a;
        prop_assert_eq!(sq.sqrt().map(|r| &r * &r), Some(sq));
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(rational(), 5), 1..5)) {
        let m = QMatrix::from_rows(&rows);
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len() + m.rank(), 5);
        for k in &kernel {
            let col = QMatrix::from_rows(&k.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
            prop_assert!(m.mul(&col).is_zero());
        }
    }
}

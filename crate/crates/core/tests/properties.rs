mod common;

use buchi_core::generate::{gen_bounded, gen_random};
use buchi_core::{
    attractor, colift_at, is_closed, least_fixpoint, lift_at, maxvisit_oracle, mec_decomposition,
    naive_mec, oracle_buchi, oracle_mec, parse_game, render_game, replay_trace, solve_classical,
    solve_fast, GameGraph, Mode, Operator, Owner, PmValue, ProgressMeasure, TraceEvent, VertexId,
    VertexSet,
};
use proptest::prelude::*;

fn small_graph(max_n: usize, max_outdeg: usize) -> impl Strategy<Value = GameGraph> {
    (1..=max_n, 0.0..=1.0f64, 0.0..=1.0f64, any::<u64>())
        .prop_map(move |(n, p2, b, seed)| gen_bounded(n, max_outdeg, p2, b, seed).unwrap())
}

fn graph_and_subset(max_n: usize) -> impl Strategy<Value = (GameGraph, VertexSet)> {
    small_graph(max_n, 3).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(g, mask)| (g, VertexSet::from_mask(&mask)))
    })
}

/// `R_{i+1} = R_i ∪ {v : v ∈ V_player, some successor in R_i}
///                ∪ {v : v ∈ V_opp, all successors in R_i}`,
/// returning the stage at which each vertex enters.
fn naive_attractor(g: &GameGraph, player: Owner, targets: &VertexSet) -> Vec<Option<u32>> {
    let mut stage: Vec<Option<u32>> = vec![None; g.n()];
    for v in targets {
        stage[v.index()] = Some(0);
    }
    for i in 1.. {
        let inside = |w: VertexId, stage: &[Option<u32>]| stage[w.index()].is_some_and(|s| s < i);
        let fresh: Vec<VertexId> = g
            .alive_vertices()
            .filter(|&v| stage[v.index()].is_none())
            .filter(|&v| {
                if g.owner(v) == player {
                    g.successors(v).any(|w| inside(w, &stage))
                } else {
                    g.successors(v).all(|w| inside(w, &stage))
                }
            })
            .collect();
        if fresh.is_empty() {
            break;
        }
        for v in fresh {
            stage[v.index()] = Some(i);
        }
    }
    stage
}

fn random_measure(n: usize, values: &[u8]) -> ProgressMeasure {
    ProgressMeasure::from_values(
        values
            .iter()
            .take(n)
            .map(|&x| {
                let k = x as usize % (n + 2);
                if k > n {
                    PmValue::Top
                } else {
                    PmValue::Finite(k as u32)
                }
            })
            .collect(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn attractor_matches_the_inductive_definition((g, targets) in graph_and_subset(7), p1 in any::<bool>()) {
        let player = if p1 { Owner::Player1 } else { Owner::Player2 };
        let fast = attractor(&g, player, targets.iter(), &g);
        let naive = naive_attractor(&g, player, &targets);
        for v in g.vertices() {
            prop_assert_eq!(fast.rank(v), naive[v.index()]);
            if let (Some(w), Some(r)) = (fast.strategy(v), fast.rank(v)) {
                prop_assert!(g.has_edge(v, w));
                prop_assert!(fast.rank(w).unwrap() < r);
            }
        }
        prop_assert!(targets.is_subset(&fast.members()));
    }

    #[test]
    fn attractor_complement_is_closed_and_attractor_is_idempotent((g, targets) in graph_and_subset(7), p1 in any::<bool>()) {
        let player = if p1 { Owner::Player1 } else { Owner::Player2 };
        let a = attractor(&g, player, targets.iter(), &g).members();
        let rest: VertexSet = g.alive_vertices().filter(|&v| !a.contains(v)).collect();
        prop_assert!(is_closed(&g, player, &rest));
        prop_assert_eq!(attractor(&g, player, a.iter(), &g).members(), a);
    }

    #[test]
    fn lift_and_colift_are_monotone(g in small_graph(7, 3), a in proptest::collection::vec(any::<u8>(), 7), b in proptest::collection::vec(any::<u8>(), 7)) {
        let n = g.n();
        let (x, y) = (random_measure(n, &a), random_measure(n, &b));
        let lo = ProgressMeasure::from_values(x.values().iter().zip(y.values()).map(|(p, q)| *p.min(q)).collect());
        let hi = ProgressMeasure::from_values(x.values().iter().zip(y.values()).map(|(p, q)| *p.max(q)).collect());
        for v in g.vertices() {
            prop_assert!(lift_at(&g, &lo, v) <= lift_at(&g, &hi, v));
            prop_assert!(colift_at(&g, &lo, v) <= colift_at(&g, &hi, v));
        }
    }

    #[test]
    fn fixpoints_characterise_the_winning_sets(g in small_graph(9, 4)) {
        let p = solve_classical(&g);
        let lift = least_fixpoint(&g, Operator::Lift);
        let colift = least_fixpoint(&g, Operator::CoLift);
        prop_assert_eq!(lift.support(&g), p.w1.clone());
        prop_assert_eq!(colift.support(&g), p.w2);
        for v in g.vertices() {
            prop_assert_eq!(lift_at(&g, &lift, v), lift.get(v));
            prop_assert_eq!(colift_at(&g, &colift, v), colift.get(v));
        }
        // inside W1 the Lift value is the attractor rank towards B ∩ W1
        let mut inside = g.clone();
        let w2: Vec<VertexId> = g.vertices().filter(|&v| !p.w1.contains(v)).collect();
        inside.remove_vertices(w2).unwrap();
        let ranks = attractor(&inside, Owner::Player1, inside.buchi_vertices(), &inside);
        for v in &p.w1 {
            prop_assert_eq!(lift.get(v), PmValue::Finite(ranks.rank(v).unwrap()));
        }
    }

    #[test]
    fn colift_values_count_forced_visits(g in small_graph(6, 3)) {
        let colift = least_fixpoint(&g, Operator::CoLift);
        for v in g.vertices() {
            prop_assert_eq!(colift.get(v), maxvisit_oracle(&g, v).unwrap());
        }
    }

    #[test]
    fn oracles_are_self_consistent(g in small_graph(7, 3)) {
        let p = oracle_buchi(&g).unwrap();
        prop_assert!(common::is_partition(&g, &p));
        let d = oracle_mec(&g).unwrap();
        let mut covered = d.non_mec.clone();
        for c in &d.mecs {
            prop_assert!(covered.is_disjoint(c));
            covered = covered.union(c);
        }
        prop_assert_eq!(covered.len(), g.n());
    }

    #[test]
    fn render_then_parse_is_identity(n in 1usize..40, extra in 0usize..200, p2 in 0.0..=1.0f64, b in 0.0..=1.0f64, seed in any::<u64>()) {
        let m = (n + extra).min(n * n);
        let g = gen_random(n, m, p2, b, seed).unwrap();
        let text = render_game(&g);
        let h = parse_game(&text).unwrap();
        prop_assert_eq!(h.vertex_records(), g.vertex_records());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        for v in g.vertices() {
            prop_assert_eq!(h.predecessors(v).collect::<Vec<_>>(), g.predecessors(v).collect::<Vec<_>>());
        }
    }

    #[test]
    fn queries_do_not_disturb_replay(g in small_graph(10, 4), picks in proptest::collection::vec((any::<u16>(), any::<bool>()), 0..12)) {
        // Build a legal deletion trace by simulating the graph.
        let mut sim = g.clone();
        let mut plain = Vec::new();
        let mut noisy = vec![TraceEvent::Query];
        for (k, q) in picks {
            let legal: Vec<_> = sim
                .edges()
                .filter(|&(u, _)| sim.owner(u) == Owner::Player1 && sim.out_degree(u) > 1)
                .collect();
            if legal.is_empty() {
                break;
            }
            let (u, v) = legal[k as usize % legal.len()];
            sim.delete_edge(u, v).unwrap();
            plain.push(TraceEvent::Delete(u, v));
            plain.push(TraceEvent::Query);
            noisy.push(TraceEvent::Delete(u, v));
            if q {
                noisy.push(TraceEvent::Query);
            }
            noisy.push(TraceEvent::Query);
        }
        let a = replay_trace(&g, &plain, Mode::Decremental).unwrap();
        let b = replay_trace(&g, &noisy, Mode::Decremental).unwrap();
        // each noisy query must see the answer after the same number of deletions
        let initial = solve_classical(&g).w1;
        let mut deleted = 0;
        let mut answers = b.iter();
        for event in &noisy {
            match event {
                TraceEvent::Query => {
                    let expected = if deleted == 0 { &initial } else { &a[deleted - 1] };
                    prop_assert_eq!(answers.next().unwrap(), expected);
                }
                _ => deleted += 1,
            }
        }
    }

    #[test]
    fn fast_agrees_with_classical(n in 1usize..120, density in 1usize..30, p2 in 0.0..=1.0f64, b in 0.0..=0.5f64, seed in any::<u64>()) {
        let g = gen_random(n, (n * density).min(n * n), p2, b, seed).unwrap();
        let (fast, classical) = (solve_fast(&g), solve_classical(&g));
        prop_assert_eq!(fast.w1, classical.w1);
        prop_assert_eq!(fast.w2, classical.w2);
    }

    #[test]
    fn mec_algorithms_agree(g in small_graph(10, 4)) {
        let fast = mec_decomposition(&g);
        prop_assert_eq!(&fast, &naive_mec(&g));
        prop_assert_eq!(&fast, &oracle_mec(&g).unwrap());
    }
}

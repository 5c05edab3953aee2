use proptest::prelude::*;

use algiso_core::algebra::CoefficientDomain;
use algiso_core::graph::families::random_coloured_pair;
use algiso_core::graph::game::DEFAULT_POSITION_BUDGET;
use algiso_core::graph::{brute_force_isomorphic, solve_bijective_pebble_game, GamePosition};
use algiso_core::iso::{build_iso_system, IsoOptions};
use algiso_core::provers::{monomial_pc_decide, nss_decide, pc_decide, wl_solution, ProverVerdict};

const Q: CoefficientDomain = CoefficientDomain::Rationals;

fn verdicts(g: &algiso_core::graph::ColouredGraph, h: &algiso_core::graph::ColouredGraph, d: CoefficientDomain, r: usize, prune: bool) -> [bool; 3] {
    let sys = build_iso_system(g, h, d, IsoOptions { prune }.for_degree(r)).unwrap();
    let vars = sys.space.live_vars();
    let run = |v: algiso_core::Result<ProverVerdict>| v.unwrap().refuted();
    [run(nss_decide(&sys.axioms, &vars, r, d)), run(monomial_pc_decide(&sys.axioms, &vars, r, d)), run(pc_decide(&sys.axioms, &vars, r, d))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pruning_keeps_verdicts(n in 2usize..=4, colours in 1usize..=3, seed in any::<u64>(), r in 1usize..=2, p in prop::sample::select(vec![0u64, 3])) {
        let (g, h) = random_coloured_pair(n, colours, 0.5, seed);
        let d = if p == 0 { Q } else { CoefficientDomain::prime_field(p).unwrap() };
        prop_assert_eq!(verdicts(&g, &h, d, r, true), verdicts(&g, &h, d, r, false));
    }

    #[test]
    fn pruning_keeps_verdicts_across_colour_multisets(n in 2usize..=4, seed in any::<u64>(), r in 1usize..=2) {
        let (g, _) = random_coloured_pair(n, 2, 0.5, seed);
        let (h, _) = random_coloured_pair(n, 2, 0.5, seed.wrapping_add(1));
        prop_assert_eq!(verdicts(&g, &h, Q, r, true), verdicts(&g, &h, Q, r, false));
    }

    #[test]
    fn type_solution_blocks_monomial_refutation(n in 2usize..=6, colours in 1usize..=3, seed in any::<u64>()) {
        let (g, h) = random_coloured_pair(n, colours, 0.4, seed);
        let k = 2;
        if let Ok(sol) = wl_solution(&g, &h, k, IsoOptions::default(), DEFAULT_POSITION_BUDGET) {
            prop_assert!(!sol.assignment.is_empty());
            let sys = build_iso_system(&g, &h, Q, IsoOptions::default()).unwrap();
            prop_assert!(!monomial_pc_decide(&sys.axioms, &sys.space.live_vars(), k, Q).unwrap().refuted());
        }
    }

    #[test]
    fn isomorphic_pairs_are_never_refuted(n in 2usize..=5, colours in 1usize..=2, seed in any::<u64>()) {
        let (g, h) = random_coloured_pair(n, colours, 0.5, seed);
        if brute_force_isomorphic(&g, &h).unwrap().is_iso() {
            prop_assert!(!solve_bijective_pebble_game(&g, &h, 2, &GamePosition::empty()).unwrap().spoiler_wins());
            prop_assert_eq!(verdicts(&g, &h, Q, 2, true), [false; 3]);
        }
    }
}

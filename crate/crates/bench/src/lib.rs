//! Seeded workloads shared by the benchmarks.

use simctl_core::random::{generate_uc_simulated, RandomParams};
use simctl_core::Automaton;

/// The first `count` pairs with `G ⊑_uc R` drawn from seeds `0..`, each
/// side with `states` states.
pub fn uc_pairs(count: usize, states: usize) -> Vec<(Automaton, Automaton)> {
    let params = RandomParams {
        plant_states: states,
        spec_states: states,
        uc_events: 1,
        c_events: 2,
        plant_density: 0.2,
        spec_density: 0.3,
        ..RandomParams::default()
    };
    (0u64..)
        .filter_map(|seed| generate_uc_simulated(&params, seed, 200).ok())
        .map(|(g, r, _)| (g, r))
        .take(count)
        .collect()
}

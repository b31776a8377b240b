//! Instance generators and brute-force oracles shared by the integration
//! suites. The oracles work on plain index sets and never call the
//! library's fixpoint, cover or closure code.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simctl_core::random::{generate_uc_simulated, RandomParams};
use simctl_core::{Automaton, EventId, StateId};

pub type Pair = (usize, usize);
pub type PairSet = BTreeSet<Pair>;

pub struct Instance {
    pub seed: u64,
    pub g: Automaton,
    pub r: Automaton,
}

/// Parameters for instance `seed`: up to `max_states` states per side,
/// one or two events of each controllability, and every fourth instance
/// with one unobservable event.
pub fn params_for(seed: u64, max_states: usize) -> RandomParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f_7a12);
    let plant_states = rng.gen_range(1..=max_states);
    let spec_states = rng.gen_range(1..=max_states);
    RandomParams {
        plant_states,
        spec_states,
        uc_events: rng.gen_range(1..=2),
        c_events: rng.gen_range(1..=2),
        unobservable_events: usize::from(seed % 4 == 3),
        plant_density: rng.gen_range(0.1..0.4),
        spec_density: rng.gen_range(0.2..0.5),
        plant_initial: rng.gen_range(1..=plant_states.min(2)),
        spec_initial: rng.gen_range(1..=spec_states.min(2)),
    }
}

/// The first `count` seeds from `first_seed` on that yield a pair with
/// `G ⊑_uc R` within 400 draws.
pub fn uc_instances(first_seed: u64, count: usize, max_states: usize) -> Vec<Instance> {
    let mut out = Vec::with_capacity(count);
    let mut seed = first_seed;
    while out.len() < count {
        if let Ok((g, r, _)) = generate_uc_simulated(&params_for(seed, max_states), seed, 400) {
            out.push(Instance { seed, g, r });
        }
        seed += 1;
    }
    out
}

/// Any pair (simulated or not), for oracle comparisons.
pub fn any_instance(seed: u64, max_states: usize) -> Instance {
    let (g, r) = simctl_core::random::generate(&params_for(seed, max_states), seed).unwrap();
    Instance { seed, g, r }
}

pub fn succ(a: &Automaton, x: usize, e: usize) -> Vec<usize> {
    a.successors(StateId::new(x), EventId::new(e))
        .iter()
        .map(|s| s.index())
        .collect()
}

fn checked_events(g: &Automaton, uc_only: bool) -> Vec<usize> {
    g.alphabet()
        .ids()
        .filter(|&e| !uc_only || g.alphabet().is_uncontrollable(e))
        .map(|e| e.index())
        .collect()
}

/// Greatest (Σ_uc-)simulation candidate by repeated naive sweeps: drop
/// any pair with a move that cannot be matched back into the set, until
/// a sweep drops nothing.
pub fn naive_greatest(g: &Automaton, r: &Automaton, uc_only: bool) -> PairSet {
    let events = checked_events(g, uc_only);
    let mut rel: PairSet = (0..g.num_states())
        .flat_map(|x| (0..r.num_states()).map(move |z| (x, z)))
        .collect();
    loop {
        let keep: PairSet = rel
            .iter()
            .copied()
            .filter(|&(x, z)| {
                events.iter().all(|&e| {
                    succ(g, x, e)
                        .iter()
                        .all(|&x1| succ(r, z, e).iter().any(|&z1| rel.contains(&(x1, z1))))
                })
            })
            .collect();
        if keep.len() == rel.len() {
            return rel;
        }
        rel = keep;
    }
}

pub fn naive_simulates(g: &Automaton, r: &Automaton, uc_only: bool) -> bool {
    let rel = naive_greatest(g, r, uc_only);
    g.initial().iter().all(|x0| {
        r.initial()
            .iter()
            .any(|z0| rel.contains(&(x0.index(), z0.index())))
    })
}

/// Is `rel` closed under the transfer condition?
pub fn naive_is_transfer_closed(g: &Automaton, r: &Automaton, rel: &PairSet, uc_only: bool) -> bool {
    let events = checked_events(g, uc_only);
    rel.iter().all(|&(x, z)| {
        events.iter().all(|&e| {
            succ(g, x, e)
                .iter()
                .all(|&x1| succ(r, z, e).iter().any(|&z1| rel.contains(&(x1, z1))))
        })
    })
}

/// All subsets of `universe`, by bitmask. Panics above 20 elements.
pub fn subsets(universe: &[Pair]) -> impl Iterator<Item = PairSet> + '_ {
    assert!(universe.len() <= 20, "subset oracle limited to 20 pairs");
    (0u32..1 << universe.len()).map(move |mask| {
        universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

/// Does `cand` meet every `e`-obligation of `w` (every `x -e-> x'` of a
/// pair `(x,z) ∈ w` matched by some `z -e-> z'` with `(x',z') ∈ cand`)?
pub fn covers(g: &Automaton, r: &Automaton, w: &PairSet, e: usize, cand: &PairSet) -> bool {
    w.iter().all(|&(x, z)| {
        succ(g, x, e)
            .iter()
            .all(|&x1| succ(r, z, e).iter().any(|&z1| cand.contains(&(x1, z1))))
    })
}

/// `N(W, e)` by definition: subsets `W''` of `W^↑` covering the
/// obligations of `W` whose every pair `(x',z')` arises from some
/// `(x,z) ∈ W` with `x -e-> x'` and `z -e-> z'`.
pub fn naive_n_set(
    g: &Automaton,
    r: &Automaton,
    winning: &PairSet,
    w: &PairSet,
    e: usize,
) -> Vec<PairSet> {
    let produced: Vec<Pair> = winning
        .iter()
        .copied()
        .filter(|&(x1, z1)| {
            w.iter()
                .any(|&(x, z)| succ(g, x, e).contains(&x1) && succ(r, z, e).contains(&z1))
        })
        .collect();
    let mut out: Vec<PairSet> = subsets(&produced)
        .filter(|c| covers(g, r, w, e, c))
        .collect();
    out.sort();
    out
}

pub fn minimal_of(family: &[PairSet]) -> Vec<PairSet> {
    let mut out: Vec<PairSet> = family
        .iter()
        .filter(|a| !family.iter().any(|b| b != *a && b.is_subset(a)))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Minimal `γ`-closed supersets of `w1` inside `winning`, by enumerating
/// every subset of `winning`.
pub fn naive_minimal_u(
    g: &Automaton,
    r: &Automaton,
    winning: &PairSet,
    w1: &PairSet,
    gamma: &[usize],
) -> Vec<PairSet> {
    let universe: Vec<Pair> = winning.iter().copied().collect();
    let closed: Vec<PairSet> = subsets(&universe)
        .filter(|w| w1.is_subset(w))
        .filter(|w| gamma.iter().all(|&e| covers(g, r, w, e, w)))
        .collect();
    minimal_of(&closed)
}

pub fn to_pairset(ps: &simctl_core::PowerState) -> PairSet {
    ps.iter().map(|(x, z)| (x.index(), z.index())).collect()
}

pub fn relation_pairs(rel: &simctl_core::Relation) -> PairSet {
    rel.iter().map(|(x, z)| (x.index(), z.index())).collect()
}

/// Every automaton over `alphabet` with `k ≤ 3` states `s0..`, all of
/// them reachable, one representative per isomorphism class.
pub fn small_supervisors(alphabet: &simctl_core::Alphabet, max_states: usize) -> Vec<Automaton> {
    let m = alphabet.len();
    let mut out = Vec::new();
    for k in 1..=max_states {
        let slots = k * m * k;
        assert!(slots <= 24, "enumeration too large");
        let perms = permutations(k);
        let mut seen: HashSet<(u32, u64)> = HashSet::new();
        for init in 1u32..(1 << k) {
            for edges in 0u64..(1 << slots) {
                let code = (init, edges);
                if !all_reachable(k, m, init, edges) {
                    continue;
                }
                let canon = perms
                    .iter()
                    .map(|p| permute(k, m, p, init, edges))
                    .min()
                    .unwrap();
                if canon != code || !seen.insert(canon) {
                    continue;
                }
                let names: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
                let initial: Vec<usize> = (0..k).filter(|&i| init >> i & 1 == 1).collect();
                let trans: Vec<(usize, EventId, usize)> = (0..slots)
                    .filter(|&b| edges >> b & 1 == 1)
                    .map(|b| (b / (m * k), EventId::new(b / k % m), b % k))
                    .collect();
                out.push(Automaton::from_indexed(alphabet.clone(), names, initial, trans).unwrap());
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn permute(k: usize, m: usize, p: &[usize], init: u32, edges: u64) -> (u32, u64) {
    let mut ni = 0u32;
    for i in 0..k {
        if init >> i & 1 == 1 {
            ni |= 1 << p[i];
        }
    }
    let mut ne = 0u64;
    for b in 0..k * m * k {
        if edges >> b & 1 == 1 {
            let (s, e, t) = (b / (m * k), b / k % m, b % k);
            ne |= 1 << (p[s] * m * k + e * k + p[t]);
        }
    }
    (ni, ne)
}

fn all_reachable(k: usize, m: usize, init: u32, edges: u64) -> bool {
    let mut reach = init;
    loop {
        let mut next = reach;
        for b in 0..k * m * k {
            if edges >> b & 1 == 1 && reach >> (b / (m * k)) & 1 == 1 {
                next |= 1 << (b % k);
            }
        }
        if next == reach {
            return reach.count_ones() as usize == k;
        }
        reach = next;
    }
}

//! Seeded random plant/specification pairs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, EventDecl};
use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::simulation::{simulates, SimMode};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RandomParams {
    pub plant_states: usize,
    pub spec_states: usize,
    pub uc_events: usize,
    pub c_events: usize,
    /// Events made unobservable, chosen at random among all events.
    pub unobservable_events: usize,
    /// Probability of each possible plant transition `(x, σ, x')`.
    pub plant_density: f64,
    /// Probability of each possible spec transition `(z, σ, z')`.
    pub spec_density: f64,
    pub plant_initial: usize,
    pub spec_initial: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            plant_states: 4,
            spec_states: 4,
            uc_events: 1,
            c_events: 1,
            unobservable_events: 0,
            plant_density: 0.25,
            spec_density: 0.35,
            plant_initial: 1,
            spec_initial: 1,
        }
    }
}

impl RandomParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(what.to_string()));
        if self.plant_states == 0 || self.spec_states == 0 {
            return bad("state counts must be positive");
        }
        if self.uc_events + self.c_events == 0 {
            return bad("at least one event is required");
        }
        if self.unobservable_events > self.uc_events + self.c_events {
            return bad("more unobservable events than events");
        }
        if self.plant_initial == 0 || self.plant_initial > self.plant_states {
            return bad("plant initial count must be in 1..=plant_states");
        }
        if self.spec_initial == 0 || self.spec_initial > self.spec_states {
            return bad("spec initial count must be in 1..=spec_states");
        }
        for d in [self.plant_density, self.spec_density] {
            if !(0.0..=1.0).contains(&d) {
                return bad("densities must lie in [0, 1]");
            }
        }
        Ok(())
    }
}

/// Events `u0..` (uncontrollable) and `c0..` (controllable).
pub fn random_alphabet(params: &RandomParams, rng: &mut impl Rng) -> Alphabet {
    let mut decls: Vec<EventDecl> = (0..params.uc_events)
        .map(|i| EventDecl::uc(format!("u{i}")))
        .chain((0..params.c_events).map(|i| EventDecl::c(format!("c{i}"))))
        .collect();
    let mut idx: Vec<usize> = (0..decls.len()).collect();
    idx.shuffle(rng);
    for &i in idx.iter().take(params.unobservable_events) {
        decls[i].observable = false;
    }
    Alphabet::new(decls).expect("generated event names are distinct")
}

/// A random automaton with states `{prefix}0..{prefix}{n-1}`; each
/// `(x, σ, x')` is present with probability `density`.
pub fn random_automaton(
    alphabet: &Alphabet,
    states: usize,
    initial: usize,
    density: f64,
    prefix: &str,
    rng: &mut impl Rng,
) -> Automaton {
    let names: Vec<String> = (0..states).map(|i| format!("{prefix}{i}")).collect();
    let mut init: Vec<usize> = (0..states).collect();
    init.shuffle(rng);
    init.truncate(initial.max(1));
    let mut edges = Vec::new();
    for x in 0..states {
        for e in alphabet.ids() {
            for t in 0..states {
                if rng.gen_bool(density) {
                    edges.push((x, e, t));
                }
            }
        }
    }
    Automaton::from_indexed(alphabet.clone(), names, init, edges)
        .expect("generated automaton is well formed")
}

/// One random `(G, R)` pair drawn from `rng`.
pub fn random_pair(params: &RandomParams, rng: &mut impl Rng) -> Result<(Automaton, Automaton)> {
    params.validate()?;
    let alphabet = random_alphabet(params, rng);
    let g = random_automaton(
        &alphabet,
        params.plant_states,
        params.plant_initial,
        params.plant_density,
        "x",
        rng,
    );
    let r = random_automaton(
        &alphabet,
        params.spec_states,
        params.spec_initial,
        params.spec_density,
        "z",
        rng,
    );
    Ok((g, r))
}

/// The pair determined by `seed`.
pub fn generate(params: &RandomParams, seed: u64) -> Result<(Automaton, Automaton)> {
    random_pair(params, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Draws pairs from `seed` until one has `G ⊑_uc R`. Returns the pair and
/// the number of draws.
pub fn generate_uc_simulated(
    params: &RandomParams,
    seed: u64,
    max_attempts: usize,
) -> Result<(Automaton, Automaton, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let (g, r) = random_pair(params, &mut rng)?;
        if simulates(&g, &r, SimMode::UcOnly)? {
            return Ok((g, r, attempt));
        }
    }
    Err(Error::RejectionLimit(max_attempts))
}

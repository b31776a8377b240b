//! Admissibility, solution membership and permissiveness of supervisors.

use serde::Serialize;

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::compose::{compose, Product, ProductMode};
use crate::error::Result;
use crate::simulation::{simulates, SimMode};
use crate::verdict::Verdict;

/// A reachable `(y, x)` of `S||G` where the plant can fire an
/// uncontrollable `event` that the supervisor does not enable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityWitness {
    pub supervisor_state: String,
    pub plant_state: String,
    pub event: String,
}

pub(crate) fn first_uc_violation(product: &Product, plant: &Automaton) -> Option<(StateId, EventId)> {
    let p = &product.automaton;
    let reach = p.reachable();
    let alphabet = plant.alphabet();
    p.state_ids()
        .filter(|&q| reach.contains(q))
        .find_map(|q| {
            let (_, x) = product.components(q);
            alphabet
                .uncontrollable()
                .find(|&e| plant.enables(x, e) && !p.enables(q, e))
                .map(|e| (q, e))
        })
}

pub(crate) fn witness(
    product: &Product,
    s: &Automaton,
    g: &Automaton,
    q: StateId,
    e: EventId,
) -> AdmissibilityWitness {
    let (y, x) = product.components(q);
    AdmissibilityWitness {
        supervisor_state: s.state_name(y).to_string(),
        plant_state: g.state_name(x).to_string(),
        event: g.alphabet().name(e).to_string(),
    }
}

/// Σ_uc-admissibility of `s` with respect to `g`. The witness is the
/// least reachable product state (by name) with a disabled uncontrollable
/// plant move.
pub fn is_admissible(s: &Automaton, g: &Automaton) -> Result<Verdict<AdmissibilityWitness>> {
    let product = compose(s, g, ProductMode::Reachable)?;
    Ok(first_uc_violation(&product, g)
        .map(|(q, e)| witness(&product, s, g, q, e))
        .into())
}

/// `S ∈ SP(G, R)`: admissible and `S||G ⊑ R`.
pub fn in_sp(s: &Automaton, g: &Automaton, r: &Automaton) -> Result<bool> {
    let product = compose(s, g, ProductMode::Reachable)?;
    if first_uc_violation(&product, g).is_some() {
        return Ok(false);
    }
    simulates(&product.automaton, r, SimMode::Full)
}

/// `S₁||G ⊑ S₂||G`.
pub fn more_permissive(s1: &Automaton, s2: &Automaton, g: &Automaton) -> Result<bool> {
    ClosedLoop::new(s1, g)?.is_simulated_by(&ClosedLoop::new(s2, g)?)
}

/// The reachable closed loop `S||G`, kept for repeated permissiveness
/// comparisons against the same supervisor.
#[derive(Clone, Debug)]
pub struct ClosedLoop {
    product: Product,
}

impl ClosedLoop {
    pub fn new(s: &Automaton, g: &Automaton) -> Result<Self> {
        Ok(ClosedLoop {
            product: compose(s, g, ProductMode::Reachable)?,
        })
    }

    pub fn product(&self) -> &Product {
        &self.product
    }

    /// `self ⊑ other`.
    pub fn is_simulated_by(&self, other: &ClosedLoop) -> Result<bool> {
        simulates(&self.product.automaton, &other.product.automaton, SimMode::Full)
    }
}

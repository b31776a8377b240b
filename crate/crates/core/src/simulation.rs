//! Simulation and Σ_uc-simulation: the matching operator `F_(G,R)`, its
//! greatest fixpoint `W^↑`, verification of candidate relations and the
//! projection `π(Φ)` from a closed loop back onto the plant.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::compose::Product;
use crate::error::Result;
use crate::relation::{check_dims, Relation};
use crate::verdict::Verdict;

/// Which moves of the left automaton must be matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SimMode {
    /// Every event (ordinary simulation).
    Full,
    /// Uncontrollable events only (Σ_uc-simulation).
    UcOnly,
}

impl SimMode {
    fn events(self, g: &Automaton) -> Vec<EventId> {
        match self {
            SimMode::Full => g.alphabet().ids().collect(),
            SimMode::UcOnly => g.alphabet().uncontrollable().collect(),
        }
    }
}

/// Why a relation is not a simulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SimulationViolation {
    /// No pair `(x₀, z₀)` with `z₀` initial.
    MissingInitial { x0: StateId },
    /// `(x, z)` is related, `x -event-> target`, but no matching `z` move
    /// lands back in the relation.
    Unmatched {
        x: StateId,
        z: StateId,
        event: EventId,
        target: StateId,
    },
}

impl SimulationViolation {
    pub fn describe(&self, g: &Automaton, r: &Automaton) -> String {
        match *self {
            SimulationViolation::MissingInitial { x0 } => format!(
                "initial state {} has no related initial state",
                g.state_name(x0)
            ),
            SimulationViolation::Unmatched {
                x,
                z,
                event,
                target,
            } => format!(
                "({},{}) cannot match {} -{}-> {}",
                g.state_name(x),
                r.state_name(z),
                g.state_name(x),
                g.alphabet().name(event),
                g.state_name(target)
            ),
        }
    }
}

/// First `x'` with `x -e-> x'` that `z` cannot match inside `w`.
#[inline]
fn unmatched_target(
    g: &Automaton,
    r: &Automaton,
    w: &Relation,
    x: StateId,
    z: StateId,
    e: EventId,
) -> Option<StateId> {
    let zs = r.successors(z, e);
    g.successors(x, e)
        .iter()
        .copied()
        .find(|&x1| !zs.iter().any(|&z1| w.contains(x1, z1)))
}

/// One application of the matching operator restricted to `mode`'s events.
pub fn refine_step(g: &Automaton, r: &Automaton, w: &Relation, mode: SimMode) -> Relation {
    let events = mode.events(g);
    let mut next = w.clone();
    for (x, z) in w.iter() {
        if events
            .iter()
            .any(|&e| unmatched_target(g, r, w, x, z, e).is_some())
        {
            next.remove(x, z);
        }
    }
    next
}

/// `F_(G,R)(W) = {(x,z) ∈ W : ∀σ ∈ Σ_uc ∀x -σ-> x' ∃z -σ-> z' with (x',z') ∈ W}`.
pub fn f_step(g: &Automaton, r: &Automaton, w: &Relation) -> Relation {
    refine_step(g, r, w, SimMode::UcOnly)
}

/// Greatest fixpoint of [`refine_step`], recomputing the whole relation
/// each round until nothing changes.
pub fn greatest_fixpoint(g: &Automaton, r: &Automaton, mode: SimMode) -> Relation {
    let mut w = Relation::full(g.num_states(), r.num_states());
    loop {
        let next = refine_step(g, r, &w, mode);
        if next == w {
            return w;
        }
        w = next;
    }
}

/// `W^↑_(G,R)`.
pub fn greatest_uc_fixpoint(g: &Automaton, r: &Automaton) -> Relation {
    greatest_fixpoint(g, r, SimMode::UcOnly)
}

/// Worklist variant of [`greatest_fixpoint`]: when a pair is removed only
/// the pairs that could have relied on it are rechecked.
pub fn greatest_fixpoint_worklist(g: &Automaton, r: &Automaton, mode: SimMode) -> Relation {
    let events = mode.events(g);
    let k = g.alphabet().len();
    let preds = |a: &Automaton| {
        let mut p = vec![Vec::new(); a.num_states() * k];
        for (s, e, t) in a.transitions() {
            p[t.index() * k + e.index()].push(s);
        }
        p
    };
    let (pg, pr) = (preds(g), preds(r));
    let mut w = Relation::full(g.num_states(), r.num_states());
    let mut queued = Relation::full(g.num_states(), r.num_states());
    let mut work: VecDeque<(StateId, StateId)> = w.iter().collect();
    while let Some((x, z)) = work.pop_front() {
        queued.remove(x, z);
        if !w.contains(x, z) {
            continue;
        }
        if events
            .iter()
            .all(|&e| unmatched_target(g, r, &w, x, z, e).is_none())
        {
            continue;
        }
        w.remove(x, z);
        for &e in &events {
            for &px in &pg[x.index() * k + e.index()] {
                for &pz in &pr[z.index() * k + e.index()] {
                    if w.contains(px, pz) && queued.insert(px, pz) {
                        work.push_back((px, pz));
                    }
                }
            }
        }
    }
    w
}

fn initial_violation(g: &Automaton, r: &Automaton, phi: &Relation) -> Option<StateId> {
    g.initial()
        .iter()
        .copied()
        .find(|&x0| !r.initial().iter().any(|&z0| phi.contains(x0, z0)))
}

/// The greatest (Σ_uc-)simulation from `g` to `r`, or `None` when some
/// initial plant state has no initial partner in it.
pub fn check_simulation(g: &Automaton, r: &Automaton, mode: SimMode) -> Result<Option<Relation>> {
    g.alphabet().ensure_same(r.alphabet())?;
    let w = greatest_fixpoint_worklist(g, r, mode);
    Ok(initial_violation(g, r, &w).is_none().then_some(w))
}

/// `G ⊑ R` (or `G ⊑_uc R`), without materialising the relation: each
/// plant state keeps a bit row of candidate partners, and a row shrinks to
/// the `e`-predecessors of a successor's row until no row changes.
pub fn simulates(g: &Automaton, r: &Automaton, mode: SimMode) -> Result<bool> {
    g.alphabet().ensure_same(r.alphabet())?;
    let events = mode.events(g);
    let words = r.num_states().div_ceil(64);
    let k = g.alphabet().len();
    let mut pred = vec![0u64; r.num_states() * k * words];
    for (z, e, z1) in r.transitions() {
        let row = (z1.index() * k + e.index()) * words;
        pred[row + z.index() / 64] |= 1 << (z.index() % 64);
    }
    let mut full = vec![u64::MAX; words];
    if r.num_states() % 64 != 0 {
        full[words - 1] = (1 << (r.num_states() % 64)) - 1;
    }
    let mut sim: Vec<u64> = full.repeat(g.num_states());
    let mut pre = vec![0u64; words];
    let mut changed = true;
    while changed {
        changed = false;
        for x in g.state_ids() {
            for &e in &events {
                for &x1 in g.successors(x, e) {
                    pre.iter_mut().for_each(|w| *w = 0);
                    let base = x1.index() * words;
                    for wi in 0..words {
                        let mut bits = sim[base + wi];
                        while bits != 0 {
                            let z1 = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            let row = (z1 * k + e.index()) * words;
                            for (p, q) in pre.iter_mut().zip(&pred[row..row + words]) {
                                *p |= q;
                            }
                        }
                    }
                    let row = &mut sim[x.index() * words..(x.index() + 1) * words];
                    for (s, p) in row.iter_mut().zip(&pre) {
                        let next = *s & p;
                        changed |= next != *s;
                        *s = next;
                    }
                }
            }
        }
    }
    Ok(g.initial().iter().all(|x0| {
        r.initial()
            .iter()
            .any(|z0| sim[x0.index() * words + z0.index() / 64] >> (z0.index() % 64) & 1 == 1)
    }))
}

/// The transfer condition alone: the lexicographically least related pair
/// with an unmatched move, if any.
pub fn transfer_violation(
    phi: &Relation,
    g: &Automaton,
    r: &Automaton,
    mode: SimMode,
) -> Option<SimulationViolation> {
    let events = mode.events(g);
    phi.iter().find_map(|(x, z)| {
        events.iter().find_map(|&e| {
            unmatched_target(g, r, phi, x, z, e).map(|target| SimulationViolation::Unmatched {
                x,
                z,
                event: e,
                target,
            })
        })
    })
}

/// Checks both conditions of a (Σ_uc-)simulation directly.
pub fn is_simulation_relation(
    phi: &Relation,
    g: &Automaton,
    r: &Automaton,
    mode: SimMode,
) -> Result<Verdict<SimulationViolation>> {
    g.alphabet().ensure_same(r.alphabet())?;
    check_dims(phi, g, r)?;
    if let Some(x0) = initial_violation(g, r, phi) {
        return Ok(Verdict::Fails(SimulationViolation::MissingInitial { x0 }));
    }
    Ok(transfer_violation(phi, g, r, mode).into())
}

/// `π(Φ) = {(x,z) : ((y,x),z) ∈ Φ, (y,x) reachable in S||G}` where `Φ`
/// relates states of `product` to states of a specification.
pub fn project_pi(phi: &Relation, product: &Product, plant: &Automaton) -> Result<Relation> {
    let (left, right) = phi.dims();
    if left != product.automaton.num_states() {
        return Err(crate::error::Error::RelationShape(format!(
            "relation has {left} left states, product has {}",
            product.automaton.num_states()
        )));
    }
    let reach = product.automaton.reachable();
    let mut out = Relation::empty(plant.num_states(), right);
    for (p, z) in phi.iter() {
        if reach.contains(p) {
            let (_, x) = product.components(p);
            out.insert(x, z);
        }
    }
    Ok(out)
}

/// Left projection of any pair collection.
pub fn pi_g(pairs: impl IntoIterator<Item = (StateId, StateId)>) -> BTreeSet<StateId> {
    pairs.into_iter().map(|(x, _)| x).collect()
}

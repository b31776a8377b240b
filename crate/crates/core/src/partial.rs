//! Supervisors under partial observation: triple states `(W₁, γ, W₂)`
//! where `γ` is a set of unobservable events the supervisor lets through
//! without changing state, and `W₂` closes `W₁` under `γ`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::alphabet::{Alphabet, EventId};
use crate::automaton::{Automaton, StateId};
use crate::compose::{compose, ProductMode};
use crate::error::{Error, Guard, Result};
use crate::synthesis::{
    admissibility_witness, antichain, first_uc_violation, AdmissibilityWitness, ConstructionTag,
    Context, InitialStyle, PowerState, Supervisor,
};

/// A state of the partial-observation construction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleState {
    pub w1: PowerState,
    /// Sorted, duplicate-free.
    pub gamma: Vec<EventId>,
    pub w2: PowerState,
}

impl TripleState {
    /// `({(x,z),...},{τ,...},{(x,z),...})`
    pub fn render(&self, g: &Automaton, r: &Automaton) -> String {
        let gamma: Vec<&str> = self.gamma.iter().map(|&e| g.alphabet().name(e)).collect();
        format!(
            "({},{{{}}},{})",
            self.w1.render(g, r),
            gamma.join(","),
            self.w2.render(g, r)
        )
    }

    pub fn to_doc(&self, g: &Automaton, r: &Automaton) -> TripleDoc {
        TripleDoc {
            w1: self.w1.to_names(g, r),
            gamma: self
                .gamma
                .iter()
                .map(|&e| g.alphabet().name(e).to_string())
                .collect(),
            w2: self.w2.to_names(g, r),
        }
    }
}

/// Name-level form of a [`TripleState`] for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleDoc {
    pub w1: Vec<(String, String)>,
    pub gamma: Vec<String>,
    pub w2: Vec<(String, String)>,
}

/// `Γ_uo`: every `γ ⊆ Σ_uo` containing `Σ_uc ∩ Σ_uo`, ordered by the sorted
/// event lists.
pub fn gamma_candidates(alphabet: &Alphabet) -> Vec<Vec<EventId>> {
    let base: Vec<EventId> = alphabet
        .unobservable()
        .filter(|&e| alphabet.is_uncontrollable(e))
        .collect();
    let free: Vec<EventId> = alphabet
        .unobservable()
        .filter(|&e| alphabet.is_controllable(e))
        .collect();
    let mut out: Vec<Vec<EventId>> = (0..1usize << free.len())
        .map(|mask| {
            let mut g = base.clone();
            g.extend(
                free.iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e),
            );
            g.sort();
            g
        })
        .collect();
    out.sort();
    out
}

/// First `(x', allowed z')` obligation of `w` under `gamma` that `w` does
/// not meet yet.
fn open_obligation(
    ctx: &Context<'_>,
    w: &PowerState,
    gamma: &[EventId],
) -> Option<(StateId, Vec<StateId>)> {
    let (g, r) = (ctx.plant(), ctx.spec());
    for (x, z) in w.iter() {
        for &e in gamma {
            let zs = r.successors(z, e);
            for &x1 in g.successors(x, e) {
                if !zs.iter().any(|&z1| w.contains((x1, z1))) {
                    let allowed = zs
                        .iter()
                        .copied()
                        .filter(|&z1| ctx.winning().contains(x1, z1))
                        .collect();
                    return Some((x1, allowed));
                }
            }
        }
    }
    None
}

/// Whether `w` meets every `gamma`-obligation of its own pairs.
pub fn is_gamma_closed(ctx: &Context<'_>, w: &PowerState, gamma: &[EventId]) -> bool {
    open_obligation(ctx, w, gamma).is_none()
}

/// The minimal elements of `U(W₁, γ)`, canonical order. Empty when no
/// `γ`-closed superset of `W₁` exists inside `W^↑`.
pub fn minimal_u(ctx: &Context<'_>, w1: &PowerState, gamma: &[EventId]) -> Result<Vec<PowerState>> {
    if !ctx.within_winning(w1) {
        return Ok(Vec::new());
    }
    let limit = ctx.limits().max_covers;
    let mut seen: HashSet<PowerState> = HashSet::new();
    let mut closed = Vec::new();
    let mut stack = vec![w1.clone()];
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        if seen.len() > limit {
            return Err(Error::Guard {
                guard: Guard::Covers {
                    candidates: ctx.winning().len(),
                    limit,
                },
                at: Some(ctx.render(w1)),
            });
        }
        match open_obligation(ctx, &w, gamma) {
            None => closed.push(w),
            Some((x1, allowed)) => {
                for &z1 in allowed.iter().rev() {
                    stack.push(w.union(&PowerState::from_pairs([(x1, z1)])));
                }
            }
        }
    }
    let mut out = antichain(closed);
    out.sort();
    Ok(out)
}

/// Every controllable event of `gamma` is enabled by some plant state of `w2`.
fn controllable_gamma_enabled(ctx: &Context<'_>, gamma: &[EventId], w2: &PowerState) -> bool {
    let g = ctx.plant();
    gamma
        .iter()
        .filter(|&&e| g.alphabet().is_controllable(e))
        .all(|&e| w2.iter().any(|(x, _)| g.enables(x, e)))
}

/// Membership in `Y^⇑`.
pub fn is_valid_triple(ctx: &Context<'_>, y: &TripleState) -> Result<bool> {
    if y.w1.is_empty() || !gamma_candidates(ctx.plant().alphabet()).contains(&y.gamma) {
        return Ok(false);
    }
    Ok(minimal_u(ctx, &y.w1, &y.gamma)?.contains(&y.w2)
        && controllable_gamma_enabled(ctx, &y.gamma, &y.w2))
}

/// All `(γ, W₂)` making `(W₁, γ, W₂)` a member of `Y^⇑`, canonical order.
pub fn completions(ctx: &Context<'_>, w1: &PowerState) -> Result<Vec<TripleState>> {
    let mut out = Vec::new();
    if w1.is_empty() {
        return Ok(out);
    }
    for gamma in gamma_candidates(ctx.plant().alphabet()) {
        for w2 in minimal_u(ctx, w1, &gamma)? {
            if controllable_gamma_enabled(ctx, &gamma, &w2) {
                out.push(TripleState {
                    w1: w1.clone(),
                    gamma: gamma.clone(),
                    w2,
                });
            }
        }
    }
    Ok(out)
}

/// `Σ(y)`: observable events enabled somewhere in `W₂` whose every move out
/// of `W₂` is matchable inside `W^↑`.
pub fn sigma_y(ctx: &Context<'_>, y: &TripleState) -> Vec<EventId> {
    ctx.plant()
        .alphabet()
        .observable()
        .filter(|&e| ctx.clause_a(&y.w2, e) && ctx.clause_b_simplified(&y.w2, e))
        .collect()
}

/// Initial triples: completions of every initial power state.
pub fn initial_triples(ctx: &Context<'_>) -> Result<Vec<TripleState>> {
    let mut out = Vec::new();
    for w0 in ctx.initial_power_states(InitialStyle::Takai)? {
        out.extend(completions(ctx, &w0)?);
    }
    Ok(out)
}

/// Successors of `y` under `e`: a self-loop for `e ∈ γ`, otherwise every
/// completion of every minimal `W₁'` of `M(W₂, e)` when `e ∈ Σ(y)`.
pub fn triple_successors(ctx: &Context<'_>, y: &TripleState, e: EventId) -> Result<Vec<TripleState>> {
    if y.gamma.contains(&e) {
        return Ok(vec![y.clone()]);
    }
    if !ctx.plant().alphabet().is_observable(e)
        || !ctx.clause_a(&y.w2, e)
        || !ctx.clause_b_simplified(&y.w2, e)
    {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for w1 in ctx.minimal_covers(&y.w2, e)? {
        out.extend(completions(ctx, &w1)?);
    }
    Ok(out)
}

/// Breadth-first construction of the reachable part of the
/// partial-observation supervisor. Requires `G ⊑_uc R`.
pub fn build_partial(ctx: &Context<'_>) -> Result<Supervisor<TripleState>> {
    ctx.ensure_uc_simulated()?;
    let alphabet = ctx.plant().alphabet();
    let limit = ctx.limits().max_states;

    let mut index: HashMap<TripleState, usize> = HashMap::new();
    let mut states: Vec<TripleState> = Vec::new();
    let mut queue = VecDeque::new();
    let mut edges = Vec::new();
    let mut initial = Vec::new();

    for y0 in initial_triples(ctx)? {
        let id = states.len();
        index.insert(y0.clone(), id);
        states.push(y0);
        queue.push_back(id);
        initial.push(id);
    }
    if initial.is_empty() {
        return Err(Error::EmptyInitial);
    }

    while let Some(i) = queue.pop_front() {
        let y = states[i].clone();
        for e in alphabet.ids() {
            for target in triple_successors(ctx, &y, e)? {
                let j = match index.get(&target) {
                    Some(&j) => j,
                    None => {
                        if states.len() >= limit {
                            return Err(Error::Guard {
                                guard: Guard::ReachableStates { limit },
                                at: Some(y.render(ctx.plant(), ctx.spec())),
                            });
                        }
                        let j = states.len();
                        index.insert(target.clone(), j);
                        states.push(target);
                        queue.push_back(j);
                        j
                    }
                };
                edges.push((i, e, j));
            }
        }
    }

    Supervisor::assemble(
        alphabet.clone(),
        states,
        |y| y.render(ctx.plant(), ctx.spec()),
        initial,
        edges,
        ConstructionTag::Partial,
    )
}

/// Why a supervisor is not admissible under partial observation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PartialWitness {
    /// An uncontrollable plant move the supervisor blocks.
    Uncontrollable(AdmissibilityWitness),
    /// An unobservable event moving the supervisor to another state.
    Unobservable {
        supervisor_state: String,
        plant_state: String,
        event: String,
        target: String,
    },
}

/// Σ_uc-admissibility plus: at every reachable `(y, x)` of `S||G`, every
/// unobservable `y -σ-> y₁` has `y₁ = y`.
pub fn is_admissible_partial(
    s: &Automaton,
    g: &Automaton,
) -> Result<crate::verdict::Verdict<PartialWitness>> {
    let product = compose(s, g, ProductMode::Reachable)?;
    if let Some((q, e)) = first_uc_violation(&product, g) {
        return Ok(Some(PartialWitness::Uncontrollable(admissibility_witness(
            &product, s, g, q, e,
        )))
        .into());
    }
    let p = &product.automaton;
    let reach = p.reachable();
    for q in p.state_ids().filter(|&q| reach.contains(q)) {
        let (y, x) = product.components(q);
        for e in s.alphabet().unobservable() {
            if let Some(&y1) = s.successors(y, e).iter().find(|&&y1| y1 != y) {
                return Ok(Some(PartialWitness::Unobservable {
                    supervisor_state: s.state_name(y).to_string(),
                    plant_state: g.state_name(x).to_string(),
                    event: s.alphabet().name(e).to_string(),
                    target: s.state_name(y1).to_string(),
                })
                .into());
            }
        }
    }
    Ok(None.into())
}

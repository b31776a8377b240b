use std::collections::{HashMap, VecDeque};

use crate::automaton::Automaton;
use crate::error::{Error, Guard, Result};
use crate::synthesis::{ConstructionTag, Context, InitialStyle, PowerState, Supervisor};

/// Which successors an enabled `(W, σ)` receives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Every minimal member of `N(W, σ)`.
    Takai,
    /// Every member of `N(W, σ)`.
    Variant1,
    /// Minimal members, plus members with no minimal member below them.
    Variant2,
}

impl Variant {
    pub fn tag(self) -> ConstructionTag {
        match self {
            Variant::Takai => ConstructionTag::Takai,
            Variant::Variant1 => ConstructionTag::Variant1,
            Variant::Variant2 => ConstructionTag::Variant2,
        }
    }

    pub fn all() -> [Variant; 3] {
        [Variant::Takai, Variant::Variant1, Variant::Variant2]
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "takai" => Ok(Variant::Takai),
            "variant1" => Ok(Variant::Variant1),
            "variant2" => Ok(Variant::Variant2),
            other => Err(format!("unknown variant `{other}` (takai, variant1, variant2)")),
        }
    }
}

fn successors(
    ctx: &Context<'_>,
    w: &PowerState,
    e: crate::alphabet::EventId,
    variant: Variant,
) -> Result<Vec<PowerState>> {
    match variant {
        Variant::Takai => ctx.minimal_covers(w, e),
        Variant::Variant1 => ctx.n_set_members(w, e),
        // Members with no minimal member below them would be added too,
        // but `N(W, σ)` is a finite family, so every member lies above a
        // minimal one and that extra set is always empty.
        Variant::Variant2 => ctx.minimal_covers(w, e),
    }
}

/// Breadth-first construction of the reachable part of the powerset
/// supervisor. Requires `G ⊑_uc R`.
pub fn build(ctx: &Context<'_>, variant: Variant) -> Result<Supervisor<PowerState>> {
    ctx.ensure_uc_simulated()?;
    let alphabet = ctx.plant().alphabet();
    let limit = ctx.limits().max_states;
    let initial_states = ctx.initial_power_states(InitialStyle::Takai)?;

    let mut index: HashMap<PowerState, usize> = HashMap::new();
    let mut states: Vec<PowerState> = Vec::new();
    let mut queue = VecDeque::new();
    let mut edges = Vec::new();

    let mut initial = Vec::new();
    for w0 in initial_states {
        let id = states.len();
        index.insert(w0.clone(), id);
        states.push(w0);
        queue.push_back(id);
        initial.push(id);
    }

    while let Some(i) = queue.pop_front() {
        let w = states[i].clone();
        for e in alphabet.ids() {
            if !ctx.enabled(&w, e) {
                continue;
            }
            for target in successors(ctx, &w, e, variant)? {
                let j = match index.get(&target) {
                    Some(&j) => j,
                    None => {
                        if states.len() >= limit {
                            return Err(Error::Guard {
                                guard: Guard::ReachableStates { limit },
                                at: Some(ctx.render(&w)),
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
        |w| ctx.render(w),
        initial,
        edges,
        variant.tag(),
    )
}

/// Keeps `W -σ-> W'` iff `W'` is not a deadlock, or every `σ`-successor of
/// `W` is a deadlock. Deadlocks are judged in the input automaton; the
/// state set is unchanged.
pub fn prune_deadlocks<P: Clone + Eq + std::hash::Hash>(sup: &Supervisor<P>) -> Supervisor<P> {
    let a = sup.automaton();
    let mut edges = Vec::new();
    for s in a.state_ids() {
        for e in a.alphabet().ids() {
            let succ = a.successors(s, e);
            let all_dead = succ.iter().all(|&t| a.is_deadlock(t));
            for &t in succ {
                if !a.is_deadlock(t) || all_dead {
                    edges.push((s.index(), e, t.index()));
                }
            }
        }
    }
    let pruned = Automaton::from_indexed(
        a.alphabet().clone(),
        a.state_names().to_vec(),
        a.initial().iter().map(|x| x.index()),
        edges,
    )
    .expect("pruning keeps a valid automaton");
    sup.replace_automaton(pruned, ConstructionTag::Pruned(Box::new(sup.tag().clone())))
}

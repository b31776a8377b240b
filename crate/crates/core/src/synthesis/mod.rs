//! Powerset supervisor constructions over subsets of `W^↑`.
//!
//! A [`Context`] fixes a plant `G`, a specification `R` and their greatest
//! Σ_uc fixpoint `W^↑`. Supervisor states are [`PowerState`]s, i.e. subsets
//! of `W^↑`. From a state `W` an event `σ` is enabled when
//!
//! * (a) some `(x,z) ∈ W` has `x -σ->`, and
//! * (b) `σ` is uncontrollable, or every `σ`-move of every `(x,z) ∈ W` can
//!   be matched by `z` inside `W^↑`,
//!
//! and the possible targets come from the covering family `N(W,σ)`.

mod build;
mod control;
mod cover;
mod power_state;
mod supervisor;

pub use build::{build, prune_deadlocks, Variant};
pub use control::{in_sp, is_admissible, more_permissive, AdmissibilityWitness, ClosedLoop};
pub(crate) use control::{first_uc_violation, witness as admissibility_witness};
pub use cover::{CoverFamily, Obligation};
pub use power_state::{antichain, PowerState};
pub use supervisor::{ConstructionTag, Supervisor};

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Guard, Result};
use crate::relation::Relation;
use crate::simulation::greatest_uc_fixpoint;

/// Explosion guards for the powerset constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Reachable supervisor states per build.
    pub max_states: usize,
    /// Covers enumerated per `(W, σ)`.
    pub max_covers: usize,
    /// Initial choice functions.
    pub max_choices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 10_000,
            max_covers: 4_096,
            max_choices: 4_096,
        }
    }
}

/// How initial supervisor states are formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitialStyle {
    /// Every `W₀ ⊆ W^↑ ∩ (X₀×Z₀)` with `|W₀| = |X₀|` covering `X₀`.
    Takai,
    /// Every choice of exactly one `z₀` per `x₀`.
    Singleton,
}

/// Plant, specification and `W^↑`.
#[derive(Clone, Debug)]
pub struct Context<'a> {
    plant: &'a Automaton,
    spec: &'a Automaton,
    winning: Relation,
    limits: Limits,
}

impl<'a> Context<'a> {
    pub fn new(plant: &'a Automaton, spec: &'a Automaton) -> Result<Self> {
        Self::with_limits(plant, spec, Limits::default())
    }

    pub fn with_limits(plant: &'a Automaton, spec: &'a Automaton, limits: Limits) -> Result<Self> {
        plant.alphabet().ensure_same(spec.alphabet())?;
        Ok(Context {
            plant,
            spec,
            winning: greatest_uc_fixpoint(plant, spec),
            limits,
        })
    }

    pub fn plant(&self) -> &'a Automaton {
        self.plant
    }

    pub fn spec(&self) -> &'a Automaton {
        self.spec
    }

    /// `W^↑_(G,R)`.
    pub fn winning(&self) -> &Relation {
        &self.winning
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// First initial plant state without an initial partner in `W^↑`.
    fn uncovered_initial(&self) -> Option<StateId> {
        self.plant.initial().iter().copied().find(|&x0| {
            !self
                .spec
                .initial()
                .iter()
                .any(|&z0| self.winning.contains(x0, z0))
        })
    }

    /// `G ⊑_uc R`, decided through `W^↑`.
    pub fn is_uc_simulated(&self) -> bool {
        self.uncovered_initial().is_none()
    }

    pub fn ensure_uc_simulated(&self) -> Result<()> {
        match self.uncovered_initial() {
            None => Ok(()),
            Some(x0) => Err(Error::NotUcSimulated(self.plant.state_name(x0).to_string())),
        }
    }

    pub fn within_winning(&self, w: &PowerState) -> bool {
        w.iter().all(|(x, z)| self.winning.contains(x, z))
    }

    pub fn render(&self, w: &PowerState) -> String {
        w.render(self.plant, self.spec)
    }

    pub fn parse_power_state(&self, text: &str) -> Result<PowerState> {
        PowerState::parse(text, self.plant, self.spec)
    }

    /// Obligations of `W` under `σ`.
    pub fn cover_family(&self, w: &PowerState, e: EventId) -> CoverFamily {
        let mut obligations = Vec::new();
        for (x, z) in w.iter() {
            let zs = self.spec.successors(z, e);
            for &x1 in self.plant.successors(x, e) {
                let allowed = zs
                    .iter()
                    .copied()
                    .filter(|&z1| self.winning.contains(x1, z1))
                    .collect();
                obligations.push(Obligation {
                    source: (x, z),
                    target: x1,
                    allowed,
                });
            }
        }
        CoverFamily::new(obligations)
    }

    /// Clause (a): some `(x,z) ∈ W` has `x -σ->`.
    pub fn clause_a(&self, w: &PowerState, e: EventId) -> bool {
        w.iter().any(|(x, _)| self.plant.enables(x, e))
    }

    /// Clause (b): `σ` uncontrollable, or every `σ`-move out of `W` is
    /// matchable inside `W^↑`.
    pub fn clause_b(&self, w: &PowerState, e: EventId) -> bool {
        self.plant.alphabet().is_uncontrollable(e) || self.clause_b_simplified(w, e)
    }

    /// Clause (b) without the uncontrollable disjunct; equivalent to
    /// [`clause_b`](Self::clause_b) whenever `G ⊑_uc R`.
    pub fn clause_b_simplified(&self, w: &PowerState, e: EventId) -> bool {
        w.iter().all(|(x, z)| {
            let zs = self.spec.successors(z, e);
            self.plant
                .successors(x, e)
                .iter()
                .all(|&x1| zs.iter().any(|&z1| self.winning.contains(x1, z1)))
        })
    }

    /// Whether `σ` is enabled at `W` in the powerset constructions.
    pub fn enabled(&self, w: &PowerState, e: EventId) -> bool {
        self.clause_a(w, e) && self.clause_b(w, e)
    }

    fn guard(&self, guard: Guard, w: &PowerState) -> Error {
        Error::Guard {
            guard,
            at: Some(self.render(w)),
        }
    }

    /// All members of `N(W, σ)`, canonical order.
    pub fn n_set_members(&self, w: &PowerState, e: EventId) -> Result<Vec<PowerState>> {
        self.cover_family(w, e)
            .members(self.limits.max_covers)
            .map_err(|g| self.guard(g, w))
    }

    /// The ⊆-minimal members of `N(W, σ)`, canonical order.
    pub fn minimal_covers(&self, w: &PowerState, e: EventId) -> Result<Vec<PowerState>> {
        self.cover_family(w, e)
            .minimal(self.limits.max_covers)
            .map_err(|g| self.guard(g, w))
    }

    /// For each initial plant state, the initial spec states paired with it
    /// in `W^↑`.
    fn initial_options(&self) -> Vec<(StateId, Vec<StateId>)> {
        self.plant
            .initial()
            .iter()
            .map(|&x0| {
                let zs = self
                    .spec
                    .initial()
                    .iter()
                    .copied()
                    .filter(|&z0| self.winning.contains(x0, z0))
                    .collect();
                (x0, zs)
            })
            .collect()
    }

    /// Initial supervisor states, canonical order. For finite `X₀` both
    /// styles give the same family; [`InitialStyle::Takai`] checks that.
    pub fn initial_power_states(&self, style: InitialStyle) -> Result<Vec<PowerState>> {
        self.ensure_uc_simulated()?;
        let singleton = self.choice_functions()?;
        match style {
            InitialStyle::Singleton => Ok(singleton),
            InitialStyle::Takai => {
                let takai = self.cardinality_initials()?;
                assert_eq!(
                    takai, singleton,
                    "initial families by cardinality and by choice function disagree"
                );
                Ok(takai)
            }
        }
    }

    /// Every `W₀` containing exactly one `(x₀, z₀)` per `x₀ ∈ X₀`.
    pub fn choice_functions(&self) -> Result<Vec<PowerState>> {
        let options = self.initial_options();
        let total = options
            .iter()
            .try_fold(1usize, |acc, (_, zs)| acc.checked_mul(zs.len()));
        if total.map_or(true, |t| t > self.limits.max_choices) {
            return Err(Error::Guard {
                guard: Guard::InitialChoices {
                    limit: self.limits.max_choices,
                },
                at: None,
            });
        }
        let mut out = vec![Vec::new()];
        for (x0, zs) in &options {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<(StateId, StateId)>| {
                    zs.iter().map(move |&z0| {
                        let mut v = prefix.clone();
                        v.push((*x0, z0));
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<PowerState> = out.into_iter().map(PowerState::from_pairs).collect();
        out.sort();
        Ok(out)
    }

    /// `{W₀ ⊆ W^↑ ∩ (X₀×Z₀) : |W₀| = |X₀|, ∀x₀ ∃z₀ (x₀,z₀) ∈ W₀}` by
    /// enumerating `|X₀|`-subsets.
    fn cardinality_initials(&self) -> Result<Vec<PowerState>> {
        let pool: Vec<(StateId, StateId)> = self
            .initial_options()
            .into_iter()
            .flat_map(|(x0, zs)| zs.into_iter().map(move |z0| (x0, z0)))
            .collect();
        let k = self.plant.initial().len();
        if binomial(pool.len(), k).map_or(true, |b| b > self.limits.max_choices.saturating_mul(64)) {
            return Err(Error::Guard {
                guard: Guard::InitialChoices {
                    limit: self.limits.max_choices,
                },
                at: None,
            });
        }
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(k);
        subsets_of_size(&pool, k, 0, &mut pick, &mut |set| {
            let covered = self
                .plant
                .initial()
                .iter()
                .all(|&x0| set.iter().any(|&(x, _)| x == x0));
            if covered {
                out.push(PowerState::from_pairs(set.iter().copied()));
            }
        });
        out.sort();
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> Option<usize> {
    if k > n {
        return Some(0);
    }
    let mut acc: usize = 1;
    for i in 0..k.min(n - k) {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

fn subsets_of_size<T: Copy>(
    pool: &[T],
    k: usize,
    start: usize,
    pick: &mut Vec<T>,
    f: &mut impl FnMut(&[T]),
) {
    if pick.len() == k {
        f(pick);
        return;
    }
    for i in start..pool.len() {
        if pool.len() - i < k - pick.len() {
            break;
        }
        pick.push(pool[i]);
        subsets_of_size(pool, k, i + 1, pick, f);
        pick.pop();
    }
}

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::alphabet::{Alphabet, EventId};
use crate::automaton::{Automaton, StateId};
use crate::error::Result;
use crate::synthesis::PowerState;

/// Which construction produced a supervisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionTag {
    Takai,
    Variant1,
    Variant2,
    Partial,
    User,
    /// Deadlock-pruned version of another construction.
    Pruned(Box<ConstructionTag>),
}

impl fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionTag::Takai => f.write_str("takai"),
            ConstructionTag::Variant1 => f.write_str("variant1"),
            ConstructionTag::Variant2 => f.write_str("variant2"),
            ConstructionTag::Partial => f.write_str("partial"),
            ConstructionTag::User => f.write_str("user"),
            ConstructionTag::Pruned(inner) => write!(f, "tilde-of-{inner}"),
        }
    }
}

impl Serialize for ConstructionTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An automaton whose states carry payloads (pair sets, or triples in the
/// partial-observation construction). `payloads[i]` belongs to state `i`.
#[derive(Clone, Debug)]
pub struct Supervisor<P> {
    automaton: Automaton,
    payloads: Vec<P>,
    tag: ConstructionTag,
}

impl<P: Clone + Eq + Hash> Supervisor<P> {
    /// Assembles a supervisor from discovered payloads. `render` names the
    /// states; edges and initial states refer to indices into `states`.
    pub(crate) fn assemble(
        alphabet: Alphabet,
        states: Vec<P>,
        render: impl Fn(&P) -> String,
        initial: Vec<usize>,
        edges: Vec<(usize, EventId, usize)>,
        tag: ConstructionTag,
    ) -> Result<Self> {
        let names = states.iter().map(&render).collect();
        let (automaton, remap) =
            Automaton::from_indexed_with_map(alphabet, names, initial, edges)?;
        let mut slots: Vec<Option<P>> = vec![None; states.len()];
        for (old, p) in states.into_iter().enumerate() {
            slots[remap[old].index()] = Some(p);
        }
        Ok(Supervisor {
            automaton,
            payloads: slots.into_iter().map(Option::unwrap).collect(),
            tag,
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn into_automaton(self) -> Automaton {
        self.automaton
    }

    pub fn payload(&self, s: StateId) -> &P {
        &self.payloads[s.index()]
    }

    pub fn payloads(&self) -> &[P] {
        &self.payloads
    }

    pub fn tag(&self) -> &ConstructionTag {
        &self.tag
    }

    pub fn with_tag(mut self, tag: ConstructionTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn find(&self, payload: &P) -> Option<StateId> {
        self.payloads
            .iter()
            .position(|p| p == payload)
            .map(StateId::new)
    }

    pub fn payload_index(&self) -> HashMap<&P, StateId> {
        self.payloads
            .iter()
            .enumerate()
            .map(|(i, p)| (p, StateId::new(i)))
            .collect()
    }

    /// Edges as payload triples, sorted by state id.
    pub fn edges(&self) -> impl Iterator<Item = (&P, EventId, &P)> + '_ {
        self.automaton
            .transitions()
            .map(|(s, e, t)| (self.payload(s), e, self.payload(t)))
    }

    pub(crate) fn replace_automaton(&self, automaton: Automaton, tag: ConstructionTag) -> Self {
        debug_assert_eq!(automaton.num_states(), self.automaton.num_states());
        Supervisor {
            automaton,
            payloads: self.payloads.clone(),
            tag,
        }
    }
}

impl Supervisor<PowerState> {
    /// Reads pair-set payloads from state names of the form
    /// `{(x,z),...}`. Fails if a name is not such a set over `X × Z`.
    pub fn from_automaton(automaton: Automaton, plant: &Automaton, spec: &Automaton) -> Result<Self> {
        let payloads = automaton
            .state_names()
            .iter()
            .map(|n| PowerState::parse(n, plant, spec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Supervisor {
            automaton,
            payloads,
            tag: ConstructionTag::User,
        })
    }
}

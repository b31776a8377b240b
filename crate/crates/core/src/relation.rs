//! Binary relations between the states of two automata.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};

/// A set of `(x, z)` pairs over `X × Z`, stored as a dense bit matrix.
/// Iteration yields pairs in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    left: usize,
    right: usize,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(left: usize, right: usize) -> Self {
        Relation {
            left,
            right,
            bits: vec![false; left * right],
        }
    }

    pub fn full(left: usize, right: usize) -> Self {
        Relation {
            left,
            right,
            bits: vec![true; left * right],
        }
    }

    pub fn between(g: &Automaton, r: &Automaton) -> Self {
        Self::empty(g.num_states(), r.num_states())
    }

    pub fn from_pairs(
        left: usize,
        right: usize,
        pairs: impl IntoIterator<Item = (StateId, StateId)>,
    ) -> Self {
        let mut rel = Self::empty(left, right);
        for (x, z) in pairs {
            rel.insert(x, z);
        }
        rel
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.left, self.right)
    }

    pub fn contains(&self, x: StateId, z: StateId) -> bool {
        self.bits[x.index() * self.right + z.index()]
    }

    pub fn insert(&mut self, x: StateId, z: StateId) -> bool {
        let slot = &mut self.bits[x.index() * self.right + z.index()];
        !std::mem::replace(slot, true)
    }

    pub fn remove(&mut self, x: StateId, z: StateId) -> bool {
        let slot = &mut self.bits[x.index() * self.right + z.index()];
        std::mem::replace(slot, false)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        let right = self.right;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| (StateId::new(i / right), StateId::new(i % right)))
    }

    /// Partners of `x`, ascending.
    pub fn image(&self, x: StateId) -> impl Iterator<Item = StateId> + '_ {
        let row = &self.bits[x.index() * self.right..(x.index() + 1) * self.right];
        row.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| StateId::new(i))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.dims() == other.dims()
            && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }

    /// Left projection `π_G(W)`.
    pub fn left_projection(&self) -> BTreeSet<StateId> {
        self.iter().map(|(x, _)| x).collect()
    }

    pub fn to_doc(&self, g: &Automaton, r: &Automaton, left: &str, right: &str) -> RelationDoc {
        RelationDoc {
            left: left.to_string(),
            right: right.to_string(),
            pairs: self
                .iter()
                .map(|(x, z)| (g.state_name(x).to_string(), r.state_name(z).to_string()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &RelationDoc, g: &Automaton, r: &Automaton) -> Result<Self> {
        let mut rel = Relation::between(g, r);
        for (x, z) in &doc.pairs {
            rel.insert(g.state(x)?, r.state(z)?);
        }
        Ok(rel)
    }

    pub fn render(&self, g: &Automaton, r: &Automaton) -> String {
        let items: Vec<String> = self
            .iter()
            .map(|(x, z)| format!("({},{})", g.state_name(x), r.state_name(z)))
            .collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.iter().map(|(x, z)| (x.index(), z.index())))
            .finish()
    }
}

/// JSON form `{left, right, pairs}` with pairs sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub left: String,
    pub right: String,
    pub pairs: Vec<(String, String)>,
}

pub(crate) fn check_dims(rel: &Relation, g: &Automaton, r: &Automaton) -> Result<()> {
    if rel.dims() != (g.num_states(), r.num_states()) {
        return Err(Error::RelationShape(format!(
            "relation is {:?}, automata are {}x{}",
            rel.dims(),
            g.num_states(),
            r.num_states()
        )));
    }
    Ok(())
}

use std::fmt;

use serde::Serialize;

use crate::alphabet::split_top_level;
use crate::automaton::{Automaton, StateId};
use crate::error::{Error, Result};

/// A finite set of `(x, z)` pairs, kept sorted. Two power states are the
/// same state iff their canonical forms agree.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PowerState(Vec<(StateId, StateId)>);

impl PowerState {
    pub fn empty() -> Self {
        PowerState(Vec::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Self {
        let mut v: Vec<_> = pairs.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        PowerState(v)
    }

    pub(crate) fn from_sorted(v: Vec<(StateId, StateId)>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        PowerState(v)
    }

    pub fn pairs(&self) -> &[(StateId, StateId)] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, pair: (StateId, StateId)) -> bool {
        self.0.binary_search(&pair).is_ok()
    }

    pub fn is_subset(&self, other: &PowerState) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for p in &self.0 {
            for q in it.by_ref() {
                match q.cmp(p) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &PowerState) -> PowerState {
        PowerState::from_pairs(self.iter().chain(other.iter()))
    }

    /// `{(x1,z1),(x2,z3)}`; `{}` for the empty set.
    pub fn render(&self, g: &Automaton, r: &Automaton) -> String {
        let mut s = String::from("{");
        for (i, &(x, z)) in self.0.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('(');
            s.push_str(g.state_name(x));
            s.push(',');
            s.push_str(r.state_name(z));
            s.push(')');
        }
        s.push('}');
        s
    }

    /// Inverse of [`render`](Self::render).
    pub fn parse(text: &str, g: &Automaton, r: &Automaton) -> Result<PowerState> {
        let bad = |reason: &str| Error::Payload {
            state: text.to_string(),
            reason: reason.to_string(),
        };
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| bad("expected `{(x,z),...}`"))?;
        let mut pairs = Vec::new();
        if !inner.trim().is_empty() {
            for item in split_top_level(inner) {
                let body = item
                    .trim()
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| bad("expected `(x,z)`"))?;
                let parts = split_top_level(body);
                let [x, z] = parts[..] else {
                    return Err(bad("expected exactly two components"));
                };
                let x = g
                    .find_state(x.trim())
                    .ok_or_else(|| bad(&format!("`{}` is not a plant state", x.trim())))?;
                let z = r
                    .find_state(z.trim())
                    .ok_or_else(|| bad(&format!("`{}` is not a spec state", z.trim())))?;
                pairs.push((x, z));
            }
        }
        Ok(PowerState::from_pairs(pairs))
    }

    pub fn to_names(&self, g: &Automaton, r: &Automaton) -> Vec<(String, String)> {
        self.iter()
            .map(|(x, z)| (g.state_name(x).to_string(), r.state_name(z).to_string()))
            .collect()
    }
}

impl fmt::Debug for PowerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.0.iter().map(|(x, z)| (x.index(), z.index())))
            .finish()
    }
}

impl Serialize for PowerState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (x, z) in &self.0 {
            seq.serialize_element(&(x.index(), z.index()))?;
        }
        seq.end()
    }
}

/// Drops every set that has a proper subset in the collection, and
/// duplicates. The first occurrence of each survivor is kept, so the
/// result follows input order.
pub fn antichain(sets: Vec<PowerState>) -> Vec<PowerState> {
    let mut out: Vec<PowerState> = Vec::new();
    'next: for s in sets {
        for kept in &out {
            if kept.is_subset(&s) {
                continue 'next;
            }
        }
        out.retain(|kept| !s.is_subset(kept));
        out.push(s);
    }
    out
}

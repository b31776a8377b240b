//! The covering families `N(W, σ)` and their minimal elements.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::automaton::StateId;
use crate::error::Guard;
use crate::synthesis::power_state::{antichain, PowerState};

/// One obligation of a covering family: the pair `(x, z)` moved by `σ` to
/// `x'` in the plant, and the spec successors `z'` of `z` with
/// `(x', z') ∈ W^↑`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Obligation {
    pub source: (StateId, StateId),
    pub target: StateId,
    pub allowed: Vec<StateId>,
}

impl Obligation {
    fn covered_by(&self, set: &[(StateId, StateId)]) -> bool {
        self.allowed
            .iter()
            .any(|&z1| set.binary_search(&(self.target, z1)).is_ok())
    }
}

/// `N(W, σ)` in implicit form: a set `W''` is a member iff it is a subset of
/// `candidates` and meets every obligation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverFamily {
    pub obligations: Vec<Obligation>,
    /// The union of `{x'} × allowed` over all obligations, sorted.
    pub candidates: Vec<(StateId, StateId)>,
}

impl CoverFamily {
    /// Obligations must be sorted; `allowed` lists sorted.
    pub(crate) fn new(obligations: Vec<Obligation>) -> Self {
        let candidates: BTreeSet<(StateId, StateId)> = obligations
            .iter()
            .flat_map(|o| o.allowed.iter().map(move |&z1| (o.target, z1)))
            .collect();
        CoverFamily {
            obligations,
            candidates: candidates.into_iter().collect(),
        }
    }

    /// False iff some obligation has no allowed partner, i.e. `N(W, σ) = ∅`.
    pub fn is_satisfiable(&self) -> bool {
        self.obligations.iter().all(|o| !o.allowed.is_empty())
    }

    /// Membership `W'' ∈ N(W, σ)`.
    pub fn contains(&self, w: &PowerState) -> bool {
        w.iter()
            .all(|p| self.candidates.binary_search(&p).is_ok())
            && self.obligations.iter().all(|o| o.covered_by(w.pairs()))
    }

    /// The ⊆-minimal members, in canonical order.
    ///
    /// Depth-first over choice functions: the first obligation not yet met
    /// by the partial set branches over its allowed partners, obligations
    /// already met are skipped. Every minimal member is some leaf, so an
    /// antichain reduction of the leaves yields exactly the minimal ones.
    pub fn minimal(&self, limit: usize) -> Result<Vec<PowerState>, Guard> {
        if !self.is_satisfiable() {
            return Ok(Vec::new());
        }
        let mut leaves = Vec::new();
        let mut current = Vec::new();
        self.descend(0, &mut current, &mut leaves, limit)?;
        let mut out = antichain(leaves);
        out.sort();
        Ok(out)
    }

    fn descend(
        &self,
        from: usize,
        current: &mut Vec<(StateId, StateId)>,
        leaves: &mut Vec<PowerState>,
        limit: usize,
    ) -> Result<(), Guard> {
        let open = self.obligations[from..]
            .iter()
            .position(|o| !o.covered_by(current))
            .map(|i| i + from);
        let Some(i) = open else {
            if leaves.len() >= limit {
                return Err(Guard::Covers {
                    candidates: self.candidates.len(),
                    limit,
                });
            }
            leaves.push(PowerState::from_sorted(current.clone()));
            return Ok(());
        };
        let o = &self.obligations[i];
        for &z1 in &o.allowed {
            let pair = (o.target, z1);
            let at = current.binary_search(&pair).unwrap_err();
            current.insert(at, pair);
            self.descend(i + 1, current, leaves, limit)?;
            current.remove(at);
        }
        Ok(())
    }

    /// Every member of the family, in canonical order. Members are the
    /// subsets of `candidates` that contain some minimal member.
    pub fn members(&self, limit: usize) -> Result<Vec<PowerState>, Guard> {
        let guard = Guard::Covers {
            candidates: self.candidates.len(),
            limit,
        };
        let minimal = self.minimal(limit)?;
        let mut all = BTreeSet::new();
        for m in &minimal {
            let free: Vec<(StateId, StateId)> = self
                .candidates
                .iter()
                .copied()
                .filter(|&p| !m.contains(p))
                .collect();
            if free.len() >= usize::BITS as usize - 1 || (1usize << free.len()) > limit {
                return Err(guard);
            }
            for mask in 0..(1usize << free.len()) {
                let extra = free
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p);
                all.insert(PowerState::from_pairs(m.iter().chain(extra)));
                if all.len() > limit {
                    return Err(guard);
                }
            }
        }
        Ok(all.into_iter().collect())
    }
}

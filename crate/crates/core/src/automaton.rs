//! Finite nondeterministic automata.

use std::collections::{BTreeSet, VecDeque};

use crate::alphabet::{validate_state_name, Alphabet, EventId};
use crate::error::{Error, Result};

/// Index of a state inside an [`Automaton`]. States are numbered in
/// lexicographic order of their names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct StateId(u32);

impl StateId {
    pub fn new(index: usize) -> Self {
        StateId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// `G = (X, Σ, →, X₀)` with a finite state set.
///
/// Transitions are stored row-compressed by `(state, event)`; each row is
/// sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automaton {
    alphabet: Alphabet,
    states: Vec<String>,
    offsets: Vec<u32>,
    targets: Vec<StateId>,
    initial: Vec<StateId>,
}

impl Automaton {
    /// Builds an automaton from index-based parts. `names` may come in any
    /// order; the returned vector maps each input index to its final id.
    pub(crate) fn from_indexed_with_map(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, EventId, usize)>,
    ) -> Result<(Self, Vec<StateId>)> {
        let n = names.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        if let Some(w) = order.windows(2).find(|w| names[w[0]] == names[w[1]]) {
            return Err(Error::DuplicateState(names[w[0]].clone()));
        }
        let mut remap = vec![StateId::new(0); n];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = StateId::new(new);
        }
        let mut names = names;
        let mut sorted = Vec::with_capacity(n);
        for &old in &order {
            sorted.push(std::mem::take(&mut names[old]));
        }

        let mut initial: Vec<StateId> = initial.into_iter().map(|i| remap[i]).collect();
        initial.sort_unstable();
        initial.dedup();
        if initial.is_empty() {
            return Err(Error::EmptyInitial);
        }

        let k = alphabet.len();
        let mut edges: Vec<(StateId, EventId, StateId)> = transitions
            .into_iter()
            .map(|(s, e, t)| (remap[s], e, remap[t]))
            .collect();
        if let Some(&(_, e, _)) = edges.iter().find(|(_, e, _)| e.index() >= k) {
            return Err(Error::UnknownEvent(format!("#{}", e.index())));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut offsets = vec![0u32; n * k + 1];
        for &(s, e, _) in &edges {
            offsets[s.index() * k + e.index() + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let targets = edges.into_iter().map(|(_, _, t)| t).collect();
        Ok((
            Automaton {
                alphabet,
                states: sorted,
                offsets,
                targets,
                initial,
            },
            remap,
        ))
    }

    /// Builds an automaton from index-based parts without validating state
    /// names. Used for internally generated names.
    pub fn from_indexed(
        alphabet: Alphabet,
        names: Vec<String>,
        initial: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, EventId, usize)>,
    ) -> Result<Self> {
        Self::from_indexed_with_map(alphabet, names, initial, transitions).map(|(a, _)| a)
    }

    pub fn builder(alphabet: Alphabet) -> AutomatonBuilder {
        AutomatonBuilder::new(alphabet)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_transitions(&self) -> usize {
        self.targets.len()
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId::new)
    }

    pub fn state_name(&self, x: StateId) -> &str {
        &self.states[x.index()]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn find_state(&self, name: &str) -> Option<StateId> {
        self.states
            .binary_search_by(|s| s.as_str().cmp(name))
            .ok()
            .map(StateId::new)
    }

    pub fn state(&self, name: &str) -> Result<StateId> {
        self.find_state(name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_initial(&self, x: StateId) -> bool {
        self.initial.binary_search(&x).is_ok()
    }

    /// `{x' : x -σ-> x'}` in ascending order.
    pub fn successors(&self, x: StateId, e: EventId) -> &[StateId] {
        let row = x.index() * self.alphabet.len() + e.index();
        &self.targets[self.offsets[row] as usize..self.offsets[row + 1] as usize]
    }

    /// Name-based [`successors`](Self::successors), rejecting unknown names.
    pub fn successors_named(&self, x: &str, e: &str) -> Result<Vec<&str>> {
        let x = self.state(x)?;
        let e = self.alphabet.event(e)?;
        Ok(self
            .successors(x, e)
            .iter()
            .map(|&t| self.state_name(t))
            .collect())
    }

    pub fn enables(&self, x: StateId, e: EventId) -> bool {
        !self.successors(x, e).is_empty()
    }

    /// Events enabled at `x`, in alphabet order.
    pub fn enabled(&self, x: StateId) -> impl Iterator<Item = EventId> + '_ {
        self.alphabet.ids().filter(move |&e| self.enables(x, e))
    }

    pub fn is_deadlock(&self, x: StateId) -> bool {
        let k = self.alphabet.len();
        let row = x.index() * k;
        self.offsets[row] == self.offsets[row + k]
    }

    /// All transitions, sorted by `(source, event, target)`.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, EventId, StateId)> + '_ {
        self.state_ids().flat_map(move |x| {
            self.alphabet
                .ids()
                .flat_map(move |e| self.successors(x, e).iter().map(move |&t| (x, e, t)))
        })
    }

    pub fn has_transition(&self, x: StateId, e: EventId, t: StateId) -> bool {
        self.successors(x, e).binary_search(&t).is_ok()
    }

    /// Breadth-first exploration from the initial states.
    pub fn reachable(&self) -> Reachability {
        let n = self.num_states();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        for &x in &self.initial {
            seen[x.index()] = true;
            queue.push_back(x);
        }
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for e in self.alphabet.ids() {
                for &t in self.successors(x, e) {
                    if !seen[t.index()] {
                        seen[t.index()] = true;
                        parent[t.index()] = Some((x, e));
                        queue.push_back(t);
                    }
                }
            }
        }
        Reachability {
            seen,
            parent,
            order,
        }
    }

    /// `{x : x₀ -s-> x for some x₀ ∈ X₀}`.
    pub fn reach_via(&self, word: &[EventId]) -> BTreeSet<StateId> {
        let mut current: BTreeSet<StateId> = self.initial.iter().copied().collect();
        for &e in word {
            current = self.post(&current, e);
        }
        current
    }

    pub fn reach_via_named(&self, word: &[&str]) -> Result<BTreeSet<StateId>> {
        let ids = word
            .iter()
            .map(|w| self.alphabet.event(w))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.reach_via(&ids))
    }

    /// One-step image of a state set.
    pub fn post(&self, set: &BTreeSet<StateId>, e: EventId) -> BTreeSet<StateId> {
        set.iter()
            .flat_map(|&x| self.successors(x, e).iter().copied())
            .collect()
    }

    /// Returns the same automaton with different initial states.
    pub fn with_initial(&self, initial: impl IntoIterator<Item = StateId>) -> Result<Self> {
        let mut initial: Vec<StateId> = initial.into_iter().collect();
        initial.sort_unstable();
        initial.dedup();
        if initial.is_empty() {
            return Err(Error::EmptyInitial);
        }
        let mut a = self.clone();
        a.initial = initial;
        Ok(a)
    }

    /// Restricts to the reachable part.
    pub fn trim(&self) -> Self {
        let reach = self.reachable();
        let keep: Vec<StateId> = self.state_ids().filter(|&x| reach.contains(x)).collect();
        let mut index = vec![usize::MAX; self.num_states()];
        for (i, &x) in keep.iter().enumerate() {
            index[x.index()] = i;
        }
        let names = keep.iter().map(|&x| self.state_name(x).to_string()).collect();
        let edges: Vec<_> = self
            .transitions()
            .filter(|(s, _, _)| reach.contains(*s))
            .map(|(s, e, t)| (index[s.index()], e, index[t.index()]))
            .collect();
        Automaton::from_indexed(
            self.alphabet.clone(),
            names,
            self.initial.iter().map(|x| index[x.index()]),
            edges,
        )
        .expect("restriction of a valid automaton")
    }
}

/// Result of [`Automaton::reachable`].
#[derive(Clone, Debug)]
pub struct Reachability {
    seen: Vec<bool>,
    parent: Vec<Option<(StateId, EventId)>>,
    order: Vec<StateId>,
}

impl Reachability {
    pub fn contains(&self, x: StateId) -> bool {
        self.seen[x.index()]
    }

    /// Reachable states in discovery order.
    pub fn states(&self) -> &[StateId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// A shortest word leading from some initial state to `x`.
    pub fn witness(&self, x: StateId) -> Option<Vec<EventId>> {
        if !self.contains(x) {
            return None;
        }
        let mut word = Vec::new();
        let mut cur = x;
        while let Some((p, e)) = self.parent[cur.index()] {
            word.push(e);
            cur = p;
        }
        word.reverse();
        Some(word)
    }
}

/// Name-based construction with validation.
#[derive(Clone, Debug)]
pub struct AutomatonBuilder {
    alphabet: Alphabet,
    states: BTreeSet<String>,
    initial: BTreeSet<String>,
    transitions: Vec<(String, String, String)>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        AutomatonBuilder {
            alphabet,
            states: BTreeSet::new(),
            initial: BTreeSet::new(),
            transitions: Vec::new(),
        }
    }

    pub fn state(mut self, name: &str) -> Self {
        self.states.insert(name.to_string());
        self
    }

    pub fn initial(mut self, name: &str) -> Self {
        self.states.insert(name.to_string());
        self.initial.insert(name.to_string());
        self
    }

    pub fn transition(mut self, from: &str, event: &str, to: &str) -> Self {
        self.add_transition(from, event, to);
        self
    }

    pub fn add_state(&mut self, name: &str) {
        self.states.insert(name.to_string());
    }

    pub fn add_initial(&mut self, name: &str) {
        self.states.insert(name.to_string());
        self.initial.insert(name.to_string());
    }

    pub fn add_transition(&mut self, from: &str, event: &str, to: &str) {
        self.states.insert(from.to_string());
        self.states.insert(to.to_string());
        self.transitions
            .push((from.to_string(), event.to_string(), to.to_string()));
    }

    pub fn build(self) -> Result<Automaton> {
        for s in &self.states {
            validate_state_name(s)?;
        }
        let names: Vec<String> = self.states.into_iter().collect();
        let idx = |n: &str| names.binary_search_by(|s| s.as_str().cmp(n)).unwrap();
        let mut edges = Vec::with_capacity(self.transitions.len());
        for (s, e, t) in &self.transitions {
            let e = self.alphabet.event(e)?;
            edges.push((idx(s), e, idx(t)));
        }
        let initial: Vec<usize> = self.initial.iter().map(|n| idx(n)).collect();
        Automaton::from_indexed(self.alphabet, names.clone(), initial, edges)
    }
}

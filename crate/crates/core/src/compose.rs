//! Synchronous composition `S||G`.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::automaton::{Automaton, StateId};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ProductMode {
    /// Only the part reachable from `Y₀ × X₀`.
    #[default]
    Reachable,
    /// Every pair in `Y × X`.
    Full,
}

/// The composed automaton together with the component pair of each state.
#[derive(Clone, Debug)]
pub struct Product {
    pub automaton: Automaton,
    components: Vec<(StateId, StateId)>,
    index: HashMap<(StateId, StateId), StateId>,
}

impl Product {
    /// `(y, x)` for a product state.
    pub fn components(&self, p: StateId) -> (StateId, StateId) {
        self.components[p.index()]
    }

    pub fn find(&self, y: StateId, x: StateId) -> Option<StateId> {
        self.index.get(&(y, x)).copied()
    }
}

/// Name of the product state `(y,x)`.
pub fn pair_name(left: &str, right: &str) -> String {
    let mut s = String::with_capacity(left.len() + right.len() + 3);
    s.push('(');
    s.push_str(left);
    s.push(',');
    s.push_str(right);
    s.push(')');
    s
}

/// `(y,x) -σ-> (y',x')` iff `y -σ-> y'` and `x -σ-> x'`; initial states are
/// `Y₀ × X₀`.
pub fn compose(s: &Automaton, g: &Automaton, mode: ProductMode) -> Result<Product> {
    s.alphabet().ensure_same(g.alphabet())?;
    let alphabet = s.alphabet();
    let mut pairs: Vec<(StateId, StateId)> = Vec::new();
    let mut index: HashMap<(StateId, StateId), usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |pair: (StateId, StateId),
                      pairs: &mut Vec<(StateId, StateId)>,
                      queue: &mut VecDeque<usize>| {
        *index.entry(pair).or_insert_with(|| {
            pairs.push(pair);
            queue.push_back(pairs.len() - 1);
            pairs.len() - 1
        })
    };

    let mut initial = Vec::new();
    for &y in s.initial() {
        for &x in g.initial() {
            initial.push(intern((y, x), &mut pairs, &mut queue));
        }
    }
    if mode == ProductMode::Full {
        for y in s.state_ids() {
            for x in g.state_ids() {
                intern((y, x), &mut pairs, &mut queue);
            }
        }
    }
    while let Some(p) = queue.pop_front() {
        let (y, x) = pairs[p];
        for e in alphabet.ids() {
            let ys = s.successors(y, e);
            if ys.is_empty() {
                continue;
            }
            let xs = g.successors(x, e);
            for &y1 in ys {
                for &x1 in xs {
                    let q = intern((y1, x1), &mut pairs, &mut queue);
                    edges.push((p, e, q));
                }
            }
        }
    }

    let names = pairs
        .iter()
        .map(|&(y, x)| pair_name(s.state_name(y), g.state_name(x)))
        .collect();
    let (automaton, remap) =
        Automaton::from_indexed_with_map(alphabet.clone(), names, initial, edges)?;
    let mut components = vec![(StateId::new(0), StateId::new(0)); pairs.len()];
    let mut index = HashMap::with_capacity(pairs.len());
    for (old, &pair) in pairs.iter().enumerate() {
        components[remap[old].index()] = pair;
        index.insert(pair, remap[old]);
    }
    Ok(Product {
        automaton,
        components,
        index,
    })
}

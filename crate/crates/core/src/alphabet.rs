//! Event sets with controllability and observability attributes.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of an event inside an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct EventId(u32);

impl EventId {
    pub fn new(index: usize) -> Self {
        EventId(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EventDecl {
    pub name: String,
    pub controllable: bool,
    pub observable: bool,
}

impl EventDecl {
    pub fn new(name: impl Into<String>, controllable: bool, observable: bool) -> Self {
        EventDecl {
            name: name.into(),
            controllable,
            observable,
        }
    }

    /// Uncontrollable, observable.
    pub fn uc(name: impl Into<String>) -> Self {
        Self::new(name, false, true)
    }

    /// Controllable, observable.
    pub fn c(name: impl Into<String>) -> Self {
        Self::new(name, true, true)
    }
}

/// A finite event set, kept sorted by name so that two alphabets with the
/// same declarations compare equal regardless of declaration order.
///
/// Each event is either controllable or uncontrollable, and either
/// observable or unobservable, so both partitions hold by construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    events: Arc<[EventDecl]>,
}

impl Alphabet {
    pub fn new(decls: impl IntoIterator<Item = EventDecl>) -> Result<Self> {
        let mut events: Vec<EventDecl> = decls.into_iter().collect();
        for e in &events {
            validate_event_name(&e.name)?;
        }
        events.sort_by(|a, b| a.name.cmp(&b.name));
        if let Some(w) = events.windows(2).find(|w| w[0].name == w[1].name) {
            return Err(Error::DuplicateEvent(w[0].name.clone()));
        }
        Ok(Alphabet {
            events: events.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = EventId> + '_ {
        (0..self.events.len()).map(EventId::new)
    }

    pub fn decl(&self, e: EventId) -> &EventDecl {
        &self.events[e.index()]
    }

    pub fn decls(&self) -> &[EventDecl] {
        &self.events
    }

    pub fn name(&self, e: EventId) -> &str {
        &self.events[e.index()].name
    }

    pub fn find(&self, name: &str) -> Option<EventId> {
        self.events
            .binary_search_by(|d| d.name.as_str().cmp(name))
            .ok()
            .map(EventId::new)
    }

    pub fn event(&self, name: &str) -> Result<EventId> {
        self.find(name)
            .ok_or_else(|| Error::UnknownEvent(name.to_string()))
    }

    pub fn is_controllable(&self, e: EventId) -> bool {
        self.events[e.index()].controllable
    }

    pub fn is_uncontrollable(&self, e: EventId) -> bool {
        !self.is_controllable(e)
    }

    pub fn is_observable(&self, e: EventId) -> bool {
        self.events[e.index()].observable
    }

    pub fn uncontrollable(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(|&e| self.is_uncontrollable(e))
    }

    pub fn unobservable(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(|&e| !self.is_observable(e))
    }

    pub fn observable(&self) -> impl Iterator<Item = EventId> + '_ {
        self.ids().filter(|&e| self.is_observable(e))
    }

    /// Describes the first difference between two alphabets, if any.
    pub fn mismatch(&self, other: &Alphabet) -> Option<String> {
        if Arc::ptr_eq(&self.events, &other.events) || self == other {
            return None;
        }
        for d in self.events.iter() {
            match other.find(&d.name) {
                None => return Some(format!("event `{}` missing on the right", d.name)),
                Some(e) if other.decl(e) != d => {
                    return Some(format!("event `{}` has different attributes", d.name))
                }
                _ => {}
            }
        }
        let extra = other
            .events
            .iter()
            .find(|d| self.find(&d.name).is_none())
            .map(|d| d.name.clone())
            .unwrap_or_default();
        Some(format!("event `{extra}` missing on the left"))
    }

    pub fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        match self.mismatch(other) {
            None => Ok(()),
            Some(m) => Err(Error::AlphabetMismatch(m)),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(
                f,
                "{}:{}:{}",
                d.name,
                if d.controllable { "c" } else { "uc" },
                if d.observable { "o" } else { "uo" }
            )?;
        }
        Ok(())
    }
}

const EVENT_FORBIDDEN: &[char] = &[',', ':', '#', '(', ')', '[', ']', '{', '}', '<', '>', '|'];

pub(crate) fn validate_event_name(name: &str) -> Result<()> {
    let bad = |reason| {
        Err(Error::InvalidIdentifier {
            ident: name.to_string(),
            reason,
        })
    };
    if name.is_empty() {
        return bad("empty event name");
    }
    if name.starts_with('-') {
        return bad("event names may not start with '-'");
    }
    if name.chars().any(|c| c.is_whitespace() || EVENT_FORBIDDEN.contains(&c)) {
        return bad("event names may not contain whitespace or any of , : # ( ) [ ] { } < > |");
    }
    Ok(())
}

/// State identifiers may not contain whitespace or `#`, must have balanced
/// brackets, and may only contain `,` inside brackets. A top-level comma is
/// the reserved separator of composed names like `(y,x)`.
pub(crate) fn validate_state_name(name: &str) -> Result<()> {
    let bad = |reason| {
        Err(Error::InvalidIdentifier {
            ident: name.to_string(),
            reason,
        })
    };
    if name.is_empty() {
        return bad("empty state name");
    }
    let mut stack = Vec::new();
    for c in name.chars() {
        match c {
            c if c.is_whitespace() || c == '#' => {
                return bad("state names may not contain whitespace or '#'")
            }
            '(' | '[' | '{' | '<' => stack.push(c),
            ')' | ']' | '}' | '>' => {
                let open = match c {
                    ')' => '(',
                    ']' => '[',
                    '}' => '{',
                    _ => '<',
                };
                if stack.pop() != Some(open) {
                    return bad("unbalanced brackets");
                }
            }
            ',' if stack.is_empty() => {
                return bad("',' is reserved for composed state names")
            }
            _ => {}
        }
    }
    if !stack.is_empty() {
        return bad("unbalanced brackets");
    }
    Ok(())
}

/// Splits on commas that are not nested inside brackets.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' | '<' => depth += 1,
            ')' | ']' | '}' | '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

//! Line-oriented automaton text format.
//!
//! ```text
//! # comment
//! events: σ:uc:o, c:c, τ:uc:uo
//! states: x0, x1, x2
//! initial: x0
//! trans: x0 -σ-> x1
//! ```
//!
//! * `events:` declares `name:controllability[:observability]` with
//!   controllability `c`/`uc` and observability `o`/`uo` (default `o`).
//!   Several `events:` lines accumulate; an event may be declared once.
//! * `states:` optionally declares states, e.g. isolated ones. States used
//!   in `initial:` or `trans:` are declared implicitly.
//! * `initial:` lists initial states; several lines accumulate and the
//!   resulting set must be nonempty.
//! * `trans: src -event-> dst` adds one transition.
//!
//! List items are separated by commas outside brackets, so composed names
//! such as `(y,x)` or `{(x1,z1),(x2,z3)}` can appear in lists.

use std::fmt::Write as _;

use crate::alphabet::{split_top_level, validate_state_name, Alphabet, EventDecl};
use crate::automaton::{Automaton, AutomatonBuilder};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Automaton> {
    let mut decls: Vec<EventDecl> = Vec::new();
    let mut states: Vec<(usize, String)> = Vec::new();
    let mut initial: Vec<(usize, String)> = Vec::new();
    let mut trans: Vec<(usize, String, String, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err(format!("expected `keyword: ...`, found `{line}`")))?;
        let rest = rest.trim();
        match key.trim() {
            "events" => {
                for item in list(rest) {
                    let d = parse_event(item).map_err(err)?;
                    if decls.iter().any(|e| e.name == d.name) {
                        return Err(err(format!("event `{}` declared twice", d.name)));
                    }
                    decls.push(d);
                }
            }
            "states" => {
                for item in list(rest) {
                    check_state(item).map_err(err)?;
                    states.push((line_no, item.to_string()));
                }
            }
            "initial" => {
                for item in list(rest) {
                    check_state(item).map_err(err)?;
                    initial.push((line_no, item.to_string()));
                }
            }
            "trans" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [src, arrow, dst] = parts[..] else {
                    return Err(err(format!("expected `src -event-> dst`, found `{rest}`")));
                };
                let event = arrow
                    .strip_prefix('-')
                    .and_then(|a| a.strip_suffix("->"))
                    .filter(|e| !e.is_empty())
                    .ok_or_else(|| err(format!("malformed arrow `{arrow}`")))?;
                check_state(src).map_err(err)?;
                check_state(dst).map_err(err)?;
                trans.push((line_no, src.into(), event.into(), dst.into()));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }

    let alphabet = Alphabet::new(decls).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    let mut b = AutomatonBuilder::new(alphabet.clone());
    for (_, s) in &states {
        b.add_state(s);
    }
    if initial.is_empty() {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: "no initial state declared".into(),
        });
    }
    for (_, s) in &initial {
        b.add_initial(s);
    }
    for (line, s, e, t) in &trans {
        if alphabet.find(e).is_none() {
            return Err(Error::Parse {
                line: *line,
                message: format!("undeclared event `{e}`"),
            });
        }
        b.add_transition(s, e, t);
    }
    b.build()
}

fn list(rest: &str) -> impl Iterator<Item = &str> {
    split_top_level(rest)
        .into_iter()
        .map(str::trim)
        .filter(|s| !s.is_empty())
}

fn check_state(name: &str) -> std::result::Result<(), String> {
    validate_state_name(name).map_err(|e| e.to_string())
}

fn parse_event(item: &str) -> std::result::Result<EventDecl, String> {
    let mut parts = item.split(':').map(str::trim);
    let name = parts.next().unwrap_or_default();
    let controllable = match parts.next() {
        Some("c") => true,
        Some("uc") => false,
        Some(other) => return Err(format!("bad controllability `{other}` for `{name}`")),
        None => return Err(format!("event `{name}` lacks a controllability attribute")),
    };
    let observable = match parts.next() {
        None | Some("o") => true,
        Some("uo") => false,
        Some(other) => return Err(format!("bad observability `{other}` for `{name}`")),
    };
    if parts.next().is_some() {
        return Err(format!("too many attributes in `{item}`"));
    }
    crate::alphabet::validate_event_name(name).map_err(|e| e.to_string())?;
    Ok(EventDecl::new(name, controllable, observable))
}

/// Canonical rendering; `parse(&serialize(a)) == a`.
pub fn serialize(a: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "events: {}", a.alphabet());
    let _ = writeln!(out, "states: {}", a.state_names().join(", "));
    let init: Vec<&str> = a.initial().iter().map(|&x| a.state_name(x)).collect();
    let _ = writeln!(out, "initial: {}", init.join(", "));
    for (s, e, t) in a.transitions() {
        let _ = writeln!(
            out,
            "trans: {} -{}-> {}",
            a.state_name(s),
            a.alphabet().name(e),
            a.state_name(t)
        );
    }
    out
}

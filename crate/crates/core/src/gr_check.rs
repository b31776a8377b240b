//! Decides whether an automaton over pair sets is a (G,R)-automaton and
//! whether it is saturated, reporting every failed clause with a witness.
//!
//! Clauses, checked in this order:
//!
//! | id        | requirement |
//! |-----------|-------------|
//! | `state`   | every payload is a subset of `W^↑` |
//! | `istate`  | every initial payload lies in `X₀×Z₀` and covers `X₀` |
//! | `6-a`     | a reachable `W` enables every `σ` allowed by clauses (a) and (b) |
//! | `6-b`     | every reachable edge `W -σ-> W'` has `W' ∈ N(W,σ)` |
//! | `sistate` | every choice function over `W^↑ ∩ (X₀×Z₀)` is initial |
//! | `6-c`     | below every `W' ∈ N(W,σ)` of a reachable `W` with `W -σ->` lies some target `W'' ∈ N(W,σ)` |

use serde::Serialize;

use crate::automaton::StateId;
use crate::error::Result;
use crate::synthesis::{Context, PowerState, Supervisor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Clause {
    #[serde(rename = "state")]
    State,
    #[serde(rename = "istate")]
    Istate,
    #[serde(rename = "6-a")]
    EnabledEvents,
    #[serde(rename = "6-b")]
    CoveringTargets,
    #[serde(rename = "sistate")]
    SaturatedInitial,
    #[serde(rename = "6-c")]
    MinimalTargets,
}

impl Clause {
    pub fn id(self) -> &'static str {
        match self {
            Clause::State => "state",
            Clause::Istate => "istate",
            Clause::EnabledEvents => "6-a",
            Clause::CoveringTargets => "6-b",
            Clause::SaturatedInitial => "sistate",
            Clause::MinimalTargets => "6-c",
        }
    }

    fn is_saturation(self) -> bool {
        matches!(self, Clause::SaturatedInitial | Clause::MinimalTargets)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrVerdict {
    NotGr,
    /// Passes the (G,R)-automaton clauses; saturation was not assessed.
    Gr,
    GrUnsaturated,
    Saturated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseFailure {
    pub clause: Clause,
    /// Name of the offending supervisor state, if any.
    pub state: Option<String>,
    pub event: Option<String>,
    /// Offending target payload (`6-b`), missing cover (`6-c`) or missing
    /// initial set (`sistate`).
    pub target: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrReport {
    pub verdict: GrVerdict,
    pub failures: Vec<ClauseFailure>,
    pub warnings: Vec<String>,
}

impl GrReport {
    pub fn failures_of(&self, clause: Clause) -> impl Iterator<Item = &ClauseFailure> {
        self.failures.iter().filter(move |f| f.clause == clause)
    }

    /// Plain-text clause table.
    pub fn table(&self) -> String {
        let mut out = format!("verdict: {}\n", verdict_name(self.verdict));
        let clauses = [
            Clause::State,
            Clause::Istate,
            Clause::EnabledEvents,
            Clause::CoveringTargets,
            Clause::SaturatedInitial,
            Clause::MinimalTargets,
        ];
        let checked = |c: Clause| self.verdict != GrVerdict::Gr || !c.is_saturation();
        for c in clauses {
            let n = self.failures_of(c).count();
            let status = if !checked(c) {
                "skipped".to_string()
            } else if n == 0 {
                "ok".to_string()
            } else {
                format!("FAIL ({n})")
            };
            out.push_str(&format!("  {:<8} {}\n", c.id(), status));
            for f in self.failures_of(c) {
                out.push_str(&format!("      {}\n", f.detail));
            }
        }
        for w in &self.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        out
    }
}

pub fn verdict_name(v: GrVerdict) -> &'static str {
    match v {
        GrVerdict::NotGr => "not-gr",
        GrVerdict::Gr => "gr",
        GrVerdict::GrUnsaturated => "gr-unsaturated",
        GrVerdict::Saturated => "saturated",
    }
}

struct Checker<'c, 'a> {
    ctx: &'c Context<'a>,
    sup: &'c Supervisor<PowerState>,
    reachable: Vec<StateId>,
    failures: Vec<ClauseFailure>,
}

impl<'c, 'a> Checker<'c, 'a> {
    fn new(ctx: &'c Context<'a>, sup: &'c Supervisor<PowerState>) -> Self {
        let reach = sup.automaton().reachable();
        let reachable = sup
            .automaton()
            .state_ids()
            .filter(|&s| reach.contains(s))
            .collect();
        Checker {
            ctx,
            sup,
            reachable,
            failures: Vec::new(),
        }
    }

    fn name(&self, s: StateId) -> String {
        self.sup.automaton().state_name(s).to_string()
    }

    fn event_name(&self, e: crate::alphabet::EventId) -> String {
        self.ctx.plant().alphabet().name(e).to_string()
    }

    fn fail(
        &mut self,
        clause: Clause,
        state: Option<String>,
        event: Option<String>,
        target: Option<String>,
        detail: String,
    ) {
        self.failures.push(ClauseFailure {
            clause,
            state,
            event,
            target,
            detail,
        });
    }

    fn state_clause(&mut self) {
        let a = self.sup.automaton();
        for s in a.state_ids() {
            if !self.ctx.within_winning(self.sup.payload(s)) {
                let n = self.name(s);
                self.fail(
                    Clause::State,
                    Some(n.clone()),
                    None,
                    None,
                    format!("{n} is not a subset of W^↑"),
                );
            }
        }
    }

    fn istate_clause(&mut self) {
        let g = self.ctx.plant();
        let r = self.ctx.spec();
        for &s in self.sup.automaton().initial() {
            let w = self.sup.payload(s);
            let inside = w.iter().all(|(x, z)| g.is_initial(x) && r.is_initial(z));
            let covers = g.initial().iter().all(|&x0| w.iter().any(|(x, _)| x == x0));
            if !inside || !covers {
                let n = self.name(s);
                let why = if !inside {
                    "is not contained in X₀×Z₀"
                } else {
                    "does not cover every initial plant state"
                };
                self.fail(
                    Clause::Istate,
                    Some(n.clone()),
                    None,
                    None,
                    format!("initial {n} {why}"),
                );
            }
        }
    }

    fn enabled_clause(&mut self) {
        let a = self.sup.automaton();
        for s in self.reachable.clone() {
            let w = self.sup.payload(s);
            for e in a.alphabet().ids() {
                if self.ctx.enabled(w, e) && !a.enables(s, e) {
                    let (n, en) = (self.name(s), self.event_name(e));
                    self.fail(
                        Clause::EnabledEvents,
                        Some(n.clone()),
                        Some(en.clone()),
                        None,
                        format!("{n} must enable {en}"),
                    );
                }
            }
        }
    }

    fn covering_clause(&mut self) {
        let a = self.sup.automaton();
        for s in self.reachable.clone() {
            let w = self.sup.payload(s);
            for e in a.alphabet().ids() {
                let succ = a.successors(s, e);
                if succ.is_empty() {
                    continue;
                }
                let family = self.ctx.cover_family(w, e);
                for &t in succ {
                    if !family.contains(self.sup.payload(t)) {
                        let (n, en, tn) = (self.name(s), self.event_name(e), self.name(t));
                        self.fail(
                            Clause::CoveringTargets,
                            Some(n.clone()),
                            Some(en.clone()),
                            Some(tn.clone()),
                            format!("{n} -{en}-> {tn} leaves N({n},{en})"),
                        );
                    }
                }
            }
        }
    }

    fn sistate_clause(&mut self) -> Result<()> {
        let a = self.sup.automaton();
        let initial: Vec<&PowerState> = a.initial().iter().map(|&s| self.sup.payload(s)).collect();
        for w0 in self.ctx.choice_functions()? {
            if !initial.contains(&&w0) {
                let n = self.ctx.render(&w0);
                self.fail(
                    Clause::SaturatedInitial,
                    None,
                    None,
                    Some(n.clone()),
                    format!("{n} is not an initial state"),
                );
            }
        }
        Ok(())
    }

    /// Every `W' ∈ N(W,σ)` contains a minimal member, and any member below
    /// a minimal one equals it, so the clause holds iff every minimal
    /// member is itself a target.
    fn minimal_targets_clause(&mut self) -> Result<()> {
        let a = self.sup.automaton();
        for s in self.reachable.clone() {
            let w = self.sup.payload(s);
            for e in a.alphabet().ids() {
                let succ = a.successors(s, e);
                if succ.is_empty() {
                    continue;
                }
                let family = self.ctx.cover_family(w, e);
                let targets: Vec<&PowerState> = succ
                    .iter()
                    .map(|&t| self.sup.payload(t))
                    .filter(|t| family.contains(t))
                    .collect();
                for m in self.ctx.minimal_covers(w, e)? {
                    if !targets.iter().any(|t| t.is_subset(&m)) {
                        let (n, en, mn) = (self.name(s), self.event_name(e), self.ctx.render(&m));
                        self.fail(
                            Clause::MinimalTargets,
                            Some(n.clone()),
                            Some(en.clone()),
                            Some(mn.clone()),
                            format!("no {en}-target of {n} inside {mn} ∈ N({n},{en})"),
                        );
                    }
                }
            }
        }
        Ok(())
    }
}

/// Clauses `state`, `istate`, `6-a`, `6-b`.
pub fn check_gr(sup: &Supervisor<PowerState>, ctx: &Context<'_>) -> Result<GrReport> {
    ctx.plant().alphabet().ensure_same(sup.automaton().alphabet())?;
    let mut c = Checker::new(ctx, sup);
    c.state_clause();
    c.istate_clause();
    c.enabled_clause();
    c.covering_clause();
    let verdict = if c.failures.is_empty() {
        GrVerdict::Gr
    } else {
        GrVerdict::NotGr
    };
    Ok(GrReport {
        verdict,
        failures: c.failures,
        warnings: Vec::new(),
    })
}

/// All six clauses.
pub fn check_saturated(sup: &Supervisor<PowerState>, ctx: &Context<'_>) -> Result<GrReport> {
    ctx.plant().alphabet().ensure_same(sup.automaton().alphabet())?;
    let mut c = Checker::new(ctx, sup);
    c.state_clause();
    c.istate_clause();
    c.enabled_clause();
    c.covering_clause();
    c.sistate_clause()?;
    c.minimal_targets_clause()?;
    let verdict = if c.failures.is_empty() {
        GrVerdict::Saturated
    } else if c.failures.iter().all(|f| f.clause.is_saturation()) {
        GrVerdict::GrUnsaturated
    } else {
        GrVerdict::NotGr
    };
    Ok(GrReport {
        verdict,
        failures: c.failures,
        warnings: Vec::new(),
    })
}

//! Small hand-built instances used by the tests and documentation.
//!
//! `FORK_*`: a plant whose second uncontrollable step forks the
//! specification into a dead branch (`z2`) and a live one (`z3 -c-> z4`).
//! `CHOICE_*`: a plant with one initial state against a specification with
//! two initial states, each allowing a different controllable follow-up.

use crate::automaton::Automaton;
use crate::format::parse;

pub const FORK_PLANT: &str = "\
events: σ:uc, c:c
initial: x0
trans: x0 -σ-> x1
trans: x1 -σ-> x2
trans: x2 -c-> x3
";

pub const FORK_SPEC: &str = "\
events: σ:uc, c:c
initial: z0
trans: z0 -σ-> z1
trans: z1 -σ-> z2
trans: z1 -σ-> z3
trans: z3 -c-> z4
";

/// A (G,R)-automaton for the `FORK` pair that omits the minimal
/// `σ`-successor `{(x2,z3)}` of `{(x1,z1)}`.
pub const FORK_UNSATURATED: &str = "\
events: σ:uc, c:c
initial: {(x0,z0)}
trans: {(x0,z0)} -σ-> {(x1,z1)}
trans: {(x1,z1)} -σ-> {(x2,z2)}
";

pub const CHOICE_PLANT: &str = "\
events: σ:uc, c1:c, c2:c
initial: x0
trans: x0 -σ-> x1
trans: x1 -c1-> x2
trans: x1 -c2-> x3
";

pub const CHOICE_SPEC: &str = "\
events: σ:uc, c1:c, c2:c
initial: z01, z02
trans: z01 -σ-> z1
trans: z02 -σ-> z2
trans: z1 -c1-> z3
trans: z2 -c2-> z4
";

/// A (G,R)-automaton for the `CHOICE` pair with only one of the two initial
/// choices.
pub const CHOICE_ONE_INITIAL: &str = "\
events: σ:uc, c1:c, c2:c
initial: {(x0,z01)}
trans: {(x0,z01)} -σ-> {(x1,z1)}
trans: {(x1,z1)} -c1-> {(x2,z3)}
";

/// A solution for the `CHOICE` pair following the other initial choice.
pub const CHOICE_OTHER_BRANCH: &str = "\
events: σ:uc, c1:c, c2:c
initial: s0
trans: s0 -σ-> s1
trans: s1 -c2-> s2
";

fn load(text: &str) -> Automaton {
    parse(text).expect("fixture parses")
}

pub fn fork_plant() -> Automaton {
    load(FORK_PLANT)
}

pub fn fork_spec() -> Automaton {
    load(FORK_SPEC)
}

pub fn fork_unsaturated() -> Automaton {
    load(FORK_UNSATURATED)
}

pub fn choice_plant() -> Automaton {
    load(CHOICE_PLANT)
}

pub fn choice_spec() -> Automaton {
    load(CHOICE_SPEC)
}

pub fn choice_one_initial() -> Automaton {
    load(CHOICE_ONE_INITIAL)
}

pub fn choice_other_branch() -> Automaton {
    load(CHOICE_OTHER_BRANCH)
}

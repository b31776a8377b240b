//! Similarity control of nondeterministic discrete-event systems.
//!
//! Given a plant `G` and a specification `R` over a shared alphabet split
//! into controllable and uncontrollable events, this crate computes the
//! greatest Σ_uc fixpoint `W^↑`, builds powerset supervisors over subsets
//! of it, checks supervisors against the structural clauses of
//! (G,R)-automata, and covers the partial-observation construction over
//! triple states.
//!
//! ```
//! use simctl_core::{fixtures, synthesis::{build, Context, Variant}, in_sp};
//!
//! let (g, r) = (fixtures::fork_plant(), fixtures::fork_spec());
//! let ctx = Context::new(&g, &r).unwrap();
//! let sup = build(&ctx, Variant::Takai).unwrap();
//! assert!(in_sp(sup.automaton(), &g, &r).unwrap());
//! ```

pub mod alphabet;
pub mod automaton;
pub mod compose;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod gr_check;
pub mod partial;
pub mod random;
pub mod relation;
pub mod simulation;
pub mod synthesis;
pub mod verdict;

pub use alphabet::{Alphabet, EventDecl, EventId};
pub use automaton::{Automaton, AutomatonBuilder, StateId};
pub use compose::{compose, Product, ProductMode};
pub use error::{Error, Guard, Result};
pub use gr_check::{check_gr, check_saturated, Clause, ClauseFailure, GrReport, GrVerdict};
pub use partial::{build_partial, is_admissible_partial, PartialWitness, TripleState};
pub use relation::{Relation, RelationDoc};
pub use simulation::{
    check_simulation, greatest_fixpoint, greatest_uc_fixpoint, simulates, SimMode,
};
pub use synthesis::{
    build, in_sp, is_admissible, more_permissive, prune_deadlocks, ConstructionTag, Context,
    Limits, PowerState, Supervisor, Variant,
};
pub use verdict::Verdict;

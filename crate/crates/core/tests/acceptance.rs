//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary so the lines are always printed; exits nonzero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simctl_core::alphabet::{Alphabet, EventDecl};
use simctl_core::fixtures;
use simctl_core::gr_check::{check_saturated, Clause, GrVerdict};
use simctl_core::partial::build_partial;
use simctl_core::random::{random_automaton, RandomParams};
use simctl_core::simulation::{
    check_simulation, f_step, greatest_fixpoint_worklist, greatest_uc_fixpoint, pi_g,
    simulates, transfer_violation, SimMode,
};
use simctl_core::synthesis::{
    build, in_sp, more_permissive, prune_deadlocks, ClosedLoop, Context, Limits, PowerState, Supervisor,
    Variant,
};
use simctl_core::{Automaton, Error, EventId, Product, Relation, StateId};

use common::*;

type Outcome = (bool, String);

/// Criterion-5 instances together with their builds.
struct Built {
    inst: Instance,
    takai: Supervisor<PowerState>,
    variant1: Supervisor<PowerState>,
    variant2: Supervisor<PowerState>,
    pruned: Supervisor<PowerState>,
}

const SUITE_SIZE: usize = 500;

/// Guards for the random suites. Instances tripping them are skipped and
/// counted.
const SUITE_LIMITS: Limits = Limits {
    max_states: 1500,
    max_covers: 256,
    max_choices: 256,
};

fn suite() -> (Vec<Built>, usize) {
    let mut out = Vec::with_capacity(SUITE_SIZE);
    let mut skipped = 0;
    let mut seed = 1;
    while out.len() < SUITE_SIZE {
        let batch = uc_instances(seed, 1, 6);
        let inst = batch.into_iter().next().unwrap();
        seed = inst.seed + 1;
        let ctx = Context::with_limits(&inst.g, &inst.r, SUITE_LIMITS).unwrap();
        let builds: Result<Vec<_>, Error> =
            Variant::all().iter().map(|&v| build(&ctx, v)).collect();
        match builds {
            Ok(mut b) => {
                let variant2 = b.pop().unwrap();
                let variant1 = b.pop().unwrap();
                let takai = b.pop().unwrap();
                let pruned = prune_deadlocks(&takai);
                drop(ctx);
                out.push(Built {
                    inst,
                    takai,
                    variant1,
                    variant2,
                    pruned,
                });
            }
            Err(Error::Guard { .. }) => skipped += 1,
            Err(e) => panic!("seed {}: unexpected error {e}", inst.seed),
        }
    }
    (out, skipped)
}

fn pairs_named(g: &Automaton, r: &Automaton, rel: &Relation) -> BTreeSet<(String, String)> {
    rel.iter()
        .map(|(x, z)| (g.state_name(x).to_string(), r.state_name(z).to_string()))
        .collect()
}

fn named(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    list.iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn c1() -> Outcome {
    let (g, r) = (fixtures::fork_plant(), fixtures::fork_spec());
    let got = pairs_named(&g, &r, &greatest_uc_fixpoint(&g, &r));
    let mut want = named(&[("x0", "z0"), ("x1", "z1"), ("x1", "z0")]);
    for j in 2..=3 {
        for i in 0..=4 {
            want.insert((format!("x{j}"), format!("z{i}")));
        }
    }
    let ok = got == want;
    (ok, format!("|W^↑| = {} (expected {})", got.len(), want.len()))
}

fn c2() -> Outcome {
    let (g, r) = (fixtures::fork_plant(), fixtures::fork_spec());
    let ctx = Context::new(&g, &r).unwrap();
    let sigma = g.alphabet().event("σ").unwrap();
    let c = g.alphabet().event("c").unwrap();
    let n = |w: &str, e: EventId| -> Vec<String> {
        let w = ctx.parse_power_state(w).unwrap();
        ctx.n_set_members(&w, e)
            .unwrap()
            .iter()
            .map(|m| ctx.render(m))
            .collect()
    };
    let checks = [
        (n("{(x0,z0)}", sigma), vec!["{(x1,z1)}"]),
        (
            n("{(x1,z1)}", sigma),
            vec!["{(x2,z2)}", "{(x2,z2),(x2,z3)}", "{(x2,z3)}"],
        ),
        (n("{(x2,z3)}", c), vec!["{(x3,z4)}"]),
    ];
    let ok = checks.iter().all(|(got, want)| got == want);
    (ok, format!("N(W0,σ), N(W1,σ), N(W3,c): {:?}", checks.iter().map(|c| &c.0).collect::<Vec<_>>()))
}

fn c3() -> Outcome {
    let (g, r) = (fixtures::fork_plant(), fixtures::fork_spec());
    let ctx = Context::new(&g, &r).unwrap();
    let a = Supervisor::from_automaton(fixtures::fork_unsaturated(), &g, &r).unwrap();
    let b = build(&ctx, Variant::Takai).unwrap();
    let ra = check_saturated(&a, &ctx).unwrap();
    let rb = check_saturated(&b, &ctx).unwrap();
    let witness = ra.failures_of(Clause::MinimalTargets).any(|f| {
        f.state.as_deref() == Some("{(x1,z1)}")
            && f.event.as_deref() == Some("σ")
            && f.target.as_deref() == Some("{(x2,z3)}")
    });
    let sp_a = in_sp(a.automaton(), &g, &r).unwrap();
    let sp_b = in_sp(b.automaton(), &g, &r).unwrap();
    let perm = more_permissive(b.automaton(), a.automaton(), &g).unwrap();
    let ok = ra.verdict == GrVerdict::GrUnsaturated
        && witness
        && rb.verdict == GrVerdict::Saturated
        && sp_a
        && sp_b
        && !perm;
    (
        ok,
        format!(
            "A: {:?} with 6-c witness {witness}; B: {:?}; in_sp {sp_a}/{sp_b}; B||G ⊑ A||G = {perm}",
            ra.verdict, rb.verdict
        ),
    )
}

fn c4() -> Outcome {
    let (g, r) = (fixtures::choice_plant(), fixtures::choice_spec());
    let ctx = Context::new(&g, &r).unwrap();
    let mut want = named(&[("x0", "z01"), ("x0", "z02")]);
    for i in 1..=3 {
        for z in ["z1", "z2", "z3", "z4", "z01", "z02"] {
            want.insert((format!("x{i}"), z.to_string()));
        }
    }
    let fixpoint_ok = pairs_named(&g, &r, ctx.winning()) == want;
    let a1 = Supervisor::from_automaton(fixtures::choice_one_initial(), &g, &r).unwrap();
    let s1 = fixtures::choice_other_branch();
    let report = check_saturated(&a1, &ctx).unwrap();
    let only_sistate = report
        .failures
        .iter()
        .all(|f| f.clause == Clause::SaturatedInitial);
    let witness = report
        .failures_of(Clause::SaturatedInitial)
        .any(|f| f.target.as_deref() == Some("{(x0,z02)}"));
    let perm = more_permissive(&s1, a1.automaton(), &g).unwrap();
    let sp = in_sp(a1.automaton(), &g, &r).unwrap() && in_sp(&s1, &g, &r).unwrap();
    let ok = fixpoint_ok && only_sistate && witness && !perm && sp;
    (
        ok,
        format!(
            "W^↑ as expected: {fixpoint_ok}; sistate witness {{(x0,z02)}}: {witness}; \
             S1||G1 ⊑ A1||G1 = {perm}; both in SP: {sp}"
        ),
    )
}

fn c5(suite: &[Built], skipped: usize) -> Outcome {
    let mut failures = Vec::new();
    for b in suite {
        for (name, s) in [
            ("takai", &b.takai),
            ("variant1", &b.variant1),
            ("variant2", &b.variant2),
        ] {
            if !in_sp(s.automaton(), &b.inst.g, &b.inst.r).unwrap() {
                failures.push(format!("seed {} {name}", b.inst.seed));
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "{} instances x 3 variants, {} failures, {skipped} guard-tripped instances skipped {:?}",
            suite.len(),
            failures.len(),
            failures.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

/// Results of the exhaustive and spot-check permissiveness runs, shared
/// by the criteria on the plain and the pruned build.
struct Permissiveness {
    instances: usize,
    small_skipped: usize,
    enumerated: usize,
    sp_members: usize,
    distinct_loops: usize,
    takai_failures: Vec<String>,
    pruned_failures: Vec<String>,
    pruned_not_in_sp: Vec<String>,
    spot_members: usize,
    spot_instances: usize,
    spot_takai_failures: Vec<String>,
    spot_pruned_failures: Vec<String>,
}

const SMALL_INSTANCES: usize = 40;

const SMALL_LIMITS: Limits = Limits {
    max_states: 200,
    max_covers: 256,
    max_choices: 256,
};

fn small_instance(seed: u64) -> Option<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9));
    let plant_states = rng.gen_range(1..=4);
    let spec_states = rng.gen_range(1..=4);
    let params = RandomParams {
        plant_states,
        spec_states,
        uc_events: 1,
        c_events: 1,
        unobservable_events: 0,
        plant_density: rng.gen_range(0.15..0.45),
        spec_density: rng.gen_range(0.25..0.55),
        plant_initial: rng.gen_range(1..=plant_states.min(2)),
        spec_initial: rng.gen_range(1..=spec_states.min(2)),
    };
    simctl_core::random::generate_uc_simulated(&params, seed, 400)
        .ok()
        .map(|(g, r, _)| Instance { seed, g, r })
}

fn permissiveness() -> Permissiveness {
    let mut p = Permissiveness {
        instances: 0,
        small_skipped: 0,
        enumerated: 0,
        sp_members: 0,
        distinct_loops: 0,
        takai_failures: Vec::new(),
        pruned_failures: Vec::new(),
        pruned_not_in_sp: Vec::new(),
        spot_members: 0,
        spot_instances: 0,
        spot_takai_failures: Vec::new(),
        spot_pruned_failures: Vec::new(),
    };
    let alphabet = Alphabet::new([EventDecl::c("c0"), EventDecl::uc("u0")]).unwrap();
    let supervisors = small_supervisors(&alphabet, 3);
    p.enumerated = supervisors.len();

    let mut seed = 1;
    while p.instances < SMALL_INSTANCES {
        let Some(inst) = small_instance(seed) else {
            seed += 1;
            continue;
        };
        seed += 1;
        let ctx = Context::with_limits(&inst.g, &inst.r, SMALL_LIMITS).unwrap();
        let takai = match build(&ctx, Variant::Takai) {
            Ok(takai) => takai,
            Err(Error::Guard { .. }) => {
                p.small_skipped += 1;
                continue;
            }
            Err(e) => panic!("small seed {}: {e}", inst.seed),
        };
        let pruned = prune_deadlocks(&takai);
        if !in_sp(pruned.automaton(), &inst.g, &inst.r).unwrap() {
            p.pruned_not_in_sp.push(format!("small seed {}", inst.seed));
        }
        let takai_loop = ClosedLoop::new(takai.automaton(), &inst.g).unwrap();
        let pruned_loop = ClosedLoop::new(pruned.automaton(), &inst.g).unwrap();
        p.instances += 1;
        // Isomorphic closed loops get the same verdicts.
        let mut verdicts: HashMap<Vec<u32>, (bool, bool)> = HashMap::new();
        for (i, s) in supervisors.iter().enumerate() {
            if !in_sp(s, &inst.g, &inst.r).unwrap() {
                continue;
            }
            p.sp_members += 1;
            let closed = ClosedLoop::new(s, &inst.g).unwrap();
            let key = loop_key(closed.product());
            let (below_takai, below_pruned) = match verdicts.get(&key) {
                Some(&v) => v,
                None => {
                    let v = (
                        closed.is_simulated_by(&takai_loop).unwrap(),
                        closed.is_simulated_by(&pruned_loop).unwrap(),
                    );
                    verdicts.insert(key, v);
                    v
                }
            };
            if !below_takai {
                p.takai_failures.push(format!("small seed {} supervisor #{i}", inst.seed));
            }
            if !below_pruned {
                p.pruned_failures.push(format!("small seed {} supervisor #{i}", inst.seed));
            }
        }
        p.distinct_loops += verdicts.len();
    }

    // Spot checks on larger instances with larger random supervisors.
    let mut seed = 10_000;
    while p.spot_members < 200 {
        let inst = uc_instances(seed, 1, 6).pop().unwrap();
        seed = inst.seed + 1;
        if inst.g.num_states() < 4 {
            continue;
        }
        let ctx = Context::with_limits(&inst.g, &inst.r, SUITE_LIMITS).unwrap();
        let Ok(takai) = build(&ctx, Variant::Takai) else {
            continue;
        };
        let pruned = prune_deadlocks(&takai);
        p.spot_instances += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(inst.seed);
        let mut found = 0;
        for _ in 0..400 {
            let s = spot_candidate(&inst.g, takai.automaton(), &mut rng);
            if !in_sp(&s, &inst.g, &inst.r).unwrap() {
                continue;
            }
            found += 1;
            p.spot_members += 1;
            if !more_permissive(&s, takai.automaton(), &inst.g).unwrap() {
                p.spot_takai_failures.push(format!("spot seed {}", inst.seed));
            }
            if !more_permissive(&s, pruned.automaton(), &inst.g).unwrap() {
                p.spot_pruned_failures.push(format!("spot seed {}", inst.seed));
            }
            if found == 10 {
                break;
            }
        }
    }
    p
}

/// Encoding of a closed loop up to renaming of its states: states are
/// numbered in breadth-first order and described by their plant
/// component and numbered successors. Equal keys mean isomorphic loops.
fn loop_key(product: &Product) -> Vec<u32> {
    let a = &product.automaton;
    let plant_of = |s: StateId| product.components(s).1.index() as u32;
    let mut number: HashMap<StateId, u32> = HashMap::new();
    let mut order: Vec<StateId> = Vec::new();
    let mut initial: Vec<StateId> = a.initial().to_vec();
    initial.sort_by_key(|&s| plant_of(s));
    for s in initial {
        number.insert(s, order.len() as u32);
        order.push(s);
    }
    let mut key = vec![a.num_states() as u32, order.len() as u32];
    let mut next = 0;
    while next < order.len() {
        let s = order[next];
        next += 1;
        key.push(plant_of(s));
        for e in a.alphabet().ids() {
            let mut succ: Vec<StateId> = a.successors(s, e).to_vec();
            succ.sort_by_key(|&t| plant_of(t));
            let mut ids: Vec<u32> = succ
                .into_iter()
                .map(|t| {
                    *number.entry(t).or_insert_with(|| {
                        order.push(t);
                        order.len() as u32 - 1
                    })
                })
                .collect();
            ids.sort_unstable();
            key.push(u32::MAX);
            key.extend(ids);
        }
    }
    key
}

/// A random supervisor: either a fresh random automaton with 2 to 5
/// states, or the plant or the built supervisor with a random subset of
/// edges removed.
fn spot_candidate(g: &Automaton, built: &Automaton, rng: &mut ChaCha8Rng) -> Automaton {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=5);
            let density = rng.gen_range(0.2..0.7);
            let init = rng.gen_range(1..=2.min(n));
            random_automaton(g.alphabet(), n, init, density, "s", rng)
        }
        source => {
            let base = if source == 1 { g } else { built };
            let keep = rng.gen_range(0.5..1.0);
            let edges: Vec<(usize, EventId, usize)> = base
                .transitions()
                .filter(|_| rng.gen_bool(keep))
                .map(|(s, e, t)| (s.index(), e, t.index()))
                .collect();
            let names = (0..base.num_states()).map(|i| format!("s{i}")).collect();
            Automaton::from_indexed(
                base.alphabet().clone(),
                names,
                base.initial().iter().map(|x| x.index()),
                edges,
            )
            .unwrap()
        }
    }
}

fn c6(p: &Permissiveness) -> Outcome {
    let ok = p.takai_failures.is_empty() && p.spot_takai_failures.is_empty() && p.spot_members >= 200;
    (
        ok,
        format!(
            "{} small instances ({} guard-tripped skipped) x {} enumerated supervisors: {} SP members ({} distinct closed loops), {} failures; \
             {} spot-check SP members over {} larger instances, {} failures",
            p.instances,
            p.small_skipped,
            p.enumerated,
            p.sp_members,
            p.distinct_loops,
            p.takai_failures.len(),
            p.spot_members,
            p.spot_instances,
            p.spot_takai_failures.len()
        ),
    )
}

fn c7(suite: &[Built], p: &Permissiveness) -> Outcome {
    let not_sp: Vec<u64> = suite
        .iter()
        .filter(|b| !in_sp(b.pruned.automaton(), &b.inst.g, &b.inst.r).unwrap())
        .map(|b| b.inst.seed)
        .collect();
    let ok = not_sp.is_empty()
        && p.pruned_not_in_sp.is_empty()
        && p.pruned_failures.is_empty()
        && p.spot_pruned_failures.is_empty()
        && p.spot_members >= 200;
    (
        ok,
        format!(
            "pruned build in SP on {} + {} instances ({} failures); \
             permissiveness {} exhaustive + {} spot-check failures",
            suite.len(),
            p.instances,
            not_sp.len() + p.pruned_not_in_sp.len(),
            p.pruned_failures.len(),
            p.spot_pruned_failures.len()
        ),
    )
}

fn c8(suite: &[Built]) -> Outcome {
    let mut failures = Vec::new();
    for b in suite {
        let ctx = Context::new(&b.inst.g, &b.inst.r).unwrap();
        let report = check_saturated(&b.takai, &ctx).unwrap();
        if report.verdict != GrVerdict::Saturated {
            failures.push((b.inst.seed, report.failures.first().map(|f| f.detail.clone())));
        }
    }
    (
        failures.is_empty(),
        format!(
            "{} instances, {} not saturated {:?}",
            suite.len(),
            failures.len(),
            failures.first()
        ),
    )
}

type EdgeSet = BTreeSet<(PowerState, EventId, PowerState)>;

fn edge_set(s: &Supervisor<PowerState>) -> EdgeSet {
    s.edges()
        .map(|(a, e, b)| (a.clone(), e, b.clone()))
        .collect()
}

fn c9(suite: &[Built]) -> Outcome {
    let mut v2_diff = Vec::new();
    let mut v1_missing = Vec::new();
    let mut strict = 0;
    let mut literal = LiteralN::default();
    for b in suite {
        let same_states = b.variant2.payloads().iter().collect::<HashSet<_>>()
            == b.takai.payloads().iter().collect::<HashSet<_>>();
        let initial = |s: &Supervisor<PowerState>| -> BTreeSet<PowerState> {
            s.automaton()
                .initial()
                .iter()
                .map(|&i| s.payload(i).clone())
                .collect()
        };
        if !same_states
            || edge_set(&b.variant2) != edge_set(&b.takai)
            || initial(&b.variant2) != initial(&b.takai)
        {
            v2_diff.push(b.inst.seed);
        }
        let (t, v1) = (edge_set(&b.takai), edge_set(&b.variant1));
        if !t.is_subset(&v1) {
            v1_missing.push(b.inst.seed);
        }
        if t.len() < v1.len() {
            strict += 1;
        }
        literal_n_check(b, &mut literal);
    }
    (
        v2_diff.is_empty() && v1_missing.is_empty() && literal.failures == 0,
        format!(
            "{} instances: variant2 differs on {}, variant1 misses takai edges on {} \
             (variant1 strictly larger on {strict}); literal N(W,σ) enumeration at {} \
             reachable (W,σ): {} members without a minimal member below, {} mismatches",
            suite.len(),
            v2_diff.len(),
            v1_missing.len(),
            literal.checked,
            literal.unbounded,
            literal.failures
        ),
    )
}

#[derive(Default)]
struct LiteralN {
    checked: usize,
    unbounded: usize,
    failures: usize,
}

/// Enumerates `N(W,σ)` by brute force at every reachable `(W,σ)` of the
/// variant-2 build with at most 14 candidate pairs, and checks that the
/// build's `σ`-targets of `W` are exactly the members that are minimal or
/// have no minimal member below them, and that variant 1 targets all of
/// `N(W,σ)`.
fn literal_n_check(b: &Built, out: &mut LiteralN) {
    let (g, r) = (&b.inst.g, &b.inst.r);
    let winning = relation_pairs(&greatest_uc_fixpoint(g, r));
    let ctx = Context::with_limits(g, r, SUITE_LIMITS).unwrap();
    let a = b.variant2.automaton();
    for &s in a.reachable().states() {
        let w = b.variant2.payload(s);
        let wp = to_pairset(w);
        for e in g.alphabet().ids() {
            if !ctx.enabled(w, e) || ctx.cover_family(w, e).candidates.len() > 14 {
                continue;
            }
            out.checked += 1;
            let family = naive_n_set(g, r, &winning, &wp, e.index());
            let minimal = minimal_of(&family);
            let unbounded: Vec<&PairSet> = family
                .iter()
                .filter(|m| !minimal.iter().any(|n| n.is_subset(m)))
                .collect();
            out.unbounded += unbounded.len();
            let mut want: Vec<PairSet> = minimal.iter().chain(unbounded).cloned().collect();
            want.sort();
            let mut got: Vec<PairSet> = a
                .successors(s, e)
                .iter()
                .map(|&t| to_pairset(b.variant2.payload(t)))
                .collect();
            got.sort();
            let v1_state = b.variant1.find(w);
            let mut v1_got: Vec<PairSet> = v1_state
                .map(|v| {
                    b.variant1
                        .automaton()
                        .successors(v, e)
                        .iter()
                        .map(|&t| to_pairset(b.variant1.payload(t)))
                        .collect()
                })
                .unwrap_or_default();
            v1_got.sort();
            if got != want || (v1_state.is_some() && v1_got != family) {
                out.failures += 1;
            }
        }
    }
}

fn random_relation(g: &Automaton, r: &Automaton, rng: &mut ChaCha8Rng) -> Relation {
    let density = rng.gen_range(0.0..=1.0);
    let mut rel = Relation::empty(g.num_states(), r.num_states());
    for x in g.state_ids() {
        for z in r.state_ids() {
            if rng.gen_bool(density) {
                rel.insert(x, z);
            }
        }
    }
    rel
}

fn c10(suite: &[Built]) -> Outcome {
    let mut mismatches = 0;
    let mut fixpoints = 0;
    let mut total = 0;
    let mut obs_mismatch = 0;
    let mut obs_checks = 0;
    for b in suite {
        let (g, r) = (&b.inst.g, &b.inst.r);
        let mut rng = ChaCha8Rng::seed_from_u64(b.inst.seed);
        for i in 0..500 {
            let mut phi = random_relation(g, r, &mut rng);
            if i % 2 == 1 {
                // descend to the greatest fixpoint below a random start
                loop {
                    let next = f_step(g, r, &phi);
                    if next == phi {
                        break;
                    }
                    phi = next;
                }
            }
            let is_fix = f_step(g, r, &phi) == phi;
            let verifier = transfer_violation(&phi, g, r, SimMode::UcOnly).is_none();
            let oracle = naive_is_transfer_closed(g, r, &relation_pairs(&phi), true);
            total += 1;
            fixpoints += usize::from(is_fix);
            if is_fix != verifier || is_fix != oracle {
                mismatches += 1;
            }
        }
        let ctx = Context::new(g, r).unwrap();
        for s in [&b.takai, &b.variant1] {
            let reach = s.automaton().reachable();
            for &st in reach.states() {
                let w = s.payload(st);
                for e in g.alphabet().ids() {
                    obs_checks += 1;
                    if ctx.clause_b(w, e) != ctx.clause_b_simplified(w, e) {
                        obs_mismatch += 1;
                    }
                }
            }
        }
    }
    (
        mismatches == 0 && obs_mismatch == 0,
        format!(
            "{total} relations ({fixpoints} fixpoints), {mismatches} disagreements; \
             clause (b) vs simplification at {obs_checks} reachable (W,σ): {obs_mismatch} differ"
        ),
    )
}

fn c11(suite: &[Built]) -> Outcome {
    const DEPTH: usize = 8;
    let mut failures = Vec::new();
    let mut visited_total = 0;
    for b in suite {
        let g = &b.inst.g;
        for s in [&b.takai, &b.variant1, &b.variant2, &b.pruned] {
            let a = s.automaton();
            let x0: BTreeSet<StateId> = g.initial().iter().copied().collect();
            let mut seen: HashSet<(StateId, BTreeSet<StateId>)> = HashSet::new();
            let mut queue: VecDeque<(StateId, BTreeSet<StateId>, Vec<EventId>)> = a
                .initial()
                .iter()
                .map(|&i| (i, x0.clone(), Vec::new()))
                .collect();
            while let Some((st, reach, word)) = queue.pop_front() {
                if !seen.insert((st, reach.clone())) {
                    continue;
                }
                visited_total += 1;
                let proj = pi_g(s.payload(st).iter());
                if proj != reach || g.reach_via(&word) != reach {
                    failures.push((b.inst.seed, s.tag().to_string(), word.len()));
                    continue;
                }
                if word.len() == DEPTH {
                    continue;
                }
                for e in a.alphabet().ids() {
                    for &t in a.successors(st, e) {
                        let mut w = word.clone();
                        w.push(e);
                        queue.push_back((t, g.post(&reach, e), w));
                    }
                }
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "{} instances x 4 builds, {visited_total} (state, trace) classes up to depth {DEPTH}, \
             {} mismatches {:?}",
            suite.len(),
            failures.len(),
            failures.first()
        ),
    )
}

fn c12(suite: &[Built]) -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for b in suite {
        let (g, r) = (&b.inst.g, &b.inst.r);
        if g.alphabet().unobservable().next().is_some() {
            continue;
        }
        let ctx = Context::new(g, r).unwrap();
        let partial = match build_partial(&ctx) {
            Ok(p) => p,
            Err(Error::Guard { .. }) => continue,
            Err(e) => panic!("seed {}: {e}", b.inst.seed),
        };
        checked += 1;
        let mut map: BTreeMap<StateId, StateId> = BTreeMap::new();
        let mut ok = true;
        for y in partial.automaton().state_ids() {
            let t = partial.payload(y);
            if !t.gamma.is_empty() || t.w1 != t.w2 {
                ok = false;
                break;
            }
            match b.takai.find(&t.w1) {
                Some(w) => {
                    map.insert(y, w);
                }
                None => ok = false,
            }
        }
        let images: BTreeSet<StateId> = map.values().copied().collect();
        ok &= images.len() == partial.automaton().num_states()
            && images.len() == b.takai.automaton().num_states();
        if ok {
            let init_p: BTreeSet<StateId> =
                partial.automaton().initial().iter().map(|y| map[y]).collect();
            let init_t: BTreeSet<StateId> = b.takai.automaton().initial().iter().copied().collect();
            let edges_p: BTreeSet<(StateId, EventId, StateId)> = partial
                .automaton()
                .transitions()
                .map(|(s, e, t)| (map[&s], e, map[&t]))
                .collect();
            let edges_t: BTreeSet<_> = b.takai.automaton().transitions().collect();
            ok = init_p == init_t && edges_p == edges_t;
        }
        if !ok {
            failures.push(b.inst.seed);
        }
    }
    (
        failures.is_empty() && checked > 0,
        format!(
            "{checked} all-observable instances, {} not isomorphic {:?}",
            failures.len(),
            failures.first()
        ),
    )
}

fn c13() -> Outcome {
    let mut disagreements = Vec::new();
    let mut holds = [0usize; 2];
    for seed in 0..1000u64 {
        let inst = any_instance(50_000 + seed, 6);
        for (k, (mode, uc_only)) in [(SimMode::Full, false), (SimMode::UcOnly, true)]
            .into_iter()
            .enumerate()
        {
            let got = check_simulation(&inst.g, &inst.r, mode).unwrap();
            let oracle_rel = naive_greatest(&inst.g, &inst.r, uc_only);
            let oracle = naive_simulates(&inst.g, &inst.r, uc_only);
            let worklist = relation_pairs(&greatest_fixpoint_worklist(&inst.g, &inst.r, mode));
            let agree = match &got {
                Some(rel) => oracle && relation_pairs(rel) == oracle_rel,
                None => !oracle,
            } && worklist == oracle_rel
                && simulates(&inst.g, &inst.r, mode).unwrap() == oracle;
            holds[k] += usize::from(oracle);
            if !agree {
                disagreements.push((inst.seed, mode));
            }
        }
    }
    (
        disagreements.is_empty(),
        format!(
            "1000 instances x 2 modes ({} simulated, {} uc-simulated), {} disagreements {:?}",
            holds[0],
            holds[1],
            disagreements.len(),
            disagreements.first()
        ),
    )
}

fn run(n: u32, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let (ok, detail) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(o) => o,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        }
    };
    println!(
        "criterion {n:>2}: {} ({:.1}s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    ok
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let start = Instant::now();
    let (suite, skipped) = suite();
    println!(
        "suite: {} instances ({skipped} skipped by guards) in {:.1}s",
        suite.len(),
        start.elapsed().as_secs_f64()
    );
    let mut ok = true;
    ok &= run(1, c1);
    ok &= run(2, c2);
    ok &= run(3, c3);
    ok &= run(4, c4);
    ok &= run(5, || c5(&suite, skipped));
    let p_start = Instant::now();
    let perm = catch_unwind(permissiveness);
    println!(
        "permissiveness runs: {:.1}s",
        p_start.elapsed().as_secs_f64()
    );
    match &perm {
        Ok(p) => {
            ok &= run(6, || c6(p));
            ok &= run(7, || c7(&suite, p));
        }
        Err(_) => {
            ok &= run(6, || (false, "permissiveness run panicked".into()));
            ok &= run(7, || (false, "permissiveness run panicked".into()));
        }
    }
    ok &= run(8, || c8(&suite));
    ok &= run(9, || c9(&suite));
    ok &= run(10, || c10(&suite));
    ok &= run(11, || c11(&suite));
    ok &= run(12, || c12(&suite));
    ok &= run(13, c13);
    println!(
        "acceptance: {} in {:.1}s",
        if ok { "all criteria pass" } else { "FAILURES" },
        start.elapsed().as_secs_f64()
    );
    if !ok {
        std::process::exit(1);
    }
}

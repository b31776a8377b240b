use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context as _, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use simctl_core::dot::to_dot;
use simctl_core::format::{parse, serialize};
use simctl_core::gr_check::{check_saturated, GrReport};
use simctl_core::partial::{build_partial, is_admissible_partial, PartialWitness, TripleDoc};
use simctl_core::random::{generate, generate_uc_simulated, RandomParams};
use simctl_core::simulation::{check_simulation, greatest_fixpoint_worklist, greatest_uc_fixpoint};
use simctl_core::synthesis::{build, is_admissible, prune_deadlocks, AdmissibilityWitness, Context, Variant};
use simctl_core::{compose as compose_automata, in_sp, more_permissive, Automaton, Limits, ProductMode};
use simctl_core::{RelationDoc, SimMode, Supervisor};

use crate::config::{Format, RunConfig};
use crate::{ModeArg, VariantArg, EXIT_FAILS};

fn load(path: &Path) -> Result<Automaton> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sha256(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn json(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        EXIT_FAILS
    }
}

fn text_or_json(cfg: &RunConfig, command: &str) -> Result<()> {
    if cfg.format == Format::Dot {
        bail!("`{command}` has no DOT output");
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckDoc {
    mode: &'static str,
    holds: bool,
    uncovered_initial: Option<String>,
    greatest: RelationDoc,
    winning: Option<RelationDoc>,
}

pub fn check(cfg: &RunConfig, plant: &Path, spec: &Path, mode: ModeArg) -> Result<u8> {
    text_or_json(cfg, "check")?;
    let (g, r) = (load(plant)?, load(spec)?);
    let (mode, mode_name) = match mode {
        ModeArg::Uc => (SimMode::UcOnly, "uc"),
        ModeArg::Full => (SimMode::Full, "full"),
    };
    let holds = check_simulation(&g, &r, mode)?.is_some();
    let greatest = greatest_fixpoint_worklist(&g, &r, mode);
    let uncovered = g
        .initial()
        .iter()
        .find(|&&x0| !r.initial().iter().any(|&z0| greatest.contains(x0, z0)))
        .map(|&x0| g.state_name(x0).to_string());
    let winning = greatest_uc_fixpoint(&g, &r);
    let uc_holds = g
        .initial()
        .iter()
        .all(|&x0| r.initial().iter().any(|&z0| winning.contains(x0, z0)));
    let doc = CheckDoc {
        mode: mode_name,
        holds,
        uncovered_initial: uncovered,
        greatest: greatest.to_doc(&g, &r, "plant", "spec"),
        winning: uc_holds.then(|| winning.to_doc(&g, &r, "plant", "spec")),
    };
    if cfg.format == Format::Json {
        print!("{}", json(&doc)?);
        return Ok(code(holds));
    }
    let rel = if mode == SimMode::UcOnly { "G ⊑_uc R" } else { "G ⊑ R" };
    println!("{rel}: {}", if holds { "holds" } else { "fails" });
    if let Some(x0) = &doc.uncovered_initial {
        println!("initial plant state {x0} has no related initial spec state");
    }
    println!("greatest relation ({} pairs): {}", greatest.len(), greatest.render(&g, &r));
    if uc_holds {
        println!("W^↑ ({} pairs): {}", winning.len(), winning.render(&g, &r));
    }
    Ok(code(holds))
}

pub struct SynthesizeArgs {
    pub plant: PathBuf,
    pub spec: PathBuf,
    /// `None` selects the partial-observation construction.
    pub variant: Option<VariantArg>,
    pub prune: bool,
    pub output: Option<PathBuf>,
    pub sidecar: Option<PathBuf>,
    pub dot: Option<PathBuf>,
}

#[derive(Serialize)]
struct TripleEntry {
    state: String,
    #[serde(flatten)]
    triple: TripleDoc,
}

#[derive(Serialize)]
struct Sidecar {
    construction_tag: String,
    plant_sha256: String,
    spec_sha256: String,
    winning_sha256: String,
    limits: Limits,
    states: usize,
    transitions: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    triples: Option<Vec<TripleEntry>>,
}

pub fn synthesize(cfg: &RunConfig, args: &SynthesizeArgs) -> Result<u8> {
    let (g, r) = (load(&args.plant)?, load(&args.spec)?);
    let ctx = Context::with_limits(&g, &r, cfg.limits)?;
    ctx.ensure_uc_simulated()?;
    let (automaton, tag, triples) = match args.variant {
        Some(v) => {
            let variant = match v {
                VariantArg::Takai => Variant::Takai,
                VariantArg::Variant1 => Variant::Variant1,
                VariantArg::Variant2 => Variant::Variant2,
            };
            let mut sup = build(&ctx, variant)?;
            if args.prune {
                sup = prune_deadlocks(&sup);
            }
            (sup.automaton().clone(), sup.tag().to_string(), None)
        }
        None => {
            let mut sup = build_partial(&ctx)?;
            if args.prune {
                sup = prune_deadlocks(&sup);
            }
            let a = sup.automaton();
            let triples = a
                .state_ids()
                .map(|s| TripleEntry {
                    state: a.state_name(s).to_string(),
                    triple: sup.payload(s).to_doc(&g, &r),
                })
                .collect();
            (a.clone(), sup.tag().to_string(), Some(triples))
        }
    };
    let text = format!("# construction: {tag}\n{}", serialize(&automaton));
    write_out(args.output.as_deref(), &text)?;

    let sidecar_path = args
        .sidecar
        .clone()
        .or_else(|| args.output.as_ref().map(|o| PathBuf::from(format!("{}.json", o.display()))));
    if let Some(path) = sidecar_path {
        let doc = Sidecar {
            construction_tag: tag.clone(),
            plant_sha256: sha256(&serialize(&g)),
            spec_sha256: sha256(&serialize(&r)),
            winning_sha256: sha256(&ctx.winning().render(&g, &r)),
            limits: cfg.limits,
            states: automaton.num_states(),
            transitions: automaton.num_transitions(),
            triples,
        };
        fs::write(&path, json(&doc)?).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.dot {
        fs::write(path, to_dot(&automaton, &tag, cfg.dot_width))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(out) = &args.output {
        println!(
            "{tag}: {} states, {} transitions -> {}",
            automaton.num_states(),
            automaton.num_transitions(),
            out.display()
        );
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyDoc {
    admissible: bool,
    admissibility_witness: Option<AdmissibilityWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial_admissible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partial_witness: Option<PartialWitness>,
    in_sp: bool,
    uc_simulated: bool,
    gr_report: Option<GrReport>,
    /// `built||G ⊑ S||G`.
    built_below_supervisor: Option<bool>,
    /// `S||G ⊑ built||G`.
    supervisor_below_built: Option<bool>,
    maximally_permissive: bool,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn verify(cfg: &RunConfig, supervisor: &Path, plant: &Path, spec: &Path) -> Result<u8> {
    text_or_json(cfg, "verify")?;
    let (s, g, r) = (load(supervisor)?, load(plant)?, load(spec)?);
    let ctx = Context::with_limits(&g, &r, cfg.limits)?;
    s.alphabet().ensure_same(g.alphabet())?;
    let adm = is_admissible(&s, &g)?;
    let partial = if g.alphabet().unobservable().next().is_some() {
        Some(is_admissible_partial(&s, &g)?)
    } else {
        None
    };
    let sp = in_sp(&s, &g, &r)?;
    let gr_report = match Supervisor::from_automaton(s.clone(), &g, &r) {
        Ok(sup) => Some(check_saturated(&sup, &ctx)?),
        Err(_) => None,
    };
    let (built_below, below_built) = if ctx.is_uc_simulated() {
        let built = build(&ctx, Variant::Takai)?;
        (
            Some(more_permissive(built.automaton(), &s, &g)?),
            Some(more_permissive(&s, built.automaton(), &g)?),
        )
    } else {
        (None, None)
    };
    let msp = sp && built_below == Some(true);
    let doc = VerifyDoc {
        admissible: adm.holds(),
        admissibility_witness: adm.witness().cloned(),
        partial_admissible: partial.as_ref().map(|v| v.holds()),
        partial_witness: partial.as_ref().and_then(|v| v.witness().cloned()),
        in_sp: sp,
        uc_simulated: ctx.is_uc_simulated(),
        gr_report,
        built_below_supervisor: built_below,
        supervisor_below_built: below_built,
        maximally_permissive: msp,
    };
    let all_pass = doc.admissible && doc.partial_admissible != Some(false) && msp;
    if cfg.format == Format::Json {
        print!("{}", json(&doc)?);
        return Ok(code(all_pass));
    }
    let mut out = String::new();
    write!(out, "admissible: {}", yes_no(doc.admissible))?;
    if let Some(w) = &doc.admissibility_witness {
        write!(
            out,
            " (at ({},{}) the plant can fire uncontrollable {} but the supervisor does not enable it)",
            w.supervisor_state, w.plant_state, w.event
        )?;
    }
    out.push('\n');
    if let Some(ok) = doc.partial_admissible {
        write!(out, "admissible under partial observation: {}", yes_no(ok))?;
        if let Some(PartialWitness::Unobservable {
            supervisor_state,
            plant_state,
            event,
            target,
        }) = &doc.partial_witness
        {
            write!(
                out,
                " (at ({supervisor_state},{plant_state}) unobservable {event} moves the supervisor to {target})"
            )?;
        }
        out.push('\n');
    }
    writeln!(out, "in SP(G,R): {}", yes_no(doc.in_sp))?;
    match &doc.gr_report {
        Some(rep) => {
            writeln!(out, "(G,R)-automaton clauses:")?;
            for line in rep.table().lines() {
                writeln!(out, "  {line}")?;
            }
        }
        None => writeln!(out, "(G,R)-automaton clauses: skipped (state names are not pair sets)")?,
    }
    match (built_below, below_built) {
        (Some(a), Some(b)) => {
            writeln!(out, "built||G ⊑ S||G: {}", yes_no(a))?;
            writeln!(out, "S||G ⊑ built||G: {}", yes_no(b))?;
        }
        _ => writeln!(out, "permissiveness: skipped (G ⊑_uc R fails)")?,
    }
    writeln!(out, "maximally permissive: {}", yes_no(msp))?;
    print!("{out}");
    Ok(code(all_pass))
}

pub fn compose(cfg: &RunConfig, left: &Path, right: &Path, full: bool, output: Option<&Path>) -> Result<u8> {
    let (s, g) = (load(left)?, load(right)?);
    let mode = if full { ProductMode::Full } else { ProductMode::Reachable };
    let product = compose_automata(&s, &g, mode)?;
    let text = match cfg.format {
        Format::Text => serialize(&product.automaton),
        Format::Dot => to_dot(&product.automaton, "product", cfg.dot_width),
        Format::Json => bail!("`compose` has no JSON output"),
    };
    write_out(output, &text)?;
    Ok(0)
}

pub fn random(cfg: &RunConfig, params: &RandomParams, out_dir: &Path, max_attempts: Option<usize>) -> Result<u8> {
    let seed = cfg.seed.unwrap_or(0);
    let (g, r, attempts) = match max_attempts {
        Some(n) => generate_uc_simulated(params, seed, n)?,
        None => {
            let (g, r) = generate(params, seed)?;
            (g, r, 1)
        }
    };
    fs::create_dir_all(out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
    for (name, a) in [("plant", &g), ("spec", &r)] {
        let path = out_dir.join(format!("{name}.aut"));
        let text = format!("# random {name}, seed {seed}\n{}", serialize(a));
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        println!("{name}: {}", path.display());
    }
    if max_attempts.is_some() {
        println!("draws: {attempts}");
    }
    Ok(0)
}

pub fn export_dot(cfg: &RunConfig, path: &Path, name: Option<String>, output: Option<&Path>) -> Result<u8> {
    let a = load(path)?;
    let name = name.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "automaton".into())
    });
    write_out(output, &to_dot(&a, &name, cfg.dot_width))?;
    Ok(0)
}

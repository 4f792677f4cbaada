//! Implementation of the `desc` subcommands.
//!
//! Every command writes its report to the given writer and returns a
//! [`Status`]; errors are reserved for unusable input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use desc_core::oracle::{
    bounded_language, brute_controllability_violation, brute_observer_violation,
    brute_occ_violation, brute_sup_c_bounded,
};
use desc_core::{
    is_controllable, project_onto, sup_c, sync_all, Error, Generator, Local, PropertyReport, Word,
};
use serde::Serialize;

use crate::format::{read_generator, write_generator};
use crate::project::{Coordination, Project};

/// Outcome of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// All checks hold, or the synthesis succeeded.
    Success,
    /// A check failed (with a counterexample) or a precondition was violated.
    Failed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failed => 1,
        }
    }

    fn and(self, other: Status) -> Status {
        if self == Status::Success {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub json: bool,
    /// Cross-check results against the bounded brute-force oracle.
    pub oracle_bound: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Controllability,
    Conddec,
    Condindep,
    Condctrl,
    Observer,
    Occ,
    Optimality,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SynthMode {
    Supc,
    Supcc,
    Supervisors,
}

#[derive(Serialize)]
struct Record<'a> {
    check: &'a str,
    holds: bool,
    counterexample: Option<Vec<&'a str>>,
    detail: &'a str,
}

fn emit(out: &mut dyn Write, opts: &Options, check: &str, r: &PropertyReport) -> Result<Status> {
    if opts.json {
        let rec = Record {
            check,
            holds: r.holds,
            counterexample: r
                .counterexample
                .as_ref()
                .map(|w| w.events().iter().map(|e| e.name()).collect()),
            detail: &r.detail,
        };
        writeln!(out, "{}", serde_json::to_string(&rec)?)?;
    } else {
        writeln!(out, "{check}: {r}")?;
    }
    Ok(if r.holds {
        Status::Success
    } else {
        Status::Failed
    })
}

/// Compares a production counterexample with the oracle's, both restricted
/// to what the bound can see.
fn oracle_agreement(
    out: &mut dyn Write,
    opts: &Options,
    check: &str,
    production: &PropertyReport,
    oracle: Option<Word>,
    visible: usize,
) -> Result<Status> {
    let expected = production
        .counterexample
        .clone()
        .filter(|w| w.len() <= visible);
    let r = if expected == oracle {
        PropertyReport::pass(format!("oracle agrees up to length {visible}"))
    } else {
        let w = oracle.or(expected).unwrap_or_default();
        PropertyReport::fail(w, "oracle disagrees")
    };
    emit(out, opts, &format!("oracle[{check}]"), &r)
}

pub fn check(
    project: &Project,
    which: CheckKind,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<Status> {
    let c = project.coordination()?;
    let p = &c.plant;
    let k = &c.spec;
    let eu = p.scheme().eu();
    let mut status = Status::Success;
    match which {
        CheckKind::Controllability => {
            let r = is_controllable(k, p.global(), &eu)?;
            status = emit(out, opts, "controllability", &r)?;
            if let Some(n) = opts.oracle_bound {
                let o = brute_controllability_violation(
                    &bounded_language(k, n),
                    &bounded_language(p.global(), n),
                    &eu,
                );
                status = status.and(oracle_agreement(out, opts, "controllability", &r, o, n)?);
            }
        }
        CheckKind::Conddec => {
            let r = p.conditionally_decomposable(k)?;
            status = emit(out, opts, "conddec", &r)?;
        }
        CheckKind::Condindep => {
            let r = p.conditionally_independent()?;
            status = emit(out, opts, "condindep", &r)?;
        }
        CheckKind::Condctrl => {
            let r = match p.conditionally_controllable(k) {
                Ok(r) => r,
                Err(Error::Precondition { what, report }) => {
                    return emit(out, opts, &format!("precondition {what}"), &report);
                }
                Err(e) => return Err(e.into()),
            };
            for (name, clause) in r.clauses() {
                status = status.and(emit(out, opts, &format!("condctrl ({name})"), clause)?);
            }
        }
        CheckKind::Observer | CheckKind::Occ => {
            let prefix = if which == CheckKind::Observer {
                "observer"
            } else {
                "occ"
            };
            let ek = p.scheme().ek().event_set();
            for (name, r) in p.observer_occ_reports()? {
                if !name.starts_with(prefix) {
                    continue;
                }
                status = status.and(emit(out, opts, &name, &r)?);
                if let Some(n) = opts.oracle_bound {
                    let i = if name.ends_with("[1]") {
                        Local::One
                    } else {
                        Local::Two
                    };
                    let inv = p.local_inverse(i);
                    let (o, visible) = if which == CheckKind::Observer {
                        (brute_observer_violation(&inv, &ek, n), n + 1)
                    } else {
                        (
                            brute_occ_violation(&inv, &ek, &p.scheme().local_k_u(i), n),
                            n,
                        )
                    };
                    status = status.and(oracle_agreement(out, opts, &name, &r, o, visible)?);
                }
            }
        }
        CheckKind::Optimality => {
            let r = p.check_optimality_conditions()?;
            status = emit(out, opts, "optimality", &r)?;
        }
    }
    Ok(status)
}

fn summary(
    out: &mut dyn Write,
    opts: &Options,
    label: &str,
    g: &Generator,
    path: &Path,
) -> Result<()> {
    if opts.json {
        let v = serde_json::json!({
            "output": label,
            "states": g.state_count(),
            "transitions": g.transition_count(),
            "empty": g.is_empty_language(),
            "file": path.display().to_string(),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(
            out,
            "{label}: {} states, {} transitions -> {}",
            g.state_count(),
            g.transition_count(),
            path.display()
        )?;
    }
    Ok(())
}

fn write_outputs(
    dir: &Path,
    outputs: &[(&str, &Generator)],
    opts: &Options,
    out: &mut dyn Write,
) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, g) in outputs {
        let path = dir.join(format!("{name}.json"));
        let canonical = g.canonical();
        write_generator(&path, name, &canonical)?;
        summary(out, opts, name, &canonical, &path)?;
    }
    Ok(())
}

fn precondition_failure(err: Error, opts: &Options, out: &mut dyn Write) -> Result<Status> {
    match err {
        Error::Precondition { what, report } => {
            emit(out, opts, &format!("precondition {what}"), &report)?;
            Ok(Status::Failed)
        }
        Error::Inadmissible(report) => {
            emit(out, opts, "admissibility", &report)?;
            Ok(Status::Failed)
        }
        e => Err(e.into()),
    }
}

fn flag(out: &mut dyn Write, opts: &Options, name: &str, value: bool) -> Result<()> {
    if opts.json {
        writeln!(out, "{}", serde_json::json!({ name: value }))?;
    } else {
        writeln!(out, "{name}: {value}")?;
    }
    Ok(())
}

pub fn synth(
    project: &Project,
    mode: SynthMode,
    dir: &Path,
    force: bool,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<Status> {
    let Coordination { plant, spec, .. } = project.coordination()?;
    let eu = plant.scheme().eu();
    match mode {
        SynthMode::Supc => {
            let s = sup_c(&spec, plant.global(), &eu)?;
            write_outputs(dir, &[("supc", &s)], opts, out)?;
            if let Some(n) = opts.oracle_bound {
                let o = brute_sup_c_bounded(&spec, plant.global(), &eu, n);
                let r = if bounded_language(&s, n) == o {
                    PropertyReport::pass(format!("oracle agrees up to length {n}"))
                } else {
                    let diff = bounded_language(&s, n)
                        .words()
                        .symmetric_difference(o.words())
                        .next()
                        .cloned()
                        .unwrap_or_default();
                    PropertyReport::fail(diff, "oracle disagrees")
                };
                return emit(out, opts, "oracle[supc]", &r);
            }
            Ok(Status::Success)
        }
        SynthMode::Supcc => {
            let r = match plant.sup_cc(&spec, force) {
                Ok(r) => r,
                Err(e) => return precondition_failure(e, opts, out),
            };
            write_outputs(
                dir,
                &[
                    ("sup_k", &r.sup_k),
                    ("sup_1k", &r.sup_1k),
                    ("sup_2k", &r.sup_2k),
                    ("composed", &r.composed),
                ],
                opts,
                out,
            )?;
            flag(out, opts, "certified", r.certified)?;
            if let Some(n) = opts.oracle_bound {
                let o = brute_controllability_violation(
                    &bounded_language(&r.composed, n),
                    &bounded_language(plant.global(), n),
                    &eu,
                );
                let r = match o {
                    None => {
                        PropertyReport::pass(format!("composed is controllable up to length {n}"))
                    }
                    Some(w) => PropertyReport::fail(w, "composed is not controllable"),
                };
                return emit(out, opts, "oracle[supcc]", &r);
            }
            Ok(Status::Success)
        }
        SynthMode::Supervisors => {
            let sups = match plant.synthesize_supervisors(&spec) {
                Ok(s) => s,
                Err(e) => return precondition_failure(e, opts, out),
            };
            let loops = match plant.closed_loops(&sups) {
                Ok(l) => l,
                Err(e) => return precondition_failure(e, opts, out),
            };
            write_outputs(
                dir,
                &[
                    ("s_k", sups.coordinator.realization()),
                    ("s_1", sups.local1.realization()),
                    ("s_2", sups.local2.realization()),
                ],
                opts,
                out,
            )?;
            let achieved = desc_core::language_equal(&loops.composed, &spec)?;
            flag(
                out,
                opts,
                "closed loop equals specification",
                achieved.holds,
            )?;
            Ok(if achieved.holds {
                Status::Success
            } else {
                Status::Failed
            })
        }
    }
}

/// Looks a generator up by name in the project, or reads it from a file.
pub fn lookup(project: Option<&Project>, name: &str) -> Result<(String, Generator)> {
    if let Some(g) = project.and_then(|p| p.generators.get(name)) {
        return Ok((name.to_string(), g.clone()));
    }
    let path = PathBuf::from(name);
    if path.is_file() {
        return read_generator(&path);
    }
    match project {
        Some(p) => bail!("unknown generator `{name}` in {}", p.path.display()),
        None => bail!("`{name}` is not a generator file (use -p to name a project)"),
    }
}

fn deliver(out: &mut dyn Write, output: Option<&Path>, name: &str, g: &Generator) -> Result<()> {
    match output {
        Some(path) => write_generator(path, name, g),
        None => {
            let text = crate::format::GeneratorFile::from_generator(name, g).to_json();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn compose(
    project: Option<&Project>,
    names: &[String],
    name: &str,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Status> {
    if names.is_empty() {
        bail!("compose needs at least one generator");
    }
    let gs = names
        .iter()
        .map(|n| lookup(project, n).map(|(_, g)| g))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&Generator> = gs.iter().collect();
    deliver(out, output, name, &sync_all(&refs)?)?;
    Ok(Status::Success)
}

pub fn project_cmd(
    project: Option<&Project>,
    source: &str,
    events: &[String],
    name: Option<&str>,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Status> {
    let (src_name, g) = lookup(project, source)?;
    let target = g.alphabet().resolve(events)?;
    let name = name.map(str::to_string).unwrap_or(src_name);
    deliver(out, output, &name, &project_onto(&g, &target))?;
    Ok(Status::Success)
}

pub fn info(
    project: Option<&Project>,
    name: &str,
    samples: usize,
    opts: &Options,
    out: &mut dyn Write,
) -> Result<Status> {
    let (name, g) = lookup(project, name)?;
    let names = |it: &mut dyn Iterator<Item = &desc_core::Event>| -> Vec<String> {
        it.map(|e| e.name().to_string()).collect()
    };
    let reachable = g.reachable_events();
    let words: Vec<String> = g
        .sample_words(samples)
        .iter()
        .map(Word::to_string)
        .collect();
    if opts.json {
        let v = serde_json::json!({
            "name": name,
            "controllable": names(&mut g.alphabet().controllable().iter()),
            "uncontrollable": names(&mut g.alphabet().uncontrollable().iter()),
            "reachable_events": names(&mut reachable.iter()),
            "states": g.state_count(),
            "transitions": g.transition_count(),
            "empty_language": g.is_empty_language(),
            "shortest_words": words,
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "name: {name}")?;
        writeln!(out, "alphabet: {}", g.alphabet())?;
        writeln!(
            out,
            "reachable events: {{{}}}",
            names(&mut reachable.iter()).join(", ")
        )?;
        writeln!(out, "states: {}", g.state_count())?;
        writeln!(out, "transitions: {}", g.transition_count())?;
        if g.is_empty_language() {
            writeln!(out, "language: empty")?;
        } else {
            writeln!(out, "shortest words: {}", words.join(" "))?;
        }
    }
    Ok(Status::Success)
}

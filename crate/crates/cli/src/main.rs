use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mfw_core::decide::{countermodel_search, frame_class_audit, SearchReport, Verdict};
use mfw_core::formula::{parse_with_axioms, Formula, TheoryName};
use mfw_core::frameclass::{classify, unravel, FrameClass};
use mfw_core::jankov::{
    button_names, classify_statement, jankov_fine, lattice_labels, linear_labels, prelattice_labels, switch_names,
    volume_levels, LabelAssignment, Simulation,
};
use mfw_core::kripke::{frame_valid_with, read_model, write_frame, write_model, Frame, Model, ValidityReport};
use mfw_core::suite;

#[derive(Parser)]
#[command(name = "mfw", version, about = "Modal frame workbench: Kripke models, frame classes and countermodels")]
struct Cli {
    /// Stable `key=value` output.
    #[arg(long, global = true)]
    porcelain: bool,
    /// Worker threads for searches (output does not depend on it).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Close loaded frames under a relation operation.
    #[arg(long, global = true, value_enum)]
    close: Option<Closure>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Closure {
    /// Reflexive-transitive closure.
    Rt,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelKind {
    Lattice,
    Prelattice,
    Linear,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it back.
    Parse {
        #[arg(long)]
        formula: String,
    },
    /// Evaluate a formula at a world of a model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        formula: String,
    },
    /// Check a formula against every valuation on a frame.
    FrameValid {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        formula: String,
        /// Largest number of valuation bits searched.
        #[arg(long, default_value_t = mfw_core::kripke::DEFAULT_VALUATION_BUDGET_BITS)]
        budget: usize,
    },
    /// Print the structural profile of a frame.
    Classify {
        #[arg(long)]
        frame: PathBuf,
    },
    /// Partially unravel a directed pre-order from a root.
    Unravel {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        root: String,
    },
    /// Print the Jankov-Fine formula of a frame.
    Jankov {
        #[arg(long)]
        frame: PathBuf,
    },
    /// Print a label assignment for a frame.
    Labels {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<LabelKind>,
        /// World whose label holds initially (defaults to the first minimal world).
        #[arg(long)]
        root: Option<String>,
        /// Number of switches (defaults to the fewest that suffice).
        #[arg(long)]
        switches: Option<usize>,
        /// Switch pattern given to the root, as a bit mask.
        #[arg(long, default_value_t = 0)]
        initial: u64,
        /// Comma-separated button names (defaults to b0, b1, ...).
        #[arg(long, value_delimiter = ',')]
        buttons: Option<Vec<String>>,
    },
    /// Check that a host simulates a model through a label file.
    Simulate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Say whether a formula is a button, a negated button or a switch.
    ClassifyStatement {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        at: Option<String>,
        #[arg(long)]
        formula: String,
    },
    /// Search for a countermodel in a complete frame class of a theory.
    Decide {
        #[arg(long)]
        theory: TheoryName,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        class: Option<FrameClass>,
    },
    /// Search every cataloged axiom against the frame class of a theory.
    Audit {
        #[arg(long)]
        theory: TheoryName,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        class: Option<FrameClass>,
    },
    /// Run the self-check suite.
    Suite {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

/// Result of a command: its output and whether it reports a falsification.
struct Outcome {
    text: String,
    falsified: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, falsified: false }
    }
}

fn formula(text: &str) -> Result<Formula> {
    parse_with_axioms(text).with_context(|| format!("invalid formula {text:?}"))
}

fn load(path: &Path, close: Option<Closure>) -> Result<(Model, Option<usize>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let file = read_model(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let model = match close {
        None => file.model,
        Some(Closure::Rt) => {
            let closed = file.model.frame().reflexive_transitive_closure();
            file.model
                .valuation()
                .iter()
                .fold(Model::new(closed), |m, (atom, &set)| m.with(atom.clone(), set))
        }
    };
    Ok((model, file.point))
}

fn load_frame(path: &Path, close: Option<Closure>) -> Result<Frame> {
    Ok(load(path, close)?.0.frame().clone())
}

fn world(model: &Model, at: Option<&str>, point: Option<usize>) -> Result<usize> {
    match at {
        Some(id) => Ok(model.frame().require(id)?),
        None => point.ok_or_else(|| anyhow!("no --at given and the model file has no point")),
    }
}

fn minimal_world(fr: &Frame) -> Result<usize> {
    (0..fr.len())
        .find(|&w| fr.predecessors(w) & !fr.successors(w) == 0)
        .ok_or_else(|| anyhow!("frame has no minimal world"))
}

fn read_labels(path: &Path, fr: &Frame) -> Result<LabelAssignment> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut labels: Vec<Option<Formula>> = vec![None; fr.len()];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| anyhow!("{}: line {}: {msg}", path.display(), i + 1);
        let (id, body) = line.split_once(':').ok_or_else(|| at("expected `<world>: <formula>`".into()))?;
        let w = fr.index_of(id.trim()).ok_or_else(|| at(format!("unknown world {:?}", id.trim())))?;
        let f = parse_with_axioms(body.trim()).map_err(|e| at(e.to_string()))?;
        if labels[w].replace(f).is_some() {
            return Err(at(format!("world {:?} labelled twice", id.trim())));
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(w, l)| l.ok_or_else(|| anyhow!("{}: no label for world {:?}", path.display(), fr.id(w))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LabelAssignment {
        ids: fr.ids().to_vec(),
        labels,
        buttons: Vec::new(),
        switches: Vec::new(),
        levels: Vec::new(),
        root: 0,
    })
}

fn search_text(report: &SearchReport) -> String {
    let mut out = String::new();
    match &report.verdict {
        Verdict::NoCountermodelUpTo(n) => writeln!(
            out,
            "no countermodel among {} {} frames with at most {n} worlds (bounded evidence, not a proof)",
            report.frames_examined, report.class
        )
        .unwrap(),
        Verdict::Countermodel(m) => {
            writeln!(
                out,
                "refuted on a {}-world {} frame at {} ({} frames, {} valuations searched)",
                m.model.frame().len(),
                report.class,
                m.point_id(),
                report.frames_examined,
                report.valuations_examined
            )
            .unwrap();
            out.push_str(&write_model(&m.model, Some(m.point)));
        }
    }
    out
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let close = cli.close;
    let porcelain = cli.porcelain;
    Ok(match &cli.command {
        Command::Parse { formula: text } => {
            let f = formula(text)?;
            if porcelain {
                let atoms: Vec<String> = f.atoms().into_iter().collect();
                Outcome::ok(format!(
                    "formula={f}\nsize={}\nmodal_depth={}\natoms={}\n",
                    f.size(),
                    f.modal_depth(),
                    atoms.join(",")
                ))
            } else {
                Outcome::ok(format!("{f}\n"))
            }
        }
        Command::Eval { model, at, formula: text } => {
            let (m, point) = load(model, close)?;
            let w = world(&m, at.as_deref(), point)?;
            let value = m.holds_at(w, &formula(text)?);
            let text = if porcelain { format!("world={}\nvalue={value}\n", m.frame().id(w)) } else { format!("{value}\n") };
            Outcome { text, falsified: !value }
        }
        Command::FrameValid { frame, formula: text, budget } => {
            let fr = load_frame(frame, close)?;
            let report = frame_valid_with(&fr, &formula(text)?, *budget, cli.jobs.is_some_and(|j| j > 1))?;
            match report {
                ValidityReport::Valid { valuations } => Outcome::ok(if porcelain {
                    format!("verdict=valid\nvaluations={valuations}\n")
                } else {
                    format!("valid ({valuations} valuations)\n")
                }),
                ValidityReport::Falsified { model, world, valuations } => {
                    let head = if porcelain {
                        format!("verdict=falsified\nvaluations={valuations}\nworld={}\n", model.frame().id(world))
                    } else {
                        format!("falsified at {} (valuation {valuations} of the search)\n", model.frame().id(world))
                    };
                    Outcome { text: head + &write_model(&model, Some(world)), falsified: true }
                }
            }
        }
        Command::Classify { frame } => Outcome::ok(classify(&load_frame(frame, close)?).report()),
        Command::Unravel { frame, root } => {
            let fr = load_frame(frame, close)?;
            let r = unravel(&fr, root)?;
            let mut text = String::new();
            if porcelain {
                let bale: Vec<&str> = mfw_core::kripke::members(r.bale).map(|w| r.frame.id(w)).collect();
                writeln!(text, "worlds={}\nroot={}\nbale={}", r.frame.len(), r.frame.id(r.root), bale.join(",")).unwrap();
            }
            text.push_str(&write_frame(&r.frame));
            Outcome::ok(text)
        }
        Command::Jankov { frame } => Outcome::ok(format!("{}\n", jankov_fine(&load_frame(frame, close)?))),
        Command::Labels { frame, kind, root, switches, initial, buttons } => {
            let fr = load_frame(frame, close)?;
            let profile = classify(&fr);
            let kind = kind.unwrap_or(if profile.lattice {
                LabelKind::Lattice
            } else if profile.prelattice {
                LabelKind::Prelattice
            } else {
                LabelKind::Linear
            });
            let root = match root {
                Some(id) => id.clone(),
                None => fr.id(minimal_world(&fr)?).to_string(),
            };
            let needed = (0..).find(|&s| 1usize << s >= profile.max_cluster_size).unwrap_or(0);
            let switches = switch_names(switches.unwrap_or(needed));
            let la = match kind {
                LabelKind::Lattice => lattice_labels(&fr, &buttons.clone().unwrap_or_else(|| button_names(fr.len())))?,
                LabelKind::Prelattice => {
                    let b = buttons.clone().unwrap_or_else(|| button_names(profile.cluster_count));
                    prelattice_labels(&fr, &b, &switches, &root, *initial)?
                }
                LabelKind::Linear => {
                    let levels = volume_levels(profile.cluster_count.saturating_sub(1));
                    linear_labels(&fr, &levels, &switches, &root, *initial)?
                }
            };
            Outcome::ok(la.render())
        }
        Command::Simulate { model, host, labels, formula: text } => {
            let (m, point) = load(model, close)?;
            let (h, host_point) = load(host, close)?;
            let m = mfw_core::PointedModel::new(m, point.unwrap_or(0));
            let h = mfw_core::PointedModel::new(h, host_point.unwrap_or(0));
            let la = read_labels(labels, m.model.frame())?;
            let sim = Simulation::new(&m, &h, &la)?;
            let value = sim.check(&formula(text)?);
            let text = if porcelain { format!("simulated={value}\n") } else { format!("{value}\n") };
            Outcome { text, falsified: !value }
        }
        Command::ClassifyStatement { model, at, formula: text } => {
            let (m, point) = load(model, close)?;
            let w = world(&m, at.as_deref(), point)?;
            let class = classify_statement(&mfw_core::PointedModel::new(m, w), &formula(text)?)?;
            Outcome::ok(if porcelain { format!("class={class}\n") } else { format!("{class}\n") })
        }
        Command::Decide { theory, max, formula: text, class } => {
            let report = countermodel_search(&formula(text)?, *theory, *max, *class)?;
            let text = if porcelain { report.porcelain() } else { search_text(&report) };
            Outcome { text, falsified: report.is_refuted() }
        }
        Command::Audit { theory, max, class } => {
            let rows = frame_class_audit(*theory, *max, *class)?;
            let mut text = String::new();
            for (ax, r) in rows {
                let verdict = match r.countermodel() {
                    None => "bounded-valid".to_string(),
                    Some(m) => format!("refuted:{}", m.model.frame().len()),
                };
                if porcelain {
                    writeln!(text, "{}={verdict}", ax.as_str()).unwrap();
                } else {
                    writeln!(text, "{:<5} {verdict}", ax.as_str()).unwrap();
                }
            }
            Outcome::ok(text)
        }
        Command::Suite { criterion } => {
            let results = match criterion {
                Some(n) if (1..=suite::CRITERIA).contains(n) => vec![suite::run(*n)],
                Some(n) => bail!("--criterion must be between 1 and {}, got {n}", suite::CRITERIA),
                None => suite::run_all(),
            };
            let mut text = String::new();
            for c in &results {
                if porcelain {
                    writeln!(text, "criterion_{}={}", c.number, if c.passed { "pass" } else { "fail" }).unwrap();
                } else {
                    writeln!(text, "{c}").unwrap();
                }
            }
            let failed = results.iter().filter(|c| !c.passed).count();
            if !porcelain {
                writeln!(text, "{} passed, {failed} failed", results.len() - failed).unwrap();
            }
            Outcome { text, falsified: failed > 0 }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("the global pool is configured once");
    }
    match execute(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            ExitCode::from(u8::from(outcome.falsified))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

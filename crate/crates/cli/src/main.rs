//! `relsem` command-line front end.
//!
//! Exit codes: 0 for affirmative results, 1 for negative ones (false,
//! countermodel, not found, rejected), 2 for unreadable or invalid input.

use clap::{Parser, Subcommand};
use relsem::classes::class_member;
use relsem::consequence::{consequence_over_own_atoms, sequent_true_at, ConsequenceError};
use relsem::formula::parse;
use relsem::search::prove;
use relsem::sequents::check_derivation;
use relsem::unravel::unravel;
use relsem::{
    Derivation, Formula, Model, ModelClass, PointedModel, ProofSystem, SearchConfig, Sequent,
    Verdict,
};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "relsem",
    version,
    about = "Relational semantics for ⊥, ∧, → with strict implication"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a world of a model.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: usize,
        #[arg(long)]
        formula: String,
    },
    /// Is a sequent true at every world of a model?
    Valid {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        sequent: String,
    },
    /// Search a class for a countermodel to a sequent.
    Consequence {
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long)]
        sequent: String,
    },
    /// List the propositions of a model's frame (the valuation may be omitted).
    Props {
        #[arg(long)]
        model: PathBuf,
    },
    /// Check a derivation file against a proof system.
    DeriveCheck {
        #[arg(long)]
        system: String,
        #[arg(long)]
        proof: PathBuf,
    },
    /// Bounded proof search.
    Prove {
        #[arg(long)]
        system: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        sequent: String,
        /// Write the derivation found to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Unravel a pointed model into a tree, optionally truncated.
    Unravel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: usize,
        /// Truncation depth; omit for the full unravelling of an acyclic model.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        reflexive: bool,
    },
    /// Print the modal translation of a formula.
    Translate {
        #[arg(long)]
        formula: String,
    },
    /// Test membership of a model in a class.
    ClassCheck {
        #[arg(long)]
        class: String,
        #[arg(long)]
        model: PathBuf,
    },
}

/// What a command produced: text and JSON renderings plus the verdict.
struct Output {
    affirmative: bool,
    text: String,
    json: Value,
}

impl Output {
    fn new(affirmative: bool, text: impl Into<String>, json: Value) -> Self {
        Output {
            affirmative,
            text: text.into(),
            json,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("serializable")
                );
            } else {
                println!("{}", out.text.trim_end());
            }
            ExitCode::from(if out.affirmative { 0 } else { 1 })
        }
        Err(msg) => {
            if cli.json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_model(path: &Path) -> Result<Model, String> {
    Model::from_json_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn formula(text: &str) -> Result<Formula, String> {
    parse(text).map_err(|e| format!("formula {text:?}: {e}"))
}

fn sequent(text: &str) -> Result<Sequent, String> {
    Sequent::parse(text).map_err(|e| format!("sequent {text:?}: {e}"))
}

fn system(tag: &str) -> Result<ProofSystem, String> {
    tag.parse().map_err(|e| format!("{e}"))
}

fn class(tag: &str) -> Result<ModelClass, String> {
    tag.parse().map_err(|e| format!("{e}"))
}

fn model_json(m: &Model) -> Value {
    serde_json::to_value(m.to_json()).expect("serializable")
}

fn run(command: Command) -> Result<Output, String> {
    match command {
        Command::Check {
            model,
            world,
            formula: text,
        } => {
            let m = load_model(&model)?;
            let phi = formula(&text)?;
            let holds = m.satisfies(world, &phi).map_err(|e| e.to_string())?;
            Ok(Output::new(
                holds,
                holds.to_string(),
                json!({ "world": world, "formula": phi.to_string(), "holds": holds }),
            ))
        }
        Command::Valid {
            model,
            sequent: text,
        } => {
            let m = load_model(&model)?;
            let s = sequent(&text)?;
            let mut refuting = Vec::new();
            for w in 0..m.size() {
                if !sequent_true_at(&m, w, &s).map_err(|e| e.to_string())? {
                    refuting.push(w);
                }
            }
            let text = if refuting.is_empty() {
                "valid".to_string()
            } else {
                format!("not valid; refuted at worlds {refuting:?}")
            };
            Ok(Output::new(
                refuting.is_empty(),
                text,
                json!({ "sequent": s.to_string(), "valid": refuting.is_empty(), "refuting_worlds": refuting }),
            ))
        }
        Command::Consequence {
            class: tag,
            max_worlds,
            sequent: text,
        } => {
            let c = class(&tag)?;
            let s = sequent(&text)?;
            let verdict = consequence_over_own_atoms(&s, c, max_worlds)
                .map_err(|e: ConsequenceError| e.to_string())?;
            Ok(match verdict {
                Verdict::ValidUpTo(n) => Output::new(
                    true,
                    format!("valid-up-to {n}"),
                    json!({ "verdict": "valid-up-to", "max_worlds": n }),
                ),
                Verdict::Countermodel { model, point } => {
                    let mj = model_json(&model);
                    Output::new(
                        false,
                        format!(
                            "countermodel\n{}\nworld {point}",
                            serde_json::to_string(&mj).expect("serializable")
                        ),
                        json!({ "verdict": "countermodel", "model": mj, "world": point }),
                    )
                }
            })
        }
        Command::Props { model } => {
            let m = load_model(&model)?;
            let props = m.frame().propositions().map_err(|e| e.to_string())?;
            let mut text = String::new();
            for x in &props {
                writeln!(text, "{x}").unwrap();
            }
            let lists: Vec<Vec<usize>> = props.iter().map(|x| x.iter().collect()).collect();
            Ok(Output::new(true, text, json!({ "propositions": lists })))
        }
        Command::DeriveCheck { system: tag, proof } => {
            let sys = system(&tag)?;
            let d = Derivation::from_json_str(&read(&proof)?)
                .map_err(|e| format!("{}: {e}", proof.display()))?;
            Ok(match check_derivation(&d, sys) {
                Ok(()) => Output::new(
                    true,
                    format!("ok: {} in {sys}", d.conclusion),
                    json!({ "ok": true, "system": sys.tag(), "conclusion": d.conclusion.to_string() }),
                ),
                Err(e) => Output::new(
                    false,
                    format!("rejected: {e}"),
                    json!({ "ok": false, "system": sys.tag(), "path": e.path, "error": e.kind.to_string() }),
                ),
            })
        }
        Command::Prove {
            system: tag,
            depth,
            sequent: text,
            emit,
        } => {
            let sys = system(&tag)?;
            let s = sequent(&text)?;
            let Some(d) = prove(&s, &SearchConfig::new(sys, depth)) else {
                return Ok(Output::new(
                    false,
                    format!("not found within depth {depth}"),
                    json!({ "found": false, "max_depth": depth }),
                ));
            };
            let dj = serde_json::to_value(d.to_json()).expect("serializable");
            if let Some(path) = emit {
                let body = serde_json::to_string_pretty(&dj).expect("serializable");
                std::fs::write(&path, body + "\n")
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let mut text = format!("found (height {})\n", d.height());
            render_tree(&d, 0, &mut text);
            Ok(Output::new(
                true,
                text,
                json!({ "found": true, "height": d.height(), "derivation": dj }),
            ))
        }
        Command::Unravel {
            model,
            world,
            depth,
            reflexive,
        } => {
            let m = load_model(&model)?;
            let pm = PointedModel::new(m, world).map_err(|e| e.to_string())?;
            let u = unravel(&pm, depth, reflexive).map_err(|e| e.to_string())?;
            let mut out = model_json(&u.model);
            out["depth_map"] = json!(u.depth_map);
            let text = serde_json::to_string(&out).expect("serializable");
            out["paths"] = json!(u.paths);
            Ok(Output::new(true, text, out))
        }
        Command::Translate { formula: text } => {
            let phi = formula(&text)?;
            let m = phi.translate_modal();
            Ok(Output::new(
                true,
                m.to_string(),
                json!({ "formula": phi.to_string(), "translation": m.to_string() }),
            ))
        }
        Command::ClassCheck { class: tag, model } => {
            let c = class(&tag)?;
            let m = load_model(&model)?;
            let member = class_member(&m, c);
            let frame_ok = c.frame_admits(m.frame());
            let bad_atoms: Vec<&str> = m
                .valuation()
                .iter()
                .filter(|(_, v)| !c.admits_value(m.frame(), v))
                .map(|(a, _)| &**a)
                .collect();
            let text = if member {
                format!("member of {c}")
            } else if !frame_ok {
                format!("not a member of {c}: the frame fails its conditions")
            } else {
                format!(
                    "not a member of {c}: inadmissible values for {}",
                    bad_atoms.join(", ")
                )
            };
            Ok(Output::new(
                member,
                text,
                json!({ "class": c.tag(), "member": member, "frame_ok": frame_ok, "bad_atoms": bad_atoms }),
            ))
        }
    }
}

fn render_tree(d: &Derivation, indent: usize, out: &mut String) {
    writeln!(out, "{:indent$}{}   [{}]", "", d.conclusion, d.rule.name()).unwrap();
    for p in &d.premises {
        render_tree(p, indent + 2, out);
    }
}

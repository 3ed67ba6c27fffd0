//! Command-line front end.  Every subcommand prints one JSON document to
//! stdout (floats rounded to 12 significant digits so output is
//! byte-identical across platforms and runs) and a short human summary to
//! stderr.  Failures print a JSON error object and exit nonzero.

use crate::category::AnyonLabel;
use crate::checks;
use crate::dqc1::{self, GateCircuit};
use crate::error::{Error, Result};
use crate::qudits;
use crate::rep::{self, Letter, MCGWord};
use crate::spine;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "fibwrt",
    version,
    about = "Trace invariants of Fibonacci-labelled mapping tori and their one-clean-qubit estimation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact trace invariant of a mapping-torus word
    Wrt {
        /// Surface genus, at least 2
        #[arg(long)]
        genus: usize,
        /// Whitespace-separated letters like "T3 T5^-2", or "identity"
        #[arg(long, default_value = "identity")]
        word: String,
    },
    /// Encode the word at beta bits per edge and estimate its trace on
    /// one clean qubit
    Estimate {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value = "identity")]
        word: String,
        /// Register width in bits per spine edge
        #[arg(long)]
        beta: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Describe the spine and count (or list) admissible labelings
    Spine {
        #[arg(long)]
        genus: usize,
        /// Comma-separated puncture labels for the end handles, e.g. "1"
        /// or "0,1"; empty for the closed surface
        #[arg(long, default_value = "")]
        punctures: String,
        /// Include the full labeling list in the output
        #[arg(long)]
        list: bool,
    },
    /// Run the built-in consistency checks
    Check,
    /// Plan base-b register widths for an n-fold a-dimensional qudit trace
    PlanQudits {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        n: u32,
        /// Trace accuracy target in (0, 1)
        #[arg(long)]
        delta: f64,
    },
    /// Rewrite a circuit with two ancillas so the clean-qubit probability
    /// becomes an absolute (real, nonnegative-trace) readout
    ReduceAbs {
        /// Path to the input circuit JSON
        #[arg(long)]
        circuit: PathBuf,
        /// Write the transformed circuit here instead of embedding it in
        /// the report
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Fully parsed and validated work order.
pub enum JobSpec {
    Wrt {
        word: MCGWord,
    },
    Estimate {
        word: MCGWord,
        beta: u32,
        samples: u64,
        seed: u64,
    },
    Spine {
        genus: usize,
        punctures: Vec<AnyonLabel>,
        list: bool,
    },
    Check,
    PlanQudits {
        a: u64,
        b: u64,
        n: u32,
        delta: f64,
    },
    ReduceAbs {
        circuit: GateCircuit,
        out: Option<PathBuf>,
    },
}

/// Parse one word token: `T<k>` or `T<k>^<exp>` with a nonzero integer
/// exponent.
fn parse_letter(genus: usize, token: &str) -> Result<Letter> {
    let body = token
        .strip_prefix('T')
        .ok_or_else(|| Error::WordSyntax(format!("letter {token:?} must start with 'T'")))?;
    let (idx_text, exp_text) = match body.split_once('^') {
        Some((i, e)) => (i, Some(e)),
        None => (body, None),
    };
    let generator: usize = idx_text
        .parse()
        .map_err(|_| Error::WordSyntax(format!("bad generator index in {token:?}")))?;
    rep::family(genus, generator)?;
    let exponent: i64 = match exp_text {
        None => 1,
        Some(e) => e
            .parse()
            .map_err(|_| Error::BadExponent(e.to_string()))?,
    };
    if exponent == 0 {
        return Err(Error::BadExponent("0".into()));
    }
    Ok(Letter {
        generator,
        exponent,
    })
}

pub fn parse_word(genus: usize, text: &str) -> Result<MCGWord> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    let text = text.trim();
    if text.is_empty() || text == "identity" {
        return Ok(MCGWord::identity(genus));
    }
    let letters = text
        .split_whitespace()
        .map(|t| parse_letter(genus, t))
        .collect::<Result<Vec<_>>>()?;
    let word = MCGWord { genus, letters };
    word.validate()?;
    Ok(word)
}

pub fn parse_punctures(text: &str) -> Result<Vec<AnyonLabel>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| match t.trim() {
            "0" => Ok(AnyonLabel::Vacuum),
            "1" => Ok(AnyonLabel::Tau),
            other => Err(Error::WordSyntax(format!(
                "puncture label {other:?} must be 0 or 1"
            ))),
        })
        .collect()
}

pub fn job_from_command(cmd: Command) -> Result<JobSpec> {
    Ok(match cmd {
        Command::Wrt { genus, word } => JobSpec::Wrt {
            word: parse_word(genus, &word)?,
        },
        Command::Estimate {
            genus,
            word,
            beta,
            samples,
            seed,
        } => JobSpec::Estimate {
            word: parse_word(genus, &word)?,
            beta,
            samples,
            seed,
        },
        Command::Spine {
            genus,
            punctures,
            list,
        } => JobSpec::Spine {
            genus,
            punctures: parse_punctures(&punctures)?,
            list,
        },
        Command::Check => JobSpec::Check,
        Command::PlanQudits { a, b, n, delta } => JobSpec::PlanQudits { a, b, n, delta },
        Command::ReduceAbs { circuit, out } => {
            let text = std::fs::read_to_string(&circuit)?;
            JobSpec::ReduceAbs {
                circuit: GateCircuit::from_json(&text)?,
                out,
            }
        }
    })
}

/// Round every float in a JSON tree to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                let x = n.as_f64().unwrap();
                let rounded = if x.is_finite() && x != 0.0 {
                    format!("{x:.11e}").parse::<f64>().unwrap()
                } else {
                    x
                };
                if let Some(num) = serde_json::Number::from_f64(rounded) {
                    *n = num;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn to_rounded_value<T: Serialize>(value: &T) -> Result<Value> {
    let mut v = serde_json::to_value(value)?;
    round_floats(&mut v);
    Ok(v)
}

#[derive(Serialize)]
struct WrtOut {
    command: &'static str,
    genus: usize,
    word: String,
    dimension: usize,
    trace: dqc1::ComplexPair,
    normalized_trace: dqc1::ComplexPair,
}

#[derive(Serialize)]
struct SpineOut {
    command: &'static str,
    genus: usize,
    punctures: Vec<u8>,
    edges: usize,
    edge_classes: Vec<spine::EdgeClass>,
    labeling_count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labelings: Option<Vec<Vec<u8>>>,
}

#[derive(Serialize)]
struct PlanOut {
    command: &'static str,
    a: u64,
    b: u64,
    n: u32,
    delta_target: f64,
    digits_per_qudit: u32,
    copies: String,
    delta_achieved: f64,
    discrepancy_bound: f64,
}

#[derive(Serialize)]
struct ReduceOut {
    command: &'static str,
    input_qubits: usize,
    output_qubits: usize,
    gate_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    written_to: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    circuit: Option<GateCircuit>,
}

/// Execute a job.  Returns the JSON document and a one-line human summary.
pub fn run(job: JobSpec) -> Result<(Value, String)> {
    match job {
        JobSpec::Wrt { word } => {
            let (trace, dimension) = rep::wrt_invariant(&word)?;
            let normalized = trace / dimension as f64;
            let out = WrtOut {
                command: "wrt",
                genus: word.genus,
                word: word.to_string(),
                dimension,
                trace: trace.into(),
                normalized_trace: normalized.into(),
            };
            let summary = format!(
                "genus {} word {}: trace {:.6}{:+.6}i over {} labelings",
                word.genus, word, trace.re, trace.im, dimension
            );
            Ok((to_rounded_value(&out)?, summary))
        }
        JobSpec::Estimate {
            word,
            beta,
            samples,
            seed,
        } => {
            let run = dqc1::run_wrt_estimation(&word, beta, samples, seed)?;
            let summary = format!(
                "genus {} word {} at beta {}: normalized trace {:.4}{:+.4}i, estimate {:.4}{:+.4}i ({} samples, seed {})",
                run.genus,
                run.word,
                beta,
                run.wrt_normalized.re,
                run.wrt_normalized.im,
                run.sampled.normalized_trace_hat.re,
                run.sampled.normalized_trace_hat.im,
                samples,
                seed
            );
            let mut v = serde_json::to_value(&run)?;
            v.as_object_mut()
                .unwrap()
                .insert("command".into(), json!("estimate"));
            round_floats(&mut v);
            Ok((v, summary))
        }
        JobSpec::Spine {
            genus,
            punctures,
            list,
        } => {
            let graph = spine::punctured_spine(genus, &punctures)?;
            let count = match punctures.len() {
                0 => spine::transfer_count(genus)?,
                1 => spine::transfer_count_with_ends(genus, Some(punctures[0]), None)?,
                _ => spine::transfer_count_with_ends(
                    genus,
                    Some(punctures[0]),
                    Some(punctures[1]),
                )?,
            };
            let labelings = if list {
                Some(
                    spine::enumerate_labelings(&graph)
                        .into_iter()
                        .map(|l| l.into_iter().map(|x| x.bit()).collect())
                        .collect::<Vec<Vec<u8>>>(),
                )
            } else {
                None
            };
            let out = SpineOut {
                command: "spine",
                genus,
                punctures: punctures.iter().map(|p| p.bit()).collect(),
                edges: graph.edge_count(),
                edge_classes: graph.edges.iter().map(|e| e.class).collect(),
                labeling_count: count.to_string(),
                labelings,
            };
            let summary = format!(
                "genus {} spine with {} punctures: {} edges, {} admissible labelings",
                genus,
                punctures.len(),
                graph.edge_count(),
                count
            );
            Ok((to_rounded_value(&out)?, summary))
        }
        JobSpec::Check => {
            let outcomes = checks::run_all();
            let all = checks::all_pass(&outcomes);
            let passed = outcomes.iter().filter(|o| o.pass).count();
            let total = outcomes.len();
            let mut v = json!({
                "command": "check",
                "all_pass": all,
                "checks": outcomes,
            });
            round_floats(&mut v);
            let summary = format!("{passed}/{total} checks passed");
            Ok((v, summary))
        }
        JobSpec::PlanQudits { a, b, n, delta } => {
            let p = qudits::plan(a, b, n, delta)?;
            let out = PlanOut {
                command: "plan-qudits",
                a,
                b,
                n,
                delta_target: delta,
                digits_per_qudit: p.d,
                copies: p.c.to_string(),
                delta_achieved: p.delta(),
                discrepancy_bound: p.discrepancy_bound(),
            };
            let summary = format!(
                "{} base-{} digits per {}-dimensional qudit ({} copies, deficit {:.3e})",
                p.d, b, a, p.c, p.delta()
            );
            Ok((to_rounded_value(&out)?, summary))
        }
        JobSpec::ReduceAbs { circuit, out } => {
            let reduced = dqc1::absolute_trace_reduction(&circuit)?;
            let (written_to, embed) = match out {
                Some(path) => {
                    std::fs::write(&path, reduced.to_json())?;
                    (Some(path.display().to_string()), None)
                }
                None => (None, Some(reduced.clone())),
            };
            let report = ReduceOut {
                command: "reduce-abs",
                input_qubits: circuit.qubits,
                output_qubits: reduced.qubits,
                gate_count: reduced.gates.len(),
                written_to: written_to.clone(),
                circuit: embed,
            };
            let summary = match written_to {
                Some(p) => format!(
                    "reduced {}-qubit circuit to {} qubits, wrote {}",
                    circuit.qubits, reduced.qubits, p
                ),
                None => format!(
                    "reduced {}-qubit circuit to {} qubits ({} gates)",
                    circuit.qubits,
                    reduced.qubits,
                    reduced.gates.len()
                ),
            };
            Ok((to_rounded_value(&report)?, summary))
        }
    }
}

/// Stable machine-readable failure category.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::GenusTooSmall(_) => "genus_too_small",
        Error::GeneratorOutOfRange { .. } => "generator_out_of_range",
        Error::EdgeOutOfRange { .. } => "edge_out_of_range",
        Error::BetaOutOfRange(_) => "beta_out_of_range",
        Error::WordSyntax(_) => "word_syntax",
        Error::BadExponent(_) => "bad_exponent",
        Error::ContextArity(_) => "context_arity",
        Error::EmptyContext(_) => "empty_context",
        Error::BadLabeling(_) => "bad_labeling",
        Error::TooManyPunctures(_) => "too_many_punctures",
        Error::CircuitTooLarge { .. } => "circuit_too_large",
        Error::BadGate { .. } => "bad_gate",
        Error::RegisterArity { .. } => "register_arity",
        Error::RegisterRange { .. } => "register_range",
        Error::BadPlan(_) => "bad_plan",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

pub fn error_value(e: &Error) -> Value {
    json!({
        "error": {
            "kind": error_kind(e),
            "message": e.to_string(),
        }
    })
}

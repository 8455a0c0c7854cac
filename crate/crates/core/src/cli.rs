//! The `relcat` command line.
//!
//! Exit status is 0 on success, `Holds` and `Equal`; 1 when a check fails,
//! with the witness on stdout; 2 on usage and input errors.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::isocalc::{
    arith_equal, arith_value, bounded_iso_search, conjecture_scan, format_assignment, normalize_s,
    parse_assignment, ArithVerdict, ScanConfig,
};
use crate::pointedsets::{
    check_terms, naturality_failure_witness, valuations_over, EvalConfig, Evaluator, Valuation,
    Verdict, DEFAULT_VALUATION_LIMIT,
};
use crate::relcoherence::{decide_remon_eq, RemonVerdict, Unequal};
use crate::syntax::{parse_arrow_term, parse_equation, parse_formula};
use crate::theories::{axioms, catalog_json, Equation, Theory};

/// Environment variable overriding the largest set a valuation may assign.
pub const SIZE_CAP_VAR: &str = "RELCAT_SIZE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "relcat",
    version,
    about = "Arrow terms, pointed-set models and isomorphism checks for free monoidal categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the type `A ⊢ B` of an arrow term.
    Typecheck { term: String },
    /// Print the table of an arrow term in finite pointed sets.
    Eval {
        term: String,
        /// Sizes of the sets assigned to letters, point included: `p=3,q=4`.
        #[arg(long = "val", default_value = "")]
        valuation: String,
        #[arg(long)]
        json: bool,
    },
    /// Check an equation `f = g` in finite pointed sets.
    Check {
        equation: String,
        /// Set sizes to try for every letter: `1..3` or `1,2,4`.
        #[arg(long, default_value = "1..3")]
        sizes: String,
        /// Largest number of valuations to try.
        #[arg(long, default_value_t = DEFAULT_VALUATION_LIMIT)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide equality of two terms in the free relevant monoidal category.
    Releq {
        lhs: String,
        rhs: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare two formulae in the calculus S and arithmetically.
    Iso {
        lhs: String,
        rhs: String,
        #[arg(long, default_value_t = 4)]
        bound: u64,
        /// Also search for inverse structural arrows up to this depth.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a formula arithmetically.
    Arith {
        formula: String,
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Compare S-equality with arithmetic equality over many small formulae.
    Scan {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long, default_value = "p,q", value_delimiter = ',')]
        letters: Vec<String>,
        #[arg(long, default_value_t = 4)]
        bound: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Only formulae in which no letter occurs twice.
        #[arg(long)]
        diversified: bool,
        #[arg(long)]
        json: bool,
    },
    /// List the axiom schemata of a theory.
    Axioms {
        #[arg(long, default_value = "RMC")]
        theory: String,
        #[arg(long)]
        json: bool,
    },
    /// Show maps on which a smash-product projection is not natural.
    WitnessNonnatural {
        #[arg(long)]
        json: bool,
    },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(stdout: String) -> Outcome {
        Outcome {
            code: 1,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Outcome {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn json_line(v: serde_json::Value) -> String {
    line(serde_json::to_string_pretty(&v).expect("json values serialize"))
}

/// Runs one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(message) => Outcome::usage(message),
    }
}

fn eval_config() -> Result<EvalConfig, String> {
    let mut cfg = EvalConfig::default();
    if let Ok(v) = std::env::var(SIZE_CAP_VAR) {
        cfg.size_cap = v
            .trim()
            .parse()
            .map_err(|_| format!("{SIZE_CAP_VAR} must be a natural number, found `{v}`"))?;
    }
    Ok(cfg)
}

fn parse_sizes(s: &str) -> Result<Vec<usize>, String> {
    let err = || format!("bad size list `{s}` (expected `1..3` or `1,2,4`)");
    let sizes: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| err())?;
        let hi: usize = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| err())?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|x| x.trim().parse().map_err(|_| err()))
            .collect::<Result<_, _>>()?
    };
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(err());
    }
    Ok(sizes)
}

fn dispatch(command: Command) -> Result<Outcome, String> {
    let str_err = |e: &dyn std::fmt::Display| e.to_string();
    match command {
        Command::Typecheck { term } => {
            let t = parse_arrow_term(&term).map_err(|e| str_err(&e))?;
            let ty = t.infer_type().map_err(|e| str_err(&e))?;
            Ok(Outcome::ok(line(ty.to_string())))
        }
        Command::Eval {
            term,
            valuation,
            json,
        } => {
            let t = parse_arrow_term(&term).map_err(|e| str_err(&e))?;
            let ty = t.infer_type().map_err(|e| str_err(&e))?;
            let v: Valuation = valuation.parse().map_err(|e| str_err(&e))?;
            let mut ev = Evaluator::new(&v, eval_config()?).map_err(|e| str_err(&e))?;
            let m = ev.eval(&t).map_err(|e| str_err(&e))?;
            if json {
                return Ok(Outcome::ok(json_line(json!({
                    "type": ty.to_string(),
                    "valuation": v.to_string(),
                    "table": m.table(),
                }))));
            }
            Ok(Outcome::ok(line(format!(
                "{ty}  ({} → {} elements)\n{m}",
                m.dom().size(),
                m.cod().size()
            ))))
        }
        Command::Check {
            equation,
            sizes,
            limit,
            json,
        } => {
            let (l, r) = parse_equation(&equation).map_err(|e| str_err(&e))?;
            let eq = Equation::new(l, r).map_err(|e| str_err(&e))?;
            let valuations = valuations_over(&eq.letters(), &parse_sizes(&sizes)?, limit);
            let verdict = check_terms(&eq.lhs, &eq.rhs, &valuations, eval_config()?)
                .map_err(|e| str_err(&e))?;
            let text = if json {
                let mut v = verdict.to_json();
                v["valuations"] = json!(valuations.len());
                json_line(v)
            } else {
                match &verdict {
                    Verdict::Holds => line(format!("Holds ({} valuations)", valuations.len())),
                    Verdict::Fails(c) => line(format!(
                        "Fails at {}\n  element {}: lhs ↦ {}, rhs ↦ {}",
                        c.valuation, c.element, c.lhs, c.rhs
                    )),
                }
            };
            Ok(if verdict.holds() {
                Outcome::ok(text)
            } else {
                Outcome::failed(text)
            })
        }
        Command::Releq { lhs, rhs, json } => {
            let f = parse_arrow_term(&lhs).map_err(|e| str_err(&e))?;
            let g = parse_arrow_term(&rhs).map_err(|e| str_err(&e))?;
            let verdict = decide_remon_eq(&f, &g).map_err(|e| str_err(&e))?;
            let text = if json {
                json_line(match &verdict {
                    RemonVerdict::Equal(r) => {
                        json!({ "verdict": "equal", "relation": r.to_string() })
                    }
                    RemonVerdict::Unequal(Unequal::Type { lhs, rhs }) => {
                        json!({ "verdict": "unequal", "reason": "type", "lhs": lhs.to_string(), "rhs": rhs.to_string() })
                    }
                    RemonVerdict::Unequal(Unequal::Relation { lhs, rhs }) => json!({
                        "verdict": "unequal", "reason": "relation", "lhs": lhs.to_string(), "rhs": rhs.to_string()
                    }),
                })
            } else {
                line(verdict.to_string())
            };
            Ok(if verdict.is_equal() {
                Outcome::ok(text)
            } else {
                Outcome::failed(text)
            })
        }
        Command::Iso {
            lhs,
            rhs,
            bound,
            depth,
            json,
        } => {
            let a = parse_formula(&lhs).map_err(|e| str_err(&e))?;
            let b = parse_formula(&rhs).map_err(|e| str_err(&e))?;
            let (na, nb) = (
                normalize_s(&a).map_err(|e| str_err(&e))?,
                normalize_s(&b).map_err(|e| str_err(&e))?,
            );
            let s_equal = na == nb;
            let arith = arith_equal(&a, &b, bound).map_err(|e| str_err(&e))?;
            let verdict = match (&arith, s_equal) {
                (_, true) => "S-EQUAL".to_string(),
                (ArithVerdict::EqualUpTo(k), false) => {
                    format!("S-DIFFERENT arith-agree(bound={k})")
                }
                (ArithVerdict::Differ { assignment, .. }, false) => {
                    format!(
                        "S-DIFFERENT arith-differ({})",
                        format_assignment(assignment)
                    )
                }
            };
            let pair = match depth {
                Some(d) => Some(bounded_iso_search(&a, &b, d).map_err(|e| str_err(&e))?),
                None => None,
            };
            let text = if json {
                let mut v = json!({
                    "verdict": verdict,
                    "s_equal": s_equal,
                    "lhs_normal_form": na.to_string(),
                    "rhs_normal_form": nb.to_string(),
                });
                if let ArithVerdict::Differ {
                    assignment,
                    lhs,
                    rhs,
                } = &arith
                {
                    v["witness"] = json!({ "assignment": format_assignment(assignment), "lhs": lhs.to_string(), "rhs": rhs.to_string() });
                }
                if let Some(p) = &pair {
                    v["arrows"] = match p {
                        Some((f, g)) => {
                            json!({ "forward": f.to_string(), "backward": g.to_string() })
                        }
                        None => serde_json::Value::Null,
                    };
                }
                json_line(v)
            } else {
                let mut t = String::new();
                let _ = writeln!(t, "{verdict}");
                let _ = writeln!(t, "  normal forms: {na}  |  {nb}");
                if let ArithVerdict::Differ { lhs, rhs, .. } = &arith {
                    let _ = writeln!(t, "  values: {lhs} vs {rhs}");
                }
                match &pair {
                    Some(Some((f, g))) => {
                        let _ = writeln!(t, "  forward:  {f}\n  backward: {g}");
                    }
                    Some(None) => {
                        let _ = writeln!(
                            t,
                            "  no structural inverse pair within depth {}",
                            depth.unwrap_or(0)
                        );
                    }
                    None => {}
                }
                t
            };
            Ok(if s_equal {
                Outcome::ok(text)
            } else {
                Outcome::failed(text)
            })
        }
        Command::Arith { formula, assign } => {
            let a = parse_formula(&formula).map_err(|e| str_err(&e))?;
            let sigma = parse_assignment(&assign).map_err(|e| str_err(&e))?;
            let v = arith_value(&a, &sigma).map_err(|e| str_err(&e))?;
            Ok(Outcome::ok(line(v.to_string())))
        }
        Command::Scan {
            max_size,
            letters,
            bound,
            seed,
            workers,
            diversified,
            json,
        } => {
            let mut names: Vec<Arc<str>> = Vec::new();
            for l in letters.iter().map(|l| l.trim()).filter(|l| !l.is_empty()) {
                let parsed = parse_formula(l).map_err(|e| str_err(&e))?;
                if !matches!(parsed, crate::syntax::Formula::Letter(_)) {
                    return Err(format!("`{l}` is not a letter"));
                }
                if names.iter().any(|n| &**n == l) {
                    return Err(format!("letter `{l}` listed twice"));
                }
                names.push(Arc::from(l));
            }
            let cfg = ScanConfig {
                max_size,
                letters: names,
                bound,
                seed,
                workers,
                diversified_only: diversified,
                ..ScanConfig::default()
            };
            let report = conjecture_scan(&cfg).map_err(|e| str_err(&e))?;
            let text = if json {
                json_line(serde_json::to_value(&report).expect("report serializes"))
            } else {
                report.to_text()
            };
            Ok(if report.soundness_violations.is_empty() {
                Outcome::ok(text)
            } else {
                Outcome::failed(text)
            })
        }
        Command::Axioms { theory, json } => {
            let theory: Theory = theory.parse()?;
            if json {
                return Ok(Outcome::ok(json_line(catalog_json(theory))));
            }
            let mut t = String::new();
            for s in axioms(theory) {
                let _ = writeln!(t, "{} [{}]: {} = {}", s.name, s.theory, s.lhs, s.rhs);
            }
            Ok(Outcome::ok(t))
        }
        Command::WitnessNonnatural { json } => {
            let w = naturality_failure_witness();
            let verified = w.verify();
            let text = if json {
                json_line(json!({
                    "f": { "dom": w.f.dom().size(), "cod": w.f.cod().size(), "table": w.f.table() },
                    "g": { "dom": w.g.dom().size(), "cod": w.g.cod().size(), "table": w.g.table() },
                    "element": w.element,
                    "lhs": w.lhs,
                    "rhs": w.rhs,
                    "verified": verified,
                }))
            } else {
                line(format!("{w}\nverified: {verified}"))
            };
            Ok(if verified {
                Outcome::ok(text)
            } else {
                Outcome::failed(text)
            })
        }
    }
}

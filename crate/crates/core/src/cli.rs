//! The `bmt` command line.
//!
//! Exit status: 0 for success, true or EQUIVALENT; 1 for false or
//! NOT_EQUIVALENT; 2 for INCONCLUSIVE; 3 for unreadable or malformed input.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{braid_monodromy, degree_check, LineArrangement};
use crate::braid::BraidWord;
use crate::error::ParseError;
use crate::factorization::{Factorization, HurwitzMove, MoveKind};
use crate::regeneration::{complete_deficit, degree_audit, output_header, regenerate, Completion, RuleAssignment};
use crate::search::{hurwitz_equivalent, orbit_enumerate, Verdict, Witness};
use crate::vankampen::{presentation, presentation_warnings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "bmt", version, about = "Braid monodromy workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Node budget for searches.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    /// Seed for randomized self-checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Garside left normal form of a braid word.
    NormalForm { word: String },
    /// Whether two braid words denote the same braid.
    Equal { left: String, right: String },
    /// Braid monodromy factorization of a line arrangement.
    Monodromy {
        arrangement: String,
        /// Emit k(k-1)/2 node factors for every k-fold point.
        #[arg(long)]
        expand_blocks: bool,
    },
    /// Whether the product of a factorization is the full twist.
    CheckDelta2 { factorization: String },
    /// Bounded search for a Hurwitz move sequence between two factorizations.
    HurwitzEquiv { left: String, right: String },
    /// Bounded enumeration of a Hurwitz orbit.
    Orbit { factorization: String },
    /// Regenerate a factorization in B_n into B_2n.
    Regenerate {
        factorization: String,
        /// Rule assignment file: `<index> I|II|II-one-sided|III|pass` per line.
        #[arg(long)]
        rules: Option<String>,
        /// Search for exponent-1 factors which, inserted among the others, complete the product to the full twist.
        #[arg(long)]
        complete_deficit: bool,
    },
    /// Degree of a factorization against the full twist.
    Audit { factorization: String },
    /// Presentation of the complement's fundamental group.
    Vankampen { factorization: String },
    /// Hurwitz invariants: product normal form and class multiset.
    Invariants { factorization: String },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn input_error(message: String) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: message + "\n" }
    }
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Inputs<'_> {
    fn read(&mut self, path: &str) -> Result<String, String> {
        if path == "-" {
            if self.stdin_used {
                return Err("standard input can only be read once".into());
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|e| format!("<stdin>: {e}"))?;
            Ok(s)
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
        }
    }

    fn parse<T>(&mut self, path: &str, parse: impl Fn(&str) -> Result<T, ParseError>) -> Result<T, String> {
        let text = self.read(path)?;
        parse(&text).map_err(|e| format!("{}:{e}", display_path(path)))
    }
}

fn display_path(path: &str) -> &str {
    if path == "-" {
        "<stdin>"
    } else {
        path
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut inputs = Inputs { stdin, stdin_used: false };
    match execute(&cli, &mut inputs) {
        Ok(outcome) => outcome,
        Err(message) => Outcome::input_error(message),
    }
}

fn verdict_code(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn moves_text(moves: &[HurwitzMove]) -> String {
    moves.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(cli: &Cli, inputs: &mut Inputs<'_>) -> Result<Outcome, String> {
    let fac = |inputs: &mut Inputs<'_>, path: &str| inputs.parse(path, Factorization::parse_text);
    match &cli.command {
        Command::NormalForm { word } => {
            let w = inputs.parse(word, BraidWord::parse_text)?;
            Ok(Outcome::ok(w.normal_form().to_text()))
        }
        Command::Equal { left, right } => {
            let a = inputs.parse(left, BraidWord::parse_text)?;
            let b = inputs.parse(right, BraidWord::parse_text)?;
            let eq = a.equals(&b).map_err(|e| e.to_string())?;
            Ok(Outcome { code: verdict_code(eq), stdout: format!("{eq}\n"), stderr: String::new() })
        }
        Command::Monodromy { arrangement, expand_blocks } => {
            let arr = inputs.parse(arrangement, LineArrangement::parse_text)?;
            let f = braid_monodromy(&arr, *expand_blocks).map_err(|e| format!("{}: {e}", display_path(arrangement)))?;
            let report = degree_check(&arr).map_err(|e| e.to_string())?;
            let mut out = format!("# braid monodromy of {} lines; degree {report}\n", arr.len());
            out.push_str(&f.to_text());
            Ok(Outcome::ok(out))
        }
        Command::CheckDelta2 { factorization } => {
            let f = fac(inputs, factorization)?;
            let ok = f.is_delta2_factorization();
            let m = f.strands() as i64;
            let mut out = format!("{ok}\ndegree {} target {}\n", f.degree(), m * (m - 1));
            if f.has_flagged_factors() {
                out.push_str("warning: flagged factors present\n");
            }
            Ok(Outcome { code: verdict_code(ok), stdout: out, stderr: String::new() })
        }
        Command::HurwitzEquiv { left, right } => {
            let a = fac(inputs, left)?;
            let b = fac(inputs, right)?;
            Ok(match hurwitz_equivalent(&a, &b, cli.budget) {
                Verdict::Equivalent(moves) => {
                    Outcome::ok(format!("EQUIVALENT\nmoves {}\n{}\n", moves.len(), moves_text(&moves)))
                }
                Verdict::NotEquivalent(w) => Outcome {
                    code: EXIT_FALSE,
                    stdout: format!("NOT_EQUIVALENT\nwitness {}\n", witness_text(&w)),
                    stderr: String::new(),
                },
                Verdict::Inconclusive { explored } => Outcome {
                    code: EXIT_INCONCLUSIVE,
                    stdout: format!("INCONCLUSIVE\nexplored {explored}\n"),
                    stderr: String::new(),
                },
            })
        }
        Command::Orbit { factorization } => {
            let f = fac(inputs, factorization)?;
            let report = orbit_enumerate(&f, cli.budget);
            let status = if report.exhausted { "exhausted" } else { "truncated" };
            Ok(Outcome::ok(format!("orbit {} {status}\n", report.keys.len())))
        }
        Command::Regenerate { factorization, rules, complete_deficit: complete } => {
            let f = fac(inputs, factorization)?;
            let rules = match rules {
                Some(path) => inputs.parse(path, RuleAssignment::parse_text)?,
                None => RuleAssignment::new(),
            };
            let out = regenerate(&f, &rules).map_err(|e| format!("{}: {e}", display_path(factorization)))?;
            let report = degree_audit(&out).map_err(|e| e.to_string())?;
            let mut text = output_header(f.strands(), &report);
            let mut out = out;
            if *complete {
                match complete_deficit(&out, cli.budget).map_err(|e| e.to_string())? {
                    Completion::Found { factorization, inserted } => {
                        let pos: Vec<String> = inserted.iter().map(ToString::to_string).collect();
                        let _ = writeln!(text, "# completion: inserted exponent-1 factors at {}", pos.join(" "));
                        out = factorization;
                    }
                    Completion::Impossible { explored } => {
                        let _ = writeln!(text, "# completion: none exists ({explored} nodes)");
                    }
                    Completion::Inconclusive { explored } => {
                        let _ = writeln!(text, "# completion: inconclusive ({explored} nodes)");
                    }
                }
            }
            text.push_str(&out.to_text());
            Ok(Outcome::ok(text))
        }
        Command::Audit { factorization } => {
            let f = fac(inputs, factorization)?;
            Ok(match degree_audit(&f) {
                Ok(report) => Outcome::ok(format!("{report}\n")),
                Err(e) => Outcome { code: EXIT_FALSE, stdout: format!("{e}\n"), stderr: String::new() },
            })
        }
        Command::Vankampen { factorization } => {
            let f = fac(inputs, factorization)?;
            let p = presentation(&f);
            let mut out = format!("# abelianization: {}\n", p.abelianization());
            out.push_str(&p.to_text());
            let stderr = presentation_warnings(&f).into_iter().map(|w| format!("warning: {w}\n")).collect();
            Ok(Outcome { code: EXIT_OK, stdout: out, stderr })
        }
        Command::Invariants { factorization } => {
            let f = fac(inputs, factorization)?;
            let inv = f.hm_invariants();
            let mut out = format!("degree {}\nfactors {}\n", f.degree(), f.len());
            out.push_str("# product normal form\n");
            out.push_str(&inv.product_nf.to_text());
            for ((exp, cycles), count) in &inv.class_multiset {
                let c: Vec<String> = cycles.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "class exp {exp} cycles {} count {count}", c.join(","));
            }
            if let Some(seed) = cli.seed {
                let ok = random_move_self_check(&f, seed, 100);
                let _ = writeln!(out, "self-check seed {seed}: 100 random moves {}", if ok { "ok" } else { "FAILED" });
                if !ok {
                    return Ok(Outcome { code: EXIT_FALSE, stdout: out, stderr: String::new() });
                }
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::StrandCount { left, right } => format!("strand-count {left} {right}"),
        Witness::Length { left, right } => format!("length {left} {right}"),
        Witness::ProductDiffers => "product-differs".into(),
        Witness::ClassMultisetDiffers => "class-multiset-differs".into(),
        Witness::OrbitExhausted { orbit_size } => format!("orbit-exhausted {orbit_size}"),
    }
}

/// Applies `count` seeded random moves and checks the invariants after each.
fn random_move_self_check(f: &Factorization, seed: u64, count: usize) -> bool {
    if f.len() < 2 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want = f.hm_invariants();
    let mut g = f.clone();
    for _ in 0..count {
        let position = rng.gen_range(1..g.len());
        let kind = if rng.gen_bool(0.5) { MoveKind::Forward } else { MoveKind::Inverse };
        g = g.apply_move(HurwitzMove { position, kind }).expect("position in range");
        if g.hm_invariants() != want {
            return false;
        }
    }
    true
}

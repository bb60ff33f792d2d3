use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stackfill::bijection::{f, to_ferrers};
use stackfill::growth::{build_growth, extract_pq, matrix_rep};
use stackfill::hecke::insert_word;
use stackfill::knuth::kknuth_equivalent;
use stackfill::linked::{row_move_bijection, transpose_bijection, vacillating_border};
use stackfill::polyomino::{chain_stats, gen_poly_shard, FillingFile, ShapeFile};
use stackfill::verify::{run_suite, RunReport, Suite, VerifyParams};
use stackfill::{EquivBudget, GenPoly, LinkedPartition, Mode, Shard, Verdict, Word};

#[derive(Parser)]
#[command(
    name = "stackfill",
    version,
    about = "Hecke insertion, growth diagrams and chain statistics of polyomino fillings"
)]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit machine-readable JSON where the default is text.
    #[arg(long, global = true)]
    json: bool,
    /// Split enumerations into this many shards.
    #[arg(long, global = true, default_value_t = 1)]
    shards: u32,
    /// Run only this shard (0-based); all shards when omitted.
    #[arg(long, global = true)]
    shard: Option<u32>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    P,
    Q,
    Both,
    Diagram,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    MoveUp,
    ToFerrers,
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkedMap {
    RowMoves,
    Transpose,
    Border,
}

#[derive(Subcommand)]
enum Command {
    /// Hecke insertion of a word.
    Hecke {
        #[arg(long)]
        word: Word,
        #[arg(long, value_enum, default_value = "both")]
        emit: Emit,
    },
    /// Growth diagram of a word.
    Growth {
        #[arg(long)]
        word: Word,
        #[arg(long, value_enum, default_value = "diagram")]
        emit: Emit,
    },
    /// Bounded search for a K-Knuth derivation between two words.
    Kknuth {
        #[arg(long)]
        w1: Word,
        #[arg(long)]
        w2: Word,
        /// Longest intermediate word; default is the longer input plus 4.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        max_states: usize,
    },
    /// Distribution of (ne, se) over the fillings of a shape.
    Enumerate {
        #[arg(long)]
        shape: PathBuf,
        /// all, n=K, rowsums=a,b,... or cover
        #[arg(long, default_value = "all")]
        mode: Mode,
    },
    /// Row moves on a filling of a stack polyomino.
    Bijection {
        #[arg(long)]
        filling: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Recompute chain statistics on both sides and fail on a mismatch.
        #[arg(long)]
        certify: bool,
    },
    /// Crossing/nesting-swapping maps on linked partitions.
    Linked {
        /// Blocks separated by `|`, e.g. "1 2 3 5 6 | 2 4 7".
        #[arg(long)]
        partition: LinkedPartition,
        #[arg(long, value_enum, default_value = "row-moves")]
        map: LinkedMap,
    },
    /// Run verification suites.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        max_cells: Option<u32>,
        #[arg(long)]
        linked_max_n: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        kknuth_max_states: Option<usize>,
        /// Stop a suite at its first failing check.
        #[arg(long)]
        fail_fast: bool,
    },
}

struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn pass(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn shard_list(cli: &Cli) -> Result<Vec<Shard>, String> {
    if cli.shards == 0 {
        return Err("--shards must be positive".into());
    }
    match cli.shard {
        Some(i) if i >= cli.shards => Err(format!("--shard {i} out of range for --shards {}", cli.shards)),
        Some(i) => Ok(vec![Shard { index: i, count: cli.shards }]),
        None => Ok((0..cli.shards).map(|i| Shard { index: i, count: cli.shards }).collect()),
    }
}

fn run(cli: &Cli) -> Result<Output, String> {
    match &cli.command {
        Command::Hecke { word, emit } => {
            let pair = insert_word(word);
            let v = match emit {
                Emit::P => json!(pair.p),
                Emit::Q => json!(pair.q),
                Emit::Both | Emit::Diagram => json!({"p": pair.p, "q": pair.q}),
            };
            Ok(Output::pass(pretty(&v)))
        }
        Command::Growth { word, emit } => {
            let d = build_growth(&matrix_rep(word)).map_err(|e| e.to_string())?;
            let pair = extract_pq(&d);
            let v = match emit {
                Emit::Diagram => d.to_json(),
                Emit::P => json!(pair.p),
                Emit::Q => json!(pair.q),
                Emit::Both => json!({"p": pair.p, "q": pair.q}),
            };
            if !cli.json && matches!(emit, Emit::Diagram) {
                return Ok(Output::pass(d.render()));
            }
            Ok(Output::pass(pretty(&v)))
        }
        Command::Kknuth { w1, w2, max_len, max_states } => {
            let budget =
                EquivBudget { max_len: max_len.unwrap_or(w1.len().max(w2.len()) + 4), max_states: *max_states };
            let verdict = kknuth_equivalent(w1, w2, &budget);
            if cli.json {
                return Ok(Output::pass(pretty(&verdict)));
            }
            let text = match &verdict {
                Verdict::Equivalent { path } => {
                    let steps: Vec<String> = path.iter().map(|w| w.to_string()).collect();
                    format!("equivalent in {} steps\n{}", path.len() - 1, steps.join("\n"))
                }
                Verdict::NotFoundWithinBudget { explored, budget } => format!(
                    "not found within budget (max_len {}, {explored} words visited); no claim of inequivalence",
                    budget.max_len
                ),
            };
            Ok(Output::pass(text))
        }
        Command::Enumerate { shape, mode } => {
            let shape: ShapeFile = read_json(shape)?;
            let poly = shape.to_polyomino().map_err(|e| e.to_string())?;
            let mut g = GenPoly::default();
            for s in shard_list(cli)? {
                g.merge(&gen_poly_shard(&poly, mode, s));
            }
            if cli.json {
                Ok(Output::pass(serde_json::to_string(&g).expect("serializable")))
            } else {
                Ok(Output::pass(pretty(&g)))
            }
        }
        Command::Bijection { filling, op, certify } => {
            let file: FillingFile = read_json(filling)?;
            let m = file.to_filling().map_err(|e| e.to_string())?;
            let (out, certs) = match op {
                Op::MoveUp => {
                    let cert = stackfill::bijection::move_bottom_row_target(&m.shape).map_err(|e| e.to_string())?;
                    (f(&m).map_err(|e| e.to_string())?, vec![cert])
                }
                Op::ToFerrers => to_ferrers(&m).map_err(|e| e.to_string())?,
            };
            let (before, after) = (chain_stats(&m), chain_stats(&out));
            let ok = !certify || before == after;
            let moves: Vec<Value> = certs
                .iter()
                .map(|c| json!({"from": c.moved_row_from, "to": c.moved_row_to, "rectangle": c.rectangle}))
                .collect();
            let v = json!({
                "filling": FillingFile::from_filling(&out),
                "moves": moves,
                "stats_before": before,
                "stats_after": after,
                "certified": *certify && ok,
            });
            if !ok {
                eprintln!("chain statistics changed: {before:?} -> {after:?}");
            }
            Ok(Output { text: pretty(&v), ok })
        }
        Command::Linked { partition, map } => {
            let p = partition;
            let report = |q: &LinkedPartition| {
                json!({
                    "partition": q.to_string(),
                    "cross": q.cross(),
                    "nest": q.nest(),
                    "comp1": q.comp1(),
                    "comp2": q.comp2(),
                })
            };
            let image = match map {
                LinkedMap::RowMoves => Some(row_move_bijection(p).map_err(|e| e.to_string())?),
                LinkedMap::Transpose => Some(transpose_bijection(p).map_err(|e| e.to_string())?),
                LinkedMap::Border => None,
            };
            match image {
                Some(q) => {
                    if cli.json {
                        Ok(Output::pass(pretty(&json!({"input": report(p), "image": report(&q)}))))
                    } else {
                        let line = |q: &LinkedPartition| {
                            format!(
                                "{q}    cross={} nest={} comp1={:?} comp2={:?}",
                                q.cross(),
                                q.nest(),
                                q.comp1(),
                                q.comp2()
                            )
                        };
                        Ok(Output::pass(format!("{}\n{}", line(p), line(&q))))
                    }
                }
                None => {
                    let b = vacillating_border(p).map_err(|e| e.to_string())?;
                    if cli.json {
                        Ok(Output::pass(pretty(&b)))
                    } else {
                        Ok(Output::pass(b.to_string()))
                    }
                }
            }
        }
        Command::Verify { suite, max_cells, linked_max_n, samples, kknuth_max_states, fail_fast } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                suite
                    .split(',')
                    .map(|s| s.trim().parse::<Suite>().map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?
            };
            let mut params = VerifyParams { seed: cli.seed, fail_fast: *fail_fast, ..VerifyParams::default() };
            if let Some(v) = max_cells {
                params.max_cells = *v;
            }
            if let Some(v) = linked_max_n {
                params.linked_max_n = *v;
            }
            if let Some(v) = samples {
                params.random_samples = *v;
            }
            if let Some(v) = kknuth_max_states {
                params.kknuth_max_states = *v;
            }
            let shards = shard_list(cli)?;
            if shards.len() == 1 {
                params.shard = shards[0];
            }
            let mut reports: Vec<RunReport> = Vec::new();
            for s in suites {
                let rep = run_suite(s, &params);
                eprintln!("{}", rep.summary());
                let stop = !rep.passed() && *fail_fast;
                reports.push(rep);
                if stop {
                    break;
                }
            }
            let ok = reports.iter().all(RunReport::passed);
            let command: Vec<String> = std::env::args().collect();
            let text = if cli.json {
                pretty(&json!({"command": command.join(" "), "passed": ok, "reports": reports}))
            } else {
                let mut lines = Vec::new();
                for r in &reports {
                    for c in &r.checks {
                        let tag = match (c.passed, c.informational) {
                            (true, _) => "PASS",
                            (false, false) => "FAIL",
                            (false, true) => "NOTE",
                        };
                        lines.push(format!("{tag} {}/{} ({} ms): {}", r.suite, c.id, c.millis, c.detail));
                    }
                }
                lines.push(if ok { "all checks passed".into() } else { "some checks failed".into() });
                lines.join("\n")
            };
            Ok(Output { text, ok })
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")
        }
        Some(path) => {
            // write-then-rename so readers never see a partial file
            let tmp = path.with_extension("partial");
            fs::write(&tmp, format!("{text}\n"))?;
            fs::rename(&tmp, path)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli.out, &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

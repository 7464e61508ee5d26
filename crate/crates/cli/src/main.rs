use std::fmt;
use std::fs;
use std::net::SocketAddr;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use greenseq_core::{
    check_triangular_extension, cross_validate, dt_product, enumerate_maximal_chains, restrict_mgs, rotate,
    search, sequences_agree, verify_sequence, Arrow, Mode, MutationSequence, Quiver, SearchConfig, Strategy,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "greenseq", version, about = "Maximal green sequences, c-vectors and quantum dilogarithm identities")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel search (defaults to all cores).
    #[arg(long, global = true, env = "GREENSEQ_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QuiverArg {
    /// Quiver JSON file (an explorer export also works), or a preset name
    /// such as A3, Q_{2,2,2}, kronecker, 3-cycle.
    #[arg(long)]
    quiver: String,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a quiver at one vertex or along a sequence.
    Mutate {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Vertex, or comma-separated sequence of vertices.
        #[arg(long)]
        at: MutationSequence,
    },
    /// Search for maximal green (or reddening) sequences up to a length bound.
    Search {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        max_len: usize,
        /// Only a shortest sequence (breadth-first).
        #[arg(long, conflicts_with = "count")]
        shortest: bool,
        /// Only count sequences.
        #[arg(long)]
        count: bool,
        /// maximal-green or reddening.
        #[arg(long, default_value = "maximal-green")]
        mode: Mode,
        /// Prune revisited states (always on for --shortest and --count).
        #[arg(long)]
        dedup: bool,
    },
    /// Check a sequence in green, maximal-green or reddening mode.
    Verify {
        #[command(flatten)]
        quiver: QuiverArg,
        /// Defaults to the sequence stored in the quiver file, if any.
        #[arg(long)]
        seq: Option<MutationSequence>,
        #[arg(long, default_value = "maximal-green")]
        mode: Mode,
    },
    /// Product of quantum dilogarithms along a sequence, truncated at a degree.
    Dt {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        seq: Option<MutationSequence>,
        #[arg(long)]
        degree: u32,
    },
    /// Compare the products of two sequences coefficientwise.
    Identity {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        seq1: MutationSequence,
        #[arg(long)]
        seq2: MutationSequence,
        #[arg(long)]
        degree: u32,
    },
    /// Restrict a maximal green sequence to a full subquiver.
    Restrict {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        seq: Option<MutationSequence>,
        /// Comma-separated vertices to keep.
        #[arg(long, value_delimiter = ',', required = true)]
        keep: Vec<usize>,
    },
    /// Rotate a maximal green or reddening sequence.
    Rotate {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        seq: Option<MutationSequence>,
    },
    /// Search a triangular extension and restrict the result to both blocks.
    Extension {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        /// Cross arrows as i-j or i-j-m in combined numbering, comma-separated.
        #[arg(long, value_delimiter = ',')]
        cross: Vec<String>,
        #[arg(long)]
        max_len: usize,
    },
    /// Maximal brick chains of linear A_n, or their comparison with c-vectors.
    Bricks {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cross_validate: bool,
    },
    /// Run the explorer session service.
    Serve {
        #[arg(long, default_value_t = 7878)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<greenseq_core::Error> for UsageError {
    fn from(e: greenseq_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<bool, UsageError>;

struct Input {
    quiver: Quiver,
    sequence: Option<MutationSequence>,
}

fn load(spec: &str) -> Result<Input, UsageError> {
    if !Path::new(spec).exists() {
        if let Some(q) = Quiver::preset(spec) {
            return Ok(Input {
                quiver: q,
                sequence: None,
            });
        }
    }
    let text = fs::read_to_string(spec).map_err(|e| UsageError(format!("{spec}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| UsageError(format!("{spec}: {e}")))?;
    let quiver = Quiver::from_json(&value).map_err(|e| UsageError(format!("{spec}: {e}")))?;
    let sequence = ["sequence", "seq"]
        .iter()
        .find_map(|k| value.get(*k).and_then(Value::as_str))
        .map(|s| s.parse().map_err(|e| UsageError(format!("{spec}: {e}"))))
        .transpose()?;
    Ok(Input { quiver, sequence })
}

fn pick_sequence(flag: Option<MutationSequence>, input: &Input) -> Result<MutationSequence, UsageError> {
    flag.or_else(|| input.sequence.clone())
        .ok_or_else(|| UsageError("no --seq given and the quiver file has no sequence".into()))
}

fn print(json_mode: bool, value: &Value, human: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        println!("{}", human());
    }
}

fn parse_cross(spec: &str) -> Result<Arrow, UsageError> {
    let parts: Vec<usize> = spec
        .split('-')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError(format!("bad cross arrow {spec:?}, expected i-j or i-j-m")))?;
    match parts[..] {
        [i, j] => Ok(Arrow::new(i, j, 1)),
        [i, j, m] => Ok(Arrow::new(i, j, m)),
        _ => Err(UsageError(format!("bad cross arrow {spec:?}, expected i-j or i-j-m"))),
    }
}

fn run(cli: Cli) -> CliResult {
    let j = cli.json;
    match cli.command {
        Command::Mutate { quiver, at } => {
            let q = load(&quiver.quiver)?.quiver.mutate_sequence(at.vertices())?;
            print(j, &q.to_json(), || q.to_string());
            Ok(true)
        }
        Command::Search {
            quiver,
            max_len,
            shortest,
            count,
            mode,
            dedup,
        } => {
            let q = load(&quiver.quiver)?.quiver;
            let mut cfg = match mode {
                Mode::MaximalGreen => SearchConfig::maximal_green(max_len),
                Mode::Reddening => SearchConfig::reddening(max_len),
                Mode::Green => return Err(UsageError("search mode must be maximal-green or reddening".into())),
            };
            cfg = cfg.dedup(dedup || shortest || count);
            if shortest {
                cfg = cfg.strategy(Strategy::BfsShortest);
            } else if count {
                cfg = cfg.strategy(Strategy::CountOnly);
            }
            let report = search(&q, &cfg)?;
            let value = serde_json::to_value(&report).unwrap();
            print(j, &value, || {
                let mut out = String::new();
                for s in &report.sequences {
                    out.push_str(&format!("{s}\n"));
                }
                out.push_str(&format!("{} found", report.count));
                if report.truncated {
                    out.push_str(&format!(" (truncated at length {max_len})"));
                }
                out
            });
            Ok(report.found())
        }
        Command::Verify { quiver, seq, mode } => {
            let input = load(&quiver.quiver)?;
            let seq = pick_sequence(seq, &input)?;
            let v = verify_sequence(&input.quiver, &seq, mode)?;
            let c_vectors: Vec<String> = v.steps.iter().map(|s| s.c_vector.to_string()).collect();
            let value = json!({
                "valid": v.is_valid(),
                "mode": mode.name(),
                "sequence": seq,
                "all_red": v.all_red,
                "failure": v.failure,
                "permutation": v.permutation.as_ref().map(|p| p.image().to_vec()),
                "c_vectors": v.steps.iter().map(|s| s.c_vector.entries().iter().map(greenseq_core::bigjson::to_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            print(j, &value, || {
                let mut out = format!("c-vectors: {}\n", c_vectors.join(" "));
                match (&v.failure, &v.permutation) {
                    (Some(f), _) => out.push_str(&format!("not a {mode} sequence: {f}")),
                    (None, Some(p)) => out.push_str(&format!("valid {mode} sequence, permutation {}", p.cycle_notation())),
                    (None, None) => out.push_str(&format!("valid {mode} sequence")),
                }
                out
            });
            Ok(v.is_valid())
        }
        Command::Dt { quiver, seq, degree } => {
            let input = load(&quiver.quiver)?;
            let seq = pick_sequence(seq, &input)?;
            let product = dt_product(&input.quiver, &seq, degree)?;
            print(j, &product.to_json(), || product.to_string());
            Ok(true)
        }
        Command::Identity {
            quiver,
            seq1,
            seq2,
            degree,
        } => {
            let q = load(&quiver.quiver)?.quiver;
            let equal = sequences_agree(&q, &seq1, &seq2, degree)?;
            let value = json!({ "equal": equal, "degree": degree, "seq1": seq1, "seq2": seq2 });
            print(j, &value, || {
                let verdict = if equal { "agree" } else { "differ" };
                format!("products of {seq1} and {seq2} {verdict} up to degree {degree}")
            });
            Ok(equal)
        }
        Command::Restrict { quiver, seq, keep } => {
            let input = load(&quiver.quiver)?;
            let seq = pick_sequence(seq, &input)?;
            let (sub, restricted) = restrict_mgs(&input.quiver, &seq, &keep)?;
            let value = json!({
                "vertices": sub.vertices,
                "quiver": sub.quiver.to_json(),
                "sequence": restricted,
            });
            print(j, &value, || {
                format!(
                    "subquiver on {:?} ({}): {}",
                    sub.vertices,
                    sub.quiver,
                    if restricted.is_empty() { "(empty)".to_string() } else { restricted.to_string() }
                )
            });
            Ok(true)
        }
        Command::Rotate { quiver, seq } => {
            let input = load(&quiver.quiver)?;
            let seq = pick_sequence(seq, &input)?;
            let (q, rotated) = rotate(&input.quiver, &seq)?;
            let value = json!({ "quiver": q.to_json(), "sequence": rotated });
            print(j, &value, || format!("{rotated} on {q}"));
            Ok(true)
        }
        Command::Extension {
            first,
            second,
            cross,
            max_len,
        } => {
            let (q1, q2) = (load(&first)?.quiver, load(&second)?.quiver);
            let cross = cross.iter().map(|c| parse_cross(c)).collect::<Result<Vec<_>, _>>()?;
            let report = check_triangular_extension(&q1, &q2, &cross, max_len)?;
            let value = serde_json::to_value(&report).unwrap();
            print(j, &value, || {
                let show = |s: &Option<MutationSequence>| s.as_ref().map_or("none".to_string(), |s| s.to_string());
                format!(
                    "first: {}\nsecond: {}\nextension: {}\nrestricted: {} / {}",
                    show(&report.first_mgs),
                    show(&report.second_mgs),
                    show(&report.extension_mgs),
                    show(&report.restricted_first),
                    show(&report.restricted_second),
                )
            });
            Ok(report.extension_mgs.is_some())
        }
        Command::Bricks { n, cross_validate: cv } => {
            if cv {
                let r = cross_validate(n)?;
                let value = serde_json::to_value(&r).unwrap();
                print(j, &value, || {
                    format!(
                        "n={}: {} maximal green sequences, {} brick chains, {}",
                        r.n,
                        r.mgs_count,
                        r.chain_count,
                        if r.agree { "c-vectors match" } else { "MISMATCH" }
                    )
                });
                Ok(r.agree)
            } else {
                let chains = enumerate_maximal_chains(n)?;
                let value = serde_json::to_value(&chains).unwrap();
                print(j, &value, || {
                    chains
                        .iter()
                        .map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                        .collect::<Vec<_>>()
                        .join("\n")
                });
                Ok(true)
            }
        }
        Command::Serve { port, host } => {
            let addr: SocketAddr = format!("{host}:{port}")
                .parse()
                .map_err(|e| UsageError(format!("bad address {host}:{port}: {e}")))?;
            let rt = tokio::runtime::Runtime::new().map_err(|e| UsageError(e.to_string()))?;
            eprintln!("listening on http://{addr}");
            rt.block_on(greenseq_service::serve(addr))
                .map_err(|e| UsageError(format!("server error: {e}")))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("greenseq: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("greenseq: {e}");
            ExitCode::from(2)
        }
    }
}

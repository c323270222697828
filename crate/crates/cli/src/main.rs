use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use symquiver::functors::reflect_pair_symmetric;
use symquiver::generators::{enumerate_generators, Evaluator};
use symquiver::oracle::{
    verify_generation, verify_invariance, verify_invariance_all, verify_pfaffian, verify_reflection_transport,
    weight_space_table, VerificationReport,
};
use symquiver::repfile::RepFile;
use symquiver::schur::{lr_decompose, Partition};
use symquiver::semiinv::interval_resolution;
use symquiver::{Kind, SymmetricQuiver, SymmetricRepresentation};

#[derive(Parser)]
#[command(name = "symquiver", version, about = "Semi-invariants of orthogonal and symplectic quiver representations")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the generating semi-invariants at a dimension vector.
    Generators(Target),
    /// Evaluate a semi-invariant (cV:j,i, pf:j,i or pf:i) on a representation file.
    Eval {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        semiinv: String,
    },
    /// Run one of the randomized or oracle-based checks.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Littlewood-Richardson decomposition of S_lambda ⊗ S_mu.
    Lr {
        lambda: String,
        mu: String,
        /// Drop partitions with more rows than this.
        #[arg(long)]
        max_height: Option<usize>,
    },
    /// Weight-space dimensions from the Lie and chain oracles side by side.
    Weightspace {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Minimal projective resolution of an interval module.
    Resolve {
        #[arg(long)]
        quiver: String,
        /// `j,i` for V_{j,i}.
        #[arg(long)]
        interval: String,
    },
    /// Reflect a representation file at an admissible pair; prints a representation file.
    Reflect {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        pair: usize,
        #[arg(long)]
        quiver: Option<String>,
    },
    /// Symmetric orientations of A_m with admissible pairs and reflection paths.
    Orientations {
        #[arg(long)]
        quiver: String,
    },
}

#[derive(Args)]
struct Target {
    #[arg(long)]
    quiver: String,
    #[arg(long)]
    dim: String,
    #[arg(long)]
    kind: String,
}

#[derive(Subcommand)]
enum Check {
    /// f(g^{-1} W) = tau(g) f(W) for every generator, or one given by --semiinv.
    Invariance {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        semiinv: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lie-oracle dimensions against generator monomial ranks.
    Generation {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
    },
    /// Constant ratio of c^V and c^{C+V}∘C+ at every admissible pair.
    Transport {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        dim: Option<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Skewness of the paired Hom matrix and pf^2 = ±c^V.
    Pfaffian {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Ok(String),
    Report(VerificationReport),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Report(r)) => {
            match cli.format {
                Format::Text => print!("{}", r.to_text()),
                Format::Json => println!("{}", r.to_json()),
            }
            if r.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_list(s: &str) -> symquiver::Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| symquiver::Error::Parse(format!("{t:?} in {s:?} is not a nonnegative integer")))
        })
        .collect()
}

fn target(t: &Target) -> symquiver::Result<(SymmetricQuiver, Vec<usize>, Kind)> {
    let q: SymmetricQuiver = t.quiver.parse()?;
    let dim = parse_list(&t.dim)?;
    let kind: Kind = t.kind.parse()?;
    symquiver::rep::check_symmetric_dim(&q, kind, &dim)?;
    Ok((q, dim, kind))
}

fn read_rep(path: &PathBuf) -> symquiver::Result<SymmetricRepresentation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| symquiver::Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    RepFile::from_json(&text)?.to_rep()
}

fn run(cli: &Cli) -> symquiver::Result<Outcome> {
    let json = cli.format == Format::Json;
    let out = match &cli.command {
        Command::Generators(t) => {
            let (q, dim, kind) = target(t)?;
            let gens = enumerate_generators(&q, &dim, kind)?;
            if json {
                serde_json::to_string_pretty(&gens).expect("serializes") + "\n"
            } else {
                gens.iter().map(|g| format!("{g}\n")).collect()
            }
        }
        Command::Eval { rep, semiinv } => {
            let sw = read_rep(rep)?;
            let e = Evaluator::from_code(semiinv, sw.quiver(), sw.kind(), sw.dim())?;
            let value = e.eval(&sw)?;
            if json {
                format!("{}\n", json!({"semiinv": e.descriptor.code(), "value": value.to_string()}))
            } else {
                format!("{value}\n")
            }
        }
        Command::Verify { check } => return verify(check).map(Outcome::Report),
        Command::Lr { lambda, mu, max_height } => {
            let l: Partition = lambda.parse()?;
            let m: Partition = mu.parse()?;
            let h = max_height.unwrap_or(l.height() + m.height());
            let terms = lr_decompose(&l, &m, h);
            if json {
                let rows: Vec<_> = terms
                    .iter()
                    .map(|(p, c)| json!({"partition": p.to_string(), "multiplicity": c}))
                    .collect();
                serde_json::to_string_pretty(&rows).expect("serializes") + "\n"
            } else {
                terms.iter().map(|(p, c)| format!("{p}: {c}\n")).collect()
            }
        }
        Command::Weightspace { target: t, degree } => {
            let (q, dim, kind) = target(t)?;
            let rows = weight_space_table(&q, kind, &dim, *degree)?;
            if json {
                serde_json::to_string_pretty(&rows).expect("serializes") + "\n"
            } else {
                let mut s = format!("{:<24} {:>6} {:>5} {:>5}\n", "weight", "degree", "lie", "chain");
                for r in rows {
                    let chain = r.chain_dim.map_or("-".to_string(), |c| c.to_string());
                    s += &format!("{:<24} {:>6} {:>5} {:>5}\n", r.weight, r.degree, r.lie_dim, chain);
                }
                s
            }
        }
        Command::Resolve { quiver, interval } => {
            let q: SymmetricQuiver = quiver.parse()?;
            let iv = parse_list(interval)?;
            let [j, i] = iv[..] else {
                return Err(symquiver::Error::Parse(format!("interval {interval:?} should be j,i")));
            };
            let res = interval_resolution(q.quiver(), j, i)?;
            if json {
                format!(
                    "{}\n",
                    json!({"p1": res.p1_multiplicities(), "p0": res.p0_multiplicities(), "display": res.to_string()})
                )
            } else {
                res.to_string()
            }
        }
        Command::Reflect { rep, pair, quiver } => {
            let sw = read_rep(rep)?;
            if let Some(qs) = quiver {
                let q: SymmetricQuiver = qs.parse()?;
                if &q != sw.quiver() {
                    return Err(symquiver::Error::Quiver(format!(
                        "--quiver {q} does not match the file's {}",
                        sw.quiver()
                    )));
                }
            }
            let out = reflect_pair_symmetric(&sw, *pair)?;
            RepFile::from_rep(&out).to_json() + "\n"
        }
        Command::Orientations { quiver } => {
            let q: SymmetricQuiver = quiver.parse()?;
            let mut rows = Vec::new();
            for o in SymmetricQuiver::all_orientations(q.m()) {
                let pairs = o.admissible_pairs();
                let path = q.orientation_path(&o).ok();
                rows.push((o, pairs, path));
            }
            if json {
                let v: Vec<_> = rows
                    .iter()
                    .map(|(o, p, path)| json!({"quiver": o.to_string(), "pairs": p, "path_from_input": path}))
                    .collect();
                serde_json::to_string_pretty(&v).expect("serializes") + "\n"
            } else {
                let mut s = String::new();
                for (o, p, path) in rows {
                    let pairs: Vec<String> = p.iter().map(|(x, y)| format!("({x},{y})")).collect();
                    let path = match path {
                        Some(p) => format!("{p:?}"),
                        None => "unreachable".to_string(),
                    };
                    s += &format!("{o}  pairs {}  path {path}\n", pairs.join(" "));
                }
                s
            }
        }
    };
    Ok(Outcome::Ok(out))
}

fn verify(check: &Check) -> symquiver::Result<VerificationReport> {
    match check {
        Check::Invariance { target: t, semiinv, trials, seed } => {
            let (q, dim, kind) = target(t)?;
            match semiinv {
                Some(code) => {
                    let e = Evaluator::from_code(code, &q, kind, &dim)?;
                    verify_invariance(&e.descriptor, &q, &dim, kind, *trials, *seed)
                }
                None => verify_invariance_all(&q, &dim, kind, *trials, *seed),
            }
        }
        Check::Generation { target: t, dmax } => {
            let (q, dim, kind) = target(t)?;
            verify_generation(&q, &dim, kind, *dmax)
        }
        Check::Transport { quiver, kind, dim, trials, seed } => {
            let q: SymmetricQuiver = quiver.parse()?;
            let kind: Kind = kind.parse()?;
            let dim = dim.as_deref().map(parse_list).transpose()?;
            if let Some(d) = &dim {
                symquiver::rep::check_symmetric_dim(&q, kind, d)?;
            }
            if q.admissible_pairs().is_empty() {
                return Err(symquiver::Error::Precondition(format!("{q} has no admissible sink-source pair")));
            }
            verify_reflection_transport(&q, kind, dim.as_deref(), *trials, *seed)
        }
        Check::Pfaffian { target: t, trials, seed } => {
            let (q, dim, kind) = target(t)?;
            verify_pfaffian(&q, &dim, kind, *trials, *seed)
        }
    }
}

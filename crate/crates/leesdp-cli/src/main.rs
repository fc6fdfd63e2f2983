//! `leesdp` — generate, check and solve symmetry-reduced SDP bounds for
//! Lee codes and strong powers of circular graphs.
//!
//! Exit codes: 0 success, 1 usage or generation errors, 2 a verification
//! or table comparison failed, 3 the external solver failed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use leesdp::sdp::{build_program, parse_solution_and_floor, BoundParams, Route, SdpProgram, Variant};
use leesdp::symmetry::OrbitTable;
use leesdp::words::Metric;
use leesdp::Error;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, ExitCode};

#[derive(Parser)]
#[command(name = "leesdp", version, about = "Symmetry-reduced SDP bounds for Lee codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    /// Sum of circular coordinate distances.
    Lee,
    /// Maximum circular coordinate distance.
    LeeInf,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Lee => Metric::Lee,
            MetricArg::LeeInf => Metric::LeeInf,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Pair relaxation (a linear program on the cosine route).
    B2,
    /// Triple relaxation with anchored blocks.
    B3,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Auto,
    Integer,
    Cosine,
}

#[derive(Args)]
struct ProgramArgs {
    /// Alphabet size q.
    q: u32,
    /// Word length n.
    n: usize,
    /// Minimum distance d.
    d: u32,
    #[arg(long, value_enum, default_value = "lee-inf")]
    metric: MetricArg,
    #[arg(long, value_enum, default_value = "b3")]
    variant: VariantArg,
    /// How to reduce the unanchored part.
    #[arg(long, value_enum, default_value = "auto")]
    route: RouteArg,
    /// Rescale the coupling block and the objective by qⁿ.
    #[arg(long)]
    scale: bool,
    /// Guard against accidental huge enumerations.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
}

impl ProgramArgs {
    fn build(&self) -> leesdp::Result<SdpProgram> {
        if self.n > self.max_n {
            return Err(Error::InvalidArgument(format!(
                "n = {} exceeds --max-n = {}",
                self.n, self.max_n
            )));
        }
        let params = BoundParams {
            q: self.q,
            n: self.n,
            d: self.d,
            metric: self.metric.into(),
            variant: match self.variant {
                VariantArg::B2 => Variant::B2,
                VariantArg::B3 => Variant::B3,
            },
            route: match self.route {
                RouteArg::Auto => Route::Auto,
                RouteArg::Integer => Route::Integer,
                RouteArg::Cosine => Route::Cosine,
            },
            scale: self.scale,
        };
        build_program(&params)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the reduced program in sparse SDPA format.
    Generate {
        #[command(flatten)]
        args: ProgramArgs,
        /// Output file (stdout when omitted).
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Print a JSON block summary to stderr.
        #[arg(long)]
        summary: bool,
    },
    /// Generate, run the external solver, and report the bound.
    Bound {
        #[command(flatten)]
        args: ProgramArgs,
        /// Solver executable; defaults to $LEESDP_SOLVER.  Invoked as
        /// `<solver> <program.dat-s> <solution.txt>`.
        #[arg(long)]
        solver: Option<String>,
        /// Keep the emitted program at this path.
        #[arg(long)]
        keep: Option<PathBuf>,
    },
    /// Exact optimum by brute force and layer decomposition.
    Oracle {
        q: u32,
        n: usize,
        d: u32,
        #[arg(long, value_enum, default_value = "lee-inf")]
        metric: MetricArg,
        /// Word-count cap for the search space.
        #[arg(long)]
        cap: Option<u128>,
        /// Print an optimal code.
        #[arg(long)]
        witness: bool,
    },
    /// Run the verification oracles at one parameter set.
    Selfcheck {
        q: u32,
        n: usize,
        /// Soundness sampling trials.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0xc0ffee)]
        seed: u64,
        /// Also transfer the exact optimum at this distance.
        #[arg(long)]
        transfer_d: Option<u32>,
        #[arg(long, value_enum, default_value = "lee-inf")]
        metric: MetricArg,
    },
    /// Dump the orbit table as tab-separated values.
    Orbits {
        q: u32,
        n: usize,
        /// Skip orbit sizes when the group is larger than this.
        #[arg(long)]
        size_cap: Option<u128>,
    },
    /// Recompute the variable-count table and compare with the published
    /// values.
    Table {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

/// Published variable counts for the third-level programs, `n = 1..=5`.
/// The `(7, 1, 2)` entry is 4: printed tabulations list 3 for that cell,
/// missing the feasible triple with circular gaps `(2, 2, 3)`.
const TABLE_CELLS: &[(u32, u32, [usize; 5])] = &[
    (5, 2, [2, 9, 48, 214, 799]),
    (7, 2, [4, 43, 423, 3161, 19023]),
    (7, 3, [2, 12, 137, 1316, 9745]),
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::VerificationFailed(_) => ExitCode::from(2),
                Error::SolverOutput(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> leesdp::Result<ExitCode> {
    match cli.cmd {
        Cmd::Generate { args, out, summary } => {
            let program = args.build()?;
            if summary {
                eprintln!("{}", program.summary_json());
            }
            let text = program.emit_sdpa();
            match out {
                Some(path) => std::fs::write(&path, text).map_err(io_err)?,
                None => std::io::stdout().write_all(text.as_bytes()).map_err(io_err)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Bound { args, solver, keep } => {
            let solver = solver
                .or_else(|| std::env::var("LEESDP_SOLVER").ok())
                .filter(|s| !s.is_empty())
                .ok_or_else(|| {
                    Error::InvalidArgument(
                        "no solver: pass --solver or set LEESDP_SOLVER".into(),
                    )
                })?;
            let program = args.build()?;
            let dir = tempfile::tempdir().map_err(io_err)?;
            let input = match &keep {
                Some(path) => path.clone(),
                None => dir.path().join("program.dat-s"),
            };
            let output = dir.path().join("solution.txt");
            std::fs::write(&input, program.emit_sdpa()).map_err(io_err)?;
            let run = Command::new(&solver)
                .arg(&input)
                .arg(&output)
                .output()
                .map_err(|e| Error::SolverOutput(format!("could not run {solver}: {e}")))?;
            if !run.status.success() {
                return Err(Error::SolverOutput(format!(
                    "solver exited with {}: {}",
                    run.status,
                    String::from_utf8_lossy(&run.stderr)
                )));
            }
            let mut text = String::from_utf8_lossy(&run.stdout).into_owned();
            if let Ok(extra) = std::fs::read_to_string(&output) {
                text.push('\n');
                text.push_str(&extra);
            }
            let sol = parse_solution_and_floor(&text, program.objective_scale, 1e-4)?;
            println!(
                "bound = {:.6}  floor = {}  (primal {:.6e}, dual {:.6e}{})",
                sol.bound,
                sol.floored,
                sol.primal,
                sol.dual,
                if sol.trusted { "" } else { ", gap above tolerance" }
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Oracle { q, n, d, metric, cap, witness } => {
            let (best, words) =
                leesdp::words::brute_force_optimum(q, n, d, metric.into(), cap)?;
            println!("optimum = {best}");
            if witness {
                for w in words {
                    println!("{w}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Selfcheck { q, n, trials, seed, transfer_d, metric } => {
            let c = leesdp::verify::check_block_coefficients(q, n)?;
            println!(
                "coefficients: {} anchored, {} unanchored, {} cosine entries exact \
                 ({} cross pairs orthogonal)",
                c.anchored_entries, c.unanchored_entries, c.cosine_entries, c.cross_pairs
            );
            let s = leesdp::verify::reduction_soundness(q, n, trials, seed)?;
            println!(
                "soundness: {} trials agree on both sides ({} resampled)",
                s.trials, s.resampled
            );
            if let Some(d) = transfer_d {
                let t = leesdp::verify::feasibility_transfer(q, n, d, metric.into())?;
                println!(
                    "transfer: optimum {} accepted by {} blocks ({} orbits hit)",
                    t.optimum, t.blocks_checked, t.orbits_hit
                );
            }
            println!("selfcheck q={q} n={n}: ok");
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Orbits { q, n, size_cap } => {
            let table = OrbitTable::build(q, n)?;
            let mut out = std::io::stdout().lock();
            table.dump_tsv(&mut out, size_cap).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Table { max_n } => {
            let mut mismatches = 0;
            for q in [5u32, 7] {
                for n in 1..=max_n.min(5) {
                    let table = OrbitTable::build(q, n)?;
                    for &(eq, d, cells) in TABLE_CELLS {
                        if eq != q {
                            continue;
                        }
                        let got = table.feasible_up_to(d, Metric::LeeInf, 3).len();
                        let want = cells[n - 1];
                        if got == want {
                            println!("({q},{n},{d}): {got} variables — match");
                        } else {
                            mismatches += 1;
                            println!("({q},{n},{d}): {got} variables — MISMATCH, expected {want}");
                        }
                    }
                }
            }
            if mismatches > 0 {
                return Err(Error::VerificationFailed(format!(
                    "{mismatches} table cells disagree"
                )));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::SolverOutput(e.to_string())
}

//! Shared helpers for the acceptance suite: invoking an external
//! SDPA-compatible solver when one is configured.

use leesdp::sdp::{parse_solution_and_floor, SdpProgram, SolveReport};
use std::process::Command;

/// Path of the external solver from `LEESDP_SOLVER`, if set.
pub fn solver() -> Option<String> {
    std::env::var("LEESDP_SOLVER").ok().filter(|s| !s.is_empty())
}

/// Run the configured solver on an emitted program.  The contract is
/// `<solver> <input.dat-s> <output-file>`; results are parsed from stdout
/// and the output file combined, whichever carries the objective lines.
pub fn solve(program: &SdpProgram) -> leesdp::Result<SolveReport> {
    let solver = solver().expect("caller checks for a configured solver");
    let dir = tempfile::tempdir().map_err(io_err)?;
    let input = dir.path().join("program.dat-s");
    let output = dir.path().join("solution.txt");
    std::fs::write(&input, program.emit_sdpa()).map_err(io_err)?;
    let run = Command::new(&solver).arg(&input).arg(&output).output().map_err(io_err)?;
    if !run.status.success() {
        return Err(leesdp::Error::SolverOutput(format!(
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
    parse_solution_and_floor(&text, program.objective_scale, 1e-4)
}

fn io_err(e: std::io::Error) -> leesdp::Error {
    leesdp::Error::SolverOutput(e.to_string())
}

use clap::{Parser, Subcommand};
use std::process::ExitCode;
use superalg::heisenberg::HeisenbergParity;
use superalg::orbit::SolveWindow;
use superalg_cli::commands;
use superalg_cli::report::Report;
use superalg_cli::scenario::parse_scenario;

/// Exact symbolic checks for supercommutative algebra: Heisenberg-type
/// supergroups, orbit and isotropy computations, the canonical 2-form, and
/// odd Fourier analysis.
#[derive(Parser)]
#[command(name = "superalg", version, about)]
struct Cli {
    /// Emit the report as JSON (always on; kept for compatibility)
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group law, invariant fields, and coadjoint checks for one parity row
    Heisenberg {
        /// Parity row: eee, ooe, eoo, or oeo
        #[arg(long, default_value = "eee")]
        parity: String,
        /// One of: fields, brackets, adstar, law
        #[arg(default_value = "brackets")]
        subcommand: String,
    },
    /// Rank, isotropy, invariant, and quotient computations from a scenario
    Orbit {
        /// One of: check-rank, isotropy, invariants, quotient-check
        subcommand: String,
        /// Scenario file
        #[arg(long)]
        scenario: std::path::PathBuf,
        /// Degree cutoff for invariant computations
        #[arg(long, default_value_t = 3)]
        degree_cutoff: u32,
    },
    /// The canonical 2-form of a functional: matrix, kernel, closedness
    Kks {
        /// One of: matrix, kernel, closed
        subcommand: String,
        /// Scenario file
        #[arg(long)]
        scenario: std::path::PathBuf,
    },
    /// Fourier inversion and Plancherel identities on the odd Abelian group
    Plancherel {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        check_inversion: bool,
        #[arg(long)]
        check_plancherel: bool,
    },
    /// Polarized representation families
    Rep {
        /// One of: clifford, odd-heisenberg
        family: String,
        /// Verify the action and infinitesimal operators
        #[arg(long)]
        verify: bool,
        /// Verify the polarized membership equations instead
        #[arg(long)]
        membership: bool,
    },
    /// Group axioms for matrix supergroup points
    Gl {
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        reps: usize,
    },
    /// The odd translation action on differential forms
    Forms {
        #[arg(long, default_value_t = 2)]
        coords: usize,
        /// The form to act on, in the expression grammar
        #[arg(long)]
        expr: String,
    },
}

fn load_scenario(path: &std::path::Path) -> Result<superalg_cli::scenario::Scenario, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_scenario(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn dispatch(cli: Cli) -> Result<Report, String> {
    match cli.command {
        Command::Heisenberg { parity, subcommand } => {
            let p = HeisenbergParity::from_code(&parity).map_err(|e| e.to_string())?;
            commands::run_heisenberg(p, &subcommand)
        }
        Command::Orbit {
            subcommand,
            scenario,
            degree_cutoff,
        } => {
            let sc = load_scenario(&scenario)?;
            let window = SolveWindow::default();
            match subcommand.as_str() {
                "check-rank" => commands::run_orbit_check_rank(&sc, window),
                "isotropy" => commands::run_orbit_isotropy(&sc, window),
                "invariants" => commands::run_orbit_invariants(&sc, degree_cutoff),
                "quotient-check" => commands::run_orbit_quotient_check(&sc, degree_cutoff),
                other => Err(format!("unknown orbit subcommand `{other}`")),
            }
        }
        Command::Kks {
            subcommand,
            scenario,
        } => {
            let sc = load_scenario(&scenario)?;
            commands::run_kks(&sc, &subcommand, SolveWindow::default())
        }
        Command::Plancherel {
            n,
            check_inversion,
            check_plancherel,
        } => commands::run_plancherel(n, check_inversion, check_plancherel),
        Command::Rep {
            family,
            verify: _,
            membership,
        } => {
            if membership {
                commands::run_rep_membership(&family)
            } else {
                commands::run_rep(&family)
            }
        }
        Command::Gl { m, n, seed, reps } => commands::run_gl(m, n, seed, reps),
        Command::Forms { coords, expr } => commands::run_forms(coords, &expr),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(report) => {
            println!("{}", report.to_json());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

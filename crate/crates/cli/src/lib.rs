//! Command dispatch for the `cascade` binary.
//!
//! Every command returns a [`CommandOutcome`]: status 0 on success, 1 for a
//! negative answer (an infeasible design, a failed decode), 2 for usage,
//! parse, I/O and budget errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use cascade::{
    adaptive_trace, bounds_summary, check_feasible_thm1, check_injective_oracle,
    check_systematic_thm3, decode, design_for, exact_optimal_t, parse_design, randomized_design,
    run_design, to_systematic, upper_bound_randomized, write_design, Budget, DefectiveSet, Design,
    ExactOptions, FeasibilityReport, Seed, SimulatedOracle, RNG_NAME,
};
use clap::{Parser, Subcommand, ValueEnum};

pub const BUDGET_ENV: &str = "CASCADE_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub status: u8,
    pub report: String,
}

impl CommandOutcome {
    fn ok(report: String) -> Self {
        CommandOutcome { status: 0, report }
    }

    fn negative(report: String) -> Self {
        CommandOutcome { status: 1, report }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        CommandOutcome {
            status: 2,
            report: format!("error: {message}\n"),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cascade", version, about = "Cascaded group testing designs")]
struct Cli {
    /// Step budget for exhaustive checks and the exact solver.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = Budget::DEFAULT_STEPS)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenMethod {
    Recursive,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyMethod {
    /// Leader condition over all K-sets.
    Condition,
    /// Enumerate all defective sets and compare output vectors.
    Injectivity,
    /// Counting condition; the design must be in systematic form.
    Systematic,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a design file.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t = GenMethod::Recursive)]
        method: GenMethod,
        /// Seed for the random method.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of tests for the random method; defaults to the
        /// randomized upper bound.
        #[arg(long)]
        tests: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check whether a design file is feasible.
    Verify {
        #[arg(long)]
        design: PathBuf,
        #[arg(long, value_enum, default_value_t = VerifyMethod::Condition)]
        method: VerifyMethod,
        /// Check against this many defectives instead of the file's K.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Run a design against a defective set and decode the outputs.
    Simulate {
        #[arg(long)]
        design: PathBuf,
        /// Comma-separated items, e.g. `2,5`; empty for no defectives.
        #[arg(long, allow_hyphen_values = true)]
        defectives: String,
    },
    /// Print lower and upper bounds on the optimal design size.
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Compute the optimal design size exactly (tiny instances only).
    Solve {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Write the optimal design here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search without fixing the first test to the identity.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Trace the adaptive search against a hidden defective set.
    Adaptive {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        defectives: String,
    },
    /// Reduce a design to systematic form.
    Systematize {
        #[arg(long)]
        design: PathBuf,
        /// Output path; the reduced design is printed when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            return CommandOutcome {
                status,
                report: e.render().to_string(),
            };
        }
    };
    let budget = Budget::new(cli.budget);
    let result = match cli.command {
        Command::Gen {
            n,
            k,
            method,
            seed,
            tests,
            out,
        } => gen(n, k, method, seed, tests, &out, budget),
        Command::Verify { design, method, k } => verify(&design, method, k, budget),
        Command::Simulate { design, defectives } => simulate(&design, &defectives, budget),
        Command::Bounds { n, k } => bounds(n, k),
        Command::Solve {
            n,
            k,
            out,
            no_symmetry,
        } => solve(n, k, out.as_deref(), !no_symmetry, budget),
        Command::Adaptive { n, k, defectives } => adaptive(n, k, &defectives),
        Command::Systematize { design, out } => systematize(&design, out.as_deref()),
    };
    result.unwrap_or_else(CommandOutcome::error)
}

type Outcome = Result<CommandOutcome, String>;

fn read_design(path: &Path) -> Result<Design, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_design(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, design: &Design, comments: &[String]) -> Result<(), String> {
    let text = write_design(design, comments).map_err(|e| e.to_string())?;
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_items(list: &str) -> Result<DefectiveSet, String> {
    let items = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| format!("not an item: {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    DefectiveSet::from_items(items).map_err(|e| e.to_string())
}

fn feasibility_line(report: &FeasibilityReport) -> String {
    match report.witness() {
        None => "FEASIBLE".into(),
        Some(w) => format!("INFEASIBLE\nwitness: {w}"),
    }
}

fn gen(
    n: u32,
    k: u32,
    method: GenMethod,
    seed: u64,
    tests: Option<usize>,
    out: &Path,
    budget: Budget,
) -> Outcome {
    let summary = bounds_summary(n, k).map_err(|e| e.to_string())?;
    let (design, provenance) = match method {
        GenMethod::Recursive => {
            let d = design_for(n, k).map_err(|e| e.to_string())?;
            (d, format!("method=recursive n={n} k={k}"))
        }
        GenMethod::Random => {
            let t_count = match tests {
                Some(t) => t,
                None if k >= 2 => upper_bound_randomized(n, k).map_err(|e| e.to_string())? as usize,
                None => 1,
            };
            let d = randomized_design(n, k, t_count, Seed(seed)).map_err(|e| e.to_string())?;
            (
                d,
                format!("method=random n={n} k={k} tests={t_count} seed={seed} rng={RNG_NAME}"),
            )
        }
    };
    write_file(out, &design, &[provenance])?;
    let mut report = format!("wrote {} tests to {}\n", design.len(), out.display());
    let feasible = match check_feasible_thm1(&design, budget) {
        Ok(r) if r.is_feasible() => "yes".to_string(),
        Ok(_) => "no".to_string(),
        Err(e) => format!("unchecked ({e})"),
    };
    let _ = writeln!(report, "tests={}\nfeasible={feasible}", design.len());
    let _ = writeln!(report, "{}", summary.summary_line());
    Ok(CommandOutcome::ok(report))
}

fn verify(path: &Path, method: VerifyMethod, k: Option<u32>, budget: Budget) -> Outcome {
    let mut design = read_design(path)?;
    if let Some(k) = k {
        design = design.with_max_defectives(k).map_err(|e| e.to_string())?;
    }
    let report = match method {
        VerifyMethod::Condition => check_feasible_thm1(&design, budget),
        VerifyMethod::Injectivity => check_injective_oracle(&design, budget),
        VerifyMethod::Systematic => check_systematic_thm3(&design, budget),
    }
    .map_err(|e| e.to_string())?;
    let text = format!(
        "N={} K={} tests={}\n{}\n",
        design.n_items(),
        design.max_defectives(),
        design.len(),
        feasibility_line(&report)
    );
    Ok(if report.is_feasible() {
        CommandOutcome::ok(text)
    } else {
        CommandOutcome::negative(text)
    })
}

fn simulate(path: &Path, defectives: &str, budget: Budget) -> Outcome {
    let design = read_design(path)?;
    let hidden = parse_items(defectives)?;
    let outputs = run_design(&design, &hidden).map_err(|e| e.to_string())?;
    let decoded = decode(&outputs);
    let mut report = format!("y={outputs}\ndecoded={decoded}\n");
    if decoded == hidden {
        return Ok(CommandOutcome::ok(report));
    }
    let verdict = match check_feasible_thm1(&design, budget) {
        Ok(r) if r.is_feasible() => "design is feasible but decoding failed".to_string(),
        Ok(r) => format!(
            "design is infeasible: {}",
            r.witness().expect("infeasible has a witness")
        ),
        Err(e) => format!("feasibility unchecked: {e}"),
    };
    let _ = writeln!(
        report,
        "MISMATCH: decoded set differs from {hidden}; {verdict}"
    );
    Ok(CommandOutcome::negative(report))
}

fn bounds(n: u32, k: u32) -> Outcome {
    let s = bounds_summary(n, k).map_err(|e| e.to_string())?;
    Ok(CommandOutcome::ok(format!(
        "{}\n{}",
        s.to_table(),
        s.to_key_values()
    )))
}

fn solve(n: u32, k: u32, out: Option<&Path>, fix_identity: bool, budget: Budget) -> Outcome {
    let r = exact_optimal_t(
        n,
        k,
        ExactOptions {
            budget,
            fix_identity,
        },
    )
    .map_err(|e| e.to_string())?;
    let mut report = format!(
        "optimum={}\nwitness={}\ncertificate: {}\n",
        r.optimum, r.witness, r.certificate
    );
    if let Some(path) = out {
        let comments = [
            format!("method=exact n={n} k={k} optimum={}", r.optimum),
            format!("certificate: {}", r.certificate),
        ];
        write_file(path, &r.witness, &comments)?;
        let _ = writeln!(report, "wrote {}", path.display());
    }
    Ok(CommandOutcome::ok(report))
}

fn adaptive(n: u32, k: u32, defectives: &str) -> Outcome {
    let hidden = parse_items(defectives)?;
    if hidden.len() > k as usize {
        return Err(format!(
            "{} defectives given, at most {k} allowed",
            hidden.len()
        ));
    }
    if let Some(&max) = hidden.raw().last() {
        if max > n {
            return Err(format!("item {max} is outside 1..={n}"));
        }
    }
    let mut oracle = SimulatedOracle::new(hidden);
    let outcome = adaptive_trace(n, k, &mut oracle).map_err(|e| e.to_string())?;
    let mut report = String::new();
    for (i, q) in outcome.trace.iter().enumerate() {
        let answer = q.answer.map_or_else(|| "0".to_string(), |v| v.to_string());
        let _ = writeln!(report, "query {}: {} -> {answer}", i + 1, q.test);
    }
    let _ = writeln!(
        report,
        "queries={}\ndefectives={}",
        outcome.trace.len(),
        outcome.defectives
    );
    Ok(CommandOutcome::ok(report))
}

fn systematize(path: &Path, out: Option<&Path>) -> Outcome {
    let design = read_design(path)?;
    let reduced = to_systematic(&design);
    let comment = format!("systematic form of {}", path.display());
    let mut report = format!("tests: {} -> {}\n", design.len(), reduced.len());
    match out {
        Some(out) => {
            write_file(out, &reduced, &[comment])?;
            let _ = writeln!(report, "wrote {}", out.display());
        }
        None => report.push_str(&write_design(&reduced, &[comment]).map_err(|e| e.to_string())?),
    }
    Ok(CommandOutcome::ok(report))
}

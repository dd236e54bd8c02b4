use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pimc_core::bench::run_bench;
use pimc_core::bubble::{build_bubble_model, random_model, realize_graph, BubbleModel, RandomModelParams};
use pimc_core::dp::{count_bound, recurrence, solve_max_cut};
use pimc_core::graph::{cut_size, parse_edge_list};
use pimc_core::oracle::{verify_dp, verify_dp_with, VerificationReport};

const EXIT_INPUT: u8 = 1;
const EXIT_NOT_PROPER_INTERVAL: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// Maximum cut on proper interval graphs.
#[derive(Parser)]
#[command(name = "pimc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Edges,
    Bubbles,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Solver {
    /// Column-profile dynamic program; always exact.
    Exact,
    /// Prefix-count recurrence; an upper bound with O(n⁴) work.
    Recurrence,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the maximum cut of a graph or bubble model.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: InputFormat,
        /// Print the vertices on one side of an optimal cut.
        #[arg(long)]
        emit_cut: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value = "exact")]
        solver: Solver,
    },
    /// Build and print a bubble model for an edge-list graph.
    Recognize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate a random bubble model.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        columns: Option<usize>,
        #[arg(long)]
        empty_rate: Option<f64>,
        #[arg(long, value_enum)]
        format: InputFormat,
    },
    /// Compare the solver with brute force on random models.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "exact")]
        solver: Solver,
    },
    /// Count recurrence operations on dense models of increasing size.
    Bench {
        /// Comma-separated ascending vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_model(path: &PathBuf, format: InputFormat) -> Result<BubbleModel, Failure> {
    let text = read_input(path)?;
    match format {
        InputFormat::Bubbles => {
            BubbleModel::from_json(&text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
        }
        InputFormat::Edges => {
            let g = parse_edge_list(&text).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))?;
            build_bubble_model(&g).ok_or_else(|| {
                fail(
                    EXIT_NOT_PROPER_INTERVAL,
                    "not a proper interval graph (stage: recognition, no umbrella ordering or model)",
                )
            })
        }
    }
}

fn solve(
    input: &PathBuf,
    format: InputFormat,
    emit_cut: bool,
    as_json: bool,
    solver: Solver,
) -> Result<(), Failure> {
    let model = load_model(input, format)?;
    let graph = realize_graph(&model);
    let rec = recurrence::solve(&model, emit_cut && solver == Solver::Recurrence);

    let (value, cut) = match solver {
        Solver::Exact => {
            let r = solve_max_cut(&model, emit_cut).map_err(|e| {
                fail(EXIT_INPUT, format!("{e}; rerun with --solver recurrence for an upper bound"))
            })?;
            if let Some(cut) = &r.cut {
                if cut_size(&graph, cut).ok() != Some(r.max_cut_size) {
                    return Err(fail(EXIT_INTERNAL, "reconstructed cut does not reach the reported size"));
                }
            }
            (r.max_cut_size, r.cut)
        }
        Solver::Recurrence => (rec.value, rec.traceback.as_ref().map(|t| t.cut.clone())),
    };

    let members = cut.as_ref().map(|c| c.members());
    let witnessed = cut.as_ref().map(|c| cut_size(&graph, c).expect("cut sized to graph"));
    if as_json {
        let report = json!({
            "maxcut": value,
            "solver": match solver { Solver::Exact => "exact", Solver::Recurrence => "recurrence" },
            "n": model.n(),
            "edges": graph.edge_count(),
            "cut": members,
            "cut_size": witnessed,
            "recurrence": {
                "value": rec.value,
                "op_count": rec.op_count,
                "summary_op_count": rec.summary_op_count,
                "bound": count_bound(&model),
                "traceback_consistent": rec.traceback.as_ref().map(|t| t.consistent()),
            },
        });
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("maxcut {value}");
        if let Some(members) = members {
            let list: Vec<String> = members.iter().map(usize::to_string).collect();
            println!("cut {}", list.join(" "));
        }
        if solver == Solver::Exact && rec.value != value {
            eprintln!("note: the prefix-count recurrence reports {} on this input", rec.value);
        }
        if solver == Solver::Recurrence && witnessed != Some(value) {
            if let Some(w) = witnessed {
                eprintln!("note: the read-back cut has size {w}; the value is an upper bound");
            }
        }
    }
    Ok(())
}

fn recognize(input: &PathBuf) -> Result<(), Failure> {
    let model = load_model(input, InputFormat::Edges)?;
    println!("{}", model.to_json());
    Ok(())
}

fn gen(
    n: usize,
    seed: u64,
    columns: Option<usize>,
    empty_rate: Option<f64>,
    format: InputFormat,
) -> Result<(), Failure> {
    if n == 0 {
        return Err(fail(EXIT_INPUT, "--n must be at least 1"));
    }
    let mut params = RandomModelParams {
        columns,
        ..Default::default()
    };
    if let Some(rate) = empty_rate {
        if !(0.0..=1.0).contains(&rate) {
            return Err(fail(EXIT_INPUT, "--empty-rate must lie in [0, 1]"));
        }
        params.empty_rate = rate;
    }
    let model = random_model(n, seed, &params);
    match format {
        InputFormat::Bubbles => println!("{}", model.to_json()),
        InputFormat::Edges => print!("{}", realize_graph(&model).to_edge_list()),
    }
    Ok(())
}

fn verify(trials: usize, max_n: usize, seed: u64, solver: Solver) -> Result<(), Failure> {
    let report: VerificationReport = match solver {
        Solver::Exact => verify_dp(trials, max_n, seed),
        Solver::Recurrence => verify_dp_with(trials, max_n, seed, |m| {
            let sol = recurrence::solve(m, false);
            (sol.value, None)
        }),
    }
    .map_err(|e| fail(EXIT_INPUT, e.to_string()))?;
    println!("{}", report.to_json());
    eprintln!(
        "{} trials, {} mismatches, {} witness failures, recurrence mismatches {}, {:.3}s",
        report.trials,
        report.mismatches.len(),
        report.witness_failures.len(),
        report.recurrence_mismatches.len(),
        report.elapsed.as_secs_f64()
    );
    if report.passed() {
        Ok(())
    } else {
        Err(fail(EXIT_INPUT, "verification found mismatches"))
    }
}

fn bench(sizes: &[usize], seed: u64, as_json: bool) -> Result<(), Failure> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) || sizes.contains(&0) {
        return Err(fail(EXIT_INPUT, "--sizes must be positive and strictly ascending"));
    }
    let report = run_bench(sizes, seed);
    if as_json {
        println!("{}", report.to_json());
    } else {
        println!("{:>8} {:>16} {:>16} {:>16}", "n", "op_count", "bound", "n^4");
        for r in &report.records {
            println!("{:>8} {:>16} {:>16} {:>16}", r.n, r.op_count, r.bound, r.n4);
        }
        match report.fitted_exponent {
            Some(e) => println!("fitted exponent {e:.3}"),
            None => println!("fitted exponent absent (one size)"),
        }
    }
    for r in &report.records {
        eprintln!("n={} wall {:.3}s", r.n, r.wall_time.as_secs_f64());
    }
    if report.records.iter().all(|r| r.within_bound()) {
        Ok(())
    } else {
        Err(fail(EXIT_INTERNAL, "operation count exceeded its bound"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve {
            input,
            format,
            emit_cut,
            json,
            solver,
        } => solve(input, *format, *emit_cut, *json, *solver),
        Command::Recognize { input } => recognize(input),
        Command::Gen {
            n,
            seed,
            columns,
            empty_rate,
            format,
        } => gen(*n, *seed, *columns, *empty_rate, *format),
        Command::Verify {
            trials,
            max_n,
            seed,
            solver,
        } => verify(*trials, *max_n, *seed, *solver),
        Command::Bench { sizes, seed, json } => bench(sizes, *seed, *json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

//! fredkit command-line front end.
//!
//! Exit codes: 0 success/verified, 1 verification or classicality failure,
//! 2 circuit parse error, 3 configuration or kernel error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use fredkit::algebra::{Kernel, ScalarValue, UMatrix};
use fredkit::circuit::{truth_table, Circuit};
use fredkit::constructions::{
    canonical_fredkin_circuit, fredkin_from_table, m_circuit, m_matrix, toffoli_matrix,
    CheckReport,
};
use fredkit::synth::{optimize, parse_slots, SearchReport, SynthProblem};
use fredkit::{Error, ParseError};

#[derive(Parser)]
#[command(name = "fredkit", version, about = "Workbench for three-q-bit reversible gates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct KernelFlags {
    /// Force the exact ℚ(i,√2) kernel (fails if a gate payload is float-only)
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Force the double-precision kernel
    #[arg(long)]
    float: bool,
}

impl KernelFlags {
    /// Picks the kernel: an explicit flag wins, otherwise exact when the
    /// circuit supports it.
    fn choose(&self, circuit: &Circuit) -> Result<Kernel, Failure> {
        if self.exact {
            if !circuit.is_exact_representable() {
                return Err(Failure::Config(
                    "circuit contains float-only payloads; --exact is impossible".into(),
                ));
            }
            Ok(Kernel::Exact)
        } else if self.float {
            Ok(Kernel::Float)
        } else if circuit.is_exact_representable() {
            Ok(Kernel::Exact)
        } else {
            Ok(Kernel::Float)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compile a circuit file to its 8x8 matrix
    Compile {
        file: PathBuf,
        #[command(flatten)]
        kernel: KernelFlags,
        /// Emit the JSON matrix format instead of a text grid
        #[arg(long)]
        json: bool,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a compiled circuit against a target matrix
    Verify {
        file: PathBuf,
        /// fredkin | toffoli | m:<lambda> | file:<matrix.json>
        #[arg(long)]
        target: String,
        #[command(flatten)]
        kernel: KernelFlags,
        /// Ignore a global phase (compare with the trace distance)
        #[arg(long)]
        up_to_phase: bool,
        /// Comparison tolerance (default 1e-12 for float comparisons)
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the classical action of a circuit as a truth table
    TruthTable {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Count one-body and two-body gates
    Count {
        file: PathBuf,
        /// Fuse adjacent gates sharing a two-wire support first
        #[arg(long)]
        merge: bool,
        #[arg(long)]
        json: bool,
    },
    /// Emit a generated demo circuit (canonical | m:<lambda>)
    Demo { name: String },
    /// Search for a controlled-gate sequence realizing a target
    Search {
        /// fredkin | toffoli | m:<lambda> | file:<matrix.json>
        #[arg(long)]
        target: String,
        /// Comma-separated control/target pairs, e.g. bc,ac,bc,ac
        #[arg(long)]
        slots: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        restarts: u32,
        #[arg(long, default_value_t = 2000)]
        iters: u32,
        /// Write the JSON report to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Verification(String),
    Parse(String),
    Config(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Config(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verification(m) | Failure::Parse(m) | Failure::Config(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    Circuit::parse(&text)
        .map_err(|e: ParseError| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parse_target(spec: &str) -> Result<UMatrix, Failure> {
    if spec == "fredkin" {
        return Ok(fredkin_from_table());
    }
    if spec == "toffoli" {
        return Ok(toffoli_matrix());
    }
    if let Some(lambda) = spec.strip_prefix("m:") {
        let lambda: f64 = lambda
            .parse()
            .map_err(|_| Failure::Config(format!("bad lambda in target '{spec}'")))?;
        if !lambda.is_finite() {
            return Err(Failure::Config("lambda must be finite".into()));
        }
        return Ok(m_matrix(lambda));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::Config(format!("{path}: {e}")))?;
        return serde_json::from_str(&text)
            .map_err(|e| Failure::Config(format!("{path}: bad matrix JSON: {e}")));
    }
    Err(Failure::Config(format!(
        "unknown target '{spec}' (expected fredkin, toffoli, m:<lambda> or file:<path>)"
    )))
}

fn emit(text: String, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compile {
            file,
            kernel,
            json,
            out,
        } => {
            let circuit = load_circuit(&file)?;
            let k = kernel.choose(&circuit)?;
            let matrix = circuit
                .compile(k)
                .map_err(|e| Failure::Config(e.to_string()))?;
            let text = if json {
                to_pretty_json(&matrix)
            } else {
                format!("{}\n", matrix.render_text())
            };
            emit(text, out.as_deref())
        }
        Command::Verify {
            file,
            target,
            kernel,
            up_to_phase,
            tol,
            json,
        } => {
            let circuit = load_circuit(&file)?;
            let k = kernel.choose(&circuit)?;
            let compiled = circuit
                .compile(k)
                .map_err(|e| Failure::Config(e.to_string()))?;
            let target_matrix = parse_target(&target)?;
            let report = compare(&compiled, &target_matrix, &target, up_to_phase, tol)?;
            let text = if json {
                to_pretty_json(&report)
            } else if report.passed {
                format!(
                    "PASS {} (max abs error {:e})\n",
                    report.check, report.max_abs_error
                )
            } else {
                format!(
                    "FAIL {} (max abs error {:e}){}\n",
                    report.check,
                    report.max_abs_error,
                    report
                        .orientation_notes
                        .as_deref()
                        .map(|n| format!("\n  {n}"))
                        .unwrap_or_default()
                )
            };
            print!("{text}");
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "circuit does not match target '{target}'"
                )))
            }
        }
        Command::TruthTable { file, json } => {
            let circuit = load_circuit(&file)?;
            let k = KernelFlags {
                exact: false,
                float: false,
            }
            .choose(&circuit)?;
            let matrix = circuit
                .compile(k)
                .map_err(|e| Failure::Config(e.to_string()))?;
            let table = truth_table(&matrix).map_err(|e| match e {
                Error::NotClassical(_) => Failure::Verification(e.to_string()),
                other => Failure::Config(other.to_string()),
            })?;
            if json {
                let phases: Vec<[f64; 2]> = table
                    .phases
                    .iter()
                    .map(ScalarValue::to_complex)
                    .map(|z| [z.re, z.im])
                    .collect();
                let value = serde_json::json!({
                    "mapping": table.mapping.to_vec(),
                    "phases": phases,
                });
                print!("{}", to_pretty_json(&value));
            } else {
                println!("{}", table.render_text());
            }
            Ok(())
        }
        Command::Count { file, merge, json } => {
            let circuit = load_circuit(&file)?;
            let circuit = if merge {
                circuit.merge_adjacent()
            } else {
                circuit
            };
            let counts = circuit.count_gates();
            if json {
                print!("{}", to_pretty_json(&counts));
            } else {
                println!("1-body: {}, 2-body: {}", counts.one_body, counts.two_body);
            }
            Ok(())
        }
        Command::Demo { name } => {
            let circuit = if name == "canonical" {
                canonical_fredkin_circuit()
            } else if let Some(lambda) = name.strip_prefix("m:") {
                let lambda: f64 = lambda
                    .parse()
                    .map_err(|_| Failure::Config(format!("bad lambda in demo '{name}'")))?;
                if !lambda.is_finite() {
                    return Err(Failure::Config("lambda must be finite".into()));
                }
                m_circuit(lambda)
            } else {
                return Err(Failure::Config(format!(
                    "unknown demo '{name}' (expected canonical or m:<lambda>)"
                )));
            };
            let text = circuit
                .to_dsl()
                .map_err(|e| Failure::Config(e.to_string()))?;
            print!("{text}");
            Ok(())
        }
        Command::Search {
            target,
            slots,
            seed,
            restarts,
            iters,
            out,
        } => {
            let target_matrix = parse_target(&target)?;
            let slots = parse_slots(&slots).map_err(|e| Failure::Config(e.to_string()))?;
            let problem = SynthProblem {
                target: target_matrix,
                slots,
                restarts,
                iters,
                seed,
            };
            let result = optimize(&problem).map_err(|e| Failure::Config(e.to_string()))?;
            let report = SearchReport::new(&target, &problem, &result);
            emit(to_pretty_json(&report), out.as_deref())
        }
    }
}

/// Builds the comparison verdict. Exact targets against exact compilations
/// compare structurally (zero tolerance); anything else compares in floating
/// point, entrywise or up to a global phase.
fn compare(
    compiled: &UMatrix,
    target: &UMatrix,
    target_name: &str,
    up_to_phase: bool,
    tol: Option<f64>,
) -> Result<CheckReport, Failure> {
    if let Some(t) = tol {
        if !(t >= 0.0) {
            return Err(Failure::Config("tolerance must be non-negative".into()));
        }
    }
    if compiled.dim() != target.dim() {
        return Err(Failure::Config(format!(
            "dimension mismatch: circuit gives {}, target is {}",
            compiled.dim(),
            target.dim()
        )));
    }

    let exact_compare =
        compiled.kernel() == Kernel::Exact && target.kernel() == Kernel::Exact && !up_to_phase;
    if exact_compare {
        if let Some(t) = tol {
            if t != 0.0 {
                return Err(Failure::Config(
                    "exact comparison is structural; a nonzero --tol is meaningless".into(),
                ));
            }
        }
        let passed = compiled == target;
        let max_abs_error = if passed {
            0.0
        } else {
            compiled.max_abs_diff(target).expect("same dims")
        };
        return Ok(CheckReport {
            check: target_name.to_string(),
            passed,
            max_abs_error,
            orientation_notes: (!passed).then(|| first_mismatch(compiled, target)),
        });
    }

    let tol = tol.unwrap_or(1e-12);
    let error = if up_to_phase {
        compiled.phase_distance(target).expect("same dims")
    } else {
        compiled.max_abs_diff(target).expect("same dims")
    };
    let passed = error <= tol;
    Ok(CheckReport {
        check: target_name.to_string(),
        passed,
        max_abs_error: error,
        orientation_notes: (!passed && !up_to_phase).then(|| first_mismatch(compiled, target)),
    })
}

fn first_mismatch(compiled: &UMatrix, target: &UMatrix) -> String {
    for i in 0..compiled.dim() {
        for j in 0..compiled.dim() {
            let got = compiled.entry_complex(i, j);
            let want = target.entry_complex(i, j);
            if (got - want).norm() > 1e-13 {
                return format!(
                    "first mismatch at row {i}, column {j}: got {}{:+}i, want {}{:+}i",
                    got.re, got.im, want.re, want.im
                );
            }
        }
    }
    "matrices agree within 1e-13 entrywise".to_string()
}

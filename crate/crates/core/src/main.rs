use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::path::PathBuf;
use std::process::ExitCode;

use szego_interp::harness::{
    self, parse_measure_spec, ExperimentConfig, FunctionId, HarnessError, OutputFormat, WStrategy,
};
use szego_interp::lagrange;
use szego_interp::opuc::OpucBasis;
use szego_interp::paraorth::find_nodes;
use szego_interp::unit;

/// Szegő quadrature and Lagrange interpolation at para-orthogonal
/// nodes on the unit circle.
#[derive(Parser)]
#[command(name = "szego", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the n+1 quadrature nodes and weights for a measure.
    Nodes {
        #[command(flatten)]
        common: CommonArgs,
        /// Emit JSON instead of a text table.
        #[arg(long)]
        json: bool,
    },
    /// Compare Qn(f) with the direct integral of f.
    Quadrature {
        #[command(flatten)]
        common: CommonArgs,
        /// Function id: conj, absim, dist1, exp, geom, poly7.
        #[arg(long)]
        f: FunctionId,
    },
    /// Report interpolation error norms ||f - Ln(f)||_p.
    Interpolate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        f: FunctionId,
        /// Comma-separated exponents, e.g. 1,2.
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
    },
    /// Run the invariant suite; exit code 0 iff every residual passes.
    Verify {
        #[arg(long)]
        measure: String,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run a convergence experiment and emit CSV or JSON.
    Converge {
        /// key=value config file; inline flags are ignored when given.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        measure: Option<String>,
        #[arg(long)]
        f: Option<FunctionId>,
        /// fixed:<theta> | rotate:<step> | pseudorandom:<seed>
        #[arg(long)]
        w_strategy: Option<WStrategy>,
        /// Comma-separated, strictly increasing degree list.
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<usize>,
        /// Comma-separated exponents in (0, 2].
        #[arg(long, value_delimiter = ',')]
        p: Vec<f64>,
        #[arg(long)]
        format: Option<OutputFormat>,
        #[arg(long)]
        resolution: Option<usize>,
        /// Append a wall_ms column to the CSV (off by default so output
        /// is byte-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Measure spec: lebesgue | arc:<a> | <base>+atoms:<t>:<m>,...
    #[arg(long)]
    measure: String,
    /// Degree parameter; the node system has n+1 nodes.
    #[arg(long)]
    n: usize,
    /// Generating angle in radians, or "auto" for w = 1.
    #[arg(long, default_value = "auto")]
    w: String,
}

impl CommonArgs {
    fn generator(&self) -> Result<Complex64, HarnessError> {
        if self.w == "auto" {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let theta: f64 = self
            .w
            .parse()
            .map_err(|_| HarnessError::Config(format!("bad --w value {:?}", self.w)))?;
        Ok(unit(theta))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version exits are not errors
            if e.use_stderr() {
                eprintln!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn build_system(
    common: &CommonArgs,
) -> Result<(szego_interp::Measure, OpucBasis, szego_interp::NodeSystem), HarnessError> {
    let measure = parse_measure_spec(&common.measure)?;
    let basis = OpucBasis::from_measure(&measure, common.n + 2)?;
    let ns = find_nodes(&basis, common.n, common.generator()?)?;
    Ok((measure, basis, ns))
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Nodes { common, json } => {
            let (_, _, ns) = build_system(&common)?;
            if json {
                let entries: Vec<serde_json::Value> = ns
                    .nodes()
                    .iter()
                    .zip(ns.weights())
                    .zip(ns.kernel_diags())
                    .map(|((node, weight), kd)| {
                        serde_json::json!({
                            "angle": node.arg().rem_euclid(std::f64::consts::TAU),
                            "weight": weight,
                            "kernel_diag": kd,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&entries).unwrap());
            } else {
                println!("{:>4} {:>22} {:>22} {:>22}", "j", "angle", "weight", "kernel_diag");
                for (j, ((node, weight), kd)) in ns
                    .nodes()
                    .iter()
                    .zip(ns.weights())
                    .zip(ns.kernel_diags())
                    .enumerate()
                {
                    println!(
                        "{j:>4} {:>22.16} {weight:>22.16e} {kd:>22.16e}",
                        node.arg().rem_euclid(std::f64::consts::TAU)
                    );
                }
            }
            Ok(0)
        }
        Command::Quadrature { common, f } => {
            let (measure, _, ns) = build_system(&common)?;
            let q = ns.quadrature(|z| f.eval(z));
            let reference = measure.integrate(|z| f.eval(z), 1 << 16);
            println!("Q_n(f)      = {} + {}i", q.re, q.im);
            println!("int f dmu   = {} + {}i", reference.re, reference.im);
            println!("abs error   = {:e}", (q - reference).norm());
            Ok(0)
        }
        Command::Interpolate { common, f, p } => {
            if p.is_empty() {
                return Err(HarnessError::Config("--p needs at least one exponent".into()));
            }
            let (measure, basis, ns) = build_system(&common)?;
            for &exponent in &p {
                if exponent <= 0.0 {
                    return Err(HarnessError::Config(format!(
                        "exponent must be positive, got {exponent}"
                    )));
                }
                if exponent > 2.0 {
                    eprintln!(
                        "warning: p = {exponent} is outside (0, 2]; the convergence theory does not cover it"
                    );
                }
                let err = lagrange::interp_error(&ns, &basis, &measure, |z| f.eval(z), exponent, None);
                println!("p={exponent} error={err:e}");
            }
            Ok(0)
        }
        Command::Verify { measure, nmax, seed } => {
            let report = harness::run_verify(&measure, nmax, seed)?;
            print!("{}", report.render_table());
            Ok(if report.all_pass() { 0 } else { 2 })
        }
        Command::Converge {
            config,
            measure,
            f,
            w_strategy,
            degrees,
            p,
            format,
            resolution,
            timing,
        } => {
            let cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| {
                        HarnessError::Config(format!("cannot read {}: {e}", path.display()))
                    })?;
                    ExperimentConfig::parse(&text)?
                }
                None => ExperimentConfig {
                    measure: measure
                        .ok_or_else(|| HarnessError::Config("--measure is required".into()))?,
                    function: f.ok_or_else(|| HarnessError::Config("--f is required".into()))?,
                    w_strategy: w_strategy
                        .ok_or_else(|| HarnessError::Config("--w-strategy is required".into()))?,
                    degrees,
                    exponents: p,
                    format: format.unwrap_or(OutputFormat::Csv),
                    resolution,
                },
            };
            let report = harness::run_convergence(&cfg)?;
            match cfg.format {
                OutputFormat::Csv => print!("{}", report.to_csv(timing)),
                OutputFormat::Json => println!("{}", report.to_json()),
            }
            Ok(if report.rows.iter().all(|r| r.ok) { 0 } else { 2 })
        }
    }
}

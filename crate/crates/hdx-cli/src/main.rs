//! Command line front end for the exact expansion toolkit.
//!
//! Three subcommands cover the workflow: `build` constructs a complex and
//! writes its canonical JSON, `compute` runs an exact computation on a
//! complex file and emits a result record, `verify` runs a named suite of
//! cross-checks. All stdout output is canonical and deterministic,
//! independent of the worker thread count; timing goes to stderr.
//!
//! Exit codes: 0 success, 1 failed verification checks, 2 usage or invalid
//! input, 3 enumeration budget exceeded (with a structured partial report
//! on stdout), 4 theorem hypothesis not satisfied by the input, 5 internal
//! invariant breach.

use std::fs;
use std::path::PathBuf;
use std::process::exit;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hdx::complexes::{
    alexander_dual, boolean_lattice, coxeter_an, coxeter_bn, hypercube, order_complex,
    product_with_simplex, random_ynp, simplex_skeleton, subspace_lattice, ComplexError,
    ComplexZ2,
};
use hdx::expansion::{
    cheeger_co, cheeger_ho, cosystolic_norm, is_coboundary, Cochain, ExpansionError,
    ExpansionResult, PairOperators,
};
use hdx::pseudomanifold::{cheeger_top_via_diameter, PseudomanifoldError};
use hdx_cli::serialize::{
    bits_from_hex, bits_to_hex, cochain_from_json, complex_from_json, complex_hash,
    complex_to_json, SCHEMA,
};
use hdx_cli::verify::{run_suite, SuiteError};

#[derive(Parser)]
#[command(
    name = "hdx",
    version,
    about = "Exact GF(2) expansion constants, cosystoles and certificates on small cell complexes"
)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores). Results are
    /// byte-identical for every thread count.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a complex and write its canonical JSON document.
    Build(BuildArgs),
    /// Run an exact computation on a complex file and emit a result record.
    Compute(ComputeArgs),
    /// Run a named verification suite (hypercube, duality).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Family to construct.
    #[arg(long, value_enum)]
    shape: Shape,
    /// Cube dimension (hypercube).
    #[arg(long)]
    d: Option<usize>,
    /// Vertex count (simplex, ynp, product, dual), rank (coxeter-a,
    /// coxeter-b) or ambient dimension (order-complex with --q).
    #[arg(long)]
    n: Option<u32>,
    /// Skeleton dimension (simplex).
    #[arg(long)]
    k: Option<usize>,
    /// Ground set size of the Boolean lattice (order-complex).
    #[arg(long)]
    m: Option<u32>,
    /// Field size of the subspace lattice (order-complex).
    #[arg(long)]
    q: Option<u32>,
    /// Triangle probability (ynp).
    #[arg(long)]
    p: Option<f64>,
    /// Random seed (ynp).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Complex file to transform (product, dual).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Destination file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Shape {
    /// k-skeleton of the simplex on n vertices.
    Simplex,
    /// Solid cube complex of dimension d.
    Hypercube,
    /// Coxeter complex of the symmetric group of rank n.
    CoxeterA,
    /// Coxeter complex of the signed permutation group of rank n.
    CoxeterB,
    /// Product of the input complex with the solid simplex on n vertices.
    Product,
    /// Complement dual of the input complex on ground set 0..n.
    Dual,
    /// Order complex of the proper part of a lattice.
    OrderComplex,
    /// Random 2-dimensional complex with a full 1-skeleton on n vertices.
    Ynp,
}

#[derive(Args)]
struct ComputeArgs {
    /// Computation to run.
    #[arg(value_enum)]
    operation: Operation,
    /// Complex file.
    #[arg(long)]
    input: PathBuf,
    /// Dimension (cheeger).
    #[arg(long)]
    k: Option<usize>,
    /// Cohomological or homological expansion (cheeger).
    #[arg(long, value_enum, default_value_t = Mode::Co)]
    mode: Mode,
    /// Enumeration budget; overrides HDX_BUDGET.
    #[arg(long)]
    budget: Option<u64>,
    /// Cochain file (cosystole).
    #[arg(long)]
    cochain: Option<PathBuf>,
    /// Destination file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operation {
    /// Exact Cheeger constant in dimension k.
    Cheeger,
    /// Top Cheeger constant of a pseudomanifold via its flip-graph diameter.
    CheegerTopDiam,
    /// Cosystolic norm and form of a cochain.
    Cosystole,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Mode {
    /// Coboundary over cosystolic norm.
    Co,
    /// Boundary over systolic norm.
    Ho,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: hypercube or duality.
    suite: String,
    /// Number of randomized trials (duality).
    #[arg(long, default_value_t = 20)]
    trials: u64,
    /// Base seed for randomized trials.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumeration budget; overrides HDX_BUDGET.
    #[arg(long)]
    budget: Option<u64>,
    /// Destination file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// A command could not complete; each variant maps to one exit code.
enum Failure {
    /// Bad flags, unreadable files, malformed documents, out-of-range
    /// parameters (exit 2).
    Usage(String),
    /// The exact enumeration would exceed the budget (exit 3).
    Budget { needed: u128, budget: u64 },
    /// The input does not satisfy the hypotheses of the requested theorem
    /// (exit 4).
    Hypothesis(String),
    /// A computed witness failed re-validation (exit 5).
    Internal(String),
}

impl Failure {
    /// Prints the failure and returns its exit code. Budget failures leave
    /// a structured partial report on stdout; everything else goes to
    /// stderr only.
    fn report(&self) -> i32 {
        match self {
            Failure::Usage(m) => {
                eprintln!("error: {m}");
                2
            }
            Failure::Budget { needed, budget } => {
                let doc = json!({
                    "schema": SCHEMA,
                    "error": "budget-exceeded",
                    "needed": needed.to_string(),
                    "budget": budget,
                });
                println!("{doc}");
                eprintln!("error: enumeration of {needed} vectors exceeds budget {budget}");
                3
            }
            Failure::Hypothesis(m) => {
                eprintln!("error: {m}");
                4
            }
            Failure::Internal(m) => {
                eprintln!("internal error: {m}");
                5
            }
        }
    }
}

fn usage(e: ComplexError) -> Failure {
    Failure::Usage(e.to_string())
}

fn expansion_failure(e: ExpansionError) -> Failure {
    match e {
        ExpansionError::BudgetExceeded { needed, budget } => Failure::Budget { needed, budget },
        other => Failure::Usage(other.to_string()),
    }
}

fn pseudomanifold_failure(e: PseudomanifoldError) -> Failure {
    match e {
        PseudomanifoldError::InvalidRange(m) => Failure::Usage(m),
        other => Failure::Hypothesis(other.to_string()),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        // `0` asks rayon for its default; any error here means the pool was
        // already initialized, which cannot happen on this path.
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("the global thread pool is configured once, before any work");
    }
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Build(args) => cmd_build(&args),
        Command::Compute(args) => cmd_compute(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    eprintln!("wall_time_ms {}", started.elapsed().as_millis());
    match outcome {
        Ok(code) => exit(code),
        Err(f) => exit(f.report()),
    }
}

/// The budget, from the flag, else the HDX_BUDGET environment variable,
/// else the library default. Must be positive.
fn resolve_budget(flag: Option<u64>) -> Result<u64, Failure> {
    let b = match flag {
        Some(b) => b,
        None => match std::env::var("HDX_BUDGET") {
            Ok(s) => s.trim().parse::<u64>().map_err(|_| {
                Failure::Usage(format!("HDX_BUDGET must be an unsigned integer, found `{s}`"))
            })?,
            Err(std::env::VarError::NotPresent) => hdx::DEFAULT_BUDGET,
            Err(e) => return Err(Failure::Usage(format!("HDX_BUDGET: {e}"))),
        },
    };
    if b == 0 {
        return Err(Failure::Usage("the budget must be at least 1".into()));
    }
    Ok(b)
}

fn need<T>(v: Option<T>, flag: &str, context: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("{context} requires {flag}")))
}

fn load_complex(path: &PathBuf) -> Result<ComplexZ2, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    complex_from_json(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes to the file when given, else to stdout.
fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_build(args: &BuildArgs) -> Result<i32, Failure> {
    let x = match args.shape {
        Shape::Simplex => {
            let n = need(args.n, "--n", "shape `simplex`")?;
            let k = need(args.k, "--k", "shape `simplex`")?;
            simplex_skeleton(n, k).map_err(usage)?
        }
        Shape::Hypercube => {
            let d = need(args.d, "--d", "shape `hypercube`")?;
            hypercube(d).map_err(usage)?
        }
        Shape::CoxeterA => coxeter_an(need(args.n, "--n", "shape `coxeter-a`")?).map_err(usage)?,
        Shape::CoxeterB => coxeter_bn(need(args.n, "--n", "shape `coxeter-b`")?).map_err(usage)?,
        Shape::Product => {
            let input = need(args.input.as_ref(), "--input", "shape `product`")?;
            let n = need(args.n, "--n", "shape `product`")?;
            let x = load_complex(input)?;
            product_with_simplex(&x, n).map_err(usage)?
        }
        Shape::Dual => {
            let input = need(args.input.as_ref(), "--input", "shape `dual`")?;
            let n = need(args.n, "--n", "shape `dual`")?;
            let x = load_complex(input)?;
            let dual = alexander_dual(&x, n).map_err(usage)?;
            // Involutive naming: dualizing twice reproduces the original
            // document byte for byte.
            let name = match x.name().strip_prefix("dual_") {
                Some(original) => original.to_string(),
                None => format!("dual_{}", x.name()),
            };
            dual.renamed(name)
        }
        Shape::OrderComplex => {
            let lattice = match (args.m, args.q, args.n) {
                (Some(m), None, None) => boolean_lattice(m).map_err(usage)?,
                (None, Some(q), Some(n)) => subspace_lattice(q, n).map_err(usage)?,
                _ => {
                    return Err(Failure::Usage(
                        "shape `order-complex` requires either --m (Boolean lattice) or \
                         --q with --n (subspace lattice)"
                            .into(),
                    ))
                }
            };
            order_complex(&lattice.proper_part().map_err(usage)?).map_err(usage)?
        }
        Shape::Ynp => {
            let n = need(args.n, "--n", "shape `ynp`")?;
            let p = need(args.p, "--p", "shape `ynp`")?;
            random_ynp(n, p, args.seed).map_err(usage)?
        }
    };
    emit(args.output.as_ref(), &complex_to_json(&x))?;
    Ok(0)
}

fn f_vector(x: &ComplexZ2) -> Vec<usize> {
    (0..x.n_levels()).map(|k| x.n_cells(k)).collect()
}

fn cmd_compute(args: &ComputeArgs) -> Result<i32, Failure> {
    let budget = resolve_budget(args.budget)?;
    let x = load_complex(&args.input)?;
    let record = match args.operation {
        Operation::Cheeger => compute_cheeger(args, &x, budget)?,
        Operation::CheegerTopDiam => compute_top_diam(args, &x)?,
        Operation::Cosystole => compute_cosystole(args, &x, budget)?,
    };
    emit(args.output.as_ref(), &record)?;
    Ok(0)
}

fn compute_cheeger(args: &ComputeArgs, x: &ComplexZ2, budget: u64) -> Result<String, Failure> {
    let k = need(args.k, "--k", "operation `cheeger`")?;
    let ops = PairOperators::absolute(x);
    let r = match args.mode {
        Mode::Co => cheeger_co(&ops, k, budget),
        Mode::Ho => cheeger_ho(&ops, k, budget),
    }
    .map_err(expansion_failure)?;
    revalidate_cheeger(&ops, k, args.mode, &r)?;
    let mode = match args.mode {
        Mode::Co => "co",
        Mode::Ho => "ho",
    };
    let witness_hex = bits_to_hex(r.witness.bits());
    Ok(match args.format {
        Format::Json => {
            let doc = json!({
                "operation": "cheeger",
                "complex": x.name(),
                "dim": k,
                "mode": mode,
                "value": {"num": *r.value.numer(), "den": *r.value.denom()},
                "numerator_norm": r.numerator_norm,
                "denominator_norm": r.denominator_norm,
                "witness_bits": witness_hex,
                "f_vector": f_vector(x),
                "budget_used": r.budget_used,
            });
            format!("{doc}\n")
        }
        Format::Text => format!(
            "operation cheeger\ncomplex {}\ndim {k}\nmode {mode}\nvalue {}\n\
             numerator_norm {}\ndenominator_norm {}\nwitness_bits {witness_hex}\nbudget_used {}\n",
            x.name(),
            r.value,
            r.numerator_norm,
            r.denominator_norm,
            r.budget_used
        ),
        Format::Csv => format!(
            "operation,complex,dim,mode,num,den,numerator_norm,denominator_norm,budget_used\n\
             cheeger,{},{k},{mode},{},{},{},{},{}\n",
            x.name(),
            r.value.numer(),
            r.value.denom(),
            r.numerator_norm,
            r.denominator_norm,
            r.budget_used
        ),
    })
}

/// Re-derives the reported norms from the witness; any disagreement means
/// the result record cannot be trusted.
fn revalidate_cheeger(
    ops: &PairOperators,
    k: usize,
    mode: Mode,
    r: &ExpansionResult,
) -> Result<(), Failure> {
    if r.witness.dim() != k || r.witness.bits().len() != ops.n_free(k) {
        return Err(Failure::Internal("witness has the wrong shape".into()));
    }
    let image_weight = match mode {
        Mode::Co => ops.coboundary(&r.witness).weight(),
        // The matrix form covers dimension 0, where the boundary is the
        // augmentation parity.
        Mode::Ho => ops.boundary_matrix(k).apply(r.witness.bits()).weight(),
    };
    if image_weight != r.numerator_norm {
        return Err(Failure::Internal(format!(
            "witness maps to weight {image_weight}, record claims {}",
            r.numerator_norm
        )));
    }
    // The witness is reported in (co)systolic form, so its own weight is the
    // denominator.
    if r.witness.weight() != r.denominator_norm || r.denominator_norm == 0 {
        return Err(Failure::Internal(format!(
            "witness weight {} disagrees with denominator {}",
            r.witness.weight(),
            r.denominator_norm
        )));
    }
    let consistent = r.numerator_norm as u64 * *r.value.denom()
        == r.denominator_norm as u64 * *r.value.numer();
    if !consistent {
        return Err(Failure::Internal(format!(
            "value {} is not {}/{}",
            r.value, r.numerator_norm, r.denominator_norm
        )));
    }
    Ok(())
}

fn compute_top_diam(args: &ComputeArgs, x: &ComplexZ2) -> Result<String, Failure> {
    let r = cheeger_top_via_diameter(x).map_err(pseudomanifold_failure)?;
    Ok(match args.format {
        Format::Json => {
            let doc = json!({
                "operation": "cheeger-top-diam",
                "complex": x.name(),
                "diameter": r.diameter,
                "value": {"num": *r.value.numer(), "den": *r.value.denom()},
                "f_vector": f_vector(x),
            });
            format!("{doc}\n")
        }
        Format::Text => format!(
            "operation cheeger-top-diam\ncomplex {}\ndiameter {}\nvalue {}\n",
            x.name(),
            r.diameter,
            r.value
        ),
        Format::Csv => format!(
            "operation,complex,diameter,num,den\ncheeger-top-diam,{},{},{},{}\n",
            x.name(),
            r.diameter,
            r.value.numer(),
            r.value.denom()
        ),
    })
}

fn compute_cosystole(args: &ComputeArgs, x: &ComplexZ2, budget: u64) -> Result<String, Failure> {
    let path = need(args.cochain.as_ref(), "--cochain", "operation `cosystole`")?;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc = cochain_from_json(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let hash = complex_hash(x);
    if doc.complex_hash != hash {
        return Err(Failure::Usage(format!(
            "cochain was written for complex {}, input hashes to {hash}",
            doc.complex_hash
        )));
    }
    if doc.dim >= x.n_levels() {
        return Err(Failure::Usage(format!(
            "cochain dimension {} out of range for a complex with {} levels",
            doc.dim,
            x.n_levels()
        )));
    }
    let ops = PairOperators::absolute(x);
    let bits = bits_from_hex(ops.n_free(doc.dim), &doc.bits_hex)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let phi = Cochain::new(doc.dim, bits);
    let (norm, form) = cosystolic_norm(&ops, &phi, budget).map_err(expansion_failure)?;
    // The form must attain the reported norm and differ from the input by a
    // coboundary; otherwise the record cannot be trusted.
    if form.weight() != norm || norm > phi.weight() {
        return Err(Failure::Internal(format!(
            "cosystolic form has weight {}, record claims {norm}",
            form.weight()
        )));
    }
    let difference = Cochain::new(doc.dim, phi.bits().xor(form.bits()));
    if !is_coboundary(&ops, &difference) {
        return Err(Failure::Internal(
            "cosystolic form does not differ from the input by a coboundary".into(),
        ));
    }
    let form_hex = bits_to_hex(form.bits());
    Ok(match args.format {
        Format::Json => {
            let doc = json!({
                "operation": "cosystole",
                "complex": x.name(),
                "complex_hash": hash,
                "dim": doc.dim,
                "norm": norm,
                "witness_bits": form_hex,
                "f_vector": f_vector(x),
                "budget": budget,
            });
            format!("{doc}\n")
        }
        Format::Text => format!(
            "operation cosystole\ncomplex {}\ndim {}\nnorm {norm}\nwitness_bits {form_hex}\n",
            x.name(),
            doc.dim
        ),
        Format::Csv => format!(
            "operation,complex,dim,norm\ncosystole,{},{},{norm}\n",
            x.name(),
            doc.dim
        ),
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let budget = resolve_budget(args.budget)?;
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let report = run_suite(&args.suite, args.trials, args.seed, budget).map_err(|e| match e {
        SuiteError::UnknownSuite(_) => Failure::Usage(e.to_string()),
        SuiteError::Expansion(inner) => expansion_failure(inner),
    })?;
    let rendered = match args.format {
        Format::Json => report.json(),
        Format::Text | Format::Csv => report.text(),
    };
    emit(args.output.as_ref(), &rendered)?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

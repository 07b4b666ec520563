//! Batch front end for the verification library.  Enumeration commands
//! print objects; `verify` subcommands run whole suites and emit a check
//! report as JSON or a table.  Exit codes: 0 all checks pass, 1 at least
//! one check failed, 2 usage or configuration error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::process::ExitCode;

use grasswin::glrep::lr_coefficients;
use grasswin::partitions::Partition;
use grasswin::sod::GeneratorId;
use grasswin::{
    ds_staircase, ext_table, generation_witness, grassmann_cohomology, kapranov_collection,
    rank_accounting, specialization_oracle, verify_bimodule_maps, verify_ds_euler,
    verify_ideal_identity, verify_koszul_resolution, verify_orthogonality,
    verify_pinch_character, verify_window_fixed_point, BwbOutcome, DominantWeight, Error,
};

#[derive(Parser)]
#[command(
    name = "grasswin",
    version,
    about = "Character-level window and flop-kernel verifications for Grassmannians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Internal-degree cutoff for graded verifications.
    #[arg(long, global = true, env = "GRASSWIN_CUTOFF", default_value_t = 6)]
    cutoff: i64,

    /// Seed for the integer specialization oracle.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for parallel sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    parallelism: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct RanksDm {
    /// Rank of the tautological sub-bundle.
    #[arg(long)]
    d: usize,
    /// Rank of the ambient space.
    #[arg(long)]
    m: usize,
}

#[derive(Args)]
struct RanksDmm {
    /// Rank of the middle space V.
    #[arg(long)]
    d: usize,
    /// Rank of W (the large side).
    #[arg(long)]
    m: usize,
    /// Rank of W' (the small side).
    #[arg(long)]
    mprime: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the window members of Gr(d, m).
    Kapranov(RanksDm),
    /// Ext table between all ordered pairs of window members of Gr(d, m).
    ExtTable(RanksDm),
    /// Cohomology of L_a(S) ⊗ L_b(Q) on Gr(d, n).
    Bwb {
        /// Rank of the tautological sub-bundle S.
        #[arg(long)]
        d: usize,
        /// Rank of the ambient space.
        #[arg(long)]
        n: usize,
        /// Weight on the sub-bundle block, comma-separated ("" = rank 0).
        #[arg(long, default_value = "", allow_hyphen_values = true, value_parser = parse_weight)]
        ws: DominantWeight,
        /// Weight on the quotient-bundle block, comma-separated ("" = rank 0).
        #[arg(long, default_value = "", allow_hyphen_values = true, value_parser = parse_weight)]
        wq: DominantWeight,
    },
    /// Littlewood–Richardson decomposition of a product of two diagrams.
    Lr {
        /// First diagram, comma-separated parts ("" = empty).
        #[arg(long, default_value = "", value_parser = parse_partition)]
        lambda: Partition,
        /// Second diagram.
        #[arg(long, default_value = "", value_parser = parse_partition)]
        mu: Partition,
    },
    /// Print the staircase complex of a seed diagram.
    DsComplex {
        /// Seed diagram of width below d ("" = empty).
        #[arg(long, default_value = "", value_parser = parse_partition)]
        delta: Partition,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        mprime: usize,
    },
    /// Express a big-window diagram through small-window members and
    /// pushforward generators, verified by character evaluation.
    Generate {
        /// Target diagram inside the d × (m−d) box.
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        mprime: usize,
    },
    /// Run verification suites and emit a check report.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Strong exceptionality, Hom-matrix triangularity, and the transform
    /// fixed-point identity on every window member.
    Window(RanksDmm),
    /// Staircase Euler identities, generation of the big window, and rank
    /// accounting.
    Sod(RanksDmm),
    /// Orthogonality of pushforward generators against the small window,
    /// with the fast certificate cross-checked against brute force.
    Orth(RanksDmm),
    /// Koszul resolution character identity for the subvariety ring.
    Koszul(RanksDmm),
    /// Kernel presentation identities, bimodule compatibilities, and seeded
    /// integer specializations.
    KernelIdents(RanksDmm),
    /// Invariant-ring character of the pinch point at rank d.
    Pinch {
        #[arg(long)]
        d: usize,
    },
    /// Every suite above at one rank triple.
    All(RanksDmm),
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("part {t:?}: {e}")))
        .collect::<Result<Vec<u32>, String>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> Result<DominantWeight, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(DominantWeight::zero(0));
    }
    let entries = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("entry {t:?}: {e}")))
        .collect::<Result<Vec<i64>, String>>()?;
    DominantWeight::new(entries).map_err(|e| e.to_string())
}

struct Check {
    name: &'static str,
    params: Value,
    pass: bool,
    first_failure: Value,
}

impl Check {
    fn new(name: &'static str, params: Value, pass: bool, first_failure: Value) -> Check {
        Check { name, params, pass, first_failure }
    }
}

fn describe<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.parallelism > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.parallelism)
            .build_global();
    }
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, Error> {
    if cli.cutoff < 0 {
        return Err(Error::InvalidArgument("cutoff must be nonnegative".into()));
    }
    let cutoff = cli.cutoff;
    match &cli.command {
        Command::Kapranov(r) => {
            let spec = kapranov_collection(r.d, r.m)?;
            match cli.format {
                Format::Json => println!("{}", describe(&spec.members())),
                Format::Table => {
                    for member in spec.members() {
                        println!("{member}");
                    }
                }
            }
            Ok(true)
        }
        Command::ExtTable(r) => {
            let table = ext_table(&kapranov_collection(r.d, r.m)?)?;
            match cli.format {
                Format::Json => {
                    let pairs: Vec<Value> = table
                        .pairs()
                        .map(|((source, target), cohomology)| {
                            let ext: Vec<Value> = cohomology
                                .iter()
                                .map(|(degree, content)| {
                                    let weights: Vec<Value> = content
                                        .terms()
                                        .map(|(w, c)| {
                                            json!({"weight": w.entries(), "multiplicity": c})
                                        })
                                        .collect();
                                    json!({
                                        "degree": degree,
                                        "dimension": content.dimension(),
                                        "weights": weights,
                                    })
                                })
                                .collect();
                            json!({"source": source, "target": target, "ext": ext})
                        })
                        .collect();
                    let value = json!({
                        "d": r.d,
                        "m": r.m,
                        "members": table.members(),
                        "pairs": pairs,
                    });
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                }
                Format::Table => {
                    for ((source, target), cohomology) in table.pairs() {
                        let cells: Vec<String> = cohomology
                            .iter()
                            .map(|(degree, content)| {
                                format!("H^{degree} dim {}", content.dimension())
                            })
                            .collect();
                        let summary =
                            if cells.is_empty() { "zero".to_string() } else { cells.join(", ") };
                        println!("{source} -> {target} : {summary}");
                    }
                }
            }
            Ok(true)
        }
        Command::Bwb { d, n, ws, wq } => {
            let outcome = grassmann_cohomology(*d, *n, ws, wq)?;
            match cli.format {
                Format::Json => {
                    let value = match &outcome {
                        BwbOutcome::Zero => json!({"outcome": "zero"}),
                        BwbOutcome::Cohomology { degree, weight } => json!({
                            "outcome": "cohomology",
                            "degree": degree,
                            "weight": weight.entries(),
                        }),
                    };
                    println!("{value}");
                }
                Format::Table => match &outcome {
                    BwbOutcome::Zero => println!("ZERO"),
                    BwbOutcome::Cohomology { degree, weight } => {
                        let entries: Vec<String> =
                            weight.entries().iter().map(i64::to_string).collect();
                        println!("H^{degree} : [{}]", entries.join(", "));
                    }
                },
            }
            Ok(true)
        }
        Command::Lr { lambda, mu } => {
            let coefficients = lr_coefficients(lambda, mu);
            match cli.format {
                Format::Json => {
                    let terms: Vec<Value> = coefficients
                        .iter()
                        .map(|(nu, c)| json!({"diagram": nu, "multiplicity": c}))
                        .collect();
                    println!("{}", Value::Array(terms));
                }
                Format::Table => {
                    for (nu, c) in coefficients.iter() {
                        println!("{nu} : {c}");
                    }
                }
            }
            Ok(true)
        }
        Command::DsComplex { delta, d, mprime } => {
            let spec = ds_staircase(delta, *d, *mprime)?;
            match cli.format {
                Format::Json => {
                    let terms: Vec<Value> = spec
                        .terms()
                        .iter()
                        .map(|(diagram, degree)| json!({"diagram": diagram, "degree": degree}))
                        .collect();
                    let value = json!({
                        "delta": spec.delta(),
                        "d": spec.d(),
                        "mprime": spec.mprime(),
                        "terms": terms,
                    });
                    println!("{value}");
                }
                Format::Table => {
                    for (k, (diagram, degree)) in spec.terms().iter().enumerate() {
                        println!("k={k}  degree={degree}  diagram {diagram}");
                    }
                }
            }
            Ok(true)
        }
        Command::Generate { lambda, d, m, mprime } => {
            let expr = generation_witness(lambda, *d, *m, *mprime, u32::try_from(cutoff).expect("validated"))?;
            match cli.format {
                Format::Json => {
                    let combination: Vec<Value> = expr
                        .combination
                        .iter()
                        .map(|(id, coefficient, shift)| match id {
                            GeneratorId::Member(p) => json!({
                                "kind": "member",
                                "diagram": p,
                                "coefficient": coefficient,
                                "shift": shift,
                            }),
                            GeneratorId::Pushforward(g) => json!({
                                "kind": "pushforward",
                                "diagram": g.lambda,
                                "det_twist": g.det_twist,
                                "coefficient": coefficient,
                                "shift": shift,
                            }),
                        })
                        .collect();
                    println!("{}", json!({"target": expr.target, "combination": combination}));
                }
                Format::Table => {
                    println!("{} =", expr.target);
                    for (id, coefficient, shift) in &expr.combination {
                        let sign = if shift % 2 == 0 { '+' } else { '-' };
                        match id {
                            GeneratorId::Member(p) => {
                                println!("  {sign} {coefficient} * window {p}");
                            }
                            GeneratorId::Pushforward(g) => {
                                println!(
                                    "  {sign} {coefficient} * pushforward {} (det twist {})",
                                    g.lambda, g.det_twist
                                );
                            }
                        }
                    }
                }
            }
            Ok(true)
        }
        Command::Verify { suite } => {
            let checks = run_suite(suite, cutoff, cli.seed)?;
            Ok(emit_checks(&checks, cli.format))
        }
    }
}

fn validate_flop(r: &RanksDmm) -> Result<(), Error> {
    if r.d < 1 || r.mprime < r.d || r.m < r.mprime {
        return Err(Error::InvalidArgument(format!(
            "ranks must satisfy 1 <= d <= mprime <= m, got d={}, m={}, mprime={}",
            r.d, r.m, r.mprime
        )));
    }
    Ok(())
}

fn run_suite(suite: &Suite, cutoff: i64, seed: u64) -> Result<Vec<Check>, Error> {
    match suite {
        Suite::Window(r) => suite_window(r, cutoff),
        Suite::Sod(r) => suite_sod(r, cutoff),
        Suite::Orth(r) => suite_orth(r, cutoff),
        Suite::Koszul(r) => suite_koszul(r, cutoff),
        Suite::KernelIdents(r) => suite_kernel(r, seed),
        Suite::Pinch { d } => suite_pinch(*d, cutoff),
        Suite::All(r) => {
            let mut checks = suite_window(r, cutoff)?;
            checks.extend(suite_koszul(r, cutoff)?);
            checks.extend(suite_sod(r, cutoff)?);
            checks.extend(suite_orth(r, cutoff)?);
            checks.extend(suite_kernel(r, seed)?);
            checks.extend(suite_pinch(r.d, cutoff)?);
            Ok(checks)
        }
    }
}

fn suite_window(r: &RanksDmm, cutoff: i64) -> Result<Vec<Check>, Error> {
    validate_flop(r)?;
    let window_params = json!({"d": r.d, "m": r.m});
    let spec = kapranov_collection(r.d, r.m)?;
    let table = ext_table(&spec)?;
    let mut checks = Vec::new();

    let failure = table.strong_exceptionality_failure();
    checks.push(Check::new(
        "strong-exceptionality",
        window_params.clone(),
        failure.is_none(),
        describe(&failure),
    ));

    match table.unitriangularity_witness() {
        Ok(direction) => checks.push(Check::new(
            "hom-unitriangularity",
            json!({"d": r.d, "m": r.m, "direction": format!("{direction:?}")}),
            true,
            Value::Null,
        )),
        Err(e) => checks.push(Check::new(
            "hom-unitriangularity",
            window_params,
            false,
            json!(e.to_string()),
        )),
    }

    let mut pass = true;
    let mut first = Value::Null;
    for alpha in spec.members() {
        let report =
            verify_window_fixed_point(alpha, r.d, r.m, r.mprime, u32::try_from(cutoff).expect("validated"))?;
        if !report.pass {
            pass = false;
            first = json!({"alpha": alpha, "failure": describe(&report.first_failure)});
            break;
        }
    }
    checks.push(Check::new(
        "window-fixed-point",
        json!({"d": r.d, "m": r.m, "mprime": r.mprime, "cutoff": cutoff}),
        pass,
        first,
    ));
    Ok(checks)
}

fn suite_sod(r: &RanksDmm, cutoff: i64) -> Result<Vec<Check>, Error> {
    validate_flop(r)?;
    let params = json!({"d": r.d, "m": r.m, "mprime": r.mprime, "cutoff": cutoff});
    let mut checks = Vec::new();

    let seeds = [
        Partition::empty(),
        Partition::new(vec![1]).expect("valid"),
        Partition::new(vec![1, 1]).expect("valid"),
    ];
    let mut pass = true;
    let mut first = Value::Null;
    for delta in seeds.iter().filter(|p| (p.width() as usize) < r.d) {
        let report = verify_ds_euler(delta, r.d, r.m, r.mprime, cutoff)?;
        if !report.pass {
            pass = false;
            first = json!({"delta": delta, "failure": describe(&report.first_failure)});
            break;
        }
    }
    checks.push(Check::new("staircase-euler", params.clone(), pass, first));

    let big = kapranov_collection(r.d, r.m)?;
    let small = kapranov_collection(r.d, r.mprime)?;
    let mut pass = true;
    let mut first = Value::Null;
    for lambda in big.members().iter().filter(|l| !small.contains(l)) {
        if let Err(e) = generation_witness(lambda, r.d, r.m, r.mprime, u32::try_from(cutoff).expect("validated")) {
            pass = false;
            first = json!({"lambda": lambda, "error": e.to_string()});
            break;
        }
    }
    checks.push(Check::new("generation", params.clone(), pass, first));

    let accounting = rank_accounting(r.d, r.m, r.mprime)?;
    checks.push(Check::new(
        "rank-accounting",
        json!({"d": r.d, "m": r.m, "mprime": r.mprime}),
        accounting.holds,
        if accounting.holds { Value::Null } else { describe(&accounting) },
    ));
    Ok(checks)
}

fn suite_orth(r: &RanksDmm, cutoff: i64) -> Result<Vec<Check>, Error> {
    validate_flop(r)?;
    let params = json!({"d": r.d, "m": r.m, "mprime": r.mprime, "cutoff": cutoff});
    if r.m == r.mprime {
        // No pushforward generators exist; the claim is vacuous.
        return Ok(vec![Check::new("orthogonality", params, true, Value::Null)]);
    }
    let report = verify_orthogonality(r.d, r.m, r.mprime, cutoff)?;
    Ok(vec![Check::new(
        "orthogonality",
        params,
        report.pass,
        describe(&report.first_failure),
    )])
}

fn suite_koszul(r: &RanksDmm, cutoff: i64) -> Result<Vec<Check>, Error> {
    validate_flop(r)?;
    let report = verify_koszul_resolution(r.d, r.m, r.mprime, cutoff)?;
    Ok(vec![Check::new(
        "koszul-resolution",
        json!({"d": r.d, "m": r.m, "mprime": r.mprime, "cutoff": cutoff}),
        report.pass,
        describe(&report.first_failure),
    )])
}

fn suite_kernel(r: &RanksDmm, seed: u64) -> Result<Vec<Check>, Error> {
    if r.d < 1 || r.m < 1 || r.mprime < 1 {
        return Err(Error::InvalidArgument("matrix sizes must be at least 1".into()));
    }
    if r.d > 6 || r.m > 6 || r.mprime > 6 {
        return Err(Error::InvalidArgument(
            "matrix sizes are capped at 6 per dimension".into(),
        ));
    }
    let params = json!({"d": r.d, "m": r.m, "mprime": r.mprime});
    let ideal = verify_ideal_identity(r.d, r.m, r.mprime);
    let modules = verify_bimodule_maps(r.d, r.m, r.mprime);
    let trials = specialization_oracle(r.d, r.m, r.mprime, 100, seed);
    Ok(vec![
        Check::new("ideal-identity", params.clone(), ideal.pass, describe(&ideal.first_failure)),
        Check::new(
            "bimodule-maps",
            params.clone(),
            modules.pass,
            describe(&modules.first_failure),
        ),
        Check::new(
            "integer-specializations",
            json!({"d": r.d, "m": r.m, "mprime": r.mprime, "trials": 100, "seed": seed}),
            trials.pass,
            describe(&trials.first_failure),
        ),
    ])
}

fn suite_pinch(d: usize, cutoff: i64) -> Result<Vec<Check>, Error> {
    if d < 1 {
        return Err(Error::InvalidArgument("pinch requires d >= 1".into()));
    }
    let report = verify_pinch_character(d, cutoff)?;
    Ok(vec![Check::new(
        "pinch-character",
        json!({"d": d, "cutoff": cutoff}),
        report.pass,
        describe(&report.first_failure),
    )])
}

fn emit_checks(checks: &[Check], format: Format) -> bool {
    let all_pass = checks.iter().all(|c| c.pass);
    match format {
        Format::Json => {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "params": c.params,
                        "pass": c.pass,
                        "first_failure": c.first_failure,
                    })
                })
                .collect();
            let report = json!({"checks": rows});
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
        Format::Table => {
            for c in checks {
                println!(
                    "{:<24} {:<44} {}",
                    c.name,
                    c.params.to_string(),
                    if c.pass { "PASS" } else { "FAIL" }
                );
                if !c.pass && !c.first_failure.is_null() {
                    println!("  first failure: {}", c.first_failure);
                }
            }
        }
    }
    all_pass
}

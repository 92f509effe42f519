//! Command-line driver: parse an ideal file, run the requested
//! construction or verification, print pretty text or JSON.
//!
//! Exit codes: 0 success, 1 mathematical check failure, 2 usage or
//! parse errors.

mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use format::{Expr, FieldSpec, IdealFile};
use symres::constructions::{
    build_patched_resolution, eagon_northcott_complex, koszul_hull_ideal,
    predicted_resolution_theorem2, quotient_dual_complex, symmetric_algebra_ideal, InputIdeal,
};
use symres::field::{Field, PrimeField, Rationals};
use symres::groebner::{krull_dimension, GroebnerBasis};
use symres::order::TermOrder;
use symres::poly::{Polynomial, Ring, RingRef};
use symres::resolution::{hilbert_series_of_quotient, minimal_resolution_of_ideal, minimize};
use symres::verify::{check_hypotheses, run_battery, verify_theorem2, BatteryParams, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "symres",
    version,
    about = "Bigraded free resolutions of symmetric-algebra ideals: construct, resolve, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficient field: a prime p or QQ (overrides the file header).
    #[arg(long = "char", global = true)]
    characteristic: Option<String>,

    /// Monomial order: block (y over x) or grevlex on all variables.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Block)]
    order: OrderArg,

    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized phases (fibre sampling, battery generation).
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Truncation length for resolutions (defaults to the syzygy bound).
    #[arg(long = "max-length", global = true)]
    max_length: Option<usize>,

    /// Largest x-degree checked in the graded-piece identity.
    #[arg(long = "d-max", global = true, default_value_t = 6)]
    d_max: i32,

    /// Print phase timings to stderr.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Block,
    Grevlex,
}

impl From<OrderArg> for TermOrder {
    fn from(o: OrderArg) -> TermOrder {
        match o {
            OrderArg::Block => TermOrder::BlockYX,
            OrderArg::Grevlex => TermOrder::GrevlexAll,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// The input ideal I_Z over R.
    Iz,
    /// The symmetric-algebra ideal I_X over S.
    Ix,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal resolution and Betti table of I_Z or I_X.
    Resolve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Ix)]
        of: Target,
    },
    /// Generators of the symmetric-algebra ideal I_X = (y M).
    SymIdeal { file: PathBuf },
    /// Generators of the Koszul hull ideal I_K (2x2 minors of psi).
    KoszulHull { file: PathBuf },
    /// The Eagon-Northcott complex of psi.
    En { file: PathBuf },
    /// The predicted minimal Betti table of I_X from the structure theorem.
    Predict { file: PathBuf },
    /// Patch the hull resolution with the dualized quotient resolution.
    Patch { file: PathBuf },
    /// Full verification report for one input.
    Verify { file: PathBuf },
    /// Seeded randomized verification battery.
    Battery {
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Generator degree(s), cycled over the cases.
        #[arg(long = "eta", value_delimiter = ',', default_values_t = vec![2u32, 3u32])]
        etas: Vec<u32>,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Krull dimension of R/I_Z.
    Dim { file: PathBuf },
    /// Bigraded Hilbert series numerator of R/I_Z or S/I_X.
    Hilbert {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Target::Iz)]
        of: Target,
    },
}

enum AppError {
    Usage(String),
    Math(String),
}

impl From<symres::AlgebraError> for AppError {
    fn from(e: symres::AlgebraError) -> Self {
        AppError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes, like other unix tools
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Math(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Everything a command needs, monomorphized per field.
struct Ctx<'a, K: Field> {
    cli: &'a Cli,
    input: InputIdeal<K>,
}

fn load_file(cli: &Cli, file: &Path) -> Result<(FieldSpec, IdealFile), AppError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| AppError::Usage(format!("cannot read {}: {e}", file.display())))?;
    let parsed = format::parse_ideal_file(&text)
        .map_err(|e| AppError::Usage(format!("{}: {e}", file.display())))?;
    let spec = match cli.characteristic.as_deref() {
        None => parsed.field.clone(),
        Some("QQ") => FieldSpec::Rational,
        Some(p) => {
            let p: u64 = p
                .parse()
                .map_err(|_| AppError::Usage(format!("bad --char value '{p}'")))?;
            FieldSpec::Prime(p)
        }
    };
    if let FieldSpec::Prime(p) = spec {
        if !is_prime_u64(p) {
            return Err(AppError::Usage(format!("characteristic {p} is not prime")));
        }
    }
    Ok((spec, parsed))
}

fn is_prime_u64(p: u64) -> bool {
    if !(2..(1 << 31)).contains(&p) {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn build_input<K: Field>(
    field: K,
    order: TermOrder,
    parsed: &IdealFile,
) -> Result<InputIdeal<K>, AppError> {
    let ring = Ring::polynomial_ring(field, parsed.variables.len(), order);
    let gens: Vec<Polynomial<K>> = parsed
        .generators
        .iter()
        .map(|e| eval_expr(&ring, e))
        .collect();
    InputIdeal::new(&ring, gens).map_err(|e| AppError::Usage(format!("invalid input ideal: {e}")))
}

fn eval_expr<K: Field>(ring: &RingRef<K>, e: &Expr) -> Polynomial<K> {
    match e {
        Expr::Int(v) => Polynomial::constant(ring, ring.field.from_i64(*v)),
        Expr::Var(i) => Polynomial::x_var(ring, *i),
        Expr::Neg(inner) => eval_expr(ring, inner).neg(),
        Expr::Add(a, b) => eval_expr(ring, a).add(&eval_expr(ring, b)),
        Expr::Sub(a, b) => eval_expr(ring, a).sub(&eval_expr(ring, b)),
        Expr::Mul(a, b) => eval_expr(ring, a).mul(&eval_expr(ring, b)),
        Expr::Pow(a, e) => {
            let base = eval_expr(ring, a);
            let mut acc = Polynomial::one(ring);
            for _ in 0..*e {
                acc = acc.mul(&base);
            }
            acc
        }
    }
}

macro_rules! dispatch {
    ($cli:expr, $file:expr, $cmd:ident $(, $arg:expr)*) => {{
        let (spec, parsed) = load_file($cli, $file)?;
        match spec {
            FieldSpec::Prime(p) => {
                let input = build_input(PrimeField::new(p), $cli.order.into(), &parsed)?;
                $cmd(Ctx { cli: $cli, input } $(, $arg)*)
            }
            FieldSpec::Rational => {
                let input = build_input(Rationals, $cli.order.into(), &parsed)?;
                $cmd(Ctx { cli: $cli, input } $(, $arg)*)
            }
        }
    }};
}

fn run(cli: &Cli) -> Result<ExitCode, AppError> {
    match &cli.command {
        Command::Battery { n, etas, count } => cmd_battery(cli, *n, etas, *count),
        Command::Resolve { file, of } => dispatch!(cli, file, cmd_resolve, *of),
        Command::SymIdeal { file } => dispatch!(cli, file, cmd_sym_ideal),
        Command::KoszulHull { file } => dispatch!(cli, file, cmd_koszul_hull),
        Command::En { file } => dispatch!(cli, file, cmd_en),
        Command::Predict { file } => dispatch!(cli, file, cmd_predict),
        Command::Patch { file } => dispatch!(cli, file, cmd_patch),
        Command::Verify { file } => dispatch!(cli, file, cmd_verify),
        Command::Dim { file } => dispatch!(cli, file, cmd_dim),
        Command::Hilbert { file, of } => dispatch!(cli, file, cmd_hilbert, *of),
    }
}

/// Compute I_X generators from the minimal presentation of I_Z.
fn ix_generators<K: Field>(input: &InputIdeal<K>) -> Result<Vec<Polynomial<K>>, AppError> {
    let report = minimal_resolution_of_ideal(input.ring_r(), input.generators(), input.n + 2)?;
    if report.complex.length() < 2 {
        return Err(AppError::Usage(
            "the input ideal has no syzygies; I_X is zero".into(),
        ));
    }
    let m = report.complex.differential(2);
    Ok(symmetric_algebra_ideal(input.ring_s(), m)?)
}

fn cmd_resolve<K: Field>(ctx: Ctx<'_, K>, of: Target) -> Result<ExitCode, AppError> {
    let cli = ctx.cli;
    let (name, ring, gens) = match of {
        Target::Iz => (
            "iz",
            ctx.input.ring_r().clone(),
            ctx.input.generators().to_vec(),
        ),
        Target::Ix => ("ix", ctx.input.ring_s().clone(), ix_generators(&ctx.input)?),
    };
    let max_length = cli
        .max_length
        .unwrap_or_else(|| symres::resolution::default_max_length(&ring));
    let report = minimal_resolution_of_ideal(&ring, &gens, max_length)?;
    if cli.json {
        let mut v = serde_json::to_value(report.betti.to_json(name)).unwrap();
        v["minimal"] = serde_json::json!(report.minimal);
        v["length"] = serde_json::json!(report.length);
        v["subregular"] = serde_json::json!(report.complex.is_subregular());
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("minimal free resolution of {name} over {}", ring.field.label());
        println!("length: {}", report.length);
        println!("betti: {}", report.betti.to_pretty());
        println!("subregular: {}", report.complex.is_subregular());
    }
    Ok(ExitCode::SUCCESS)
}

fn print_generators<K: Field>(
    cli: &Cli,
    label: &str,
    gens: &[Polynomial<K>],
) -> Result<ExitCode, AppError> {
    if cli.json {
        let v = serde_json::json!({
            "module": label,
            "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "bidegrees": gens
                .iter()
                .map(|g| {
                    let d = g.bidegree().expect("homogeneous generator");
                    serde_json::json!({"x": d.x, "y": d.y})
                })
                .collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("{label} ({} generators):", gens.len());
        for g in gens {
            println!("  {g}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sym_ideal<K: Field>(ctx: Ctx<'_, K>) -> Result<ExitCode, AppError> {
    let gens = ix_generators(&ctx.input)?;
    print_generators(ctx.cli, "ix", &gens)
}

fn cmd_koszul_hull<K: Field>(ctx: Ctx<'_, K>) -> Result<ExitCode, AppError> {
    let gens = koszul_hull_ideal(&ctx.input);
    print_generators(ctx.cli, "ik", &gens)
}

fn cmd_en<K: Field>(ctx: Ctx<'_, K>) -> Result<ExitCode, AppError> {
    let en = eagon_northcott_complex(&ctx.input)?;
    let dd_zero = en.validate().is_ok();
    if ctx.cli.json {
        let v = serde_json::json!({
            "module": "ik",
            "betti": serde_json::to_value(en.betti_table().to_json("en")).unwrap(),
            "dd_zero": dd_zero,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("Eagon-Northcott complex of psi (resolving I_K):");
        for (i, m) in en.modules.iter().enumerate() {
            println!("  Q_{i} = {m}");
        }
        println!("d.d = 0: {dd_zero}");
    }
    if dd_zero {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(AppError::Math("Eagon-Northcott differentials do not compose to zero".into()))
    }
}

fn cmd_predict<K: Field>(ctx: Ctx<'_, K>) -> Result<ExitCode, AppError> {
    let (hyp, iz_report) = check_hypotheses(&ctx.input)?;
    if !hyp.theorem_applicable {
        return Err(AppError::Math(format!(
            "hypotheses violated (dimension {}, projective dimension {}); no table emitted",
            hyp.dimension, hyp.projective_dimension
        )));
    }
    let pred = predicted_resolution_theorem2(&iz_report.complex, ctx.input.eta, ctx.input.n);
    if ctx.cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&pred.betti.to_json("ix_predicted")).unwrap()
        );
    } else {
        println!("{}", pred.betti.to_pretty());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_patch<K: Field>(ctx: Ctx<'_, K>) -> Result<ExitCode, AppError> {
    let input = &ctx.input;
    let (hyp, iz_report) = check_hypotheses(input)?;
    let ix = ix_generators(input)?;
    let en = eagon_northcott_complex(input)?;
    let pprime = if hyp.strict {
        quotient_dual_complex(input, &iz_report.complex)?
    } else if hyp.degenerate_ci {
        // I_X = I_K: the quotient vanishes and the patch is the hull itself
        symres::complex::ChainComplex::trivial(
            input.ring_s(),
            symres::matrix::GradedFreeModule::new(vec![]),
        )
    } else {
        return Err(AppError::Math(
            "hypotheses violated; the patched resolution is not defined".into(),
        ));
    };
    let patched = build_patched_resolution(&en, &pprime, &ix)
        .map_err(|e| AppError::Math(e.to_string()))?;
    let min = minimize(&patched);
    if ctx.cli.json {
        let v = serde_json::json!({
            "patched_betti": serde_json::to_value(patched.betti_table().to_json("ix_patched")).unwrap(),
            "minimized_betti": serde_json::to_value(min.betti_table().to_json("ix")).unwrap(),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("patched resolution (before minimization): {}", patched.betti_table().to_pretty());
        println!("after minimization: {}", min.betti_table().to_pretty());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify<K: Field>(ctx: Ctx<'_, K>) -> Result<ExitCode, AppError> {
    let cli = ctx.cli;
    let opts = VerifyOptions {
        d_max: cli.d_max,
        max_length: cli.max_length,
        fibre_samples: 100,
        seed: cli.seed,
    };
    let report = verify_theorem2(&ctx.input, &opts)?;
    if cli.timings {
        for (label, ms) in &report.timings_ms {
            eprintln!("timing {label}: {ms} ms");
        }
    }
    if cli.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).unwrap()
        );
    } else {
        let h = &report.hypotheses;
        println!("field: {}   order: {}", report.field_label, report.order_name);
        println!(
            "hypotheses: generators_ok={} dimension={} pd={} cm={} applicable={}{}",
            h.num_generators_ok,
            h.dimension,
            h.projective_dimension,
            h.is_cm,
            h.theorem_applicable,
            if h.degenerate_ci { " (degenerate n=1)" } else { "" }
        );
        println!("I_Z betti: {}", report.iz_betti.to_pretty());
        println!("I_X betti: {}", report.computed_betti.to_pretty());
        match (&report.predicted_betti, report.betti_match) {
            (Some(p), Some(m)) => {
                println!("predicted: {}", p.to_pretty());
                println!("betti_match: {m}");
            }
            _ => println!("betti_match: not applicable (hypotheses fail)"),
        }
        println!("subregular: {}", report.subregular);
        if let Some((i, r, c)) = report.subregular_witness {
            println!("  witness: differential {i}, entry ({r},{c}) has y-degree > 1");
        }
        let ic = &report.identity_checks;
        println!(
            "identities: colon={} quotient_hilbert={} sym1={} h1={}",
            opt_str(ic.colon_ok),
            opt_str(ic.quotient_hilbert_ok),
            ic.sym1_ok,
            opt_str(ic.h1_ok)
        );
        println!("I_K contained in I_X: {}", report.hull_contained_in_ix);
        let en = &report.en_checks;
        println!(
            "eagon-northcott: dd_zero={} exact={} degree1_image=I_K: {}",
            en.dd_zero, en.exact_positive, en.degree1_image_is_hull
        );
        println!(
            "fibre ranks: {} samples off Z, all full rank: {}",
            report.fibre_checks.samples_off_z, report.fibre_checks.all_full_rank
        );
    }
    if verification_failed(&report) {
        Err(AppError::Math("verification detected a mathematical inconsistency".into()))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn opt_str(v: Option<bool>) -> String {
    match v {
        Some(b) => b.to_string(),
        None => "n/a".to_string(),
    }
}

/// A report fails when a check that is asserted for its hypothesis class
/// comes back false; hypothesis failure itself is data, not failure.
fn verification_failed(report: &symres::verify::VerificationReport) -> bool {
    if !report.identity_checks.sym1_ok
        || !report.en_checks.dd_zero
        || !report.hull_contained_in_ix
    {
        return true;
    }
    if report.hypotheses.theorem_applicable {
        let identities_ok = report.identity_checks.colon_ok.unwrap_or(true)
            && report.identity_checks.quotient_hilbert_ok.unwrap_or(true)
            && report.identity_checks.h1_ok.unwrap_or(true);
        return report.betti_match != Some(true)
            || !report.subregular
            || !identities_ok
            || !report.en_checks.exact_positive
            || !report.en_checks.degree1_image_is_hull
            || !report.fibre_checks.all_full_rank;
    }
    false
}

fn cmd_dim<K: Field>(ctx: Ctx<'_, K>) -> Result<ExitCode, AppError> {
    let gb = GroebnerBasis::of_ideal(ctx.input.ring_r(), ctx.input.generators())?;
    let dim = krull_dimension(&gb);
    if ctx.cli.json {
        println!("{}", serde_json::json!({ "dimension": dim }));
    } else {
        println!("{dim}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hilbert<K: Field>(ctx: Ctx<'_, K>, of: Target) -> Result<ExitCode, AppError> {
    let (label, ring, gens) = match of {
        Target::Iz => (
            "R/I_Z",
            ctx.input.ring_r().clone(),
            ctx.input.generators().to_vec(),
        ),
        Target::Ix => ("S/I_X", ctx.input.ring_s().clone(), ix_generators(&ctx.input)?),
    };
    let hs = hilbert_series_of_quotient(&ring, &gens)?;
    if ctx.cli.json {
        let terms: Vec<serde_json::Value> = hs
            .numerator
            .coeffs
            .iter()
            .map(|(&(a, b), &c)| serde_json::json!({"s": a, "t": b, "coeff": c}))
            .collect();
        let v = serde_json::json!({
            "module": label,
            "numerator": terms,
            "x_denom": hs.x_denom,
            "y_denom": hs.y_denom,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        let denom = match (hs.x_denom, hs.y_denom) {
            (a, 0) => format!("(1-s)^{a}"),
            (a, b) => format!("(1-s)^{a} (1-t)^{b}"),
        };
        println!("HS({label}) = ({}) / {denom}", hs.numerator.to_string_st());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_battery(cli: &Cli, n: usize, etas: &[u32], count: usize) -> Result<ExitCode, AppError> {
    let threads = std::env::var("SYMRES_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(1)
        .max(1);
    let params = BatteryParams {
        n,
        etas: etas.to_vec(),
        count,
        seed: cli.seed,
        d_max: cli.d_max,
        fibre_samples: 100,
        threads,
    };
    let order: TermOrder = cli.order.into();
    let spec = match cli.characteristic.as_deref() {
        None => FieldSpec::Prime(32003),
        Some("QQ") => FieldSpec::Rational,
        Some(p) => FieldSpec::Prime(
            p.parse()
                .map_err(|_| AppError::Usage(format!("bad --char value '{p}'")))?,
        ),
    };
    let summary = match spec {
        FieldSpec::Prime(p) => {
            if !is_prime_u64(p) {
                return Err(AppError::Usage(format!("characteristic {p} is not prime")));
            }
            run_battery(PrimeField::new(p), order, &params)?
        }
        FieldSpec::Rational => run_battery(Rationals, order, &params)?,
    };
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&summary).unwrap());
    } else {
        println!(
            "{}/{} betti_match, {}/{} subregular, {}/{} eagon-northcott, {}/{} identities, {}/{} fibre checks",
            summary.betti_match_passed,
            summary.total,
            summary.subregular_passed,
            summary.total,
            summary.en_passed,
            summary.total,
            summary.identities_passed,
            summary.identities_applicable,
            summary.fibre_passed,
            summary.total,
        );
        for f in &summary.failures {
            println!("FAIL {f}");
        }
    }
    if summary.all_passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(AppError::Math(format!(
            "{} battery check(s) failed",
            summary.failures.len()
        )))
    }
}

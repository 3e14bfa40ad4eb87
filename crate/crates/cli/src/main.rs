use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quiverschub::coefficients::{
    decomposition_coefficients_full, kogan_chains, kogan_counts, product_sign_audit, quiver_coefficients_ratio,
    schubert_constant_product, sign_audit, structure_constants, theorem_check, QuiverInstance, RouteRegistry,
    RouteSelection, SignReport,
};
use quiverschub::perm::{grassmannian_permutation, Permutation};
use quiverschub::poly::{
    coeff_to_json, grothendieck_polynomial, schubert_polynomial, symmetric_grothendieck, BlockStructure,
    CoefficientTable, Theory,
};
use quiverschub::quiver::RankConditions;
use quiverschub::shapes::{Partition, PartitionSequence};
use quiverschub::Error;

#[derive(Parser)]
#[command(name = "quiverschub", version, about = "Quiver coefficients by Schubert calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Zelevinsky permutation of a rank array.
    Zelevinsky(InputArgs),
    /// Quiver coefficients by the ratio route.
    QuiverCoeffs(QuiverCoeffsArgs),
    /// Decomposition coefficients of a permutation over a block structure.
    Decomp(DecompArgs),
    /// Schubert or Grothendieck structure constants.
    SchubertConst(SchubertConstArgs),
    /// Compute the three theorem quantities at one sequence and compare.
    TheoremCheck(TheoremArgs),
    /// Check the alternating sign laws.
    SignAudit(SignAuditArgs),
    /// Dump a Grothendieck, Schubert or stable Grothendieck polynomial.
    Poly(PolyArgs),
}

#[derive(Args)]
struct Common {
    /// cohomology or k-theory
    #[arg(long, default_value = "cohomology", value_parser = parse_theory)]
    theory: Theory,
    /// Degree cap for K-theoretic expansions.
    #[arg(long)]
    cap: Option<u32>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Rank conditions as JSON.
    #[arg(long)]
    input: PathBuf,
    /// Use this permutation as v(r) instead of the constructed one.
    #[arg(long, value_parser = parse_perm)]
    override_zelevinsky: Option<Permutation>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QuiverCoeffsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_perm)]
    override_zelevinsky: Option<Permutation>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DecompArgs {
    #[arg(long, value_parser = parse_perm)]
    perm: Permutation,
    /// Block sizes, e.g. `[1,4,3,3]`.
    #[arg(long, value_parser = parse_blocks)]
    blocks: BlockStructure,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SchubertConstArgs {
    /// product or kogan
    #[arg(long, default_value = "product")]
    route: String,
    #[arg(long, value_parser = parse_perm)]
    v: Permutation,
    /// Second factor as a permutation.
    #[arg(long, value_parser = parse_perm, conflicts_with_all = ["lambda", "d"])]
    u: Option<Permutation>,
    /// Second factor as the Grassmannian permutation of a partition.
    #[arg(long, value_parser = parse_partition, requires = "d")]
    lambda: Option<Partition>,
    #[arg(long, requires = "lambda")]
    d: Option<usize>,
    /// Only this coefficient.
    #[arg(long, value_parser = parse_perm)]
    w: Option<Permutation>,
    /// With kogan and --w, also report up to this many chains.
    #[arg(long, default_value_t = 0)]
    chains: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct TheoremArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = parse_perm)]
    override_zelevinsky: Option<Permutation>,
    /// Partition sequence, e.g. `[[],[2,1,1],[1]]`.
    #[arg(long, value_parser = parse_sequence)]
    mu: PartitionSequence,
    #[arg(long, default_value = "auto")]
    route_i: String,
    #[arg(long, default_value = "auto")]
    route_ii: String,
    #[arg(long, default_value = "auto")]
    route_iii: String,
    /// Include wall-clock seconds per route.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SignAuditArgs {
    /// All products of pairs in S_N.
    #[arg(long, conflicts_with_all = ["input", "perm"])]
    products: Option<usize>,
    /// Quiver coefficients of these rank conditions.
    #[arg(long, conflicts_with = "perm")]
    input: Option<PathBuf>,
    #[arg(long, value_parser = parse_perm)]
    override_zelevinsky: Option<Permutation>,
    /// Decomposition coefficients of this permutation (needs --blocks).
    #[arg(long, value_parser = parse_perm, requires = "blocks")]
    perm: Option<Permutation>,
    #[arg(long, value_parser = parse_blocks)]
    blocks: Option<BlockStructure>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PolyArgs {
    #[arg(long, group = "kind")]
    grothendieck: bool,
    #[arg(long, group = "kind")]
    schubert: bool,
    /// Stable Grothendieck polynomial of this partition (K-theory unless --theory cohomology).
    #[arg(long, group = "kind", value_parser = parse_partition)]
    g_lambda: Option<Partition>,
    #[arg(long, value_parser = parse_perm, required_unless_present = "g_lambda")]
    perm: Option<Permutation>,
    /// Number of exponent columns; for --g-lambda also the number of variables.
    #[arg(long)]
    vars: Option<usize>,
    #[arg(long, value_parser = parse_theory)]
    theory: Option<Theory>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    Theory::parse(s).ok_or_else(|| format!("unknown theory `{s}`"))
}

fn parse_perm(s: &str) -> Result<Permutation, String> {
    let window: Vec<u32> = serde_json::from_str(s).map_err(|e| e.to_string())?;
    Permutation::from_window(window).map_err(|e| e.to_string())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let parts: Vec<u32> = serde_json::from_str(s).map_err(|e| e.to_string())?;
    Partition::try_new(parts).map_err(|e| e.to_string())
}

fn parse_blocks(s: &str) -> Result<BlockStructure, String> {
    let sizes: Vec<usize> = serde_json::from_str(s).map_err(|e| e.to_string())?;
    Ok(BlockStructure::new(sizes))
}

fn parse_sequence(s: &str) -> Result<PartitionSequence, String> {
    PartitionSequence::parse(s).map_err(|e| e.to_string())
}

/// What a subcommand produced: the report and whether it found an inconsistency.
struct Outcome {
    report: Report,
    consistent: bool,
}

enum Report {
    Json(Value),
    Text(String),
}

impl Outcome {
    fn ok(value: Value) -> Self {
        Outcome {
            report: Report::Json(value),
            consistent: true,
        }
    }
}

fn load(input: &PathBuf, flag: Option<Permutation>) -> Result<QuiverInstance, Error> {
    let (ranks, from_file) = RankConditions::load(input)?;
    QuiverInstance::new(ranks, flag.or(from_file))
}

fn table_report<K: quiverschub::poly::TableKey>(table: &CoefficientTable<K>, complete: bool) -> Value {
    json!({
        "coefficients": table.to_json(),
        "complete": complete,
        "route": table.route,
        "theory": table.theory.name(),
    })
}

fn second_factor(u: Option<Permutation>, lambda: Option<&Partition>, d: Option<usize>) -> Result<Permutation, Error> {
    match (u, lambda, d) {
        (Some(u), _, _) => Ok(u),
        (None, Some(lambda), Some(d)) => grassmannian_permutation(lambda, d, d + lambda.part(1) as usize),
        _ => Err(Error::Input("give --u, or --lambda with --d".into())),
    }
}

fn zelevinsky(args: InputArgs) -> Result<(Outcome, Option<PathBuf>), Error> {
    let q = load(&args.input, args.override_zelevinsky)?;
    Ok((Outcome::ok(json!(q.zelevinsky())), args.output))
}

fn quiver_coeffs(args: QuiverCoeffsArgs) -> Result<Outcome, Error> {
    let q = load(&args.input, args.override_zelevinsky)?;
    let out = quiver_coefficients_ratio(&q.derived, args.common.theory, args.common.cap)?;
    let mut report = table_report(&out.table, out.complete);
    report["codimension"] = json!(q.derived.expected_codimension);
    Ok(Outcome::ok(report))
}

fn decomp(args: DecompArgs) -> Result<Outcome, Error> {
    let out = decomposition_coefficients_full(&args.perm, &args.blocks, args.common.theory, args.common.cap)?;
    Ok(Outcome::ok(table_report(&out.table, out.complete)))
}

fn schubert_const(args: SchubertConstArgs) -> Result<Outcome, Error> {
    let theory = args.common.theory;
    match args.route.as_str() {
        "product" => {
            let u = second_factor(args.u, args.lambda.as_ref(), args.d)?;
            if let Some(w) = &args.w {
                let c = schubert_constant_product(&args.v, &u, w, theory)?;
                return Ok(Outcome::ok(json!({
                    "coefficient": coeff_to_json(&c),
                    "route": "product",
                    "theory": theory.name(),
                    "w": w,
                })));
            }
            let out = structure_constants(&args.v, &u, theory, args.common.cap)?;
            Ok(Outcome::ok(table_report(&out.table, out.complete)))
        }
        "kogan" => {
            if theory != Theory::Cohomology {
                return Err(Error::Unsupported {
                    route: "kogan".into(),
                    what: theory.name().into(),
                });
            }
            let (Some(lambda), Some(d)) = (args.lambda.as_ref(), args.d) else {
                return Err(Error::Input("kogan needs --lambda and --d".into()));
            };
            if let Some(w) = &args.w {
                let search = kogan_chains(&args.v, lambda, d, w, args.chains)?;
                let mut report = json!({
                    "coefficient": search.count,
                    "route": "kogan",
                    "theory": theory.name(),
                    "w": w,
                });
                if args.chains > 0 {
                    let chains = search
                        .chains
                        .iter()
                        .map(|c| {
                            let segments: Vec<usize> = c.segments()?.iter().map(|s| s.len()).collect();
                            Ok(json!({
                                "segments": segments,
                                "tableau": c.tableau(lambda)?.rows(),
                                "word": c.word,
                            }))
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    report["chains"] = json!(chains);
                }
                return Ok(Outcome::ok(report));
            }
            let mut table = CoefficientTable::new(theory, "kogan");
            for (w, c) in kogan_counts(&args.v, lambda, d)? {
                table.add(w, c.into());
            }
            Ok(Outcome::ok(table_report(&table, true)))
        }
        other => Err(Error::UnknownRoute(other.into())),
    }
}

fn theorem(args: TheoremArgs) -> Result<Outcome, Error> {
    let q = load(&args.input, args.override_zelevinsky)?;
    let selection = RouteSelection {
        quiver: args.route_i,
        decomposition: args.route_ii,
        structure: args.route_iii,
    };
    let report = theorem_check(&q, &args.mu, args.common.theory, &selection, &RouteRegistry::default())?;
    Ok(Outcome {
        report: Report::Json(report.to_json(args.timing)),
        consistent: report.verdict,
    })
}

fn signs(args: SignAuditArgs) -> Result<Outcome, Error> {
    let theory = args.common.theory;
    let (source, report): (Value, SignReport) = if let Some(n) = args.products {
        (json!({ "products": n }), product_sign_audit(n, theory)?)
    } else if let Some(input) = &args.input {
        let q = load(input, args.override_zelevinsky)?;
        let codim = q.derived.expected_codimension;
        let cap = args.common.cap.or(Some(codim.max(0) as u32 + 2));
        let out = quiver_coefficients_ratio(&q.derived, theory, cap)?;
        (json!({ "ranks": q.ranks.to_json() }), sign_audit(&out.table, codim))
    } else if let (Some(v), Some(blocks)) = (&args.perm, &args.blocks) {
        let cap = args.common.cap.or(Some(v.length() as u32 + 2));
        let out = decomposition_coefficients_full(v, blocks, theory, cap)?;
        (json!({ "blocks": blocks.sizes(), "perm": v }), sign_audit(&out.table, v.length() as i64))
    } else {
        return Err(Error::Input("give --products, --input or --perm with --blocks".into()));
    };
    let mut json = report.to_json();
    json["source"] = source;
    Ok(Outcome {
        report: Report::Json(json),
        consistent: report.is_clean(),
    })
}

fn poly(args: PolyArgs) -> Result<Outcome, Error> {
    let vars = args.vars.unwrap_or(0);
    let f = if let Some(lambda) = &args.g_lambda {
        let k = args.vars.unwrap_or(lambda.num_rows());
        symmetric_grothendieck(lambda, k, args.theory.unwrap_or(Theory::KTheory))
    } else {
        let w = args.perm.as_ref().expect("clap requires --perm");
        let ambient = w.size().max(1);
        if args.schubert || args.theory == Some(Theory::Cohomology) {
            schubert_polynomial(w, ambient)?
        } else {
            grothendieck_polynomial(w, ambient)?
        }
    };
    Ok(Outcome {
        report: Report::Text(f.dump(vars)),
        consistent: true,
    })
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), Error> {
    match cli.command {
        Command::Zelevinsky(a) => zelevinsky(a),
        Command::QuiverCoeffs(a) => {
            let out = a.common.output.clone();
            Ok((quiver_coeffs(a)?, out))
        }
        Command::Decomp(a) => {
            let out = a.common.output.clone();
            Ok((decomp(a)?, out))
        }
        Command::SchubertConst(a) => {
            let out = a.common.output.clone();
            Ok((schubert_const(a)?, out))
        }
        Command::TheoremCheck(a) => {
            let out = a.common.output.clone();
            Ok((theorem(a)?, out))
        }
        Command::SignAudit(a) => {
            let out = a.common.output.clone();
            Ok((signs(a)?, out))
        }
        Command::Poly(a) => {
            let out = a.output.clone();
            Ok((poly(a)?, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (outcome, path) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_input_error() { 2 } else { 1 });
        }
    };
    let text = match &outcome.report {
        Report::Json(v) => serde_json::to_string_pretty(v).expect("json") + "\n",
        Report::Text(t) => t.clone(),
    };
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if outcome.consistent {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: mathematical inconsistency detected");
        ExitCode::from(1)
    }
}

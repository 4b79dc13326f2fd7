//! `multiloop`: classify nullity-2 multiloop algebras from an affine matrix
//! and a diagram automorphism, fold diagrams, and run the exact verification
//! suites.
//!
//! Exit codes: 0 ok, 1 verification failure or internal error, 2 bad label,
//! 3 bad automorphism, 4 transitive fold.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use multiloop_core::autgroup::DiagramAut;
use multiloop_core::classify::{classify, enumerate, ClassificationRecord};
use multiloop_core::exactnum::cyc_root_of_unity;
use multiloop_core::folding::{fold, FoldingResult};
use multiloop_core::gcm::{affine_gcm, render_matrix_diagram, AffineGCM, Family};
use multiloop_core::quantumtorus::{pauli, rotation_realization, GradedElement};
use multiloop_core::verify::{run_suite, SuiteParams, SUITES};
use multiloop_core::Error;

#[derive(Parser)]
#[command(name = "multiloop", version, about = "Classification of nullity-2 multiloop Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// `--type X --rank k --twist m --sigma "cycles"`.
#[derive(clap::Args)]
struct Input {
    /// Family letter: A, B, C, D, E, F or G.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: u32,
    #[arg(long, default_value_t = 1)]
    twist: u32,
    /// Diagram automorphism in cycle notation, e.g. "(0 1)(4 5)". Empty means the identity.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    sigma: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the algebra of (A, σ) and print its canonical label.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Fold A along a nontransitive σ.
    Fold {
        #[command(flatten)]
        input: Input,
        /// Also print the folded diagram.
        #[arg(long)]
        diagram: bool,
        #[arg(long)]
        json: bool,
    },
    /// List every canonical label up to a rank.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_rank: u32,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Quantum torus data: rotation realization or Pauli generators.
    Quantum {
        /// ℓ of A_ℓ^(1), used with --q.
        #[arg(long, requires = "q")]
        rank: Option<u32>,
        /// Rotation power q.
        #[arg(long, requires = "rank", allow_hyphen_values = true)]
        q: Option<i64>,
        /// Print d_m(x₁) and p_m(x₂) over Q_θ with θ = ζ_m^e.
        #[arg(long, conflicts_with_all = ["rank", "q"])]
        pauli: Option<usize>,
        /// The exponent e for --pauli.
        #[arg(long, default_value_t = 1, requires = "pauli")]
        exponent: i64,
        #[arg(long)]
        json: bool,
    },
    /// Run an exact verification suite.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Degree box half-width.
        #[arg(long = "box")]
        degree_box: Option<i64>,
        #[arg(long)]
        max_m: Option<u32>,
        #[arg(long)]
        max_rank: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Tits index and SEARS label of every row up to a rank.
    Tables {
        #[arg(long, default_value_t = 12)]
        max_rank: u32,
        #[arg(long)]
        json: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidLabel(_) => 2,
            Error::NotAnAutomorphism(_) => 3,
            Error::Transitive => 4,
            _ => 1,
        };
        Failure::new(code, e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

fn load(input: &Input) -> std::result::Result<(AffineGCM, DiagramAut), Failure> {
    let family: Family = input.family.parse()?;
    let a = affine_gcm(family, input.rank, input.twist)?;
    let sigma = DiagramAut::parse(a.size(), &input.sigma).map_err(|e| Failure::new(3, e.to_string()))?;
    sigma.check_preserves(&a).map_err(|e| Failure::new(3, e.to_string()))?;
    Ok((a, sigma))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn print_record(r: &ClassificationRecord) {
    println!("label           {}", r.label);
    println!("absolute type   {}", r.absolute_type);
    println!("relative type   {}", r.relative_type);
    println!("condition (AA)  {}", if r.condition_aa { "yes" } else { "no" });
    if let Some(p) = &r.rotation_params {
        println!("realization     sl_{}(Q_θ), θ = ζ_{}^{} of order {}", p.g, p.theta_conductor, p.theta_exponent, p.theta_order);
    }
    println!("index           {}", r.index_label);
    println!("SEARS           {}", r.sears_label.as_deref().unwrap_or("none (anisotropic)"));
    println!("representative  {}", r.representative);
    if let Some(s) = &r.source {
        println!("source row      {} row {}", s.affine_type, s.tag);
    }
}

fn cmd_classify(input: &Input, as_json: bool) -> CliResult {
    let (a, sigma) = load(input)?;
    let r = classify(&a, &sigma)?;
    if as_json {
        println!("{}", json(&r));
    } else {
        print_record(&r);
    }
    Ok(())
}

fn folded_diagram(f: &FoldingResult) -> String {
    let target = multiloop_core::gcm::gcm_for(f.folded_type);
    let marks: Vec<i64> = f.recognition.iter().map(|&p| target.marks[p]).collect();
    let comarks: Vec<i64> = f.recognition.iter().map(|&p| target.comarks[p]).collect();
    render_matrix_diagram(&f.folded, Some(f.folded_type), Some((&marks, &comarks)))
}

fn cmd_fold(input: &Input, diagram: bool, as_json: bool) -> CliResult {
    let (a, sigma) = load(input)?;
    let f = fold(&a, &sigma).map_err(|e| match e {
        Error::Transitive => Failure::new(
            4,
            format!(
                "{sigma} is transitive on {}: a full-order rotation of A_ℓ^(1) has no fold; \
                 the algebra is anisotropic (relative type A_0), see `classify`",
                a.label
            ),
        ),
        e => e.into(),
    })?;
    if as_json {
        println!("{}", json(&f));
        return Ok(());
    }
    println!("source          {}", f.source);
    println!("sigma           {}", f.sigma);
    let orbits: Vec<String> = f
        .orbits
        .iter()
        .map(|(r, o)| format!("{r}:{{{}}}", o.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    println!("orbits          {}", orbits.join(" "));
    let defects: Vec<String> = f.defects.iter().map(|(r, s)| format!("s_{r}={s}")).collect();
    println!("defects         {}", defects.join(" "));
    println!("folded type     {}", f.folded_type);
    println!("relative type   {}", f.relative_type());
    if diagram {
        println!();
        print!("{}", folded_diagram(&f));
    }
    Ok(())
}

fn cmd_enumerate(max_rank: u32, family: Option<&str>, format: Format) -> CliResult {
    let family: Option<Family> = family.map(str::parse).transpose()?;
    let records: Vec<ClassificationRecord> =
        enumerate(max_rank)?.into_iter().filter(|r| family.map_or(true, |f| r.label.family == f)).collect();
    match format {
        Format::Json => println!("{}", json(&records)),
        Format::Table => {
            println!("{:<20} {:<8} {:<8} {:<4} {:<22} SEARS", "label", "abs", "rel", "AA", "index");
            for r in &records {
                println!(
                    "{:<20} {:<8} {:<8} {:<4} {:<22} {}",
                    r.label.to_string(),
                    r.absolute_type.to_string(),
                    r.relative_type.to_string(),
                    if r.condition_aa { "yes" } else { "no" },
                    r.index_label,
                    r.sears_label.as_deref().unwrap_or("-"),
                );
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct PauliPair {
    m: usize,
    theta_exponent: i64,
    d: GradedElement,
    p: GradedElement,
}

fn cmd_quantum(rank: Option<u32>, q: Option<i64>, pauli_m: Option<usize>, exponent: i64, as_json: bool) -> CliResult {
    if let Some(m) = pauli_m {
        if m == 0 {
            return Err(Failure::new(2, "--pauli needs m ≥ 1"));
        }
        let theta = cyc_root_of_unity(m as u32, exponent);
        let x1 = GradedElement::generator(1, &theta, 1)?;
        let x2 = GradedElement::generator(1, &theta, 2)?;
        let (d, _) = pauli(m, &x1)?;
        let (_, p) = pauli(m, &x2)?;
        println!("{}", json(&PauliPair { m, theta_exponent: exponent.rem_euclid(m as i64), d, p }));
        return Ok(());
    }
    let (Some(l), Some(q)) = (rank, q) else {
        return Err(Failure::new(2, "quantum needs --rank and --q, or --pauli"));
    };
    if l == 0 {
        return Err(Failure::new(2, "--rank must be at least 1"));
    }
    let r = rotation_realization(l, q);
    if as_json {
        println!("{}", json(&r));
    } else {
        println!("rotation        ρ^{q} of A_{l}^(1)");
        println!("g               {}", r.g);
        println!("theta           ζ_{}^{} = {}", l + 1, r.theta_exponent, r.theta);
        println!("theta order     {}", r.theta_order);
        println!("algebra         sl_{}(Q_θ)", r.g);
    }
    Ok(())
}

fn cmd_verify(suite: &str, params: SuiteParams, as_json: bool) -> CliResult {
    let report = run_suite(suite, params).ok_or_else(|| Failure::new(2, format!("unknown suite {suite:?}")))??;
    if as_json {
        println!("{}", json(&report));
    } else {
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!("{status} {}: {} cases, {} failures", report.suite, report.cases, report.failures);
        if let Some(c) = &report.first_counterexample {
            println!("first counterexample: {c}");
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::new(1, format!("suite {suite} failed")))
    }
}

#[derive(Serialize)]
struct TableRowOut {
    label: String,
    index: String,
    sears: Option<String>,
}

fn cmd_tables(max_rank: u32, as_json: bool) -> CliResult {
    let rows: Vec<TableRowOut> = enumerate(max_rank)?
        .into_iter()
        .map(|r| TableRowOut { label: r.label.to_string(), index: r.index_label, sears: r.sears_label })
        .collect();
    if as_json {
        println!("{}", json(&rows));
    } else {
        for r in &rows {
            println!("{:<20} {:<22} {}", r.label, r.index, r.sears.as_deref().unwrap_or("-"));
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Classify { input, json } => cmd_classify(&input, json),
        Command::Fold { input, diagram, json } => cmd_fold(&input, diagram, json),
        Command::Enumerate { max_rank, family, format } => cmd_enumerate(max_rank, family.as_deref(), format),
        Command::Quantum { rank, q, pauli, exponent, json } => cmd_quantum(rank, q, pauli, exponent, json),
        Command::Verify { suite, degree_box, max_m, max_rank, samples, seed, json } => {
            let d = SuiteParams::default();
            let params = SuiteParams {
                max_m: max_m.unwrap_or(if suite == "iota" { 200 } else { d.max_m }),
                degree_box: degree_box.unwrap_or(d.degree_box),
                max_rank: max_rank.unwrap_or(d.max_rank),
                samples: samples.unwrap_or(d.samples),
                seed: seed.unwrap_or(d.seed),
            };
            cmd_verify(&suite, params, json)
        }
        Command::Tables { max_rank, json } => cmd_tables(max_rank, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;
    use multiloop_core::gcm::render_diagram;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn error_codes() {
        assert_eq!(Failure::from(Error::InvalidLabel("x".into())).code, 2);
        assert_eq!(Failure::from(Error::NotAnAutomorphism("x".into())).code, 3);
        assert_eq!(Failure::from(Error::Transitive).code, 4);
    }

    #[test]
    fn identity_fold_echoes_the_input_diagram() {
        let a = affine_gcm(Family::D, 5, 1).unwrap();
        let f = fold(&a, &DiagramAut::identity(a.size())).unwrap();
        assert_eq!(folded_diagram(&f), render_diagram(&a));
    }
}

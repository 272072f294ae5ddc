mod case;
mod plot;

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use mplab_core::momentpoly::{
    classify_borel_orbit_closure, membership_in_c, moment_polytope, real_moment_polytope_routes,
};
use mplab_core::numlab::{sample_orbit, sampled_delta};
use mplab_core::reps::{
    clebsch_gordan_highest_weights, hwv_product_form, hwv_sum_form, n_invariant_subspace, section_space_dim,
    weight_decomposition,
};
use mplab_core::verify::run_suite;
use mplab_core::{
    DeltaMode, FloatFlagPoint, OrbitClass, Rational, RationalPolytope, RealFormCase, SectionSpaceSpec, Subgroup, Suite,
};

use case::{CaseArgs, CaseSpec};

/// Bad arguments or inputs; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// A check ran and failed; exits with status 1.
#[derive(Debug)]
struct CheckFailed(String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

#[derive(Parser)]
#[command(name = "mplab", version, about = "Moment polytopes of Borel orbit closures in CP1 x CP1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Moment polytope of the orbit closure of a point, as JSON
    Polytope {
        #[command(flatten)]
        case: CaseArgs,
        /// Also list highest weight membership for lambda = n/q, q <= --den
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 1)]
        den: i64,
    },
    /// Moment polytope of the real locus by both routes, with their verdict
    Realpolytope {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Distinct real moment polytopes over the five orbit classes
    Catalog {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Highest weights and weight multiplicities of the section space
    Decompose {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 1)]
        r: i64,
    },
    /// Highest weight vector for --r and --k, in sum and product form
    Hwv {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long)]
        k: i64,
    },
    /// Brute-force basis of the N-invariants of one weight
    Oracle {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 1)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        weight: i64,
    },
    /// Run a verification suite
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        /// section5, lagrangian, coadjoint, gradcheck, sampling or all
        #[arg(long, default_value = "all")]
        suite: String,
        /// Print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Sample an orbit and write CSV
    Sample {
        #[command(flatten)]
        case: CaseArgs,
        /// B, H, G or G'
        #[arg(long, default_value = "H")]
        subgroup: String,
        #[arg(short, long, default_value_t = 1000)]
        n: usize,
        /// Output file instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Render a JSON polytope document or a sample CSV as SVG
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn usage<E: fmt::Display>(e: E) -> anyhow::Error {
    UsageError(e.to_string()).into()
}

fn polytope_value(p: &RationalPolytope) -> Value {
    serde_json::to_value(p).expect("polytopes serialize")
}

fn real_case(spec: &CaseSpec) -> anyhow::Result<RealFormCase> {
    RealFormCase::new(spec.point()?.clone(), spec.gamma.clone()).map_err(usage)
}

fn section_spec(r: i64, spec: &CaseSpec) -> anyhow::Result<SectionSpaceSpec> {
    let (l1, l2) = spec.weights()?;
    SectionSpaceSpec::new(r, l1, l2).map_err(usage)
}

fn emit(out: &mut impl Write, v: &Value) -> anyhow::Result<()> {
    writeln!(out, "{}", serde_json::to_string(v)?)?;
    Ok(())
}

fn run(cli: Cli, out: &mut impl Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Polytope { case, table, den } => {
            let spec = case.resolve()?;
            let (l1, l2) = spec.weights()?;
            let x = spec.point()?;
            let p = moment_polytope(x, l1, l2).map_err(usage)?;
            if !table {
                writeln!(out, "{}", p.to_json())?;
                eprintln!("{} orbit closure, weights ({l1}, {l2}): {p}", classify_borel_orbit_closure(x));
                return Ok(());
            }
            if den < 1 {
                return Err(usage("--den must be at least 1"));
            }
            let mut lambdas = BTreeSet::new();
            for q in 1..=den {
                for n in -q..=(l1 + l2 + 1) * q {
                    lambdas.insert(Rational::new(n.into(), q.into()));
                }
            }
            let rows = lambdas
                .into_iter()
                .map(|lambda| {
                    let witness = membership_in_c(x, l1, l2, &lambda)?;
                    Ok(json!({"lambda": lambda.to_string(), "member": witness.is_some(), "witness": witness}))
                })
                .collect::<mplab_core::Result<Vec<Value>>>()?;
            emit(
                out,
                &json!({"class": classify_borel_orbit_closure(x).name(), "polytope": polytope_value(&p), "membership": rows}),
            )
        }
        Command::Realpolytope { case } => {
            let spec = case.resolve()?;
            let (l1, l2) = spec.weights()?;
            let rc = real_case(&spec)?;
            let routes = real_moment_polytope_routes(&rc, l1, l2, spec.r_max)?;
            emit(
                out,
                &json!({
                    "class": classify_borel_orbit_closure(rc.point()).name(),
                    "gamma": spec.gamma.label(),
                    "intersection": polytope_value(&routes.intersection),
                    "membership": polytope_value(&routes.membership),
                    "agree": routes.agree(),
                }),
            )?;
            eprintln!("intersection {} / membership {}", routes.intersection, routes.membership);
            if routes.agree() {
                Ok(())
            } else {
                Err(CheckFailed("the two routes disagree".into()).into())
            }
        }
        Command::Catalog { case } => {
            let spec = case.resolve()?;
            let (l1, l2) = spec.weights()?;
            let mut entries = Vec::new();
            let mut distinct = BTreeSet::new();
            for class in OrbitClass::ALL {
                let rc = RealFormCase::new(class.representative(), spec.gamma.clone()).map_err(usage)?;
                let routes = real_moment_polytope_routes(&rc, l1, l2, spec.r_max)?;
                if !routes.agree() {
                    return Err(CheckFailed(format!("{class}: the two routes disagree")).into());
                }
                entries.push(json!({"class": class.name(), "polytope": polytope_value(&routes.intersection)}));
                distinct.insert(routes.intersection);
            }
            let polytopes: Vec<Value> = distinct.iter().map(polytope_value).collect();
            emit(
                out,
                &json!({"weights": [l1, l2], "gamma": spec.gamma.label(), "entries": entries, "polytopes": polytopes}),
            )?;
            let listing: Vec<String> = distinct.iter().map(ToString::to_string).collect();
            eprintln!("{} distinct: {}", distinct.len(), listing.join(", "));
            Ok(())
        }
        Command::Decompose { case, r } => {
            let s = section_spec(r, &case.resolve()?)?;
            let highest = clebsch_gordan_highest_weights(&s);
            let dims: Vec<i64> = highest.iter().map(|w| w + 1).collect();
            let weights: Vec<[i64; 2]> =
                weight_decomposition(&s).into_iter().rev().map(|(w, m)| [w, m as i64]).collect();
            emit(
                out,
                &json!({"r": r, "dim": section_space_dim(&s), "highest_weights": highest, "component_dims": dims, "weights": weights}),
            )
        }
        Command::Hwv { case, r, k } => {
            let s = section_spec(r, &case.resolve()?)?;
            let sum = hwv_sum_form(&s, k).map_err(usage)?;
            let product = hwv_product_form(&s, k).map_err(usage)?;
            writeln!(out, "sum:     {sum}")?;
            writeln!(out, "product: {product}")?;
            writeln!(out, "weight:  {}", sum.torus_weight()?)?;
            writeln!(out, "agree:   {}", sum == product)?;
            if sum == product {
                Ok(())
            } else {
                Err(CheckFailed("closed forms disagree".into()).into())
            }
        }
        Command::Oracle { case, r, weight } => {
            let s = section_spec(r, &case.resolve()?)?;
            let basis = n_invariant_subspace(&s, weight);
            let basis: Vec<String> = basis.iter().map(ToString::to_string).collect();
            emit(out, &json!({"r": r, "weight": weight, "dim": basis.len(), "basis": basis}))
        }
        Command::Verify { case, suite, json } => {
            let spec = case.resolve()?;
            let suite: Suite = suite.parse().map_err(usage)?;
            let report = run_suite(suite, spec.seed);
            if json {
                emit(out, &serde_json::to_value(&report)?)?;
            } else {
                for check in &report.checks {
                    writeln!(out, "{check}")?;
                }
            }
            if report.passed() {
                Ok(())
            } else {
                let failed = report.checks.iter().filter(|c| !c.passed).count();
                Err(CheckFailed(format!("{failed} check(s) failed")).into())
            }
        }
        Command::Sample { case, subgroup, n, output } => {
            let spec = case.resolve()?;
            let (l1, l2) = spec.weights()?;
            let subgroup: Subgroup = subgroup.parse().map_err(usage)?;
            let x = FloatFlagPoint::from(spec.point()?);
            let samples = sample_orbit(&x, l1 as f64, l2 as f64, subgroup, n, spec.seed).map_err(usage)?;
            match &output {
                Some(path) => {
                    let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
                    samples.write_csv(std::io::BufWriter::new(file))?;
                }
                None => samples.write_csv(&mut *out)?,
            }
            let show = |d: Option<(f64, f64)>| d.map_or("none".to_string(), |(a, b)| format!("[{a:.4}, {b:.4}]"));
            eprintln!(
                "{n} samples from {subgroup}; radial {}; angular({}) {}",
                show(sampled_delta(&samples, DeltaMode::Radial)?),
                spec.eps,
                show(sampled_delta(&samples, DeltaMode::AngularFilter(spec.eps))?)
            );
            Ok(())
        }
        Command::Plot { input, output } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let svg = plot::render(&text).map_err(usage)?;
            match output {
                Some(path) => std::fs::write(&path, svg).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(svg.as_bytes())?,
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

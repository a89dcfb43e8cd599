//! `regcat`: validate finite structures, apply the constructions between
//! inductive groupoids and cross-connections, and check the round trips.
//!
//! Exit status is 0 when every verdict passes, 1 when some check fails and
//! 2 on an error, which is reported as JSON.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use regcat_core::crossconn::{analyze, CrossConnection};
use regcat_core::equivalence::{
    fixture_reports, fixture_round, roundtrip_report, test_arrows, RoundTripInput, RoundTripReport,
};
use regcat_core::fixtures::{
    builtin, idempotent_biorder, standard_fixtures, trace_groupoid, FiniteSemigroup,
};
use regcat_core::functor_ci::build_gamma;
use regcat_core::functor_ic::build_ig;
use regcat_core::inductive::{check_inductive, Groupoid, InductiveGroupoid};
use regcat_core::io::{
    cross_output, groupoid_output, inductive_from_doc, inductive_to_doc, load_semigroup,
    parse_structure, validate_structure, Bounds, Structure,
};
use regcat_core::{Error, Report};

#[derive(Parser)]
#[command(
    name = "regcat",
    version,
    about = "Exact checks for inductive groupoids and cross-connections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Input JSON document.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Most chains generated when closing a biordered set into its groupoid.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    closure_cap: Option<u64>,
    /// Largest input accepted, in elements or objects.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    max_size: u64,
    /// Worker threads for fixture suites; defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of the structure held by `--input`.
    Validate,
    /// Build a structure from another.
    Build {
        #[arg(value_enum)]
        target: BuildTarget,
        #[command(flatten)]
        fixture: FixtureArg,
    },
    /// Run both round trips on an input, a builtin fixture, or the standard suite.
    Roundtrip {
        #[command(flatten)]
        fixture: FixtureArg,
        /// Run the standard fixture suite with automorphisms and embeddings.
        #[arg(long, conflicts_with = "fixture")]
        suite: bool,
    },
    /// Emit builtin fixtures.
    Fixtures {
        #[command(flatten)]
        fixture: FixtureArg,
        #[arg(long = "as", value_enum, default_value_t = Emit::Semigroup)]
        emit: Emit,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildTarget {
    /// The inductive groupoid of a cross-connection.
    Ig,
    /// The cross-connection of an inductive groupoid.
    Cc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Semigroup,
    Biorder,
    Groupoid,
}

#[derive(Args)]
struct FixtureArg {
    /// A builtin fixture and its parameters, e.g. `--fixture rect_band 2 2`.
    #[arg(long, num_args = 1.., value_name = "NAME [PARAMS]")]
    fixture: Option<Vec<String>>,
}

impl FixtureArg {
    fn load(&self, bounds: &Bounds) -> Result<Option<FiniteSemigroup>, Error> {
        let Some(words) = &self.fixture else {
            return Ok(None);
        };
        let params = words[1..]
            .iter()
            .map(|w| {
                w.parse::<usize>()
                    .map_err(|_| Error::UnknownFixture(format!("bad parameter {w:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let s = builtin(&words[0], &params)?;
        bounds.require("fixture", s.n())?;
        Ok(Some(s))
    }
}

/// A finished command: its JSON report, a text rendering, and whether every
/// verdict passed.
struct Outcome {
    json: Value,
    text: String,
    pass: bool,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, Error> {
    Ok(serde_json::to_value(x)?)
}

fn read_input(common: &Common) -> Result<Structure, Error> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| Error::Json("--input is required".to_string()))?;
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_structure(&text)
}

fn report_text(r: &Report) -> String {
    if r.is_ok() {
        return "ok".to_string();
    }
    r.violations
        .iter()
        .map(|v| format!("{} at {:?} ({}x)", v.rule, v.witness, v.count))
        .collect::<Vec<_>>()
        .join("\n")
}

fn validate(common: &Common, bounds: &Bounds) -> Result<Outcome, Error> {
    let s = read_input(common)?;
    let report = validate_structure(&s, bounds)?;
    let pass = report.is_ok();
    Ok(Outcome {
        text: format!("{}: {}\n{}", s.kind(), verdict(pass), report_text(&report)),
        json: json!({ "kind": s.kind(), "report": to_value(&report)?, "verdict": verdict(pass) }),
        pass,
    })
}

/// An inductive groupoid from `--fixture` (its trace groupoid) or from an
/// input groupoid or semigroup document.
fn groupoid_source(
    common: &Common,
    fixture: &FixtureArg,
    bounds: &Bounds,
) -> Result<(String, InductiveGroupoid), Error> {
    if let Some(s) = fixture.load(bounds)? {
        return Ok((s.name().to_string(), trace_groupoid(&s)?.0));
    }
    match read_input(common)? {
        Structure::Groupoid(doc) => {
            bounds.require("groupoid", doc.objects.len())?;
            let name = doc.name.clone().unwrap_or_else(|| "G".to_string());
            Ok((name, inductive_from_doc(&doc)?))
        }
        Structure::Semigroup(doc) => {
            let s = load_semigroup(&doc, bounds)?;
            Ok((s.name().to_string(), trace_groupoid(&s)?.0))
        }
        other => Err(Error::Json(format!(
            "expected an inductive groupoid or a semigroup, got a {}",
            other.kind()
        ))),
    }
}

fn cross_source(
    common: &Common,
    fixture: &FixtureArg,
    bounds: &Bounds,
) -> Result<CrossConnection, Error> {
    if let Some(s) = fixture.load(bounds)? {
        return Ok(build_gamma(&trace_groupoid(&s)?.0)?.cross);
    }
    match read_input(common)? {
        Structure::Cross(doc) => {
            bounds.require(
                "cross-connection",
                doc.c.objects.len().max(doc.d.objects.len()),
            )?;
            CrossConnection::from_doc(&doc)
        }
        other => Err(Error::Json(format!(
            "expected a cross-connection, got a {}",
            other.kind()
        ))),
    }
}

fn invalid(kind: &str, report: Report) -> Result<Outcome, Error> {
    Ok(Outcome {
        text: format!("{kind}: fail\n{}", report_text(&report)),
        json: json!({ "kind": kind, "report": to_value(&report)?, "verdict": "fail" }),
        pass: false,
    })
}

fn build(
    target: BuildTarget,
    fixture: &FixtureArg,
    common: &Common,
    bounds: &Bounds,
) -> Result<Outcome, Error> {
    match target {
        BuildTarget::Cc => {
            let (name, ig) = groupoid_source(common, fixture, bounds)?;
            let report = check_inductive(&ig)?;
            if !report.is_ok() {
                return invalid("inductive_groupoid", report);
            }
            let cc = build_gamma(&ig)?;
            let valid = analyze(&cc.cross)?;
            let doc = cross_output(&cc, valid.pairs.clone(), &name);
            Ok(Outcome {
                text: format!(
                    "{}: |C| = {}, |D| = {}, |E_Gamma| = {}",
                    cc.cross.name,
                    cc.cross.c.object_count(),
                    cc.cross.d.object_count(),
                    valid.pairs.len()
                ),
                json: to_value(&doc)?,
                pass: true,
            })
        }
        BuildTarget::Ig => {
            let x = cross_source(common, fixture, bounds)?;
            let valid = match analyze(&x) {
                Ok(v) => v,
                Err(Error::Invalid(report)) => return invalid("cross_connection", report),
                Err(e) => return Err(e),
            };
            let g = build_ig(&valid)?;
            let report = check_inductive(&g.ig)?;
            let doc = groupoid_output(&g, &x.name);
            Ok(Outcome {
                text: format!(
                    "{}: {} objects, {} morphisms, inductive: {}",
                    x.name,
                    g.ig.e.n(),
                    g.ig.g.morphism_count(),
                    report_text(&report)
                ),
                json: to_value(&doc)?,
                pass: report.is_ok(),
            })
        }
    }
}

fn reports_text(reports: &[RoundTripReport]) -> String {
    reports
        .iter()
        .map(|r| {
            let direction = serde_json::to_value(r.direction)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default();
            let mut line = format!(
                "{direction} {}: {} ({} squares)",
                r.subject,
                verdict(r.passed()),
                r.naturality_checks.len()
            );
            if !r.checks.is_ok() {
                line.push_str(&format!(
                    "\n  {}",
                    report_text(&r.checks).replace('\n', "\n  ")
                ));
            }
            for sq in r.naturality_checks.iter().filter(|s| !s.commutes) {
                line.push_str(&format!(
                    "\n  square {}: {}",
                    sq.morphism,
                    report_text(&sq.report)
                ));
            }
            line
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn roundtrip_outcome(reports: Vec<RoundTripReport>) -> Result<Outcome, Error> {
    let pass = reports.iter().all(RoundTripReport::passed);
    Ok(Outcome {
        text: format!("{}\nverdict: {}", reports_text(&reports), verdict(pass)),
        json: json!({ "reports": to_value(&reports)?, "verdict": verdict(pass) }),
        pass,
    })
}

fn suite(jobs: Option<u64>) -> Result<Outcome, Error> {
    let fixtures = standard_fixtures();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        pool = pool.num_threads(j as usize);
    }
    let pool = pool.build().map_err(|e| Error::Json(e.to_string()))?;
    let reports = pool.install(|| -> Result<Vec<RoundTripReport>, Error> {
        let rounds = fixtures
            .par_iter()
            .map(fixture_round)
            .collect::<Result<Vec<_>, _>>()?;
        let arrows = test_arrows(&fixtures)?;
        let pairs = (0..fixtures.len())
            .into_par_iter()
            .map(|i| fixture_reports(i, &rounds, &arrows))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(pairs.into_iter().flatten().collect())
    })?;
    roundtrip_outcome(reports)
}

fn roundtrip(
    fixture: &FixtureArg,
    run_suite: bool,
    common: &Common,
    bounds: &Bounds,
) -> Result<Outcome, Error> {
    if run_suite {
        return suite(common.jobs);
    }
    let input = match fixture.load(bounds)? {
        Some(s) => RoundTripInput::Semigroup(s),
        None => match read_input(common)? {
            Structure::Semigroup(doc) => RoundTripInput::Semigroup(load_semigroup(&doc, bounds)?),
            Structure::Groupoid(doc) => {
                bounds.require("groupoid", doc.objects.len())?;
                let name = doc.name.clone().unwrap_or_else(|| "G".to_string());
                RoundTripInput::Groupoid(name, inductive_from_doc(&doc)?)
            }
            Structure::Cross(doc) => {
                bounds.require(
                    "cross-connection",
                    doc.c.objects.len().max(doc.d.objects.len()),
                )?;
                RoundTripInput::Cross(CrossConnection::from_doc(&doc)?)
            }
            other => return Err(Error::Json(format!("cannot round-trip a {}", other.kind()))),
        },
    };
    roundtrip_outcome(roundtrip_report(&input)?.into())
}

fn fixtures(fixture: &FixtureArg, emit: Emit, bounds: &Bounds) -> Result<Outcome, Error> {
    let list = match fixture.load(bounds)? {
        Some(s) => vec![s],
        None => standard_fixtures(),
    };
    let docs = list
        .iter()
        .map(|s| {
            Ok(match emit {
                Emit::Semigroup => to_value(&s.to_doc())?,
                Emit::Biorder => to_value(&idempotent_biorder(s)?.to_doc())?,
                Emit::Groupoid => to_value(&inductive_to_doc(&trace_groupoid(s)?.0, None))?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let text = list
        .iter()
        .map(|s| format!("{} ({} elements)", s.name(), s.n()))
        .collect::<Vec<_>>()
        .join("\n");
    let json = if fixture.fixture.is_some() {
        docs.into_iter().next().expect("one fixture")
    } else {
        Value::Array(docs)
    };
    Ok(Outcome {
        json,
        text,
        pass: true,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let c = &cli.common;
    let bounds = Bounds {
        max_size: c.max_size as usize,
        closure_cap: c.closure_cap.map(|x| x as usize),
    };
    match &cli.command {
        Command::Validate => validate(c, &bounds),
        Command::Build { target, fixture } => build(*target, fixture, c, &bounds),
        Command::Roundtrip { fixture, suite } => roundtrip(fixture, *suite, c, &bounds),
        Command::Fixtures { fixture, emit } => fixtures(fixture, *emit, &bounds),
    }
}

fn emit(common: Option<&Common>, body: String) -> ExitCode {
    let path = common.and_then(|c| c.output.as_ref());
    let written = match path {
        Some(p) => fs::write(p, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_json("io", &e.to_string()));
            ExitCode::from(2)
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let v = json!({ "error": { "kind": kind, "message": message } });
    format!(
        "{}\n",
        serde_json::to_string_pretty(&v).expect("json value")
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            e.exit()
        }
        Err(e) => {
            print!("{}", error_json("usage", e.to_string().trim()));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = match cli.common.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&out.json).expect("json value")
                ),
                Format::Text => format!("{}\n", out.text),
            };
            match emit(Some(&cli.common), body) {
                code if code != ExitCode::SUCCESS => code,
                _ if out.pass => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            }
        }
        Err(e) => {
            let body = match cli.common.format {
                Format::Json => error_json(e.kind(), &e.to_string()),
                Format::Text => format!("error ({}): {e}\n", e.kind()),
            };
            emit(Some(&cli.common), body);
            ExitCode::from(2)
        }
    }
}

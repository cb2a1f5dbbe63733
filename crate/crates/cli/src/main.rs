use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nilgraph::gassmann::{
    extend_two_step_isometry, intertwiner_basis, isometry_residual, orthogonal_intertwiner,
    verify_transplant, GassmannError, LinearMap,
};
use nilgraph::isometry::{search_isometry, SearchConfig};
use nilgraph::lie::{
    central_series, j_operator, three_step, two_step, verify_jacobi, LieError, NilpotentLieAlgebra,
    TAssignment,
};
use nilgraph::schreier::{LabelVerdict, SchreierGraph};
use nilgraph::spec::{parse_spec, parse_t_assignment, ProblemSpec, Subgroup};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "nilgraph",
    version,
    about = "Nilpotent Lie algebras from Schreier graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// problem specification (TOML or JSON)
    #[arg(long)]
    spec: PathBuf,
    /// write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// restrict to one subgroup by name
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Args)]
struct TArg {
    /// `paper` (the spec's assignment), `generic`, or a TOML/JSON file
    #[arg(long = "t-assignment", default_value = "paper")]
    t_assignment: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Schreier graphs
    Graph {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Report which labels are admissible
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Emit the structure constants of the two- or three-step algebra
    Algebra {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        step: u8,
        #[command(flatten)]
        t: TArg,
    },
    /// Check Jacobi, the central series and the j-operators
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        t: TArg,
    },
    /// Almost-conjugacy, intertwiner and two-step isometry for two subgroups
    Gassmann {
        #[command(flatten)]
        common: Common,
    },
    /// Fingerprints and isometry search between the two subgroups' algebras
    Isometry {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
        step: u8,
        #[command(flatten)]
        t: TArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        restarts: Option<usize>,
    },
}

/// Exit code 2: bad input. Exit code 3: an internal consistency check failed.
enum Failure {
    Validation(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Validation(e)
    }
}

fn lie_failure(e: LieError) -> Failure {
    match e {
        LieError::JacobiFailed(_) | LieError::AdjointMismatch(_) | LieError::Invalid(_) => {
            Failure::Internal(e.into())
        }
        _ => Failure::Validation(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("NILGRAPH_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| anyhow!("NILGRAPH_THREADS must be a positive integer, got `{v}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let (common, output) = match &cli.command {
        Command::Graph { common, format } => {
            let spec = load(common)?;
            let graphs = selected(&spec, common)?;
            let text = match format {
                Format::Dot => graphs
                    .iter()
                    .map(|s| s.graph.export_dot())
                    .collect::<String>(),
                Format::Json => pretty(&json!({
                    "graphs": graphs
                        .iter()
                        .map(|s| json!({"subgroup": s.name, "graph": s.graph.to_doc()}))
                        .collect::<Vec<_>>()
                })),
            };
            (common, text)
        }
        Command::Classify { common } => {
            let spec = load(common)?;
            let out: Vec<Value> = selected(&spec, common)?
                .iter()
                .map(|s| json!({"subgroup": s.name, "labels": classify(&s.graph)}))
                .collect();
            (common, pretty(&json!({ "graphs": out })))
        }
        Command::Algebra { common, step, t } => {
            let spec = load(common)?;
            let mut out = Vec::new();
            for s in selected(&spec, common)? {
                let a = build_algebra(&spec, &s.graph, *step, &t.t_assignment)?;
                out.push(json!({"subgroup": s.name, "step": step, "algebra": a.to_doc()}));
            }
            (common, pretty(&json!({ "algebras": out })))
        }
        Command::Verify { common, t } => {
            let spec = load(common)?;
            let mut out = Vec::new();
            for s in selected(&spec, common)? {
                out.push(verify(&spec, s, &t.t_assignment)?);
            }
            (common, pretty(&json!({ "graphs": out })))
        }
        Command::Gassmann { common } => {
            let spec = load(common)?;
            (common, pretty(&gassmann(&spec)?))
        }
        Command::Isometry {
            common,
            step,
            t,
            seed,
            restarts,
        } => {
            let spec = load(common)?;
            let (h1, h2) = pair(&spec)?;
            let a1 = build_algebra(&spec, &h1.graph, *step, &t.t_assignment)?;
            let a2 = build_algebra(&spec, &h2.graph, *step, &t.t_assignment)?;
            let mut cfg = SearchConfig::default().with_overrides(&spec.search);
            if let Some(s) = seed {
                cfg.seed = *s;
            }
            if let Some(r) = restarts {
                if *r == 0 {
                    return Err(anyhow!("--restarts must be positive").into());
                }
                cfg.restarts = *r;
            }
            let result = search_isometry(&a1, &a2, &cfg);
            (
                common,
                pretty(&serde_json::to_value(&result).map_err(anyhow::Error::from)?),
            )
        }
    };
    emit(common.out.as_deref(), &output)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Validation),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(common: &Common) -> anyhow::Result<ProblemSpec> {
    let text = std::fs::read_to_string(&common.spec)
        .with_context(|| format!("reading {}", common.spec.display()))?;
    parse_spec(&text).with_context(|| format!("in {}", common.spec.display()))
}

fn selected<'a>(spec: &'a ProblemSpec, common: &Common) -> anyhow::Result<Vec<&'a Subgroup>> {
    match &common.subgroup {
        None => Ok(spec.subgroups.iter().collect()),
        Some(name) => spec
            .subgroups
            .iter()
            .find(|s| &s.name == name)
            .map(|s| vec![s])
            .ok_or_else(|| anyhow!("no subgroup named `{name}`")),
    }
}

fn pair(spec: &ProblemSpec) -> anyhow::Result<(&Subgroup, &Subgroup)> {
    match spec.subgroups.as_slice() {
        [a, b] => Ok((a, b)),
        other => bail!(
            "this command needs exactly two subgroups, found {}",
            other.len()
        ),
    }
}

fn classify(g: &SchreierGraph) -> Value {
    let names = g.vertex_names();
    g.classify_labels()
        .labels
        .iter()
        .map(|r| match &r.verdict {
            LabelVerdict::Admissible { cycle } => json!({
                "label": r.label,
                "verdict": "admissible",
                "cycle": cycle.iter().map(|&v| &names[v]).collect::<Vec<_>>(),
            }),
            LabelVerdict::Inadmissible { reason } => json!({
                "label": r.label,
                "verdict": "inadmissible",
                "reason": reason,
            }),
        })
        .collect()
}

fn t_assignment(
    spec: &ProblemSpec,
    g: &SchreierGraph,
    choice: &str,
) -> anyhow::Result<TAssignment> {
    match choice {
        "paper" => spec.t_assignment.clone().ok_or_else(|| {
            anyhow!("the spec has no [t_assignment]; use --t-assignment generic or a file")
        }),
        "generic" => Ok(TAssignment::generic(g)),
        path => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            Ok(parse_t_assignment(&text).with_context(|| format!("in {path}"))?)
        }
    }
}

fn build_algebra(
    spec: &ProblemSpec,
    g: &SchreierGraph,
    step: u8,
    choice: &str,
) -> Result<NilpotentLieAlgebra, Failure> {
    if step == 2 {
        return Ok(two_step(g));
    }
    if !g.classify_labels().any_admissible() {
        return Err(lie_failure(LieError::NoAdmissibleLabel));
    }
    let t = t_assignment(spec, g, choice)?;
    three_step(g, &t).map_err(lie_failure)
}

fn check(a: &NilpotentLieAlgebra, g: &SchreierGraph) -> Result<Value, Failure> {
    let jacobi = verify_jacobi(a);
    if !jacobi.passed() {
        return Err(Failure::Internal(anyhow!(
            "Jacobi identity fails on {} triples",
            jacobi.violations.len()
        )));
    }
    for l in 0..g.labels().len() {
        j_operator(a, g, l).map_err(lie_failure)?;
    }
    let series = central_series(a);
    Ok(json!({
        "dim": a.dim(),
        "jacobi": {"triples_checked": jacobi.triples_checked, "violations": 0},
        "descending": series.descending_dims(),
        "ascending": series.ascending_dims(),
        "step": series.step,
        "j_operator": "graph and adjoint agree",
    }))
}

fn verify(spec: &ProblemSpec, s: &Subgroup, choice: &str) -> Result<Value, Failure> {
    let two = check(&two_step(&s.graph), &s.graph)?;
    let three = if s.graph.classify_labels().any_admissible() {
        check(&build_algebra(spec, &s.graph, 3, choice)?, &s.graph)?
    } else {
        json!({"skipped": LieError::NoAdmissibleLabel.to_string()})
    };
    Ok(json!({"subgroup": s.name, "two_step": two, "three_step": three}))
}

fn gassmann_failure(e: GassmannError) -> Failure {
    match e {
        GassmannError::IndexMismatch(..) | GassmannError::LabelMismatch => {
            Failure::Validation(e.into())
        }
        _ => Failure::Internal(e.into()),
    }
}

fn gassmann(spec: &ProblemSpec) -> Result<Value, Failure> {
    let (h1, h2) = pair(spec)?;
    let (almost, classes) = spec
        .group
        .almost_conjugate(&h1.generators, &h2.generators)
        .map_err(anyhow::Error::from)?;
    let basis = intertwiner_basis(&h1.graph, &h2.graph).map_err(gassmann_failure)?;
    let mut out = json!({
        "subgroups": [h1.name, h2.name],
        "almost_conjugate": almost,
        "classes": classes,
        "intertwiner_dim": basis.len(),
    });
    if basis.is_empty() {
        out["intertwiner"] = Value::Null;
        return Ok(out);
    }
    let t = match orthogonal_intertwiner(&basis) {
        Ok(t) => t,
        Err(GassmannError::NoOrthogonalElement) => {
            out["intertwiner"] = Value::Null;
            return Ok(out);
        }
        Err(e) => return Err(gassmann_failure(e)),
    };
    out["intertwiner"] = serde_json::to_value(t.to_doc()).map_err(anyhow::Error::from)?;
    if let LinearMap::Exact(t) = &t {
        let report = verify_transplant(t, &h1.graph, &h2.graph).map_err(gassmann_failure)?;
        if !report.passed() {
            return Err(Failure::Internal(anyhow!(
                "intertwiner fails the transplant check"
            )));
        }
        out["transplant"] = serde_json::to_value(&report).map_err(anyhow::Error::from)?;
        let (a1, a2) = (two_step(&h1.graph), two_step(&h2.graph));
        let ext = extend_two_step_isometry(t, &a1, &a2).map_err(gassmann_failure)?;
        let (_, residual) = isometry_residual(&ext, &a1, &a2).map_err(gassmann_failure)?;
        out["isometry_residual"] = json!(residual.to_text());
    }
    Ok(out)
}

//! `fermi-upb`: construct, verify and transform fermionic product sets.
//!
//! Exit codes: 0 proven or inconclusive-pass, 1 inconclusive (a search came
//! close to a decomposable vector without reaching `--tol-found`), 2 refuted,
//! 3 claim violation, 4 input or domain error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermi_upb::constructions::{
    block_unitary_upb, codim3_not_spanned, compose_3_3_pentagon, dual_fupb, fupb_c4,
    hyperplane_fupb, hyperplane_gfupb_spanning, pad_fupb, paired_state, slater_basis,
    solve_c4_double_root, vandermonde_gfupb, CandidateSet, Claims, Kind, PUBLISHED_D,
};
use fermi_upb::json::{
    candidate_set_to_json, factorization_to_json, nvector_to_json, AnyCandidateSet,
    AnyFactorization, AnyNVector, JsonScalar,
};
use fermi_upb::slater::slater_decomposition;
use fermi_upb::verifier::{
    ces_max_dim, gfupb_min_cardinality, tensor_upb_bounds, verify_candidate,
    SearchConfig, Unextendible, VerificationReport,
};
use fermi_upb::{Scalar, C64, CQ};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Claim(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 4,
            Self::Claim(_) => 3,
        }
    }
}

impl From<fermi_upb::Error> for CliError {
    fn from(e: fermi_upb::Error) -> Self {
        match e {
            fermi_upb::Error::ClaimViolation(_) => Self::Claim(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "fermi-upb", version, about = "Fermionic unextendible product bases")]
struct Cli {
    /// json: one line; pretty: indented
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one of the known sets
    Construct {
        #[arg(value_enum)]
        name: Construction,
        #[command(flatten)]
        params: Params,
    },
    /// Check a candidate set and decide whether it is unextendible
    Verify {
        /// candidate set JSON (stdin if omitted or "-")
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Dual set, Slater decomposition or wedge expansion
    Transform {
        #[arg(value_enum)]
        kind: Transform,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Dimension and cardinality bounds
    Bounds {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// local dimensions of a tensor product, e.g. 3,3
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
    },
    /// Run the small built-in examples end to end
    Demo {
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Construction {
    Slater,
    Vandermonde,
    FupbC4,
    Pad,
    #[value(name = "compose-3-3-pentagon")]
    Compose33Pentagon,
    Hyperplane,
    HyperplaneSpanning,
    Codim3,
    Dual,
    BlockUnitaryUpb,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Transform {
    Dual,
    SlaterDecompose,
    Expand,
}

#[derive(Args, Debug)]
struct Params {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// number of pairs for hyperplane-spanning (default M/2)
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    b: f64,
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long, env = "FERMI_UPB_SEED", default_value_t = 0)]
    seed: u64,
    /// input set for pad and dual (defaults to fupb-c4 and its padding)
    #[arg(long = "in")]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, env = "FERMI_UPB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    tol_found: Option<f64>,
    #[arg(long)]
    tol_clear: Option<f64>,
}

impl SearchArgs {
    fn config(&self) -> CliResult<SearchConfig> {
        let d = SearchConfig::default();
        let cfg = SearchConfig {
            seed: self.seed,
            restarts: self.restarts.unwrap_or(d.restarts),
            tol_found: self.tol_found.unwrap_or(d.tol_found),
            tol_clear: self.tol_clear.unwrap_or(d.tol_clear),
            ..d
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn need(v: Option<usize>, flag: &str) -> CliResult<usize> {
    v.ok_or_else(|| CliError::Input(format!("{flag} is required")))
}

fn read_json(path: Option<&Path>) -> CliResult<Value> {
    let text = match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

fn read_set(path: Option<&Path>) -> CliResult<AnyCandidateSet> {
    Ok(AnyCandidateSet::from_json(&read_json(path)?)?)
}

fn c4_params(b: f64) -> CliResult<fermi_upb::constructions::C4FupbParams> {
    Ok(solve_c4_double_root(b, PUBLISHED_D)?)
}

fn spanning_set<S: JsonScalar>(m: usize, k: usize) -> CliResult<Value> {
    let members = hyperplane_gfupb_spanning::<S>(m, k)?;
    let psi = paired_state::<S>(m, k)?;
    let set = CandidateSet::new(
        m,
        2,
        Kind::Gfupb,
        Claims {
            orthogonal: false,
            independent: false,
        },
        members,
    )?
    .with_metadata("orthogonal_to", nvector_to_json(&psi));
    Ok(candidate_set_to_json(&set))
}

fn construct(name: Construction, p: &Params) -> CliResult<Value> {
    Ok(match name {
        Construction::Slater => {
            candidate_set_to_json(&slater_basis::<CQ>(need(p.n, "--n")?, need(p.m, "--m")?)?)
        }
        Construction::Vandermonde => {
            candidate_set_to_json(&vandermonde_gfupb::<CQ>(need(p.n, "--n")?, need(p.m, "--m")?)?)
        }
        Construction::FupbC4 => candidate_set_to_json(&fupb_c4(&c4_params(p.b)?)?),
        Construction::Pad => match &p.input {
            Some(path) => match read_set(Some(path))? {
                AnyCandidateSet::Float(s) => candidate_set_to_json(&pad_fupb(&s)?),
                AnyCandidateSet::Exact(s) => candidate_set_to_json(&pad_fupb(&s)?),
            },
            None => candidate_set_to_json(&pad_fupb(&fupb_c4(&c4_params(p.b)?)?)?),
        },
        Construction::Dual => match &p.input {
            Some(path) => transform(Transform::Dual, Some(path))?,
            None => candidate_set_to_json(&dual_fupb(&pad_fupb(&fupb_c4(&c4_params(p.b)?)?)?)?),
        },
        Construction::Compose33Pentagon => candidate_set_to_json(&compose_3_3_pentagon()?),
        Construction::Hyperplane => candidate_set_to_json(&hyperplane_fupb(
            need(p.n, "--n")?,
            need(p.m, "--m")?,
            &c4_params(p.b)?,
        )?),
        Construction::HyperplaneSpanning => {
            let m = need(p.m, "--m")?;
            let k = p.k.unwrap_or(m / 2);
            // exact where the Gaussian rationals hold the k-th roots of unity
            if CQ::root_of_unity(k.max(1), 1).is_some() {
                spanning_set::<CQ>(m, k)?
            } else {
                spanning_set::<C64>(m, k)?
            }
        }
        Construction::Codim3 => {
            let c = codim3_not_spanned::<CQ>(need(p.n, "--n")?, need(p.m, "--m")?)?;
            json!({
                "m": c.l.m(),
                "n": c.l.n(),
                "dim": c.l.dim(),
                "codim": c.l.ambient_dim() - c.l.dim(),
                "phi": nvector_to_json(&c.phi),
                "psi": nvector_to_json(&c.psi),
                "l0": c.l0.generators().iter().map(nvector_to_json).collect::<Vec<_>>(),
            })
        }
        Construction::BlockUnitaryUpb => {
            if p.dims.is_empty() {
                return Err(CliError::Input("--dims is required".into()));
            }
            let tuples = block_unitary_upb(&p.dims, p.seed)?;
            let members: Vec<Value> = tuples
                .iter()
                .map(|t| {
                    Value::from(
                        t.iter()
                            .map(|v| Value::from(v.iter().map(JsonScalar::to_json).collect::<Vec<_>>()))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            json!({"dims": p.dims, "seed": p.seed, "members": members})
        }
    })
}

fn report_for(set: &AnyCandidateSet, cfg: &SearchConfig) -> CliResult<VerificationReport> {
    Ok(match set {
        AnyCandidateSet::Float(s) => verify_candidate(s, cfg)?,
        AnyCandidateSet::Exact(s) => verify_candidate(s, cfg)?,
    })
}

fn verdict_code(v: Unextendible) -> u8 {
    match v {
        Unextendible::Proven | Unextendible::InconclusivePass => 0,
        Unextendible::Inconclusive => 1,
        Unextendible::Refuted => 2,
    }
}

fn transform(kind: Transform, input: Option<&Path>) -> CliResult<Value> {
    let v = read_json(input)?;
    Ok(match kind {
        Transform::Dual => match AnyCandidateSet::from_json(&v)? {
            AnyCandidateSet::Float(s) => candidate_set_to_json(&dual_fupb(&s)?),
            AnyCandidateSet::Exact(s) => candidate_set_to_json(&dual_fupb(&s)?),
        },
        Transform::SlaterDecompose => {
            let psi = match AnyNVector::from_json(&v)? {
                AnyNVector::Float(x) => x,
                AnyNVector::Exact(x) => x.map_scalar(Scalar::to_c64),
            };
            let d = slater_decomposition(&psi, 1e-12)?;
            let unitary: Vec<Value> = d
                .unitary
                .iter()
                .map(|r| Value::from(r.iter().map(JsonScalar::to_json).collect::<Vec<_>>()))
                .collect();
            json!({"coeffs": d.coeffs, "unitary": unitary})
        }
        Transform::Expand => match AnyFactorization::from_json(&v)? {
            AnyFactorization::Float(f) => nvector_to_json(&f.wedge_expand()),
            AnyFactorization::Exact(f) => nvector_to_json(&f.wedge_expand()),
        },
    })
}

fn bounds(n: Option<usize>, m: Option<usize>, dims: &[usize]) -> CliResult<Value> {
    let mut out = serde_json::Map::new();
    match (n, m) {
        (Some(n), Some(m)) => {
            out.insert("ces_max_dim".into(), ces_max_dim(n, m)?.into());
            out.insert("gfupb_min".into(), gfupb_min_cardinality(n, m)?.into());
        }
        (None, None) => {}
        _ => return Err(CliError::Input("--n and --m go together".into())),
    }
    if !dims.is_empty() {
        let t = tensor_upb_bounds(dims)?;
        out.insert("L".into(), t.l.into());
        out.insert("D".into(), t.d.into());
        out.insert("f_m".into(), t.f_m.map_or(Value::Null, Value::from));
    }
    if out.is_empty() {
        return Err(CliError::Input("give --n and --m, or --dims".into()));
    }
    Ok(Value::Object(out))
}

fn demo(cfg: &SearchConfig) -> CliResult<Value> {
    let mut minus = slater_basis::<CQ>(2, 4)?;
    minus.members.pop();
    let cases: Vec<(&str, AnyCandidateSet)> = vec![
        ("vandermonde 2,4", AnyCandidateSet::Exact(vandermonde_gfupb(2, 4)?)),
        ("fupb-c4 b=2", AnyCandidateSet::Float(fupb_c4(&c4_params(2.0)?)?)),
        ("slater 2,4 without e34", AnyCandidateSet::Exact(minus)),
        ("hyperplane 3,5", AnyCandidateSet::Float(hyperplane_fupb(3, 5, &c4_params(2.0)?)?)),
    ];
    let mut out = Vec::new();
    for (name, set) in &cases {
        let r = report_for(set, cfg)?;
        let witness = r.search.witness.as_ref().map(factorization_to_json);
        out.push(json!({
            "name": name,
            "cardinality": r.cardinality,
            "complement_dim": r.complement_dim,
            "verdict": r.verdict,
            "witness": witness,
        }));
    }
    Ok(Value::from(out))
}

fn emit(v: &Value, format: Format, out: Option<&Path>) -> CliResult<()> {
    let mut text = match format {
        Format::Json => serde_json::to_string(v),
        Format::Pretty => serde_json::to_string_pretty(v),
    }
    .map_err(|e| CliError::Input(e.to_string()))?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(e.to_string())),
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Construct { name, params } => emit(&construct(*name, params)?, cli.format, out)?,
        Command::Verify { input, search } => {
            let cfg = search.config()?;
            let report = report_for(&read_set(input.as_deref())?, &cfg)?;
            let v = serde_json::to_value(&report).map_err(|e| CliError::Input(e.to_string()))?;
            emit(&v, cli.format, out)?;
            return Ok(verdict_code(report.verdict.unextendible));
        }
        Command::Transform { kind, input } => emit(&transform(*kind, input.as_deref())?, cli.format, out)?,
        Command::Bounds { n, m, dims } => emit(&bounds(*n, *m, dims)?, cli.format, out)?,
        Command::Demo { search } => emit(&demo(&search.config()?)?, cli.format, out)?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

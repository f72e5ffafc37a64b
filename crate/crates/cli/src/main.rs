//! `h2wave`: build, verify, classify and sample H²(ℝ) wavelets from the shell.
//!
//! Results are JSON on stdout (CSV for `sample` and `sweep` unless `--json`).
//! Exit codes: 0 pass, 1 verified failure, 2 usage or parse error.

mod output;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use h2wave_core::characterize::verify_wavelet;
use h2wave_core::constructions::{make_k_r_eps, DEFAULT_DEPTH};
use h2wave_core::io::{read_set, read_wavelet, set_document, wavelet_document, SCHEMA};
use h2wave_core::numeric::GRAM_TOL;
use h2wave_core::tiling::{is_wavelet_set, tau_profile};
use h2wave_core::{
    classify, dilation_equivalent, gram, make_k_r, make_k_rk, make_k_xy, make_psi_0, make_psi_r,
    origin_probe, sample_time, shannon_set, translation_equivalent, Error, PiScalar,
};
use serde::Serialize;
use serde_json::{json, Value};

use output::{emit, read_input, status_of, to_csv, to_json, Failure, Status};
use sweep::Row;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "h2wave",
    version,
    about = "Exact construction and verification of H2(R) wavelets"
)]
struct Cli {
    /// Emit JSON (the default for every command except `sample` and `sweep`)
    #[arg(long, global = true)]
    json: bool,
    /// Write the result here, plus a run manifest next to it
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Build a set or step function from one of the families
    Construct(ConstructArgs),
    /// Check a set for the wavelet-set property, or a step function for the wavelet property
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Set)]
        mode: Mode,
    },
    /// Place a wavelet in its M_r class
    Classify { file: PathBuf },
    /// Test two sets for translation or dilation equivalence
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = FoldArg::Translation)]
        fold: FoldArg,
    },
    /// Time-domain samples of the inverse transform
    #[command(allow_negative_numbers = true)]
    Sample {
        file: PathBuf,
        #[arg(long, default_value_t = -20.0)]
        from: f64,
        #[arg(long, default_value_t = 20.0)]
        to: f64,
        #[arg(long, default_value_t = 401, value_parser = clap::value_parser!(u32).range(1..))]
        points: u32,
    },
    /// Gram matrix of the dilated and translated system
    #[command(allow_negative_numbers = true)]
    Gram {
        file: PathBuf,
        #[arg(long, default_value_t = -2)]
        j_min: i64,
        #[arg(long, default_value_t = 2)]
        j_max: i64,
        #[arg(long, default_value_t = -3)]
        k_min: i64,
        #[arg(long, default_value_t = 3)]
        k_max: i64,
    },
    /// Does the set meet (0, delta) for each delta?
    Probe {
        file: PathBuf,
        /// Comma-separated coefficients of pi, e.g. 1/2,1/4,1/8
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<PiScalar>,
    },
    /// Evaluate a family over a parameter grid (CSV)
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Set,
    Wavelet,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FoldArg {
    Translation,
    Dilation,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    Krk,
    Kr,
    Kxy,
    Kreps,
    Shannon,
    Psir,
    Psi0,
}

/// Parameters are coefficients of pi: `--x 3/2` means 3pi/2.
#[derive(Debug, Args, Serialize)]
struct ConstructArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long)]
    x: Option<PiScalar>,
    #[arg(long)]
    y: Option<PiScalar>,
    #[arg(long)]
    eps: Option<PiScalar>,
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum SweepFamily {
    Krk,
    Kxy,
    Kreps,
    Interval,
}

#[derive(Debug, Args, Serialize)]
struct SweepArgs {
    #[arg(value_enum)]
    family: SweepFamily,
    /// krk: smallest r
    #[arg(long, default_value_t = 1)]
    r_min: u32,
    /// krk: largest r
    #[arg(long, default_value_t = 6)]
    r_max: u32,
    /// kxy: grid resolution per axis
    #[arg(long, default_value_t = 20, allow_negative_numbers = true)]
    n: i64,
    /// kreps: r
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// kreps: epsilon as a coefficient of pi
    #[arg(long, default_value = "1/4")]
    eps: PiScalar,
    /// kreps: largest truncation depth
    #[arg(long, default_value_t = 12)]
    depth_max: usize,
    /// interval: number of random intervals
    #[arg(long, default_value_t = 50)]
    count: usize,
}

fn require<T: Clone>(v: &Option<T>, name: &str, family: Family) -> Result<T, Failure> {
    v.clone().ok_or_else(|| {
        Failure::usage(
            "missing_parameter",
            format!("family {family:?} needs --{name}").to_lowercase(),
        )
    })
}

fn construct(a: &ConstructArgs) -> Result<(Value, Status), Failure> {
    let doc = match a.family {
        Family::Krk => set_document(&make_k_rk(
            require(&a.r, "r", a.family)?,
            require(&a.k, "k", a.family)?,
        )?),
        Family::Kr => set_document(&make_k_r(require(&a.r, "r", a.family)?)?.set),
        Family::Kxy => set_document(&make_k_xy(
            &require(&a.x, "x", a.family)?,
            &require(&a.y, "y", a.family)?,
        )?),
        Family::Shannon => set_document(&shannon_set()),
        Family::Psir => wavelet_document(&make_psi_r(require(&a.r, "r", a.family)?)?),
        Family::Psi0 => wavelet_document(&make_psi_0(
            &require(&a.x, "x", a.family)?,
            &require(&a.y, "y", a.family)?,
        )?),
        Family::Kreps => {
            let r = require(&a.r, "r", a.family)?;
            let eps = require(&a.eps, "eps", a.family)?;
            let b = make_k_r_eps(r, &eps, a.depth)?;
            let check = is_wavelet_set(&b.set)?;
            let mut doc = set_document(&b.set);
            doc["certificate"] = json!({
                "r": r,
                "eps": eps,
                "depth": a.depth,
                "tail_defect": b.tail_defect,
                "translation": check.translation,
                "dilation": check.dilation,
                "e_intervals": b.e_intervals,
                "f_intervals": b.f_intervals,
            });
            doc
        }
    };
    Ok((doc, Status::Pass))
}

fn verify(file: &Path, mode: Mode) -> Result<(Value, Status), Failure> {
    let text = read_input(file)?;
    match mode {
        Mode::Set => {
            let s = read_set(&text)?;
            match is_wavelet_set(&s) {
                Ok(c) => Ok((
                    json!({
                        "schema": SCHEMA,
                        "kind": "set_verdict",
                        "passed": c.is_wavelet_set,
                        "translation": c.translation,
                        "dilation": c.dilation,
                    }),
                    status_of(c.is_wavelet_set),
                )),
                Err(e @ Error::NonPositiveSupport(_)) => Ok((
                    json!({
                        "schema": SCHEMA,
                        "kind": "set_verdict",
                        "passed": false,
                        "translation": tau_profile(&s).report(),
                        "dilation": null,
                        "reason": e.to_string(),
                    }),
                    Status::Fail,
                )),
                Err(e) => Err(e.into()),
            }
        }
        Mode::Wavelet => {
            let f = read_wavelet(&text)?;
            match verify_wavelet(&f) {
                Ok(v) => {
                    let passed = v.passed;
                    let mut doc = serde_json::to_value(&v).expect("verdict serializes");
                    doc["schema"] = json!(SCHEMA);
                    doc["kind"] = json!("wavelet_verdict");
                    Ok((doc, status_of(passed)))
                }
                Err(e @ Error::NonPositiveSupport(_)) => Ok((
                    json!({ "schema": SCHEMA, "kind": "wavelet_verdict", "passed": false, "reason": e.to_string() }),
                    Status::Fail,
                )),
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn classify_cmd(file: &Path) -> Result<(Value, Status), Failure> {
    let f = read_wavelet(&read_input(file)?)?;
    match classify(&f) {
        Ok(c) => Ok((
            json!({ "schema": SCHEMA, "kind": "classification", "label": c.to_string(), "class": c }),
            Status::Pass,
        )),
        Err(e @ (Error::NotAWavelet(_) | Error::Unclassifiable | Error::NonPositiveSupport(_))) => {
            Ok((
                json!({ "schema": SCHEMA, "kind": "classification", "label": null, "reason": e.to_string() }),
                Status::Fail,
            ))
        }
        Err(e) => Err(e.into()),
    }
}

fn equiv(a: &Path, b: &Path, fold: FoldArg) -> Result<(Value, Status), Failure> {
    let sa = read_set(&read_input(a)?)?;
    let sb = read_set(&read_input(b)?)?;
    let witness = match fold {
        FoldArg::Translation => translation_equivalent(&sa, &sb),
        FoldArg::Dilation => dilation_equivalent(&sa, &sb)?,
    };
    let equivalent = witness.is_some();
    Ok((
        json!({ "schema": SCHEMA, "kind": "equivalence", "fold": fold, "equivalent": equivalent, "witness": witness }),
        status_of(equivalent),
    ))
}

fn sample(
    cli: &Cli,
    file: &Path,
    from: f64,
    to: f64,
    points: u32,
) -> Result<(String, Status), Failure> {
    if !(from.is_finite() && to.is_finite()) || from > to {
        return Err(Failure::usage(
            "grid",
            format!("need finite from <= to, got {from}..{to}"),
        ));
    }
    let f = read_wavelet(&read_input(file)?)?;
    let xs: Vec<f64> = if points == 1 {
        vec![from]
    } else {
        let h = (to - from) / f64::from(points - 1);
        (0..points).map(|i| from + h * f64::from(i)).collect()
    };
    let samples = sample_time(&f, &xs);
    let body = if cli.json {
        to_json(&json!({ "schema": SCHEMA, "kind": "samples", "samples": samples }))
    } else {
        to_csv(
            &["x", "re", "im"],
            samples
                .iter()
                .map(|s| vec![s.x.to_string(), s.re.to_string(), s.im.to_string()]),
        )?
    };
    Ok((body, Status::Pass))
}

fn gram_cmd(file: &Path, j: (i64, i64), k: (i64, i64)) -> Result<(Value, Status), Failure> {
    if j.0 > j.1 || k.0 > k.1 {
        return Err(Failure::usage("grid", "empty index range"));
    }
    let f = read_wavelet(&read_input(file)?)?;
    let report = gram(&f, j.0..=j.1, k.0..=k.1);
    let ok = report.max_deviation() < GRAM_TOL;
    Ok((
        json!({
            "schema": SCHEMA,
            "kind": "gram",
            "tolerance": GRAM_TOL,
            "max_deviation": report.max_deviation(),
            "orthonormal": ok,
            "report": report,
        }),
        status_of(ok),
    ))
}

fn probe(file: &Path, deltas: &[PiScalar]) -> Result<(Value, Status), Failure> {
    if let Some(d) = deltas.iter().find(|d| !d.is_positive()) {
        return Err(Failure::usage(
            "parameter_range",
            format!("delta must be positive, got {d}"),
        ));
    }
    let s = read_set(&read_input(file)?)?;
    let results: Vec<Value> = origin_probe(&s, deltas)
        .into_iter()
        .map(|(delta, hit)| json!({ "delta": delta, "hit": hit }))
        .collect();
    Ok((
        json!({ "schema": SCHEMA, "kind": "origin_probe", "results": results }),
        Status::Pass,
    ))
}

fn render_rows<R: Row>(
    cli: &Cli,
    header: Vec<&'static str>,
    rows: Vec<R>,
) -> Result<String, Failure> {
    if cli.json {
        Ok(to_json(
            &json!({ "schema": SCHEMA, "kind": "sweep", "rows": rows }),
        ))
    } else {
        to_csv(&header, rows.iter().map(Row::record))
    }
}

fn sweep_cmd(cli: &Cli, a: &SweepArgs) -> Result<(String, Status), Failure> {
    let body = match a.family {
        SweepFamily::Krk => {
            let (h, rows) = sweep::krk(a.r_min, a.r_max)?;
            render_rows(cli, h, rows)?
        }
        SweepFamily::Kxy => {
            let (h, rows) = sweep::kxy(a.n)?;
            render_rows(cli, h, rows)?
        }
        SweepFamily::Kreps => {
            let (h, rows) = sweep::kreps(a.r, &a.eps, a.depth_max)?;
            render_rows(cli, h, rows)?
        }
        SweepFamily::Interval => {
            let (h, rows) = sweep::interval(a.count, cli.seed)?;
            render_rows(cli, h, rows)?
        }
    };
    Ok((body, Status::Pass))
}

fn run(cli: &Cli) -> Result<Status, Failure> {
    let json_result = |r: Result<(Value, Status), Failure>| r.map(|(v, s)| (to_json(&v), s));
    let (body, status) = match &cli.command {
        Command::Construct(a) => json_result(construct(a))?,
        Command::Verify { file, mode } => json_result(verify(file, *mode))?,
        Command::Classify { file } => json_result(classify_cmd(file))?,
        Command::Equiv { a, b, fold } => json_result(equiv(a, b, *fold))?,
        Command::Sample {
            file,
            from,
            to,
            points,
        } => sample(cli, file, *from, *to, *points)?,
        Command::Gram {
            file,
            j_min,
            j_max,
            k_min,
            k_max,
        } => json_result(gram_cmd(file, (*j_min, *j_max), (*k_min, *k_max)))?,
        Command::Probe { file, deltas } => json_result(probe(file, deltas))?,
        Command::Sweep(a) => sweep_cmd(cli, a)?,
    };
    let (name, params) = command_params(cli);
    emit(&body, cli.out.as_deref(), &name, params)?;
    Ok(status)
}

/// Subcommand name and its arguments, plus the global flags that affect output.
fn command_params(cli: &Cli) -> (String, Value) {
    let v = serde_json::to_value(&cli.command).expect("arguments serialize");
    let (name, mut params) = match v {
        Value::Object(m) => m.into_iter().next().expect("one subcommand"),
        other => (other.as_str().unwrap_or_default().to_string(), json!({})),
    };
    params["json"] = json!(cli.json);
    params["seed"] = json!(cli.seed);
    (name, params)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => status.into(),
        Err(f) => {
            f.report();
            f.status.into()
        }
    }
}

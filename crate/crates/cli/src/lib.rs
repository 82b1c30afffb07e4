//! `uwcam` command line.
//!
//! Exit codes: 0 success, 1 infeasible scenario, 2 input or parse error.
//! Machine output goes to stdout and diagnostics to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use uwcam_core::diagnostics::{has_errors, Diagnostic};
use uwcam_core::engine::{evaluate, sweep, Metric, SweepAxis, SweepSpec};
use uwcam_core::presets::{data_dir_from_env, load_catalog, validate_profile, Catalog, ProfileKind};
use uwcam_core::report;
use uwcam_core::scenario::{load_scenario, parse_scenario, resolve, ScenarioDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "uwcam", version, about = "Underwater camera design engine")]
pub struct Cli {
    /// Preset directory; defaults to $UWCAM_DATA_DIR or ./data.
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a scenario and print the report.
    Evaluate {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// With `--format csv`, print the stage spectra instead of the summary.
        #[arg(long)]
        stage_spectra: bool,
    },
    /// Sweep one or two scenario parameters.
    Sweep(SweepArgs),
    /// Print the spectrum at each pipeline stage.
    Spectrum {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// List the preset catalog.
    Presets {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a scenario or a profile file and report diagnostics.
    Validate {
        #[arg(long, conflicts_with = "profile", required_unless_present = "profile")]
        scenario: Option<PathBuf>,
        /// Profile file named `<kind>.<name>.csv` or `sensor.<name>.profile`.
        #[arg(long)]
        profile: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Dotted path of the first swept parameter, e.g. `lens.aperture_number`.
    #[arg(long)]
    pub param: String,
    #[arg(long)]
    pub param2: Option<String>,
    /// `start:stop:step`, once per swept parameter.
    #[arg(long = "range", required = true)]
    pub ranges: Vec<String>,
    /// Comma-separated metric names.
    #[arg(long, value_delimiter = ',', default_value = "response_dn")]
    pub metric: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(diags) => {
            report_diagnostics(err, &diags);
            EXIT_INPUT
        }
    }
}

fn report_diagnostics(err: &mut dyn Write, diags: &[Diagnostic]) {
    for d in diags {
        let _ = writeln!(err, "{d}");
    }
}

fn read(path: &Path) -> Result<String, Vec<Diagnostic>> {
    std::fs::read_to_string(path)
        .map_err(|e| vec![Diagnostic::error("io-error", e.to_string()).in_source(path.display().to_string())])
}

fn catalog(cli: &Cli, err: &mut dyn Write) -> Result<Catalog, Vec<Diagnostic>> {
    let dir = cli.data_dir.clone().unwrap_or_else(data_dir_from_env);
    let cat = load_catalog(&dir).map_err(|e| vec![Diagnostic::error("data-dir", e.to_string())])?;
    let problems: Vec<Diagnostic> = cat.diagnostics().iter().filter(|d| d.is_error()).cloned().collect();
    report_diagnostics(err, &problems);
    Ok(cat)
}

fn scenario_doc(path: &Path) -> Result<ScenarioDoc, Vec<Diagnostic>> {
    let text = read(path)?;
    parse_scenario(&text).map_err(|ds| tag(ds, path))
}

fn tag(diags: Vec<Diagnostic>, path: &Path) -> Vec<Diagnostic> {
    diags
        .into_iter()
        .map(|d| {
            if d.source.is_none() {
                d.in_source(path.display().to_string())
            } else {
                d
            }
        })
        .collect()
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Vec<Diagnostic>> {
    let io = |e: std::io::Error| vec![Diagnostic::error("io-error", e.to_string())];
    match &cli.command {
        Command::Evaluate {
            scenario,
            format,
            stage_spectra,
        } => {
            let cat = catalog(cli, err)?;
            let doc = scenario_doc(scenario)?;
            let sc = resolve(&doc, &cat).map_err(|ds| tag(ds, scenario))?;
            let r = evaluate(&sc).map_err(|e| vec![e.to_diagnostic()])?;
            let text = match (format, stage_spectra) {
                (Format::Json, _) => report::to_json_string(&report::evaluation_document(doc.name.as_deref(), &r)),
                (Format::Csv, false) => report::evaluation_csv(&r),
                (Format::Csv, true) => report::stage_spectra_csv(&r),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            report_diagnostics(err, &r.warnings);
            for v in &r.constraints.violations {
                let _ = writeln!(err, "infeasible[{}]: {}", v.code, v.message);
            }
            Ok(if r.feasible() { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Sweep(args) => {
            let cat = catalog(cli, err)?;
            let doc = scenario_doc(&args.scenario)?;
            let spec = sweep_spec(args)?;
            let table = sweep(&doc, &cat, &spec)?;
            let text = match args.format {
                Format::Csv => report::sweep_csv(&table),
                Format::Json => report::to_json_string(&report::sweep_document(&table)),
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Spectrum { scenario, format } => {
            let cat = catalog(cli, err)?;
            let text = read(scenario)?;
            let (doc, sc) = load_scenario(&text, &cat).map_err(|ds| tag(ds, scenario))?;
            let r = evaluate(&sc).map_err(|e| vec![e.to_diagnostic()])?;
            let body = match format {
                Format::Csv => report::stage_spectra_csv(&r),
                Format::Json => {
                    let full = report::evaluation_document(doc.name.as_deref(), &r);
                    report::to_json_string(&serde_json::json!({
                        "schema_version": full["schema_version"],
                        "kind": "stage-spectra",
                        "stage_spectra": full["stage_spectra"],
                    }))
                }
            };
            out.write_all(body.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Presets { format } => {
            let dir = cli.data_dir.clone().unwrap_or_else(data_dir_from_env);
            let cat = load_catalog(&dir).map_err(|e| vec![Diagnostic::error("data-dir", e.to_string())])?;
            report_diagnostics(err, cat.diagnostics());
            let body = match format {
                Format::Json => report::to_json_string(&report::presets_document(&cat)),
                Format::Csv => {
                    let mut s = String::from("kind,name,source\n");
                    for p in cat.listing() {
                        s.push_str(&format!("{},{},{}\n", p.kind, p.name, p.source));
                    }
                    s
                }
            };
            out.write_all(body.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Validate { scenario, profile } => {
            let diags = match (scenario, profile) {
                (Some(path), _) => {
                    let cat = catalog(cli, err)?;
                    match read(path).and_then(|t| load_scenario(&t, &cat)) {
                        Ok(_) => Vec::new(),
                        Err(ds) => tag(ds, path),
                    }
                }
                (None, Some(path)) => validate_profile_file(cli, path)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let body = report::to_json_string(&report::diagnostics_document(&diags));
            out.write_all(body.as_bytes()).map_err(io)?;
            report_diagnostics(err, &diags);
            Ok(if has_errors(&diags) { EXIT_INPUT } else { EXIT_OK })
        }
    }
}

fn validate_profile_file(cli: &Cli, path: &Path) -> Result<Vec<Diagnostic>, Vec<Diagnostic>> {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let kind = file.split('.').next().and_then(ProfileKind::parse).ok_or_else(|| {
        vec![Diagnostic::error(
            "unknown-kind",
            "profile file names start with water., light., material., lens., qe. or sensor.",
        )
        .in_source(file.clone())]
    })?;
    let bytes =
        std::fs::read(path).map_err(|e| vec![Diagnostic::error("io-error", e.to_string()).in_source(file.clone())])?;
    // Sensor profiles resolve their QE file next to them first, then in the catalog.
    let dir = cli.data_dir.clone().unwrap_or_else(data_dir_from_env);
    let cat = load_catalog(&dir).unwrap_or_default();
    let sibling = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let lookup = |qe: &str| {
        std::fs::read(sibling.join(qe))
            .ok()
            .and_then(|b| validate_profile(ProfileKind::Qe, &b, &|_| None).ok())
            .and_then(|v| match v.profile {
                uwcam_core::presets::Profile::Qe(s) => Some(s),
                _ => None,
            })
            .or_else(|| cat.qe_file(qe))
    };
    Ok(match validate_profile(kind, &bytes, &lookup) {
        Ok(v) => v.diagnostics,
        Err(ds) => ds,
    }
    .into_iter()
    .map(|d| d.in_source(file.clone()))
    .collect())
}

fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec, Vec<Diagnostic>> {
    let mut params = vec![args.param.as_str()];
    params.extend(args.param2.as_deref());
    if args.ranges.len() != params.len() {
        return Err(vec![Diagnostic::error(
            "invalid-sweep",
            format!(
                "{} parameter(s) but {} --range value(s)",
                params.len(),
                args.ranges.len()
            ),
        )]);
    }
    let mut errors = Vec::new();
    let axes: Vec<SweepAxis> = params
        .iter()
        .zip(&args.ranges)
        .filter_map(|(p, r)| SweepAxis::parse_range(p, r).map_err(|d| errors.push(d)).ok())
        .collect();
    let metrics: Vec<Metric> = args
        .metric
        .iter()
        .filter_map(|m| {
            Metric::parse(m.trim())
                .ok_or_else(|| {
                    let known: Vec<&str> = Metric::ALL.iter().map(|m| m.name()).collect();
                    errors.push(Diagnostic::error(
                        "unknown-metric",
                        format!("unknown metric `{m}`; known: {}", known.join(", ")),
                    ))
                })
                .ok()
        })
        .collect();
    if errors.is_empty() {
        Ok(SweepSpec { axes, metrics })
    } else {
        Err(errors)
    }
}

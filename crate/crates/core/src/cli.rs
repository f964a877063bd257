//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{angles_with_orbit_bounds, orbit, Angle};
use crate::critportrait::{hat_closure, partition, quadratic_portrait};
use crate::entropy::{core_entropy, hdim_growth, pair_graph, spectral_radius};
use crate::error::{Error, Result};
use crate::itinerary::{lamination_with_model, BoundaryRule, LandingModel};
use crate::portrait::{key_inequality_audit, load_orbits};
use crate::quadratic::{audit_characteristic_arc, characteristic_arc, monotonicity_check};
use crate::svg;

#[derive(Debug, Parser)]
#[command(
    name = "laminations",
    version,
    about = "Exact combinatorics of external rays"
)]
pub struct Cli {
    /// Worker threads for sweeps.
    #[arg(long, env = "LAMINATIONS_WORKERS", global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical portrait and partition, from a parameter angle or explicit classes.
    Partition {
        #[arg(long, conflicts_with_all = ["degree", "classes"])]
        theta: Option<Angle>,
        #[arg(long, requires = "classes")]
        degree: Option<u32>,
        /// Comma-separated angles of one class; repeat for each class.
        #[arg(long = "class")]
        classes: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Itinerary of an angle in the partition of a quadratic parameter.
    Itinerary {
        angle: Angle,
        #[arg(long)]
        theta: Angle,
        #[arg(long)]
        rule: Option<BoundaryRule>,
    },
    /// Decide whether two rays land together.
    Equiv {
        a: Angle,
        b: Angle,
        #[arg(long)]
        theta: Angle,
        #[arg(long)]
        rule: Option<BoundaryRule>,
    },
    /// Landing classes up to an orbit bound.
    Lamination {
        #[arg(long)]
        theta: Angle,
        #[arg(long, default_value_t = 3)]
        period: usize,
        #[arg(long, default_value_t = 1)]
        preperiod: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Core entropy.
    Entropy {
        #[arg(long)]
        theta: Angle,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Dump the pair graph here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Characteristic arc.
    CharArc {
        #[arg(long)]
        theta: Angle,
    },
    /// Check biaccessible inclusion and entropy order for a precedes-pair.
    Monotone {
        #[arg(long)]
        from: Angle,
        #[arg(long)]
        to: Angle,
        #[arg(long, default_value_t = 10)]
        period: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Entropy and dimension estimate for every angle up to an orbit bound.
    Sweep {
        #[arg(long, default_value_t = 4)]
        period: usize,
        #[arg(long, default_value_t = 0)]
        preperiod: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Audits of the characteristic arc and of the valence inequality.
    #[command(subcommand)]
    Audit(AuditCommand),
}

#[derive(Debug, Subcommand)]
pub enum AuditCommand {
    Characteristic {
        #[arg(long)]
        theta: Angle,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    KeyInequality {
        /// Portrait orbit file.
        #[arg(long)]
        orbits: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        epsilon: BigRational,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
    Csv,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub thetas: Vec<Angle>,
    pub max_period: Option<usize>,
    pub max_preperiod: Option<usize>,
    pub tol: Option<f64>,
    pub outputs: Vec<(PathBuf, Format)>,
    pub workers: usize,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let mut cfg = RunConfig {
            command: "",
            thetas: Vec::new(),
            max_period: None,
            max_preperiod: None,
            tol: None,
            outputs: Vec::new(),
            workers: cli.workers.unwrap_or_else(rayon::current_num_threads),
        };
        let mut out = |p: &Option<PathBuf>, f| {
            if let Some(p) = p {
                cfg.outputs.push((p.clone(), f));
            }
        };
        let (command, thetas, period, preperiod, tol) = match &cli.command {
            Command::Partition {
                theta, json, svg, ..
            } => {
                out(json, Format::Json);
                out(svg, Format::Svg);
                (
                    "partition",
                    theta.iter().cloned().collect(),
                    None,
                    None,
                    None,
                )
            }
            Command::Itinerary { angle, theta, .. } => (
                "itinerary",
                vec![angle.clone(), theta.clone()],
                None,
                None,
                None,
            ),
            Command::Equiv { a, b, theta, .. } => (
                "equiv",
                vec![a.clone(), b.clone(), theta.clone()],
                None,
                None,
                None,
            ),
            Command::Lamination {
                theta,
                period,
                preperiod,
                json,
                svg,
            } => {
                out(json, Format::Json);
                out(svg, Format::Svg);
                (
                    "lamination",
                    vec![theta.clone()],
                    Some(*period),
                    Some(*preperiod),
                    None,
                )
            }
            Command::Entropy { theta, tol, json } => {
                out(json, Format::Json);
                ("entropy", vec![theta.clone()], None, None, Some(*tol))
            }
            Command::CharArc { theta } => ("char-arc", vec![theta.clone()], None, None, None),
            Command::Monotone {
                from,
                to,
                period,
                tol,
                json,
            } => {
                out(json, Format::Json);
                (
                    "monotone",
                    vec![from.clone(), to.clone()],
                    Some(*period),
                    None,
                    Some(*tol),
                )
            }
            Command::Sweep {
                period,
                preperiod,
                tol,
                csv,
                ..
            } => {
                out(csv, Format::Csv);
                (
                    "sweep",
                    Vec::new(),
                    Some(*period),
                    Some(*preperiod),
                    Some(*tol),
                )
            }
            Command::Audit(AuditCommand::Characteristic { theta, json }) => {
                out(json, Format::Json);
                (
                    "audit characteristic",
                    vec![theta.clone()],
                    None,
                    None,
                    None,
                )
            }
            Command::Audit(AuditCommand::KeyInequality { json, .. }) => {
                out(json, Format::Json);
                ("audit key-inequality", Vec::new(), None, None, None)
            }
        };
        cfg.command = command;
        cfg.thetas = thetas;
        cfg.max_period = period;
        cfg.max_preperiod = preperiod;
        cfg.tol = tol;
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_period == Some(0) {
            return Err(Error::Config("period bound must be at least 1".into()));
        }
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Error::Config("tolerance must be positive".into()));
            }
        }
        if self.workers == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        for (path, format) in &self.outputs {
            let allowed = match format {
                Format::Json => {
                    !matches!(self.command, "sweep" | "char-arc" | "itinerary" | "equiv")
                }
                Format::Svg => matches!(self.command, "partition" | "lamination"),
                Format::Csv => self.command == "sweep",
            };
            if !allowed {
                return Err(Error::Config(format!(
                    "{format:?} output {} is not available for {}",
                    path.display(),
                    self.command
                )));
            }
        }
        Ok(())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// JSON goes to `path` when given, otherwise to `out`.
fn emit_json(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_file(p, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn model_for(theta: &Angle, rule: Option<BoundaryRule>) -> LandingModel {
    match rule {
        Some(r) => LandingModel::with_rule(theta, r),
        None => LandingModel::new(theta),
    }
}

/// Runs a parsed command. `Ok(false)` means a requested check failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let cfg = RunConfig::from_cli(cli);
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    dispatch(&cli.command, out, &pool)
}

fn dispatch(command: &Command, out: &mut dyn Write, pool: &rayon::ThreadPool) -> Result<bool> {
    match command {
        Command::Partition {
            theta,
            degree,
            classes,
            json: json_path,
            svg: svg_path,
        } => {
            let cp = match (theta, degree) {
                (Some(t), _) => quadratic_portrait(t),
                (None, Some(d)) => {
                    let raw = classes
                        .iter()
                        .map(|c| {
                            c.split(',')
                                .map(|s| s.trim().parse())
                                .collect::<Result<Vec<Angle>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    hat_closure(&raw, *d)?
                }
                (None, None) => {
                    return Err(Error::Config(
                        "give --theta or --degree with --class".into(),
                    ))
                }
            };
            let p = partition(&cp)?;
            let text = json(&serde_json::json!({ "portrait": cp, "partition": p }))?;
            emit_json(out, json_path, &text)?;
            if let Some(path) = svg_path {
                write_file(path, &svg::critical_diagram(&cp, &p))?;
            }
            Ok(true)
        }
        Command::Itinerary { angle, theta, rule } => {
            let model = model_for(theta, *rule);
            writeln!(
                out,
                "{angle}: {} (rule {})",
                model.itinerary(angle),
                model.rule()
            )?;
            Ok(true)
        }
        Command::Equiv { a, b, theta, rule } => {
            let model = model_for(theta, *rule);
            match model.itinerary(a).first_split(&model.itinerary(b)) {
                None => {
                    writeln!(out, "equivalent")?;
                    Ok(true)
                }
                Some(n) => {
                    writeln!(out, "distinct, first split at index {n}")?;
                    Ok(false)
                }
            }
        }
        Command::Lamination {
            theta,
            period,
            preperiod,
            json: json_path,
            svg: svg_path,
        } => {
            let lam = lamination_with_model(&LandingModel::new(theta), *period, *preperiod)?;
            writeln!(
                out,
                "theta_c {theta}, rule {}, {} angles, {} classes",
                lam.rule(),
                lam.angle_count(),
                lam.classes().len()
            )?;
            for class in lam.nontrivial() {
                let names: Vec<String> = class.iter().map(ToString::to_string).collect();
                writeln!(out, "{{{}}}", names.join(", "))?;
            }
            if let Some(path) = json_path {
                write_file(path, &(lam.to_json()? + "\n"))?;
            }
            if let Some(path) = svg_path {
                write_file(path, &svg::lamination_diagram(&lam))?;
            }
            Ok(true)
        }
        Command::Entropy {
            theta,
            tol,
            json: json_path,
        } => {
            let g = pair_graph(theta);
            let rho = spectral_radius(&g, *tol)?;
            let h = rho.value().max(1.0).ln();
            writeln!(out, "h({theta}) = {h:.12} (tol {tol:e})")?;
            if let Some(path) = json_path {
                write_file(path, &(g.to_json()? + "\n"))?;
            }
            Ok(true)
        }
        Command::CharArc { theta } => {
            let ch = characteristic_arc(theta);
            let kind = serde_json::to_value(ch.kind)?;
            writeln!(
                out,
                "{theta}: {} {}, length {}",
                kind.as_str().unwrap_or(""),
                ch.arc,
                ch.length()
            )?;
            Ok(true)
        }
        Command::Monotone {
            from,
            to,
            period,
            tol,
            json: json_path,
        } => {
            let report = monotonicity_check(from, to, *period, *tol)?;
            writeln!(
                out,
                "acc({from}) = {}, acc({to}) = {}, missing {}",
                report.acc_from,
                report.acc_to,
                report.missing.len()
            )?;
            writeln!(
                out,
                "h({from}) = {:.12}, h({to}) = {:.12} (tol {tol:e})",
                report.entropy_from, report.entropy_to
            )?;
            let pass = report.pass();
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
            if let Some(path) = json_path {
                write_file(path, &json(&report)?)?;
            }
            Ok(pass)
        }
        Command::Sweep {
            period,
            preperiod,
            n_max,
            tol,
            csv: csv_path,
        } => {
            let thetas = angles_with_orbit_bounds(2, *period, *preperiod)?;
            let rows = pool.install(|| {
                thetas
                    .par_iter()
                    .map(|t| {
                        let o = orbit(t, 2)?;
                        let h = core_entropy(t, *tol)?;
                        let dim = match hdim_growth(t, *n_max) {
                            Ok(fit) => fit.dimension,
                            Err(Error::Degenerate(_)) => 0.0,
                            Err(e) => return Err(e),
                        };
                        Ok((
                            t.to_string(),
                            o.preperiod,
                            o.period,
                            format!("{h:.12}"),
                            format!("{dim:.6}"),
                        ))
                    })
                    .collect::<Result<Vec<_>>>()
            })?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["theta", "preperiod", "period", "entropy", "dim_estimate"])?;
            for row in rows {
                writer.serialize(row)?;
            }
            let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            match csv_path {
                Some(p) => std::fs::write(p, bytes)?,
                None => out.write_all(&bytes)?,
            }
            Ok(true)
        }
        Command::Audit(AuditCommand::Characteristic {
            theta,
            json: json_path,
        }) => {
            let audit = audit_characteristic_arc(theta)?;
            writeln!(out, "{theta}: I_c = {}, length {}", audit.arc, audit.length)?;
            if let Some(short) = audit.shorter_than_half {
                writeln!(out, "length below 1/2: {short}")?;
            }
            writeln!(
                out,
                "preimage arcs {} and {}, halve exactly: {}",
                audit.preimages.0, audit.preimages.1, audit.halves_exact
            )?;
            for pair in &audit.pairs {
                writeln!(out, "{} ~ {}: {}", pair.left, pair.right, pair.equivalent)?;
            }
            let pass = audit.pass();
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
            if let Some(path) = json_path {
                write_file(path, &json(&audit)?)?;
            }
            Ok(pass)
        }
        Command::Audit(AuditCommand::KeyInequality {
            orbits,
            degree,
            epsilon,
            json: json_path,
        }) => {
            let report = key_inequality_audit(&load_orbits(orbits)?, *degree, epsilon)?;
            emit_json(out, json_path, &json(&report)?)?;
            Ok(report.consistent())
        }
    }
}

/// Parses and runs, writing to `out`. Returns the process exit code.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return e.exit_code();
        }
    };
    match run(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = run_args(args, &mut lock, &mut std::io::stderr());
    let _ = lock.flush();
    code
}

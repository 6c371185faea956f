//! `bethe-green`: exact Green tables, path counts, energy profiles, regime
//! reports and the verification suite from the command line.

mod output;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bethe_green::asymptotics::energy::{EXACT_LIMIT, FLOAT_LIMIT};
use bethe_green::asymptotics::regime::nearest_admissible;
use bethe_green::asymptotics::{energy_profile, regime_report, Profile};
use bethe_green::combinatorics::{build_gamma, float_layer, ExactRecurrence, Mode};
use bethe_green::verify::{all_criteria, exact_checks, Check, Tolerances};
use bethe_green::Orientation;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "bethe-green", version, about = "Green function of the wave operator on the binary Bethe lattice")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format. Defaults to csv, except json for `asym`. svg is only
    /// available for `profile` and `asym`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Cross-oracle equality and exact invariants up to `--kmax`.
    Exact,
    /// The ten acceptance criteria at their pinned tolerances.
    Asymptotic,
    /// Both of the above.
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Table of G_j(k, d) for d ≤ k.
    Green {
        #[arg(long)]
        k: usize,
        /// Restrict to one distance.
        #[arg(long)]
        d: Option<usize>,
        /// Restrict to one orientation type (1 to 4).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        j: Option<u8>,
        /// exact prints p/q rationals, float prints 17-digit decimals.
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Signed path counts Γ_j(k, r, d), nonzero entries only.
    Gamma {
        #[arg(long)]
        kmax: usize,
    },
    /// Energy E(k, d) and its split over the four types.
    Profile {
        #[arg(long)]
        k: usize,
        /// Defaults to exact for k ≤ 256 and float above.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Regime classification and diagnostics at the distance nearest to γ k
    /// where G_j can be nonzero.
    Asym {
        /// Ray slope γ = d/k.
        #[arg(long, required_unless_present = "d", conflicts_with = "d")]
        gamma: Option<f64>,
        #[arg(long)]
        k: usize,
        /// Distance, instead of --gamma.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
        j: u8,
    },
    /// Runs the verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[arg(long, value_enum, default_value = "exact")]
        suite: Suite,
        #[command(flatten)]
        tolerances: ToleranceArgs,
    },
}

/// Overrides for the acceptance thresholds.
#[derive(Debug, Args)]
struct ToleranceArgs {
    #[arg(long)]
    float_energy_tol: Option<f64>,
    #[arg(long)]
    quadrature_tol: Option<f64>,
    #[arg(long)]
    supersonic_min_rate: Option<f64>,
    #[arg(long)]
    stationary_rel_tol: Option<f64>,
    #[arg(long)]
    return_slope_tol: Option<f64>,
    #[arg(long)]
    airy_ode_tol: Option<f64>,
    #[arg(long)]
    phase_tol: Option<f64>,
    #[arg(long)]
    critical_tol: Option<f64>,
}

impl ToleranceArgs {
    fn apply(&self) -> Tolerances {
        let mut t = Tolerances::default();
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut t.float_energy_tol, self.float_energy_tol);
        set(&mut t.quadrature_tol, self.quadrature_tol);
        set(&mut t.supersonic_min_rate, self.supersonic_min_rate);
        set(&mut t.stationary_rel_tol, self.stationary_rel_tol);
        set(&mut t.return_slope_tol, self.return_slope_tol);
        set(&mut t.airy_ode_tol, self.airy_ode_tol);
        set(&mut t.phase_tol, self.phase_tol);
        set(&mut t.critical_tol, self.critical_tol);
        t
    }
}

/// Errors that are the caller's fault and exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

struct Artifact {
    text: String,
    passed: bool,
}

impl From<String> for Artifact {
    fn from(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Asym { .. } => Format::Json,
        _ => Format::Csv,
    });
    if format == Format::Svg && !matches!(cli.command, Command::Profile { .. } | Command::Asym { .. }) {
        return usage("--format svg is only available for profile and asym");
    }
    let artifact = match &cli.command {
        Command::Green { k, d, j, mode } => green(*k, *d, *j, *mode, format)?.into(),
        Command::Gamma { kmax } => gamma(*kmax, format).into(),
        Command::Profile { k, mode } => profile(*k, *mode, format)?.into(),
        Command::Asym { gamma, k, d, j } => asym(*gamma, *k, *d, *j, format)?.into(),
        Command::Verify { kmax, suite, tolerances } => verify(*kmax, *suite, &tolerances.apply(), format),
    };
    match &cli.out {
        Some(path) => fs::write(path, &artifact.text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(artifact.text.as_bytes())?,
    }
    Ok(artifact.passed)
}

fn orientation(j: u8) -> Orientation {
    Orientation::from_index(j as usize).expect("validated by clap")
}

fn green(k: usize, d: Option<usize>, j: Option<u8>, mode: ModeArg, format: Format) -> anyhow::Result<String> {
    if let Some(d) = d {
        if d > k {
            return usage(format!("--d {d} exceeds --k {k}; G vanishes beyond d = k"));
        }
    }
    let ds: Vec<usize> = d.map_or_else(|| (0..=k).collect(), |d| vec![d]);
    let js: Vec<Orientation> = j.map_or_else(|| Orientation::ALL.to_vec(), |j| vec![orientation(j)]);
    let value: Box<dyn Fn(usize, Orientation) -> (String, Value)> = match mode {
        ModeArg::Exact => {
            let table = ExactRecurrence::new(k).last().expect("layer k").to_table();
            Box::new(move |d, j| {
                let s = output::rational(&table.get(d, j));
                (s.clone(), Value::String(s))
            })
        }
        ModeArg::Float => {
            let layer = float_layer(k);
            Box::new(move |d, j| {
                let v = layer.green(d, j);
                (output::float(v), output::float_json(v))
            })
        }
    };
    let cells = ds.iter().flat_map(|&d| js.iter().map(move |&j| (d, j)));
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = cells
                .map(|(d, j)| json!({"k": k, "d": d, "j": j.index(), "value": value(d, j).1}))
                .collect();
            output::json(&json!({"k": k, "rows": rows}))
        }
        _ => output::csv(
            &["k", "d", "j", "value"],
            cells.map(|(d, j)| vec![k.to_string(), d.to_string(), j.to_string(), value(d, j).0]),
        ),
    })
}

fn gamma(kmax: usize, format: Format) -> String {
    let table = build_gamma(kmax);
    let entries = table.nonzero_entries();
    match format {
        Format::Json => {
            let rows: Vec<Value> = entries
                .map(|(k, r, d, j, c)| json!({"k": k, "r": r, "d": d, "j": j.index(), "count": c.to_string()}))
                .collect();
            output::json(&json!({"kmax": kmax, "rows": rows}))
        }
        _ => output::csv(
            &["k", "r", "d", "j", "count"],
            entries.map(|(k, r, d, j, c)| vec![k.to_string(), r.to_string(), d.to_string(), j.to_string(), c.to_string()]),
        ),
    }
}

fn profile_of(k: usize, mode: Option<ModeArg>) -> anyhow::Result<Profile> {
    let mode = match mode {
        Some(ModeArg::Exact) => Mode::Exact,
        Some(ModeArg::Float) => Mode::Float,
        None if k <= EXACT_LIMIT => Mode::Exact,
        None => Mode::Float,
    };
    let limit = if mode == Mode::Exact { EXACT_LIMIT } else { FLOAT_LIMIT };
    if k > limit {
        return usage(format!("--k {k} is above the {mode:?} profile limit {limit}").to_lowercase());
    }
    energy_profile(k, mode).context("energy profile")
}

fn profile(k: usize, mode: Option<ModeArg>, format: Format) -> anyhow::Result<String> {
    let profile = profile_of(k, mode)?;
    let header = ["k", "d", "E", "E1", "E2", "E3", "E4"];
    let rows: Vec<(Vec<String>, Vec<Value>)> = match &profile {
        Profile::Exact(p) => (0..=k)
            .map(|d| {
                let mut cells = vec![output::rational(&p.total(d))];
                cells.extend(p.per_type[d].iter().map(output::rational));
                let json = cells.iter().cloned().map(Value::String).collect();
                (cells, json)
            })
            .collect(),
        Profile::Float(p) => (0..=k)
            .map(|d| {
                let mut vals = vec![p.total(d)];
                vals.extend(p.per_type[d]);
                (vals.iter().map(|&v| output::float(v)).collect(), vals.iter().map(|&v| output::float_json(v)).collect())
            })
            .collect(),
    };
    Ok(match format {
        Format::Svg => output::log_plot_svg(&format!("Energy profile at k = {k}"), &profile.to_float().totals(), None),
        Format::Json => {
            let rows: Vec<Value> = rows
                .into_iter()
                .enumerate()
                .map(|(d, (_, vals))| {
                    let mut obj = serde_json::Map::new();
                    obj.insert("k".into(), k.into());
                    obj.insert("d".into(), d.into());
                    for (name, v) in header[2..].iter().zip(vals) {
                        obj.insert((*name).into(), v);
                    }
                    Value::Object(obj)
                })
                .collect();
            let mode = if matches!(profile, Profile::Exact(_)) { "exact" } else { "float" };
            output::json(&json!({"k": k, "mode": mode, "rows": rows}))
        }
        Format::Csv => output::csv(
            &header,
            rows.into_iter().enumerate().map(|(d, (cells, _))| {
                let mut row = vec![k.to_string(), d.to_string()];
                row.extend(cells);
                row
            }),
        ),
    })
}

fn asym(gamma: Option<f64>, k: usize, d: Option<usize>, j: u8, format: Format) -> anyhow::Result<String> {
    if format == Format::Csv {
        return usage("asym writes json or svg");
    }
    let d = match (gamma, d) {
        (_, Some(d)) => d,
        (Some(g), None) if g.is_finite() && g >= 0.0 => nearest_admissible(orientation(j), k, g * k as f64),
        (Some(g), None) => return usage(format!("--gamma {g} must be a nonnegative number")),
        (None, None) => unreachable!("clap requires --gamma or --d"),
    };
    if format == Format::Svg {
        let p = profile_of(k, None)?;
        let title = format!("Energy profile at k = {k}, marker at d = {d}");
        return Ok(output::log_plot_svg(&title, &p.to_float().totals(), Some(d)));
    }
    let report = regime_report(orientation(j), k, d).map_err(|e| match e {
        bethe_green::asymptotics::AsymptoticError::InvalidArgument(m) => anyhow::Error::new(Usage(m)),
        other => anyhow::Error::new(other),
    })?;
    let mut v = serde_json::to_value(&report)?;
    if let Value::Object(m) = &mut v {
        m.insert("k".into(), k.into());
        m.insert("d".into(), d.into());
        m.insert("j".into(), j.into());
    }
    Ok(output::json(&output::normalize_floats(v)))
}

fn verify(kmax: usize, suite: Suite, tol: &Tolerances, format: Format) -> Artifact {
    let mut checks: Vec<Check> = Vec::new();
    if matches!(suite, Suite::Exact | Suite::All) {
        checks.extend(exact_checks(kmax));
    }
    if matches!(suite, Suite::Asymptotic | Suite::All) {
        checks.extend(all_criteria(tol));
    }
    let passed = checks.iter().all(|c| c.passed);
    let failed = checks.iter().filter(|c| !c.passed).count();
    let text = match format {
        Format::Json => output::json(&json!({"passed": passed, "checks": checks})),
        _ => {
            let mut s: String = checks.iter().map(|c| c.line() + "\n").collect();
            s.push_str(&format!("{} of {} checks passed\n", checks.len() - failed, checks.len()));
            s
        }
    };
    Artifact { text, passed }
}

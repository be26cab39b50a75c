//! The `mmspace` command line.
//!
//! Exit codes: 0 success, 2 input error, 3 enumeration guard exceeded,
//! 4 failed precondition (for example a coalescent stopped by `--t-max`).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coalescent::{
    coalescence_times, coalescent_to_mmspace, dust_classifier, empirical_ball_mass_curve,
    mean_stderr, simulate_with, CoalescentRun, LambdaMeasure, RateTable,
};
use crate::diagnostics::{
    exp212i, exp212ii, fixture, precompactness_report, tightness_report, Thresholds,
};
use crate::error::{Error, Result};
use crate::functional::{
    distance_distribution, modulus_of_mass_distribution, moment_measure,
    random_distance_distribution,
};
use crate::io::{read_space, space_to_json, write_space};
use crate::metrics::{
    eurandom_with, glued_prohorov, gromov_hausdorff_with, gromov_prohorov_with,
    gromov_wasserstein_with, mod_eurandom_with, CertifiedInterval, MetricOptions, Relation,
    Witness,
};
use crate::rng::{env_seed, seeded};
use crate::space::MmSpace;

#[derive(Parser, Debug)]
#[command(
    name = "mmspace",
    version,
    about = "Finite metric measure spaces: functionals, distances, coalescent trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified interval for a distance between two spaces.
    Dist {
        /// JSON file or fixture name.
        a: String,
        /// JSON file or fixture name.
        b: String,
        #[arg(long, value_enum)]
        metric: Metric,
        /// Largest n*m solved exactly.
        #[arg(long)]
        exact_limit: Option<usize>,
        /// Exit with code 3 unless the result is exact.
        #[arg(long)]
        require_exact: bool,
        /// Write the interval and its witnesses as JSON.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Sampling functionals of one space.
    Functional {
        space: String,
        /// `w`, `vdelta:<delta>`, `hatmu` or `moment:<k>`.
        #[arg(long)]
        what: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Simulate Lambda-coalescent trees.
    Coalescent {
        /// `kingman`, `bolthausen-sznitman`, `beta:a,b[,mass]`, `atom:x,mass`, joined with `+`.
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        runs: usize,
        /// Defaults to `MM_SEED`, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long, value_enum, default_value = "mmspace")]
        emit: Emit,
        /// Time (ball radius) for `ball-mass`.
        #[arg(long, default_value_t = 0.05)]
        t: f64,
        /// Comma-separated thresholds for `ball-mass`.
        #[arg(long, default_value = "0.1,0.01,0.001")]
        delta_grid: String,
        /// Histogram bins for `w-hist`.
        #[arg(long, default_value_t = 20)]
        bins: usize,
        /// Directory for one file per run instead of stdout (`mmspace` only).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pre-compactness or tightness report for a family.
    Diagnose {
        /// Files, fixture names, the families `exp212i` / `exp212ii`, or a
        /// sampler `coalescent:<lambda>:<n>`.
        inputs: Vec<String>,
        #[arg(
            long,
            default_value = "1,0.5,0.25,0.125,0.0625,0.03125,0.015625,0.0078125,0.00390625"
        )]
        delta_grid: String,
        #[arg(long, default_value = "1,2,5")]
        c_grid: String,
        /// Radii for the thin-point estimates of a sampler.
        #[arg(long, default_value = "0.05")]
        eps_grid: String,
        #[arg(long, default_value_t = 0.1)]
        tail_threshold: f64,
        #[arg(long, default_value_t = 0.1)]
        modulus_threshold: f64,
        /// Sampler draws.
        #[arg(long, default_value_t = 20)]
        runs: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Directory for `report.json` and `report.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Metric {
    /// Prohorov distance after identifying points with equal labels.
    ProhorovGlued,
    Gpr,
    Eurandom,
    Gw,
    ModEurandom,
    Gh,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Mmspace,
    WHist,
    BallMass,
    RunLog,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => 3,
        Error::NotFullyCoalesced | Error::PreconditionFailed(_) => 4,
        _ => 2,
    }
}

/// Run the command line with explicit output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// A JSON file if `name` is an existing path, otherwise a fixture.
pub fn load_space(name: &str) -> Result<MmSpace> {
    let path = Path::new(name);
    if path.is_file() {
        return read_space(path);
    }
    fixture(name).map_err(|_| Error::Parse {
        location: name.to_string(),
        message: "no such file or fixture".into(),
    })
}

fn parse_grid(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| Error::InvalidArgument(format!("bad {what} value `{v}`")))
        })
        .collect()
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.or_else(env_seed).unwrap_or(0)
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Dist {
            a,
            b,
            metric,
            exact_limit,
            require_exact,
            witness_out,
        } => {
            let (x, y) = (load_space(&a)?, load_space(&b)?);
            let opts = exact_limit.map_or_else(MetricOptions::default, |c| {
                MetricOptions::default().with_exact_limit(c)
            });
            let c = distance(metric, &x, &y, &opts)?;
            writeln!(out, "{} {} {}", c.lower, c.upper, c.method()).map_err(io_err)?;
            if let Some(path) = witness_out {
                std::fs::write(
                    &path,
                    serde_json::to_string_pretty(&c.to_json()).unwrap() + "\n",
                )?;
            }
            if require_exact && !c.is_exact() {
                writeln!(
                    err,
                    "error: result is not exact within the enumeration limits"
                )
                .map_err(io_err)?;
                return Ok(3);
            }
            Ok(0)
        }
        Command::Functional {
            space,
            what,
            format,
        } => {
            let x = load_space(&space)?;
            let text = functional(&x, &what, format)?;
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(0)
        }
        Command::Coalescent {
            lambda,
            n,
            runs,
            seed,
            t_max,
            emit,
            t,
            delta_grid,
            bins,
            out: dir,
        } => {
            let l: LambdaMeasure = lambda.parse()?;
            writeln!(err, "lambda {l}: {}", dust_classifier(&l)).map_err(io_err)?;
            let seed = resolve_seed(seed);
            coalescent(
                &l,
                n,
                runs,
                seed,
                t_max,
                emit,
                t,
                &parse_grid(&delta_grid, "delta")?,
                bins,
                dir.as_deref(),
                out,
            )?;
            Ok(0)
        }
        Command::Diagnose {
            inputs,
            delta_grid,
            c_grid,
            eps_grid,
            tail_threshold,
            modulus_threshold,
            runs,
            seed,
            out: dir,
        } => {
            let th = Thresholds {
                tail: tail_threshold,
                modulus: modulus_threshold,
            };
            let deltas = parse_grid(&delta_grid, "delta")?;
            let cs = parse_grid(&c_grid, "C")?;
            diagnose(
                &inputs,
                &deltas,
                &cs,
                &parse_grid(&eps_grid, "eps")?,
                th,
                runs,
                resolve_seed(seed),
                dir.as_deref(),
                out,
            )?;
            Ok(0)
        }
    }
}

fn distance(
    metric: Metric,
    x: &MmSpace,
    y: &MmSpace,
    opts: &MetricOptions,
) -> Result<CertifiedInterval> {
    Ok(match metric {
        Metric::Gpr => gromov_prohorov_with(x, y, opts),
        Metric::Eurandom => eurandom_with(x, y, opts),
        Metric::Gw => gromov_wasserstein_with(x, y, opts),
        Metric::ModEurandom => mod_eurandom_with(x, y, opts),
        Metric::Gh => gromov_hausdorff_with(x, y, opts),
        Metric::ProhorovGlued => {
            // points with equal labels are identified; on one common metric
            // space this is the plain Prohorov distance of the two weightings
            let pairs: Vec<(usize, usize)> = x
                .labels()
                .iter()
                .enumerate()
                .filter_map(|(i, l)| y.labels().iter().position(|k| k == l).map(|j| (i, j)))
                .collect();
            if pairs.is_empty() {
                return Err(Error::InvalidArgument(
                    "prohorov-glued needs spaces that share point labels".into(),
                ));
            }
            let relation = Relation::from_pairs(x.len(), y.len(), &pairs)?;
            let v = glued_prohorov(x, y, &relation);
            CertifiedInterval::exact(
                v,
                Witness::Relation {
                    relation,
                    objective: v,
                },
                "Prohorov distance in the gluing that identifies equal labels",
            )
        }
    })
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record(&r).map_err(|e| Error::Io(e.to_string()))?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).unwrap())
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn functional(x: &MmSpace, what: &str, format: Format) -> Result<String> {
    let (name, arg) = what
        .split_once(':')
        .map_or((what, None), |(a, b)| (a, Some(b)));
    let bad = || {
        Error::InvalidArgument(format!(
            "unknown functional `{what}` (w, vdelta:<delta>, hatmu, moment:<k>)"
        ))
    };
    match (name, arg) {
        ("w", None) => {
            let w = distance_distribution(x);
            match format {
                Format::Json => Ok(json_text(&json!({"atoms": w.atoms()}))),
                Format::Csv => csv_text(
                    &["value", "mass"],
                    w.atoms()
                        .iter()
                        .map(|a| vec![a.0.to_string(), a.1.to_string()]),
                ),
            }
        }
        ("vdelta", Some(d)) => {
            let delta: f64 = d.parse().map_err(|_| bad())?;
            let v = modulus_of_mass_distribution(x, delta);
            match format {
                Format::Json => Ok(json_text(&json!({"delta": delta, "v": v}))),
                Format::Csv => csv_text(&["delta", "v"], [vec![delta.to_string(), v.to_string()]]),
            }
        }
        ("hatmu", None) => {
            let h = random_distance_distribution(x);
            match format {
                Format::Json => {
                    let atoms: Vec<Value> = h
                        .atoms()
                        .iter()
                        .map(|(law, m)| json!({"mass": m, "law": law.atoms()}))
                        .collect();
                    Ok(json_text(&json!({ "atoms": atoms })))
                }
                Format::Csv => csv_text(
                    &["atom", "mass", "value", "prob"],
                    h.atoms().iter().enumerate().flat_map(|(i, (law, m))| {
                        law.atoms().iter().map(move |a| {
                            vec![
                                i.to_string(),
                                m.to_string(),
                                a.0.to_string(),
                                a.1.to_string(),
                            ]
                        })
                    }),
                ),
            }
        }
        ("moment", Some(k)) => {
            let k: usize = k.parse().map_err(|_| bad())?;
            let mm = moment_measure(x, k)?;
            match format {
                Format::Json => {
                    let atoms: Vec<Value> = mm
                        .atoms()
                        .iter()
                        .map(|(p, m)| json!({"point": p, "mass": m}))
                        .collect();
                    Ok(json_text(&json!({"k": k, "atoms": atoms})))
                }
                Format::Csv => {
                    let mut header: Vec<String> = (1..=k).map(|c| format!("d{c}")).collect();
                    header.push("mass".into());
                    let h: Vec<&str> = header.iter().map(String::as_str).collect();
                    csv_text(
                        &h,
                        mm.atoms()
                            .iter()
                            .map(|(p, m)| p.iter().chain([m]).map(|v| v.to_string()).collect()),
                    )
                }
            }
        }
        _ => Err(bad()),
    }
}

#[allow(clippy::too_many_arguments)]
fn coalescent(
    l: &LambdaMeasure,
    n: usize,
    runs: usize,
    seed: u64,
    t_max: Option<f64>,
    emit: Emit,
    t: f64,
    deltas: &[f64],
    bins: usize,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    if n < 2 || runs == 0 {
        return Err(Error::InvalidArgument(
            "need --n >= 2 and --runs >= 1".into(),
        ));
    }
    if emit == Emit::BallMass {
        let curve = empirical_ball_mass_curve(l, n, t, deltas, runs, &mut seeded(seed, 0))?;
        let text = csv_text(
            &["delta", "mean", "stderr"],
            curve.iter().map(|p| {
                vec![
                    p.delta.to_string(),
                    p.mean.to_string(),
                    p.stderr.to_string(),
                ]
            }),
        )?;
        return out.write_all(text.as_bytes()).map_err(io_err);
    }
    let table = RateTable::new(l, n)?;
    // run i draws from stream i + 1, so runs are independent of each other
    let simulate = |i: usize| simulate_with(&table, n, &mut seeded(seed, i as u64 + 1), t_max);
    match emit {
        Emit::Mmspace => {
            if let Some(d) = dir {
                std::fs::create_dir_all(d)?;
            }
            for i in 0..runs {
                let x = coalescent_to_mmspace(&simulate(i)?)?;
                let meta = json!({"lambda": l.to_string(), "n": n, "seed": seed, "run": i});
                match dir {
                    Some(d) => write_space(&d.join(format!("run-{i:05}.json")), &x, Some(meta))?,
                    None => {
                        let compact: Value =
                            serde_json::from_str(&space_to_json(&x, Some(meta))).unwrap();
                        writeln!(out, "{compact}").map_err(io_err)?;
                    }
                }
            }
        }
        Emit::RunLog => {
            for i in 0..runs {
                let run = simulate(i)?;
                writeln!(out, "{}", run_log(i, &run)).map_err(io_err)?;
            }
        }
        Emit::WHist => {
            let mut times = Vec::new();
            let mut zero_mass = 0.0;
            let mut pair_means = Vec::with_capacity(runs);
            for i in 0..runs {
                let run = simulate(i)?;
                let d = coalescence_times(&run).ok_or(Error::NotFullyCoalesced)?;
                let pairs: Vec<f64> = (0..n)
                    .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                    .map(|(a, b)| d[a * n + b])
                    .collect();
                pair_means.push(pairs.iter().sum::<f64>() / pairs.len() as f64);
                times.extend(pairs);
                zero_mass += 1.0 / n as f64;
            }
            let (mean, stderr) = mean_stderr(&pair_means);
            let max = times.iter().copied().fold(0.0, f64::max);
            let width = max / bins.max(1) as f64;
            let mut counts = vec![0usize; bins.max(1)];
            let last = counts.len() - 1;
            for &v in &times {
                let k = if width > 0.0 { (v / width) as usize } else { 0 };
                counts[k.min(last)] += 1;
            }
            // off-diagonal pairs carry mass (1 - 1/n) of w in each run
            let pair_mass = (1.0 - 1.0 / n as f64) / (times.len() / runs) as f64 / runs as f64;
            let hist: Vec<Value> = counts
                .iter()
                .enumerate()
                .map(|(k, &c)| json!({"lo": k as f64 * width, "hi": (k + 1) as f64 * width, "mass": c as f64 * pair_mass}))
                .collect();
            let doc = json!({
                "lambda": l.to_string(), "n": n, "runs": runs, "seed": seed,
                "mean_coalescence_time": mean, "stderr": stderr,
                "zero_mass": zero_mass / runs as f64, "bins": hist,
            });
            out.write_all(json_text(&doc).as_bytes()).map_err(io_err)?;
        }
        Emit::BallMass => unreachable!(),
    }
    Ok(())
}

fn run_log(i: usize, run: &CoalescentRun) -> Value {
    let events: Vec<Value> = run
        .events()
        .iter()
        .map(|e| json!({"time": e.time, "blocks": e.blocks}))
        .collect();
    json!({"run": i, "n": run.n(), "complete": run.is_complete(), "events": events})
}

#[allow(clippy::too_many_arguments)]
fn diagnose(
    inputs: &[String],
    deltas: &[f64],
    cs: &[f64],
    epss: &[f64],
    th: Thresholds,
    runs: usize,
    seed: u64,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("no inputs".into()));
    }
    let (json_report, csv_report, verdicts) = if let [one] = inputs {
        if let Some(spec) = one.strip_prefix("coalescent:") {
            let (lam, n) = spec
                .rsplit_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("sampler `{one}` needs :<n>")))?;
            let l: LambdaMeasure = lam.parse()?;
            let n: usize = n
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad sample size in `{one}`")))?;
            let table = RateTable::new(&l, n)?;
            let mut stream = 0u64;
            let mut sampler = |_: &mut crate::rng::StdRng| {
                stream += 1;
                coalescent_to_mmspace(&simulate_with(&table, n, &mut seeded(seed, stream), None)?)
            };
            let r = tightness_report(
                &mut sampler,
                runs,
                deltas,
                epss,
                cs,
                th,
                &mut seeded(seed, 0),
            )?;
            (r.to_json(), r.to_csv()?, (r.condition_i, r.condition_ii))
        } else {
            let r = precompactness_report(&family(inputs)?, deltas, cs, th)?;
            (r.to_json(), r.to_csv()?, (r.condition_i, r.condition_ii))
        }
    } else {
        let r = precompactness_report(&family(inputs)?, deltas, cs, th)?;
        (r.to_json(), r.to_csv()?, (r.condition_i, r.condition_ii))
    };
    writeln!(
        out,
        "condition (i) tightness of distance distributions: {} (on probed grid)",
        verdicts.0
    )
    .map_err(io_err)?;
    writeln!(
        out,
        "condition (ii) vanishing modulus of mass distribution: {} (on probed grid)",
        verdicts.1
    )
    .map_err(io_err)?;
    if let Some(d) = dir {
        std::fs::create_dir_all(d)?;
        std::fs::write(d.join("report.json"), json_text(&json_report))?;
        std::fs::write(d.join("report.csv"), csv_report)?;
    }
    Ok(())
}

/// Expand family names (`exp212i`, `exp212ii` give members 1..=8) and load the rest.
fn family(inputs: &[String]) -> Result<Vec<MmSpace>> {
    let mut out = Vec::new();
    for name in inputs {
        match name.as_str() {
            "exp212i" if !Path::new(name).exists() => out.extend((1..=8).map(exp212i)),
            "exp212ii" if !Path::new(name).exists() => out.extend((1..=8).map(exp212ii)),
            _ => out.push(load_space(name)?),
        }
    }
    Ok(out)
}

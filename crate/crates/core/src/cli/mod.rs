//! Command-line driver: `approx`, `mean`, `test`, `bootstrap` and `plot`.
//!
//! Every command reads a sample manifest and writes its files under `--out`:
//!
//! | command     | files                                                        |
//! |-------------|--------------------------------------------------------------|
//! | `approx`    | `approx.csv`, `approx.txt`                                   |
//! | `mean`      | `mean_shape.csv`, `mean_shape.svg`                           |
//! | `test`      | `test_result.txt`                                            |
//! | `bootstrap` | `bootstrap_summary.csv`, `bootstrap_distances.csv`, `bootstrap_region.svg` |
//! | `plot`      | `sample.svg`                                                 |

pub mod svg;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;

use crate::approx::approximation_study;
use crate::bootstrap::{align_rotation, bootstrap_region, BootstrapConfig, DEFAULT_ALPHA, DEFAULT_RESAMPLES};
use crate::contour::{canonicalize, evaluate};
use crate::error::{Result, ShapeError};
use crate::inference::{TestConfig, TestStatistics};
use crate::ingest::{
    format_contour_csv, load_curves, load_sample, read_contour, ContourFormat, LoadedSample,
    SampleManifest,
};
use crate::rng::seeded;
use crate::shape_space::{extrinsic_mean_shape, preshape, Preshape, DEFAULT_GAP_TOL};

use self::svg::{write_svg, SvgStyle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// k-gon approximation error study.
    Approx,
    /// Extrinsic mean shape.
    Mean,
    /// Neighborhood hypothesis test against `--m0`.
    Test,
    /// Bootstrap confidence region for the mean.
    Bootstrap,
    /// Overlay of the sample and its mean.
    Plot,
}

pub const DEFAULT_K_GRID: [usize; 5] = [50, 100, 200, 300, 400];
pub const DEFAULT_REPEATS: usize = 50;

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "extrinsic-shape", version, about = "Extrinsic mean shapes of planar contours")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Sample manifest.
    #[arg(long)]
    pub manifest: PathBuf,

    /// Overrides the manifest's number of stopping times.
    #[arg(long)]
    pub k: Option<usize>,

    /// Overrides the manifest's seed.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Bootstrap resamples.
    #[arg(long = "B", default_value_t = DEFAULT_RESAMPLES)]
    pub resamples: usize,

    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,

    /// Neighborhood radius for `test`.
    #[arg(long)]
    pub delta: Option<f64>,

    /// Report the largest rejected radius; makes `--delta` optional.
    #[arg(long)]
    pub solve_delta: bool,

    /// Hypothesized shape for `test`, as a CSV contour or PGM mask.
    #[arg(long)]
    pub m0: Option<PathBuf>,

    #[arg(long, default_value = ".")]
    pub out: PathBuf,

    /// Comma-separated k values for `approx`.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_K_GRID)]
    pub k_grid: Vec<usize>,

    /// Repetitions per k for `approx`.
    #[arg(long, default_value_t = DEFAULT_REPEATS)]
    pub repeats: usize,
}

impl RunConfig {
    pub fn new(command: Command, manifest: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        Self {
            command,
            manifest: manifest.into(),
            k: None,
            seed: None,
            resamples: DEFAULT_RESAMPLES,
            alpha: DEFAULT_ALPHA,
            delta: None,
            solve_delta: false,
            m0: None,
            out: out.into(),
            k_grid: DEFAULT_K_GRID.to_vec(),
            repeats: DEFAULT_REPEATS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.command == Command::Test {
            if self.delta.is_none() && !self.solve_delta {
                return Err(ShapeError::InvalidArgument(
                    "test needs --delta or --solve-delta".into(),
                ));
            }
            if self.m0.is_none() {
                return Err(ShapeError::InvalidArgument("test needs --m0".into()));
            }
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(ShapeError::InvalidArgument(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self.command == Command::Approx && (self.k_grid.is_empty() || self.repeats == 0) {
            return Err(ShapeError::InvalidArgument(
                "approx needs a nonempty --k-grid and --repeats >= 1".into(),
            ));
        }
        Ok(())
    }

    /// The manifest with `--k` and `--seed` applied.
    pub fn manifest(&self) -> Result<SampleManifest> {
        let mut m = SampleManifest::read(&self.manifest)?;
        if let Some(k) = self.k {
            m.k = k;
            for e in &mut m.entries {
                e.k = None;
            }
        }
        if let Some(seed) = self.seed {
            m.seed = seed;
        }
        m.validate()?;
        Ok(m)
    }
}

/// Runs one command, writing the human-readable report to `report`.
pub fn run(config: &RunConfig, report: &mut dyn Write) -> Result<()> {
    config.validate()?;
    fs::create_dir_all(&config.out)?;
    let manifest = config.manifest()?;
    let text = match config.command {
        Command::Approx => cmd_approx(&manifest, config)?,
        Command::Mean => cmd_mean(&manifest, config)?,
        Command::Test => cmd_test(&manifest, config)?,
        Command::Bootstrap => cmd_bootstrap(&manifest, config)?,
        Command::Plot => cmd_plot(&manifest, config)?,
    };
    report.write_all(text.as_bytes())?;
    Ok(())
}

/// Parses arguments, honors `SHAPE_THREADS`, runs, and maps failures to exit code 2.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let threads = std::env::var("SHAPE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0);
    let result = match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run(&config, &mut std::io::stdout())),
            Err(e) => Err(ShapeError::InvalidArgument(format!("thread pool: {e}"))),
        },
        None => run(&config, &mut std::io::stdout()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn sample_mean(sample: &LoadedSample) -> Result<Preshape> {
    let mean = extrinsic_mean_shape(&sample.preshapes, DEFAULT_GAP_TOL)?;
    // Rotate onto the first observation so single-contour means reproduce it.
    Ok(align_rotation(&mean, &sample.preshapes[0]))
}

pub fn cmd_approx(manifest: &SampleManifest, config: &RunConfig) -> Result<String> {
    let curves = load_curves(manifest)?;
    let mut rng = seeded(manifest.seed);
    let mut csv = String::from(
        "id,K,k,repeats,mean_rel_length_error,sd_rel_length_error,mean_sq_shape_distance,sd_sq_shape_distance\n",
    );
    let mut table = format!(
        "{:<16} {:>6} {:>6} {:>14} {:>14} {:>14} {:>14}\n",
        "id", "K", "k", "mean rel err", "sd rel err", "mean sq dist", "sd sq dist"
    );
    for (entry, curve) in manifest.entries.iter().zip(&curves) {
        let rows = approximation_study(curve, &config.k_grid, config.repeats, &mut rng)
            .map_err(|e| ShapeError::Entry {
                id: entry.id.clone(),
                source: Box::new(e),
            })?;
        for r in rows {
            let _ = writeln!(
                csv,
                "{},{},{},{},{:.10e},{:.10e},{:.10e},{:.10e}",
                entry.id,
                curve.len(),
                r.k,
                r.repeats,
                r.length_error.mean,
                r.length_error.sd,
                r.shape_distance.mean,
                r.shape_distance.sd
            );
            let _ = writeln!(
                table,
                "{:<16} {:>6} {:>6} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
                entry.id,
                curve.len(),
                r.k,
                r.length_error.mean,
                r.length_error.sd,
                r.shape_distance.mean,
                r.shape_distance.sd
            );
        }
    }
    fs::write(config.out.join("approx.csv"), csv)?;
    fs::write(config.out.join("approx.txt"), &table)?;
    Ok(table)
}

pub fn cmd_mean(manifest: &SampleManifest, config: &RunConfig) -> Result<String> {
    let sample = load_sample(manifest)?;
    let mean = sample_mean(&sample)?;
    fs::write(config.out.join("mean_shape.csv"), format_contour_csv(mean.coords()))?;
    write_svg(&[(mean.coords(), SvgStyle::mean())], &config.out.join("mean_shape.svg"))?;
    Ok(format!(
        "n {}\nk {}\nwrote {} and {}\n",
        sample.preshapes.len(),
        sample.times.k(),
        config.out.join("mean_shape.csv").display(),
        config.out.join("mean_shape.svg").display()
    ))
}

/// Reads the hypothesized shape. A contour with exactly `k` points is taken as
/// an already corresponded k-gon (for example a `mean_shape.csv`); anything
/// else is canonicalized and evaluated at the sample's stopping times.
pub fn load_m0(path: &Path, sample: &LoadedSample) -> Result<Preshape> {
    let contour = read_contour(path, ContourFormat::from_path(path))?;
    if contour.len() == sample.times.k() {
        return preshape(&contour);
    }
    preshape(&evaluate(&canonicalize(&contour)?, &sample.times)?)
}

pub fn cmd_test(manifest: &SampleManifest, config: &RunConfig) -> Result<String> {
    let sample = load_sample(manifest)?;
    let m0_path = config.m0.as_ref().expect("validated");
    let m0 = load_m0(m0_path, &sample)?;
    let stats = TestStatistics::compute(&sample.preshapes, &m0)?;
    let delta_star = stats.critical_delta(config.alpha)?;

    let mut out = String::new();
    let _ = writeln!(out, "n        {}", stats.n);
    let _ = writeln!(out, "k        {}", sample.times.k());
    let _ = writeln!(out, "alpha    {}", config.alpha);
    let _ = writeln!(out, "phi      {:.10e}", stats.phi);
    let _ = writeln!(out, "s_n      {:.10e}", stats.s_n());
    match config.delta {
        Some(delta) => {
            let result = stats.test(&TestConfig::new(delta, config.alpha)?)?;
            let _ = writeln!(out, "delta    {delta}");
            let _ = writeln!(out, "T_n      {:.10e}", result.t_n);
            let _ = writeln!(out, "p        {:.10e}", result.p_value);
            let _ = writeln!(out, "delta*   {:.10e}", delta_star);
            let _ = writeln!(
                out,
                "decision {}",
                if result.reject {
                    "reject H0: the mean lies outside the delta-neighborhood of m0"
                } else {
                    "do not reject H0"
                }
            );
        }
        None => {
            let why = if stats.is_degenerate() {
                "undefined (s_n = 0)"
            } else {
                "n/a (no --delta)"
            };
            let _ = writeln!(out, "T_n      {why}");
            let _ = writeln!(out, "p        {why}");
            let _ = writeln!(out, "delta*   {:.10e}", delta_star);
            if delta_star > 0.0 {
                let _ = writeln!(out, "decision reject H0 for every delta < delta*");
            } else {
                let _ = writeln!(out, "decision H0 is not rejected for any delta > 0");
            }
        }
    }
    fs::write(config.out.join("test_result.txt"), &out)?;
    Ok(out)
}

pub fn cmd_bootstrap(manifest: &SampleManifest, config: &RunConfig) -> Result<String> {
    let sample = load_sample(manifest)?;
    let boot = BootstrapConfig {
        resamples: config.resamples,
        alpha: config.alpha,
        seed: manifest.seed,
    };
    let region = bootstrap_region(&sample.preshapes, &boot)?;
    let included = region.included.iter().filter(|&&b| b).count();

    let mut summary = String::from("key,value\n");
    let _ = writeln!(summary, "n,{}", sample.preshapes.len());
    let _ = writeln!(summary, "k,{}", sample.times.k());
    let _ = writeln!(summary, "B,{}", boot.resamples);
    let _ = writeln!(summary, "alpha,{}", boot.alpha);
    let _ = writeln!(summary, "seed,{}", boot.seed);
    let _ = writeln!(summary, "radius,{:.16e}", region.radius);
    let _ = writeln!(summary, "included,{included}");
    let mut distances = String::from("resample,distance,included\n");
    for (b, (d, inc)) in region.distances.iter().zip(&region.included).enumerate() {
        let _ = writeln!(distances, "{b},{d:.16e},{}", u8::from(*inc));
    }
    fs::write(config.out.join("bootstrap_summary.csv"), &summary)?;
    fs::write(config.out.join("bootstrap_distances.csv"), distances)?;

    let mean = align_rotation(&region.sample_mean, &sample.preshapes[0]);
    let aligned: Vec<Preshape> = region
        .boot_means
        .iter()
        .zip(&region.included)
        .filter(|(_, &inc)| inc)
        .map(|(m, _)| align_rotation(m, &mean))
        .collect();
    let mut shapes: Vec<(&[Complex64], SvgStyle)> =
        aligned.iter().map(|m| (m.coords(), SvgStyle::region())).collect();
    shapes.push((mean.coords(), SvgStyle::mean()));
    write_svg(&shapes, &config.out.join("bootstrap_region.svg"))?;
    Ok(summary)
}

pub fn cmd_plot(manifest: &SampleManifest, config: &RunConfig) -> Result<String> {
    let sample = load_sample(manifest)?;
    let mean = sample_mean(&sample)?;
    let aligned: Vec<Preshape> = sample
        .preshapes
        .iter()
        .map(|p| align_rotation(p, &mean))
        .collect();
    let mut shapes: Vec<(&[Complex64], SvgStyle)> =
        aligned.iter().map(|p| (p.coords(), SvgStyle::sample())).collect();
    shapes.push((mean.coords(), SvgStyle::mean()));
    let path = config.out.join("sample.svg");
    write_svg(&shapes, &path)?;
    Ok(format!("wrote {}\n", path.display()))
}

//! Config-driven batch front end.
//!
//! [`run`] executes one mode and writes its artifacts to the output
//! directory. Every artifact `name` is accompanied by `name.meta.json`
//! holding the config hash, grid and versions. Failures carry the stage that
//! produced them; [`StageError::exit_code`] maps them to process exit codes.

mod config;
mod svg;

use std::fmt;
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

pub use config::{Mode, RunConfig, SpectrumConfig, SymbolConfig};
pub use svg::{emit_svg, read_points_csv, render_svg, write_points_csv, PointSeries};

use crate::expansion::{build_composition_operator, oracle_vs_series_report, plan_expansion, QuadSpec};
use crate::halfline::{assemble_dense, write_matrix_binary, write_matrix_csv, HardyGrid};
use crate::spectra::{spectrum_study, CompareMode, SpectrumOptions, Verdict};
use crate::symbols::{
    estimate_cluster_set_at_infinity, estimate_essential_range_at_infinity, verify_hypothesis, AnalyticSymbol,
    BoundarySampling, ClusterSampling, SampleSpec,
};
use crate::{Error, VERSION};

#[derive(Debug)]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

impl StageError {
    pub fn exit_code(&self) -> i32 {
        self.error.exit_code()
    }
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} stage failed: {}", self.stage, self.error)
    }
}

impl std::error::Error for StageError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError>;
}

impl<T> Stage<T> for crate::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError> {
        self.map_err(|error| StageError { stage, error })
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub artifacts: Vec<PathBuf>,
    /// Human-readable lines for stdout.
    pub summary: Vec<String>,
}

struct Writer<'a> {
    dir: PathBuf,
    cfg: &'a RunConfig,
    written: Vec<PathBuf>,
}

impl Writer<'_> {
    fn metadata(&self, artifact: &str) -> serde_json::Value {
        json!({
            "artifact": artifact,
            "config_hash": self.cfg.hash(),
            "mode": self.cfg.mode.name(),
            "seed": self.cfg.seed,
            "grid": {
                "n_points": self.cfg.n_points,
                "spatial_halfwidth": self.cfg.spatial_halfwidth,
            },
            "versions": {
                "quasiparabolic": VERSION,
                "symbols": VERSION,
                "halfline": VERSION,
                "expansion": VERSION,
                "spectra": VERSION,
                "cli": VERSION,
            },
        })
    }

    fn file(&mut self, name: &str, write: impl FnOnce(&mut BufWriter<fs::File>) -> crate::Result<()>) -> Result<(), StageError> {
        let path = self.dir.join(name);
        let f = fs::File::create(&path)
            .map_err(|e| Error::io(format!("creating {}", path.display()), e))
            .stage("output")?;
        let mut w = BufWriter::new(f);
        write(&mut w).stage("output")?;
        std::io::Write::flush(&mut w)
            .map_err(|e| Error::io(format!("writing {}", path.display()), e))
            .stage("output")?;
        self.sidecar(name)?;
        self.written.push(path);
        Ok(())
    }

    fn sidecar(&mut self, name: &str) -> Result<(), StageError> {
        let meta = self.dir.join(format!("{name}.meta.json"));
        let text = serde_json::to_string_pretty(&self.metadata(name)).expect("metadata serializes");
        fs::write(&meta, text + "\n")
            .map_err(|e| Error::io(format!("writing {}", meta.display()), e))
            .stage("output")?;
        self.written.push(meta);
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), StageError> {
        let doc = json!({ "metadata": self.metadata(name), "result": value });
        let text = serde_json::to_string_pretty(&doc).expect("reports serialize");
        self.file(name, |w| {
            std::io::Write::write_all(w, text.as_bytes())
                .and_then(|_| std::io::Write::write_all(w, b"\n"))
                .map_err(|e| Error::io(format!("writing {name}"), e))
        })
    }

    fn svg(&mut self, name: &str, series: &[PointSeries]) -> Result<(), StageError> {
        let path = self.dir.join(name);
        emit_svg(series, &path).stage("output")?;
        self.sidecar(name)?;
        self.written.push(path);
        Ok(())
    }
}

fn symbol(cfg: &RunConfig) -> Result<AnalyticSymbol, StageError> {
    let s = cfg
        .symbol
        .as_ref()
        .ok_or_else(|| Error::Config("symbol.family is required".into()))
        .stage("config")?;
    let psi = s.build().stage("symbol")?;
    let report = verify_hypothesis(&psi, &SampleSpec::default());
    if !report.ok {
        return Err(Error::Hypothesis(format!(
            "sampled min Im ψ = {} at z = {} is below eps_lower = {}",
            report.min_im, report.argmin, report.eps_lower
        )))
        .stage("hypothesis");
    }
    Ok(psi)
}

/// Runs the configured mode.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome, StageError> {
    cfg.validate().stage("config")?;
    let dir = cfg.output_dir.clone();
    fs::create_dir_all(&dir)
        .map_err(|e| Error::io(format!("creating {}", dir.display()), e))
        .stage("output")?;
    let mut w = Writer {
        dir,
        cfg,
        written: vec![],
    };
    let mut summary = vec![];
    let mut exit_code = 0;

    if cfg.mode == Mode::Selftest {
        let results = crate::acceptance::run(&cfg.criteria);
        summary.extend(results.iter().map(|r| r.line()));
        let passed = results.iter().filter(|r| r.pass).count();
        summary.push(format!("{passed}/{} criteria passed", results.len()));
        if passed != results.len() {
            exit_code = 4;
        }
        w.json("selftest.json", &results)?;
        return Ok(RunOutcome {
            exit_code,
            artifacts: w.written,
            summary,
        });
    }

    let psi = symbol(cfg)?;
    let grid = HardyGrid::new(cfg.n_points, cfg.spatial_halfwidth).stage("grid")?;
    match cfg.mode {
        Mode::Cluster => {
            let cluster = estimate_cluster_set_at_infinity(&psi, &ClusterSampling::default());
            let range = estimate_essential_range_at_infinity(&psi, &BoundarySampling::default());
            let series = vec![
                PointSeries::new("cluster", cluster.points().to_vec()),
                PointSeries::new("essential_range", range.points().to_vec()),
            ];
            w.file("clouds.csv", |f| write_points_csv(&series, f))?;
            w.json(
                "clouds.json",
                &json!({
                    "cluster_set": { "size": cluster.len(), "diameter": cluster.diameter(), "min_im": cluster.min_im() },
                    "essential_range": { "size": range.len(), "diameter": range.diameter(), "min_im": range.min_im() },
                    "eps_lower": psi.eps_lower(),
                }),
            )?;
            if cfg.emit_svg {
                w.svg("clouds.svg", &series)?;
            }
            summary.push(format!(
                "cluster set: {} points; essential range: {} points",
                cluster.len(),
                range.len()
            ));
        }
        Mode::Expand => {
            let plan = plan_expansion(&psi, &grid, cfg.tol).stage("plan")?;
            let op = build_composition_operator(&plan, &grid).stage("series")?;
            let m = assemble_dense(&op).stage("assembly")?;
            w.json("plan.json", &plan.summary())?;
            w.file("matrix.bin", |f| write_matrix_binary(&m, f))?;
            if cfg.export_csv {
                w.file("matrix.csv", |f| write_matrix_csv(&m, f))?;
            }
            summary.push(format!(
                "α = {:.6}, δ̂ = {:.6}, M = {}, tail bound = {:.3e}, matrix {}×{}",
                plan.alpha(),
                plan.delta_hat,
                plan.trunc_order,
                plan.tail_bound,
                m.nrows(),
                m.ncols()
            ));
        }
        Mode::Spectrum => {
            let mut opts = match cfg.spectrum.mode {
                CompareMode::Equality => SpectrumOptions::default(),
                CompareMode::Containment => SpectrumOptions::containment(),
            };
            opts.resolution = cfg.spectrum.resolution;
            opts.source = cfg.spectrum.source;
            opts.compare.thinning_cell = cfg.spectrum.thinning_cell;
            opts.compare.sigma.seed = cfg.seed;
            let study = spectrum_study(&psi, &grid, cfg.tol, &opts, cfg.spectrum.refine).stage("spectrum")?;
            let primary = study.primary();
            let series = vec![
                PointSeries::new("predicted", primary.predicted.points.points().to_vec()),
                PointSeries::new("eigen", primary.eigenvalues.points().to_vec()),
            ];
            w.json("spectrum_report.json", &study)?;
            w.file("points.csv", |f| write_points_csv(&series, f))?;
            if cfg.emit_svg {
                w.svg("spectrum.svg", &series)?;
            }
            for (label, r) in std::iter::once(("coarse", &study.coarse)).chain(study.fine.as_ref().map(|f| ("fine", f))) {
                let verdict = match r.verdict {
                    Some(Verdict::Pass) => "pass",
                    Some(Verdict::Fail) => "fail",
                    Some(Verdict::Inconclusive) => "inconclusive",
                    None => "-",
                };
                summary.push(format!(
                    "{label} N={}: hausdorff {}, containment margin {}, verdict {verdict}",
                    r.metadata.n_points.unwrap_or(0),
                    r.hausdorff.map_or("-".into(), |v| format!("{v:.4e}")),
                    r.containment_margin.map_or("-".into(), |v| format!("{v:.4e}")),
                ));
            }
        }
        Mode::Compare => {
            let spec = QuadSpec {
                n_test_vectors: cfg.n_test_vectors,
                seed: cfg.seed,
                ..Default::default()
            };
            let report = oracle_vs_series_report(&psi, &grid, cfg.tol, &spec).stage("oracle")?;
            w.json("oracle_report.json", &report)?;
            summary.push(format!(
                "max rel err {:.3e} vs combined tolerance {:.3e}: {}",
                report.max_rel_err,
                report.combined_tol,
                if report.pass { "pass" } else { "fail" }
            ));
        }
        Mode::Selftest => unreachable!("handled above"),
    }
    Ok(RunOutcome {
        exit_code,
        artifacts: w.written,
        summary,
    })
}

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<RunConfig, StageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading {}", path.display()), e))
        .stage("config")?;
    RunConfig::parse(&text).stage("config")
}

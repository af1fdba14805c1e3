//! Subcommand implementations. Each returns the text it would print; the
//! binary decides where it goes.

use crate::config::RunConfig;
use crate::error::CliError;
use crate::model::{build_model, oracle_counterpart, Model};
use infolattice::analysis::{
    bulk_edge_split, bulk_region, fit_alpha, fit_decay_length, fit_power_law,
    propagation_direction, tee_extract, FitKind, FitResult, FitWindow,
};
use infolattice::geometry::Geometry;
use infolattice::lattice::{
    build_generic_lattice, decomposition_check, evaluate_table, lattice_from_table, BuildOptions,
    GenericLattice, InformationLattice,
};
use infolattice::plan::{enumerate_rectangles, Axis, SubsystemPlan};
use infolattice::reduce::{
    avg_quasi1d_per_scale, info_per_multiscale, quasi1d_from_lattice, quasi1d_per_scale,
};
use infolattice::table::InformationTable;
use infolattice::tsv;
use infolattice::SubsystemIndex;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable holding the default thread count.
pub const THREADS_ENV: &str = "ILAT_THREADS";

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut RunConfig) -> Result<(), CliError> {
        if let Some(s) = self.seed {
            cfg.override_seed(s)?;
        }
        if let Some(t) = self.threads {
            cfg.compute.threads = Some(t);
        }
        if let Some(o) = &self.out {
            cfg.output.dir = o.clone();
        }
        cfg.validate()
    }
}

fn threads(cfg: &RunConfig) -> Result<Option<usize>, CliError> {
    if let Some(t) = cfg.compute.threads {
        return Ok(Some(t));
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(Some(t)),
            _ => Err(CliError::Config(format!(
                "{THREADS_ENV}: `{v}` is not a positive integer"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn input(path: &Path) -> impl FnOnce(infolattice::Error) -> CliError + '_ {
    move |source| CliError::Input {
        path: path.to_path_buf(),
        source,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub model_ms: f64,
    pub entropies_ms: f64,
    pub lattice_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Manifest {
    pub ilat_version: String,
    pub infolattice_version: String,
    pub config_hash: String,
    pub model: String,
    pub backend: String,
    pub plan: String,
    pub fingerprint: String,
    pub subsystems: usize,
    pub reused_from_cache: usize,
    pub threads: usize,
    pub decomposition_residual: f64,
    pub timings: Timings,
}

pub enum Lattice {
    Rectangular {
        lattice: InformationLattice,
        table: InformationTable,
    },
    Generic(GenericLattice),
}

pub struct ComputeOutcome {
    pub lattice: Lattice,
    pub manifest: Manifest,
    pub fit: Option<(FitResult, BTreeMap<i64, f64>)>,
    pub dir: PathBuf,
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn load_cache(path: &Path) -> Option<InformationTable> {
    let text = std::fs::read_to_string(path).ok()?;
    match tsv::table_from_str(&text) {
        Ok(t) => Some(t),
        Err(e) => {
            eprintln!("warning: ignoring unreadable cache {}: {e}", path.display());
            None
        }
    }
}

/// Build the model and its lattice for `cfg`, writing `lattice.tsv`,
/// `table.tsv`, `manifest.toml` and, when a fit is configured,
/// `per_scale.tsv` and `fit.tsv` into the output directory.
pub fn compute(cfg: &RunConfig) -> Result<ComputeOutcome, CliError> {
    let start = Instant::now();
    let threads = threads(cfg)?;
    let opts = BuildOptions { threads };
    let t = Instant::now();
    let model = build_model(cfg)?;
    let model_ms = ms(t);
    let dir = cfg.output.dir.clone();
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let backend = model.backend.as_dyn();

    let (lattice, plan_name, subsystems, reused, residual, entropies_ms, lattice_ms) = match &model
        .family
    {
        Some(family) => {
            let t = Instant::now();
            let g = build_generic_lattice(backend, family)
                .map_err(CliError::compute("generic lattice"))?;
            let e = ms(t);
            let residual = family.decomposition_residual(&g.local, &g.information);
            write(
                &dir.join("lattice.tsv"),
                &tsv::generic_lattice_to_string(&g),
            )?;
            let n = family.len();
            (
                Lattice::Generic(g),
                format!("explicit {n}"),
                n,
                0,
                residual,
                e,
                0.0,
            )
        }
        None => {
            let plan = cfg.subsystem_plan()?;
            let indices = enumerate_rectangles(model.geometry.extent(), &plan)
                .map_err(|e| CliError::Config(format!("plan: {e}")))?;
            let table_path = dir.join("table.tsv");
            let cache = if cfg.output.reuse_table {
                load_cache(&table_path)
            } else {
                None
            };
            let fp = backend.fingerprint();
            let reused = cache
                .as_ref()
                .filter(|c| c.fingerprint == fp)
                .map_or(0, |c| {
                    indices.iter().filter(|i| c.values.contains_key(i)).count()
                });
            let t = Instant::now();
            let table = evaluate_table(backend, &model.geometry, &indices, &opts, cache.as_ref())
                .map_err(CliError::compute("evaluating subsystem information"))?;
            let e = ms(t);
            let t = Instant::now();
            let lattice = lattice_from_table(&table, &plan)
                .map_err(CliError::compute("local information"))?;
            let residual = decomposition_check(&lattice, &table)
                .map_err(CliError::compute("decomposition check"))?;
            let l = ms(t);
            write(&dir.join("lattice.tsv"), &tsv::lattice_to_string(&lattice))?;
            write(&table_path, &tsv::table_to_string(&table))?;
            let n = indices.len();
            (
                Lattice::Rectangular { lattice, table },
                plan.to_string(),
                n,
                reused,
                residual,
                e,
                l,
            )
        }
    };
    if residual > cfg.compute.residual_tolerance {
        return Err(CliError::Compute {
            context: "decomposition identity".into(),
            source: infolattice::Error::Construction(format!(
                "residual {residual:e} exceeds {:e}",
                cfg.compute.residual_tolerance
            )),
        });
    }

    let fit = match (&lattice, cfg.fit_kind()) {
        (Lattice::Rectangular { lattice, .. }, Some(kind)) => {
            let (fit, profile) = configured_fit(cfg, lattice, kind)?;
            write(
                &dir.join("per_scale.tsv"),
                &tsv::scale_map_to_string("per-scale", "l", &profile),
            )?;
            write(&dir.join("fit.tsv"), &tsv::fit_to_string(&fit, &profile))?;
            Some((fit, profile))
        }
        _ => None,
    };

    let manifest = Manifest {
        ilat_version: env!("CARGO_PKG_VERSION").to_string(),
        infolattice_version: infolattice::VERSION.to_string(),
        config_hash: cfg.hash(),
        model: cfg.model.name().to_string(),
        backend: model.backend.name().to_string(),
        plan: plan_name,
        fingerprint: backend.fingerprint().0,
        subsystems,
        reused_from_cache: reused,
        threads: threads.unwrap_or_else(rayon_threads),
        decomposition_residual: residual,
        timings: Timings {
            model_ms,
            entropies_ms,
            lattice_ms,
            total_ms: ms(start),
        },
    };
    let text = toml::to_string(&manifest).expect("manifest serializes");
    write(&dir.join("manifest.toml"), &text)?;
    Ok(ComputeOutcome {
        lattice,
        manifest,
        fit,
        dir,
    })
}

fn rayon_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Per-scale profile along the analysis axis and its configured fit.
fn configured_fit(
    cfg: &RunConfig,
    lattice: &InformationLattice,
    kind: FitKind,
) -> Result<(FitResult, BTreeMap<i64, f64>), CliError> {
    let axis = cfg.analysis_axis();
    let region = lattice
        .plan
        .region(lattice.extent)
        .expect("rectangular plan");
    if let SubsystemPlan::Quasi1d { axis: a, .. } = lattice.plan {
        if a != axis {
            return Err(CliError::Config(format!(
                "analysis.axis: `{}` differs from the quasi-1D plan axis `{}`",
                axis.name(),
                a.name()
            )));
        }
    }
    let q = quasi1d_from_lattice(lattice, &region, axis);
    let len = match axis {
        Axis::X => region.lx + 1,
        Axis::Y => region.ly + 1,
    } as usize;
    let fit = |e| CliError::Compute {
        context: format!("{} fit", kind.name()),
        source: e,
    };
    Ok(match kind {
        FitKind::Alpha => {
            let profile = avg_quasi1d_per_scale(&q, &region, axis);
            let w = cfg.fit_window(kind, len);
            (fit_alpha(&profile, &w).map_err(fit)?, profile)
        }
        FitKind::DecayLength | FitKind::PowerLaw => {
            let profile = quasi1d_per_scale(&q);
            let w = cfg.fit_window(kind, len);
            let r = if kind == FitKind::DecayLength {
                fit_decay_length(&profile, &w)
            } else {
                fit_power_law(&profile, &w)
            };
            (r.map_err(fit)?, profile)
        }
    })
}

/// Human-readable summary of a compute run.
pub fn compute_summary(o: &ComputeOutcome) -> String {
    let m = &o.manifest;
    let mut s = String::new();
    let _ = writeln!(s, "model       {} ({} backend)", m.model, m.backend);
    let _ = writeln!(s, "plan        {}", m.plan);
    let _ = writeln!(
        s,
        "subsystems  {} ({} from cache)",
        m.subsystems, m.reused_from_cache
    );
    let _ = writeln!(s, "residual    {:e}", m.decomposition_residual);
    if let Lattice::Rectangular { lattice, .. } = &o.lattice {
        let _ = writeln!(s, "total       {}", tsv::fmt_value(lattice.total()));
    }
    if let Some((fit, _)) = &o.fit {
        let _ = writeln!(s, "fit         {fit}");
    }
    let _ = writeln!(s, "time        {:.1} ms", m.timings.total_ms);
    let _ = writeln!(s, "output      {}", o.dir.display());
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    Multiscale,
    Quasi1d,
    PerScale,
}

impl Reduction {
    pub fn parse(s: &str) -> Option<Reduction> {
        match s {
            "multiscale" => Some(Reduction::Multiscale),
            "quasi1d" => Some(Reduction::Quasi1d),
            "per-scale" => Some(Reduction::PerScale),
            _ => None,
        }
    }
}

pub struct ReduceRequest {
    pub lattice: PathBuf,
    pub kinds: Vec<Reduction>,
    pub region: Option<SubsystemIndex>,
    pub axis: Axis,
    /// Also split the multiscale information into bulk and edge parts.
    pub bulk_zeta: Option<usize>,
    pub out: PathBuf,
}

pub fn load_lattice(path: &Path) -> Result<InformationLattice, CliError> {
    tsv::lattice_from_str(&read(path)?).map_err(input(path))
}

/// Write the requested reductions of a lattice file; returns a summary with
/// the total information and the topological entanglement estimates.
pub fn reduce(req: &ReduceRequest) -> Result<String, CliError> {
    let lattice = load_lattice(&req.lattice)?;
    let full = lattice
        .plan
        .region(lattice.extent)
        .expect("rectangular plan");
    let region = req.region.unwrap_or(full);
    if !full.contains(&region) {
        return Err(CliError::Config(format!(
            "--region {region} lies outside the lattice region {full}"
        )));
    }
    std::fs::create_dir_all(&req.out).map_err(|e| CliError::io(&req.out, e))?;
    let q = quasi1d_from_lattice(&lattice, &region, req.axis);
    for k in &req.kinds {
        match k {
            Reduction::Multiscale => write(
                &req.out.join("multiscale.tsv"),
                &tsv::pair_map_to_string(
                    "multiscale",
                    ["lx", "ly"],
                    &info_per_multiscale(&lattice, Some(&region)),
                ),
            )?,
            Reduction::Quasi1d => write(
                &req.out.join("quasi1d.tsv"),
                &tsv::pair_map_to_string("quasi1d", ["n", "l"], &q),
            )?,
            Reduction::PerScale => write(
                &req.out.join("per_scale.tsv"),
                &tsv::scale_map_to_string("per-scale", "l", &quasi1d_per_scale(&q)),
            )?,
        }
    }
    if let Some(z) = req.bulk_zeta {
        let bulk = bulk_region(lattice.extent, z)
            .map_err(|e| CliError::Config(format!("--bulk-zeta: {e}")))?;
        let (b, e) = bulk_edge_split(&lattice, &bulk, false)
            .map_err(CliError::compute("bulk/edge split"))?;
        write(
            &req.out.join("bulk.tsv"),
            &tsv::pair_map_to_string("multiscale", ["lx", "ly"], &b),
        )?;
        write(
            &req.out.join("edge.tsv"),
            &tsv::pair_map_to_string("multiscale", ["lx", "ly"], &e),
        )?;
    }
    let (top, sum) = tee_extract(&lattice);
    let mut s = String::new();
    let _ = writeln!(s, "total      {}", tsv::fmt_value(lattice.total()));
    let _ = writeln!(s, "gamma_top  {}", tsv::fmt_value(top));
    let _ = writeln!(s, "gamma_sum  {}", tsv::fmt_value(sum));
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FitRequestKind {
    Profile(FitKind),
    Direction,
}

impl FitRequestKind {
    pub fn parse(s: &str) -> Option<Self> {
        if s == "direction" {
            Some(FitRequestKind::Direction)
        } else {
            FitKind::parse(s).map(FitRequestKind::Profile)
        }
    }
}

pub struct FitRequest {
    pub input: PathBuf,
    pub kind: FitRequestKind,
    pub window: Option<(i64, i64)>,
    pub floor: Option<f64>,
    /// Profile length for the default power-law window; the largest scale + 1
    /// when absent.
    pub length: Option<usize>,
    pub out: PathBuf,
}

/// Fit a per-scale file, or the direction of a multiscale file; writes the
/// report to `out` and returns a one-line summary.
pub fn fit(req: &FitRequest) -> Result<String, CliError> {
    let text = read(&req.input)?;
    match req.kind {
        FitRequestKind::Direction => {
            let (kind, map) = tsv::pair_map_from_str(&text).map_err(input(&req.input))?;
            if kind != "multiscale" {
                return Err(CliError::Config(format!(
                    "direction fits need a multiscale file, got `{kind}`"
                )));
            }
            let weights: BTreeMap<(i64, i64), f64> =
                map.into_iter().filter(|((a, b), _)| a + b > 0).collect();
            let d = propagation_direction(&weights).map_err(CliError::compute("direction"))?;
            write(&req.out, &tsv::direction_to_string(&d, &weights))?;
            let mut s = format!(
                "direction ({:.6}, {:.6}) angle {:.6}",
                d.vector[0],
                d.vector[1],
                d.angle()
            );
            if d.unreliable {
                s.push_str(" [unreliable]");
            }
            Ok(s)
        }
        FitRequestKind::Profile(kind) => {
            let (_, profile) = tsv::scale_map_from_str(&text).map_err(input(&req.input))?;
            let len = req
                .length
                .unwrap_or_else(|| profile.keys().next_back().map_or(0, |l| *l as usize + 1));
            let mut w = match (req.window, kind) {
                (Some((a, b)), _) => FitWindow::new(a, b),
                (None, FitKind::DecayLength) => FitWindow::exponential_default(),
                (None, _) => FitWindow::power_law_default(len),
            };
            if let Some(f) = req.floor {
                w.floor = f;
            }
            let r = match kind {
                FitKind::DecayLength => fit_decay_length(&profile, &w),
                FitKind::PowerLaw => fit_power_law(&profile, &w),
                FitKind::Alpha => fit_alpha(&profile, &w),
            }
            .map_err(CliError::compute(format!("{} fit", kind.name())))?;
            write(&req.out, &tsv::fit_to_string(&r, &profile))?;
            Ok(r.to_string())
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub native: String,
    pub oracle: String,
    pub compared: usize,
    pub max_delta: f64,
    pub worst: Option<SubsystemIndex>,
}

impl std::fmt::Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} vs {}: {} subsystems, max |delta| = {:e}",
            self.native, self.oracle, self.compared, self.max_delta
        )?;
        if let Some(w) = self.worst {
            write!(f, " at {w}")?;
        }
        Ok(())
    }
}

/// Information of every subsystem of the plan from the configured backend and
/// an independent one; fails with [`CliError::OracleMismatch`] when they differ
/// by the configured tolerance or more.
pub fn oracle(cfg: &RunConfig) -> Result<OracleReport, CliError> {
    let model = build_model(cfg)?;
    let other = oracle_counterpart(cfg, &model)?;
    let opts = BuildOptions {
        threads: threads(cfg)?,
    };
    let (a, b) = (model.backend.as_dyn(), other.as_dyn());
    let mut max_delta = 0.0f64;
    let mut worst = None;
    let compared = match &model.family {
        Some(family) => {
            for m in family.members() {
                let va = a
                    .information(m)
                    .map_err(CliError::compute("native backend"))?;
                let vb = b
                    .information(m)
                    .map_err(CliError::compute("oracle backend"))?;
                max_delta = max_delta.max((va - vb).abs());
            }
            family.len()
        }
        None => {
            let plan = cfg.subsystem_plan()?;
            let indices = enumerate_rectangles(model.geometry.extent(), &plan)
                .map_err(|e| CliError::Config(format!("plan: {e}")))?;
            let ta = evaluate_table(a, &model.geometry, &indices, &opts, None)
                .map_err(CliError::compute("native backend"))?;
            let tb = evaluate_table(b, &model.geometry, &indices, &opts, None)
                .map_err(CliError::compute("oracle backend"))?;
            for (k, va) in &ta.values {
                let d = (va - tb.values[k]).abs();
                if d > max_delta || worst.is_none() {
                    max_delta = max_delta.max(d);
                    worst = Some(*k);
                }
            }
            indices.len()
        }
    };
    let report = OracleReport {
        native: model.backend.name().to_string(),
        oracle: other.name().to_string(),
        compared,
        max_delta,
        worst,
    };
    if max_delta >= cfg.compute.oracle_tolerance {
        return Err(CliError::OracleMismatch {
            max_delta,
            index: worst.unwrap_or(SubsystemIndex::new(0, 0, 0, 0)),
            tolerance: cfg.compute.oracle_tolerance,
        });
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Every lattice entry at the center of its rectangle.
    Lattice,
    /// Total local information per scale `(lx, ly)`.
    Multiscale,
    /// Quasi-1D local information on the `(n, l)` triangle.
    Quasi1d,
    /// Quasi-1D information per scale.
    PerScale,
    /// Site positions of the model geometry.
    Sites,
}

impl Figure {
    pub fn parse(s: &str) -> Option<Figure> {
        match s {
            "lattice" => Some(Figure::Lattice),
            "multiscale" => Some(Figure::Multiscale),
            "quasi1d" => Some(Figure::Quasi1d),
            "per-scale" => Some(Figure::PerScale),
            "sites" => Some(Figure::Sites),
            _ => None,
        }
    }
}

fn plot_header(figure: &str) -> String {
    format!(
        "{}\n# kind plot\n# figure {figure}\nx\ty\tweight\n",
        tsv::MAGIC
    )
}

/// Plot data with `x y weight` columns for a lattice file.
pub fn export_plot(
    lattice: &InformationLattice,
    figure: Figure,
    axis: Axis,
) -> Result<String, CliError> {
    let region = lattice
        .plan
        .region(lattice.extent)
        .expect("rectangular plan");
    let mut s;
    match figure {
        Figure::Lattice => {
            s = plot_header("lattice");
            for (k, v) in &lattice.entries {
                let x = k.nx as f64 + k.lx as f64 / 2.0;
                let y = k.ny as f64 + k.ly as f64 / 2.0;
                let _ = writeln!(s, "{x}\t{y}\t{}", tsv::fmt_value(*v));
            }
        }
        Figure::Multiscale => {
            s = plot_header("multiscale");
            for ((a, b), v) in info_per_multiscale(lattice, None) {
                let _ = writeln!(s, "{a}\t{b}\t{}", tsv::fmt_value(v));
            }
        }
        Figure::Quasi1d => {
            s = plot_header(&format!("quasi1d-{}", axis.name()));
            for ((n, l), v) in quasi1d_from_lattice(lattice, &region, axis) {
                let x = n as f64 + l as f64 / 2.0;
                let _ = writeln!(s, "{x}\t{l}\t{}", tsv::fmt_value(v));
            }
        }
        Figure::PerScale => {
            s = plot_header(&format!("per-scale-{}", axis.name()));
            for (l, v) in quasi1d_per_scale(&quasi1d_from_lattice(lattice, &region, axis)) {
                let _ = writeln!(s, "{l}\t{}\t{}", tsv::fmt_value(v), tsv::fmt_value(v));
            }
        }
        Figure::Sites => {
            return Err(CliError::Config("the sites figure needs --config".into()));
        }
    }
    Ok(s)
}

/// Site positions of a model, with the site id as weight. Edge qubits sit at
/// edge midpoints in vertex units of the labeled region.
pub fn export_sites(model: &Model) -> String {
    let mut s = plot_header("sites");
    match &model.geometry {
        Geometry::Sites { nx, ny } => {
            for y in 0..*ny {
                for x in 0..*nx {
                    let _ = writeln!(s, "{x}\t{y}\t{}", x + nx * y);
                }
            }
        }
        Geometry::Edges { layout, origin, .. } => {
            for e in 0..layout.num_edges() {
                let (x2, y2) = layout.midpoint2(e);
                let x = x2 as f64 / 2.0 - origin.0 as f64;
                let y = y2 as f64 / 2.0 - origin.1 as f64;
                let _ = writeln!(s, "{x}\t{y}\t{e}");
            }
        }
    }
    s
}

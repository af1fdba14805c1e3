//! Run configuration files.
//!
//! A run is described by a TOML file with five sections. Only `[model]` is
//! required, and every physical parameter in it must be given explicitly;
//! the other sections default to the whole-system lattice written to `out/`.
//!
//! ```toml
//! [model]
//! kind = "anderson"
//! nx = 12
//! ny = 12
//! tx = 1.5
//! ty = 1.0
//! w = 10.0
//! seed = 0
//! filling = "half"
//!
//! [plan]
//! kind = "quasi1d"
//! axis = "x"
//!
//! [analysis]
//! fit = "decay-length"
//! window = [2, 11]
//!
//! [output]
//! dir = "out/anderson"
//!
//! [compute]
//! threads = 4
//! ```

use crate::error::CliError;
use infolattice::analysis::{bulk_region, edge_strip, FitKind, FitWindow};
use infolattice::plan::{enumerate_rectangles, Axis, SubsystemPlan};
use infolattice::table::FingerprintBuilder;
use infolattice::SubsystemIndex;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    #[serde(default)]
    pub plan: PlanSpec,
    #[serde(default)]
    pub analysis: AnalysisSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub compute: ComputeSpec,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Filling {
    Count(usize),
    Named(FillingRule),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FillingRule {
    Half,
}

impl Filling {
    pub fn particles(self, modes: usize) -> usize {
        match self {
            Filling::Count(n) => n,
            Filling::Named(FillingRule::Half) => modes / 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StringKind {
    Electric,
    Magnetic,
}

/// A horizontal Pauli string between vertices `(x0, y)` and `(x1, y)` of the
/// patch; creates an anyon pair at its ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StringSpec {
    pub kind: StringKind,
    pub y: usize,
    pub x0: usize,
    pub x1: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelSpec {
    Anderson {
        nx: usize,
        ny: usize,
        tx: f64,
        ty: f64,
        w: f64,
        seed: Option<u64>,
        filling: Filling,
    },
    Pip {
        nx: usize,
        ny: usize,
        t: f64,
        delta: f64,
        mu: f64,
    },
    Singlets {
        nx: usize,
        ny: usize,
        pairs: Vec<[[usize; 2]; 2]>,
    },
    Cat {
        nx: usize,
        ny: usize,
        phase: f64,
    },
    Triangle {},
    ToricOpen {
        px: usize,
        py: usize,
        #[serde(default)]
        strings: Vec<StringSpec>,
    },
    ToricPlane {
        n: usize,
        margin: usize,
        #[serde(default)]
        strings: Vec<StringSpec>,
    },
    Twist {
        px: usize,
        py: usize,
        start: [usize; 2],
        length: usize,
        rough: [usize; 2],
    },
    TwistReference {
        px: usize,
        py: usize,
        rough: [usize; 2],
    },
}

impl ModelSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Anderson { .. } => "anderson",
            ModelSpec::Pip { .. } => "pip",
            ModelSpec::Singlets { .. } => "singlets",
            ModelSpec::Cat { .. } => "cat",
            ModelSpec::Triangle {} => "triangle",
            ModelSpec::ToricOpen { .. } => "toric-open",
            ModelSpec::ToricPlane { .. } => "toric-plane",
            ModelSpec::Twist { .. } => "twist",
            ModelSpec::TwistReference { .. } => "twist-reference",
        }
    }

    /// Extent of the rectangle index grid.
    pub fn extent(&self) -> (usize, usize) {
        match *self {
            ModelSpec::Anderson { nx, ny, .. }
            | ModelSpec::Pip { nx, ny, .. }
            | ModelSpec::Singlets { nx, ny, .. }
            | ModelSpec::Cat { nx, ny, .. } => (nx, ny),
            ModelSpec::Triangle {} => (3, 1),
            ModelSpec::ToricOpen { px, py, .. }
            | ModelSpec::Twist { px, py, .. }
            | ModelSpec::TwistReference { px, py, .. } => (px + 1, py + 1),
            ModelSpec::ToricPlane { n, .. } => (n + 1, n + 1),
        }
    }

    pub fn seed_mut(&mut self) -> Option<&mut Option<u64>> {
        match self {
            ModelSpec::Anderson { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlanKind {
    #[default]
    Full,
    Region,
    Bulk,
    Quasi1d,
    EdgeStrip,
    Explicit,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanSpec {
    #[serde(default)]
    pub kind: PlanKind,
    /// `[nx, ny, lx, ly]`; the whole system when absent.
    pub region: Option<[i64; 4]>,
    pub axis: Option<String>,
    /// Strip height for `edge-strip`, edge distance for `bulk`.
    pub zeta: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSpec {
    pub fit: Option<String>,
    pub window: Option<[i64; 2]>,
    pub floor: Option<f64>,
    pub axis: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    /// Reuse a `table.tsv` already in `dir` when its fingerprint matches.
    #[serde(default = "yes")]
    pub reuse_table: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: default_dir(),
            reuse_table: true,
        }
    }
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

fn yes() -> bool {
    true
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendChoice {
    /// Gaussian for free fermions, stabilizer for toric codes, dense for the
    /// reference states and twist patches.
    #[default]
    Auto,
    Dense,
    Stabilizer,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComputeSpec {
    pub threads: Option<usize>,
    #[serde(default = "default_dense_limit")]
    pub dense_limit: usize,
    #[serde(default)]
    pub backend: BackendChoice,
    #[serde(default = "default_oracle_tolerance")]
    pub oracle_tolerance: f64,
    #[serde(default = "default_residual_tolerance")]
    pub residual_tolerance: f64,
}

impl Default for ComputeSpec {
    fn default() -> Self {
        Self {
            threads: None,
            dense_limit: default_dense_limit(),
            backend: BackendChoice::Auto,
            oracle_tolerance: default_oracle_tolerance(),
            residual_tolerance: default_residual_tolerance(),
        }
    }
}

fn default_dense_limit() -> usize {
    infolattice::backend::dense::DEFAULT_DENSE_LIMIT
}

fn default_oracle_tolerance() -> f64 {
    1e-9
}

fn default_residual_tolerance() -> f64 {
    1e-8
}

fn parse_axis(s: Option<&str>, field: &str) -> Result<Axis, CliError> {
    match s {
        None => Ok(Axis::X),
        Some(a) => {
            Axis::parse(a).ok_or_else(|| CliError::Config(format!("{field}: unknown axis `{a}`")))
        }
    }
}

/// The parser's message, pointing at the offending key when the reported span
/// is only the enclosing section.
fn locate(text: &str, e: &toml::de::Error) -> String {
    let msg = e.to_string();
    let Some(key) = msg
        .split("unknown field `")
        .nth(1)
        .and_then(|r| r.split('`').next())
    else {
        return msg;
    };
    let line = text.lines().position(|l| {
        l.trim_start()
            .strip_prefix(key)
            .is_some_and(|r| r.trim_start().starts_with('='))
    });
    match line {
        Some(n) => format!("line {}: unknown field `{key}`\n{msg}", n + 1),
        None => msg,
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| CliError::Config(locate(text, &e)))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            e => e,
        })
    }

    /// Replace the disorder seed.
    pub fn override_seed(&mut self, seed: u64) -> Result<(), CliError> {
        match self.model.seed_mut() {
            Some(s) => {
                *s = Some(seed);
                Ok(())
            }
            None => Err(CliError::Config(format!(
                "model `{}` takes no seed",
                self.model.name()
            ))),
        }
    }

    /// Hash of the canonical serialization; independent of comments, layout
    /// and key order in the source file.
    pub fn hash(&self) -> String {
        let canonical = toml::to_string(self).expect("config serializes");
        FingerprintBuilder::new("run-config")
            .bytes(canonical.as_bytes())
            .finish()
            .0
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        match &self.model {
            ModelSpec::Anderson { w, seed, .. } => {
                if *w > 0.0 && seed.is_none() {
                    return bad("model.seed: required when model.w > 0".into());
                }
            }
            ModelSpec::Triangle {} if self.plan.kind != PlanKind::Explicit => {
                return bad("plan.kind: the triangle state needs plan.kind = \"explicit\"".into());
            }
            _ => {}
        }
        if self.plan.kind == PlanKind::Explicit && !matches!(self.model, ModelSpec::Triangle {}) {
            return bad(format!(
                "plan.kind: no explicit family is defined for model `{}`",
                self.model.name()
            ));
        }
        if self.compute.threads == Some(0) {
            return bad("compute.threads: must be at least 1".into());
        }
        if let Some(f) = &self.analysis.fit {
            if FitKind::parse(f).is_none() {
                return bad(format!("analysis.fit: unknown fit `{f}`"));
            }
        }
        if let Some([a, b]) = self.analysis.window {
            if a < 0 || b < a {
                return bad(format!("analysis.window: [{a}, {b}] is not a scale range"));
            }
        }
        parse_axis(self.analysis.axis.as_deref(), "analysis.axis")?;
        if self.plan.kind != PlanKind::Explicit {
            let plan = self.subsystem_plan()?;
            enumerate_rectangles(self.model.extent(), &plan)
                .map_err(|e| CliError::Config(format!("plan: {e}")))?;
        }
        Ok(())
    }

    fn region(&self) -> SubsystemIndex {
        let (ex, ey) = self.model.extent();
        match self.plan.region {
            Some([a, b, c, d]) => SubsystemIndex::new(a, b, c, d),
            None => SubsystemIndex::new(0, 0, ex as i64 - 1, ey as i64 - 1),
        }
    }

    /// The rectangular plan; explicit families are supplied by the model.
    pub fn subsystem_plan(&self) -> Result<SubsystemPlan, CliError> {
        let extent = self.model.extent();
        let cfg = |e: infolattice::Error| CliError::Config(format!("plan: {e}"));
        Ok(match self.plan.kind {
            PlanKind::Full => SubsystemPlan::Full,
            PlanKind::Region => {
                if self.plan.region.is_none() {
                    return Err(CliError::Config(
                        "plan.region: required for kind \"region\"".into(),
                    ));
                }
                SubsystemPlan::Region(self.region())
            }
            PlanKind::Bulk => match (self.plan.region, self.plan.zeta) {
                (Some(_), None) => SubsystemPlan::Bulk(self.region()),
                (None, Some(z)) => SubsystemPlan::Bulk(bulk_region(extent, z).map_err(cfg)?),
                _ => {
                    return Err(CliError::Config(
                        "plan: kind \"bulk\" needs exactly one of plan.region and plan.zeta".into(),
                    ))
                }
            },
            PlanKind::Quasi1d => SubsystemPlan::Quasi1d {
                region: self.region(),
                axis: parse_axis(self.plan.axis.as_deref(), "plan.axis")?,
            },
            PlanKind::EdgeStrip => {
                let z = self.plan.zeta.ok_or_else(|| {
                    CliError::Config("plan.zeta: required for kind \"edge-strip\"".into())
                })?;
                SubsystemPlan::Quasi1d {
                    region: edge_strip(extent, z).map_err(cfg)?,
                    axis: Axis::X,
                }
            }
            PlanKind::Explicit => {
                return Err(CliError::Config(
                    "plan: explicit families come from the model".into(),
                ))
            }
        })
    }

    pub fn fit_kind(&self) -> Option<FitKind> {
        self.analysis.fit.as_deref().and_then(FitKind::parse)
    }

    pub fn analysis_axis(&self) -> Axis {
        parse_axis(self.analysis.axis.as_deref(), "analysis.axis").unwrap_or(Axis::X)
    }

    /// Fit window from the analysis section, or the default for `kind` on a
    /// profile of `len` scales.
    pub fn fit_window(&self, kind: FitKind, len: usize) -> FitWindow {
        let mut w = match (self.analysis.window, kind) {
            (Some([a, b]), _) => FitWindow::new(a, b),
            (None, FitKind::DecayLength) => FitWindow::exponential_default(),
            (None, _) => FitWindow::power_law_default(len),
        };
        if let Some(f) = self.analysis.floor {
            w.floor = f;
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANDERSON: &str = r#"
[model]
kind = "anderson"
nx = 4
ny = 3
tx = 1.5
ty = 1.0
w = 2.0
seed = 3
filling = "half"
"#;

    #[test]
    fn parses_with_defaults() {
        let c = RunConfig::from_toml(ANDERSON).unwrap();
        assert_eq!(c.plan.kind, PlanKind::Full);
        assert_eq!(c.output.dir, PathBuf::from("out"));
        assert_eq!(c.model.extent(), (4, 3));
    }

    #[test]
    fn hash_ignores_layout_but_not_values() {
        let a = RunConfig::from_toml(ANDERSON).unwrap();
        let b = RunConfig::from_toml(&format!("# comment\n{ANDERSON}\n")).unwrap();
        let c = RunConfig::from_toml(&ANDERSON.replace("w = 2.0", "w = 2.5")).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_ne!(a.hash(), c.hash());
    }

    #[test]
    fn seed_required_with_disorder() {
        let e = RunConfig::from_toml(&ANDERSON.replace("seed = 3\n", "")).unwrap_err();
        assert!(e.to_string().contains("model.seed"), "{e}");
    }

    #[test]
    fn unknown_field_names_line() {
        let e = RunConfig::from_toml(&ANDERSON.replace("ty = 1.0", "tyy = 1.0")).unwrap_err();
        let m = e.to_string();
        assert!(m.contains("tyy") && m.contains("line 7:"), "{m}");
    }

    #[test]
    fn bulk_touching_edge_is_a_config_error() {
        let text = format!("{ANDERSON}\n[plan]\nkind = \"bulk\"\nregion = [0, 0, 2, 1]\n");
        let e = RunConfig::from_toml(&text).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("edge"), "{e}");
    }
}

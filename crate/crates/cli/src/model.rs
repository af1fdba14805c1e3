//! Builds backends, geometries and oracle counterparts from a [`ModelSpec`].

use crate::config::{BackendChoice, ModelSpec, RunConfig, StringKind, StringSpec};
use crate::error::CliError;
use infolattice::backend::dense::{DenseState, C64};
use infolattice::backend::gaussian::fock::FockState;
use infolattice::backend::gaussian::CorrelationState;
use infolattice::backend::stabilizer::StabilizerTableau;
use infolattice::backend::EntropyBackend;
use infolattice::family::GenericFamily;
use infolattice::geometry::{EdgeLayout, Geometry};
use infolattice::models::anderson::{anderson_ground_state, anderson_hamiltonian, AndersonParams};
use infolattice::models::pip::{pip_bdg_hamiltonian, pip_ground_state, PipParams};
use infolattice::models::reference::{
    cat_state, cat_tableau, singlet_state, singlet_tableau, triangle_state, Site,
};
use infolattice::models::toric::{
    electric_string, magnetic_string, toric_open_patch, toric_plane_region,
};
use infolattice::models::twist::{
    project_ground_state, toric_line_defect, toric_rough_patch, DefectPath, RoughSegment,
};

pub enum Backend {
    Gaussian(CorrelationState),
    Stabilizer(StabilizerTableau),
    Dense(DenseState),
    Fock(FockState),
}

impl Backend {
    pub fn as_dyn(&self) -> &dyn EntropyBackend {
        match self {
            Backend::Gaussian(b) => b,
            Backend::Stabilizer(b) => b,
            Backend::Dense(b) => b,
            Backend::Fock(b) => b,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::Gaussian(_) => "gaussian",
            Backend::Stabilizer(_) => "stabilizer",
            Backend::Dense(_) => "dense",
            Backend::Fock(_) => "fock",
        }
    }
}

pub struct Model {
    pub backend: Backend,
    pub geometry: Geometry,
    /// Subsystem family for models without a rectangular geometry.
    pub family: Option<GenericFamily>,
}

fn anderson_params(spec: &ModelSpec) -> Option<AndersonParams> {
    match *spec {
        ModelSpec::Anderson {
            nx,
            ny,
            tx,
            ty,
            w,
            seed,
            ..
        } => Some(AndersonParams {
            nx,
            ny,
            tx,
            ty,
            w,
            seed: seed.unwrap_or(0),
        }),
        _ => None,
    }
}

fn pip_params(spec: &ModelSpec) -> Option<PipParams> {
    match *spec {
        ModelSpec::Pip {
            nx,
            ny,
            t,
            delta,
            mu,
        } => Some(PipParams {
            nx,
            ny,
            t,
            delta,
            mu,
        }),
        _ => None,
    }
}

fn sites(pairs: &[[[usize; 2]; 2]]) -> Vec<(Site, Site)> {
    pairs
        .iter()
        .map(|[a, b]| ((a[0], a[1]), (b[0], b[1])))
        .collect()
}

fn apply_strings(
    tableau: &mut StabilizerTableau,
    layout: &EdgeLayout,
    strings: &[StringSpec],
) -> Result<(), CliError> {
    for s in strings {
        let (limit_x, limit_y) = (layout.px, layout.py);
        if s.x0 > s.x1 || s.x1 > limit_x || s.y > limit_y {
            return Err(CliError::Config(format!(
                "model.strings: string y={} x={}..{} outside the {}x{} patch",
                s.y, s.x0, s.x1, limit_x, limit_y
            )));
        }
        let p = match s.kind {
            StringKind::Electric => electric_string(layout, s.y, s.x0, s.x1),
            StringKind::Magnetic => magnetic_string(layout, s.y, s.x0, s.x1),
        };
        tableau.apply_pauli(&p);
    }
    Ok(())
}

fn triangle_family() -> GenericFamily {
    GenericFamily::new(vec![
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![1, 2],
        vec![0, 2],
        vec![0, 1, 2],
    ])
    .expect("closed family")
}

fn twist_parts(rough: [usize; 2]) -> RoughSegment {
    RoughSegment {
        x0: rough[0],
        x1: rough[1],
    }
}

/// Stabilizer tableau and edge geometry of the toric-code models.
fn toric(spec: &ModelSpec) -> Result<Option<(StabilizerTableau, Geometry)>, CliError> {
    let build = CliError::compute("toric code construction");
    Ok(match spec {
        ModelSpec::ToricOpen { px, py, strings } => {
            let patch = toric_open_patch(*px, *py).map_err(build)?;
            let mut t = patch.tableau.clone();
            apply_strings(&mut t, &patch.layout, strings)?;
            Some((t, patch.geometry()))
        }
        ModelSpec::ToricPlane { n, margin, strings } => {
            let (patch, geo) = toric_plane_region(*n, *margin).map_err(build)?;
            let mut t = patch.tableau.clone();
            apply_strings(&mut t, &patch.layout, strings)?;
            Some((t, geo))
        }
        ModelSpec::Twist {
            px,
            py,
            start,
            length,
            rough,
        } => {
            let path = DefectPath {
                start: (start[0], start[1]),
                length: *length,
            };
            let p = toric_line_defect(*px, *py, path, twist_parts(*rough)).map_err(build)?;
            Some((p.tableau, Geometry::edges(*px, *py)))
        }
        ModelSpec::TwistReference { px, py, rough } => {
            let p = toric_rough_patch(*px, *py, twist_parts(*rough)).map_err(build)?;
            Some((p.tableau, Geometry::edges(*px, *py)))
        }
        _ => None,
    })
}

/// The model with its configured backend.
pub fn build_model(cfg: &RunConfig) -> Result<Model, CliError> {
    let spec = &cfg.model;
    let limit = cfg.compute.dense_limit;
    let choice = cfg.compute.backend;
    let model = |backend, geometry| Model {
        backend,
        geometry,
        family: None,
    };
    if let Some((tableau, geometry)) = toric(spec)? {
        let dense_default = matches!(
            spec,
            ModelSpec::Twist { .. } | ModelSpec::TwistReference { .. }
        );
        let dense = match choice {
            BackendChoice::Dense => true,
            BackendChoice::Stabilizer => false,
            BackendChoice::Auto => dense_default,
        };
        let backend = if dense {
            Backend::Dense(
                project_ground_state(&tableau, limit)
                    .map_err(CliError::compute("dense ground state"))?,
            )
        } else {
            Backend::Stabilizer(tableau)
        };
        return Ok(model(backend, geometry));
    }
    let fail = CliError::compute(format!("building model `{}`", spec.name()));
    match spec {
        ModelSpec::Anderson {
            nx, ny, filling, ..
        } => {
            let p = anderson_params(spec).expect("anderson");
            let backend = match choice {
                BackendChoice::Auto => Backend::Gaussian(
                    anderson_ground_state(&p, Some(filling.particles(nx * ny))).map_err(fail)?,
                ),
                BackendChoice::Dense => {
                    Backend::Fock(anderson_fock(&p, filling.particles(nx * ny)).map_err(fail)?)
                }
                BackendChoice::Stabilizer => return Err(no_backend(spec, "stabilizer")),
            };
            Ok(model(backend, Geometry::sites(*nx, *ny)))
        }
        ModelSpec::Pip { nx, ny, .. } => {
            let p = pip_params(spec).expect("pip");
            let backend = match choice {
                BackendChoice::Auto => Backend::Gaussian(pip_ground_state(&p).map_err(fail)?),
                BackendChoice::Dense => {
                    let h = pip_bdg_hamiltonian(&p).map_err(fail)?;
                    Backend::Fock(
                        FockState::bdg(&h).map_err(CliError::compute("p+ip Fock ground state"))?,
                    )
                }
                BackendChoice::Stabilizer => return Err(no_backend(spec, "stabilizer")),
            };
            Ok(model(backend, Geometry::sites(*nx, *ny)))
        }
        ModelSpec::Singlets { nx, ny, pairs } => {
            let pairs = sites(pairs);
            let backend = match choice {
                BackendChoice::Stabilizer => {
                    Backend::Stabilizer(singlet_tableau(*nx, *ny, &pairs).map_err(fail)?)
                }
                _ => Backend::Dense(
                    singlet_state(*nx, *ny, &pairs)
                        .map_err(fail)?
                        .with_limit(limit),
                ),
            };
            Ok(model(backend, Geometry::sites(*nx, *ny)))
        }
        ModelSpec::Cat { nx, ny, phase } => {
            let backend = match choice {
                BackendChoice::Stabilizer => {
                    Backend::Stabilizer(cat_tableau(nx * ny).map_err(fail)?)
                }
                _ => Backend::Dense(cat_state(nx * ny, *phase).map_err(fail)?.with_limit(limit)),
            };
            Ok(model(backend, Geometry::sites(*nx, *ny)))
        }
        ModelSpec::Triangle {} => Ok(Model {
            backend: Backend::Dense(triangle_state()),
            geometry: Geometry::sites(3, 1),
            family: Some(triangle_family()),
        }),
        _ => unreachable!("toric models handled above"),
    }
}

fn no_backend(spec: &ModelSpec, backend: &str) -> CliError {
    CliError::Config(format!(
        "compute.backend: model `{}` has no {backend} form",
        spec.name()
    ))
}

fn anderson_fock(p: &AndersonParams, filling: usize) -> infolattice::Result<FockState> {
    let h = anderson_hamiltonian(p)?.map(|x| C64::new(x, 0.0));
    FockState::number_conserving(&h, filling)
}

/// An independent backend for the same state, used by `oracle`. Free fermions
/// are checked against exact Fock-space ground states, stabilizer states
/// against dense projections, and dense reference states against their
/// stabilizer forms.
pub fn oracle_counterpart(cfg: &RunConfig, model: &Model) -> Result<Backend, CliError> {
    let spec = &cfg.model;
    let limit = cfg.compute.dense_limit;
    let n = model.backend.as_dyn().num_sites();
    let too_big = || {
        CliError::Config(format!(
            "oracle: {n} sites exceed the dense limit of {limit}; use a smaller instance"
        ))
    };
    let fail = CliError::compute("building oracle state");
    match (&model.backend, spec) {
        (
            Backend::Gaussian(_),
            ModelSpec::Anderson {
                nx, ny, filling, ..
            },
        ) => {
            if n > limit {
                return Err(too_big());
            }
            let p = anderson_params(spec).expect("anderson");
            Ok(Backend::Fock(
                anderson_fock(&p, filling.particles(nx * ny)).map_err(fail)?,
            ))
        }
        (Backend::Gaussian(_), ModelSpec::Pip { .. }) => {
            if n > limit {
                return Err(too_big());
            }
            let h = pip_bdg_hamiltonian(&pip_params(spec).expect("pip")).map_err(fail)?;
            Ok(Backend::Fock(
                FockState::bdg(&h).map_err(CliError::compute("building oracle state"))?,
            ))
        }
        (Backend::Fock(_), ModelSpec::Anderson { filling, .. }) => {
            let p = anderson_params(spec).expect("anderson");
            Ok(Backend::Gaussian(
                anderson_ground_state(&p, Some(filling.particles(n))).map_err(fail)?,
            ))
        }
        (Backend::Fock(_), ModelSpec::Pip { .. }) => Ok(Backend::Gaussian(
            pip_ground_state(&pip_params(spec).expect("pip")).map_err(fail)?,
        )),
        (Backend::Stabilizer(t), _) => {
            if n > limit {
                return Err(too_big());
            }
            if !t.is_pure() {
                return Err(CliError::Config(
                    "oracle: mixed stabilizer states have no dense oracle".into(),
                ));
            }
            Ok(Backend::Dense(
                project_ground_state(t, limit).map_err(fail)?,
            ))
        }
        (Backend::Dense(_), ModelSpec::Singlets { nx, ny, pairs }) => Ok(Backend::Stabilizer(
            singlet_tableau(*nx, *ny, &sites(pairs)).map_err(fail)?,
        )),
        (Backend::Dense(_), ModelSpec::Cat { nx, ny, .. }) => {
            Ok(Backend::Stabilizer(cat_tableau(nx * ny).map_err(fail)?))
        }
        (
            Backend::Dense(_),
            ModelSpec::TwistReference { .. }
            | ModelSpec::ToricOpen { .. }
            | ModelSpec::ToricPlane { .. },
        ) => {
            let (t, _) = toric(spec)?.expect("toric model");
            Ok(Backend::Stabilizer(t))
        }
        _ => Err(CliError::Config(format!(
            "oracle: no independent backend for model `{}`",
            spec.name()
        ))),
    }
}

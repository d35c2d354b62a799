//! Run configuration: a single JSON document per run, with command line
//! flags overriding file fields. The fully resolved configuration is echoed
//! into every output file for reproducibility.

use fracop::laplacian::{eigenpairs, DirichletModel};
use fracop::{QuadScheme, QuadratureSpec, SpectralOperator};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Where the base operator comes from.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorSource {
    Dirichlet {
        length: f64,
        order: u32,
        modes: usize,
        quadrature_points: usize,
    },
    Eigenvalues(Vec<f64>),
    File(PathBuf),
}

impl Default for OperatorSource {
    fn default() -> Self {
        OperatorSource::Dirichlet {
            length: std::f64::consts::PI,
            order: 1,
            modes: 16,
            quadrature_points: 513,
        }
    }
}

impl OperatorSource {
    /// Realize the operator. Dirichlet sources go through the model
    /// validation; file sources are validated on deserialization.
    pub fn realize(&self) -> Result<Arc<SpectralOperator>, String> {
        match self {
            OperatorSource::Dirichlet {
                length,
                order,
                modes,
                quadrature_points,
            } => {
                let model = DirichletModel::new(*length, *order, *modes, *quadrature_points)
                    .map_err(|e| e.to_string())?;
                Ok(eigenpairs(&model).map_err(|e| e.to_string())?.operator().clone())
            }
            OperatorSource::Eigenvalues(values) => Ok(Arc::new(
                SpectralOperator::new("explicit", values.clone()).map_err(|e| e.to_string())?,
            )),
            OperatorSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                Ok(Arc::new(
                    SpectralOperator::from_json(&text).map_err(|e| e.to_string())?,
                ))
            }
        }
    }
}

/// Optional fields as they appear in a config file. Every field can also be
/// set (and is overridden) by a command line flag.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub operator: Option<OperatorSource>,
    pub horizon: Option<f64>,
    pub time_steps: Option<usize>,
    pub x_points: Option<usize>,
    pub initial: Option<String>,
    pub dump_coeffs: Option<bool>,
    pub tolerance_scale: Option<f64>,
    pub quadrature_nodes: Option<usize>,
    pub quadrature_scheme: Option<String>,
    pub quadrature_tolerance: Option<f64>,
    pub spectrum_tag: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid config JSON: {e}"))
    }
}

pub fn parse_scheme(name: &str) -> Result<QuadScheme, String> {
    match name {
        "gauss-legendre-split" | "gl" => Ok(QuadScheme::GaussLegendreSplit),
        "tanh-sinh" | "de" => Ok(QuadScheme::TanhSinh),
        other => Err(format!(
            "unknown quadrature scheme '{other}' (expected gauss-legendre-split or tanh-sinh)"
        )),
    }
}

pub fn build_quadrature(
    file: &FileConfig,
    nodes: Option<usize>,
    scheme: Option<&str>,
    tolerance: Option<f64>,
) -> Result<QuadratureSpec, String> {
    let default = QuadratureSpec::default();
    let nodes = nodes
        .or(file.quadrature_nodes)
        .unwrap_or(default.nodes_per_panel);
    let scheme = match scheme.map(str::to_string).or(file.quadrature_scheme.clone()) {
        Some(name) => parse_scheme(&name)?,
        None => default.scheme,
    };
    let tolerance = tolerance
        .or(file.quadrature_tolerance)
        .unwrap_or(default.tolerance);
    QuadratureSpec::new(nodes, scheme, tolerance).map_err(|e| e.to_string())
}

/// Parse `--eigenvalues "1,4,9"`.
pub fn parse_eigenvalue_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| format!("invalid eigenvalue '{part}': {e}"))
        })
        .collect()
}

//! Versioned JSON model files.
//!
//! A model file is a single JSON document with a `schema_version` field
//! (currently 1) and a `kind` of `"modal"`, `"quasipoly"` or `"preset"`.
//! Complex numbers are encoded as `[re, im]` pairs and matrices as row-major
//! nested arrays. Every invariant of the target domain type is enforced at
//! load time; schema violations name the offending JSON path.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "kind": "quasipoly",
//!   "dim": 1,
//!   "delays": [0.0, 1.0],
//!   "neutral_coeffs": [[[[0.0, 0.0]]], [[[0.0, 0.0]]]],
//!   "retarded_coeffs": [[[[0.0, 0.0]]], [[[1.0, 0.0]]]]
//! }
//! ```
//!
//! encodes `Δ(z) = z − e^{−z}`: the coupling convention maps the jump at
//! delay `h_j` to the coefficient of `e^{−z h_j}`, with the `j = 0` entry
//! carrying the undelayed term.
//!
//! Presets are named generators with parameters:
//!
//! * `"wave"`: `{ "k_max": 8, "mu": 0.5 }` (`mu` optional, default 0.5);
//! * `"finite_ode"`: `{ "lambdas": [[re, im], …], "couplings": [[…]],
//!   "nu": 0.0 }` (couplings and `nu` optional);
//! * `"scalar_delay"`: `{ "gain": 1.0, "delay": 1.0, "neutral_gain": 0.0 }`
//!   (all optional).

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::quasipoly::QuasiPolynomial;
use crate::spectral::{ModalSystem, SpectralMode};
use crate::{preset, Complex64, Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// `[re, im]` encoding of one complex number.
pub type ComplexPair = [f64; 2];
/// Row-major complex matrix encoding.
pub type MatrixDoc = Vec<Vec<ComplexPair>>;

/// Serde-level document; validated into a [`LoadedModel`] by [`parse_model`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDoc {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: ModelBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelBody {
    Modal(ModalDoc),
    Quasipoly(QuasiPolyDoc),
    Preset(PresetDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModalDoc {
    pub input_dim: usize,
    pub expansion_time: f64,
    pub minimality_interval: f64,
    pub modes: Vec<ModeDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModeDoc {
    pub lambda: ComplexPair,
    pub chain_lengths: Vec<usize>,
    pub input_coupling: MatrixDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiPolyDoc {
    pub dim: usize,
    pub delays: Vec<f64>,
    pub neutral_coeffs: Vec<MatrixDoc>,
    pub retarded_coeffs: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresetDoc {
    pub name: String,
    #[serde(default)]
    pub params: serde_json::Value,
}

/// A validated model, ready for analysis.
#[derive(Debug, Clone)]
pub enum LoadedModel {
    Modal(ModalSystem),
    QuasiPolynomial(QuasiPolynomial),
}

impl LoadedModel {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadedModel::Modal(_) => "modal",
            LoadedModel::QuasiPolynomial(_) => "quasipoly",
        }
    }
}

fn cx(pair: ComplexPair) -> Complex64 {
    Complex::new(pair[0], pair[1])
}

fn pair(z: Complex64) -> ComplexPair {
    [z.re, z.im]
}

fn matrix_from_doc(doc: &MatrixDoc, path: &str) -> Result<DMatrix<Complex64>> {
    if doc.is_empty() {
        return Err(Error::Schema {
            path: path.into(),
            message: "matrix must have at least one row".into(),
        });
    }
    let cols = doc[0].len();
    if cols == 0 {
        return Err(Error::Schema {
            path: path.into(),
            message: "matrix must have at least one column".into(),
        });
    }
    if doc.iter().any(|row| row.len() != cols) {
        return Err(Error::Schema {
            path: path.into(),
            message: "matrix rows have inconsistent lengths".into(),
        });
    }
    let flat: Vec<Complex64> = doc.iter().flatten().map(|&p| cx(p)).collect();
    Ok(DMatrix::from_row_slice(doc.len(), cols, &flat))
}

fn matrix_to_doc(m: &DMatrix<Complex64>) -> MatrixDoc {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect())
        .collect()
}

/// Parses and validates a model document from JSON text.
///
/// The tag fields are dispatched by hand so that payload deserialization
/// keeps full JSON-path tracking (tagged-enum buffering would erase it).
pub fn parse_model(json: &str) -> Result<LoadedModel> {
    let value: serde_json::Value = serde_json::from_str(json)?;
    let obj = value.as_object().ok_or_else(|| Error::Schema {
        path: ".".into(),
        message: "model document must be a JSON object".into(),
    })?;
    let version = obj
        .get("schema_version")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::Schema {
            path: "schema_version".into(),
            message: "missing or non-integer schema_version".into(),
        })?;
    if version != SCHEMA_VERSION as u64 {
        return Err(Error::Schema {
            path: "schema_version".into(),
            message: format!("unsupported schema version {version} (expected {SCHEMA_VERSION})"),
        });
    }
    let kind = obj
        .get("kind")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Schema {
            path: "kind".into(),
            message: "missing kind (one of: modal, quasipoly, preset)".into(),
        })?;

    fn payload<T: for<'de> Deserialize<'de>>(value: &serde_json::Value) -> Result<T> {
        serde_path_to_error::deserialize(value.clone()).map_err(|e| Error::Schema {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })
    }

    let body = match kind {
        "modal" => ModelBody::Modal(payload::<ModalDoc>(&value)?),
        "quasipoly" => ModelBody::Quasipoly(payload::<QuasiPolyDoc>(&value)?),
        "preset" => ModelBody::Preset(payload::<PresetDoc>(&value)?),
        other => {
            return Err(Error::Schema {
                path: "kind".into(),
                message: format!("unknown kind '{other}' (one of: modal, quasipoly, preset)"),
            })
        }
    };
    realize_model(&ModelDoc {
        schema_version: SCHEMA_VERSION,
        body,
    })
}

/// Turns a parsed document into validated domain objects.
pub fn realize_model(doc: &ModelDoc) -> Result<LoadedModel> {
    match &doc.body {
        ModelBody::Modal(modal) => {
            let mut modes = Vec::with_capacity(modal.modes.len());
            for (i, mode) in modal.modes.iter().enumerate() {
                let coupling =
                    matrix_from_doc(&mode.input_coupling, &format!("modes[{i}].input_coupling"))?;
                modes.push(SpectralMode::new(
                    cx(mode.lambda),
                    mode.chain_lengths.clone(),
                    coupling,
                )?);
            }
            Ok(LoadedModel::Modal(ModalSystem::new(
                modes,
                modal.input_dim,
                modal.expansion_time,
                modal.minimality_interval,
            )?))
        }
        ModelBody::Quasipoly(qp) => {
            let convert = |docs: &[MatrixDoc], field: &str| -> Result<Vec<DMatrix<Complex64>>> {
                docs.iter()
                    .enumerate()
                    .map(|(i, m)| matrix_from_doc(m, &format!("{field}[{i}]")))
                    .collect()
            };
            Ok(LoadedModel::QuasiPolynomial(QuasiPolynomial::new(
                qp.dim,
                qp.delays.clone(),
                convert(&qp.neutral_coeffs, "neutral_coeffs")?,
                convert(&qp.retarded_coeffs, "retarded_coeffs")?,
            )?))
        }
        ModelBody::Preset(preset_doc) => realize_preset(preset_doc),
    }
}

fn realize_preset(doc: &PresetDoc) -> Result<LoadedModel> {
    fn params<T: for<'de> Deserialize<'de>>(value: &serde_json::Value) -> Result<T> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Schema {
            path: "params".into(),
            message: e.to_string(),
        })
    }

    match doc.name.as_str() {
        "wave" => {
            #[derive(Deserialize)]
            struct WaveParams {
                k_max: usize,
                #[serde(default = "default_mu")]
                mu: f64,
            }
            fn default_mu() -> f64 {
                0.5
            }
            let p: WaveParams = params(&doc.params)?;
            Ok(LoadedModel::Modal(preset::wave(p.k_max, p.mu)?))
        }
        "finite_ode" => {
            #[derive(Deserialize)]
            struct OdeParams {
                lambdas: Vec<ComplexPair>,
                #[serde(default)]
                couplings: Option<MatrixDoc>,
                #[serde(default)]
                nu: f64,
            }
            let p: OdeParams = params(&doc.params)?;
            let lambdas: Vec<Complex64> = p.lambdas.iter().map(|&l| cx(l)).collect();
            let couplings = p
                .couplings
                .as_ref()
                .map(|c| matrix_from_doc(c, "params.couplings"))
                .transpose()?;
            Ok(LoadedModel::Modal(preset::finite_ode(
                &lambdas, couplings, p.nu,
            )?))
        }
        "scalar_delay" => {
            #[derive(Deserialize)]
            struct DelayParams {
                #[serde(default = "one")]
                gain: f64,
                #[serde(default = "one")]
                delay: f64,
                #[serde(default)]
                neutral_gain: f64,
            }
            fn one() -> f64 {
                1.0
            }
            let p: DelayParams = params(&doc.params)?;
            Ok(LoadedModel::QuasiPolynomial(preset::scalar_delay(
                p.gain,
                p.delay,
                p.neutral_gain,
            )?))
        }
        other => Err(Error::Schema {
            path: "name".into(),
            message: format!(
                "unknown preset '{other}' (available: wave, finite_ode, scalar_delay)"
            ),
        }),
    }
}

/// Reads and validates a model file.
pub fn load_model(path: impl AsRef<Path>) -> Result<LoadedModel> {
    let text = std::fs::read_to_string(path)?;
    parse_model(&text)
}

/// Re-encodes a validated model as a document (presets serialize as their
/// realized modal/quasipoly form).
pub fn model_to_doc(model: &LoadedModel) -> ModelDoc {
    let body = match model {
        LoadedModel::Modal(sys) => ModelBody::Modal(ModalDoc {
            input_dim: sys.input_dim(),
            expansion_time: sys.expansion_time(),
            minimality_interval: sys.minimality_interval(),
            modes: sys
                .modes()
                .iter()
                .map(|m| ModeDoc {
                    lambda: pair(m.lambda()),
                    chain_lengths: m.chain_lengths().to_vec(),
                    input_coupling: matrix_to_doc(m.input_coupling()),
                })
                .collect(),
        }),
        LoadedModel::QuasiPolynomial(q) => ModelBody::Quasipoly(QuasiPolyDoc {
            dim: q.dim(),
            delays: q.delays().to_vec(),
            neutral_coeffs: q.neutral_coeffs().iter().map(matrix_to_doc).collect(),
            retarded_coeffs: q.retarded_coeffs().iter().map(matrix_to_doc).collect(),
        }),
    };
    ModelDoc {
        schema_version: SCHEMA_VERSION,
        body,
    }
}

/// Serializes a model with sorted keys (the default `serde_json` value
/// representation keeps objects ordered).
pub fn model_to_json(model: &LoadedModel) -> Result<String> {
    let value = serde_json::to_value(model_to_doc(model))?;
    Ok(serde_json::to_string_pretty(&value)?)
}

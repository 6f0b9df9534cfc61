//! JSON file formats: generator descriptions in, witness exports out.

use std::fs;
use std::path::Path;

use nmwit_core::lindblad::{CoefficientModel, LindbladGenerator, Term};
use nmwit_core::operator::{pauli, Operator, C64};
use nmwit_core::witness::WitnessOperator;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::sig12;

/// `{"kind": "constant" | "eternal_tanh" | "tabulated", ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientSpec {
    Constant {
        value: f64,
    },
    EternalTanh {
        #[serde(default = "minus_one")]
        scale: f64,
    },
    Tabulated {
        times: Vec<f64>,
        values: Vec<f64>,
    },
}

fn minus_one() -> f64 {
    -1.0
}

/// A Pauli name (`"sigma_x"`, case-insensitive) or an explicit matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JumpSpec {
    Named(String),
    Matrix { matrix: MatrixSpec },
}

/// Either nested rows `[[[re, im], ...], ...]` or a flat row-major list
/// `[[re, im], ...]` of `dim^2` entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Rows(Vec<Vec<[f64; 2]>>),
    Flat(Vec<[f64; 2]>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermSpec {
    pub coefficient: CoefficientSpec,
    pub jump: JumpSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub dim: usize,
    pub terms: Vec<TermSpec>,
}

impl CoefficientSpec {
    fn to_model(&self) -> Result<CoefficientModel, CliError> {
        Ok(match self {
            Self::Constant { value } => CoefficientModel::Constant(*value),
            Self::EternalTanh { scale } => CoefficientModel::Tanh { scale: *scale },
            Self::Tabulated { times, values } => {
                CoefficientModel::tabulated(times.clone(), values.clone())
                    .map_err(|e| CliError::Config(format!("coefficient table: {e}")))?
            }
        })
    }
}

impl MatrixSpec {
    fn to_operator(&self, dim: usize) -> Result<Operator, CliError> {
        let entries: Vec<C64> = match self {
            Self::Rows(rows) => {
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(CliError::Config(format!("jump matrix must be {dim}x{dim}")));
                }
                rows.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect()
            }
            Self::Flat(flat) => {
                if flat.len() != dim * dim {
                    return Err(CliError::Config(format!(
                        "flat jump matrix needs {} entries, got {}",
                        dim * dim,
                        flat.len()
                    )));
                }
                flat.iter().map(|&[re, im]| C64::new(re, im)).collect()
            }
        };
        Ok(Operator::from_flat(dim, entries))
    }
}

impl JumpSpec {
    fn to_operator(&self, dim: usize) -> Result<Operator, CliError> {
        match self {
            Self::Named(name) => {
                if dim != 2 {
                    return Err(CliError::Config(format!(
                        "Pauli jump '{name}' requires dim 2, generator has dim {dim}"
                    )));
                }
                match name.to_ascii_lowercase().as_str() {
                    "sigma_x" => Ok(pauli::sigma_x()),
                    "sigma_y" => Ok(pauli::sigma_y()),
                    "sigma_z" => Ok(pauli::sigma_z()),
                    _ => Err(CliError::Config(format!("unknown jump operator '{name}'"))),
                }
            }
            Self::Matrix { matrix } => matrix.to_operator(dim),
        }
    }
}

impl GeneratorSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("generator file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn build(&self) -> Result<LindbladGenerator, CliError> {
        if self.dim == 0 {
            return Err(CliError::Config("generator dim must be positive".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(Term::new(t.coefficient.to_model()?, t.jump.to_operator(self.dim)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        LindbladGenerator::new(self.dim, terms)
            .map(|g| g.with_name("custom"))
            .map_err(|e| CliError::Config(format!("generator: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceExport {
    pub generator: String,
    pub t: f64,
    pub epsilon: f64,
}

/// Serialized witness: `matrix` as rows of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessExport {
    pub matrix: Vec<Vec<[f64; 2]>>,
    pub nu: f64,
    pub omega: f64,
    pub tau: Vec<[f64; 2]>,
    pub source: SourceExport,
}

fn pair(z: C64) -> [f64; 2] {
    [sig12(z.re), sig12(z.im)]
}

impl From<&WitnessOperator> for WitnessExport {
    fn from(w: &WitnessOperator) -> Self {
        Self {
            matrix: w
                .matrix
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(pair).collect())
                .collect(),
            nu: sig12(w.nu),
            omega: sig12(w.omega),
            tau: w.tau.iter().copied().map(pair).collect(),
            source: SourceExport {
                generator: w.source.generator.clone(),
                t: sig12(w.source.t),
                epsilon: sig12(w.source.epsilon),
            },
        }
    }
}

impl WitnessExport {
    pub fn to_operator(&self) -> Result<Operator, CliError> {
        MatrixSpec::Rows(self.matrix.clone()).to_operator(self.matrix.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nmwit_core::lindblad::SmallTimeMap;
    use nmwit_core::witness::build_witness;

    #[test]
    fn parses_eternal_depolarizer() {
        let text = r#"{
            "dim": 2,
            "terms": [
                {"coefficient": {"kind": "constant", "value": 1.0}, "jump": "sigma_x"},
                {"coefficient": {"kind": "constant", "value": 1.0}, "jump": "SIGMA_Y"},
                {"coefficient": {"kind": "eternal_tanh"}, "jump": "Sigma_Z"}
            ]
        }"#;
        let gen = GeneratorSpec::from_json(text).unwrap().build().unwrap();
        let rates = gen.rates_at(1.0).unwrap();
        assert_eq!(rates, vec![1.0, 1.0, -(1.0f64).tanh()]);
    }

    #[test]
    fn parses_matrix_jumps_in_both_layouts() {
        let text = r#"{
            "dim": 2,
            "terms": [
                {"coefficient": {"kind": "tabulated", "times": [0, 1], "values": [0, 2]},
                 "jump": {"matrix": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]}},
                {"coefficient": {"kind": "constant", "value": 0.5},
                 "jump": {"matrix": [[0, 0], [1, 0], [1, 0], [0, 0]]}}
            ]
        }"#;
        let gen = GeneratorSpec::from_json(text).unwrap().build().unwrap();
        assert_eq!(gen.terms()[0].jump, pauli::sigma_z());
        assert_eq!(gen.terms()[1].jump, pauli::sigma_x());
        assert_eq!(gen.rates_at(0.5).unwrap(), vec![1.0, 0.5]);
    }

    #[test]
    fn rejects_bad_generators() {
        let unknown = r#"{"dim": 2, "terms": [{"coefficient": {"kind": "constant", "value": 1}, "jump": "sigma_w"}]}"#;
        assert!(GeneratorSpec::from_json(unknown).unwrap().build().is_err());
        let wrong_size = r#"{"dim": 2, "terms": [{"coefficient": {"kind": "constant", "value": 1}, "jump": {"matrix": [[1, 0]]}}]}"#;
        assert!(GeneratorSpec::from_json(wrong_size).unwrap().build().is_err());
        assert!(GeneratorSpec::from_json("{not json").is_err());
        let bad_kind = r#"{"dim": 2, "terms": [{"coefficient": {"kind": "cosine"}, "jump": "sigma_x"}]}"#;
        assert!(GeneratorSpec::from_json(bad_kind).is_err());
    }

    #[test]
    fn witness_export_round_trips_matrix() {
        let map = SmallTimeMap::new(LindbladGenerator::eternal(), 1.0, 0.01).unwrap();
        let w = build_witness(&map).unwrap();
        let export = WitnessExport::from(&w);
        let json = serde_json::to_string(&export).unwrap();
        let back: WitnessExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, export);
        assert!(back.to_operator().unwrap().max_abs_diff(&w.matrix) < 1e-12);
        assert_eq!(back.source.generator, "eternal");
        assert_eq!(back.tau.len(), 4);
    }
}

//! Matrix and pair file formats.
//!
//! A matrix file is a single JSON object tagged with the schema version
//! and the backend it belongs to. Exact entries are canonical scalar
//! strings ("1/2+-3/4i", imaginary part omitted when zero) so values
//! round-trip without loss; float entries are {re, im} objects. A pair
//! file wraps two matrix objects under "p" and "q". Tolerances are not
//! stored in files; they are injected when a float matrix is loaded.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use projcalc_core::exact::{ExactMatrix, GaussianRational};
use projcalc_core::float::{FloatMatrix, ToleranceConfig, C64};
use serde::{Deserialize, Serialize};

pub const SCHEMA: &str = projcalc_core::report::SCHEMA;

/// Which scalar field a matrix lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Exact,
    Float,
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendKind::Exact => "exact",
            BackendKind::Float => "float",
        })
    }
}

/// One matrix entry: a canonical scalar string in exact files, a
/// component pair in float files.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Exact(String),
    Float { re: f64, im: f64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub schema: String,
    pub backend: BackendKind,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<EntryJson>>,
}

/// A matrix deserialized into its declared backend.
pub enum LoadedMatrix {
    Exact(ExactMatrix),
    Float(FloatMatrix),
}

impl MatrixJson {
    pub fn from_exact(m: &ExactMatrix) -> Self {
        MatrixJson {
            schema: SCHEMA.to_string(),
            backend: BackendKind::Exact,
            rows: m.nrows(),
            cols: m.ncols(),
            data: (0..m.nrows())
                .map(|r| {
                    (0..m.ncols())
                        .map(|c| EntryJson::Exact(m.at(r, c).to_string()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_float(m: &FloatMatrix) -> Self {
        MatrixJson {
            schema: SCHEMA.to_string(),
            backend: BackendKind::Float,
            rows: m.nrows(),
            cols: m.ncols(),
            data: (0..m.nrows())
                .map(|r| {
                    (0..m.ncols())
                        .map(|c| {
                            let z = m.at(r, c);
                            EntryJson::Float { re: z.re, im: z.im }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    fn validate_shape(&self) -> Result<()> {
        if self.schema != SCHEMA {
            bail!("unsupported schema {:?}, expected {:?}", self.schema, SCHEMA);
        }
        if self.data.len() != self.rows {
            bail!("matrix declares {} rows but data has {}", self.rows, self.data.len());
        }
        for (r, row) in self.data.iter().enumerate() {
            if row.len() != self.cols {
                bail!("row {r} has {} entries, expected {}", row.len(), self.cols);
            }
        }
        Ok(())
    }

    pub fn to_exact(&self) -> Result<ExactMatrix> {
        self.validate_shape()?;
        if self.backend != BackendKind::Exact {
            bail!("matrix is tagged backend {:?}, expected exact", self.backend);
        }
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                let EntryJson::Exact(s) = entry else {
                    bail!("entry ({r},{c}) is not a scalar string");
                };
                let v = GaussianRational::parse(s)
                    .with_context(|| format!("entry ({r},{c})"))?;
                entries.push(v);
            }
        }
        Ok(ExactMatrix::from_entries(self.rows, self.cols, entries))
    }

    pub fn to_float(&self, tol: ToleranceConfig) -> Result<FloatMatrix> {
        self.validate_shape()?;
        if self.backend != BackendKind::Float {
            bail!("matrix is tagged backend {:?}, expected float", self.backend);
        }
        let mut rows: Vec<Vec<C64>> = Vec::with_capacity(self.rows);
        for (r, row) in self.data.iter().enumerate() {
            let mut out = Vec::with_capacity(self.cols);
            for (c, entry) in row.iter().enumerate() {
                let EntryJson::Float { re, im } = entry else {
                    bail!("entry ({r},{c}) is not a {{re, im}} object");
                };
                out.push(C64::new(*re, *im));
            }
            rows.push(out);
        }
        FloatMatrix::from_rows(&rows, tol).context("float matrix rejected")
    }

    /// Deserialize into whichever backend the file declares.
    pub fn load(&self, tol: ToleranceConfig) -> Result<LoadedMatrix> {
        match self.backend {
            BackendKind::Exact => self.to_exact().map(LoadedMatrix::Exact),
            BackendKind::Float => self.to_float(tol).map(LoadedMatrix::Float),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub p: MatrixJson,
    pub q: MatrixJson,
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixJson> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_matrix_file(path: &Path, m: &MatrixJson) -> Result<()> {
    let mut text = serde_json::to_string(m)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn read_pair_file(path: &Path) -> Result<PairJson> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_pair_file(path: &Path, pair: &PairJson) -> Result<()> {
    let mut text = serde_json::to_string(pair)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_matrices_round_trip_through_json() {
        let m = ExactMatrix::from_rational_rows(&[&[(1, 2), (-3, 4)], &[(0, 1), (7, 1)]]);
        let json = MatrixJson::from_exact(&m);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"schema\":\"projcalc/1\""));
        assert!(text.contains("\"backend\":\"exact\""));
        assert!(text.contains("\"1/2\""));
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_exact().unwrap(), m);
    }

    #[test]
    fn exact_entries_keep_imaginary_parts() {
        let mut m = ExactMatrix::zeros(1, 1);
        m.set(0, 0, GaussianRational::from_parts_i64(1, 2, -3, 4));
        let json = MatrixJson::from_exact(&m);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"1/2+-3/4i\""));
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_exact().unwrap(), m);
    }

    #[test]
    fn float_matrices_round_trip_bit_exactly() {
        let tol = ToleranceConfig::default();
        let m = FloatMatrix::from_rows(
            &[
                vec![C64::new(0.5, -0.25), C64::new(0.1, 0.0)],
                vec![C64::new(-1.0, 3.0), C64::new(0.0, 0.0)],
            ],
            tol,
        )
        .unwrap();
        let json = MatrixJson::from_float(&m);
        let text = serde_json::to_string(&json).unwrap();
        assert!(text.contains("\"backend\":\"float\""));
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        let m2 = back.to_float(tol).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(m.at(r, c), m2.at(r, c));
            }
        }
    }

    #[test]
    fn backend_and_entry_mismatches_are_rejected() {
        let m = ExactMatrix::identity(2);
        let mut json = MatrixJson::from_exact(&m);
        assert!(json.to_float(ToleranceConfig::default()).is_err());
        json.backend = BackendKind::Float;
        // Backend tag now claims float but the entries are strings.
        assert!(json.to_float(ToleranceConfig::default()).is_err());
        json.backend = BackendKind::Exact;
        json.schema = "projcalc/999".into();
        assert!(json.to_exact().is_err());
    }

    #[test]
    fn shape_lies_are_rejected() {
        let mut json = MatrixJson::from_exact(&ExactMatrix::identity(2));
        json.rows = 3;
        assert!(json.to_exact().is_err());
        let mut json = MatrixJson::from_exact(&ExactMatrix::identity(2));
        json.data[1].pop();
        assert!(json.to_exact().is_err());
    }

    #[test]
    fn pair_files_round_trip_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pair.json");
        let p = ExactMatrix::diag_i64(&[1, 0]);
        let q = ExactMatrix::diag_i64(&[0, 1]);
        let pair = PairJson {
            p: MatrixJson::from_exact(&p),
            q: MatrixJson::from_exact(&q),
        };
        write_pair_file(&path, &pair).unwrap();
        let back = read_pair_file(&path).unwrap();
        assert_eq!(back.p.to_exact().unwrap(), p);
        assert_eq!(back.q.to_exact().unwrap(), q);
    }
}

//! Versioned JSON documents for configurations, measures and results.

use std::sync::Arc;

use polymeasure::measure::TriangleSum;
use polymeasure::{CNum, Field, PointSet, PolygonalMeasure, Scalar, TriangleRef};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const CONFIG_FORMAT: &str = "polymeasure-config/1";
pub const MEASURE_FORMAT: &str = "polymeasure-measure/1";
pub const RESULT_FORMAT: &str = "polymeasure-result/1";

/// Pretty JSON with a trailing newline.
pub fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn exact(s: &Scalar) -> String {
    s.to_string()
}

pub fn point(z: &CNum) -> [String; 2] {
    [exact(&z.re), exact(&z.im)]
}

fn parse_scalar(text: &str) -> CliResult<Scalar> {
    text.parse::<Scalar>().map_err(CliError::from)
}

fn check_format(found: &str, expected: &str) -> CliResult<()> {
    if found == expected {
        Ok(())
    } else {
        Err(CliError::Input(format!("expected a `{expected}` document, found `{found}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub format: String,
    pub field: String,
    pub points: Vec<[String; 2]>,
}

impl ConfigDocument {
    pub fn from_point_set(s: &PointSet) -> Self {
        ConfigDocument {
            format: CONFIG_FORMAT.to_owned(),
            field: s.field().name().to_owned(),
            points: s.points().iter().map(point).collect(),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: ConfigDocument = serde_json::from_str(text)?;
        check_format(&doc.format, CONFIG_FORMAT)?;
        Ok(doc)
    }

    pub fn to_point_set(&self) -> CliResult<PointSet> {
        check_format(&self.format, CONFIG_FORMAT)?;
        let field = Field::parse(&self.field)?;
        let points = self
            .points
            .iter()
            .map(|[x, y]| Ok(CNum::new(parse_scalar(x)?, parse_scalar(y)?)))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(PointSet::new(field, points)?)
    }

    /// Re-emits the document from its parsed values.
    pub fn normalized(&self) -> CliResult<Self> {
        Ok(Self::from_point_set(&self.to_point_set()?))
    }
}

/// Triangle with real and imaginary density.
type Entry = (TriangleRef, Scalar, Scalar);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityEntry {
    pub triangle: [usize; 3],
    pub density: String,
    /// Imaginary part; absent for real densities.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<String>,
}

/// A measure as triangle densities over an embedded configuration.
///
/// Entries may name any triangle of the configuration; they are rewritten
/// in the basis through the first point on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureDocument {
    pub format: String,
    pub config: ConfigDocument,
    pub densities: Vec<DensityEntry>,
}

impl MeasureDocument {
    pub fn from_real(mu: &PolygonalMeasure<Scalar>) -> Self {
        MeasureDocument {
            format: MEASURE_FORMAT.to_owned(),
            config: ConfigDocument::from_point_set(mu.base()),
            densities: mu
                .densities()
                .map(|(t, d)| DensityEntry { triangle: t.indices(), density: exact(d), im: None })
                .collect(),
        }
    }

    pub fn from_complex(mu: &PolygonalMeasure<CNum>) -> Self {
        MeasureDocument {
            format: MEASURE_FORMAT.to_owned(),
            config: ConfigDocument::from_point_set(mu.base()),
            densities: mu
                .densities()
                .map(|(t, d)| DensityEntry {
                    triangle: t.indices(),
                    density: exact(&d.re),
                    im: (!d.im.is_zero()).then(|| exact(&d.im)),
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        Self::from_value(serde_json::from_str(text)?, 0)
    }

    /// Accepts a measure document, a certificate, or a result document
    /// carrying one under `measure`, `measures[index]` or
    /// `certificates[index].measure`.
    pub fn from_value(value: Value, index: usize) -> CliResult<Self> {
        let format = value.get("format").and_then(Value::as_str).unwrap_or_default().to_owned();
        if format == RESULT_FORMAT {
            let payload = &value["payload"];
            let found = [&payload["measures"][index], &payload["measure"], &payload["certificates"][index]["measure"]]
                .into_iter()
                .find(|v| !v.is_null())
                .cloned()
                .ok_or_else(|| CliError::Input(format!("result document carries no measure at index {index}")))?;
            return Self::from_value(found, 0);
        }
        if value.get("format").is_none() && value.get("measure").is_some() {
            return Self::from_value(value["measure"].clone(), 0);
        }
        let doc: MeasureDocument = serde_json::from_value(value)?;
        check_format(&doc.format, MEASURE_FORMAT)?;
        Ok(doc)
    }

    fn parts(&self) -> CliResult<(Arc<PointSet>, Vec<Entry>)> {
        check_format(&self.format, MEASURE_FORMAT)?;
        let s = Arc::new(self.config.to_point_set()?);
        let entries = self
            .densities
            .iter()
            .map(|e| {
                let [a, b, c] = e.triangle;
                let t = TriangleRef::new(a, b, c)?;
                t.check(&s)?;
                let im = match &e.im {
                    Some(text) => parse_scalar(text)?,
                    None => Scalar::zero(),
                };
                Ok((t, parse_scalar(&e.density)?, im))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok((s, entries))
    }

    pub fn to_real(&self) -> CliResult<PolygonalMeasure<Scalar>> {
        let (s, entries) = self.parts()?;
        if entries.iter().any(|(_, _, im)| !im.is_zero()) {
            return Err(polymeasure::Error::ComplexMeasure.into());
        }
        Ok(TriangleSum::from_terms(s, entries.into_iter().map(|(t, re, _)| (t, re)))?.to_basis()?)
    }

    pub fn to_complex(&self) -> CliResult<PolygonalMeasure<CNum>> {
        let (s, entries) = self.parts()?;
        let re = TriangleSum::from_terms(s.clone(), entries.iter().map(|(t, re, _)| (*t, re.clone())))?.to_basis()?;
        let im = TriangleSum::from_terms(s, entries.iter().map(|(t, _, im)| (*t, im.clone())))?.to_basis()?;
        let i = CNum::i();
        Ok(re.to_complex().add_scaled(&im.to_complex(), &i)?)
    }

    /// Re-emits the document from its parsed values.
    pub fn normalized(&self) -> CliResult<Self> {
        let mu = self.to_complex()?;
        Ok(match mu.to_real() {
            Ok(real) => Self::from_real(&real),
            Err(_) => Self::from_complex(&mu),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandEcho {
    pub name: String,
    pub arguments: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub format: String,
    pub command: CommandEcho,
    /// SHA-256 of the normalized input documents, in argument order.
    pub input_sha256: String,
    /// `pass` or `fail`.
    pub status: String,
    pub payload: Value,
}

impl ResultDocument {
    pub fn new(name: &str, arguments: Vec<(&str, String)>, inputs: &[String], passed: bool, payload: Value) -> Self {
        let mut hasher = Sha256::new();
        for text in inputs {
            hasher.update(text.as_bytes());
        }
        ResultDocument {
            format: RESULT_FORMAT.to_owned(),
            command: CommandEcho {
                name: name.to_owned(),
                arguments: arguments.into_iter().map(|(k, v)| [k.to_owned(), v]).collect(),
            },
            input_sha256: format!("{:x}", hasher.finalize()),
            status: if passed { "pass" } else { "fail" }.to_owned(),
            payload,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let doc: ResultDocument = serde_json::from_str(text)?;
        check_format(&doc.format, RESULT_FORMAT)?;
        Ok(doc)
    }
}

//! Problem documents: the JSON-facing schema and its exact parsed form.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::rational::{parse_rational, Rational};
use crate::reduction::tiling::TilingSettings;
use crate::torus::AffineAuto;

pub const SCHEMA: &str = "conecrafter/1";

/// Raw document as read from JSON; rationals are `"p/q"` strings.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub schema: String,
    #[serde(default)]
    pub name: Option<String>,
    pub lattice_rank: usize,
    pub complex_structure: Vec<Vec<String>>,
    pub polarization: Vec<Vec<i64>>,
    #[serde(default)]
    pub group: Vec<GroupElementSpec>,
    #[serde(default)]
    pub normalizer_generators: Vec<LinearSpec>,
    #[serde(default)]
    pub reduction: ReductionSpec,
    /// Classes in invariant Neron-Severi coordinates for the membership table.
    #[serde(default)]
    pub test_classes: Vec<Vec<String>>,
    /// When present, the computed GHV verdict must agree.
    #[serde(default)]
    pub expect_ghv: Option<bool>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupElementSpec {
    pub linear: Vec<Vec<i64>>,
    /// Omitted means zero.
    #[serde(default)]
    pub translation: Vec<String>,
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct LinearSpec {
    pub linear: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ReductionSpec {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub max_steps: Option<usize>,
}

/// A document with every entry converted to exact values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedDocument {
    pub name: String,
    pub complex_structure: RationalMatrix,
    pub polarization: IntegerMatrix,
    pub group: Vec<AffineAuto>,
    pub normalizer_generators: Vec<IntegerMatrix>,
    pub settings: TilingSettings,
    pub test_classes: Vec<Vec<Rational>>,
    pub expect_ghv: Option<bool>,
}

fn check_square<T>(field: &str, rows: &[Vec<T>], n: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::Parse(format!(
            "{field}: expected {n} rows, found {}",
            rows.len()
        )));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "{field}[{i}]: expected {n} entries, found {}",
                row.len()
            )));
        }
    }
    Ok(())
}

fn integer_matrix(field: &str, rows: &[Vec<i64>], n: usize) -> Result<IntegerMatrix> {
    check_square(field, rows, n)?;
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Ok(IntegerMatrix::from_i64(&refs))
}

fn rational_vector(field: &str, entries: &[String]) -> Result<Vec<Rational>> {
    entries
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| Error::Parse(format!("{field}[{i}]: {e}"))))
        .collect()
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn parse(&self) -> Result<ParsedDocument> {
        if self.schema != SCHEMA {
            return Err(Error::Parse(format!(
                "schema: expected {SCHEMA:?}, found {:?}",
                self.schema
            )));
        }
        let n = self.lattice_rank;
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Parse(format!(
                "lattice_rank: {n} is not a positive even number"
            )));
        }
        check_square("complex_structure", &self.complex_structure, n)?;
        let j_rows = self
            .complex_structure
            .iter()
            .enumerate()
            .map(|(i, row)| rational_vector(&format!("complex_structure[{i}]"), row))
            .collect::<Result<Vec<_>>>()?;
        let complex_structure = RationalMatrix::from_rows(j_rows);
        let polarization = integer_matrix("polarization", &self.polarization, n)?;
        let group = self
            .group
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let linear = integer_matrix(&format!("group[{k}].linear"), &g.linear, n)?;
                let translation = if g.translation.is_empty() {
                    vec![Rational::from_integer(0.into()); n]
                } else {
                    rational_vector(&format!("group[{k}].translation"), &g.translation)?
                };
                if translation.len() != n {
                    return Err(Error::Parse(format!(
                        "group[{k}].translation: expected {n} entries, found {}",
                        translation.len()
                    )));
                }
                AffineAuto::new(linear, translation)
            })
            .collect::<Result<Vec<_>>>()?;
        let normalizer_generators = self
            .normalizer_generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                integer_matrix(&format!("normalizer_generators[{k}].linear"), &g.linear, n)
            })
            .collect::<Result<Vec<_>>>()?;
        let test_classes = self
            .test_classes
            .iter()
            .enumerate()
            .map(|(k, c)| rational_vector(&format!("test_classes[{k}]"), c))
            .collect::<Result<Vec<_>>>()?;
        let mut settings = TilingSettings::default();
        if let Some(s) = self.reduction.samples {
            settings.samples = s;
        }
        if let Some(s) = self.reduction.seed {
            settings.seed = s;
        }
        if let Some(s) = self.reduction.max_steps {
            settings.max_steps = s;
        }
        Ok(ParsedDocument {
            name: self.name.clone().unwrap_or_else(|| "unnamed".into()),
            complex_structure,
            polarization,
            group,
            normalizer_generators,
            settings,
            test_classes,
            expect_ghv: self.expect_ghv,
        })
    }
}

/// Reads and parses in one step.
pub fn parse_document(text: &str) -> Result<ParsedDocument> {
    ProblemDocument::from_json(text)?.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CURVE: &str = r#"{
        "schema": "conecrafter/1",
        "lattice_rank": 2,
        "complex_structure": [["0", "-1"], ["1", "0"]],
        "polarization": [[0, 1], [-1, 0]]
    }"#;

    #[test]
    fn minimal_document() {
        let doc = parse_document(CURVE).unwrap();
        assert!(doc.group.is_empty());
        assert_eq!(doc.settings.seed, 42);
        assert_eq!(doc.name, "unnamed");
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let bad = CURVE.replace("\"-1\"", "\"1/0\"");
        let err = parse_document(&bad).unwrap_err();
        assert!(err.to_string().contains("complex_structure[0][1]"), "{err}");
    }

    #[test]
    fn wrong_shape_and_schema() {
        assert!(parse_document(&CURVE.replace("[[0, 1], [-1, 0]]", "[[0, 1]]")).is_err());
        assert!(parse_document(&CURVE.replace("conecrafter/1", "other/2")).is_err());
        let err =
            parse_document(&CURVE.replace("\"lattice_rank\"", "\"lattice_rnk\"")).unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }
}

//! Input files: degree data and explicit complexes.

use hkeq::obstructions::ComplexDegreeData;
use hkeq::oracle::{GradedFreeComplex, MultiPoly, OracleError, PolyMatrix};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing field `variables`")]
    MissingVariables,
    #[error("{0}")]
    Degrees(#[from] hkeq::obstructions::ObstructionError),
    #[error("matrix {matrix}, row {row} has {got} entries, expected {expected}")]
    RaggedRow {
        matrix: usize,
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("matrix {matrix}, entry ({row},{col}): {source}")]
    Polynomial {
        matrix: usize,
        row: usize,
        col: usize,
        source: OracleError,
    },
    #[error("{0}")]
    Complex(OracleError),
}

/// `{"variables": m, "terms": [[...], ...]}`. `variables` is optional for
/// commands that only look at the shape.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeFile {
    pub variables: Option<usize>,
    pub terms: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub variables: usize,
    pub shifts: Vec<Vec<i64>>,
    pub matrices: Vec<Vec<Vec<String>>>,
}

/// Whether the text looks like the complex schema (has a `matrices` key).
/// Syntax errors are left for the typed parse so they carry positions.
pub fn is_complex_file(contents: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(contents)
        .ok()
        .and_then(|v| v.as_object().map(|o| o.contains_key("matrices")))
        .unwrap_or(false)
}

pub fn parse_degree_file(contents: &str) -> Result<DegreeFile, InputError> {
    Ok(serde_json::from_str(contents)?)
}

pub fn parse_degree_data(contents: &str) -> Result<ComplexDegreeData, InputError> {
    if is_complex_file(contents) {
        let complex = parse_complex(contents)?;
        return Ok(hkeq::oracle::extract_degree_data(&complex));
    }
    let file = parse_degree_file(contents)?;
    let variables = file.variables.ok_or(InputError::MissingVariables)?;
    Ok(ComplexDegreeData::new(variables, file.terms)?)
}

pub fn parse_complex(contents: &str) -> Result<GradedFreeComplex, InputError> {
    let file: ComplexFile = serde_json::from_str(contents)?;
    let m = file.variables;
    if m == 0 {
        return Err(InputError::Degrees(
            hkeq::obstructions::ObstructionError::NoVariables,
        ));
    }
    let mut matrices = Vec::with_capacity(file.matrices.len());
    for (matrix, rows) in file.matrices.iter().enumerate() {
        let expected = rows.first().map_or(0, Vec::len);
        let mut parsed = Vec::with_capacity(rows.len());
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != expected {
                return Err(InputError::RaggedRow {
                    matrix,
                    row,
                    got: entries.len(),
                    expected,
                });
            }
            let polys = entries
                .iter()
                .enumerate()
                .map(|(col, text)| {
                    MultiPoly::parse(text, m).map_err(|source| InputError::Polynomial {
                        matrix,
                        row,
                        col,
                        source,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            parsed.push(polys);
        }
        // an empty row list still needs the right column count
        let cols = if rows.is_empty() {
            file.shifts.get(matrix).map_or(0, Vec::len)
        } else {
            expected
        };
        matrices.push(PolyMatrix::from_rows(m, parsed, cols));
    }
    GradedFreeComplex::new(m, file.shifts, matrices).map_err(InputError::Complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_schema() {
        let data = parse_degree_data(r#"{"variables": 2, "terms": [[1], [0]]}"#).unwrap();
        assert_eq!(data.terms(), &[vec![1], vec![0]]);
        assert!(matches!(
            parse_degree_data(r#"{"terms": [[1], [0]]}"#),
            Err(InputError::MissingVariables)
        ));
        assert!(matches!(
            parse_degree_data(r#"{"variables": 2, "terms": [[1]], "extra": 1}"#),
            Err(InputError::Json(_))
        ));
    }

    #[test]
    fn json_errors_carry_positions() {
        let err = parse_degree_data("{\n  \"variables\": 2,\n  \"terms\": [[1], [0]\n}").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("line 4"), "{text}");
    }

    #[test]
    fn complex_schema() {
        let text = r#"{"variables": 2, "shifts": [[2], [1, 1], [0]],
                       "matrices": [[["x2"], ["-x1"]], [["x1", "x2"]]]}"#;
        let complex = parse_complex(text).unwrap();
        assert_eq!(complex, hkeq::oracle::build_koszul(2).unwrap());
        assert_eq!(
            parse_degree_data(text).unwrap().terms(),
            &[vec![2], vec![1, 1], vec![0]]
        );
    }

    #[test]
    fn complex_errors() {
        let bad_poly = r#"{"variables": 2, "shifts": [[1], [0]], "matrices": [[["x1 +"]]]}"#;
        let err = parse_complex(bad_poly).unwrap_err().to_string();
        assert!(
            err.starts_with("matrix 0, entry (0,0): parse error at column 5"),
            "{err}"
        );

        let ragged = r#"{"variables": 2, "shifts": [[1, 1], [0, 0]], "matrices": [[["x1", "x2"], ["x1"]]]}"#;
        assert!(matches!(
            parse_complex(ragged),
            Err(InputError::RaggedRow { row: 1, .. })
        ));

        let shape = r#"{"variables": 1, "shifts": [[1], [0]], "matrices": [[["x1", "x1"]]]}"#;
        assert!(matches!(parse_complex(shape), Err(InputError::Complex(_))));
    }
}

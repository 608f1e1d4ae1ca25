//! Parsing of the action-document format (JSON, fully exact):
//!
//! ```json
//! {
//!   "name": "kummer",
//!   "rank": 4,
//!   "generators": [
//!     { "linear": [[-1,0,0,0], ...], "translation": ["0","0","0","0"] }
//!   ],
//!   "period": {
//!     "conductor": 4,
//!     "matrix": [ [ ["1","0"], ["0","1"], ... ], ... ]
//!   }
//! }
//! ```
//!
//! Matrix entries are arbitrary-precision integers, translations are
//! rational strings "p/q", and period entries are coefficient vectors of
//! length phi(conductor) in the zeta power basis.

use num_bigint::BigInt;
use serde_json::Value;

use torusq_core::exactmath::cyclotomic::{euler_phi, CycloElem, CycloMatrix};
use torusq_core::exactmath::rat::{parse_rat, Rat};
use torusq_core::torus::{AffineAut, TorusAction};
use torusq_core::IntMatrix;

use crate::CliError;

fn validation(field: impl Into<String>, reason: impl Into<String>) -> CliError {
    CliError::Validation {
        field: field.into(),
        reason: reason.into(),
    }
}

fn as_object<'a>(
    v: &'a Value,
    field: &str,
) -> Result<&'a serde_json::Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| validation(field, "expected an object"))
}

fn as_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| validation(field, "expected an array"))
}

fn as_integer(v: &Value, field: &str) -> Result<BigInt, CliError> {
    let n = v
        .as_number()
        .ok_or_else(|| validation(field, "expected an integer"))?;
    n.to_string()
        .parse::<BigInt>()
        .map_err(|_| validation(field, "expected an integer, found a non-integral number"))
}

fn as_u64(v: &Value, field: &str) -> Result<u64, CliError> {
    let big = as_integer(v, field)?;
    u64::try_from(&big).map_err(|_| validation(field, "expected a small nonnegative integer"))
}

fn as_rat(v: &Value, field: &str) -> Result<Rat, CliError> {
    let s = v
        .as_str()
        .ok_or_else(|| validation(field, "expected a rational string \"p/q\""))?;
    parse_rat(s).map_err(|e| validation(field, e))
}

/// Parse and validate an action document.
pub fn parse_action(text: &str) -> Result<TorusAction, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let obj = as_object(&root, "document")?;

    let name = obj
        .get("name")
        .and_then(|v| v.as_str())
        .unwrap_or("unnamed")
        .to_string();

    let rank = as_u64(
        obj.get("rank")
            .ok_or_else(|| validation("rank", "missing"))?,
        "rank",
    )? as usize;
    if rank == 0 || rank % 2 != 0 {
        return Err(validation("rank", "must be a positive even integer"));
    }
    let n = rank / 2;

    let generators_value = obj
        .get("generators")
        .ok_or_else(|| validation("generators", "missing"))?;
    let mut generators = Vec::new();
    for (gi, gen) in as_array(generators_value, "generators")?.iter().enumerate() {
        let gobj = as_object(gen, &format!("generators[{gi}]"))?;
        let linear_field = format!("generators[{gi}].linear");
        let rows = as_array(
            gobj.get("linear")
                .ok_or_else(|| validation(&linear_field, "missing"))?,
            &linear_field,
        )?;
        if rows.len() != rank {
            return Err(validation(&linear_field, format!("must be {rank}x{rank}")));
        }
        let mut linear = IntMatrix::zero(rank, rank);
        for (r, row) in rows.iter().enumerate() {
            let row = as_array(row, &format!("{linear_field}[{r}]"))?;
            if row.len() != rank {
                return Err(validation(&linear_field, format!("must be {rank}x{rank}")));
            }
            for (c, entry) in row.iter().enumerate() {
                linear.set(r, c, as_integer(entry, &format!("{linear_field}[{r}][{c}]"))?);
            }
        }
        let translation_field = format!("generators[{gi}].translation");
        let tvals = as_array(
            gobj.get("translation")
                .ok_or_else(|| validation(&translation_field, "missing"))?,
            &translation_field,
        )?;
        if tvals.len() != rank {
            return Err(validation(
                &translation_field,
                format!("must have {rank} entries"),
            ));
        }
        let mut translation = Vec::with_capacity(rank);
        for (i, t) in tvals.iter().enumerate() {
            translation.push(as_rat(t, &format!("{translation_field}[{i}]"))?);
        }
        generators.push(AffineAut::new(linear, translation));
    }

    let period = match obj.get("period") {
        None | Some(Value::Null) => None,
        Some(p) => {
            let pobj = as_object(p, "period")?;
            let conductor = as_u64(
                pobj.get("conductor")
                    .ok_or_else(|| validation("period.conductor", "missing"))?,
                "period.conductor",
            )?;
            if conductor == 0 {
                return Err(validation("period.conductor", "must be positive"));
            }
            let degree = euler_phi(conductor) as usize;
            let rows = as_array(
                pobj.get("matrix")
                    .ok_or_else(|| validation("period.matrix", "missing"))?,
                "period.matrix",
            )?;
            if rows.len() != n {
                return Err(validation(
                    "period.matrix",
                    format!("must have {n} rows (half the lattice rank)"),
                ));
            }
            let mut matrix = CycloMatrix::zero(n, rank, conductor);
            for (r, row) in rows.iter().enumerate() {
                let row = as_array(row, &format!("period.matrix[{r}]"))?;
                if row.len() != rank {
                    return Err(validation(
                        "period.matrix",
                        format!("each row must have {rank} entries"),
                    ));
                }
                for (c, entry) in row.iter().enumerate() {
                    let field = format!("period.matrix[{r}][{c}]");
                    let coeffs = as_array(entry, &field)?;
                    if coeffs.len() != degree {
                        return Err(validation(
                            &field,
                            format!("needs {degree} coefficients for conductor {conductor}"),
                        ));
                    }
                    let mut v = Vec::with_capacity(degree);
                    for (k, cv) in coeffs.iter().enumerate() {
                        v.push(as_rat(cv, &format!("{field}[{k}]"))?);
                    }
                    matrix.set(r, c, CycloElem::new(conductor, v));
                }
            }
            Some(matrix)
        }
    };

    TorusAction::new(name, n, generators, period)
        .map_err(|e| validation("document", e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_document() {
        let doc = r#"{
            "name": "tiny",
            "rank": 2,
            "generators": [
                { "linear": [[-1, 0], [0, -1]], "translation": ["0", "1/2"] }
            ]
        }"#;
        let action = parse_action(doc).unwrap();
        assert_eq!(action.name, "tiny");
        assert_eq!(action.half_dim, 1);
        assert_eq!(action.generators.len(), 1);
        assert!(action.period.is_none());
    }

    #[test]
    fn rejects_wrong_linear_shape() {
        let doc = r#"{
            "rank": 4,
            "generators": [
                { "linear": [[1,0,0],[0,1,0],[0,0,1]], "translation": ["0","0","0","0"] }
            ]
        }"#;
        match parse_action(doc) {
            Err(CliError::Validation { field, reason }) => {
                assert_eq!(field, "generators[0].linear");
                assert!(reason.contains("4x4"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_denominator() {
        let doc = r#"{
            "rank": 2,
            "generators": [
                { "linear": [[-1,0],[0,-1]], "translation": ["1/0", "0"] }
            ]
        }"#;
        assert!(matches!(
            parse_action(doc),
            Err(CliError::Validation { .. })
        ));
    }

    #[test]
    fn reports_syntax_location() {
        match parse_action("{ not json") {
            Err(CliError::Parse { location, .. }) => assert!(location.contains("line 1")),
            other => panic!("unexpected {other:?}"),
        }
    }
}

//! Reading matrices and witnesses from JSON files.
//!
//! A matrix file is either the library's own format (`{"ring":…,"n":…,"rows":…}`)
//! or a bare array of rows, whose entries may be JSON integers or decimal
//! strings; a bare array needs `--ring`, and entries are reduced into it.

use std::fs;
use std::path::Path;

use k1_core::{BigInt, Error, InvertibleMatrix, RingDescriptor, SquareMatrix, Witness};
use serde_json::Value;

use crate::Failure;

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: &Path, ring: Option<RingDescriptor>) -> Result<SquareMatrix, Failure> {
    let value = read_json(path)?;
    let matrix = match value {
        Value::Array(rows) => {
            let ring = ring.ok_or_else(|| {
                Failure::Malformed(format!("{}: a bare row array needs --ring", path.display()))
            })?;
            let rows = rows
                .iter()
                .map(parse_row)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
            SquareMatrix::from_rows(ring, rows)?
        }
        other => {
            let m: SquareMatrix = serde_json::from_value(other)
                .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
            match ring {
                Some(ring) if ring != m.ring() => {
                    return Err(Error::RingMismatch(ring, m.ring()).into())
                }
                _ => {}
            }
            m
        }
    };
    Ok(matrix)
}

pub fn read_invertible(
    path: &Path,
    ring: Option<RingDescriptor>,
) -> Result<InvertibleMatrix, Failure> {
    let m = read_matrix(path, ring)?;
    m.try_invert()
        .ok_or_else(|| Failure::Malformed(format!("{}: matrix is not invertible", path.display())))
}

pub fn read_witness(path: &Path) -> Result<Witness, Failure> {
    serde_json::from_value(read_json(path)?)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn parse_row(row: &Value) -> Result<Vec<BigInt>, String> {
    let Value::Array(entries) = row else {
        return Err(format!("row {row} is not an array"));
    };
    entries.iter().map(parse_entry).collect()
}

fn parse_entry(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            n.to_string().parse().map_err(|_| format!("bad entry {n}"))
        }
        Value::String(s) => s.trim().parse().map_err(|_| format!("bad entry {s:?}")),
        other => Err(format!("entry {other} is not an integer")),
    }
}

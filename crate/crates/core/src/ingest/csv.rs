use std::fs;
use std::path::Path;

use super::IngestError;
use crate::datamodel::{AttributeKind, AttributeSpec, RelationalTable, Value};

fn read_file(path: &Path) -> Result<String, IngestError> {
    fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn table_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes())
}

fn header_of(name: &str, rdr: &mut csv::Reader<&[u8]>) -> Result<Vec<String>, IngestError> {
    let header = rdr.headers().map_err(|source| IngestError::Malformed {
        table: name.to_string(),
        source,
    })?;
    if header.is_empty() {
        return Err(IngestError::MissingHeader {
            table: name.to_string(),
        });
    }
    Ok(header.iter().map(String::from).collect())
}

/// Column names from the first line of a CSV file.
pub fn read_header(path: &Path) -> Result<Vec<String>, IngestError> {
    let text = read_file(path)?;
    header_of(&table_name(path), &mut reader(&text))
}

/// Loads a comma-separated file whose header must equal the schema names in order.
/// The table is named after the file stem.
pub fn load_csv(path: &Path, schema: Vec<AttributeSpec>) -> Result<RelationalTable, IngestError> {
    let text = read_file(path)?;
    parse_csv(&table_name(path), &text, schema)
}

/// Parses CSV text. Data rows are numbered from 1 by line; blank lines are skipped.
pub fn parse_csv(name: &str, text: &str, schema: Vec<AttributeSpec>) -> Result<RelationalTable, IngestError> {
    let mut rdr = reader(text);
    let header = header_of(name, &mut rdr)?;
    let expected: Vec<&str> = schema.iter().map(|a| a.name.as_str()).collect();
    if header != expected {
        return Err(IngestError::HeaderMismatch {
            table: name.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: header,
        });
    }

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|source| IngestError::Malformed {
            table: name.to_string(),
            source,
        })?;
        let row_no = record.position().map_or(0, |p| p.line() as usize - 1);
        if record.len() != schema.len() {
            return Err(IngestError::FieldCount {
                table: name.to_string(),
                row: row_no,
                expected: schema.len(),
                found: record.len(),
            });
        }
        let row = schema
            .iter()
            .zip(record.iter())
            .map(|(spec, cell)| match spec.kind {
                AttributeKind::Categorical => Ok(Value::text(cell)),
                AttributeKind::Quantitative => cell
                    .parse::<f64>()
                    .ok()
                    .filter(|n| n.is_finite())
                    .map(Value::Number)
                    .ok_or_else(|| IngestError::BadNumber {
                        table: name.to_string(),
                        row: row_no,
                        attribute: spec.name.clone(),
                        cell: cell.to_string(),
                    }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(RelationalTable::new(name, schema, rows)?)
}

use super::IngestError;
use crate::datamodel::{AttributeKind, RelationalTable, Value};

/// Replaces each number in a quantitative attribute by the label of the bin
/// `[lower, upper)` containing it. The attribute becomes categorical.
pub fn discretize(table: &RelationalTable, attr: &str) -> Result<RelationalTable, IngestError> {
    let col = table.require(attr)?;
    let spec = &table.schema()[col];
    let bins = match (spec.kind, &spec.bins) {
        (AttributeKind::Quantitative, Some(bins)) => bins,
        _ => {
            return Err(IngestError::NotDiscretizable {
                attribute: attr.to_string(),
                reason: "attribute is already categorical".into(),
            })
        }
    };
    let mut rows = table.rows().to_vec();
    for (r, row) in rows.iter_mut().enumerate() {
        let v = row[col].as_number().expect("quantitative cells are numbers");
        let bin = bins.iter().find(|b| b.contains(v)).ok_or(IngestError::OutsideBins {
            attribute: attr.to_string(),
            row: r + 1,
            value: v,
        })?;
        row[col] = Value::text(bin.label.as_str());
    }
    let mut schema = table.schema().to_vec();
    schema[col].kind = AttributeKind::Categorical;
    schema[col].bins = None;
    Ok(RelationalTable::new(table.name(), schema, rows)?)
}

/// Discretizes every quantitative attribute of the table.
pub fn discretize_all(table: &RelationalTable) -> Result<RelationalTable, IngestError> {
    let quantitative: Vec<String> = table
        .schema()
        .iter()
        .filter(|a| a.kind == AttributeKind::Quantitative)
        .map(|a| a.name.clone())
        .collect();
    let mut out = table.clone();
    for attr in quantitative {
        out = discretize(&out, &attr)?;
    }
    Ok(out)
}

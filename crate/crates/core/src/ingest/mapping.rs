use std::collections::HashMap;

use super::IngestError;
use crate::datamodel::{AttributeSpec, RelationalTable, Value};

/// A finite relation from source tuples to target tuples.
///
/// One-to-one, one-to-many, many-to-one and many-to-many functions are all
/// expressed as lookup entries; a source tuple with several target tuples
/// multiplies the rows it occurs in. Identical `(source, target)` entries are
/// stored once.
#[derive(Debug, Clone, PartialEq)]
pub struct MappingFunction {
    source_attrs: Vec<String>,
    target_attrs: Vec<String>,
    entries: Vec<(Vec<Value>, Vec<String>)>,
}

impl MappingFunction {
    pub fn new<S: Into<String>, T: Into<String>>(
        source_attrs: impl IntoIterator<Item = S>,
        target_attrs: impl IntoIterator<Item = T>,
        entries: impl IntoIterator<Item = (Vec<Value>, Vec<String>)>,
    ) -> Result<Self, IngestError> {
        let source_attrs: Vec<String> = source_attrs.into_iter().map(Into::into).collect();
        let target_attrs: Vec<String> = target_attrs.into_iter().map(Into::into).collect();
        if source_attrs.is_empty() || target_attrs.is_empty() {
            return Err(IngestError::InvalidMapping(
                "source and target attribute lists must be non-empty".into(),
            ));
        }
        let mut deduped: Vec<(Vec<Value>, Vec<String>)> = Vec::new();
        for (src, dst) in entries {
            if src.len() != source_attrs.len() || dst.len() != target_attrs.len() {
                return Err(IngestError::InvalidMapping(format!(
                    "entry {src:?} -> {dst:?} does not match arity {} -> {}",
                    source_attrs.len(),
                    target_attrs.len()
                )));
            }
            if !deduped.iter().any(|(s, d)| s == &src && d == &dst) {
                deduped.push((src, dst));
            }
        }
        Ok(MappingFunction {
            source_attrs,
            target_attrs,
            entries: deduped,
        })
    }

    /// Reads entries from a table whose columns include every source and target attribute.
    pub fn from_table(
        table: &RelationalTable,
        source_attrs: &[String],
        target_attrs: &[String],
    ) -> Result<Self, IngestError> {
        let src_cols = source_attrs
            .iter()
            .map(|a| table.require(a))
            .collect::<Result<Vec<_>, _>>()?;
        let dst_cols = target_attrs
            .iter()
            .map(|a| table.require(a))
            .collect::<Result<Vec<_>, _>>()?;
        let entries = table.rows().iter().map(|row| {
            (
                src_cols.iter().map(|&c| row[c].clone()).collect(),
                dst_cols.iter().map(|&c| row[c].to_string()).collect(),
            )
        });
        MappingFunction::new(source_attrs.iter().cloned(), target_attrs.iter().cloned(), entries)
    }

    pub fn source_attrs(&self) -> &[String] {
        &self.source_attrs
    }

    pub fn target_attrs(&self) -> &[String] {
        &self.target_attrs
    }

    pub fn entries(&self) -> &[(Vec<Value>, Vec<String>)] {
        &self.entries
    }
}

/// Appends the function's target columns (categorical) by looking up each
/// row's source tuple.
pub fn apply_mapping_function(table: &RelationalTable, func: &MappingFunction) -> Result<RelationalTable, IngestError> {
    let src_cols = func
        .source_attrs
        .iter()
        .map(|a| table.require(a))
        .collect::<Result<Vec<_>, _>>()?;
    for t in &func.target_attrs {
        if table.position(t).is_some() {
            return Err(IngestError::InvalidMapping(format!(
                "target attribute {t:?} already exists in {}",
                table.name()
            )));
        }
    }
    let mut lookup: HashMap<&[Value], Vec<&Vec<String>>> = HashMap::new();
    for (src, dst) in &func.entries {
        lookup.entry(src.as_slice()).or_default().push(dst);
    }

    let mut schema = table.schema().to_vec();
    schema.extend(func.target_attrs.iter().map(AttributeSpec::categorical));
    let mut rows = Vec::with_capacity(table.len());
    for row in table.rows() {
        let key: Vec<Value> = src_cols.iter().map(|&c| row[c].clone()).collect();
        let targets = lookup
            .get(key.as_slice())
            .ok_or_else(|| IngestError::UnmappedTuple(key.iter().map(|v| v.to_string()).collect()))?;
        for target in targets {
            let mut out = row.clone();
            out.extend(target.iter().map(|v| Value::text(v.as_str())));
            rows.push(out);
        }
    }
    Ok(RelationalTable::new(table.name(), schema, rows)?)
}

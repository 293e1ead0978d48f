use std::collections::{BTreeMap, HashSet};

use super::{Code, MapCodeError, MapCodeRegistry};
use crate::datamodel::{GeneralTable, Value};

/// `(key value, code)` rows: which combinations each key value carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdTable {
    pub key_dim: String,
    pub rows: Vec<(Value, Code)>,
}

impl MdTable {
    pub fn new(key_dim: impl Into<String>, rows: Vec<(Value, Code)>) -> Self {
        MdTable {
            key_dim: key_dim.into(),
            rows,
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CombineOptions {
    /// Rows are kept only if, for every listed attribute, the row's value is
    /// one of the allowed values.
    pub filters: BTreeMap<String, Vec<String>>,
    /// Assign all codes in a first scan, then look them up in a second scan.
    /// Produces the same output as the default single pass.
    pub two_pass: bool,
}

pub fn combine_dims<S: AsRef<str>>(
    general: &GeneralTable,
    key_dim: &str,
    selected_dims: &[S],
) -> Result<(MapCodeRegistry, MdTable), MapCodeError> {
    combine_dims_with(general, key_dim, selected_dims, &CombineOptions::default())
}

/// Assigns a code to each distinct value combination of `selected_dims` and
/// pairs it with the row's `key_dim` value. Codes follow first-encounter row
/// order; repeated `(key, code)` pairs are kept once.
pub fn combine_dims_with<S: AsRef<str>>(
    general: &GeneralTable,
    key_dim: &str,
    selected_dims: &[S],
    options: &CombineOptions,
) -> Result<(MapCodeRegistry, MdTable), MapCodeError> {
    if selected_dims.is_empty() {
        return Err(MapCodeError::EmptySelection);
    }
    let categorical_column = |name: &str| -> Result<usize, MapCodeError> {
        let col = general
            .position(name)
            .ok_or_else(|| MapCodeError::UnknownAttribute(name.to_string()))?;
        if !general.schema()[col].is_categorical() {
            return Err(MapCodeError::NotCategorical(name.to_string()));
        }
        Ok(col)
    };
    let key_col = categorical_column(key_dim)?;
    let mut seen = HashSet::new();
    let mut sel_cols = Vec::with_capacity(selected_dims.len());
    for d in selected_dims {
        let d = d.as_ref();
        if d == key_dim {
            return Err(MapCodeError::KeyInSelection(d.to_string()));
        }
        if !seen.insert(d) {
            return Err(MapCodeError::DuplicateSelection(d.to_string()));
        }
        sel_cols.push(categorical_column(d)?);
    }
    let filters = options
        .filters
        .iter()
        .map(|(attr, allowed)| {
            let col = general
                .position(attr)
                .ok_or_else(|| MapCodeError::UnknownAttribute(attr.clone()))?;
            Ok((col, allowed.iter().map(String::as_str).collect::<HashSet<_>>()))
        })
        .collect::<Result<Vec<_>, MapCodeError>>()?;

    let kept = general.rows().iter().filter(|row| {
        filters
            .iter()
            .all(|(col, allowed)| allowed.contains(row[*col].to_string().as_str()))
    });
    let combo_of = |row: &Vec<Value>| -> Vec<String> { sel_cols.iter().map(|&c| row[c].to_string()).collect() };

    let mut registry = MapCodeRegistry::new(selected_dims.iter().map(|d| d.as_ref().to_string()).collect());
    let mut emitted: HashSet<(&Value, Code)> = HashSet::new();
    let mut rows = Vec::new();
    if options.two_pass {
        for row in kept.clone() {
            let combo = combo_of(row);
            if registry.lookup(&combo).is_none() {
                registry.get_or_assign(&combo);
            }
        }
        for row in kept {
            let code = registry.lookup(&combo_of(row)).expect("assigned in first pass");
            if emitted.insert((&row[key_col], code)) {
                rows.push((row[key_col].clone(), code));
            }
        }
    } else {
        for row in kept {
            let code = registry.get_or_assign(&combo_of(row));
            if emitted.insert((&row[key_col], code)) {
                rows.push((row[key_col].clone(), code));
            }
        }
    }
    Ok((registry, MdTable::new(key_dim, rows)))
}

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::datamodel::{GeneralTable, RelationalTable, Value};

/// Equi-join of one fact-table attribute with a dimension-table key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinLink {
    pub fact_key: String,
    pub dim_table: String,
    pub dim_key: String,
}

impl JoinLink {
    pub fn new(fact_key: &str, dim_table: &str, dim_key: &str) -> Self {
        JoinLink {
            fact_key: fact_key.into(),
            dim_table: dim_table.into(),
            dim_key: dim_key.into(),
        }
    }
}

/// User-declared star join: which dimensions hang off the fact table and which
/// `(table, attribute)` columns make up the general table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinSpec {
    pub fact_table: String,
    #[serde(default)]
    pub links: Vec<JoinLink>,
    pub projected_attrs: Vec<(String, String)>,
}

impl JoinSpec {
    pub fn validate(&self, tables: &[RelationalTable]) -> Result<(), IngestError> {
        let bad = |m: String| Err(IngestError::InvalidJoin(m));
        let find = |name: &str| tables.iter().find(|t| t.name() == name);
        let Some(fact) = find(&self.fact_table) else {
            return bad(format!("fact table {:?} not found", self.fact_table));
        };
        let mut seen = HashSet::new();
        for link in &self.links {
            if fact.position(&link.fact_key).is_none() {
                return bad(format!("fact table has no attribute {:?}", link.fact_key));
            }
            let Some(dim) = find(&link.dim_table) else {
                return bad(format!("dimension table {:?} not found", link.dim_table));
            };
            if dim.position(&link.dim_key).is_none() {
                return bad(format!(
                    "table {:?} has no attribute {:?}",
                    link.dim_table, link.dim_key
                ));
            }
            if !seen.insert((&link.fact_key, &link.dim_table)) {
                return bad(format!(
                    "more than one link from {:?} to {:?}",
                    link.fact_key, link.dim_table
                ));
            }
        }
        if self.projected_attrs.is_empty() {
            return bad("no projected attributes".into());
        }
        let mut names = HashSet::new();
        for (table, attr) in &self.projected_attrs {
            let joined = table == &self.fact_table || self.links.iter().any(|l| &l.dim_table == table);
            if !joined {
                return bad(format!("projected table {table:?} is not part of the join"));
            }
            let t = find(table).expect("joined tables exist");
            if t.position(attr).is_none() {
                return bad(format!("table {table:?} has no attribute {attr:?}"));
            }
            if !names.insert(attr) {
                return bad(format!("projected attribute name {attr:?} is ambiguous"));
            }
        }
        Ok(())
    }
}

/// Joins the fact table with each linked dimension and projects the declared
/// columns. Output rows follow fact-row order, one per matching combination
/// of dimension rows. Any fact key without a dimension match is an error.
pub fn join_tables(tables: &[RelationalTable], spec: &JoinSpec) -> Result<GeneralTable, IngestError> {
    spec.validate(tables)?;
    let find = |name: &str| tables.iter().find(|t| t.name() == name).expect("validated");
    let fact = find(&spec.fact_table);

    struct Prepared<'a> {
        fact_col: usize,
        dim: &'a RelationalTable,
        index: HashMap<&'a Value, Vec<usize>>,
    }
    let prepared: Vec<Prepared> = spec
        .links
        .iter()
        .map(|link| {
            let dim = find(&link.dim_table);
            let key_col = dim.position(&link.dim_key).expect("validated");
            let mut index: HashMap<&Value, Vec<usize>> = HashMap::new();
            for (r, row) in dim.rows().iter().enumerate() {
                index.entry(&row[key_col]).or_default().push(r);
            }
            Prepared {
                fact_col: fact.position(&link.fact_key).expect("validated"),
                dim,
                index,
            }
        })
        .collect();

    for (link, p) in spec.links.iter().zip(&prepared) {
        let mut orphans: Vec<String> = Vec::new();
        for row in fact.rows() {
            let key = &row[p.fact_col];
            if !p.index.contains_key(key) && !orphans.contains(&key.to_string()) {
                orphans.push(key.to_string());
            }
        }
        if !orphans.is_empty() {
            return Err(IngestError::OrphanKeys {
                fact_key: link.fact_key.clone(),
                dim_table: link.dim_table.clone(),
                dim_key: link.dim_key.clone(),
                keys: orphans,
            });
        }
    }

    // Source of each output column: None for the fact table, Some(link) otherwise.
    let sources: Vec<(Option<usize>, usize)> = spec
        .projected_attrs
        .iter()
        .map(|(table, attr)| {
            if table == &spec.fact_table {
                (None, fact.position(attr).expect("validated"))
            } else {
                let l = spec
                    .links
                    .iter()
                    .position(|l| &l.dim_table == table)
                    .expect("validated");
                (Some(l), prepared[l].dim.position(attr).expect("validated"))
            }
        })
        .collect();
    let schema = spec
        .projected_attrs
        .iter()
        .map(|(table, attr)| find(table).attribute(attr).expect("validated").clone())
        .collect();

    let mut rows = Vec::with_capacity(fact.len());
    for fact_row in fact.rows() {
        let matches: Vec<&Vec<usize>> = prepared.iter().map(|p| &p.index[&fact_row[p.fact_col]]).collect();
        // Odometer over the cartesian product of matching dimension rows.
        let mut choice = vec![0usize; matches.len()];
        'combos: loop {
            rows.push(
                sources
                    .iter()
                    .map(|&(src, col)| match src {
                        None => fact_row[col].clone(),
                        Some(l) => prepared[l].dim.rows()[matches[l][choice[l]]][col].clone(),
                    })
                    .collect(),
            );
            for k in (0..matches.len()).rev() {
                choice[k] += 1;
                if choice[k] < matches[k].len() {
                    continue 'combos;
                }
                choice[k] = 0;
            }
            break;
        }
    }
    Ok(RelationalTable::new("general", schema, rows)?)
}

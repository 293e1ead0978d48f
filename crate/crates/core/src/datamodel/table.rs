use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{DataModelError, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttributeKind {
    Categorical,
    Quantitative,
}

/// A half-open interval `[lower, upper)` that discretizes to `label`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bin {
    pub label: String,
    pub lower: f64,
    pub upper: f64,
}

impl Bin {
    pub fn new(label: impl Into<String>, lower: f64, upper: f64) -> Self {
        Bin {
            label: label.into(),
            lower,
            upper,
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v < self.upper
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeSpec {
    pub name: String,
    pub kind: AttributeKind,
    /// Present iff `kind` is quantitative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bins: Option<Vec<Bin>>,
    /// Explicit categorical domain. When set, bitmap encoding creates one item
    /// per domain value even if the value never occurs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<Vec<String>>,
}

impl AttributeSpec {
    pub fn categorical(name: impl Into<String>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Categorical,
            bins: None,
            domain: None,
        }
    }

    pub fn quantitative(name: impl Into<String>, bins: Vec<Bin>) -> Self {
        AttributeSpec {
            name: name.into(),
            kind: AttributeKind::Quantitative,
            bins: Some(bins),
            domain: None,
        }
    }

    pub fn with_domain<I, S>(mut self, domain: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.domain = Some(domain.into_iter().map(Into::into).collect());
        self
    }

    pub fn is_categorical(&self) -> bool {
        self.kind == AttributeKind::Categorical
    }

    pub fn validate(&self) -> Result<(), DataModelError> {
        let bad = |reason: String| DataModelError::InvalidAttribute {
            name: self.name.clone(),
            reason,
        };
        match (self.kind, &self.bins) {
            (AttributeKind::Categorical, Some(_)) => {
                return Err(bad("categorical attribute must not declare bins".into()))
            }
            (AttributeKind::Quantitative, None) => return Err(bad("quantitative attribute requires bins".into())),
            (AttributeKind::Quantitative, Some(bins)) => {
                for b in bins {
                    if !(b.lower.is_finite() && b.upper.is_finite() && b.lower < b.upper) {
                        return Err(bad(format!("bin {:?} has an empty or non-finite interval", b.label)));
                    }
                }
                for w in bins.windows(2) {
                    if w[0].upper > w[1].lower {
                        return Err(bad(format!(
                            "bins {:?} and {:?} overlap or are not ascending",
                            w[0].label, w[1].label
                        )));
                    }
                }
            }
            (AttributeKind::Categorical, None) => {}
        }
        if let Some(domain) = &self.domain {
            if self.kind != AttributeKind::Categorical {
                return Err(bad("only categorical attributes take an explicit domain".into()));
            }
            let mut seen = HashSet::new();
            for v in domain {
                if !seen.insert(v) {
                    return Err(bad(format!("domain value {v:?} listed twice")));
                }
            }
        }
        Ok(())
    }
}

/// A named relation: a schema and rows of atomic values. Row `j` is object `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationalTable {
    name: String,
    schema: Vec<AttributeSpec>,
    rows: Vec<Vec<Value>>,
}

/// The single relation produced by joining fact and dimension tables.
pub type GeneralTable = RelationalTable;

impl RelationalTable {
    /// Builds a table, checking the schema and every cell against its attribute kind.
    pub fn new(
        name: impl Into<String>,
        schema: Vec<AttributeSpec>,
        rows: Vec<Vec<Value>>,
    ) -> Result<Self, DataModelError> {
        check_schema(&schema)?;
        for (r, row) in rows.iter().enumerate() {
            if row.len() != schema.len() {
                return Err(DataModelError::RowArity {
                    row: r,
                    expected: schema.len(),
                    found: row.len(),
                });
            }
            for (spec, v) in schema.iter().zip(row) {
                let ok = match (spec.kind, v) {
                    (AttributeKind::Categorical, Value::Text(_)) => true,
                    (AttributeKind::Quantitative, Value::Number(n)) => n.is_finite(),
                    _ => false,
                };
                if !ok {
                    return Err(DataModelError::CellKind {
                        row: r,
                        attribute: spec.name.clone(),
                        value: v.to_string(),
                    });
                }
            }
        }
        Ok(RelationalTable {
            name: name.into(),
            schema,
            rows,
        })
    }

    /// Convenience constructor for all-categorical tables.
    pub fn categorical(name: &str, columns: &[&str], rows: &[&[&str]]) -> Result<Self, DataModelError> {
        let schema = columns.iter().map(|c| AttributeSpec::categorical(*c)).collect();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|v| Value::text(*v)).collect())
            .collect();
        RelationalTable::new(name, schema, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn schema(&self) -> &[AttributeSpec] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn attribute_names(&self) -> Vec<String> {
        self.schema.iter().map(|a| a.name.clone()).collect()
    }

    pub fn position(&self, attribute: &str) -> Option<usize> {
        self.schema.iter().position(|a| a.name == attribute)
    }

    pub fn attribute(&self, attribute: &str) -> Option<&AttributeSpec> {
        self.schema.iter().find(|a| a.name == attribute)
    }

    /// Like [`position`](Self::position) but fails with an error naming the attribute.
    pub fn require(&self, attribute: &str) -> Result<usize, DataModelError> {
        self.position(attribute)
            .ok_or_else(|| DataModelError::UnknownAttribute {
                table: self.name.clone(),
                attribute: attribute.to_string(),
            })
    }

    pub fn column(&self, idx: usize) -> impl Iterator<Item = &Value> + '_ {
        self.rows.iter().map(move |r| &r[idx])
    }

    pub fn into_parts(self) -> (String, Vec<AttributeSpec>, Vec<Vec<Value>>) {
        (self.name, self.schema, self.rows)
    }
}

pub(crate) fn check_schema(schema: &[AttributeSpec]) -> Result<(), DataModelError> {
    let mut seen = HashSet::new();
    for spec in schema {
        spec.validate()?;
        if !seen.insert(spec.name.as_str()) {
            return Err(DataModelError::DuplicateAttribute(spec.name.clone()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_attribute() {
        let err = RelationalTable::categorical("t", &["a", "a"], &[]).unwrap_err();
        assert!(matches!(err, DataModelError::DuplicateAttribute(ref a) if a == "a"));
    }

    #[test]
    fn rejects_wrong_arity_and_kind() {
        assert!(matches!(
            RelationalTable::categorical("t", &["a", "b"], &[&["x"]]),
            Err(DataModelError::RowArity { row: 0, .. })
        ));
        let schema = vec![AttributeSpec::quantitative("inc", vec![Bin::new("lo", 0.0, 1.0)])];
        assert!(RelationalTable::new("t", schema.clone(), vec![vec![Value::text("x")]]).is_err());
        assert!(RelationalTable::new("t", schema.clone(), vec![vec![Value::Number(f64::INFINITY)]]).is_err());
        assert!(RelationalTable::new("t", schema, vec![vec![Value::Number(0.5)]]).is_ok());
    }

    #[test]
    fn bins_must_be_ordered_and_disjoint() {
        let overlapping = AttributeSpec::quantitative("x", vec![Bin::new("a", 0.0, 10.0), Bin::new("b", 5.0, 20.0)]);
        assert!(overlapping.validate().is_err());
        let descending = AttributeSpec::quantitative("x", vec![Bin::new("b", 10.0, 20.0), Bin::new("a", 0.0, 10.0)]);
        assert!(descending.validate().is_err());
        let adjacent = AttributeSpec::quantitative("x", vec![Bin::new("a", 0.0, 10.0), Bin::new("b", 10.0, 20.0)]);
        assert!(adjacent.validate().is_ok());
        let mut cat_with_bins = AttributeSpec::categorical("x");
        cat_with_bins.bins = Some(vec![]);
        assert!(cat_with_bins.validate().is_err());
    }
}

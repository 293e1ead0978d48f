use std::collections::HashMap;

use super::{DataModelError, RelationalTable, Value};

/// An information system `S = (U, At, V, f)` over a relational table.
///
/// Objects are row indices, so `U = 0..r` and `f(j, a)` is the cell at row `j`
/// and column `a`. The value function is total by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct InformationSystem {
    universe: Vec<usize>,
    attributes: Vec<String>,
    values: Vec<Vec<Value>>,
}

/// Partition of the universe into indiscernibility classes for a set of attributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClassPartition {
    pub attribute_set: Vec<String>,
    /// Classes in order of their first member; members ascending.
    pub classes: Vec<Vec<usize>>,
}

pub fn build_information_system(table: &RelationalTable) -> Result<InformationSystem, DataModelError> {
    super::table::check_schema(table.schema())?;
    Ok(InformationSystem {
        universe: (0..table.len()).collect(),
        attributes: table.attribute_names(),
        values: table.rows().to_vec(),
    })
}

impl InformationSystem {
    pub fn universe(&self) -> &[usize] {
        &self.universe
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    /// `f(object, attribute)`; `None` only for ids or names outside the system.
    pub fn value(&self, object: usize, attribute: &str) -> Option<&Value> {
        let a = self.attributes.iter().position(|x| x == attribute)?;
        self.values.get(object).map(|row| &row[a])
    }

    /// `V_a`: the distinct values of `attribute`, in first-occurrence order.
    pub fn value_set(&self, attribute: &str) -> Option<Vec<&Value>> {
        let a = self.attributes.iter().position(|x| x == attribute)?;
        let mut seen = std::collections::HashSet::new();
        Some(
            self.values
                .iter()
                .map(|row| &row[a])
                .filter(|v| seen.insert(*v))
                .collect(),
        )
    }

    pub fn partition_by_attributes<S: AsRef<str>>(
        &self,
        attrs: &[S],
    ) -> Result<EquivalenceClassPartition, DataModelError> {
        partition_by_attributes(self, attrs)
    }
}

/// Groups objects that agree on every attribute in `attrs`.
pub fn partition_by_attributes<S: AsRef<str>>(
    sys: &InformationSystem,
    attrs: &[S],
) -> Result<EquivalenceClassPartition, DataModelError> {
    if attrs.is_empty() {
        return Err(DataModelError::EmptyAttributeSet);
    }
    let cols = attrs
        .iter()
        .map(|a| {
            sys.attributes
                .iter()
                .position(|x| x == a.as_ref())
                .ok_or_else(|| DataModelError::UnknownAttribute {
                    table: "information system".into(),
                    attribute: a.as_ref().to_string(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut index: HashMap<Vec<&Value>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &obj in &sys.universe {
        let key: Vec<&Value> = cols.iter().map(|&c| &sys.values[obj][c]).collect();
        let class = *index.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[class].push(obj);
    }
    Ok(EquivalenceClassPartition {
        attribute_set: attrs.iter().map(|a| a.as_ref().to_string()).collect(),
        classes,
    })
}

impl EquivalenceClassPartition {
    /// Whether every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &EquivalenceClassPartition) -> bool {
        let mut owner = HashMap::new();
        for (ci, class) in coarser.classes.iter().enumerate() {
            for &o in class {
                owner.insert(o, ci);
            }
        }
        self.classes.iter().all(|class| {
            let first = owner.get(&class[0]);
            first.is_some() && class.iter().all(|o| owner.get(o) == first)
        })
    }
}

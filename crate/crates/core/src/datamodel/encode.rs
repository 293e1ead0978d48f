//! One-hot bitmap encoding of categorical tables.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Bitmap, DataModelError, RelationalTable};

/// One binary column of a bitmap table: a distinct `(attribute, value)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Item {
    pub id: usize,
    pub attribute: String,
    pub value: String,
}

impl Item {
    /// Display name, e.g. `age_young`. Not unique when names contain `_`;
    /// `(attribute, value)` is the identity.
    pub fn name(&self) -> String {
        format!("{}_{}", self.attribute, self.value)
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.attribute, self.value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BitmapTable {
    attributes: Vec<String>,
    items: Vec<Item>,
    columns: Vec<Bitmap>,
    universe_size: usize,
}

impl BitmapTable {
    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn columns(&self) -> &[Bitmap] {
        &self.columns
    }

    pub fn column(&self, item: usize) -> &Bitmap {
        &self.columns[item]
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    /// Source attribute names, in schema order.
    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn find(&self, attribute: &str, value: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.attribute == attribute && i.value == value)
    }

    /// Object-major view: for object `j`, the bits across all items.
    pub fn row(&self, object: usize) -> Vec<bool> {
        self.columns.iter().map(|c| c.get(object)).collect()
    }

    /// Rebuilds the categorical cells by picking, per object and attribute,
    /// the item whose bit is set.
    pub fn decode(&self) -> Result<Vec<Vec<String>>, DataModelError> {
        let mut out = Vec::with_capacity(self.universe_size);
        for obj in 0..self.universe_size {
            let mut row = Vec::with_capacity(self.attributes.len());
            for attr in &self.attributes {
                let mut hits = self
                    .items
                    .iter()
                    .filter(|i| &i.attribute == attr && self.columns[i.id].get(obj));
                match (hits.next(), hits.next()) {
                    (Some(item), None) => row.push(item.value.clone()),
                    _ => {
                        return Err(DataModelError::NotOneHot {
                            object: obj,
                            attribute: attr.clone(),
                        })
                    }
                }
            }
            out.push(row);
        }
        Ok(out)
    }
}

/// Encodes every categorical attribute as one bit column per distinct value.
///
/// Item ids run by attribute position, then by first occurrence of the value
/// (or by declared domain order when the attribute carries a domain).
pub fn bitmap_encode(table: &RelationalTable) -> Result<BitmapTable, DataModelError> {
    let n = table.len();
    let mut items = Vec::new();
    let mut columns: Vec<Bitmap> = Vec::new();

    for (col, spec) in table.schema().iter().enumerate() {
        if !spec.is_categorical() {
            return Err(DataModelError::NotCategorical(spec.name.clone()));
        }
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let push_item = |value: &str, items: &mut Vec<Item>, columns: &mut Vec<Bitmap>| {
            let id = items.len();
            items.push(Item {
                id,
                attribute: spec.name.clone(),
                value: value.to_string(),
            });
            columns.push(Bitmap::zeros(n));
            id
        };
        if let Some(domain) = &spec.domain {
            for v in domain {
                let id = push_item(v, &mut items, &mut columns);
                ids.insert(v.as_str(), id);
            }
        }
        for (row, v) in table.column(col).enumerate() {
            let v = v.as_text().expect("categorical cells are text");
            let id = match ids.get(v) {
                Some(&id) => id,
                None if spec.domain.is_some() => {
                    return Err(DataModelError::OutsideDomain {
                        attribute: spec.name.clone(),
                        value: v.to_string(),
                        row,
                    })
                }
                None => {
                    let id = push_item(v, &mut items, &mut columns);
                    ids.insert(v, id);
                    id
                }
            };
            columns[id].set(row);
        }
    }

    Ok(BitmapTable {
        attributes: table.attribute_names(),
        items,
        columns,
        universe_size: n,
    })
}

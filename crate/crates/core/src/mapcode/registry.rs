use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::MapCodeError;
use crate::mining::FrequentItemset;

/// A mapping code. Rendered as a decimal zero-padded to at least four digits
/// (`0001`, ..., `9999`, `10000`); ordering is numeric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Code(u32);

impl Code {
    pub const fn new(n: u32) -> Self {
        Code(n)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.0)
    }
}

impl FromStr for Code {
    type Err = MapCodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(MapCodeError::BadCode(s.to_string()));
        }
        s.parse().map(Code).map_err(|_| MapCodeError::BadCode(s.to_string()))
    }
}

impl From<Code> for String {
    fn from(c: Code) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Code {
    type Error = MapCodeError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// One `dimension(value)` predicate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimValue {
    pub dimension: String,
    pub value: String,
}

impl DimValue {
    pub fn new(dimension: impl Into<String>, value: impl Into<String>) -> Self {
        DimValue {
            dimension: dimension.into(),
            value: value.into(),
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.dimension, self.value)
    }
}

/// Bijection between value combinations over the selected dimensions and codes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MapCodeRegistry {
    dims: Vec<String>,
    combos: Vec<Vec<String>>,
    index: HashMap<Vec<String>, Code>,
}

impl MapCodeRegistry {
    pub fn new(dims: Vec<String>) -> Self {
        MapCodeRegistry {
            dims,
            combos: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn dims(&self) -> &[String] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.combos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combos.is_empty()
    }

    /// CheckMapCode.
    pub fn lookup(&self, combo: &[String]) -> Option<Code> {
        self.index.get(combo).copied()
    }

    /// Returns the combo's code, assigning the next sequential one if unseen.
    pub fn get_or_assign(&mut self, combo: &[String]) -> Code {
        debug_assert_eq!(combo.len(), self.dims.len());
        if let Some(c) = self.index.get(combo) {
            return *c;
        }
        let code = Code(self.combos.len() as u32 + 1);
        self.combos.push(combo.to_vec());
        self.index.insert(combo.to_vec(), code);
        code
    }

    pub fn combo(&self, code: Code) -> Result<&[String], MapCodeError> {
        (code.0 as usize)
            .checked_sub(1)
            .and_then(|i| self.combos.get(i))
            .map(Vec::as_slice)
            .ok_or_else(|| MapCodeError::UnknownCode(code.to_string()))
    }

    /// The `(dimension, value)` pairs a code stands for, in dimension order.
    pub fn expand(&self, code: Code) -> Result<Vec<DimValue>, MapCodeError> {
        Ok(self
            .dims
            .iter()
            .zip(self.combo(code)?)
            .map(|(d, v)| DimValue::new(d.as_str(), v.as_str()))
            .collect())
    }

    /// Union of the expansions of `codes`, deduplicated and ordered by
    /// dimension position, then value.
    pub fn expand_all(&self, codes: &[Code]) -> Result<Vec<DimValue>, MapCodeError> {
        let mut pairs = Vec::new();
        for &c in codes {
            pairs.extend(self.expand(c)?);
        }
        self.sort_pairs(&mut pairs);
        pairs.dedup();
        Ok(pairs)
    }

    pub fn sort_pairs(&self, pairs: &mut [DimValue]) {
        let pos = |d: &str| self.dims.iter().position(|x| x == d).unwrap_or(usize::MAX);
        pairs.sort_by(|a, b| {
            pos(&a.dimension)
                .cmp(&pos(&b.dimension))
                .then_with(|| a.dimension.cmp(&b.dimension))
                .then_with(|| a.value.cmp(&b.value))
        });
    }

    pub fn iter(&self) -> impl Iterator<Item = (Code, &[String])> + '_ {
        self.combos
            .iter()
            .enumerate()
            .map(|(i, c)| (Code(i as u32 + 1), c.as_slice()))
    }

    /// Audit export: `code,combination` with `dim=value` pairs joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>, rec: [&str; 2]| w.write_record(rec).expect("writing to memory");
        write(&mut w, ["code", "combination"]);
        for (code, combo) in self.iter() {
            let pairs: Vec<String> = self.dims.iter().zip(combo).map(|(d, v)| format!("{d}={v}")).collect();
            write(&mut w, [&code.to_string(), &pairs.join(";")]);
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("input was UTF-8")
    }
}

/// A frequent itemset after its codes have been replaced by dimension values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LargeItemset {
    pub codes: Vec<Code>,
    pub items: Vec<DimValue>,
    pub support_count: u64,
    pub support: f64,
}

impl LargeItemset {
    pub fn level(&self) -> usize {
        self.codes.len()
    }
}

/// Replaces every code of every itemset by its dimension values. Supports are unchanged.
pub fn transform_map_code(
    itemsets: &[FrequentItemset],
    registry: &MapCodeRegistry,
) -> Result<Vec<LargeItemset>, MapCodeError> {
    itemsets
        .iter()
        .map(|fi| {
            Ok(LargeItemset {
                codes: fi.items.clone(),
                items: registry.expand_all(&fi.items)?,
                support_count: fi.support_count,
                support: fi.support,
            })
        })
        .collect()
}

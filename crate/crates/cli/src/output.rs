//! Text and line-delimited JSON renderings of itemsets, rules and statistics.

use std::fmt::Write as _;

use rshar_core::mapcode::{DimValue, LargeItemset};
use rshar_core::rules::{format_percent, format_rule, AssociationRule};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemsetRecord {
    pub items: Vec<DimValue>,
    pub codes: Vec<String>,
    pub level: usize,
    pub support_count: u64,
    pub support: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleRecord {
    pub antecedent: Vec<DimValue>,
    pub consequent: Vec<DimValue>,
    pub support_count: u64,
    pub antecedent_count: u64,
    pub support: f64,
    pub confidence: f64,
}

impl From<&LargeItemset> for ItemsetRecord {
    fn from(l: &LargeItemset) -> Self {
        ItemsetRecord {
            items: l.items.clone(),
            codes: l.codes.iter().map(ToString::to_string).collect(),
            level: l.level(),
            support_count: l.support_count,
            support: l.support,
        }
    }
}

impl From<&AssociationRule> for RuleRecord {
    fn from(r: &AssociationRule) -> Self {
        RuleRecord {
            antecedent: r.antecedent.clone(),
            consequent: r.consequent.clone(),
            support_count: r.support_count,
            antecedent_count: r.antecedent_count,
            support: r.support,
            confidence: r.confidence,
        }
    }
}

/// `{age_Middle, city_Melb} {sup=66.67%, count=2/3}`, one itemset per line.
pub fn itemsets_text(itemsets: &[LargeItemset], n_groups: usize) -> String {
    let mut out = String::new();
    for l in itemsets {
        let names: Vec<String> = l.items.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            out,
            "{{{}}} {{sup={}%, count={}/{}}}",
            names.join(", "),
            format_percent(l.support),
            l.support_count,
            n_groups
        );
    }
    out
}

pub fn rules_text(rules: &[AssociationRule]) -> String {
    rules.iter().map(|r| format_rule(r) + "\n").collect()
}

pub fn jsonl<T: Serialize>(records: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(&r).expect("records serialize"));
        out.push('\n');
    }
    out
}

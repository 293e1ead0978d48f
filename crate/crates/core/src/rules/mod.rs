//! Association rules from decoded frequent itemsets.
//!
//! Rules are split at code granularity: for a frequent code set `F` and a
//! non-empty proper subset `A`, the antecedent is the expansion of `A` and the
//! consequent is the expansion of `F \ A` minus anything already in the
//! antecedent. Dimensions marked repeatable may appear with several values in
//! one rule (`Buy("Beer") → Buy("Diaper")`); every other dimension may carry
//! at most one value.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mapcode::{Code, DimValue, LargeItemset, MapCodeError, MapCodeRegistry};
use crate::ratio::{Fraction, FractionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error(transparent)]
    MinConfidence(#[from] FractionError),
    #[error("frequent itemset list is not downward closed: subset {0:?} is missing")]
    MissingSubset(Vec<String>),
    #[error("itemset with {0} codes is too large to split into rules")]
    TooLarge(usize),
    #[error(transparent)]
    Decode(#[from] MapCodeError),
}

/// Which dimensions may occur with more than one value in a rule.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionPolicy {
    pub repeatable: BTreeSet<String>,
}

impl DimensionPolicy {
    pub fn with_repeatable<I, S>(dims: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        DimensionPolicy {
            repeatable: dims.into_iter().map(Into::into).collect(),
        }
    }

    pub fn is_repeatable(&self, dim: &str) -> bool {
        self.repeatable.contains(dim)
    }

    /// Whether every non-repeatable dimension has at most one value in `pairs`.
    pub fn admits(&self, pairs: &[DimValue]) -> bool {
        let mut first: HashMap<&str, &str> = HashMap::new();
        pairs.iter().all(|p| {
            self.is_repeatable(&p.dimension) || *first.entry(&p.dimension).or_insert(&p.value) == p.value.as_str()
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociationRule {
    pub antecedent: Vec<DimValue>,
    pub consequent: Vec<DimValue>,
    pub antecedent_codes: Vec<Code>,
    pub consequent_codes: Vec<Code>,
    /// Groups containing antecedent and consequent.
    pub support_count: u64,
    /// Groups containing the antecedent.
    pub antecedent_count: u64,
    pub support: f64,
    pub confidence: f64,
}

impl AssociationRule {
    fn cmp_canonical(&self, other: &Self) -> Ordering {
        let conf = |r: &Self| (r.support_count as u128, r.antecedent_count as u128);
        let ((a_n, a_d), (b_n, b_d)) = (conf(self), conf(other));
        other
            .support_count
            .cmp(&self.support_count)
            .then_with(|| (b_n * a_d).cmp(&(a_n * b_d)))
            .then_with(|| self.antecedent.cmp(&other.antecedent))
            .then_with(|| self.consequent.cmp(&other.consequent))
            .then_with(|| self.antecedent_codes.cmp(&other.antecedent_codes))
            .then_with(|| self.consequent_codes.cmp(&other.consequent_codes))
    }
}

/// Generates every rule `A → F \ A` with confidence `>= minconf` whose pairs
/// satisfy `policy`. `frequent` must contain every subset of each itemset.
/// Output is ordered by support, then confidence (both descending), then
/// antecedent and consequent.
pub fn gen_rules(
    frequent: &[LargeItemset],
    registry: &MapCodeRegistry,
    minconf: Fraction,
    policy: &DimensionPolicy,
) -> Result<Vec<AssociationRule>, RuleError> {
    let minconf = minconf.check_unit("minconf")?;
    let counts: HashMap<&[Code], u64> = frequent.iter().map(|f| (f.codes.as_slice(), f.support_count)).collect();

    let mut rules = Vec::new();
    for itemset in frequent.iter().filter(|f| f.codes.len() >= 2) {
        if !policy.admits(&itemset.items) {
            continue;
        }
        let k = itemset.codes.len();
        if k >= 64 {
            return Err(RuleError::TooLarge(k));
        }
        for mask in 1u64..(1u64 << k) - 1 {
            let mut ante = Vec::new();
            let mut cons = Vec::new();
            for (i, &c) in itemset.codes.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    ante.push(c);
                } else {
                    cons.push(c);
                }
            }
            let ante_count = *counts
                .get(ante.as_slice())
                .ok_or_else(|| RuleError::MissingSubset(ante.iter().map(Code::to_string).collect()))?;
            if !minconf.is_met_by(itemset.support_count, ante_count) {
                continue;
            }
            let antecedent = registry.expand_all(&ante)?;
            let consequent: Vec<DimValue> = registry
                .expand_all(&cons)?
                .into_iter()
                .filter(|p| !antecedent.contains(p))
                .collect();
            if consequent.is_empty() {
                continue;
            }
            rules.push(AssociationRule {
                antecedent,
                consequent,
                antecedent_codes: ante,
                consequent_codes: cons,
                support_count: itemset.support_count,
                antecedent_count: ante_count,
                support: itemset.support,
                confidence: itemset.support_count as f64 / ante_count as f64,
            });
        }
    }
    rules.sort_by(AssociationRule::cmp_canonical);
    Ok(rules)
}

/// Percentage with at most two decimals and no trailing zeros.
pub fn format_percent(fraction: f64) -> String {
    let s = format!("{:.2}", fraction * 100.0);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn write_side(out: &mut String, pairs: &[DimValue]) {
    for (i, p) in pairs.iter().enumerate() {
        if i > 0 {
            out.push_str(" ∧ ");
        }
        let _ = write!(out, "{}(\"{}\")", p.dimension, p.value);
    }
}

/// Renders `dim("value") ∧ … → dim("value") ∧ … {sup=P%, conf=Q%}`.
pub fn format_rule(rule: &AssociationRule) -> String {
    let mut out = String::new();
    write_side(&mut out, &rule.antecedent);
    out.push_str(" → ");
    write_side(&mut out, &rule.consequent);
    let _ = write!(
        out,
        " {{sup={}%, conf={}%}}",
        format_percent(rule.support),
        format_percent(rule.confidence)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(d: &str, v: &str) -> DimValue {
        DimValue::new(d, v)
    }

    fn large(reg: &MapCodeRegistry, codes: &[u32], count: u64, n: u64) -> LargeItemset {
        let codes: Vec<Code> = codes.iter().map(|&c| Code::new(c)).collect();
        LargeItemset {
            items: reg.expand_all(&codes).unwrap(),
            codes,
            support_count: count,
            support: count as f64 / n as f64,
        }
    }

    fn registry(dims: &[&str], combos: &[&[&str]]) -> MapCodeRegistry {
        let mut reg = MapCodeRegistry::new(dims.iter().map(|s| s.to_string()).collect());
        for c in combos {
            reg.get_or_assign(&c.iter().map(|s| s.to_string()).collect::<Vec<_>>());
        }
        reg
    }

    #[test]
    fn percent_rendering() {
        assert_eq!(format_percent(0.3), "30");
        assert_eq!(format_percent(1.0 / 3.0), "33.33");
        assert_eq!(format_percent(0.125), "12.5");
        assert_eq!(format_percent(1.0), "100");
        assert_eq!(format_percent(0.0), "0");
    }

    #[test]
    fn rule_one_notation() {
        let rule = AssociationRule {
            antecedent: vec![dv("buys", "laptop")],
            consequent: vec![dv("buys", "b/w printer")],
            antecedent_codes: vec![Code::new(1)],
            consequent_codes: vec![Code::new(2)],
            support_count: 1,
            antecedent_count: 3,
            support: 0.25,
            confidence: 1.0 / 3.0,
        };
        assert_eq!(
            format_rule(&rule),
            "buys(\"laptop\") → buys(\"b/w printer\") {sup=25%, conf=33.33%}"
        );
    }

    #[test]
    fn singletons_give_no_rules() {
        let reg = registry(&["Buy"], &[&["Beer"], &["Diaper"]]);
        let frequent = vec![large(&reg, &[1], 3, 4), large(&reg, &[2], 2, 4)];
        assert!(gen_rules(
            &frequent,
            &reg,
            Fraction::new(1, 10).unwrap(),
            &DimensionPolicy::default()
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn confidence_threshold_and_ordering() {
        let reg = registry(&["Buy"], &[&["Beer"], &["Diaper"]]);
        let policy = DimensionPolicy::with_repeatable(["Buy"]);
        // 10 groups: Beer 5, Diaper 4, both 4
        let frequent = vec![
            large(&reg, &[1], 5, 10),
            large(&reg, &[2], 4, 10),
            large(&reg, &[1, 2], 4, 10),
        ];
        let rules = gen_rules(&frequent, &reg, Fraction::new(1, 2).unwrap(), &policy).unwrap();
        assert_eq!(rules.len(), 2);
        assert_eq!(rules[0].antecedent, vec![dv("Buy", "Diaper")]);
        assert_eq!(rules[0].confidence, 1.0);
        assert_eq!(rules[1].confidence, 0.8);
        let exact = gen_rules(&frequent, &reg, Fraction::ONE, &policy).unwrap();
        assert_eq!(exact.len(), 1);
        assert_eq!(exact[0].support_count, exact[0].antecedent_count);
    }

    #[test]
    fn single_dimension_with_two_values_is_excluded() {
        let reg = registry(&["Times", "Buy"], &[&["1997", "Beer"], &["1998", "Diaper"]]);
        let frequent = vec![
            large(&reg, &[1], 5, 10),
            large(&reg, &[2], 5, 10),
            large(&reg, &[1, 2], 5, 10),
        ];
        let single_times = DimensionPolicy::with_repeatable(["Buy"]);
        assert!(gen_rules(&frequent, &reg, Fraction::new(1, 10).unwrap(), &single_times)
            .unwrap()
            .is_empty());
        let both = DimensionPolicy::with_repeatable(["Buy", "Times"]);
        assert_eq!(
            gen_rules(&frequent, &reg, Fraction::new(1, 10).unwrap(), &both)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn consequent_drops_pairs_already_in_antecedent() {
        let reg = registry(&["Times", "Buy"], &[&["1998", "Beer"], &["1998", "Diaper"]]);
        let frequent = vec![
            large(&reg, &[1], 5, 10),
            large(&reg, &[2], 5, 10),
            large(&reg, &[1, 2], 5, 10),
        ];
        let rules = gen_rules(
            &frequent,
            &reg,
            Fraction::ONE,
            &DimensionPolicy::with_repeatable(["Buy"]),
        )
        .unwrap();
        assert_eq!(rules.len(), 2);
        for r in &rules {
            assert_eq!(r.consequent.len(), 1);
            assert!(r.antecedent.iter().all(|p| !r.consequent.contains(p)));
        }
    }

    #[test]
    fn missing_subset_and_bad_minconf() {
        let reg = registry(&["Buy"], &[&["Beer"], &["Diaper"]]);
        let frequent = vec![large(&reg, &[1], 5, 10), large(&reg, &[1, 2], 4, 10)];
        let policy = DimensionPolicy::with_repeatable(["Buy"]);
        assert!(matches!(
            gen_rules(&frequent, &reg, Fraction::new(1, 10).unwrap(), &policy),
            Err(RuleError::MissingSubset(s)) if s == vec!["0002".to_string()]
        ));
        assert!(gen_rules(&frequent, &reg, Fraction::new(0, 1).unwrap(), &policy).is_err());
    }

    #[test]
    fn policy_admits() {
        let p = DimensionPolicy::with_repeatable(["Buy"]);
        assert!(p.admits(&[dv("Times", "1998"), dv("Buy", "a"), dv("Buy", "b")]));
        assert!(!p.admits(&[dv("Times", "1998"), dv("Times", "1997")]));
        assert!(p.admits(&[dv("Times", "1998"), dv("Times", "1998")]));
    }
}

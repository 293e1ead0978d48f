//! Acceptance suite. Runs each criterion in isolation and prints one
//! PASS/FAIL line per criterion; exits non-zero if any fail.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rshar_cli::pipeline::DETERMINISTIC_FILES;
use rshar_cli::{run_pipeline, Algorithm, RunConfig, SynthSpec};
use rshar_core::datamodel::{bitmap_encode, AttributeSpec, RelationalTable, Value};
use rshar_core::mapcode::{combine_dims, transform_map_code, Code, DimValue, MapCodeRegistry};
use rshar_core::mining::{
    apriori_baseline, brute_force_frequent, fi_gen, group_by_key, FrequentItemset, TransactionView,
};
use rshar_core::rules::{format_rule, gen_rules, DimensionPolicy};
use rshar_core::Fraction;

const N_VIEWS: u64 = 120;
const MINSUPS: [(u64, u64); 11] = [
    (1, 20),
    (1, 10),
    (3, 20),
    (1, 5),
    (3, 10),
    (2, 5),
    (1, 2),
    (3, 5),
    (7, 10),
    (4, 5),
    (9, 10),
];
const MINCONFS: [(u64, u64); 4] = [(3, 10), (1, 2), (4, 5), (1, 1)];

struct Case {
    baskets: Vec<Vec<u32>>,
    minsup: Fraction,
    frequent: Vec<FrequentItemset>,
}

fn random_views() -> Vec<(Vec<Vec<u32>>, Fraction)> {
    (0..N_VIEWS)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n_codes = rng.random_range(1..=12u32);
            let n_groups = rng.random_range(1..=200usize);
            let density = rng.random_range(0.1..0.8);
            let baskets = (0..n_groups)
                .map(|_| {
                    let mut b: Vec<u32> = (1..=n_codes).filter(|_| rng.random_bool(density)).collect();
                    if b.is_empty() {
                        b.push(rng.random_range(1..=n_codes));
                    }
                    b
                })
                .collect();
            let (n, d) = MINSUPS[rng.random_range(0..MINSUPS.len())];
            (baskets, Fraction::new(n, d).unwrap())
        })
        .collect()
}

fn criterion_1() -> Vec<Case> {
    let start = Instant::now();
    let mut cases = Vec::new();
    for (baskets, minsup) in random_views() {
        let view = TransactionView::from_baskets(&baskets);
        let (rshar, _) = fi_gen(&view, minsup).unwrap();
        let (apriori, _) = apriori_baseline(&view, minsup).unwrap();
        let brute = brute_force_frequent(&view, minsup).unwrap();
        assert_eq!(rshar, brute, "fi_gen differs from brute force at minsup {minsup}");
        assert_eq!(apriori, brute, "apriori differs from brute force at minsup {minsup}");
        cases.push(Case {
            baskets,
            minsup,
            frequent: brute,
        });
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!(
        "    {} views, {} itemsets total, {elapsed:.2?}",
        cases.len(),
        cases.iter().map(|c| c.frequent.len()).sum::<usize>()
    );
    cases
}

fn criterion_2() {
    let schema = vec![AttributeSpec::categorical("age").with_domain(["young", "middle", "old"])];
    let rows = ["young", "middle", "middle"]
        .iter()
        .map(|v| vec![Value::text(*v)])
        .collect();
    let table = RelationalTable::new("ages", schema, rows).unwrap();
    let bm = bitmap_encode(&table).unwrap();
    let rows: Vec<Vec<bool>> = (0..3).map(|o| bm.row(o)).collect();
    let (t, f) = (true, false);
    assert_eq!(rows, vec![vec![t, f, f], vec![f, t, f], vec![f, t, f]]);
    let names: Vec<String> = bm.items().iter().map(|i| i.name()).collect();
    assert_eq!(names, ["age_young", "age_middle", "age_old"]);
}

fn rule_3_table() -> RelationalTable {
    let mut rows: Vec<[String; 4]> = Vec::new();
    for g in 0..40 {
        let tid = format!("t{g:02}");
        let row = |loc: &str, buy: &str, year: &str| [tid.clone(), year.to_string(), loc.to_string(), buy.to_string()];
        match g {
            0..12 => {
                rows.push(row("Melb", "Beer", "1998"));
                rows.push(row("Melb", "Diaper", "1998"));
            }
            12..15 => rows.push(row("Melb", "Beer", "1998")),
            15..28 => rows.push(row("Syd", "Milk", "1997")),
            _ => {
                rows.push(row("Melb", "Bread", "1998"));
                rows.push(row("Syd", "Milk", "1997"));
            }
        }
    }
    let refs: Vec<Vec<&str>> = rows.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    let refs: Vec<&[&str]> = refs.iter().map(Vec::as_slice).collect();
    RelationalTable::categorical("general", &["tid", "Times", "Location", "Buy"], &refs).unwrap()
}

fn criterion_3() {
    let (reg, md) = combine_dims(&rule_3_table(), "tid", &["Times", "Location", "Buy"]).unwrap();
    let view = group_by_key(&md);
    assert_eq!(view.len(), 40);
    let (fis, _) = fi_gen(&view, Fraction::new(3, 10).unwrap()).unwrap();
    let large = transform_map_code(&fis, &reg).unwrap();
    let rules = gen_rules(
        &large,
        &reg,
        Fraction::new(1, 2).unwrap(),
        &DimensionPolicy::with_repeatable(["Buy"]),
    )
    .unwrap();
    let expected = "Times(\"1998\") ∧ Location(\"Melb\") ∧ Buy(\"Beer\") → Buy(\"Diaper\") {sup=30%, conf=80%}";
    let rule = rules.iter().find(|r| format_rule(r) == expected).unwrap_or_else(|| {
        panic!(
            "rule not found in {:?}",
            rules.iter().map(format_rule).collect::<Vec<_>>()
        )
    });
    assert_eq!((rule.support_count, rule.antecedent_count), (12, 15));
    assert_eq!(rule.support, 0.30);
    assert_eq!(rule.confidence, 0.80);
    assert!(Fraction::new(3, 10).unwrap().is_met_by(rule.support_count, 40));
    assert!(!Fraction::new(31, 100).unwrap().is_met_by(rule.support_count, 40));
}

fn criterion_4() {
    let table = RelationalTable::categorical(
        "general",
        &["tid", "Times", "ChannelProduct"],
        &[
            &["t1", "Jan 1998", "Direct sales/Men-Jeans"],
            &["t1", "Jan 1998", "Internet/Men-Jeans"],
            &["t2", "Jan 1998", "Direct sales/Men-Jeans"],
        ],
    )
    .unwrap();
    let (reg, md) = combine_dims(&table, "tid", &["Times", "ChannelProduct"]).unwrap();
    let first = reg
        .lookup(&["Jan 1998".into(), "Direct sales/Men-Jeans".into()])
        .unwrap();
    assert_eq!(first.to_string(), "0001");
    assert_eq!(md.rows[0], (Value::text("t1"), first));
    assert!(reg
        .to_csv()
        .contains("0001,Times=Jan 1998;ChannelProduct=Direct sales/Men-Jeans\n"));

    let view = group_by_key(&md);
    let (fis, _) = fi_gen(&view, Fraction::new(1, 2).unwrap()).unwrap();
    let large = transform_map_code(&fis, &reg).unwrap();
    let one = large.iter().find(|l| l.codes == [first]).unwrap();
    assert_eq!(
        one.items,
        vec![
            DimValue::new("Times", "Jan 1998"),
            DimValue::new("ChannelProduct", "Direct sales/Men-Jeans")
        ]
    );
    assert_eq!(one.support_count, 2);
    assert_eq!(reg.lookup(reg.combo(first).unwrap()), Some(first));
}

fn synth_config(rows: usize, out: &Path) -> RunConfig {
    RunConfig {
        synth: Some(SynthSpec::with_fact_rows(rows)),
        seed: Some(20_070_101),
        minsup: "0.45%".parse().unwrap(),
        algorithm: Algorithm::Both,
        out: out.to_path_buf(),
        ..RunConfig::default()
    }
}

fn criterion_5() -> Vec<FrequentItemset> {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let out = run_pipeline(&synth_config(10_000, dir.path())).unwrap();
    let elapsed = start.elapsed();
    let rshar = out.run("rshar").unwrap();
    let apriori = out.run("apriori").unwrap();
    assert_eq!(rshar.stats.full_scans_of_groups, 1);
    assert!(
        rshar.itemsets_per_level.len() >= 2,
        "no level-2 itemsets: {:?}",
        rshar.itemsets_per_level
    );
    assert!(
        apriori.stats.full_scans_of_groups >= 2,
        "apriori scanned {}",
        apriori.stats.full_scans_of_groups
    );
    assert_eq!(rshar.itemsets, apriori.itemsets);
    assert_eq!(rshar.itemsets_per_level, apriori.itemsets_per_level);
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!(
        "    {} groups, {} codes, levels {:?}, scans rshar={} apriori={}, {elapsed:.2?}",
        out.view.len(),
        out.registry.len(),
        rshar.itemsets_per_level,
        rshar.stats.full_scans_of_groups,
        apriori.stats.full_scans_of_groups
    );
    rshar.itemsets.clone()
}

fn check_downward_closed(frequent: &[FrequentItemset]) {
    let counts: HashMap<&[Code], u64> = frequent.iter().map(|f| (f.items.as_slice(), f.support_count)).collect();
    for f in frequent {
        let k = f.items.len();
        for mask in 1u32..(1 << k) - 1 {
            let sub: Vec<Code> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f.items[i]).collect();
            let c = counts
                .get(sub.as_slice())
                .unwrap_or_else(|| panic!("{sub:?} missing, subset of {:?}", f.items));
            assert!(*c >= f.support_count, "{sub:?} has {c} < {}", f.support_count);
        }
    }
}

fn criterion_6(cases: &[Case], synthetic: &[FrequentItemset]) {
    for case in cases {
        check_downward_closed(&case.frequent);
    }
    check_downward_closed(synthetic);
}

fn registry_for(baskets: &[Vec<u32>]) -> MapCodeRegistry {
    let max = baskets.iter().flatten().copied().max().unwrap_or(0);
    let mut reg = MapCodeRegistry::new(vec!["Times".into(), "Buy".into()]);
    for c in 1..=max {
        // Codes 1..=max in order; several share a Times value so the policy bites.
        reg.get_or_assign(&[format!("{}", 1997 + c % 3), format!("b{}", c % 5)]);
    }
    reg
}

type RuleKey = (Vec<Code>, Vec<Code>, BTreeSet<DimValue>, BTreeSet<DimValue>, u64, u64);

fn criterion_7(cases: &[Case]) {
    let policy = DimensionPolicy::with_repeatable(["Buy"]);
    let mut total = 0;
    for (i, case) in cases.iter().enumerate() {
        let reg = registry_for(&case.baskets);
        let view = TransactionView::from_baskets(&case.baskets);
        let (fis, _) = fi_gen(&view, case.minsup).unwrap();
        let large = transform_map_code(&fis, &reg).unwrap();
        let n = case.baskets.len() as u64;
        let count = |codes: &[Code]| {
            case.baskets
                .iter()
                .filter(|b| codes.iter().all(|c| b.contains(&c.get())))
                .count() as u64
        };
        for (num, den) in MINCONFS {
            let minconf = Fraction::new(num, den).unwrap();
            let got: Vec<RuleKey> = gen_rules(&large, &reg, minconf, &policy)
                .unwrap()
                .into_iter()
                .map(|r| {
                    (
                        r.antecedent_codes,
                        r.consequent_codes,
                        r.antecedent.into_iter().collect(),
                        r.consequent.into_iter().collect(),
                        r.support_count,
                        r.antecedent_count,
                    )
                })
                .collect();
            let mut expected = Vec::new();
            for f in case.frequent.iter().filter(|f| f.items.len() >= 2) {
                let cf = count(&f.items);
                assert!(case.minsup.is_met_by(cf, n));
                let all = reg.expand_all(&f.items).unwrap();
                let mut per_dim: HashMap<&str, usize> = HashMap::new();
                for p in &all {
                    *per_dim.entry(p.dimension.as_str()).or_default() += 1;
                }
                if per_dim.iter().any(|(d, &k)| k > 1 && *d != "Buy") {
                    continue;
                }
                let k = f.items.len();
                for mask in 1u32..(1 << k) - 1 {
                    let (a, c): (Vec<Code>, Vec<Code>) = {
                        let a = (0..k).filter(|j| mask & (1 << j) != 0).map(|j| f.items[j]).collect();
                        let c = (0..k).filter(|j| mask & (1 << j) == 0).map(|j| f.items[j]).collect();
                        (a, c)
                    };
                    let ca = count(&a);
                    if !minconf.is_met_by(cf, ca) {
                        continue;
                    }
                    let ante: BTreeSet<DimValue> = reg.expand_all(&a).unwrap().into_iter().collect();
                    let cons: BTreeSet<DimValue> = reg
                        .expand_all(&c)
                        .unwrap()
                        .into_iter()
                        .filter(|p| !ante.contains(p))
                        .collect();
                    if !cons.is_empty() {
                        expected.push((a, c, ante, cons, cf, ca));
                    }
                }
            }
            let mut got_sorted = got.clone();
            got_sorted.sort();
            expected.sort();
            assert_eq!(got_sorted, expected, "view {i}, minconf {minconf}");
            total += got.len();
        }
    }
    println!(
        "    {} views x {} minconf values, {total} rules checked",
        cases.len(),
        MINCONFS.len()
    );
}

fn read_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = DETERMINISTIC_FILES
        .iter()
        .map(|f| (f.to_string(), fs::read(dir.join(f)).unwrap()))
        .collect();
    for entry in fs::read_dir(dir.join("data")).unwrap() {
        let p = entry.unwrap().path();
        files.push((
            format!("data/{}", p.file_name().unwrap().to_string_lossy()),
            fs::read(&p).unwrap(),
        ));
    }
    files.sort();
    files
}

fn criterion_8() {
    let dirs: Vec<_> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    let mut outputs = Vec::new();
    for (i, dir) in dirs.iter().enumerate() {
        let mut config = synth_config(3_000, dir.path());
        config.threads = if i == 2 { 4 } else { 1 };
        run_pipeline(&config).unwrap();
        outputs.push(read_outputs(dir.path()));
    }
    assert!(outputs[0].len() >= DETERMINISTIC_FILES.len());
    for (name, bytes) in &outputs[0] {
        assert!(
            !bytes.is_empty() || name.ends_with(".jsonl") || name.ends_with(".txt"),
            "{name} empty"
        );
    }
    assert_eq!(outputs[0], outputs[1], "repeated serial runs differ");
    assert_eq!(outputs[0], outputs[2], "parallel run differs from serial");
}

fn check<T>(label: &str, failed: &mut usize, f: impl FnOnce() -> T) -> Option<T> {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(v) => {
            println!("PASS  {label}");
            Some(v)
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            println!("FAIL  {label}: {msg}");
            *failed += 1;
            None
        }
    }
}

fn main() {
    // Failures are reported on the summary line; keep the default hook quiet.
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let cases = check(
        "1 oracle equivalence: fi_gen = apriori = brute force",
        &mut failed,
        criterion_1,
    );
    check("2 bitmap encoding of the three-row age table", &mut failed, criterion_2);
    check("3 Beer/Diaper rule at sup=30%, conf=80%", &mut failed, criterion_3);
    check(
        "4 first mapping code is 0001 and decodes back",
        &mut failed,
        criterion_4,
    );
    let synthetic = check("5 scan counts on synthetic sales data", &mut failed, criterion_5);
    check("6 anti-monotonicity of every emitted itemset", &mut failed, || {
        criterion_6(
            cases.as_deref().expect("criterion 1 failed"),
            synthetic.as_deref().expect("criterion 5 failed"),
        )
    });
    check("7 rules equal brute-force enumeration", &mut failed, || {
        criterion_7(cases.as_deref().expect("criterion 1 failed"))
    });
    check(
        "8 byte-identical outputs across runs and thread counts",
        &mut failed,
        criterion_8,
    );
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

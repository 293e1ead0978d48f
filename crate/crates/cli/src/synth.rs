//! Synthetic star-schema sales data: four dimension tables and one fact
//! table, with Zipf-skewed popularity so that frequent combinations exist at
//! fractions of a percent.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use rshar_core::datamodel::Bin;
use rshar_core::ingest::JoinLink;
use serde::{Deserialize, Serialize};

use crate::PipelineError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthSpec {
    pub n_customers: usize,
    pub n_products: usize,
    pub n_times: usize,
    pub n_channels: usize,
    pub n_fact_rows: usize,
    /// Zipf exponent for customer, product, time and channel popularity.
    pub skew: f64,
    /// Largest number of fact rows (products) in one transaction.
    pub max_basket: usize,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            n_customers: 100,
            n_products: 50,
            n_times: 50,
            n_channels: 60,
            n_fact_rows: 10_000,
            skew: 1.0,
            max_basket: 6,
        }
    }
}

impl SynthSpec {
    pub fn with_fact_rows(n_fact_rows: usize) -> Self {
        SynthSpec {
            n_fact_rows,
            ..SynthSpec::default()
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let counts = [
            self.n_customers,
            self.n_products,
            self.n_times,
            self.n_channels,
            self.max_basket,
        ];
        if counts.contains(&0) {
            return Err(PipelineError::Usage(
                "synthetic dimension sizes and max_basket must be >= 1".into(),
            ));
        }
        if !(self.skew.is_finite() && self.skew >= 0.0) {
            return Err(PipelineError::Usage(
                "synthetic skew must be a finite number >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// CSV text of the generated tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SalesData {
    pub customer: String,
    pub product: String,
    pub times: String,
    pub channel: String,
    pub fact: String,
}

const GENDERS: [&str; 2] = ["F", "M"];
const CITIES: [&str; 8] = ["Melb", "Syd", "Bris", "Perth", "Adel", "Hobart", "Darwin", "Canb"];
const CATEGORIES: [&str; 8] = [
    "Men-Jeans",
    "Women-Dress",
    "Kids-Shoes",
    "Beer",
    "Diaper",
    "Laptop",
    "Printer",
    "Snacks",
];
const MONTHS: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];
const CHANNEL_CLASSES: [&str; 5] = ["Direct sales", "Internet", "Catalog", "Partners", "Tele sales"];
const REGIONS: [&str; 4] = ["North", "South", "East", "West"];

struct Picker {
    zipf: Zipf<f64>,
    n: usize,
}

impl Picker {
    fn new(n: usize, skew: f64) -> Self {
        Picker {
            zipf: Zipf::new(n as f64, skew).expect("n >= 1 and skew >= 0"),
            n,
        }
    }

    // 0-based index; index 0 is the most popular
    fn pick(&self, rng: &mut ChaCha8Rng) -> usize {
        (self.zipf.sample(rng) as usize).clamp(1, self.n) - 1
    }
}

/// Generates the sales database. Identical `(spec, seed)` give identical text.
pub fn generate_sales(spec: &SynthSpec, seed: u64) -> Result<SalesData, PipelineError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut customer = String::from("customer_id,gender,age,city,income\n");
    for i in 0..spec.n_customers {
        let gender = GENDERS[rng.random_range(0..GENDERS.len())];
        let age = rng.random_range(18..80);
        let city = CITIES[rng.random_range(0..CITIES.len())];
        let income = 500 * rng.random_range(4..30);
        let _ = writeln!(customer, "C{:03},{gender},{age},{city},{income}", i + 1);
    }

    let mut product = String::from("product_id,product_name,category\n");
    for i in 0..spec.n_products {
        let category = CATEGORIES[i % CATEGORIES.len()];
        let _ = writeln!(
            product,
            "P{:03},{category}-{:02},{category}",
            i + 1,
            i / CATEGORIES.len() + 1
        );
    }

    let mut times = String::from("time_id,month,year\n");
    for i in 0..spec.n_times {
        let _ = writeln!(
            times,
            "T{:03},{} {},{}",
            i + 1,
            MONTHS[i % 12],
            1997 + i / 12,
            1997 + i / 12
        );
    }

    let mut channel = String::from("channel_id,channel_class,channel_region\n");
    for i in 0..spec.n_channels {
        let class = CHANNEL_CLASSES[i % CHANNEL_CLASSES.len()];
        let region = REGIONS[(i / CHANNEL_CLASSES.len()) % REGIONS.len()];
        let _ = writeln!(channel, "CH{:03},{class},{region}", i + 1);
    }

    let customers = Picker::new(spec.n_customers, spec.skew);
    let products = Picker::new(spec.n_products, spec.skew);
    let times_p = Picker::new(spec.n_times, spec.skew);
    let channels = Picker::new(spec.n_channels, spec.skew);

    let mut fact = String::from("txn_id,customer_id,product_id,time_id,channel_id,quantity\n");
    let mut rows = 0;
    let mut txn = 0;
    while rows < spec.n_fact_rows {
        txn += 1;
        let size = rng.random_range(1..=spec.max_basket).min(spec.n_fact_rows - rows);
        let c = customers.pick(&mut rng) + 1;
        let t = times_p.pick(&mut rng) + 1;
        let ch = channels.pick(&mut rng) + 1;
        let mut basket: Vec<usize> = Vec::with_capacity(size);
        for _ in 0..size {
            // a few redraws keep baskets mostly duplicate-free
            let mut p = products.pick(&mut rng);
            for _ in 0..8 {
                if !basket.contains(&p) {
                    break;
                }
                p = products.pick(&mut rng);
            }
            basket.push(p);
        }
        for p in basket {
            let qty = rng.random_range(1..=5);
            let _ = writeln!(fact, "X{txn:06},C{c:03},P{:03},T{t:03},CH{ch:03},{qty}", p + 1);
            rows += 1;
        }
    }

    Ok(SalesData {
        customer,
        product,
        times,
        channel,
        fact,
    })
}

impl SalesData {
    /// Writes `fact.csv`, `customer.csv`, `product.csv`, `times.csv` and
    /// `channel.csv` into `dir`, returning the fact path and `(name, path)`
    /// for each dimension.
    pub fn write_to(&self, dir: &Path) -> Result<(PathBuf, Vec<(String, PathBuf)>), PipelineError> {
        fs::create_dir_all(dir).map_err(PipelineError::io(dir))?;
        let write = |name: &str, text: &str| -> Result<PathBuf, PipelineError> {
            let p = dir.join(format!("{name}.csv"));
            fs::write(&p, text).map_err(PipelineError::io(&p))?;
            Ok(p)
        };
        let fact = write("fact", &self.fact)?;
        let dims = [
            ("customer", &self.customer),
            ("product", &self.product),
            ("times", &self.times),
            ("channel", &self.channel),
        ]
        .into_iter()
        .map(|(n, t)| Ok((n.to_string(), write(n, t)?)))
        .collect::<Result<Vec<_>, PipelineError>>()?;
        Ok((fact, dims))
    }
}

/// Star join of the generated tables.
pub fn default_joins() -> Vec<JoinLink> {
    vec![
        JoinLink::new("customer_id", "customer", "customer_id"),
        JoinLink::new("product_id", "product", "product_id"),
        JoinLink::new("time_id", "times", "time_id"),
        JoinLink::new("channel_id", "channel", "channel_id"),
    ]
}

pub fn default_bins() -> Vec<(String, Vec<Bin>)> {
    vec![
        (
            "age".into(),
            vec![
                Bin::new("18..29", 18.0, 30.0),
                Bin::new("30..44", 30.0, 45.0),
                Bin::new("45..59", 45.0, 60.0),
                Bin::new("60+", 60.0, 200.0),
            ],
        ),
        (
            "income".into(),
            vec![
                Bin::new("<5K", 0.0, 5000.0),
                Bin::new("5K..7K", 5000.0, 7000.0),
                Bin::new("7K..10K", 7000.0, 10000.0),
                Bin::new("10K+", 10000.0, 1e12),
            ],
        ),
        (
            "quantity".into(),
            vec![Bin::new("1..2", 1.0, 3.0), Bin::new("3..5", 3.0, 6.0)],
        ),
    ]
}

pub const DEFAULT_KEY_DIM: &str = "txn_id";
pub const DEFAULT_COMBINE_DIMS: [&str; 2] = ["channel_class", "product_name"];
pub const DEFAULT_REPEATABLE: [&str; 1] = ["product_name"];

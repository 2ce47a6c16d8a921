//! One CSV row per parameter point.

use std::io::Write;

pub const HEADER: [&str; 12] = [
    "experiment",
    "n",
    "eps",
    "M",
    "gamma",
    "seed",
    "s1_observed",
    "s1_bound",
    "storage_observed",
    "storage_bound",
    "residual",
    "time_ms",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub n: usize,
    pub eps: Option<f64>,
    pub m: Option<f64>,
    pub gamma: Option<f64>,
    pub seed: Option<u64>,
    pub s1_observed: Option<usize>,
    pub s1_bound: Option<usize>,
    pub storage_observed: Option<u128>,
    pub storage_bound: Option<u128>,
    pub residual: Option<f64>,
    pub time_ms: Option<f64>,
}

impl ExperimentRecord {
    pub fn new(experiment: &str, n: usize) -> Self {
        Self { experiment: experiment.to_string(), n, ..Default::default() }
    }

    /// Observed rank exceeds the bound.
    pub fn violates_bound(&self) -> bool {
        matches!((self.s1_observed, self.s1_bound), (Some(o), Some(b)) if o > b)
    }

    fn fields(&self) -> [String; 12] {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        [
            self.experiment.clone(),
            self.n.to_string(),
            self.eps.map(format_float).unwrap_or_default(),
            self.m.map(format_float).unwrap_or_default(),
            self.gamma.map(format_float).unwrap_or_default(),
            opt(self.seed),
            opt(self.s1_observed),
            opt(self.s1_bound),
            opt(self.storage_observed),
            opt(self.storage_bound),
            self.residual.map(format_float).unwrap_or_default(),
            self.time_ms.map(format_float).unwrap_or_default(),
        ]
    }
}

/// 17 significant digits, `.` decimal separator.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

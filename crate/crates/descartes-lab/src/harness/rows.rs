//! Self-describing result rows and their renderings: a fixed-order CSV
//! schema, an equivalent JSON document, and a gnuplot script that plots
//! straight from the emitted CSV.
//!
//! Reproducibility discipline: everything except the `wall_ms` column is
//! a pure function of the experiment configuration, so bodies are
//! byte-identical across worker counts, output destinations, and runs.
//! Metadata therefore never mentions worker counts, paths, or times.

use serde::Serialize;

use super::config::OutputFormat;

/// Column order of every result CSV.
pub const RESULT_CSV_HEADER: &str = "experiment,n,metric,value,stderr,trials,seed,wall_ms";

/// One measured value. `n` is the size the value belongs to; cross-size
/// summaries (slopes, ratios) use n = 0 and say so in their metric name
/// ("n=0 rows aggregate over n_list" is part of the output contract).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub experiment: String,
    pub n: usize,
    pub metric: String,
    pub value: f64,
    /// Standard error when the value is a Monte Carlo mean; `None` (an
    /// empty CSV cell) for exact or derived quantities.
    pub stderr: Option<f64>,
    /// Trials behind the value (0 for exact enumeration).
    pub trials: u64,
    pub seed: u64,
    /// Wall-clock milliseconds for the producing stage; the only column
    /// allowed to differ between otherwise identical runs.
    pub wall_ms: u64,
}

/// Formats a float the way the CSV and gnuplot expect: shortest
/// round-trip decimal, with non-finite values spelled out.
pub(crate) fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v}")
    }
}

impl ResultRow {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        experiment: &str,
        n: usize,
        metric: impl Into<String>,
        value: f64,
        stderr: Option<f64>,
        trials: u64,
        seed: u64,
        wall_ms: u64,
    ) -> ResultRow {
        let metric = metric.into();
        debug_assert!(
            !metric.contains(',') && !metric.contains('\n'),
            "metric names must be CSV-safe"
        );
        ResultRow {
            experiment: experiment.to_string(),
            n,
            metric,
            value,
            stderr,
            trials,
            seed,
            wall_ms,
        }
    }

    /// The row as one CSV line (no trailing newline).
    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.experiment,
            self.n,
            self.metric,
            fmt_f64(self.value),
            self.stderr.map(fmt_f64).unwrap_or_default(),
            self.trials,
            self.seed,
            self.wall_ms
        )
    }
}

/// Everything one experiment run produced: ordered metadata, the rows,
/// any invariant failures (non-empty means the run must exit nonzero),
/// and auxiliary files (name suffix → content) such as density grids.
#[derive(Debug, Clone, Default)]
pub struct ScanOutput {
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<ResultRow>,
    pub failures: Vec<String>,
    /// (file-name suffix, content) pairs written next to the main output
    /// when one is requested; skipped on stdout-only runs.
    pub extra_files: Vec<(String, String)>,
}

impl ScanOutput {
    fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// The CSV document: `# key = value` metadata comments, the header,
    /// then one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.metadata {
            out.push_str(&format!("# {key} = {value}\n"));
        }
        out.push_str(RESULT_CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_csv_row());
            out.push('\n');
        }
        out
    }

    /// The JSON document: metadata object, row array, failure array.
    /// Non-finite values render as null (JSON has no NaN).
    pub fn to_json(&self) -> String {
        let json_f64 = |v: f64| {
            serde_json::Number::from_f64(v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null)
        };
        let mut meta = serde_json::Map::new();
        for (key, value) in &self.metadata {
            meta.insert(key.clone(), serde_json::Value::String(value.clone()));
        }
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "experiment": r.experiment,
                    "n": r.n,
                    "metric": r.metric,
                    "value": json_f64(r.value),
                    "stderr": r.stderr.map(json_f64).unwrap_or(serde_json::Value::Null),
                    "trials": r.trials,
                    "seed": r.seed,
                    "wall_ms": r.wall_ms,
                })
            })
            .collect();
        let doc = serde_json::json!({
            "metadata": serde_json::Value::Object(meta),
            "rows": rows,
            "failures": self.failures,
        });
        serde_json::to_string_pretty(&doc).expect("document is valid JSON")
    }

    /// Renders in the requested format.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// A gnuplot script that plots the emitted CSV (`csv_name` is the
    /// file name the caller wrote). `extra_names` are the written
    /// auxiliary files, used by the density plots.
    pub fn gnuplot_script(&self, csv_name: &str, extra_names: &[String]) -> String {
        let experiment = self.meta("experiment").unwrap_or("results");
        let script_name = Path::new(csv_name)
            .with_extension("gp")
            .display()
            .to_string();
        let mut s = String::new();
        s.push_str(&format!(
            "# gnuplot script for {csv_name}; run: gnuplot -p {script_name}\n\
             set datafile separator ','\n\
             set datafile commentschars '#'\n\
             set key outside\n"
        ));
        let pick = |metric: &str| format!("(strcol(3) eq '{metric}' ? column(4) : 1/0)");
        match experiment {
            "zero-scan" => {
                s.push_str("set xlabel 'n'\nset logscale x 2\nset ylabel 'mean root count'\n");
                s.push_str(&format!(
                    "plot '{csv_name}' using 2:{} with linespoints title 'mean n*', \\\n     \
                     '{csv_name}' using 2:{} with lines title 'Kac expectation'\n",
                    pick("mean_n_star"),
                    pick("kac_expected")
                ));
            }
            "ac-scan" => {
                s.push_str("set logscale xy\nset ylabel 'P(window)'\n");
                let series: Vec<String> = ["arith", "gauss", "twoatom"]
                    .iter()
                    .map(|fam| {
                        format!(
                            "'{csv_name}' using 2:{} with linespoints title '{fam}, L=0'",
                            pick(&format!("p_{fam}_L0"))
                        )
                    })
                    .collect();
                s.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
            }
            "density-scan" => {
                s.push_str("set xlabel 't'\nset ylabel 'density'\nunset logscale\n");
                if extra_names.is_empty() {
                    s.push_str(&format!(
                        "plot '{csv_name}' using 2:{} with linespoints title 'p(0)'\n",
                        pick("p_at_zero")
                    ));
                } else {
                    // One exact curve per grid file, plus the Fourier
                    // points and decay envelope for the first size.
                    let mut series: Vec<String> = extra_names
                        .iter()
                        .map(|grid| {
                            let label = grid
                                .rsplit_once("density_")
                                .map(|(_, tail)| tail.trim_end_matches(".csv"))
                                .unwrap_or(grid);
                            format!("'{grid}' using 1:2 with lines title 'exact {label}'")
                        })
                        .collect();
                    let first = &extra_names[0];
                    series.push(format!(
                        "'{first}' using 1:3 with points pointtype 6 title 'fourier'"
                    ));
                    series.push(format!(
                        "'{first}' using 1:4 with lines dashtype 2 title 'envelope'"
                    ));
                    s.push_str(&format!("plot {}\n", series.join(", \\\n     ")));
                }
            }
            // props and anything else: plot pass flags by row position.
            _ => {
                s.push_str(
                    "set ylabel 'pass'\nset yrange [-0.2:1.2]\nset xtics rotate by -35\n",
                );
                s.push_str(&format!(
                    "plot '{csv_name}' using 0:(strcol(3)[strlen(strcol(3))-4:] eq '_pass' \
                     ? column(4) : 1/0):xticlabels(3) with points pointtype 7 title 'invariants'\n"
                ));
            }
        }
        s
    }
}

//! Rendering of fit results, tables, and figure data as text, CSV, or a
//! flat key-value listing. All floating output uses 17 significant digits
//! so that values survive a round trip through the printed form.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::Error;
use crate::estimators::FitReport;
use crate::experiment::{CompareReport, FigureData, TableArtifact};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Structured,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Structured => "structured",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "structured" => Ok(OutputFormat::Structured),
            other => Err(Error::Parse {
                row: 0,
                detail: format!("unknown output format '{other}'"),
            }),
        }
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn render_fit_report(report: &FitReport, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "method: {}", report.method.name());
            let _ = writeln!(out, "degree: {}", report.degree);
            let _ = writeln!(out, "precision-digits: {}", report.precision_digits);
            let _ = writeln!(out, "elapsed-seconds: {:.6}", report.elapsed.as_secs_f64());
            let _ = writeln!(
                out,
                "domain: [{}, {}]",
                num(report.series_original.domain.0),
                num(report.series_original.domain.1)
            );
            let _ = writeln!(out, "coefficients (original domain, ascending power):");
            for (k, c) in report.series_original.coeffs.iter().enumerate() {
                let _ = writeln!(out, "  c[{k}] = {}", num(*c));
            }
            let _ = writeln!(out, "coefficients (normalized domain, ascending index):");
            for (k, c) in report.series_normalized.coeffs.iter().enumerate() {
                let _ = writeln!(out, "  b[{k}] = {}", num(*c));
            }
            for ss in [&report.ss_normalized, &report.ss_original] {
                let _ = writeln!(
                    out,
                    "ss ({}): data = {}, fitted = {}, residual = {}",
                    ss.scale.name(),
                    num(ss.data_ss),
                    num(ss.fitted_ss),
                    num(ss.residual_ss)
                );
            }
            let _ = writeln!(
                out,
                "gram condition: orthonormal = {}, monomial = {}",
                num(report.condition.gram_condition_orthonormal),
                num(report.condition.gram_condition_monomial)
            );
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "# method = {}", report.method.name());
            let _ = writeln!(out, "# degree = {}", report.degree);
            let _ = writeln!(out, "# precision-digits = {}", report.precision_digits);
            let _ = writeln!(
                out,
                "# elapsed-seconds = {:.6}",
                report.elapsed.as_secs_f64()
            );
            let _ = writeln!(out, "k,coefficient-original,coefficient-normalized");
            for k in 0..report.series_original.coeffs.len() {
                let _ = writeln!(
                    out,
                    "{k},{},{}",
                    num(report.series_original.coeffs[k]),
                    num(report.series_normalized.coeffs[k])
                );
            }
        }
        OutputFormat::Structured => {
            let _ = writeln!(out, "method = {}", report.method.name());
            let _ = writeln!(out, "degree = {}", report.degree);
            let _ = writeln!(out, "precision_digits = {}", report.precision_digits);
            let _ = writeln!(out, "elapsed_seconds = {:.6}", report.elapsed.as_secs_f64());
            let _ = writeln!(out, "domain_lo = {}", num(report.series_original.domain.0));
            let _ = writeln!(out, "domain_hi = {}", num(report.series_original.domain.1));
            for (k, c) in report.series_original.coeffs.iter().enumerate() {
                let _ = writeln!(out, "coefficient_original_{k} = {}", num(*c));
            }
            for (k, c) in report.series_normalized.coeffs.iter().enumerate() {
                let _ = writeln!(out, "coefficient_normalized_{k} = {}", num(*c));
            }
            for ss in [&report.ss_normalized, &report.ss_original] {
                let scale = ss.scale.name();
                let _ = writeln!(out, "ss_{scale}_data = {}", num(ss.data_ss));
                let _ = writeln!(out, "ss_{scale}_fitted = {}", num(ss.fitted_ss));
                let _ = writeln!(out, "ss_{scale}_residual = {}", num(ss.residual_ss));
            }
            let _ = writeln!(
                out,
                "gram_condition_orthonormal = {}",
                num(report.condition.gram_condition_orthonormal)
            );
            let _ = writeln!(
                out,
                "gram_condition_monomial = {}",
                num(report.condition.gram_condition_monomial)
            );
        }
    }
    out
}

pub fn render_table(table: &TableArtifact, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let _ = writeln!(out, "table {}: {}", table.table_id, table.title);
            let _ = writeln!(out, "{}", table.column_labels.join(" | "));
            for (label, row) in table.row_labels.iter().zip(&table.rows) {
                let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
                let _ = writeln!(out, "{label}: {}", cells.join(" | "));
            }
            for note in &table.notes {
                let _ = writeln!(out, "note: {note}");
            }
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "# table = {}", table.table_id);
            let _ = writeln!(out, "# title = {}", table.title);
            for note in &table.notes {
                let _ = writeln!(out, "# note = {note}");
            }
            let _ = writeln!(out, "row,{}", table.column_labels.join(","));
            for (label, row) in table.row_labels.iter().zip(&table.rows) {
                let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
                let _ = writeln!(out, "{label},{}", cells.join(","));
            }
        }
        OutputFormat::Structured => {
            let _ = writeln!(out, "table_id = {}", table.table_id);
            let _ = writeln!(out, "title = {}", table.title);
            for (j, label) in table.column_labels.iter().enumerate() {
                let _ = writeln!(out, "column_{j} = {label}");
            }
            for (label, row) in table.row_labels.iter().zip(&table.rows) {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(out, "cell_{label}_{j} = {}", num(*v));
                }
            }
            for (j, note) in table.notes.iter().enumerate() {
                let _ = writeln!(out, "note_{j} = {note}");
            }
        }
    }
    out
}

pub fn render_figure(figure: &FigureData, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text | OutputFormat::Csv => {
            if format == OutputFormat::Csv {
                let _ = writeln!(out, "# figure = {}", figure.figure_id);
            } else {
                let _ = writeln!(out, "figure {}", figure.figure_id);
            }
            let sep = if format == OutputFormat::Csv {
                ","
            } else {
                " "
            };
            let _ = writeln!(out, "{}", figure.column_labels.join(sep));
            for row in &figure.rows {
                let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
                let _ = writeln!(out, "{}", cells.join(sep));
            }
        }
        OutputFormat::Structured => {
            let _ = writeln!(out, "figure_id = {}", figure.figure_id);
            for (j, label) in figure.column_labels.iter().enumerate() {
                let _ = writeln!(out, "column_{j} = {label}");
            }
            let _ = writeln!(out, "rows = {}", figure.rows.len());
            for (i, row) in figure.rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(out, "cell_{i}_{j} = {}", num(*v));
                }
            }
        }
    }
    out
}

pub fn render_compare(report: &CompareReport, format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            let _ = writeln!(
                out,
                "coefficient comparison, degree {}, {}-digit arithmetic",
                report.degree, report.precision_digits
            );
            let _ = writeln!(out, "k | {}", report.column_labels.join(" | "));
            for (k, row) in report.rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
                let _ = writeln!(out, "{k} | {}", cells.join(" | "));
            }
            for (name, r) in &report.residuals {
                let _ = writeln!(out, "residual-ss ({name}, normalized scale): {}", num(*r));
            }
            let _ = writeln!(
                out,
                "gram condition: orthonormal = {}, monomial = {}",
                num(report.condition.gram_condition_orthonormal),
                num(report.condition.gram_condition_monomial)
            );
        }
        OutputFormat::Csv => {
            let _ = writeln!(out, "# degree = {}", report.degree);
            let _ = writeln!(out, "# precision-digits = {}", report.precision_digits);
            for (name, r) in &report.residuals {
                let _ = writeln!(out, "# residual-ss {name} = {}", num(*r));
            }
            let _ = writeln!(
                out,
                "# gram-condition orthonormal = {}, monomial = {}",
                num(report.condition.gram_condition_orthonormal),
                num(report.condition.gram_condition_monomial)
            );
            let _ = writeln!(out, "k,{}", report.column_labels.join(","));
            for (k, row) in report.rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| num(*v)).collect();
                let _ = writeln!(out, "{k},{}", cells.join(","));
            }
        }
        OutputFormat::Structured => {
            let _ = writeln!(out, "degree = {}", report.degree);
            let _ = writeln!(out, "precision_digits = {}", report.precision_digits);
            for (j, label) in report.column_labels.iter().enumerate() {
                let _ = writeln!(out, "column_{j} = {label}");
            }
            for (k, row) in report.rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(out, "coefficient_{k}_{j} = {}", num(*v));
                }
            }
            for (name, r) in &report.residuals {
                let key = name.replace('-', "_");
                let _ = writeln!(out, "residual_ss_{key} = {}", num(*r));
            }
            let _ = writeln!(
                out,
                "gram_condition_orthonormal = {}",
                num(report.condition.gram_condition_orthonormal)
            );
            let _ = writeln!(
                out,
                "gram_condition_monomial = {}",
                num(report.condition.gram_condition_monomial)
            );
        }
    }
    out
}

//! JSON and CSV emission for the report types.

use serde::Serialize;

use super::{ConstraintReport, DivisionReport};
use crate::error::{LadderError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

/// A report with a JSON object form and a row-per-record CSV form.
pub trait TabularReport: Serialize {
    fn csv_header(&self) -> Vec<&'static str>;
    fn csv_rows(&self) -> Vec<Vec<String>>;

    fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| LadderError::Checkpoint(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.csv_header())?;
        for row in self.csv_rows() {
            w.write_record(row)?;
        }
        let bytes = w.into_inner().map_err(|e| LadderError::Checkpoint(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| LadderError::Checkpoint(e.to_string()))
    }

    fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }
}

impl TabularReport for ConstraintReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["p", "s", "value", "residual", "quad_error"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|e| {
                vec![
                    e.p.to_string(),
                    e.s.to_string(),
                    e.value.to_string(),
                    e.residual.to_string(),
                    e.quad_error.to_string(),
                ]
            })
            .collect()
    }
}

impl TabularReport for DivisionReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["n", "part", "residual"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.parts
            .iter()
            .zip(&self.residuals)
            .enumerate()
            .map(|(i, (v, r))| vec![(i + 1).to_string(), v.to_string(), r.to_string()])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energies::EnergyEntry;

    fn sample() -> ConstraintReport {
        let entry = |p, s, value: f64| EnergyEntry {
            p,
            s,
            value,
            residual: value - 1.0,
            quad_error: 1e-12,
            lower: 0.0,
            upper: 0.0,
        };
        ConstraintReport {
            t: 10000.0,
            g: 1.0,
            k: 2,
            entries: vec![entry(1, 1, 1.0), entry(2, 1, 1.0000001), entry(2, 2, 0.9999999)],
            max_residual: 1e-7,
            pass: true,
        }
    }

    #[test]
    fn json_schema() {
        let json: serde_json::Value = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        let obj = json.as_object().unwrap();
        let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        for key in ["T", "g", "k", "entries", "max_residual", "pass"] {
            assert!(keys.contains(&key), "missing {key}");
        }
        assert_eq!(keys.len(), 6);
        let first = obj["entries"][0].as_object().unwrap();
        let mut entry_keys: Vec<&str> = first.keys().map(String::as_str).collect();
        entry_keys.sort_unstable();
        assert_eq!(entry_keys, ["p", "quad_error", "residual", "s", "value"]);
    }

    #[test]
    fn csv_one_row_per_entry() {
        let csv = sample().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "p,s,value,residual,quad_error");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("2,1,1.0000001,"));
    }
}

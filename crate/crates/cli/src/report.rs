//! Report emission: CSV and JSON bodies that are byte-identical across runs
//! with the same config and seed. The timestamp lives outside the
//! digest-checked region.

use crate::config::OutputFormat;
use serde::Serialize;
use std::path::Path;

/// One computed quantity with everything needed to recompute it in
/// isolation: name, the parameters it was evaluated at, and the witness.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub quantity: String,
    pub params: String,
    pub value: f64,
    pub witness: String,
    pub flags: String,
}

impl ReportRow {
    pub fn new(
        quantity: impl Into<String>,
        params: impl Into<String>,
        value: f64,
        witness: impl Into<String>,
        flags: impl Into<String>,
    ) -> Self {
        ReportRow {
            quantity: quantity.into(),
            params: params.into(),
            value,
            witness: witness.into(),
            flags: flags.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub experiment: String,
    pub config_digest: String,
    pub timestamp: String,
    pub rows: Vec<ReportRow>,
}

/// 17 significant digits: round-trip exact for f64.
pub fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn new(experiment: &str, config_digest: &str, rows: Vec<ReportRow>) -> Self {
        Report {
            experiment: experiment.to_string(),
            config_digest: config_digest.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            rows,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# experiment: {}\n", self.experiment));
        out.push_str(&format!("# config_digest: {}\n", self.config_digest));
        out.push_str(&format!("# timestamp: {}\n", self.timestamp));
        out.push_str("quantity,params,value,witness,flags\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_quote(&r.quantity),
                csv_quote(&r.params),
                fmt_value(r.value),
                csv_quote(&r.witness),
                csv_quote(&r.flags),
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(rows) = v.get_mut("rows").and_then(|r| r.as_array_mut()) {
            for row in rows {
                if let Some(val) = row.get("value").and_then(|x| x.as_f64()) {
                    row["value"] = serde_json::Value::String(fmt_value(val));
                }
            }
        }
        serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> std::io::Result<()> {
        std::fs::write(path, self.render(format))
    }

    /// The digest-checked region: the rendered report with the timestamp
    /// line/field blanked. Byte-identical across reruns of the same config.
    pub fn body_without_timestamp(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self
                .to_csv()
                .lines()
                .filter(|l| !l.starts_with("# timestamp:"))
                .collect::<Vec<_>>()
                .join("\n"),
            OutputFormat::Json => {
                let mut v = serde_json::to_value(self).expect("report serializes");
                v["timestamp"] = serde_json::Value::String(String::new());
                serde_json::to_string_pretty(&v).expect("report serializes")
            }
        }
    }
}

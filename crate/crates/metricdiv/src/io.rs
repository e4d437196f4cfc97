//! File formats: distance-matrix CSV and point-cloud JSON.
//!
//! The CSV format is `n` rows of `n` comma-separated floats, optionally
//! preceded by one header row of labels. The JSON format is
//!
//! ```json
//! {"points": [[0.0], [1.0]], "metric": "euclidean",
//!  "labels": ["a", "b"], "basepoint": 0}
//! ```
//!
//! with `labels` and `basepoint` optional.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, PointMetric};
use crate::tolerances;

/// Point-cloud file body.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointCloudFile {
    pub points: Vec<Vec<f64>>,
    pub metric: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<usize>,
}

/// Parses distance-matrix CSV text. The first row is treated as a label
/// header when any of its cells fails to parse as a float.
pub fn parse_distance_csv(text: &str) -> Result<FiniteMetricSpace> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    if rows.is_empty() {
        return Err(Error::Parse("empty distance-matrix file".into()));
    }
    let cells = |line: &str| -> Vec<String> {
        line.split(',').map(|c| c.trim().to_string()).collect()
    };
    let first = cells(rows[0]);
    let header = first.iter().any(|c| c.parse::<f64>().is_err());
    let (labels, data_rows) = if header {
        (first, &rows[1..])
    } else {
        (
            (0..first.len()).map(|i| i.to_string()).collect(),
            &rows[..],
        )
    };
    let mut matrix = Vec::with_capacity(data_rows.len());
    for (r, line) in data_rows.iter().enumerate() {
        let mut row = Vec::new();
        for cell in cells(line) {
            let v: f64 = cell
                .parse()
                .map_err(|_| Error::Parse(format!("row {r}: bad float {cell:?}")))?;
            row.push(v);
        }
        matrix.push(row);
    }
    FiniteMetricSpace::new(labels, &matrix, tolerances::METRIC)
}

/// Renders a space back to CSV with a label header.
pub fn distance_csv(space: &FiniteMetricSpace) -> String {
    let mut out = String::new();
    out.push_str(&space.labels().join(","));
    out.push('\n');
    for row in space.distance_rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Parses point-cloud JSON; returns the space and the optional basepoint.
pub fn parse_point_cloud_json(text: &str) -> Result<(FiniteMetricSpace, Option<usize>)> {
    let file: PointCloudFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let metric: PointMetric = file.metric.parse()?;
    let labels = match file.labels {
        Some(labels) => {
            if labels.len() != file.points.len() {
                return Err(Error::LabelMismatch {
                    labels: labels.len(),
                    n: file.points.len(),
                });
            }
            labels
        }
        None => (0..file.points.len()).map(|i| i.to_string()).collect(),
    };
    let space = FiniteMetricSpace::from_labelled_points(labels, &file.points, metric)?;
    if let Some(bp) = file.basepoint {
        if bp >= space.n() {
            return Err(Error::IndexOutOfRange {
                index: bp,
                n: space.n(),
            });
        }
    }
    Ok((space, file.basepoint))
}

/// Loads a space from a path, sniffing the format: content starting with
/// `{` is point-cloud JSON, anything else distance-matrix CSV.
pub fn load_space(path: &Path) -> Result<(FiniteMetricSpace, Option<usize>)> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        parse_point_cloud_json(&text)
    } else {
        parse_distance_csv(&text).map(|s| (s, None))
    }
}

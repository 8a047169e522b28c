use std::fmt::Write as _;
use std::path::Path;

use crate::censor::Strategy;
use crate::error::{Error, Result};
use crate::features::{feature_names, FeatureVector, FEATURE_COUNT};
use crate::pipeline::Cell;

/// Feature vector of one graph variant. `cell == None` is the untouched graph.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub graph_id: usize,
    pub cell: Option<Cell>,
    pub features: FeatureVector,
}

impl FeatureRow {
    pub fn is_censored(&self) -> bool {
        self.cell.is_some()
    }

    pub fn gamma(&self) -> f64 {
        self.cell.map_or(0.0, |c| c.gamma)
    }
}

/// All extracted feature vectors, base rows first (by graph id), then each
/// cell's rows in cell order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureTable {
    pub rows: Vec<FeatureRow>,
}

const BASE_STRATEGY: &str = "none";

pub fn features_header() -> String {
    format!("graph_id,strategy,gamma,{},label", feature_names().join(","))
}

impl FeatureTable {
    pub fn base(&self) -> impl Iterator<Item = &FeatureRow> {
        self.rows.iter().filter(|r| r.cell.is_none())
    }

    pub fn for_cell(&self, cell: Cell) -> impl Iterator<Item = &FeatureRow> {
        self.rows.iter().filter(move |r| r.cell == Some(cell))
    }

    /// Mean of feature `index` over the rows of `cell` (`None`: base rows).
    pub fn mean(&self, cell: Option<Cell>, index: usize) -> Option<f64> {
        let values: Vec<f64> = self.rows.iter().filter(|r| r.cell == cell).map(|r| r.features[index]).collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    }

    /// `{}` formatting of f64 is the shortest representation that parses
    /// back to the same value, so the CSV round-trips exactly.
    pub fn to_csv(&self) -> String {
        let mut out = features_header();
        out.push('\n');
        for row in &self.rows {
            let (strategy, gamma) = match row.cell {
                Some(c) => (c.strategy.as_str(), c.gamma),
                None => (BASE_STRATEGY, 0.0),
            };
            write!(out, "{},{},{}", row.graph_id, strategy, gamma).unwrap();
            for v in row.features.as_slice() {
                write!(out, ",{v}").unwrap();
            }
            writeln!(out, ",{}", u8::from(row.is_censored())).unwrap();
        }
        out
    }

    pub fn parse_csv(text: &str, source_name: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header == features_header() => {}
            _ => return Err(Error::parse(source_name, 1, "unexpected header")),
        }
        let mut rows = Vec::new();
        for (i, line) in lines {
            let err = |m: &str| Error::parse(source_name, i + 1, m);
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != FEATURE_COUNT + 4 {
                return Err(err("wrong field count"));
            }
            let graph_id = fields[0].parse().map_err(|_| err("bad graph_id"))?;
            let gamma: f64 = fields[2].parse().map_err(|_| err("bad gamma"))?;
            let cell = match fields[1] {
                BASE_STRATEGY => None,
                s => Some(Cell {
                    strategy: s.parse().map_err(|_| err("bad strategy"))?,
                    gamma,
                }),
            };
            let values = fields[3..3 + FEATURE_COUNT]
                .iter()
                .map(|f| f.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| err("bad feature value"))?;
            let label = fields[3 + FEATURE_COUNT];
            if label != if cell.is_some() { "1" } else { "0" } {
                return Err(err("label does not match strategy"));
            }
            rows.push(FeatureRow {
                graph_id,
                cell,
                features: FeatureVector::from_values(&values).map_err(|e| err(&e.to_string()))?,
            });
        }
        Ok(FeatureTable { rows })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        Self::parse_csv(&text, &path.display().to_string())
    }
}

/// One fold's accuracy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalRecord {
    pub cell: Cell,
    pub repeat: usize,
    pub fold: usize,
    pub accuracy: f64,
}

pub const RESULTS_HEADER: &str = "strategy,gamma,repeat,fold,accuracy";

pub fn results_csv(records: &[EvalRecord]) -> String {
    let mut out = format!("{RESULTS_HEADER}\n");
    for r in records {
        writeln!(out, "{},{},{},{},{}", r.cell.strategy, r.cell.gamma, r.repeat, r.fold, r.accuracy).unwrap();
    }
    out
}

pub fn parse_results_csv(text: &str, source_name: &str) -> Result<Vec<EvalRecord>> {
    let mut lines = text.lines().enumerate();
    if lines.next().map(|(_, h)| h) != Some(RESULTS_HEADER) {
        return Err(Error::parse(source_name, 1, "unexpected header"));
    }
    lines
        .map(|(i, line)| {
            let err = || Error::parse(source_name, i + 1, "malformed results row");
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(err());
            }
            Ok(EvalRecord {
                cell: Cell {
                    strategy: f[0].parse().map_err(|_| err())?,
                    gamma: f[1].parse().map_err(|_| err())?,
                },
                repeat: f[2].parse().map_err(|_| err())?,
                fold: f[3].parse().map_err(|_| err())?,
                accuracy: f[4].parse().map_err(|_| err())?,
            })
        })
        .collect()
}

/// `strategy,gamma,feat1;feat2;...`, one line per cell.
pub fn selected_features_text(selections: &[(Cell, Vec<String>)]) -> String {
    selections
        .iter()
        .map(|(cell, names)| format!("{cell},{}\n", names.join(";")))
        .collect()
}

pub fn parse_selected_features(text: &str, source_name: &str) -> Result<Vec<(Cell, Vec<String>)>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let err = || Error::parse(source_name, i + 1, "malformed selection row");
            let mut parts = line.splitn(3, ',');
            let strategy: Strategy = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
            let gamma: f64 = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
            let names = parts.next().ok_or_else(err)?;
            let names = if names.is_empty() {
                Vec::new()
            } else {
                names.split(';').map(str::to_string).collect()
            };
            Ok((Cell { strategy, gamma }, names))
        })
        .collect()
}

/// Mean and normal-approximation 95% interval half-width.
pub fn mean_ci95(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, 1.96 * (var / n).sqrt())
}

pub const TREND_HEADER: &str = "strategy,gamma,feature,n,mean,ci95_low,ci95_high";
pub const ACCURACY_HEADER: &str = "strategy,gamma,n,mean,ci95_low,ci95_high";

/// Feature means against gamma for each strategy, with the untouched graphs
/// as the gamma = 0 point of every strategy.
pub fn trend_csv(table: &FeatureTable, strategies: &[Strategy], features: &[usize]) -> String {
    let names = feature_names();
    let mut out = format!("{TREND_HEADER}\n");
    for &strategy in strategies {
        let mut gammas: Vec<f64> = table
            .rows
            .iter()
            .filter_map(|r| r.cell.filter(|c| c.strategy == strategy).map(|c| c.gamma))
            .collect();
        gammas.sort_by(f64::total_cmp);
        gammas.dedup();
        let groups = std::iter::once(None).chain(gammas.into_iter().map(|gamma| Some(Cell { strategy, gamma })));
        for cell in groups {
            for &f in features {
                let values: Vec<f64> = table.rows.iter().filter(|r| r.cell == cell).map(|r| r.features[f]).collect();
                if values.is_empty() {
                    continue;
                }
                let (mean, half) = mean_ci95(&values);
                let gamma = cell.map_or(0.0, |c| c.gamma);
                writeln!(
                    out,
                    "{strategy},{gamma},{},{},{mean},{},{}",
                    names[f],
                    values.len(),
                    mean - half,
                    mean + half
                )
                .unwrap();
            }
        }
    }
    out
}

/// Mean fold accuracy per cell, in order of first appearance.
pub fn accuracy_csv(records: &[EvalRecord]) -> String {
    let mut cells: Vec<Cell> = Vec::new();
    for r in records {
        if !cells.contains(&r.cell) {
            cells.push(r.cell);
        }
    }
    let mut out = format!("{ACCURACY_HEADER}\n");
    for cell in cells {
        let values: Vec<f64> = records.iter().filter(|r| r.cell == cell).map(|r| r.accuracy).collect();
        let (mean, half) = mean_ci95(&values);
        writeln!(out, "{cell},{},{mean},{},{}", values.len(), mean - half, mean + half).unwrap();
    }
    out
}

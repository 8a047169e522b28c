use crate::error::{Error, Result};

/// Per-feature `(x - min) / (max - min)` fitted on training rows.
///
/// Constant training columns map to 0.0; transformed values are clamped to
/// `[0, 1]` so out-of-range test rows stay on the training box.
#[derive(Debug, Clone, PartialEq)]
pub struct MinMaxScaler {
    mins: Vec<f64>,
    maxs: Vec<f64>,
}

impl MinMaxScaler {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidParameter("cannot fit a scaler on zero rows".into()))?;
        let mut mins = first.clone();
        let mut maxs = first.clone();
        for row in &rows[1..] {
            if row.len() != mins.len() {
                return Err(Error::DimensionMismatch {
                    expected: mins.len(),
                    got: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                mins[j] = mins[j].min(x);
                maxs[j] = maxs[j].max(x);
            }
        }
        Ok(MinMaxScaler { mins, maxs })
    }

    pub fn dim(&self) -> usize {
        self.mins.len()
    }

    pub fn bounds(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.mins.iter().copied().zip(self.maxs.iter().copied())
    }

    pub fn transform(&self, row: &[f64]) -> Result<Vec<f64>> {
        if row.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: row.len(),
            });
        }
        Ok(row
            .iter()
            .zip(self.bounds())
            .map(|(&x, (lo, hi))| {
                let span = hi - lo;
                if span > 0.0 {
                    ((x - lo) / span).clamp(0.0, 1.0)
                } else {
                    0.0
                }
            })
            .collect())
    }
}

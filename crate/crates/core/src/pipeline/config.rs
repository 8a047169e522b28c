use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::censor::{Strategy, DEFAULT_ICM_P, DEFAULT_ICM_SEED_FRACTION};
use crate::error::{Error, Result};
use crate::learn::{SvmParams, DEFAULT_C, DEFAULT_G};

pub const DEFAULT_GAMMAS: [f64; 6] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];

/// Everything that determines an experiment's output.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n_graphs: usize,
    pub n_nodes: usize,
    pub alpha: f64,
    pub gammas: Vec<f64>,
    pub strategies: Vec<Strategy>,
    pub icm_p: f64,
    pub icm_seed_fraction: f64,
    pub svm_c: f64,
    pub svm_g: f64,
    pub folds: usize,
    pub repeats: usize,
    pub master_seed: u64,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n_graphs: 100,
            n_nodes: 1000,
            alpha: 2.0,
            gammas: DEFAULT_GAMMAS.to_vec(),
            strategies: Strategy::ALL.to_vec(),
            icm_p: DEFAULT_ICM_P,
            icm_seed_fraction: DEFAULT_ICM_SEED_FRACTION,
            svm_c: DEFAULT_C,
            svm_g: DEFAULT_G,
            folds: 10,
            repeats: 10,
            master_seed: 0,
            out_dir: PathBuf::from("out"),
        }
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad value for {key}: `{value}`")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value.split(',').map(|v| parse_value(key, v)).collect()
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

impl ExperimentConfig {
    /// Sets one field from its textual form. Keys are the field names; the
    /// CLI flag spellings (`graphs`, `icm-p`, `seed`, ...) are accepted too.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        match key.as_str() {
            "n_graphs" | "graphs" => self.n_graphs = parse_value(&key, value)?,
            "n_nodes" | "nodes" => self.n_nodes = parse_value(&key, value)?,
            "alpha" => self.alpha = parse_value(&key, value)?,
            "gammas" => self.gammas = parse_list(&key, value)?,
            "strategies" | "strategy" => {
                self.strategies = if value.trim() == "both" {
                    Strategy::ALL.to_vec()
                } else {
                    parse_list(&key, value)?
                }
            }
            "icm_p" => self.icm_p = parse_value(&key, value)?,
            "icm_seed_fraction" | "seed_fraction" => self.icm_seed_fraction = parse_value(&key, value)?,
            "svm_c" => self.svm_c = parse_value(&key, value)?,
            "svm_g" => self.svm_g = parse_value(&key, value)?,
            "folds" => self.folds = parse_value(&key, value)?,
            "repeats" => self.repeats = parse_value(&key, value)?,
            "master_seed" | "seed" => self.master_seed = parse_value(&key, value)?,
            "out_dir" | "out" => self.out_dir = PathBuf::from(value.trim()),
            _ => return Err(Error::InvalidParameter(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines on top of `self`. Blank lines and `#`
    /// comments are skipped.
    pub fn apply_key_values(&mut self, text: &str, source_name: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(source_name, i + 1, "expected key=value"))?;
            self.set(key, value).map_err(|e| Error::parse(source_name, i + 1, e.to_string()))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        let mut config = Self::default();
        config.apply_key_values(&text, &path.display().to_string())?;
        Ok(config)
    }

    /// Canonical `key=value` form; parses back to an equal config.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let strategies: Vec<&str> = self.strategies.iter().map(|s| s.as_str()).collect();
        writeln!(out, "n_graphs={}", self.n_graphs).unwrap();
        writeln!(out, "n_nodes={}", self.n_nodes).unwrap();
        writeln!(out, "alpha={}", self.alpha).unwrap();
        writeln!(out, "gammas={}", join(&self.gammas)).unwrap();
        writeln!(out, "strategies={}", strategies.join(",")).unwrap();
        writeln!(out, "icm_p={}", self.icm_p).unwrap();
        writeln!(out, "icm_seed_fraction={}", self.icm_seed_fraction).unwrap();
        writeln!(out, "svm_c={}", self.svm_c).unwrap();
        writeln!(out, "svm_g={}", self.svm_g).unwrap();
        writeln!(out, "folds={}", self.folds).unwrap();
        writeln!(out, "repeats={}", self.repeats).unwrap();
        writeln!(out, "master_seed={}", self.master_seed).unwrap();
        writeln!(out, "out_dir={}", self.out_dir.display()).unwrap();
        out
    }

    pub fn svm_params(&self) -> SvmParams {
        SvmParams::new(self.svm_c, self.svm_g)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n_graphs == 0 {
            return bad("need at least one graph".into());
        }
        // feature extraction needs 50 eigenvalues
        if self.n_nodes < 50 {
            return bad(format!("need at least 50 nodes, got {}", self.n_nodes));
        }
        if !(self.alpha > 1.0 && self.alpha.is_finite()) {
            return bad(format!("alpha must be > 1, got {}", self.alpha));
        }
        if self.gammas.is_empty() || self.strategies.is_empty() {
            return bad("need at least one gamma and one strategy".into());
        }
        for &g in &self.gammas {
            if !(g > 0.0 && g <= 1.0) {
                return bad(format!("gamma must be in (0, 1], got {g}"));
            }
        }
        let mut seen = Vec::new();
        for cell in self.cells() {
            if seen.contains(&cell) {
                return bad(format!("duplicate cell {cell}"));
            }
            seen.push(cell);
        }
        if !(0.0..=1.0).contains(&self.icm_p) {
            return bad(format!("icm_p must be in [0, 1], got {}", self.icm_p));
        }
        if !(self.icm_seed_fraction > 0.0 && self.icm_seed_fraction <= 1.0) {
            return bad(format!("seed fraction must be in (0, 1], got {}", self.icm_seed_fraction));
        }
        if self.folds < 2 || self.repeats == 0 {
            return bad("need folds >= 2 and repeats >= 1".into());
        }
        if self.n_graphs < self.folds {
            return bad(format!("{} graphs cannot fill {} folds", self.n_graphs, self.folds));
        }
        self.svm_params().validate()
    }

    /// (strategy, gamma) cells in output order: strategies as configured,
    /// gammas ascending within each.
    pub fn cells(&self) -> Vec<Cell> {
        let mut gammas = self.gammas.clone();
        gammas.sort_by(f64::total_cmp);
        self.strategies
            .iter()
            .flat_map(|&strategy| gammas.iter().map(move |&gamma| Cell { strategy, gamma }))
            .collect()
    }
}

/// One pairwise classification problem: untouched graphs against graphs
/// censored by `strategy` at fraction `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub strategy: Strategy,
    pub gamma: f64,
}

impl Cell {
    /// Directory-safe name such as `icm_0.3`.
    pub fn slug(&self) -> String {
        format!("{}_{}", self.strategy, self.gamma)
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.strategy, self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_key_values() {
        let config = ExperimentConfig::default();
        let mut parsed = ExperimentConfig {
            n_graphs: 1,
            gammas: vec![0.9],
            ..ExperimentConfig::default()
        };
        parsed.apply_key_values(&config.to_key_values(), "echo").unwrap();
        assert_eq!(parsed, config);
        assert_eq!(config.cells().len(), 12);
        config.validate().unwrap();
    }

    #[test]
    fn flag_spellings_and_comments() {
        let mut c = ExperimentConfig::default();
        c.apply_key_values("# reduced\ngraphs=50\n\nnodes = 300\nstrategy=icm\nicm-p=0.2\nseed=9\n", "t")
            .unwrap();
        assert_eq!((c.n_graphs, c.n_nodes, c.icm_p, c.master_seed), (50, 300, 0.2, 9));
        assert_eq!(c.strategies, vec![Strategy::Icm]);
    }

    #[test]
    fn bad_lines_report_position() {
        let mut c = ExperimentConfig::default();
        let err = c.apply_key_values("graphs=4\nfolds\n", "cfg").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(c.apply_key_values("colour=blue", "cfg").is_err());
        assert!(c.apply_key_values("gammas=0.1,x", "cfg").is_err());
    }

    #[test]
    fn validation() {
        let ok = ExperimentConfig::default();
        let cases = [
            ExperimentConfig { n_nodes: 20, ..ok.clone() },
            ExperimentConfig { gammas: vec![0.0], ..ok.clone() },
            ExperimentConfig { gammas: vec![0.1, 0.1], ..ok.clone() },
            ExperimentConfig { folds: 1, ..ok.clone() },
            ExperimentConfig { n_graphs: 5, ..ok.clone() },
            ExperimentConfig { svm_g: 0.0, ..ok.clone() },
        ];
        for c in cases {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }

    #[test]
    fn cells_sort_gammas_within_strategy() {
        let c = ExperimentConfig {
            gammas: vec![0.5, 0.1],
            strategies: vec![Strategy::Icm, Strategy::Uniform],
            ..ExperimentConfig::default()
        };
        let slugs: Vec<String> = c.cells().iter().map(Cell::slug).collect();
        assert_eq!(slugs, ["icm_0.1", "icm_0.5", "uniform_0.1", "uniform_0.5"]);
    }
}

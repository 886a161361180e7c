//! Plain-text `key=value` configuration files. Command-line flags override
//! anything read from the file.

use std::path::{Path, PathBuf};

use super::OutputFormat;
use crate::{Error, Result};

/// Values a config file may carry; `None` where the file stays silent.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FileConfig {
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub theta: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
}

pub fn parse_config_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)?;
    parse_config_str(&text)
}

/// Lines are `key=value`; blank lines and `#` comments are skipped; later
/// assignments win. Unknown keys are errors so typos surface immediately.
pub fn parse_config_str(text: &str) -> Result<FileConfig> {
    let mut config = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected key=value, got {:?}", lineno + 1, raw))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| Error::Config(format!("line {}: invalid {what} {value:?}", lineno + 1));
        match key {
            "samples" => config.samples = Some(value.parse().map_err(|_| bad("samples"))?),
            "seed" => config.seed = Some(value.parse().map_err(|_| bad("seed"))?),
            "theta" => config.theta = Some(value.parse().map_err(|_| bad("theta"))?),
            "out" => config.out = Some(PathBuf::from(value)),
            "format" => config.format = Some(OutputFormat::parse(value)?),
            _ => {
                return Err(Error::Config(format!(
                    "line {}: unknown key {key:?} (expected samples, seed, theta, out, format)",
                    lineno + 1
                )))
            }
        }
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys_with_comments() {
        let text = "# experiment\nsamples = 500\nseed=7\n\ntheta = 0.3\nout = runs/a.csv\nformat = jsonl\n";
        let c = parse_config_str(text).unwrap();
        assert_eq!(c.samples, Some(500));
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.theta, Some(0.3));
        assert_eq!(c.out, Some(PathBuf::from("runs/a.csv")));
        assert_eq!(c.format, Some(OutputFormat::JsonLines));
    }

    #[test]
    fn later_assignments_win() {
        let c = parse_config_str("seed=1\nseed=2\n").unwrap();
        assert_eq!(c.seed, Some(2));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(parse_config_str("sample=3\n").is_err());
        assert!(parse_config_str("samples=many\n").is_err());
        assert!(parse_config_str("format=xml\n").is_err());
        assert!(parse_config_str("just a line\n").is_err());
    }
}

//! Flat `key=value` config file for tolerances, horizons and grids.
//! CLI flags override config values, which override built-in defaults.

use std::fs;
use std::path::Path;

#[derive(Debug, Default, Clone)]
pub struct Config {
    pub tol: Option<f64>,
    pub horizon: Option<usize>,
    pub grid_points: Option<usize>,
    pub spacing: Option<String>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text =
            fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected key=value, got `{raw}`", lineno + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| format!("line {}: bad {what} `{value}`", lineno + 1);
            match key {
                "tol" => cfg.tol = Some(value.parse().map_err(|_| bad("tol"))?),
                "horizon" => cfg.horizon = Some(value.parse().map_err(|_| bad("horizon"))?),
                "grid_points" => {
                    cfg.grid_points = Some(value.parse().map_err(|_| bad("grid_points"))?)
                }
                "spacing" => {
                    if value != "log" && value != "uniform" {
                        return Err(bad("spacing (log|uniform)"));
                    }
                    cfg.spacing = Some(value.to_string());
                }
                "lo" => cfg.lo = Some(value.parse().map_err(|_| bad("lo"))?),
                "hi" => cfg.hi = Some(value.parse().map_err(|_| bad("hi"))?),
                other => return Err(format!("line {}: unknown key `{other}`", lineno + 1)),
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn tempfile_path(tag: &str) -> std::path::PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("mnconvex-config-{tag}-{}", std::process::id()));
        p
    }

    #[test]
    fn parses_keys_and_comments() {
        let f = tempfile_path("ok");
        std::fs::File::create(&f)
            .unwrap()
            .write_all(b"# comment\n tol = 1e-10 \nhorizon=500\nspacing=uniform\n")
            .unwrap();
        let cfg = Config::load(&f).unwrap();
        assert_eq!(cfg.tol, Some(1e-10));
        assert_eq!(cfg.horizon, Some(500));
        assert_eq!(cfg.spacing.as_deref(), Some("uniform"));
        std::fs::remove_file(&f).ok();
    }

    #[test]
    fn rejects_unknown_keys() {
        let f = tempfile_path("bad");
        std::fs::File::create(&f)
            .unwrap()
            .write_all(b"wibble=3\n")
            .unwrap();
        assert!(Config::load(&f).is_err());
        std::fs::remove_file(&f).ok();
    }
}

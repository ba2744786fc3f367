//! Run settings resolved from flags, an optional `key=value` file and the
//! environment, in that order of precedence.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

pub const THREADS_ENV: &str = "GASKET_THREADS";

#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key {key}: cannot parse {v:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub threads: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub meta: Option<PathBuf>,
}

pub struct Overrides {
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub meta: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(
        flags: Overrides,
        file: &FileConfig,
        env_threads: Option<String>,
    ) -> Result<Self, String> {
        let env_threads = match env_threads {
            Some(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("{THREADS_ENV}: cannot parse {v:?}"))?,
            ),
            None => None,
        };
        let threads = flags
            .threads
            .or(file.get("threads")?)
            .or(env_threads)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if threads == 0 {
            return Err("threads must be at least 1".into());
        }
        Ok(RunConfig {
            threads,
            seed: flags.seed.or(file.get("seed")?).unwrap_or(0),
            output: flags.output.or(file.get("output")?),
            meta: flags.meta.or(file.get("meta")?),
        })
    }

    /// Where the metadata sidecar goes, if anywhere.
    pub fn meta_path(&self) -> Option<PathBuf> {
        self.meta.clone().or_else(|| {
            self.output.as_ref().map(|p| {
                let mut s = p.clone().into_os_string();
                s.push(".meta.json");
                PathBuf::from(s)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn none() -> Overrides {
        Overrides {
            threads: None,
            seed: None,
            output: None,
            meta: None,
        }
    }

    #[test]
    fn precedence() {
        let file = FileConfig::parse("# run\nthreads = 3\nseed=9\n").unwrap();
        let cfg = RunConfig::resolve(none(), &file, Some("5".into())).unwrap();
        assert_eq!((cfg.threads, cfg.seed), (3, 9));

        let flags = Overrides {
            threads: Some(2),
            ..none()
        };
        assert_eq!(RunConfig::resolve(flags, &file, None).unwrap().threads, 2);

        let cfg = RunConfig::resolve(none(), &FileConfig::default(), Some("5".into())).unwrap();
        assert_eq!(cfg.threads, 5);
    }

    #[test]
    fn bad_input() {
        assert!(FileConfig::parse("threads").is_err());
        let file = FileConfig::parse("threads=x").unwrap();
        assert!(RunConfig::resolve(none(), &file, None).is_err());
        let flags = Overrides {
            threads: Some(0),
            ..none()
        };
        assert!(RunConfig::resolve(flags, &FileConfig::default(), None).is_err());
    }

    #[test]
    fn sidecar_next_to_output() {
        let flags = Overrides {
            output: Some("out/g.tsv".into()),
            ..none()
        };
        let cfg = RunConfig::resolve(flags, &FileConfig::default(), None).unwrap();
        assert_eq!(
            cfg.meta_path().unwrap(),
            PathBuf::from("out/g.tsv.meta.json")
        );
    }
}

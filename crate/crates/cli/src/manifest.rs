//! Directory manifests: `manifest.txt` with one `key=value` per line.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use subcodes::{Field, IntMatrix};

pub const MANIFEST: &str = "manifest.txt";

pub const KINDS: &[&str] = &["deza-family", "matrix-family", "linked-system", "scheme", "partition"];

#[derive(Clone, Debug)]
pub struct Manifest {
    dir: PathBuf,
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new(dir: &Path, kind: &str) -> Self {
        Self {
            dir: dir.to_path_buf(),
            entries: vec![("kind".into(), kind.into())],
        }
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let path = dir.join(MANIFEST);
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let mut entries = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("{}:{}: expected key=value", path.display(), ln + 1))?;
            entries.push((k.trim().to_string(), v.trim().to_string()));
        }
        let m = Self {
            dir: dir.to_path_buf(),
            entries,
        };
        let kind = m.get("kind")?;
        if !KINDS.contains(&kind) {
            bail!("{}: unknown kind {kind:?}", path.display());
        }
        Ok(m)
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| k == key) {
            Some(e) => e.1 = value,
            None => self.entries.push((key.into(), value)),
        }
    }

    pub fn save(&self) -> Result<()> {
        let path = self.dir.join(MANIFEST);
        let text: String = self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn opt(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.opt(key)
            .ok_or_else(|| anyhow!("{}: missing key {key:?}", self.dir.join(MANIFEST).display()))
    }

    pub fn parse<T: FromStr>(&self, key: &str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let v = self.get(key)?;
        v.parse()
            .map_err(|e| anyhow!("{}: bad value for {key}: {e}", self.dir.join(MANIFEST).display()))
    }

    pub fn parse_opt<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.opt(key) {
            None => Ok(None),
            Some(_) => self.parse(key).map(Some),
        }
    }

    pub fn kind(&self) -> &str {
        self.opt("kind").unwrap_or("")
    }

    pub fn expect_kind(&self, allowed: &[&str]) -> Result<()> {
        if !allowed.contains(&self.kind()) {
            bail!(
                "{}: kind {:?} not accepted here (expected one of {})",
                self.dir.display(),
                self.kind(),
                allowed.join(", ")
            );
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field> {
        Ok(Field::parse(self.get("field")?)?)
    }

    /// Space-separated file names under `key`, resolved against the
    /// manifest directory.
    pub fn files(&self, key: &str) -> Result<Vec<PathBuf>> {
        let list: Vec<PathBuf> = self.get(key)?.split_whitespace().map(|f| self.dir.join(f)).collect();
        if list.is_empty() {
            bail!("{}: {key} lists no files", self.dir.display());
        }
        Ok(list)
    }

    pub fn matrices(&self, key: &str) -> Result<Vec<IntMatrix>> {
        self.files(key)?.iter().map(|p| read_matrix(p)).collect()
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_matrix(path: &Path) -> Result<IntMatrix> {
    IntMatrix::parse(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// Comma- or space-separated list of integers.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|e| anyhow!("bad list entry {t:?}: {e}")))
        .collect()
}

//! The run manifest carried by every artifact, and helpers that embed it in
//! each output format.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Default, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments after the program name, minus `--workers`; replaying them
    /// regenerates the same bytes.
    pub args: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, argv: &[String]) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            args: strip_workers(argv),
            ..Default::default()
        }
    }

    pub fn compact(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}

fn strip_workers(argv: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(argv.len());
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        if a == "--workers" {
            it.next();
        } else if !a.starts_with("--workers=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn csv_with_manifest(manifest: &RunManifest, body: &str) -> String {
    format!("# manifest: {}\n{body}", manifest.compact())
}

pub fn dot_with_manifest(manifest: &RunManifest, body: &str) -> String {
    format!("// manifest: {}\n{body}", manifest.compact())
}

pub fn json_document<T: Serialize>(doc: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

/// Where a command's artifacts go: a directory of named files, or stdout for
/// the primary artifact only.
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> CliResult<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).map_err(|source| CliError::File { path: d.clone(), source })?;
        }
        Ok(Sink { dir })
    }

    pub fn to_stdout(&self) -> bool {
        self.dir.is_none()
    }

    /// Paths the given file names will be written to (empty for stdout).
    pub fn paths(&self, names: &[&str]) -> Vec<String> {
        match &self.dir {
            Some(d) => names.iter().map(|n| d.join(n).display().to_string()).collect(),
            None => vec![],
        }
    }

    pub fn write(&self, name: &str, contents: &str) -> CliResult<()> {
        match &self.dir {
            Some(d) => write_file(&d.join(name), contents),
            None => Ok(()),
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::File { path: path.to_path_buf(), source })
}

pub fn print(contents: &str) -> CliResult<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(contents.as_bytes()).map_err(CliError::Stdout)?;
    out.flush().map_err(CliError::Stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workers_flag_is_not_recorded() {
        let argv: Vec<String> = ["explore", "--workers", "4", "--group", "Z", "--workers=2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(strip_workers(&argv), vec!["explore", "--group", "Z"]);
    }

    #[test]
    fn comment_lines() {
        let m = RunManifest::new("explore", &[]);
        assert!(csv_with_manifest(&m, "a,b\n").starts_with("# manifest: {\"tool\""));
        assert!(dot_with_manifest(&m, "graph {}\n").lines().nth(1) == Some("graph {}"));
    }
}

//! Content hashes of everything a command wrote.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::ReportError;

pub const MANIFEST_FILE: &str = "manifest.txt";
const MAGIC: &str = "# boxpush-manifest v1";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub config_path: Option<PathBuf>,
    pub output_dir: PathBuf,
    /// `(file name relative to output_dir, sha256 hex)` in emission order.
    pub files: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(config_path: Option<&Path>, output_dir: &Path) -> Self {
        RunManifest { config_path: config_path.map(Path::to_path_buf), output_dir: output_dir.to_path_buf(), files: Vec::new() }
    }

    /// Writes `contents` under the output directory and records its hash.
    pub fn emit(&mut self, name: &str, contents: &[u8]) -> Result<(), ReportError> {
        let path = self.output_dir.join(name);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent).map_err(|e| ReportError::io(parent, e))?;
        }
        std::fs::write(&path, contents).map_err(|e| ReportError::io(&path, e))?;
        self.files.push((name.to_string(), sha256_hex(contents)));
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{MAGIC}\n");
        let config = self.config_path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into());
        writeln!(out, "config {config}").expect("write to String");
        writeln!(out, "output {}", self.output_dir.display()).expect("write to String");
        for (name, hash) in &self.files {
            writeln!(out, "{hash}  {name}").expect("write to String");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ReportError> {
        let bad = |line: usize, message: &str| ReportError::Malformed {
            file: MANIFEST_FILE.into(),
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Err(bad(1, "missing manifest header"));
        }
        let config = lines.next().and_then(|l| l.strip_prefix("config ")).ok_or_else(|| bad(2, "expected `config <path>`"))?;
        let output = lines.next().and_then(|l| l.strip_prefix("output ")).ok_or_else(|| bad(3, "expected `output <dir>`"))?;
        let files = lines
            .enumerate()
            .map(|(i, l)| {
                l.split_once("  ")
                    .map(|(h, n)| (n.to_string(), h.to_string()))
                    .ok_or_else(|| bad(i + 4, "expected `<hash>  <name>`"))
            })
            .collect::<Result<_, _>>()?;
        Ok(RunManifest {
            config_path: (config != "-").then(|| PathBuf::from(config)),
            output_dir: PathBuf::from(output),
            files,
        })
    }

    /// Writes `manifest.txt` into the output directory.
    pub fn write(&self) -> Result<(), ReportError> {
        let path = self.output_dir.join(MANIFEST_FILE);
        std::fs::write(&path, self.to_text()).map_err(|e| ReportError::io(&path, e))
    }

    /// Re-reads every listed file and compares hashes. Returns the names
    /// that no longer match.
    pub fn verify(&self) -> Result<Vec<String>, ReportError> {
        let mut mismatched = Vec::new();
        for (name, hash) in &self.files {
            let path = self.output_dir.join(name);
            let bytes = std::fs::read(&path).map_err(|e| ReportError::io(&path, e))?;
            if sha256_hex(&bytes) != *hash {
                mismatched.push(name.clone());
            }
        }
        Ok(mismatched)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn emit_write_parse_verify() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = RunManifest::new(Some(Path::new("cfg.txt")), dir.path());
        m.emit("a.csv", b"x,y\n1,2").unwrap();
        m.emit("sub/b.txt", b"hello").unwrap();
        m.write().unwrap();
        let back = RunManifest::parse(&std::fs::read_to_string(dir.path().join(MANIFEST_FILE)).unwrap()).unwrap();
        assert_eq!(back, m);
        assert!(back.verify().unwrap().is_empty());
        std::fs::write(dir.path().join("a.csv"), "tampered").unwrap();
        assert_eq!(back.verify().unwrap(), vec!["a.csv".to_string()]);
    }
}

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::config::{InputPath, PipelineConfig};
use super::CliError;

pub const MANIFEST: &str = "manifest.json";
const LOCK: &str = ".scholnet.lock";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Exclusive claim on an output directory, released on drop.
pub struct OutputLock {
    path: PathBuf,
}

impl OutputLock {
    pub fn acquire(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::internal(format!("create {}: {e}", dir.display())))?;
        let path = dir.join(LOCK);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(Self { path }),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                Err(CliError::config(format!(
                    "output directory `{}` is locked by another run",
                    dir.display()
                )))
            }
            Err(e) => Err(CliError::internal(format!("lock {}: {e}", path.display()))),
        }
    }
}

impl Drop for OutputLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

/// Output files buffered in memory until the run succeeds.
#[derive(Default)]
pub struct Outputs {
    files: BTreeMap<String, Vec<u8>>,
    notes: Vec<String>,
}

impl Outputs {
    pub fn add(&mut self, name: impl Into<String>, bytes: Vec<u8>) {
        self.files.insert(name.into(), bytes);
    }

    pub fn add_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), CliError> {
        let mut bytes =
            serde_json::to_vec_pretty(value).map_err(|e| CliError::internal(e.to_string()))?;
        bytes.push(b'\n');
        self.add(name, bytes);
        Ok(())
    }

    pub fn add_csv<I, R>(&mut self, name: &str, header: &[&str], rows: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator,
        R::Item: AsRef<[u8]>,
    {
        let mut w = csv::Writer::from_writer(Vec::new());
        let fail = |e: csv::Error| CliError::internal(format!("{name}: {e}"));
        w.write_record(header).map_err(fail)?;
        for row in rows {
            w.write_record(row).map_err(fail)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::internal(e.to_string()))?;
        self.add(name, bytes);
        Ok(())
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    /// Writes every file plus `manifest.json`; returns the names written.
    pub fn commit(
        self,
        subcommand: &str,
        config: &PipelineConfig,
    ) -> Result<Vec<String>, CliError> {
        let dir = &config.out_dir;
        let mut entries = Vec::new();
        for (name, bytes) in &self.files {
            let path = dir.join(name);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent)
                    .map_err(|e| CliError::internal(format!("{}: {e}", parent.display())))?;
            }
            fs::write(&path, bytes)
                .map_err(|e| CliError::internal(format!("{}: {e}", path.display())))?;
            entries.push(ManifestOutput {
                path: name.clone(),
                bytes: bytes.len(),
                sha256: sha256_hex(bytes),
            });
        }
        let manifest = Manifest {
            tool: "scholnet",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            config_sha256: sha256_hex(
                &serde_json::to_vec(config).map_err(|e| CliError::internal(e.to_string()))?,
            ),
            config,
            inputs: input_digests(config)?,
            outputs: entries,
            notes: &self.notes,
        };
        let mut bytes =
            serde_json::to_vec_pretty(&manifest).map_err(|e| CliError::internal(e.to_string()))?;
        bytes.push(b'\n');
        let path = dir.join(MANIFEST);
        fs::write(&path, bytes)
            .map_err(|e| CliError::internal(format!("{}: {e}", path.display())))?;
        let mut names: Vec<String> = self.files.into_keys().collect();
        names.push(MANIFEST.to_string());
        Ok(names)
    }
}

#[derive(Serialize)]
struct ManifestOutput {
    path: String,
    bytes: usize,
    sha256: String,
}

#[derive(Serialize)]
struct ManifestInput {
    role: &'static str,
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    config_sha256: String,
    config: &'a PipelineConfig,
    inputs: Vec<ManifestInput>,
    outputs: Vec<ManifestOutput>,
    notes: &'a [String],
}

fn input_digests(config: &PipelineConfig) -> Result<Vec<ManifestInput>, CliError> {
    let inputs: [(&'static str, Option<&InputPath>); 4] = [
        ("records", Some(&config.records)),
        ("registry", Some(&config.registry)),
        ("aliases", config.aliases.as_ref()),
        ("gazetteer", config.gazetteer.as_ref()),
    ];
    let mut out = Vec::new();
    for (role, input) in inputs {
        let Some(input) = input else { continue };
        let bytes = fs::read(&input.resolved)
            .map_err(|e| CliError::input("io", format!("{}: {e}", input.resolved.display())))?;
        out.push(ManifestInput {
            role,
            path: input.given.clone(),
            sha256: sha256_hex(&bytes),
        });
    }
    Ok(out)
}

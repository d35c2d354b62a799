//! Output writers. Every file embeds the resolved configuration and the
//! library version; all serialization is deterministic, so identical
//! configurations and seeds produce byte-identical files.

use serde::Serialize;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `{ "version": ..., "config": ..., "data": ... }`.
#[derive(Serialize)]
struct Envelope<'a, C: Serialize, D: Serialize> {
    version: &'a str,
    config: &'a C,
    data: &'a D,
}

pub fn write_json<C: Serialize, D: Serialize>(
    dir: &Path,
    name: &str,
    config: &C,
    data: &D,
) -> Result<PathBuf, String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let path = dir.join(name);
    let envelope = Envelope {
        version: VERSION,
        config,
        data,
    };
    let text = serde_json::to_string_pretty(&envelope)
        .map_err(|e| format!("serialization failed: {e}"))?;
    fs::write(&path, text + "\n").map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

/// CSV body preceded by `# version:` and `# config:` comment lines.
pub fn write_csv<C: Serialize>(
    dir: &Path,
    name: &str,
    config: &C,
    body: &str,
) -> Result<PathBuf, String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
    let path = dir.join(name);
    let mut file =
        fs::File::create(&path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let config_line = serde_json::to_string(config).map_err(|e| format!("config echo: {e}"))?;
    write!(file, "# version: {VERSION}\n# config: {config_line}\n{body}")
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

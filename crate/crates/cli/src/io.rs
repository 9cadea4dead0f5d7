use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;

use crate::args::RunConfig;

/// `--out`, else `<out-dir>/<stem>.json`, else `./<stem>.json`.
pub fn target_path(cfg: &RunConfig, stem: &str) -> PathBuf {
    match (&cfg.out, &cfg.out_dir) {
        (Some(p), _) => p.clone(),
        (None, Some(dir)) => dir.join(format!("{stem}.json")),
        (None, None) => PathBuf::from(format!("{stem}.json")),
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).with_context(|| format!("temp file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| e.error)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

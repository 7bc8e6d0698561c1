use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Serialize;
use tempfile::NamedTempFile;

/// Writes `name` inside `dir` through a temporary file that is renamed into
/// place once complete.
pub fn write_atomic<F>(dir: &Path, name: &str, fill: F) -> anyhow::Result<PathBuf>
where
    F: FnOnce(&mut dyn Write) -> anyhow::Result<()>,
{
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let target = dir.join(name);
    let mut tmp = NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        fill(&mut w)?;
        w.flush()?;
    }
    tmp.persist(&target)
        .with_context(|| format!("writing {}", target.display()))?;
    Ok(target)
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> anyhow::Result<PathBuf> {
    write_atomic(dir, name, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        writeln!(w)?;
        Ok(())
    })
}

/// One compact JSON object per line.
pub fn write_json_lines<T: Serialize>(
    dir: &Path,
    name: &str,
    items: &[T],
) -> anyhow::Result<PathBuf> {
    write_atomic(dir, name, |w| {
        for item in items {
            serde_json::to_writer(&mut *w, item)?;
            writeln!(w)?;
        }
        Ok(())
    })
}

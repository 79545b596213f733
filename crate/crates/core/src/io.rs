//! File helpers shared by the CLI and the plotting code.

use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
#[error("{}: {source}", path.display())]
pub struct FileError {
    pub path: PathBuf,
    #[source]
    pub source: std::io::Error,
}

impl FileError {
    fn at(path: &Path, source: std::io::Error) -> Self {
        Self {
            path: path.to_path_buf(),
            source,
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|e| FileError::at(path, e))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), FileError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| FileError::at(path, e))?;
    tmp.write_all(contents).map_err(|e| FileError::at(path, e))?;
    tmp.as_file().sync_all().map_err(|e| FileError::at(path, e))?;
    tmp.persist(path).map_err(|e| FileError::at(path, e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_contents() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.txt");
        write_atomic(&p, b"first").unwrap();
        write_atomic(&p, b"second").unwrap();
        assert_eq!(read_text(&p).unwrap(), "second");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn missing_file_names_path() {
        let err = read_text(Path::new("/nonexistent/dir/x.json")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/x.json"));
        let err = write_atomic(Path::new("/nonexistent/dir/x.json"), b"x").unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/x.json"));
    }
}

//! Output plumbing: stdout or a file.

use stablegenus_core::Error;
use std::path::PathBuf;

pub fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        None => {
            println!("{}", text);
            Ok(())
        }
        Some(p) => {
            let mut data = text.to_string();
            if !data.ends_with('\n') {
                data.push('\n');
            }
            std::fs::write(p, data)
                .map_err(|e| Error::Invalid(format!("cannot write {}: {}", p.display(), e)))
        }
    }
}
